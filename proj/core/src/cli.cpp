#include "pgcycles/cli.hpp"

#include <chrono>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "pgcycles/certificate.hpp"
#include "pgcycles/space_embedder.hpp"
#include "pgcycles/verifier.hpp"

namespace pgc {

using nlohmann::json;

namespace {

Geometry make_geometry(int n, std::uint32_t q) {
    std::uint32_t p = 0;
    std::uint32_t e = 0;
    if (!factor_prime_power(q, p, e))
        throw NotPrimePower("q = " + std::to_string(q) + " is not a prime power");
    return Geometry(Field::make(p, e), n);
}

std::string report_to_json(const VerificationReport& rep) {
    json j;
    j["valid"] = rep.valid;
    json fails = json::array();
    for (const auto& [check, detail] : rep.failures)
        fails.push_back({{"check", check}, {"detail", detail}});
    j["failures"] = std::move(fails);
    j["stats"] = {{"vertices", rep.stats.vertex_count},
                  {"distinct_lines", rep.stats.distinct_line_count},
                  {"anchor_vertices", rep.stats.anchor_vertex_count},
                  {"anchor_edges", rep.stats.anchor_edge_count}};
    return j.dump(2) + "\n";
}

void print_report_text(const VerificationReport& rep, std::ostream& out) {
    out << (rep.valid ? "valid" : "INVALID") << " (" << rep.stats.vertex_count
        << " vertices, " << rep.stats.distinct_line_count << " distinct lines";
    if (rep.stats.anchor_vertex_count >= 0) {
        out << ", anchor counts " << rep.stats.anchor_vertex_count << "/"
            << rep.stats.anchor_edge_count;
    }
    out << ")\n";
    for (const auto& [check, detail] : rep.failures)
        out << "  failure [" << check << "]: " << detail << "\n";
}

}  // namespace

int cmd_info(int n, std::uint32_t q, const std::string& format, std::ostream& out,
             std::ostream& err) {
    try {
        std::uint32_t p = 0;
        std::uint32_t e = 0;
        if (!factor_prime_power(q, p, e))
            throw NotPrimePower("q = " + std::to_string(q) + " is not a prime power");
        if (n < 2) throw OutOfRange("n must be >= 2");
        Field::make(p, e);  // enforces the size bound
        const std::uint64_t points = count_points(n, q);
        const std::uint64_t lines = count_lines(n, q);
        if (format == "json") {
            json j;
            j["n"] = n;
            j["q"] = q;
            j["p"] = p;
            j["e"] = e;
            j["points"] = points;
            j["lines"] = lines;
            j["points_per_line"] = q + 1;
            j["max_k"] = points;
            out << j.dump(2) << "\n";
        } else {
            out << "PG(" << n << ", q=" << q << ")\n";
            out << "points          " << points << "\n";
            out << "lines           " << lines << "\n";
            out << "points per line " << q + 1 << "\n";
            out << "max cycle k     " << points << "\n";
        }
        return kExitOk;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
}

int cmd_embed(int n, std::uint32_t q, int k, std::uint64_t seed,
              const std::string& out_path, std::ostream& out, std::ostream& err) {
    try {
        const Geometry g = make_geometry(n, q);
        if (k < 3 || static_cast<std::uint64_t>(k) > g.point_count())
            throw OutOfRange("k must be in [3, " + std::to_string(g.point_count()) + "]");
        SearchOptions opts;
        opts.seed = seed;
        CycleEmbedding c;
        try {
            c = embed_cycle(g, k, opts);
        } catch (const SearchExhausted& e) {
            err << "search exhausted: " << e.what() << "\n";
            return kExitSearchExhausted;
        }
        const VerificationReport rep = verify_cycle(g, c);
        if (!rep.valid) {
            err << "self-verification failed:\n";
            print_report_text(rep, err);
            return kExitInternal;
        }
        std::ostringstream cmdline;
        cmdline << "embed --n " << n << " --q " << q << " --k " << k << " --seed " << seed;
        const Certificate cert = make_certificate(g, c, std::nullopt, cmdline.str(), seed);
        const std::string text = certificate_to_json(cert);
        if (!out_path.empty()) {
            write_file_atomic(out_path, text);
            out << "verified " << k << "-cycle in PG(" << n << "," << q << ") -> " << out_path
                << "\n";
        } else {
            out << text;
        }
        return kExitOk;
    } catch (const OutOfRange& e) {
        err << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const NotPrimePower& e) {
        err << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const Error& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}

int cmd_verify(const std::string& cert_path, const std::string& format, std::ostream& out,
               std::ostream& err) {
    Certificate cert;
    std::optional<Geometry> g;
    CycleEmbedding c;
    std::optional<Subspace> anchor;
    try {
        cert = certificate_from_json(read_file(cert_path));
        g.emplace(geometry_from_certificate(cert));
        c = cycle_from_certificate(*g, cert);
        anchor = anchor_from_certificate(*g, cert);
    } catch (const Error& e) {
        err << "malformed certificate: " << e.what() << "\n";
        return kExitBadInput;
    }
    VerificationReport rep = verify_cycle(*g, c);
    if (anchor) {
        const VerificationReport anchored = verify_anchor_counts(
            *g, c, *anchor, cert.anchor->expected_vertices, cert.anchor->expected_edges);
        rep.stats.anchor_vertex_count = anchored.stats.anchor_vertex_count;
        rep.stats.anchor_edge_count = anchored.stats.anchor_edge_count;
        if (!anchored.valid) {
            rep.valid = false;
            rep.failures.insert(rep.failures.end(), anchored.failures.begin(),
                                anchored.failures.end());
        }
    }
    if (format == "json") {
        out << report_to_json(rep);
    } else {
        print_report_text(rep, out);
    }
    return rep.valid ? kExitOk : kExitInvalid;
}

int cmd_sweep(int n, std::uint32_t q, std::uint64_t seed, const std::string& report_path,
              const std::string& format, std::ostream& out, std::ostream& err) {
    std::optional<Geometry> g;
    try {
        g.emplace(make_geometry(n, q));
        if (g->point_count() > Geometry::kMaxEnumerate)
            throw SizeExceeded("geometry too large to sweep");
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    const int max_k = static_cast<int>(g->point_count());
    json results = json::array();
    int failures = 0;
    for (int k = 3; k <= max_k; ++k) {
        const auto t0 = std::chrono::steady_clock::now();
        std::string status = "ok";
        int distinct_lines = 0;
        try {
            SearchOptions opts;
            opts.seed = seed;
            const CycleEmbedding c = embed_cycle(*g, k, opts);
            const VerificationReport rep = verify_cycle(*g, c);
            distinct_lines = rep.stats.distinct_line_count;
            if (!rep.valid || rep.stats.vertex_count != k || distinct_lines != k)
                status = "invalid";
        } catch (const SearchExhausted&) {
            status = "search_exhausted";
        } catch (const Error& e) {
            status = std::string("error: ") + e.what();
        }
        const auto t1 = std::chrono::steady_clock::now();
        const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        if (status != "ok") ++failures;
        results.push_back({{"k", k}, {"status", status}, {"lines", distinct_lines},
                           {"ms", ms}});
    }
    json summary;
    summary["n"] = n;
    summary["q"] = q;
    summary["seed"] = seed;
    summary["lengths"] = max_k - 2;
    summary["failures"] = failures;
    summary["all_verified"] = failures == 0;
    summary["results"] = std::move(results);
    if (!report_path.empty()) write_file_atomic(report_path, summary.dump(2) + "\n");
    if (format == "json") {
        out << summary.dump(2) << "\n";
    } else {
        out << "PG(" << n << "," << q << "): " << (max_k - 2 - failures) << "/" << (max_k - 2)
            << " lengths verified (k = 3.." << max_k << ")\n";
        if (failures > 0) {
            for (const auto& r : summary["results"]) {
                if (r["status"] != "ok")
                    out << "  k=" << r["k"] << ": " << r["status"].get<std::string>() << "\n";
            }
        }
    }
    return failures == 0 ? kExitOk : kExitInvalid;
}

int cmd_count(int n, std::uint32_t q, int k, std::ostream& out, std::ostream& err) {
    try {
        const Geometry g = make_geometry(n, q);
        out << brute_force_cycle_count(g, k) << "\n";
        return kExitOk;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
}

}  // namespace pgc
