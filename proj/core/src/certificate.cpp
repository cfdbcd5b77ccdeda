#include "pgcycles/certificate.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pgc {

using nlohmann::json;

namespace {

constexpr const char* kArtifactVersion = "0.1.0";

json rows_to_json(const std::vector<std::vector<Elem>>& rows) {
    json out = json::array();
    for (const auto& r : rows) out.push_back(r);
    return out;
}

std::vector<std::vector<Elem>> rows_from_json(const json& j, const char* what) {
    if (!j.is_array()) throw MalformedCertificate(std::string(what) + " must be an array");
    std::vector<std::vector<Elem>> rows;
    for (const auto& r : j) {
        if (!r.is_array()) throw MalformedCertificate(std::string(what) + " row must be an array");
        std::vector<Elem> row;
        for (const auto& x : r) {
            if (!x.is_number_unsigned())
                throw MalformedCertificate(std::string(what) + " entries must be unsigned integers");
            row.push_back(x.get<Elem>());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

Certificate make_certificate(const Geometry& g, const CycleEmbedding& c,
                             const std::optional<Subspace>& anchor,
                             const std::string& command, std::uint64_t seed) {
    Certificate cert;
    const Field& F = g.field();
    cert.p = F.p();
    cert.e = F.e();
    cert.q = F.q();
    cert.n = g.dim();
    cert.modulus = F.modulus();
    cert.k = c.length();
    for (const auto& v : c.vertices) cert.vertices.push_back(v.coords);
    for (int j = 0; j < c.length(); ++j) {
        Certificate::Edge e;
        e.from = j;
        e.to = (j + 1) % c.length();
        e.line = c.edge_lines[static_cast<std::size_t>(j)].basis;
        cert.edges.push_back(std::move(e));
    }
    if (anchor) {
        Certificate::Anchor a;
        a.basis = anchor->basis;
        cert.anchor = std::move(a);
    }
    Certificate::Provenance prov;
    prov.command = command;
    prov.seed = seed;
    prov.artifact_version = kArtifactVersion;
    cert.provenance = std::move(prov);
    return cert;
}

std::string certificate_to_json(const Certificate& cert) {
    json j;
    j["version"] = cert.version;
    j["p"] = cert.p;
    j["e"] = cert.e;
    j["q"] = cert.q;
    j["n"] = cert.n;
    j["modulus"] = cert.modulus;
    j["k"] = cert.k;
    j["vertices"] = rows_to_json(cert.vertices);
    json edges = json::array();
    for (const auto& e : cert.edges) {
        json je;
        je["from"] = e.from;
        je["to"] = e.to;
        je["line"] = rows_to_json(e.line);
        edges.push_back(std::move(je));
    }
    j["edges"] = std::move(edges);
    if (cert.anchor) {
        json ja;
        ja["basis"] = rows_to_json(cert.anchor->basis);
        ja["expected"] = {{"vertices", cert.anchor->expected_vertices},
                          {"edges", cert.anchor->expected_edges}};
        j["anchor"] = std::move(ja);
    }
    if (cert.provenance) {
        json jp;
        jp["command"] = cert.provenance->command;
        jp["seed"] = cert.provenance->seed;
        jp["artifact_version"] = cert.provenance->artifact_version;
        j["provenance"] = std::move(jp);
    }
    return j.dump(2) + "\n";
}

Certificate certificate_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw MalformedCertificate(std::string("not valid JSON: ") + e.what());
    }
    try {
        Certificate cert;
        cert.version = j.at("version").get<std::string>();
        if (cert.version != "pgc-1")
            throw MalformedCertificate("unsupported certificate version " + cert.version);
        cert.p = j.at("p").get<std::uint32_t>();
        cert.e = j.at("e").get<std::uint32_t>();
        cert.q = j.at("q").get<std::uint32_t>();
        cert.n = j.at("n").get<int>();
        for (const auto& x : j.at("modulus")) cert.modulus.push_back(x.get<std::uint32_t>());
        cert.k = j.at("k").get<int>();
        cert.vertices = rows_from_json(j.at("vertices"), "vertices");
        for (const auto& je : j.at("edges")) {
            Certificate::Edge e;
            e.from = je.at("from").get<int>();
            e.to = je.at("to").get<int>();
            e.line = rows_from_json(je.at("line"), "edge line");
            cert.edges.push_back(std::move(e));
        }
        if (j.contains("anchor")) {
            Certificate::Anchor a;
            a.basis = rows_from_json(j.at("anchor").at("basis"), "anchor basis");
            a.expected_vertices = j.at("anchor").at("expected").at("vertices").get<int>();
            a.expected_edges = j.at("anchor").at("expected").at("edges").get<int>();
            cert.anchor = std::move(a);
        }
        if (j.contains("provenance")) {
            Certificate::Provenance prov;
            const auto& jp = j.at("provenance");
            prov.command = jp.value("command", std::string());
            prov.seed = jp.value("seed", std::uint64_t{0});
            prov.artifact_version = jp.value("artifact_version", std::string());
            cert.provenance = std::move(prov);
        }
        return cert;
    } catch (const json::exception& e) {
        throw MalformedCertificate(std::string("certificate schema violation: ") + e.what());
    }
}

Geometry geometry_from_certificate(const Certificate& cert) {
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < cert.e; ++i) q *= cert.p;
    if (q != cert.q) throw MalformedCertificate("q does not equal p^e");
    if (cert.n < 2) throw MalformedCertificate("n must be >= 2");
    try {
        Field F(cert.p, cert.e, cert.modulus);
        return Geometry(F, cert.n);
    } catch (const Error& e) {
        throw MalformedCertificate(std::string("bad field header: ") + e.what());
    }
}

CycleEmbedding cycle_from_certificate(const Geometry& g, const Certificate& cert) {
    if (cert.k != static_cast<int>(cert.vertices.size()))
        throw MalformedCertificate("k does not match the vertex count");
    if (cert.vertices.size() != cert.edges.size())
        throw MalformedCertificate("a cycle needs as many edges as vertices");
    CycleEmbedding c;
    for (const auto& v : cert.vertices) {
        if (static_cast<int>(v.size()) != g.ncols())
            throw MalformedCertificate("vertex has wrong coordinate count");
        for (Elem x : v) {
            if (x >= g.q()) throw MalformedCertificate("vertex coordinate out of the field");
        }
        c.vertices.push_back(Point{v});
    }
    for (std::size_t j = 0; j < cert.edges.size(); ++j) {
        const auto& e = cert.edges[j];
        if (e.from != static_cast<int>(j) || e.to != static_cast<int>((j + 1) % cert.edges.size()))
            throw MalformedCertificate("edge indices must follow the cycle order");
        if (e.line.size() != 2) throw MalformedCertificate("edge line must have two basis rows");
        Subspace l;
        l.cols = g.ncols();
        for (const auto& row : e.line) {
            if (static_cast<int>(row.size()) != g.ncols())
                throw MalformedCertificate("edge line row has wrong length");
            for (Elem x : row) {
                if (x >= g.q()) throw MalformedCertificate("edge line entry out of the field");
            }
            l.basis.push_back(row);
        }
        c.edge_lines.push_back(std::move(l));
    }
    return c;
}

std::optional<Subspace> anchor_from_certificate(const Geometry& g, const Certificate& cert) {
    if (!cert.anchor) return std::nullopt;
    Subspace s;
    s.cols = g.ncols();
    for (const auto& row : cert.anchor->basis) {
        if (static_cast<int>(row.size()) != g.ncols())
            throw MalformedCertificate("anchor row has wrong length");
        for (Elem x : row) {
            if (x >= g.q()) throw MalformedCertificate("anchor entry out of the field");
        }
        s.basis.push_back(row);
    }
    return s;
}

void write_file_atomic(const std::string& path, const std::string& text) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp + " for writing");
        out << text;
        if (!out.good()) throw Error("short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw Error("cannot move " + tmp + " into place");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace pgc
