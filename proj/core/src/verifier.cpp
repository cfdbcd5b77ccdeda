#include "pgcycles/verifier.hpp"

#include <algorithm>
#include <set>

namespace pgc {
namespace {

// Shared vertex/edge checks for paths and cycles. closed selects whether
// the wrap-around edge exists.
void check_embedding(const Geometry& g, const std::vector<Point>& vertices,
                     const std::vector<Subspace>& edge_lines, bool closed,
                     VerificationReport& rep) {
    const int k = static_cast<int>(vertices.size());
    const int expected_edges = closed ? k : k - 1;
    rep.stats.vertex_count = k;
    if (static_cast<int>(edge_lines.size()) != expected_edges) {
        rep.fail("edge-count", "expected " + std::to_string(expected_edges) + " edges, got " +
                                   std::to_string(edge_lines.size()));
        return;
    }
    std::set<std::vector<Elem>> vertex_keys;
    for (int i = 0; i < k; ++i) {
        const auto& v = vertices[static_cast<std::size_t>(i)];
        if (static_cast<int>(v.coords.size()) != g.ncols()) {
            rep.fail("vertex-shape", "vertex " + std::to_string(i) + " has wrong length");
            return;
        }
        bool in_range = true;
        for (Elem x : v.coords) in_range = in_range && x < g.q();
        if (!in_range) {
            rep.fail("vertex-range", "vertex " + std::to_string(i) + " = " + to_string(v) +
                                         " has out-of-field coordinates");
            return;
        }
        try {
            if (g.normalize_point(v.coords) != v) {
                rep.fail("vertex-canonical",
                         "vertex " + std::to_string(i) + " = " + to_string(v) +
                             " is not in canonical form");
            }
        } catch (const ZeroVector&) {
            rep.fail("vertex-zero", "vertex " + std::to_string(i) + " is the zero vector");
        }
        if (!vertex_keys.insert(v.coords).second) {
            rep.fail("vertex-injective", "vertex " + to_string(v) + " repeats");
        }
    }
    if (!rep.valid) return;

    std::set<std::vector<Elem>> line_keys;
    for (int j = 0; j < expected_edges; ++j) {
        const auto& a = vertices[static_cast<std::size_t>(j)];
        const auto& b = vertices[static_cast<std::size_t>((j + 1) % k)];
        const auto& stored = edge_lines[static_cast<std::size_t>(j)];
        Subspace recomputed;
        try {
            recomputed = g.line_through(a, b);
        } catch (const Error& e) {
            rep.fail("edge-endpoints", "edge " + std::to_string(j) + ": " + e.what());
            continue;
        }
        if (stored != recomputed) {
            rep.fail("edge-line", "edge " + std::to_string(j) + " stores " + to_string(stored) +
                                      " but the endpoint pair spans " + to_string(recomputed));
        }
        if (!line_keys.insert(stored.key()).second) {
            rep.fail("edge-injective", "edge line " + to_string(stored) + " repeats");
        }
    }
    rep.stats.distinct_line_count = static_cast<int>(line_keys.size());
}

}  // namespace

VerificationReport verify_cycle(const Geometry& g, const CycleEmbedding& c) {
    VerificationReport rep;
    if (c.length() < 3) {
        rep.fail("length", "cycles need k >= 3, got " + std::to_string(c.length()));
        return rep;
    }
    check_embedding(g, c.vertices, c.edge_lines, true, rep);
    return rep;
}

VerificationReport verify_path(const Geometry& g, const PathEmbedding& p) {
    VerificationReport rep;
    if (p.length() < 2) {
        rep.fail("length", "paths need k >= 2, got " + std::to_string(p.length()));
        return rep;
    }
    check_embedding(g, p.vertices, p.edge_lines, false, rep);
    return rep;
}

VerificationReport verify_anchor_counts(const Geometry& g, const CycleEmbedding& c,
                                        const Subspace& s, int expected_vertices,
                                        int expected_edges) {
    VerificationReport rep;
    int on_vertices = 0;
    for (const auto& v : c.vertices) {
        if (g.incident(v, s)) ++on_vertices;
    }
    int in_edges = 0;
    for (const auto& l : c.edge_lines) {
        if (g.contains(s, l)) ++in_edges;
    }
    rep.stats.vertex_count = c.length();
    rep.stats.distinct_line_count = static_cast<int>(c.edge_lines.size());
    rep.stats.anchor_vertex_count = on_vertices;
    rep.stats.anchor_edge_count = in_edges;
    if (on_vertices != expected_vertices) {
        rep.fail("anchor-vertices", "expected " + std::to_string(expected_vertices) +
                                        " vertices on the anchor, counted " +
                                        std::to_string(on_vertices));
    }
    if (in_edges != expected_edges) {
        rep.fail("anchor-edges", "expected " + std::to_string(expected_edges) +
                                     " edges inside the anchor, counted " +
                                     std::to_string(in_edges));
    }
    return rep;
}

VerificationReport verify_origin_mode(const PlaneFrame& frame, const CycleEmbedding& c,
                                      OriginMode mode) {
    VerificationReport rep;
    const int q = static_cast<int>(frame.q());
    bool has_origin = false;
    for (const auto& v : c.vertices) {
        if (v == frame.origin) has_origin = true;
        if (!frame.is_affine(v)) {
            rep.fail("affine", "vertex " + to_string(v) + " lies on the line at infinity");
        }
    }
    int spoke_edges = 0;
    for (const auto& l : c.edge_lines) {
        if (std::find(frame.spokes.begin(), frame.spokes.end(), l) != frame.spokes.end())
            ++spoke_edges;
    }
    rep.stats.vertex_count = c.length();
    rep.stats.distinct_line_count = static_cast<int>(c.edge_lines.size());
    if (mode == OriginMode::ThroughOrigin) {
        if (!has_origin) rep.fail("origin", "origin is not a vertex");
        if (spoke_edges >= q + 1)
            rep.fail("free-spoke", "every spoke is used as an edge");
    } else {
        if (has_origin) rep.fail("origin", "origin must not be a vertex");
        if (spoke_edges != 0)
            rep.fail("spoke-edges", std::to_string(spoke_edges) + " spoke edges present");
        if (c.length() % (q + 1) != 0 || c.length() / (q + 1) > q - 1 || c.length() < q + 1)
            rep.fail("length-multiple",
                     "length " + std::to_string(c.length()) + " is not t*(q+1), 1 <= t <= q-1");
    }
    return rep;
}

std::uint64_t brute_force_cycle_count(const Geometry& g, int k) {
    if (k < 3) return 0;
    const std::uint64_t npts = g.point_count();
    if (npts > 15 || k > 8)
        throw BudgetExceeded("brute-force counting is limited to 15 points and k <= 8");
    const auto& pts = g.points();
    const int n = static_cast<int>(pts.size());
    if (k > n) return 0;

    // Line id per point pair; counting then runs on plain integers.
    std::vector<int> line_of(static_cast<std::size_t>(n) * n, -1);
    std::size_t nlines = g.lines().size();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const int id = g.line_id(g.line_through(pts[static_cast<std::size_t>(i)],
                                                    pts[static_cast<std::size_t>(j)]));
            line_of[static_cast<std::size_t>(i * n + j)] = id;
            line_of[static_cast<std::size_t>(j * n + i)] = id;
        }
    }
    if (nlines > 64) throw BudgetExceeded("too many lines for the counting mask");

    std::uint64_t count = 0;
    std::vector<int> path;
    path.reserve(static_cast<std::size_t>(k));
    // Canonical form: the first vertex is the smallest id in the cycle and
    // the second is smaller than the last (kills rotations and reflections).
    auto dfs = [&](auto&& self, std::uint32_t used, std::uint64_t used_lines) -> void {
        const int depth = static_cast<int>(path.size());
        const int u = path.back();
        if (depth == k) {
            const int v0 = path.front();
            const int closing = line_of[static_cast<std::size_t>(u * n + v0)];
            if (used_lines >> closing & 1) return;
            if (path[1] > path[static_cast<std::size_t>(k - 1)]) return;
            ++count;
            return;
        }
        for (int w = path.front() + 1; w < n; ++w) {
            if (used >> w & 1) continue;
            const int l = line_of[static_cast<std::size_t>(u * n + w)];
            if (used_lines >> l & 1) continue;
            path.push_back(w);
            self(self, used | (1u << w), used_lines | (1ull << l));
            path.pop_back();
        }
    };
    for (int start = 0; start + k <= n + 0; ++start) {
        path.assign(1, start);
        dfs(dfs, 1u << start, 0);
    }
    return count;
}

}  // namespace pgc
