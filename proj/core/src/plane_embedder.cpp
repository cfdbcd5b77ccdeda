#include "pgcycles/plane_embedder.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <optional>
#include <random>
#include <unordered_map>

namespace pgc {
namespace {

// Dense id-based view of a plane used by the backtracking searches.
struct PlaneTables {
    const Geometry* g = nullptr;
    int npts = 0;
    std::vector<int> line_of;     // npts * npts -> line id
    std::vector<char> affine;     // vertex candidates
    std::vector<int> spoke_idx;   // per line id: spoke index or -1
    int origin_id = -1;

    int line(int a, int b) const { return line_of[static_cast<std::size_t>(a * npts + b)]; }
};

PlaneTables build_tables(const Geometry& g, const PlaneFrame* frame) {
    PlaneTables t;
    t.g = &g;
    const auto& pts = g.points();
    t.npts = static_cast<int>(pts.size());
    if (t.npts > 63) throw SizeExceeded("plane too large for the cycle search");
    t.line_of.assign(static_cast<std::size_t>(t.npts) * t.npts, -1);
    for (int i = 0; i < t.npts; ++i) {
        for (int j = i + 1; j < t.npts; ++j) {
            const int id = g.line_id(g.line_through(pts[i], pts[j]));
            t.line_of[static_cast<std::size_t>(i * t.npts + j)] = id;
            t.line_of[static_cast<std::size_t>(j * t.npts + i)] = id;
        }
    }
    t.spoke_idx.assign(g.lines().size(), -1);
    t.affine.assign(static_cast<std::size_t>(t.npts), 1);
    if (frame) {
        t.origin_id = g.point_id(frame->origin);
        for (std::size_t s = 0; s < frame->spokes.size(); ++s)
            t.spoke_idx[static_cast<std::size_t>(g.line_id(frame->spokes[s]))] =
                static_cast<int>(s);
        for (int i = 0; i < t.npts; ++i)
            t.affine[static_cast<std::size_t>(i)] = frame->is_affine(pts[i]) ? 1 : 0;
    }
    return t;
}

enum class SearchMode { Plain, ThroughOrigin, OriginFree };

struct SearchState {
    const PlaneTables& t;
    SearchMode mode;
    int k;
    std::uint32_t q;
    std::uint64_t used_pts = 0;
    std::uint64_t used_lines = 0;
    std::uint32_t spoke_mask = 0;
    std::vector<int> path;
    std::uint64_t nodes = 0;
    std::uint64_t node_budget = 0;
    const std::vector<int>* order = nullptr;

    bool edge_ok(int line_id, std::uint32_t* new_spokes) const {
        if (used_lines >> line_id & 1) return false;
        const int s = t.spoke_idx[static_cast<std::size_t>(line_id)];
        *new_spokes = spoke_mask;
        if (s >= 0) {
            if (mode == SearchMode::OriginFree) return false;
            if (mode == SearchMode::ThroughOrigin) {
                *new_spokes |= 1u << s;
                if (std::popcount(*new_spokes) > static_cast<int>(q)) return false;
            }
        }
        return true;
    }

    bool extend(int depth) {
        if (++nodes > node_budget) return false;
        if (depth == k) {
            const int u = path.back();
            const int v0 = path.front();
            std::uint32_t spokes = 0;
            if (!edge_ok(t.line(u, v0), &spokes)) return false;
            // Reflection canonicalization.
            if (path[1] > path[static_cast<std::size_t>(k - 1)]) return false;
            return true;
        }
        const int u = path.back();
        for (int w : *order) {
            if (used_pts >> w & 1) continue;
            if (!t.affine[static_cast<std::size_t>(w)]) continue;
            if (mode == SearchMode::OriginFree && w == t.origin_id) continue;
            if (mode != SearchMode::ThroughOrigin && w < path.front()) continue;
            std::uint32_t spokes = 0;
            const int l = t.line(u, w);
            if (!edge_ok(l, &spokes)) continue;
            const std::uint32_t saved_spokes = spoke_mask;
            spoke_mask = spokes;
            used_pts |= 1ull << w;
            used_lines |= 1ull << l;
            path.push_back(w);
            if (extend(depth + 1)) return true;
            path.pop_back();
            used_lines &= ~(1ull << l);
            used_pts &= ~(1ull << w);
            spoke_mask = saved_spokes;
            if (nodes > node_budget) return false;
        }
        return false;
    }
};

std::optional<std::vector<int>> search_cycle(const PlaneTables& t, int k, SearchMode mode,
                                             const SearchOptions& opts,
                                             std::uint64_t* nodes_spent) {
    std::vector<int> base_order(static_cast<std::size_t>(t.npts));
    std::iota(base_order.begin(), base_order.end(), 0);
    for (std::uint32_t restart = 0; restart < std::max(1u, opts.restarts); ++restart) {
        std::vector<int> order = base_order;
        if (restart > 0) {
            std::mt19937_64 rng(opts.seed * 0x9E3779B97F4A7C15ull + restart);
            std::shuffle(order.begin(), order.end(), rng);
        }
        std::vector<int> starts;
        if (mode == SearchMode::ThroughOrigin) {
            starts.push_back(t.origin_id);
        } else {
            for (int s = 0; s < t.npts; ++s) {
                if (t.affine[static_cast<std::size_t>(s)] &&
                    !(mode == SearchMode::OriginFree && s == t.origin_id))
                    starts.push_back(s);
            }
        }
        for (int s : starts) {
            SearchState st{t, mode, k, t.g->q(), 0, 0, 0, {}, 0,
                           opts.max_nodes_per_restart, &order};
            st.used_pts = 1ull << s;
            st.path.push_back(s);
            const bool found = st.extend(1);
            if (nodes_spent) *nodes_spent += st.nodes;
            if (found) return st.path;
        }
    }
    return std::nullopt;
}

CycleEmbedding cycle_from_ids(const Geometry& g, const std::vector<int>& ids) {
    CycleEmbedding c;
    const auto& pts = g.points();
    const int k = static_cast<int>(ids.size());
    for (int i = 0; i < k; ++i) c.vertices.push_back(pts[static_cast<std::size_t>(ids[i])]);
    for (int i = 0; i < k; ++i) {
        c.edge_lines.push_back(g.line_through(c.vertices[static_cast<std::size_t>(i)],
                                              c.vertices[static_cast<std::size_t>((i + 1) % k)]));
    }
    return c;
}

int spoke_of_point(const PlaneFrame& frame, const Point& p) {
    for (std::size_t i = 0; i < frame.spokes.size(); ++i) {
        if (frame.geom.incident(p, frame.spokes[i])) return static_cast<int>(i);
    }
    throw InternalError("point lies on no spoke");
}

bool uses_line(const CycleEmbedding& c, const Subspace& l) {
    return std::find(c.edge_lines.begin(), c.edge_lines.end(), l) != c.edge_lines.end();
}

}  // namespace

PlaneFrame make_frame(const Geometry& g2, const Subspace& line_at_infinity) {
    if (g2.dim() != 2) throw WrongDimension("plane frame requires n = 2");
    if (line_at_infinity.rank() != 2 || line_at_infinity.cols != 3)
        throw WrongDimension("line at infinity must be a line of the plane");
    PlaneFrame f{g2, Point{}, line_at_infinity, {}, {}};
    for (const auto& p : g2.points()) {
        if (!g2.incident(p, line_at_infinity)) {
            f.origin = p;
            break;
        }
    }
    for (const auto& mark : g2.points_on(line_at_infinity))
        f.spokes.push_back(g2.line_through(f.origin, mark));
    std::sort(f.spokes.begin(), f.spokes.end());
    for (const auto& spoke : f.spokes) {
        const Subspace meet = g2.intersect(spoke, line_at_infinity);
        if (meet.rank() != 1) throw InternalError("spoke meets infinity badly");
        f.marks.push_back(g2.normalize_point(meet.basis[0]));
    }
    return f;
}

PlaneFrame make_default_frame(const Geometry& g2) {
    return make_frame(g2, g2.canonical_hyperplane());
}

CycleEmbedding affine_cycle_in_mode(const PlaneFrame& frame, int k, OriginMode mode,
                                    const SearchOptions& opts) {
    const std::uint32_t q = frame.q();
    const int qq = static_cast<int>(q * q);
    if (k < 3 || k > qq) throw OutOfRange("affine cycle length must be in [3, q^2]");
    if (mode == OriginMode::OriginFree) {
        if (k % static_cast<int>(q + 1) != 0 || k / static_cast<int>(q + 1) > static_cast<int>(q) - 1)
            throw OutOfRange("origin-free lengths must be t*(q+1), 1 <= t <= q-1");
    }
    const PlaneTables tables = build_tables(frame.geom, &frame);
    std::uint64_t nodes = 0;
    auto ids = search_cycle(tables, k,
                            mode == OriginMode::ThroughOrigin ? SearchMode::ThroughOrigin
                                                              : SearchMode::OriginFree,
                            opts, &nodes);
    if (!ids)
        throw SearchExhausted("affine " + std::to_string(k) + "-cycle search exhausted (q=" +
                              std::to_string(q) + ", nodes=" + std::to_string(nodes) +
                              ", restarts=" + std::to_string(opts.restarts) + ")");
    return cycle_from_ids(frame.geom, *ids);
}

std::pair<CycleEmbedding, OriginMode> affine_cycle(const PlaneFrame& frame, int k,
                                                   const SearchOptions& opts) {
    const std::uint32_t q = frame.q();
    if (k < 3 || k > static_cast<int>(q * q))
        throw OutOfRange("affine cycle length must be in [3, q^2]");
    try {
        return {affine_cycle_in_mode(frame, k, OriginMode::ThroughOrigin, opts),
                OriginMode::ThroughOrigin};
    } catch (const SearchExhausted&) {
        if (k % static_cast<int>(q + 1) == 0 &&
            k / static_cast<int>(q + 1) <= static_cast<int>(q) - 1) {
            return {affine_cycle_in_mode(frame, k, OriginMode::OriginFree, opts),
                    OriginMode::OriginFree};
        }
        throw;
    }
}

PathEmbedding anchored_path(const PlaneFrame& frame, int k, const SearchOptions& opts) {
    const std::uint32_t q = frame.q();
    const Geometry& g = frame.geom;
    if (k < 3 || k > static_cast<int>(q * q) + 2)
        throw OutOfRange("anchored path length must be in [3, q^2+2]");

    if (k == 3) {
        PathEmbedding p;
        p.vertices = {frame.marks[0], frame.origin, frame.marks[1]};
        p.edge_lines = {frame.spokes[0], frame.spokes[1]};
        return p;
    }
    if (k == 4) {
        // Two marks joined through one affine point of each of two spokes.
        auto first_affine = [&](const Subspace& spoke) {
            for (const auto& p : g.points_on(spoke)) {
                if (frame.is_affine(p) && p != frame.origin) return p;
            }
            throw InternalError("spoke without affine point");
        };
        const Point a = first_affine(frame.spokes[0]);
        const Point b = first_affine(frame.spokes[1]);
        PathEmbedding p;
        p.vertices = {frame.marks[0], a, b, frame.marks[1]};
        p.edge_lines = {frame.spokes[0], g.line_through(a, b), frame.spokes[1]};
        return p;
    }

    auto [cyc, mode] = affine_cycle(frame, k - 2, opts);
    if (mode == OriginMode::ThroughOrigin) {
        // Replace one spoke edge at the origin by a detour through its mark,
        // and exit through a spoke that the cycle does not use.
        int oi = -1;
        for (int i = 0; i < cyc.length(); ++i) {
            if (cyc.vertices[static_cast<std::size_t>(i)] == frame.origin) {
                oi = i;
                break;
            }
        }
        if (oi < 0) throw InternalError("origin missing from through-origin cycle");
        const Subspace deleted = cyc.edge_lines[static_cast<std::size_t>(oi)];
        const int del_spoke = spoke_of_point(frame, cyc.vertices[static_cast<std::size_t>(
                                                        (oi + 1) % cyc.length())]);
        int free_spoke = -1;
        for (std::size_t s = 0; s < frame.spokes.size(); ++s) {
            if (!uses_line(cyc, frame.spokes[s])) {
                free_spoke = static_cast<int>(s);
                break;
            }
        }
        if (free_spoke < 0) throw InternalError("no free spoke in through-origin cycle");
        PathEmbedding mid = open_by_edge(cyc, deleted);  // successor ... origin
        PathEmbedding out;
        out.vertices.push_back(frame.marks[static_cast<std::size_t>(del_spoke)]);
        out.edge_lines.push_back(frame.spokes[static_cast<std::size_t>(del_spoke)]);
        out.vertices.insert(out.vertices.end(), mid.vertices.begin(), mid.vertices.end());
        out.edge_lines.insert(out.edge_lines.end(), mid.edge_lines.begin(),
                              mid.edge_lines.end());
        out.edge_lines.push_back(frame.spokes[static_cast<std::size_t>(free_spoke)]);
        out.vertices.push_back(frame.marks[static_cast<std::size_t>(free_spoke)]);
        return out;
    }

    // Origin-free cycle: drop one vertex and reroute through the origin,
    // entering and leaving along spokes. Needs three consecutive vertices
    // on three distinct spokes.
    const int len = cyc.length();
    for (int m = 0; m < len; ++m) {
        const Point& pi = cyc.vertices[static_cast<std::size_t>((m + len - 1) % len)];
        const Point& pt = cyc.vertices[static_cast<std::size_t>(m)];
        const Point& pj = cyc.vertices[static_cast<std::size_t>((m + 1) % len)];
        const int si = spoke_of_point(frame, pi);
        const int st = spoke_of_point(frame, pt);
        const int sj = spoke_of_point(frame, pj);
        if (si == sj || si == st || st == sj) continue;
        PathEmbedding mid = reverse_path(open_by_vertex(cyc, pt));  // pi ... pj
        PathEmbedding out;
        out.vertices.push_back(frame.marks[static_cast<std::size_t>(si)]);
        out.edge_lines.push_back(frame.spokes[static_cast<std::size_t>(si)]);
        out.vertices.insert(out.vertices.end(), mid.vertices.begin(), mid.vertices.end());
        out.edge_lines.insert(out.edge_lines.end(), mid.edge_lines.begin(),
                              mid.edge_lines.end());
        out.edge_lines.push_back(frame.spokes[static_cast<std::size_t>(sj)]);
        out.vertices.push_back(frame.origin);
        out.edge_lines.push_back(frame.spokes[static_cast<std::size_t>(st)]);
        out.vertices.push_back(frame.marks[static_cast<std::size_t>(st)]);
        return out;
    }
    // Degenerate case: the cycle alternates between two spokes, so no such
    // triple exists. Opening one edge and extending both ends to the marks
    // gives the same endpoint properties without visiting the origin.
    PathEmbedding mid = open_by_edge(cyc, cyc.edge_lines[0]);  // v1 ... v0
    const int sa = spoke_of_point(frame, mid.vertices.front());
    const int sb = spoke_of_point(frame, mid.vertices.back());
    if (sa == sb) throw InternalError("adjacent cycle vertices share a spoke");
    PathEmbedding out;
    out.vertices.push_back(frame.marks[static_cast<std::size_t>(sa)]);
    out.edge_lines.push_back(frame.spokes[static_cast<std::size_t>(sa)]);
    out.vertices.insert(out.vertices.end(), mid.vertices.begin(), mid.vertices.end());
    out.edge_lines.insert(out.edge_lines.end(), mid.edge_lines.begin(), mid.edge_lines.end());
    out.edge_lines.push_back(frame.spokes[static_cast<std::size_t>(sb)]);
    out.vertices.push_back(frame.marks[static_cast<std::size_t>(sb)]);
    return out;
}

CycleEmbedding anchored_cycle_plane(const PlaneFrame& frame, int k,
                                    const SearchOptions& opts) {
    const PathEmbedding p = anchored_path(frame, k, opts);
    if (frame.geom.line_through(p.vertices.back(), p.vertices.front()) !=
        frame.line_at_infinity)
        throw InternalError("anchored path endpoints do not close along infinity");
    CycleEmbedding c;
    c.vertices = p.vertices;
    c.edge_lines = p.edge_lines;
    c.edge_lines.push_back(frame.line_at_infinity);
    return c;
}

CycleEmbedding singer_hamiltonian_cycle(const Geometry& g2) {
    if (g2.dim() != 2) throw WrongDimension("requires n = 2");
    const Field& F = g2.field();
    const std::uint32_t q = F.q();
    const Field K = Field::make(F.p(), 3 * F.e());
    const Elem gamma = K.primitive_element();

    // Embed GF(q) into GF(q^3): the first subfield element that is a root
    // of the base modulus generates the copy; for a prime field the
    // embedding is the identity on {0, ..., p-1}.
    Elem root = 0;
    if (F.e() > 1) {
        bool found = false;
        for (Elem z = 0; z < K.q() && !found; ++z) {
            if (K.pow(z, q) != z) continue;  // not in the q-element subfield
            Elem acc = 0;
            const auto& mod = F.modulus();
            for (std::size_t i = mod.size(); i-- > 0;)
                acc = K.add(K.mul(acc, z), mod[i]);
            if (acc == 0) {
                root = z;
                found = true;
            }
        }
        if (!found) throw InternalError("no embedding root in the extension");
    }
    auto embed = [&](Elem a) -> Elem {
        if (F.e() == 1) return a;
        const auto c = F.coeffs(a);
        Elem acc = 0;
        for (std::size_t i = c.size(); i-- > 0;) acc = K.add(K.mul(acc, root), c[i]);
        return acc;
    };

    const Elem gamma2 = K.mul(gamma, gamma);
    std::unordered_map<Elem, std::array<Elem, 3>> table;
    table.reserve(static_cast<std::size_t>(q) * q * q);
    for (Elem a = 0; a < q; ++a) {
        for (Elem b = 0; b < q; ++b) {
            for (Elem c = 0; c < q; ++c) {
                if (a == 0 && b == 0 && c == 0) continue;
                const Elem z = K.add(embed(a), K.add(K.mul(embed(b), gamma),
                                                     K.mul(embed(c), gamma2)));
                if (!table.emplace(z, std::array<Elem, 3>{a, b, c}).second)
                    throw InternalError("coordinate table collision");
            }
        }
    }

    const int len = static_cast<int>(q * q + q + 1);
    CycleEmbedding cyc;
    Elem z = 1;
    for (int i = 0; i < len; ++i) {
        const auto it = table.find(z);
        if (it == table.end()) throw InternalError("power fell outside the table");
        cyc.vertices.push_back(g2.normalize_point(
            {it->second[0], it->second[1], it->second[2]}));
        z = K.mul(z, gamma);
    }
    std::vector<Subspace> seen;
    for (int i = 0; i < len; ++i) {
        Subspace l = g2.line_through(cyc.vertices[static_cast<std::size_t>(i)],
                                     cyc.vertices[static_cast<std::size_t>((i + 1) % len)]);
        if (std::find(seen.begin(), seen.end(), l) != seen.end())
            throw InternalError("cyclic edge orbit produced a repeated line");
        seen.push_back(l);
        cyc.edge_lines.push_back(std::move(l));
    }
    return cyc;
}

CycleEmbedding plane_cycle(const Geometry& g2, int k, const SearchOptions& opts) {
    if (g2.dim() != 2) throw WrongDimension("requires n = 2");
    const int q = static_cast<int>(g2.q());
    const int max_k = q * q + q + 1;
    if (k < 3 || k > max_k) throw OutOfRange("plane cycle length must be in [3, q^2+q+1]");
    if (k <= q * q + 2) {
        return anchored_cycle_plane(make_default_frame(g2), k, opts);
    }
    if (k == max_k) return singer_hamiltonian_cycle(g2);
    const PlaneTables tables = build_tables(g2, nullptr);
    std::uint64_t nodes = 0;
    auto ids = search_cycle(tables, k, SearchMode::Plain, opts, &nodes);
    if (!ids)
        throw SearchExhausted("plane " + std::to_string(k) + "-cycle search exhausted (q=" +
                              std::to_string(q) + ", nodes=" + std::to_string(nodes) + ")");
    return cycle_from_ids(g2, *ids);
}

}  // namespace pgc
