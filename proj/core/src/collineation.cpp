#include "pgcycles/collineation.hpp"

#include <algorithm>
#include <memory>
#include <string>

namespace pgc {
namespace {

void canonicalize(const Field& F, std::vector<std::vector<Elem>>& m) {
    for (auto& row : m) {
        for (Elem x : row) {
            if (x == 0) continue;
            if (x != 1) {
                const Elem scale = F.inv(x);
                for (auto& r2 : m) {
                    for (auto& y : r2) y = F.mul(y, scale);
                }
            }
            return;
        }
    }
}

void check_shape(const Geometry& g, const std::vector<std::vector<Elem>>& m) {
    if (static_cast<int>(m.size()) != g.ncols())
        throw DimensionMismatch("projectivity matrix has wrong shape");
    for (const auto& row : m) {
        if (static_cast<int>(row.size()) != g.ncols())
            throw DimensionMismatch("projectivity matrix has wrong shape");
    }
}

// Greedily extends `rows` by candidates that increase the rank, stopping at
// `target_rank`. Deterministic: candidates are taken in the given order.
void extend_basis(const Field& F, std::vector<std::vector<Elem>>& rows,
                  const std::vector<std::vector<Elem>>& candidates, int target_rank) {
    for (const auto& cand : candidates) {
        if (static_cast<int>(rows.size()) >= target_rank) return;
        auto trial = rows;
        trial.push_back(cand);
        if (rank_of(F, trial) == static_cast<int>(rows.size()) + 1) rows.push_back(cand);
    }
    if (static_cast<int>(rows.size()) < target_rank)
        throw InternalError("basis completion failed");
}

std::vector<std::vector<Elem>> unit_rows(int n) {
    std::vector<std::vector<Elem>> rows;
    for (int i = 0; i < n; ++i) {
        std::vector<Elem> r(static_cast<std::size_t>(n), 0);
        r[static_cast<std::size_t>(i)] = 1;
        rows.push_back(std::move(r));
    }
    return rows;
}

// Adapted coordinates for the pair core < member: rows of the core basis,
// then one member point off the core, then one vector outside the member.
struct AdaptedBasis {
    std::vector<std::vector<Elem>> s;      // full ambient basis, rows
    std::vector<std::vector<Elem>> s_inv;  // inverse
    int core_rank = 0;
};

AdaptedBasis adapted_basis(const Geometry& g, const Subspace& core,
                           const Subspace& member) {
    if (core.projective_dim() != g.dim() - 2)
        throw WrongDimension("core must have projective dimension n-2");
    if (member.rank() != g.dim() || !g.contains(member, core))
        throw WrongDimension("member must be a hyperplane containing the core");
    AdaptedBasis out;
    out.core_rank = core.rank();
    out.s = core.basis;
    // First member point off the core, in canonical order.
    bool found = false;
    for (const auto& p : g.points_on(member)) {
        if (!g.incident(p, core)) {
            out.s.push_back(p.coords);
            found = true;
            break;
        }
    }
    if (!found) throw InternalError("member has no point off the core");
    extend_basis(g.field(), out.s, unit_rows(g.ncols()), g.ncols());
    out.s_inv = mat_inverse(g.field(), out.s);
    return out;
}

// The subgroup element with chart action y -> scale * y + shift, expressed
// in ambient coordinates.
Projectivity chart_map(const Geometry& g, const AdaptedBasis& ab, Elem scale,
                       const std::vector<Elem>& shift) {
    const Field& F = g.field();
    const int n1 = g.ncols();
    std::vector<std::vector<Elem>> t(static_cast<std::size_t>(n1),
                                     std::vector<Elem>(static_cast<std::size_t>(n1), 0));
    for (int i = 0; i < ab.core_rank; ++i) t[i][i] = scale;
    // The row of the off-core member point: a -> a + shift (shift in core
    // coordinates).
    for (int j = 0; j < ab.core_rank; ++j) t[ab.core_rank][j] = shift[j];
    t[ab.core_rank][ab.core_rank] = 1;
    for (int i = ab.core_rank + 1; i < n1; ++i) t[i][i] = 1;
    auto m = mat_mul(F, mat_mul(F, ab.s_inv, t), ab.s);
    return make_projectivity(g, std::move(m));
}

}  // namespace

Projectivity identity_projectivity(const Geometry& g) {
    return Projectivity{unit_rows(g.ncols())};
}

Projectivity make_projectivity(const Geometry& g, std::vector<std::vector<Elem>> m) {
    check_shape(g, m);
    if (rank_of(g.field(), m) != g.ncols())
        throw DimensionMismatch("projectivity matrix is singular");
    canonicalize(g.field(), m);
    return Projectivity{std::move(m)};
}

Point apply(const Geometry& g, const Projectivity& t, const Point& p) {
    check_shape(g, t.matrix);
    return g.normalize_point(row_times_matrix(g.field(), p.coords, t.matrix));
}

Subspace apply(const Geometry& g, const Projectivity& t, const Subspace& s) {
    check_shape(g, t.matrix);
    std::vector<std::vector<Elem>> rows;
    rows.reserve(s.basis.size());
    for (const auto& r : s.basis) rows.push_back(row_times_matrix(g.field(), r, t.matrix));
    return g.span_rows(std::move(rows));
}

PathEmbedding apply(const Geometry& g, const Projectivity& t, const PathEmbedding& p) {
    PathEmbedding out;
    out.vertices.reserve(p.vertices.size());
    out.edge_lines.reserve(p.edge_lines.size());
    for (const auto& v : p.vertices) out.vertices.push_back(apply(g, t, v));
    for (const auto& l : p.edge_lines) out.edge_lines.push_back(apply(g, t, l));
    return out;
}

CycleEmbedding apply(const Geometry& g, const Projectivity& t, const CycleEmbedding& c) {
    CycleEmbedding out;
    out.vertices.reserve(c.vertices.size());
    out.edge_lines.reserve(c.edge_lines.size());
    for (const auto& v : c.vertices) out.vertices.push_back(apply(g, t, v));
    for (const auto& l : c.edge_lines) out.edge_lines.push_back(apply(g, t, l));
    return out;
}

Projectivity compose(const Geometry& g, const Projectivity& a, const Projectivity& b) {
    check_shape(g, a.matrix);
    check_shape(g, b.matrix);
    return make_projectivity(g, mat_mul(g.field(), a.matrix, b.matrix));
}

Projectivity inverse(const Geometry& g, const Projectivity& t) {
    check_shape(g, t.matrix);
    return make_projectivity(g, mat_inverse(g.field(), t.matrix));
}

Projectivity map_flag_to_flag(const Geometry& g, const Subspace& h, const Flag& source,
                              const Flag& target) {
    if (h.rank() != g.dim()) throw FlagInvalid("h must be a hyperplane");
    for (const Flag* f : {&source, &target}) {
        if (f->line.rank() != 2) throw FlagInvalid("flag line must be a line");
        if (!g.contains(h, f->line)) throw FlagInvalid("flag line not inside h");
        if (f->a == f->b) throw FlagInvalid("flag points must be distinct");
        if (!g.incident(f->a, f->line) || !g.incident(f->b, f->line))
            throw FlagInvalid("flag point not on flag line");
    }
    const Field& F = g.field();
    auto build = [&](const Flag& f) {
        std::vector<std::vector<Elem>> rows{f.a.coords, f.b.coords};
        extend_basis(F, rows, h.basis, g.dim());          // complete inside h
        extend_basis(F, rows, unit_rows(g.ncols()), g.ncols());  // leave h
        return rows;
    };
    const auto src = build(source);
    const auto dst = build(target);
    return make_projectivity(g, mat_mul(F, mat_inverse(F, src), dst));
}

std::vector<Point> core_fixing_orbit(const Geometry& g, const Subspace& core,
                                     const Subspace& member, const Point& a) {
    if (!g.incident(a, member) || g.incident(a, core))
        throw FlagInvalid("orbit point must lie in member minus core");
    const AdaptedBasis ab = adapted_basis(g, core, member);
    const Field& F = g.field();
    std::vector<Point> orbit;
    std::vector<std::string> seen;
    std::uint64_t shift_count = 1;
    for (int i = 0; i < ab.core_rank; ++i) shift_count *= F.q();
    for (Elem scale = 1; scale < F.q(); ++scale) {
        for (std::uint64_t sidx = 0; sidx < shift_count; ++sidx) {
            std::vector<Elem> shift(static_cast<std::size_t>(ab.core_rank), 0);
            std::uint64_t t = sidx;
            for (int i = 0; i < ab.core_rank; ++i) {
                shift[static_cast<std::size_t>(i)] = static_cast<Elem>(t % F.q());
                t /= F.q();
            }
            const Point image = apply(g, chart_map(g, ab, scale, shift), a);
            const std::string key = coords_key(image.coords);
            if (std::find(seen.begin(), seen.end(), key) == seen.end()) {
                seen.push_back(key);
                orbit.push_back(image);
            }
        }
    }
    std::sort(orbit.begin(), orbit.end());
    return orbit;
}

PathEmbedding move_endpoint(const Geometry& g, const Subspace& core,
                            const Subspace& member, const PathEmbedding& path,
                            const Point& endpoint, const std::vector<Point>& forbidden) {
    if (path.length() < 1) throw FlagInvalid("empty path");
    if (path.vertices.front() != endpoint && path.vertices.back() != endpoint)
        throw FlagInvalid("endpoint is not an endpoint of the path");
    if (g.incident(endpoint, core)) throw FlagInvalid("endpoint lies on the core");
    for (const auto& v : path.vertices) {
        if (!g.incident(v, member)) throw FlagInvalid("path leaves the member");
    }
    const auto is_allowed = [&](const Point& p) {
        return std::find(forbidden.begin(), forbidden.end(), p) == forbidden.end();
    };
    if (is_allowed(endpoint)) return path;  // identity move

    const AdaptedBasis ab = adapted_basis(g, core, member);
    const Field& F = g.field();
    const auto try_map = [&](Elem scale, const std::vector<Elem>& shift)
        -> std::unique_ptr<PathEmbedding> {
        const Projectivity t = chart_map(g, ab, scale, shift);
        if (is_allowed(apply(g, t, endpoint)))
            return std::make_unique<PathEmbedding>(apply(g, t, path));
        return nullptr;
    };
    const std::vector<Elem> no_shift(static_cast<std::size_t>(ab.core_rank), 0);
    // Scalar homologies first.
    for (Elem scale = 2; scale < F.q(); ++scale) {
        if (auto moved = try_map(scale, no_shift)) return *moved;
    }
    // Then elations whose axis contains the core.
    std::uint64_t shift_count = 1;
    for (int i = 0; i < ab.core_rank; ++i) shift_count *= F.q();
    for (std::uint64_t sidx = 1; sidx < shift_count; ++sidx) {
        std::vector<Elem> shift(static_cast<std::size_t>(ab.core_rank), 0);
        std::uint64_t t = sidx;
        for (int i = 0; i < ab.core_rank; ++i) {
            shift[static_cast<std::size_t>(i)] = static_cast<Elem>(t % F.q());
            t /= F.q();
        }
        if (auto moved = try_map(1, shift)) return *moved;
    }
    throw NoValidMove("orbit exhausted while avoiding " +
                      std::to_string(forbidden.size()) + " forbidden points");
}

}  // namespace pgc
