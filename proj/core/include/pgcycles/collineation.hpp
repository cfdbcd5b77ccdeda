#pragma once

#include <vector>

#include "pgcycles/embedding.hpp"
#include "pgcycles/geometry.hpp"

namespace pgc {

/// A projectivity of PG(n,q): an invertible (n+1)x(n+1) matrix over GF(q)
/// modulo scalars, canonicalized so that its first nonzero entry in
/// row-major order equals 1. Points transform as row vectors, v -> v * M.
struct Projectivity {
    std::vector<std::vector<Elem>> matrix;
};

Projectivity identity_projectivity(const Geometry& g);

/// Wraps and canonicalizes a matrix; throws DimensionMismatch if the shape
/// is wrong or the matrix is singular.
Projectivity make_projectivity(const Geometry& g, std::vector<std::vector<Elem>> m);

Point apply(const Geometry& g, const Projectivity& t, const Point& p);
Subspace apply(const Geometry& g, const Projectivity& t, const Subspace& s);
PathEmbedding apply(const Geometry& g, const Projectivity& t, const PathEmbedding& p);
CycleEmbedding apply(const Geometry& g, const Projectivity& t, const CycleEmbedding& c);

/// Group operations. compose(a, b) applies a first, then b.
Projectivity compose(const Geometry& g, const Projectivity& a, const Projectivity& b);
Projectivity inverse(const Geometry& g, const Projectivity& t);

/// An incident (line, point, point) triple inside a hyperplane.
struct Flag {
    Subspace line;
    Point a;
    Point b;
};

/// A projectivity that stabilizes the hyperplane h setwise and maps the
/// source flag onto the target flag: line to line, a to a, b to b. Both
/// flag lines must lie in h. The basis completion is deterministic (rows
/// of h, then unit vectors, skipping dependents), which pins the output.
/// Throws FlagInvalid when the incidence preconditions fail.
Projectivity map_flag_to_flag(const Geometry& g, const Subspace& h, const Flag& source,
                              const Flag& target);

/// Orbit of a point of member \ core under the subgroup of projectivities
/// that fix `core` pointwise and stabilize `member` setwise (scalar
/// homologies and elations whose axis contains the core). core has
/// projective dimension n-2 and member is a hyperplane containing it.
std::vector<Point> core_fixing_orbit(const Geometry& g, const Subspace& core,
                                     const Subspace& member, const Point& a);

/// Moves one endpoint of a path inside `member` off the forbidden set, by
/// the first successful candidate in a deterministic enumeration (identity,
/// scalar homologies, then elations with axis through the core). The
/// applied map fixes `core` pointwise and stabilizes `member`, so any path
/// vertices on the core stay put. Throws NoValidMove if the orbit is
/// exhausted.
PathEmbedding move_endpoint(const Geometry& g, const Subspace& core,
                            const Subspace& member, const PathEmbedding& path,
                            const Point& endpoint, const std::vector<Point>& forbidden);

}  // namespace pgc
