#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pgcycles/embedding.hpp"
#include "pgcycles/geometry.hpp"

namespace pgc {

/// An affine chart of PG(2,q): an origin O, a line at infinity not through
/// O, the q+1 spokes (lines through O) in canonical order, and for each
/// spoke its mark, the point where it meets the line at infinity.
struct PlaneFrame {
    Geometry geom;
    Point origin;
    Subspace line_at_infinity;
    std::vector<Subspace> spokes;
    std::vector<Point> marks;

    std::uint32_t q() const { return geom.q(); }
    bool is_affine(const Point& p) const { return !geom.incident(p, line_at_infinity); }
};

/// Frame over an arbitrary line at infinity; the origin is the first point
/// (canonical order) off that line.
PlaneFrame make_frame(const Geometry& g2, const Subspace& line_at_infinity);

/// The default frame: line at infinity {last coordinate = 0}, origin (0,0,1).
PlaneFrame make_default_frame(const Geometry& g2);

/// How a cycle of affine points sits relative to the origin:
///   ThroughOrigin - O is a vertex and at least one spoke is not an edge;
///   OriginFree    - O is not a vertex, no spoke is an edge, and the length
///                   is a multiple of q+1 (t*(q+1) with 1 <= t <= q-1).
enum class OriginMode { ThroughOrigin, OriginFree };

struct SearchOptions {
    std::uint64_t seed = 0;
    std::uint64_t max_nodes_per_restart = 1'000'000;
    std::uint32_t restarts = 32;
};

/// A k-cycle on affine points (3 <= k <= q^2) in one of the two origin
/// modes; ThroughOrigin is tried first, OriginFree only when the length
/// admits it and the first search fails. Deterministic for a fixed seed.
/// Throws OutOfRange or SearchExhausted.
std::pair<CycleEmbedding, OriginMode> affine_cycle(const PlaneFrame& frame, int k,
                                                   const SearchOptions& opts = {});

/// Search restricted to one mode (exposed for tests).
CycleEmbedding affine_cycle_in_mode(const PlaneFrame& frame, int k, OriginMode mode,
                                    const SearchOptions& opts = {});

/// A path on k vertices (3 <= k <= q^2+2) whose two endpoints lie on the
/// line at infinity, with no other vertex on it and no edge carried by it.
PathEmbedding anchored_path(const PlaneFrame& frame, int k,
                            const SearchOptions& opts = {});

/// Closes anchored_path(k) with the line at infinity: a k-cycle meeting the
/// line at infinity in exactly 2 vertices and 1 edge.
CycleEmbedding anchored_cycle_plane(const PlaneFrame& frame, int k,
                                    const SearchOptions& opts = {});

/// A Hamiltonian (q^2+q+1)-cycle of PG(2,q) built from the cyclic group
/// action of GF(q^3)* / GF(q)*: vertices are successive powers of a
/// primitive element, so every point occurs once and the edge lines form a
/// single orbit of full length.
CycleEmbedding singer_hamiltonian_cycle(const Geometry& g2);

/// A k-cycle in PG(2,q) for any 3 <= k <= q^2+q+1.
CycleEmbedding plane_cycle(const Geometry& g2, int k, const SearchOptions& opts = {});

}  // namespace pgc
