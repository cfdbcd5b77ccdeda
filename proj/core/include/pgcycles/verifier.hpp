#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pgcycles/embedding.hpp"
#include "pgcycles/geometry.hpp"
#include "pgcycles/plane_embedder.hpp"

namespace pgc {

/// Outcome of one verification run. Edge lines are always recomputed from
/// their endpoint pairs; stored lines must match the recomputed canonical
/// form bit for bit.
struct VerificationReport {
    bool valid = true;
    std::vector<std::pair<std::string, std::string>> failures;  // (check, detail)

    struct Stats {
        int vertex_count = 0;
        int distinct_line_count = 0;
        int anchor_vertex_count = -1;
        int anchor_edge_count = -1;
    } stats;

    void fail(const std::string& check, const std::string& detail) {
        valid = false;
        failures.emplace_back(check, detail);
    }
};

/// Checks that c is a genuine k-cycle embedding: k >= 3, distinct valid
/// vertices, distinct edge lines, and every stored line equal to the line
/// through its endpoints. Total function; bad input yields failures.
VerificationReport verify_cycle(const Geometry& g, const CycleEmbedding& c);

/// As verify_cycle without closure; k >= 2.
VerificationReport verify_path(const Geometry& g, const PathEmbedding& p);

/// Counts the vertices of c incident with s and the edge lines of c fully
/// contained in s, and compares with the expected pair.
VerificationReport verify_anchor_counts(const Geometry& g, const CycleEmbedding& c,
                                        const Subspace& s, int expected_vertices,
                                        int expected_edges);

/// Checks the origin-mode contract of a cycle of affine points: for
/// ThroughOrigin the origin is a vertex and some spoke is unused; for
/// OriginFree the origin is missing, no spoke is an edge and the length is
/// t*(q+1) with 1 <= t <= q-1. No vertex may lie on the line at infinity.
VerificationReport verify_origin_mode(const PlaneFrame& frame, const CycleEmbedding& c,
                                      OriginMode mode);

/// Exact number of k-cycles (unordered, up to rotation and reflection, with
/// distinct edge lines) by exhaustive enumeration. Guarded: requires at
/// most 15 points and k <= 8; throws BudgetExceeded beyond that.
std::uint64_t brute_force_cycle_count(const Geometry& g, int k);

}  // namespace pgc
