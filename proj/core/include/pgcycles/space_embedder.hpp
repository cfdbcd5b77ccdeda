#pragma once

#include <optional>
#include <vector>

#include "pgcycles/collineation.hpp"
#include "pgcycles/embedding.hpp"
#include "pgcycles/geometry.hpp"
#include "pgcycles/plane_embedder.hpp"

namespace pgc {

/// How the remainder beta of k = alpha*q^d + beta is realized when gluing
/// cycles across a hyperplane pencil:
///   AbsorbRemainder - beta <= 2; the last full member carries a cycle of
///                     length q^d + beta (needs alpha >= 2);
///   ExtraMember     - beta >= 3; an extra member carries a beta-cycle
///                     (needs alpha <= q-1).
enum class GlueCase { AbsorbRemainder, ExtraMember };

/// Bookkeeping for one gluing run: the pencil, the decomposition of k, the
/// flag every member cycle is aligned to, the opened member paths, and the
/// connector lines chosen between consecutive members.
struct GlueState {
    HyperplanePencil pencil;
    int reserved = -1;  // pencil member left untouched; it anchors the output
    int k = 0;
    int alpha = 0;
    int beta = 0;
    Subspace shared_edge;   // line inside the pencil core
    Point shared_a;         // on shared_edge
    Point shared_b;         // on shared_edge
    std::vector<int> member_indices;      // pencil members used, in order
    std::vector<int> member_lengths;      // cycle length per used member
    std::vector<PathEmbedding> open_paths;  // filled by glue_pencil_cycles
    std::vector<Subspace> connectors;       // filled by glue_pencil_cycles
};

/// A k-cycle of PG(n,q) (3 <= k <= q^n + 2) meeting `anchor` in exactly two
/// vertices and exactly one edge line. The two anchor vertices are adjacent
/// along the anchor edge. When `core` is given it is used as the pencil
/// core (it must have projective dimension n-2 and lie inside the anchor);
/// otherwise the leading rows of the anchor are used.
CycleEmbedding anchored_cycle(const Geometry& g, const Subspace& anchor, int k,
                              const SearchOptions& opts = {},
                              const std::optional<Subspace>& core = std::nullopt);

/// Executes one gluing run over a prepared state. Member cycles are built
/// recursively, aligned to the shared flag, opened, chained with fresh
/// cross-member connector lines, and closed along the shared edge.
CycleEmbedding glue_pencil_cycles(const Geometry& g, GlueState& state, GlueCase how,
                                  const SearchOptions& opts = {});

/// A k-cycle of PG(n,q) for every 3 <= k <= (q^(n+1)-1)/(q-1).
CycleEmbedding embed_cycle(const Geometry& g, int k, const SearchOptions& opts = {});

/// Locates the unique edge of c contained in `anchor` together with its two
/// endpoint vertices (which must be adjacent along it). Used to re-anchor
/// cycles; throws InternalError if the anchor counts are not (2,1).
Flag anchor_flag_of(const Geometry& g, const CycleEmbedding& c, const Subspace& anchor);

}  // namespace pgc
