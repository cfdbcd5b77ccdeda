#pragma once

#include <vector>

#include "pgcycles/geometry.hpp"

namespace pgc {

/// An embedded path: k distinct vertices and the k-1 distinct lines
/// carrying its edges; edge_lines[j] is incident with vertices[j] and
/// vertices[j+1].
struct PathEmbedding {
    std::vector<Point> vertices;
    std::vector<Subspace> edge_lines;

    int length() const { return static_cast<int>(vertices.size()); }
};

/// An embedded cycle: k >= 3 distinct vertices and k distinct edge lines,
/// edge_lines[j] joining vertices[j] and vertices[(j+1) mod k].
struct CycleEmbedding {
    std::vector<Point> vertices;
    std::vector<Subspace> edge_lines;

    int length() const { return static_cast<int>(vertices.size()); }
};

PathEmbedding reverse_path(PathEmbedding p);

/// Deletes the edge carried by `line`; the result is a path on all k
/// vertices running from one endpoint of the deleted edge around to the
/// other. Throws NotInCycle if no edge uses `line`.
PathEmbedding open_by_edge(const CycleEmbedding& c, const Subspace& line);

/// Deletes vertex v and its two edges; the path runs between v's former
/// neighbors. Throws NotInCycle if v is not a vertex.
PathEmbedding open_by_vertex(const CycleEmbedding& c, const Point& v);

/// Deletes the three edges incident with the adjacent pair (a, b) joined by
/// `line`, along with the now isolated a and b; the path has k-2 vertices.
/// Throws NotInCycle if a and b are not adjacent via `line`.
PathEmbedding open_by_three_edges(const CycleEmbedding& c, const Point& a,
                                  const Point& b, const Subspace& line);

/// Joins two paths that share both endpoints (first and last vertex) into
/// a cycle; b is traversed in reverse. Interior vertex sets must be
/// disjoint; the caller guarantees line freshness.
CycleEmbedding close_paths(const PathEmbedding& a, const PathEmbedding& b);

}  // namespace pgc
