#include "pgcycles/embedding.hpp"

#include <algorithm>

namespace pgc {
namespace {

int edge_index(const CycleEmbedding& c, const Subspace& line) {
    for (std::size_t j = 0; j < c.edge_lines.size(); ++j) {
        if (c.edge_lines[j] == line) return static_cast<int>(j);
    }
    return -1;
}

int vertex_index(const CycleEmbedding& c, const Point& v) {
    for (std::size_t i = 0; i < c.vertices.size(); ++i) {
        if (c.vertices[i] == v) return static_cast<int>(i);
    }
    return -1;
}

}  // namespace

PathEmbedding reverse_path(PathEmbedding p) {
    std::reverse(p.vertices.begin(), p.vertices.end());
    std::reverse(p.edge_lines.begin(), p.edge_lines.end());
    return p;
}

PathEmbedding open_by_edge(const CycleEmbedding& c, const Subspace& line) {
    const int k = c.length();
    const int j = edge_index(c, line);
    if (j < 0) throw NotInCycle("edge line not present in cycle");
    PathEmbedding out;
    out.vertices.reserve(static_cast<std::size_t>(k));
    out.edge_lines.reserve(static_cast<std::size_t>(k) - 1);
    for (int s = 1; s <= k; ++s)
        out.vertices.push_back(c.vertices[static_cast<std::size_t>((j + s) % k)]);
    for (int s = 1; s <= k - 1; ++s)
        out.edge_lines.push_back(c.edge_lines[static_cast<std::size_t>((j + s) % k)]);
    return out;
}

PathEmbedding open_by_vertex(const CycleEmbedding& c, const Point& v) {
    const int k = c.length();
    const int i = vertex_index(c, v);
    if (i < 0) throw NotInCycle("vertex not present in cycle");
    PathEmbedding out;
    out.vertices.reserve(static_cast<std::size_t>(k) - 1);
    out.edge_lines.reserve(static_cast<std::size_t>(k) - 2);
    for (int s = 1; s <= k - 1; ++s)
        out.vertices.push_back(c.vertices[static_cast<std::size_t>((i + s) % k)]);
    for (int s = 1; s <= k - 2; ++s)
        out.edge_lines.push_back(c.edge_lines[static_cast<std::size_t>((i + s) % k)]);
    return out;
}

PathEmbedding open_by_three_edges(const CycleEmbedding& c, const Point& a,
                                  const Point& b, const Subspace& line) {
    const int k = c.length();
    const int j = edge_index(c, line);
    if (j < 0) throw NotInCycle("edge line not present in cycle");
    const Point& u = c.vertices[static_cast<std::size_t>(j)];
    const Point& w = c.vertices[static_cast<std::size_t>((j + 1) % k)];
    const bool forward = (u == a && w == b);
    const bool backward = (u == b && w == a);
    if (!forward && !backward)
        throw NotInCycle("line does not join the given vertex pair in the cycle");
    if (k < 4) throw NotInCycle("cycle too short to drop three edges");
    PathEmbedding out;
    out.vertices.reserve(static_cast<std::size_t>(k) - 2);
    out.edge_lines.reserve(static_cast<std::size_t>(k) - 3);
    for (int s = 2; s <= k - 1; ++s)
        out.vertices.push_back(c.vertices[static_cast<std::size_t>((j + s) % k)]);
    for (int s = 2; s <= k - 2; ++s)
        out.edge_lines.push_back(c.edge_lines[static_cast<std::size_t>((j + s) % k)]);
    return out;
}

CycleEmbedding close_paths(const PathEmbedding& a, const PathEmbedding& b) {
    if (a.length() < 2 || b.length() < 2)
        throw CaseViolation("paths too short to close into a cycle");
    if (a.vertices.front() != b.vertices.front() || a.vertices.back() != b.vertices.back())
        throw CaseViolation("paths do not share endpoints");
    CycleEmbedding out;
    out.vertices = a.vertices;
    out.edge_lines = a.edge_lines;
    // Traverse b backwards from the shared back() to the shared front().
    for (int i = b.length() - 2; i >= 1; --i)
        out.vertices.push_back(b.vertices[static_cast<std::size_t>(i)]);
    for (int i = static_cast<int>(b.edge_lines.size()) - 1; i >= 0; --i)
        out.edge_lines.push_back(b.edge_lines[static_cast<std::size_t>(i)]);
    return out;
}

}  // namespace pgc
