#include "pgcycles/space_embedder.hpp"

#include <algorithm>
#include <string>

namespace pgc {
namespace {

std::uint64_t ipow(std::uint64_t base, int exp) {
    std::uint64_t v = 1;
    for (int i = 0; i < exp; ++i) v *= base;
    return v;
}

// First rows of an RREF basis form the canonical sub-subspace of the wanted
// rank; any subset of RREF rows is again RREF.
Subspace leading_rows(const Subspace& s, int rank) {
    Subspace out;
    out.cols = s.cols;
    out.basis.assign(s.basis.begin(), s.basis.begin() + rank);
    return out;
}

// Canonical codimension-1 completion of `inner` within `outer`: extend the
// basis of `inner` by rows of `outer` until the target rank is reached.
Subspace complete_within(const Geometry& g, const Subspace& outer, const Subspace& inner,
                         int target_rank) {
    std::vector<std::vector<Elem>> rows = inner.basis;
    for (const auto& row : outer.basis) {
        if (static_cast<int>(rows.size()) >= target_rank) break;
        auto trial = rows;
        trial.push_back(row);
        if (rank_of(g.field(), trial) == static_cast<int>(rows.size()) + 1)
            rows.push_back(row);
    }
    if (static_cast<int>(rows.size()) != target_rank)
        throw InternalError("subspace completion failed");
    return g.span_rows(std::move(rows));
}

// The unique point where a line that lies in no pencil member meets the
// given member.
Point line_meets_member(const Geometry& g, const Subspace& line, const Subspace& member) {
    const Subspace meet = g.intersect(line, member);
    if (meet.rank() != 1) throw InternalError("connector does not meet member in a point");
    return g.normalize_point(meet.basis[0]);
}

PathEmbedding orient_front(PathEmbedding p, const Point& front) {
    if (p.vertices.front() == front) return p;
    if (p.vertices.back() == front) return reverse_path(std::move(p));
    throw InternalError("expected endpoint missing from path");
}

}  // namespace

Flag anchor_flag_of(const Geometry& g, const CycleEmbedding& c, const Subspace& anchor) {
    int edge = -1;
    for (int j = 0; j < c.length(); ++j) {
        if (g.contains(anchor, c.edge_lines[static_cast<std::size_t>(j)])) {
            if (edge >= 0) throw InternalError("more than one edge inside the anchor");
            edge = j;
        }
    }
    if (edge < 0) throw InternalError("no edge inside the anchor");
    Flag f;
    f.line = c.edge_lines[static_cast<std::size_t>(edge)];
    f.a = c.vertices[static_cast<std::size_t>(edge)];
    f.b = c.vertices[static_cast<std::size_t>((edge + 1) % c.length())];
    int on_anchor = 0;
    for (const auto& v : c.vertices) {
        if (g.incident(v, anchor)) ++on_anchor;
    }
    if (on_anchor != 2) throw InternalError("anchor vertex count is not 2");
    return f;
}

CycleEmbedding anchored_cycle(const Geometry& g, const Subspace& anchor, int k,
                              const SearchOptions& opts,
                              const std::optional<Subspace>& core_opt) {
    const int n = g.dim();
    const std::uint64_t q = g.q();
    if (anchor.rank() != n) throw WrongDimension("anchor must be a hyperplane");
    const std::uint64_t max_k = ipow(q, n) + 2;
    if (k < 3 || static_cast<std::uint64_t>(k) > max_k)
        throw OutOfRange("anchored cycle length must be in [3, q^n+2]");

    if (n == 2) {
        return anchored_cycle_plane(make_frame(g, anchor), k, opts);
    }

    const Subspace core = core_opt ? *core_opt : leading_rows(anchor, n - 1);
    if (core.projective_dim() != n - 2 || !g.contains(anchor, core))
        throw WrongDimension("core must sit inside the anchor with dimension n-2");

    GlueState state;
    state.pencil = g.hyperplane_pencil(core);
    state.reserved = -1;
    for (std::size_t i = 0; i < state.pencil.members.size(); ++i) {
        if (state.pencil.members[i] == anchor) state.reserved = static_cast<int>(i);
    }
    if (state.reserved < 0) throw InternalError("anchor is not a pencil member");

    const int d = n - 1;
    const std::uint64_t qd = ipow(q, d);

    if (static_cast<std::uint64_t>(k) <= qd + 2) {
        // Fits inside a single non-reserved member: recurse one dimension
        // down and read the result back through the member's chart.
        const int member = state.reserved == 0 ? 1 : 0;
        const SubspaceFrame frame(g, state.pencil.members[static_cast<std::size_t>(member)]);
        const Geometry sub = frame.sub_geometry();
        const Subspace sub_anchor = frame.restrict_subspace(core);
        const CycleEmbedding small = anchored_cycle(sub, sub_anchor, k, opts);
        CycleEmbedding lifted;
        for (const auto& v : small.vertices) lifted.vertices.push_back(frame.lift_point(v));
        for (const auto& l : small.edge_lines)
            lifted.edge_lines.push_back(frame.lift_subspace(l));
        return lifted;
    }

    state.k = k;
    state.alpha = static_cast<int>(static_cast<std::uint64_t>(k) / qd);
    state.beta = static_cast<int>(static_cast<std::uint64_t>(k) % qd);
    const GlueCase how = state.beta <= 2 ? GlueCase::AbsorbRemainder : GlueCase::ExtraMember;
    return glue_pencil_cycles(g, state, how, opts);
}

CycleEmbedding glue_pencil_cycles(const Geometry& g, GlueState& state, GlueCase how,
                                  const SearchOptions& opts) {
    const int n = g.dim();
    const std::uint64_t q = g.q();
    const int d = n - 1;
    const std::uint64_t qd = ipow(q, d);
    const int alpha = state.alpha;
    const int beta = state.beta;

    if (how == GlueCase::AbsorbRemainder) {
        if (beta > 2 || alpha < 2) throw CaseViolation("absorb case needs beta <= 2, alpha >= 2");
    } else {
        if (beta < 3 || alpha > static_cast<int>(q) - 1)
            throw CaseViolation("extra-member case needs beta >= 3, alpha <= q-1");
    }

    // Members and the length of the cycle each one carries.
    const int nmembers = how == GlueCase::AbsorbRemainder ? alpha : alpha + 1;
    state.member_indices.clear();
    state.member_lengths.clear();
    for (std::size_t i = 0; i < state.pencil.members.size() &&
                            static_cast<int>(state.member_indices.size()) < nmembers;
         ++i) {
        if (static_cast<int>(i) != state.reserved)
            state.member_indices.push_back(static_cast<int>(i));
    }
    if (static_cast<int>(state.member_indices.size()) != nmembers)
        throw CaseViolation("pencil does not have enough free members");
    for (int i = 0; i < nmembers - 1; ++i)
        state.member_lengths.push_back(static_cast<int>(qd) + 2);
    state.member_lengths.push_back(how == GlueCase::AbsorbRemainder
                                       ? static_cast<int>(qd) + beta
                                       : beta);
    // Vertex-count identity: opened paths contribute len-1 for the two end
    // members and len-2 for the middle ones, plus nothing else.
    {
        long total = 0;
        for (int i = 0; i < nmembers; ++i) {
            total += state.member_lengths[static_cast<std::size_t>(i)];
            total -= (i == 0 || i == nmembers - 1) ? 1 : 2;
        }
        if (total != static_cast<long>(alpha) * static_cast<long>(qd) + beta ||
            total != state.k)
            throw CaseViolation("member lengths do not add up to k");
    }

    // The flag every member cycle is aligned to: the canonical line inside
    // the core and its first two points.
    state.shared_edge = leading_rows(state.pencil.core, 2);
    const auto flag_pts = g.points_on(state.shared_edge);
    state.shared_a = flag_pts[0];
    state.shared_b = flag_pts[1];

    // Build one anchored cycle per member, aligned to the shared flag.
    std::vector<CycleEmbedding> member_cycles;
    for (int i = 0; i < nmembers; ++i) {
        const Subspace& member =
            state.pencil.members[static_cast<std::size_t>(state.member_indices[static_cast<std::size_t>(i)])];
        const SubspaceFrame frame(g, member);
        const Geometry sub = frame.sub_geometry();
        const Subspace sub_core = frame.restrict_subspace(state.pencil.core);
        CycleEmbedding small = anchored_cycle(sub, sub_core, state.member_lengths[static_cast<std::size_t>(i)], opts);
        const Flag have = anchor_flag_of(sub, small, sub_core);
        Flag want;
        want.line = frame.restrict_subspace(state.shared_edge);
        want.a = frame.restrict_point(state.shared_a);
        want.b = frame.restrict_point(state.shared_b);
        small = apply(sub, map_flag_to_flag(sub, sub_core, have, want), small);
        CycleEmbedding lifted;
        for (const auto& v : small.vertices) lifted.vertices.push_back(frame.lift_point(v));
        for (const auto& l : small.edge_lines)
            lifted.edge_lines.push_back(frame.lift_subspace(l));
        const Flag check = anchor_flag_of(g, lifted, state.pencil.core);
        if (check.line != state.shared_edge ||
            !((check.a == state.shared_a && check.b == state.shared_b) ||
              (check.a == state.shared_b && check.b == state.shared_a)))
            throw InternalError("member cycle not aligned to the shared flag");
        member_cycles.push_back(std::move(lifted));
    }

    // Open the members: the first keeps shared_a as an endpoint, the last
    // keeps shared_b, the middle ones lose both shared vertices.
    state.open_paths.clear();
    state.open_paths.push_back(
        orient_front(open_by_vertex(member_cycles[0], state.shared_b), state.shared_a));
    for (int i = 1; i < nmembers - 1; ++i) {
        state.open_paths.push_back(open_by_three_edges(
            member_cycles[static_cast<std::size_t>(i)], state.shared_a, state.shared_b,
            state.shared_edge));
    }
    state.open_paths.push_back(reverse_path(orient_front(
        open_by_vertex(member_cycles[static_cast<std::size_t>(nmembers - 1)], state.shared_a),
        state.shared_b)));  // ends at shared_b

    // Chain the paths with fresh connector lines. Before fixing the
    // connector into member i, move that member's entry endpoint off the
    // points where the previously chosen connectors pierce member i.
    state.connectors.clear();
    PathEmbedding chain = state.open_paths[0];  // shared_a ... exit_1
    for (int i = 1; i < nmembers; ++i) {
        const Subspace& member =
            state.pencil.members[static_cast<std::size_t>(state.member_indices[static_cast<std::size_t>(i)])];
        std::vector<Point> forbidden;
        for (const auto& chosen : state.connectors)
            forbidden.push_back(line_meets_member(g, chosen, member));
        if (static_cast<int>(forbidden.size()) > static_cast<int>(q) - 2)
            throw CaseViolation("forbidden set exceeds the q-2 bound");
        PathEmbedding part = state.open_paths[static_cast<std::size_t>(i)];
        part = move_endpoint(g, state.pencil.core, member, part, part.vertices.front(),
                             forbidden);
        state.open_paths[static_cast<std::size_t>(i)] = part;
        Subspace connector = g.line_through(chain.vertices.back(), part.vertices.front());
        for (const auto& m : state.pencil.members) {
            if (g.contains(m, connector))
                throw InternalError("connector lies inside a pencil member");
        }
        if (std::find(state.connectors.begin(), state.connectors.end(), connector) !=
            state.connectors.end())
            throw InternalError("connector line repeated");
        state.connectors.push_back(connector);
        chain.edge_lines.push_back(std::move(connector));
        chain.vertices.insert(chain.vertices.end(), part.vertices.begin(),
                              part.vertices.end());
        chain.edge_lines.insert(chain.edge_lines.end(), part.edge_lines.begin(),
                                part.edge_lines.end());
    }

    if (chain.vertices.front() != state.shared_a || chain.vertices.back() != state.shared_b)
        throw InternalError("glued chain has wrong endpoints");
    if (chain.length() != state.k) throw InternalError("glued chain has wrong length");

    CycleEmbedding out;
    out.vertices = std::move(chain.vertices);
    out.edge_lines = std::move(chain.edge_lines);
    out.edge_lines.push_back(state.shared_edge);  // close shared_b -- shared_a
    return out;
}

CycleEmbedding embed_cycle(const Geometry& g, int k, const SearchOptions& opts) {
    const int n = g.dim();
    const std::uint64_t q = g.q();
    if (n == 2) return plane_cycle(g, k, opts);
    const std::uint64_t npts = g.point_count();
    if (k < 3 || static_cast<std::uint64_t>(k) > npts)
        throw OutOfRange("cycle length must be in [3, point count]");

    const std::uint64_t qn = ipow(q, n);
    const Subspace h = g.canonical_hyperplane();
    if (static_cast<std::uint64_t>(k) <= qn + 2) {
        return anchored_cycle(g, h, k, opts);
    }

    // k = q^n + beta with beta >= 3: a beta-cycle inside the hyperplane and
    // a (q^n+2)-cycle anchored there, sharing one edge which is then
    // dissolved.
    const int beta = static_cast<int>(static_cast<std::uint64_t>(k) - qn);
    const SubspaceFrame frame(g, h);
    const Geometry sub = frame.sub_geometry();
    const CycleEmbedding small = embed_cycle(sub, beta, opts);
    CycleEmbedding inner;
    for (const auto& v : small.vertices) inner.vertices.push_back(frame.lift_point(v));
    for (const auto& l : small.edge_lines) inner.edge_lines.push_back(frame.lift_subspace(l));

    const Subspace shared_line = inner.edge_lines[0];
    const Point shared_a = inner.vertices[0];
    const Point shared_b = inner.vertices[1];
    const Subspace core = complete_within(g, h, shared_line, n - 1);

    CycleEmbedding outer = anchored_cycle(g, h, static_cast<int>(qn) + 2, opts, core);
    const Flag have = anchor_flag_of(g, outer, h);
    outer = apply(g, map_flag_to_flag(g, h, have, Flag{shared_line, shared_a, shared_b}),
                  outer);

    PathEmbedding outer_path =
        orient_front(open_by_edge(outer, shared_line), shared_a);  // shared_a ... shared_b
    PathEmbedding inner_path =
        orient_front(open_by_edge(inner, shared_line), shared_a);
    CycleEmbedding out = close_paths(outer_path, inner_path);
    if (out.length() != k) throw InternalError("dissolved union has wrong length");
    return out;
}

}  // namespace pgc
