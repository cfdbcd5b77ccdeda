#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "pgcycles/errors.hpp"
#include "pgcycles/gf.hpp"

namespace pgc {

/// A point of PG(n,q): homogeneous coordinates of length n+1, normalized
/// so that the first nonzero coordinate equals 1. Two points are equal iff
/// their coordinate vectors are equal.
struct Point {
    std::vector<Elem> coords;

    bool operator==(const Point& o) const { return coords == o.coords; }
    bool operator!=(const Point& o) const { return coords != o.coords; }
    bool operator<(const Point& o) const { return coords < o.coords; }
};

/// A projective subspace, carried as its reduced-row-echelon basis matrix.
/// The RREF form is the unique canonical representative of the row space,
/// so equality of subspaces is equality of matrices. A Line is a Subspace
/// with projective_dim() == 1.
struct Subspace {
    std::vector<std::vector<Elem>> basis;  // r x cols, RREF, full row rank
    int cols = 0;

    int rank() const { return static_cast<int>(basis.size()); }
    int projective_dim() const { return rank() - 1; }

    /// Flattened row-major serialization (used for ordering and hashing).
    std::vector<Elem> key() const;

    bool operator==(const Subspace& o) const { return cols == o.cols && basis == o.basis; }
    bool operator!=(const Subspace& o) const { return !(*this == o); }
    bool operator<(const Subspace& o) const;
};

std::string to_string(const Point& p);
std::string to_string(const Subspace& s);

// --- exact linear algebra over GF(q) --------------------------------------

/// Reduced row echelon form; zero rows are dropped. The result is the
/// canonical basis of the row space of the input.
std::vector<std::vector<Elem>> rref(const Field& F, std::vector<std::vector<Elem>> rows);

int rank_of(const Field& F, std::vector<std::vector<Elem>> rows);

/// Canonical basis of {x : r . x = 0 for every row r}. Rows have `cols`
/// entries; the result has cols - rank rows.
std::vector<std::vector<Elem>> kernel_basis(const Field& F,
                                            const std::vector<std::vector<Elem>>& rows,
                                            int cols);

std::vector<Elem> row_times_matrix(const Field& F, const std::vector<Elem>& v,
                                   const std::vector<std::vector<Elem>>& m);
std::vector<std::vector<Elem>> mat_mul(const Field& F,
                                       const std::vector<std::vector<Elem>>& a,
                                       const std::vector<std::vector<Elem>>& b);
/// Inverse of a square matrix; throws DimensionMismatch if singular.
std::vector<std::vector<Elem>> mat_inverse(const Field& F,
                                           std::vector<std::vector<Elem>> m);

// --- counting --------------------------------------------------------------

/// Number of points of PG(n,q): (q^(n+1) - 1) / (q - 1).
std::uint64_t count_points(int n, std::uint64_t q);
/// Number of lines of PG(n,q): (q^(n+1)-1)(q^n-1) / ((q^2-1)(q-1)).
std::uint64_t count_lines(int n, std::uint64_t q);

// --- the geometry ----------------------------------------------------------

/// The pencil of hyperplanes through a codimension-2 subspace: exactly q+1
/// members, pairwise meeting in the core, whose point sets minus the core
/// partition the complement of the core.
struct HyperplanePencil {
    Subspace core;                 // projective dimension n-2
    std::vector<Subspace> members; // q+1 hyperplanes, ascending by serialization
};

/// PG(n,q) for n >= 2. Immutable after construction; the point/line caches
/// are memoized lazily behind a mutex and never change observable results.
class Geometry {
public:
    Geometry(Field field, int n);

    const Field& field() const { return field_; }
    int dim() const { return n_; }
    int ncols() const { return n_ + 1; }
    std::uint32_t q() const { return field_.q(); }

    /// Scales v so its first nonzero coordinate is 1. Throws ZeroVector.
    Point normalize_point(std::vector<Elem> v) const;

    /// The unique line through two distinct points. Throws EqualPoints.
    Subspace line_through(const Point& a, const Point& b) const;

    /// Subspace spanned by arbitrary row vectors (each of length n+1).
    Subspace span_rows(std::vector<std::vector<Elem>> rows) const;
    Subspace span_points(const std::vector<Point>& pts) const;
    Subspace point_subspace(const Point& p) const;

    bool incident(const Point& p, const Subspace& s) const;
    /// True iff inner's row space is contained in outer's.
    bool contains(const Subspace& outer, const Subspace& inner) const;

    /// All points of s, normalized, in ascending canonical order.
    std::vector<Point> points_on(const Subspace& s) const;

    /// Intersection of two subspaces (may have rank 0, i.e. empty).
    Subspace intersect(const Subspace& a, const Subspace& b) const;

    /// The q+1 hyperplanes through a projective_dim n-2 core.
    /// Throws WrongDimension if the core has the wrong dimension.
    HyperplanePencil hyperplane_pencil(const Subspace& core) const;

    /// All points, ascending lexicographic order of normalized coordinate
    /// vectors under the canonical field encoding. Cached.
    const std::vector<Point>& points() const;
    /// Index of a point in points(). Throws NotInSubspace for foreign input.
    int point_id(const Point& p) const;

    /// All lines (spans of point pairs), ascending, cached.
    const std::vector<Subspace>& lines() const;
    int line_id(const Subspace& line) const;

    /// Hyperplane spanned by the first n unit vectors (last coordinate zero).
    Subspace canonical_hyperplane() const;

    std::uint64_t point_count() const { return count_points(n_, field_.q()); }

    /// Largest point count for which enumeration is permitted.
    static constexpr std::uint64_t kMaxEnumerate = 1u << 20;

private:
    // Shared between copies of the same context, so memoized enumerations
    // are computed once. Idempotent fill behind the mutex.
    struct Caches {
        std::mutex mutex;
        std::vector<Point> points;
        std::unordered_map<std::string, int> point_index;
        std::vector<Subspace> lines;
        std::unordered_map<std::string, int> line_index;
    };

    Field field_;
    int n_;
    std::shared_ptr<Caches> caches_;

    void fill_points() const;
    void fill_lines() const;
};

std::string coords_key(const std::vector<Elem>& v);

/// A coordinate chart for a subspace S of PG(n,q) of projective dimension
/// d: an incidence-preserving bijection between PG(d,q) and the points of
/// S. lift maps small coordinates into the ambient space through the chart
/// (the RREF basis of S); restrict solves for the unique preimage.
class SubspaceFrame {
public:
    SubspaceFrame(const Geometry& ambient, const Subspace& target);

    int sub_dim() const { return static_cast<int>(chart_.size()) - 1; }
    const Subspace& target() const { return target_; }

    /// PG(d,q) with the same coordinate field. Requires d >= 2.
    Geometry sub_geometry() const;

    Point lift_point(const Point& x) const;
    /// Throws NotInSubspace if p does not lie on the target.
    Point restrict_point(const Point& p) const;

    Subspace lift_subspace(const Subspace& s) const;
    Subspace restrict_subspace(const Subspace& s) const;

private:
    Field field_;
    int ambient_cols_;
    Subspace target_;
    std::vector<std::vector<Elem>> chart_;  // (d+1) x (n+1), RREF
    std::vector<int> pivot_cols_;

    std::vector<Elem> restrict_vector(const std::vector<Elem>& v) const;
};

}  // namespace pgc
