#include "pgcycles/geometry.hpp"

#include <algorithm>
#include <sstream>

namespace pgc {

std::vector<Elem> Subspace::key() const {
    std::vector<Elem> out;
    out.reserve(basis.size() * static_cast<std::size_t>(cols) + 1);
    out.push_back(static_cast<Elem>(basis.size()));
    for (const auto& row : basis) out.insert(out.end(), row.begin(), row.end());
    return out;
}

bool Subspace::operator<(const Subspace& o) const { return key() < o.key(); }

std::string to_string(const Point& p) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < p.coords.size(); ++i) {
        if (i) os << ',';
        os << p.coords[i];
    }
    os << ')';
    return os.str();
}

std::string to_string(const Subspace& s) {
    std::ostringstream os;
    os << '[';
    for (std::size_t r = 0; r < s.basis.size(); ++r) {
        if (r) os << ' ';
        os << to_string(Point{s.basis[r]});
    }
    os << ']';
    return os.str();
}

std::string coords_key(const std::vector<Elem>& v) {
    std::string s;
    s.reserve(v.size() * 4);
    for (Elem x : v) {
        s.push_back(static_cast<char>(x & 0xff));
        s.push_back(static_cast<char>((x >> 8) & 0xff));
        s.push_back(static_cast<char>((x >> 16) & 0xff));
        s.push_back(static_cast<char>((x >> 24) & 0xff));
    }
    return s;
}

// --- linear algebra ---------------------------------------------------------

std::vector<std::vector<Elem>> rref(const Field& F, std::vector<std::vector<Elem>> rows) {
    if (rows.empty()) return rows;
    const std::size_t ncols = rows[0].size();
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < ncols && pivot_row < rows.size(); ++col) {
        std::size_t sel = pivot_row;
        while (sel < rows.size() && rows[sel][col] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[pivot_row], rows[sel]);
        const Elem scale = F.inv(rows[pivot_row][col]);
        for (std::size_t j = col; j < ncols; ++j)
            rows[pivot_row][j] = F.mul(rows[pivot_row][j], scale);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == pivot_row || rows[r][col] == 0) continue;
            const Elem factor = rows[r][col];
            for (std::size_t j = col; j < ncols; ++j)
                rows[r][j] = F.sub(rows[r][j], F.mul(factor, rows[pivot_row][j]));
        }
        ++pivot_row;
    }
    rows.resize(pivot_row);
    return rows;
}

int rank_of(const Field& F, std::vector<std::vector<Elem>> rows) {
    return static_cast<int>(rref(F, std::move(rows)).size());
}

std::vector<std::vector<Elem>> kernel_basis(const Field& F,
                                            const std::vector<std::vector<Elem>>& rows,
                                            int cols) {
    auto reduced = rref(F, rows);
    std::vector<int> pivot_of_col(static_cast<std::size_t>(cols), -1);
    for (std::size_t r = 0; r < reduced.size(); ++r) {
        for (int c = 0; c < cols; ++c) {
            if (reduced[r][static_cast<std::size_t>(c)] != 0) {
                pivot_of_col[static_cast<std::size_t>(c)] = static_cast<int>(r);
                break;
            }
        }
    }
    std::vector<std::vector<Elem>> out;
    for (int free_col = 0; free_col < cols; ++free_col) {
        bool is_pivot = false;
        for (std::size_t r = 0; r < reduced.size(); ++r) {
            int lead = -1;
            for (int c = 0; c < cols; ++c) {
                if (reduced[r][static_cast<std::size_t>(c)] != 0) {
                    lead = c;
                    break;
                }
            }
            if (lead == free_col) {
                is_pivot = true;
                break;
            }
        }
        if (is_pivot) continue;
        std::vector<Elem> v(static_cast<std::size_t>(cols), 0);
        v[static_cast<std::size_t>(free_col)] = 1;
        for (const auto& row : reduced) {
            int lead = -1;
            for (int c = 0; c < cols; ++c) {
                if (row[static_cast<std::size_t>(c)] != 0) {
                    lead = c;
                    break;
                }
            }
            if (lead < 0) continue;
            // row . v = 0  =>  v[lead] = -row[free_col] (row[lead] == 1).
            v[static_cast<std::size_t>(lead)] =
                F.neg(row[static_cast<std::size_t>(free_col)]);
        }
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<Elem> row_times_matrix(const Field& F, const std::vector<Elem>& v,
                                   const std::vector<std::vector<Elem>>& m) {
    if (m.empty() || v.size() != m.size())
        throw DimensionMismatch("row/matrix size mismatch");
    std::vector<Elem> out(m[0].size(), 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        for (std::size_t j = 0; j < out.size(); ++j)
            out[j] = F.add(out[j], F.mul(v[i], m[i][j]));
    }
    return out;
}

std::vector<std::vector<Elem>> mat_mul(const Field& F,
                                       const std::vector<std::vector<Elem>>& a,
                                       const std::vector<std::vector<Elem>>& b) {
    std::vector<std::vector<Elem>> out;
    out.reserve(a.size());
    for (const auto& row : a) out.push_back(row_times_matrix(F, row, b));
    return out;
}

std::vector<std::vector<Elem>> mat_inverse(const Field& F,
                                           std::vector<std::vector<Elem>> m) {
    const std::size_t n = m.size();
    std::vector<std::vector<Elem>> inv(n, std::vector<Elem>(n, 0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t sel = col;
        while (sel < n && m[sel][col] == 0) ++sel;
        if (sel == n) throw DimensionMismatch("matrix is singular");
        std::swap(m[col], m[sel]);
        std::swap(inv[col], inv[sel]);
        const Elem scale = F.inv(m[col][col]);
        for (std::size_t j = 0; j < n; ++j) {
            m[col][j] = F.mul(m[col][j], scale);
            inv[col][j] = F.mul(inv[col][j], scale);
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) continue;
            const Elem factor = m[r][col];
            for (std::size_t j = 0; j < n; ++j) {
                m[r][j] = F.sub(m[r][j], F.mul(factor, m[col][j]));
                inv[r][j] = F.sub(inv[r][j], F.mul(factor, inv[col][j]));
            }
        }
    }
    return inv;
}

// --- counting ---------------------------------------------------------------

namespace {

unsigned __int128 ipow128(std::uint64_t base, int exp) {
    unsigned __int128 v = 1;
    for (int i = 0; i < exp; ++i) v *= base;
    return v;
}

std::uint64_t check64(unsigned __int128 v, const char* what) {
    if (v > static_cast<unsigned __int128>(UINT64_MAX))
        throw SizeExceeded(std::string(what) + " overflows 64 bits");
    return static_cast<std::uint64_t>(v);
}

}  // namespace

std::uint64_t count_points(int n, std::uint64_t q) {
    if (n < 2) throw WrongDimension("projective dimension must be >= 2");
    return check64((ipow128(q, n + 1) - 1) / (q - 1), "point count");
}

std::uint64_t count_lines(int n, std::uint64_t q) {
    if (n < 2) throw WrongDimension("projective dimension must be >= 2");
    const unsigned __int128 a = ipow128(q, n + 1) - 1;
    const unsigned __int128 b = ipow128(q, n) - 1;
    return check64(a * b / ((q * q - 1) * (q - 1)), "line count");
}

// --- Geometry ----------------------------------------------------------------

Geometry::Geometry(Field field, int n)
    : field_(std::move(field)), n_(n), caches_(std::make_shared<Caches>()) {
    if (n < 2) throw WrongDimension("PG(n,q) requires n >= 2");
}

Point Geometry::normalize_point(std::vector<Elem> v) const {
    if (static_cast<int>(v.size()) != ncols())
        throw DimensionMismatch("coordinate vector has wrong length");
    std::size_t lead = 0;
    while (lead < v.size() && v[lead] == 0) ++lead;
    if (lead == v.size()) throw ZeroVector("cannot normalize the zero vector");
    if (v[lead] != 1) {
        const Elem scale = field_.inv(v[lead]);
        for (std::size_t j = lead; j < v.size(); ++j) v[j] = field_.mul(v[j], scale);
    }
    return Point{std::move(v)};
}

Subspace Geometry::span_rows(std::vector<std::vector<Elem>> rows) const {
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != ncols())
            throw DimensionMismatch("row has wrong length");
    }
    Subspace s;
    s.cols = ncols();
    s.basis = rref(field_, std::move(rows));
    return s;
}

Subspace Geometry::span_points(const std::vector<Point>& pts) const {
    std::vector<std::vector<Elem>> rows;
    rows.reserve(pts.size());
    for (const auto& p : pts) rows.push_back(p.coords);
    return span_rows(std::move(rows));
}

Subspace Geometry::point_subspace(const Point& p) const { return span_points({p}); }

Subspace Geometry::line_through(const Point& a, const Point& b) const {
    if (a == b) throw EqualPoints("line through equal points " + to_string(a));
    Subspace s = span_points({a, b});
    if (s.rank() != 2) throw InternalError("span of two distinct points is not a line");
    return s;
}

bool Geometry::incident(const Point& p, const Subspace& s) const {
    // p is in the row space iff reducing p against the RREF basis leaves zero.
    std::vector<Elem> v = p.coords;
    for (const auto& row : s.basis) {
        int lead = -1;
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (row[c] != 0) {
                lead = static_cast<int>(c);
                break;
            }
        }
        if (lead < 0) continue;
        const Elem factor = v[static_cast<std::size_t>(lead)];
        if (factor == 0) continue;
        for (std::size_t c = static_cast<std::size_t>(lead); c < v.size(); ++c)
            v[c] = field_.sub(v[c], field_.mul(factor, row[c]));
    }
    return std::all_of(v.begin(), v.end(), [](Elem x) { return x == 0; });
}

bool Geometry::contains(const Subspace& outer, const Subspace& inner) const {
    for (const auto& row : inner.basis) {
        if (!incident(Point{row}, outer)) return false;
    }
    return true;
}

std::vector<Point> Geometry::points_on(const Subspace& s) const {
    const int r = s.rank();
    if (r == 0) return {};
    // Points of s correspond bijectively to normalized coefficient tuples
    // of length r (the points of PG(r-1,q)).
    std::uint64_t total = 1;
    for (int i = 0; i < r; ++i) total *= field_.q();
    std::vector<Point> out;
    for (std::uint64_t idx = 1; idx < total; ++idx) {
        std::vector<Elem> t(static_cast<std::size_t>(r), 0);
        std::uint64_t v = idx;
        for (int i = r - 1; i >= 0; --i) {
            t[static_cast<std::size_t>(i)] = static_cast<Elem>(v % field_.q());
            v /= field_.q();
        }
        std::size_t lead = 0;
        while (t[lead] == 0) ++lead;
        if (t[lead] != 1) continue;  // keep normalized tuples only
        out.push_back(normalize_point(row_times_matrix(field_, t, s.basis)));
    }
    std::sort(out.begin(), out.end());
    return out;
}

Subspace Geometry::intersect(const Subspace& a, const Subspace& b) const {
    // Zassenhaus: row reduce [A|A; B|0]; rows with zero left half carry the
    // intersection in their right half.
    const std::size_t m = static_cast<std::size_t>(ncols());
    std::vector<std::vector<Elem>> block;
    for (const auto& row : a.basis) {
        std::vector<Elem> r(2 * m, 0);
        std::copy(row.begin(), row.end(), r.begin());
        std::copy(row.begin(), row.end(), r.begin() + static_cast<long>(m));
        block.push_back(std::move(r));
    }
    for (const auto& row : b.basis) {
        std::vector<Elem> r(2 * m, 0);
        std::copy(row.begin(), row.end(), r.begin());
        block.push_back(std::move(r));
    }
    auto reduced = rref(field_, std::move(block));
    std::vector<std::vector<Elem>> inter;
    for (const auto& row : reduced) {
        const bool left_zero = std::all_of(row.begin(), row.begin() + static_cast<long>(m),
                                           [](Elem x) { return x == 0; });
        if (left_zero) {
            inter.emplace_back(row.begin() + static_cast<long>(m), row.end());
        }
    }
    return span_rows(std::move(inter));
}

HyperplanePencil Geometry::hyperplane_pencil(const Subspace& core) const {
    if (core.projective_dim() != n_ - 2)
        throw WrongDimension("pencil core must have projective dimension n-2");
    // Functionals vanishing on the core form a 2-dimensional space; its
    // q+1 normalized elements cut out the members.
    auto duals = kernel_basis(field_, core.basis, ncols());
    if (duals.size() != 2) throw InternalError("pencil core has wrong corank");
    HyperplanePencil pencil;
    pencil.core = core;
    std::vector<std::pair<Elem, Elem>> combos;
    combos.emplace_back(0, 1);
    for (Elem t = 0; t < field_.q(); ++t) combos.emplace_back(1, t);
    for (auto [a, b] : combos) {
        std::vector<Elem> f(static_cast<std::size_t>(ncols()), 0);
        for (int j = 0; j < ncols(); ++j) {
            f[static_cast<std::size_t>(j)] =
                field_.add(field_.mul(a, duals[0][static_cast<std::size_t>(j)]),
                           field_.mul(b, duals[1][static_cast<std::size_t>(j)]));
        }
        Subspace member = span_rows(kernel_basis(field_, {f}, ncols()));
        if (member.rank() != n_)
            throw InternalError("pencil member is not a hyperplane");
        pencil.members.push_back(std::move(member));
    }
    std::sort(pencil.members.begin(), pencil.members.end());
    return pencil;
}

void Geometry::fill_points() const {
    if (!caches_->points.empty()) return;
    const std::uint64_t npts = point_count();
    if (npts > kMaxEnumerate) throw SizeExceeded("too many points to enumerate");
    std::vector<Point> pts;
    pts.reserve(npts);
    std::uint64_t total = 1;
    for (int i = 0; i < ncols(); ++i) total *= field_.q();
    for (std::uint64_t idx = 1; idx < total; ++idx) {
        std::vector<Elem> v(static_cast<std::size_t>(ncols()), 0);
        std::uint64_t t = idx;
        for (int i = ncols() - 1; i >= 0; --i) {
            v[static_cast<std::size_t>(i)] = static_cast<Elem>(t % field_.q());
            t /= field_.q();
        }
        std::size_t lead = 0;
        while (v[lead] == 0) ++lead;
        if (v[lead] != 1) continue;
        pts.push_back(Point{std::move(v)});
    }
    if (pts.size() != npts) throw InternalError("point enumeration mismatch");
    std::unordered_map<std::string, int> index;
    index.reserve(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        index.emplace(coords_key(pts[i].coords), static_cast<int>(i));
    caches_->points = std::move(pts);
    caches_->point_index = std::move(index);
}

const std::vector<Point>& Geometry::points() const {
    std::lock_guard<std::mutex> lock(caches_->mutex);
    fill_points();
    return caches_->points;
}

int Geometry::point_id(const Point& p) const {
    std::lock_guard<std::mutex> lock(caches_->mutex);
    fill_points();
    auto it = caches_->point_index.find(coords_key(p.coords));
    if (it == caches_->point_index.end())
        throw NotInSubspace("unknown point " + to_string(p));
    return it->second;
}

void Geometry::fill_lines() const {
    if (!caches_->lines.empty()) return;
    fill_points();
    const auto& pts = caches_->points;
    std::vector<Subspace> lines;
    std::unordered_map<std::string, int> index;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            Subspace l = line_through(pts[i], pts[j]);
            const std::string key = coords_key(l.key());
            if (index.emplace(key, static_cast<int>(lines.size())).second)
                lines.push_back(std::move(l));
        }
    }
    std::sort(lines.begin(), lines.end());
    index.clear();
    for (std::size_t i = 0; i < lines.size(); ++i)
        index.emplace(coords_key(lines[i].key()), static_cast<int>(i));
    caches_->lines = std::move(lines);
    caches_->line_index = std::move(index);
}

const std::vector<Subspace>& Geometry::lines() const {
    std::lock_guard<std::mutex> lock(caches_->mutex);
    fill_lines();
    return caches_->lines;
}

int Geometry::line_id(const Subspace& line) const {
    std::lock_guard<std::mutex> lock(caches_->mutex);
    fill_lines();
    auto it = caches_->line_index.find(coords_key(line.key()));
    if (it == caches_->line_index.end())
        throw NotInSubspace("unknown line " + to_string(line));
    return it->second;
}

Subspace Geometry::canonical_hyperplane() const {
    std::vector<std::vector<Elem>> rows;
    for (int i = 0; i < n_; ++i) {
        std::vector<Elem> r(static_cast<std::size_t>(ncols()), 0);
        r[static_cast<std::size_t>(i)] = 1;
        rows.push_back(std::move(r));
    }
    return span_rows(std::move(rows));
}

// --- SubspaceFrame -----------------------------------------------------------

SubspaceFrame::SubspaceFrame(const Geometry& ambient, const Subspace& target)
    : field_(ambient.field()), ambient_cols_(ambient.ncols()), target_(target) {
    if (target.projective_dim() < 1)
        throw WrongDimension("frame target must have projective dimension >= 1");
    if (target.cols != ambient.ncols())
        throw DimensionMismatch("target does not live in the ambient space");
    chart_ = target.basis;
    for (const auto& row : chart_) {
        int lead = -1;
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (row[c] != 0) {
                lead = static_cast<int>(c);
                break;
            }
        }
        pivot_cols_.push_back(lead);
    }
}

Geometry SubspaceFrame::sub_geometry() const {
    if (sub_dim() < 2) throw WrongDimension("sub-geometry requires dimension >= 2");
    return Geometry(field_, sub_dim());
}

Point SubspaceFrame::lift_point(const Point& x) const {
    if (static_cast<int>(x.coords.size()) != sub_dim() + 1)
        throw DimensionMismatch("lift input has wrong length");
    std::vector<Elem> v = row_times_matrix(field_, x.coords, chart_);
    // A normalized coefficient tuple yields normalized ambient coordinates,
    // but renormalize anyway to keep the invariant local.
    std::size_t lead = 0;
    while (lead < v.size() && v[lead] == 0) ++lead;
    if (lead == v.size()) throw ZeroVector("lift of zero vector");
    if (v[lead] != 1) {
        const Elem scale = field_.inv(v[lead]);
        for (std::size_t j = lead; j < v.size(); ++j) v[j] = field_.mul(v[j], scale);
    }
    return Point{std::move(v)};
}

std::vector<Elem> SubspaceFrame::restrict_vector(const std::vector<Elem>& v) const {
    std::vector<Elem> c;
    c.reserve(chart_.size());
    for (int pc : pivot_cols_) c.push_back(v[static_cast<std::size_t>(pc)]);
    // Solve c . chart == v; with an RREF chart the pivot columns read the
    // coefficients off directly, membership is the final equality check.
    const auto back = row_times_matrix(field_, c, chart_);
    if (back != v) throw NotInSubspace("vector is not in the frame target");
    return c;
}

Point SubspaceFrame::restrict_point(const Point& p) const {
    if (static_cast<int>(p.coords.size()) != ambient_cols_)
        throw DimensionMismatch("restrict input has wrong length");
    return Point{restrict_vector(p.coords)};
}

Subspace SubspaceFrame::lift_subspace(const Subspace& s) const {
    std::vector<std::vector<Elem>> rows;
    rows.reserve(s.basis.size());
    for (const auto& r : s.basis) rows.push_back(row_times_matrix(field_, r, chart_));
    Subspace out;
    out.cols = ambient_cols_;
    out.basis = rref(field_, std::move(rows));
    if (out.rank() != s.rank()) throw InternalError("lift changed subspace rank");
    return out;
}

Subspace SubspaceFrame::restrict_subspace(const Subspace& s) const {
    std::vector<std::vector<Elem>> rows;
    rows.reserve(s.basis.size());
    for (const auto& r : s.basis) rows.push_back(restrict_vector(r));
    Subspace out;
    out.cols = sub_dim() + 1;
    out.basis = rref(field_, std::move(rows));
    if (out.rank() != s.rank()) throw InternalError("restrict changed subspace rank");
    return out;
}

}  // namespace pgc
