#ifndef NCGERM_LINALG_HPP
#define NCGERM_LINALG_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "ncgerm/error.hpp"
#include "ncgerm/matrix.hpp"

namespace ncgerm {

using Vec = std::vector<Scalar>;

/// Reduced row echelon form of a list of rows. Pivots are taken on the first
/// nonzero entry in column order; pivot rows are scaled to a leading 1.
struct Echelon {
    std::vector<Vec> rows;           // nonzero rows only
    std::vector<std::size_t> pivots; // pivot column of each row
    std::size_t cols = 0;

    std::size_t rank() const noexcept { return rows.size(); }
};

inline Echelon rref(std::vector<Vec> rows, std::size_t cols) {
    Echelon e;
    e.cols = cols;
    std::size_t r = 0;
    Scalar t;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        Vec& pr = rows[r];
        if (pr[c] != 1) {
            Scalar inv = 1 / pr[c];
            for (std::size_t k = c; k < cols; ++k)
                if (pr[k] != 0) pr[k] *= inv;
        }
        std::vector<std::size_t> nz;
        for (std::size_t k = c; k < cols; ++k)
            if (pr[k] != 0) nz.push_back(k);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            Scalar f = rows[i][c];
            for (std::size_t k : nz) {
                t = f * pr[k];
                rows[i][k] -= t;
            }
        }
        e.pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    e.rows = std::move(rows);
    return e;
}

inline std::vector<Vec> mat_rows(const Mat& m) {
    std::vector<Vec> rows(m.rows(), Vec(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
    return rows;
}

inline Echelon rref(const Mat& m) { return rref(mat_rows(m), m.cols()); }

inline std::size_t rank(const Mat& m) { return rref(m).rank(); }

/// Null-space basis from an echelon form; each vector has a 1 in its free column.
inline std::vector<Vec> kernel_from_echelon(const Echelon& e) {
    std::vector<bool> is_pivot(e.cols, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < e.cols; ++f) {
        if (is_pivot[f]) continue;
        Vec v(e.cols);
        v[f] = 1;
        for (std::size_t i = 0; i < e.rows.size(); ++i) v[e.pivots[i]] = -e.rows[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Null-space basis of m, each vector scaled so its first nonzero entry is 1.
inline std::vector<Vec> kernel_basis(const Mat& m) {
    auto basis = kernel_from_echelon(rref(m));
    for (auto& v : basis) {
        std::size_t k = 0;
        while (v[k] == 0) ++k;
        if (v[k] != 1) {
            Scalar inv = 1 / v[k];
            for (auto& x : v) x *= inv;
        }
    }
    return basis;
}

struct LinearSolution {
    std::optional<Mat> x;     // empty when the system is inconsistent
    std::vector<Mat> kernel;  // column vectors spanning {y : a y = 0}
};

/// Solves a·x = b exactly. The particular solution sets every free variable to 0.
inline LinearSolution solve_linear(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows()) throw DimensionMismatch("solve_linear: a and b have different row counts");
    const std::size_t n = a.cols(), k = b.cols();
    std::vector<Vec> rows(a.rows(), Vec(n + k));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j) rows[i][j] = a(i, j);
        for (std::size_t j = 0; j < k; ++j) rows[i][n + j] = b(i, j);
    }
    Echelon e = rref(std::move(rows), n + k);

    LinearSolution sol;
    Echelon left;
    left.cols = n;
    bool consistent = true;
    for (std::size_t i = 0; i < e.rows.size(); ++i) {
        if (e.pivots[i] >= n) {
            consistent = false;
            break;
        }
        left.pivots.push_back(e.pivots[i]);
        left.rows.emplace_back(e.rows[i].begin(), e.rows[i].begin() + n);
    }
    if (consistent) {
        Mat x(n, k);
        for (std::size_t i = 0; i < e.rows.size(); ++i)
            for (std::size_t j = 0; j < k; ++j) x(e.pivots[i], j) = e.rows[i][n + j];
        sol.x = std::move(x);
    } else {
        left = rref(a);
    }
    for (auto& v : kernel_from_echelon(left)) {
        std::size_t f = 0;
        while (v[f] == 0) ++f;
        if (v[f] != 1) {
            Scalar inv = 1 / v[f];
            for (auto& y : v) y *= inv;
        }
        sol.kernel.push_back(Mat::column(v));
    }
    return sol;
}

inline Mat matrix_inverse(const Mat& m) {
    if (!m.square()) throw DimensionMismatch("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return m;
    std::vector<Vec> rows(n, Vec(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) rows[i][j] = m(i, j);
        rows[i][n + i] = 1;
    }
    Echelon e = rref(std::move(rows), 2 * n);
    if (e.rank() < n || e.pivots[n - 1] != n - 1) throw SingularMatrix("matrix is singular");
    Mat inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.rows[i][n + j];
    return inv;
}

inline bool is_invertible(const Mat& m) { return m.square() && rank(m) == m.rows(); }

/// A subspace of k^n stored by a reduced echelon basis. Supports fast
/// membership tests and coordinates relative to the original spanning list.
class Subspace {
public:
    explicit Subspace(std::size_t dim = 0) : dim_(dim) { ech_.cols = dim; }

    Subspace(const std::vector<Vec>& vectors, std::size_t dim) : dim_(dim) {
        ech_ = rref(vectors, dim);
    }

    std::size_t ambient() const noexcept { return dim_; }
    std::size_t dim() const noexcept { return ech_.rank(); }
    const std::vector<Vec>& basis() const noexcept { return ech_.rows; }

    /// Reduces v against the basis; the result is zero iff v lies in the span.
    Vec reduce(Vec v) const {
        Scalar t;
        for (std::size_t i = 0; i < ech_.rows.size(); ++i) {
            const std::size_t p = ech_.pivots[i];
            if (v[p] == 0) continue;
            Scalar f = v[p];
            const Vec& r = ech_.rows[i];
            for (std::size_t k = p; k < dim_; ++k)
                if (r[k] != 0) {
                    t = f * r[k];
                    v[k] -= t;
                }
        }
        return v;
    }

    bool contains(const Vec& v) const {
        for (const auto& x : reduce(v))
            if (x != 0) return false;
        return true;
    }

    bool contains(const Subspace& o) const {
        for (const auto& v : o.basis())
            if (!contains(v)) return false;
        return true;
    }

    /// Adds v if it is independent; returns whether the dimension grew.
    bool add(const Vec& v) {
        Vec r = reduce(v);
        std::size_t p = 0;
        while (p < dim_ && r[p] == 0) ++p;
        if (p == dim_) return false;
        std::vector<Vec> rows = ech_.rows;
        rows.push_back(std::move(r));
        ech_ = rref(std::move(rows), dim_);
        return true;
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.dim_ == b.dim_ && a.ech_.rows == b.ech_.rows;
    }

private:
    std::size_t dim_;
    Echelon ech_;
};

/// Coordinates of vectors with respect to a fixed linearly independent list.
class Coordinates {
public:
    Coordinates() = default;

    explicit Coordinates(std::vector<Vec> basis, std::size_t dim) : basis_(std::move(basis)), dim_(dim) {
        const std::size_t k = basis_.size();
        // Rows of [B^T | I] reduced: the pivot rows of B give an invertible k x k minor.
        Mat bt(k, dim_);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < dim_; ++j) bt(i, j) = basis_[i][j];
        Echelon e = rref(bt);
        if (e.rank() != k) throw DimensionMismatch("coordinate basis is linearly dependent");
        rows_ = e.pivots;
        Mat minor(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) minor(i, j) = basis_[j][rows_[i]];
        inv_ = matrix_inverse(minor);
    }

    std::size_t size() const noexcept { return basis_.size(); }
    const std::vector<Vec>& basis() const noexcept { return basis_; }

    /// Returns the coordinates of v, or nothing if v is outside the span.
    std::optional<Vec> of(const Vec& v) const {
        const std::size_t k = basis_.size();
        Vec c(k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                if (inv_(i, j) != 0 && v[rows_[j]] != 0) c[i] += inv_(i, j) * v[rows_[j]];
        Vec back(dim_);
        for (std::size_t i = 0; i < k; ++i)
            if (c[i] != 0)
                for (std::size_t j = 0; j < dim_; ++j)
                    if (basis_[i][j] != 0) back[j] += c[i] * basis_[i][j];
        if (back != v) return std::nullopt;
        return c;
    }

private:
    std::vector<Vec> basis_;
    std::size_t dim_ = 0;
    std::vector<std::size_t> rows_;
    Mat inv_;
};

/// Basis of the intersection of two subspaces given by spanning lists.
inline std::vector<Vec> intersect(const std::vector<Vec>& a, const std::vector<Vec>& b, std::size_t dim) {
    // Solve sum x_i a_i - sum y_j b_j = 0 and map x back.
    Subspace sa(a, dim), sb(b, dim);
    const auto& ba = sa.basis();
    const auto& bb = sb.basis();
    Mat m(dim, ba.size() + bb.size());
    for (std::size_t i = 0; i < ba.size(); ++i)
        for (std::size_t r = 0; r < dim; ++r) m(r, i) = ba[i][r];
    for (std::size_t j = 0; j < bb.size(); ++j)
        for (std::size_t r = 0; r < dim; ++r) m(r, ba.size() + j) = -bb[j][r];
    std::vector<Vec> out;
    for (const auto& k : kernel_basis(m)) {
        Vec v(dim);
        for (std::size_t i = 0; i < ba.size(); ++i)
            if (k[i] != 0)
                for (std::size_t r = 0; r < dim; ++r) v[r] += k[i] * ba[i][r];
        out.push_back(std::move(v));
    }
    return Subspace(out, dim).basis();
}

} // namespace ncgerm

#endif // NCGERM_LINALG_HPP
