#ifndef NCGERM_MATRIX_HPP
#define NCGERM_MATRIX_HPP

#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "ncgerm/error.hpp"
#include "ncgerm/scalar.hpp"

namespace ncgerm {

/// Dense row-major matrix of rationals.
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    Mat(std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
        : rows_(rows), cols_(cols), a_(std::move(entries)) {
        if (a_.size() != rows_ * cols_) throw DimensionMismatch("entry count does not match shape");
    }
    Mat(std::initializer_list<std::initializer_list<Scalar>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        a_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw DimensionMismatch("ragged matrix literal");
            a_.insert(a_.end(), r.begin(), r.end());
        }
    }

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    static Mat unit(std::size_t n, std::size_t i, std::size_t j) {
        Mat m(n, n);
        m(i, j) = 1;
        return m;
    }
    static Mat scalar(std::size_t n, const Scalar& c) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = c;
        return m;
    }
    static Mat column(const std::vector<Scalar>& v) { return Mat(v.size(), 1, v); }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    Scalar& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    const std::vector<Scalar>& data() const noexcept { return a_; }
    std::vector<Scalar>& data() noexcept { return a_; }

    bool is_zero() const {
        for (const auto& x : a_)
            if (x != 0) return false;
        return true;
    }

    Mat transpose() const {
        Mat t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Scalar trace() const {
        if (!square()) throw DimensionMismatch("trace of a non-square matrix");
        Scalar t = 0;
        for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        Mat b(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }

    void set_block(std::size_t r0, std::size_t c0, const Mat& b) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }

    Mat& operator+=(const Mat& o) {
        check_same(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    Mat& operator-=(const Mat& o) {
        check_same(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    Mat& operator*=(const Scalar& c) {
        for (auto& x : a_) x *= c;
        return *this;
    }

    friend Mat operator+(Mat a, const Mat& b) { return a += b; }
    friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
    friend Mat operator-(Mat a) {
        for (auto& x : a.a_) x = -x;
        return a;
    }
    friend Mat operator*(Mat a, const Scalar& c) { return a *= c; }
    friend Mat operator*(const Scalar& c, Mat a) { return a *= c; }

    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape mismatch");
        Mat c(a.rows_, b.cols_);
        Scalar t;
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Scalar& x = a(i, k);
                if (x == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    const Scalar& y = b(k, j);
                    if (y == 0) continue;
                    t = x * y;
                    c(i, j) += t;
                }
            }
        return c;
    }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }
    friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

    std::string str() const {
        std::ostringstream os;
        os << '[';
        for (std::size_t i = 0; i < rows_; ++i) {
            os << (i ? ", [" : "[");
            for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).get_str();
            os << ']';
        }
        os << ']';
        return os.str();
    }

private:
    void check_same(const Mat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix shapes differ");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> a_;
};

inline Mat kron(const Mat& a, const Mat& b) {
    Mat k(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j) == 0) continue;
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q) k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
        }
    return k;
}

inline Mat direct_sum(const Mat& a, const Mat& b) {
    Mat d(a.rows() + b.rows(), a.cols() + b.cols());
    d.set_block(0, 0, a);
    d.set_block(a.rows(), a.cols(), b);
    return d;
}

inline Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

/// A point of the nc space: g square matrices of a common size s.
class MatTuple {
public:
    MatTuple() = default;
    MatTuple(std::size_t s, std::vector<Mat> comps) : s_(s), c_(std::move(comps)) {
        for (const auto& m : c_)
            if (m.rows() != s_ || m.cols() != s_) throw DimensionMismatch("tuple component has wrong size");
    }
    explicit MatTuple(std::vector<Mat> comps) : MatTuple(comps.empty() ? 0 : comps.front().rows(), std::move(comps)) {}

    static MatTuple zero(std::size_t s, std::size_t g) { return MatTuple(s, std::vector<Mat>(g, Mat(s, s))); }

    std::size_t size() const noexcept { return s_; }
    std::size_t g() const noexcept { return c_.size(); }
    const Mat& operator[](std::size_t j) const { return c_.at(j); }
    Mat& operator[](std::size_t j) { return c_.at(j); }
    const std::vector<Mat>& components() const noexcept { return c_; }

    bool is_zero() const {
        for (const auto& m : c_)
            if (!m.is_zero()) return false;
        return true;
    }

    friend bool operator==(const MatTuple& a, const MatTuple& b) { return a.s_ == b.s_ && a.c_ == b.c_; }
    friend bool operator!=(const MatTuple& a, const MatTuple& b) { return !(a == b); }

    friend MatTuple operator+(const MatTuple& a, const MatTuple& b) {
        check_compatible(a, b);
        MatTuple r = a;
        for (std::size_t j = 0; j < a.g(); ++j) r.c_[j] += b.c_[j];
        return r;
    }
    friend MatTuple operator-(const MatTuple& a, const MatTuple& b) {
        check_compatible(a, b);
        MatTuple r = a;
        for (std::size_t j = 0; j < a.g(); ++j) r.c_[j] -= b.c_[j];
        return r;
    }

    /// S·Z, componentwise.
    MatTuple left(const Mat& s) const {
        MatTuple r = *this;
        for (auto& m : r.c_) m = s * m;
        return r;
    }
    /// Z·S, componentwise.
    MatTuple right(const Mat& s) const {
        MatTuple r = *this;
        for (auto& m : r.c_) m = m * s;
        return r;
    }

private:
    static void check_compatible(const MatTuple& a, const MatTuple& b) {
        if (a.s_ != b.s_ || a.g() != b.g()) throw DimensionMismatch("tuples differ in size or letter count");
    }

    std::size_t s_ = 0;
    std::vector<Mat> c_;
};

inline MatTuple direct_sum(const MatTuple& a, const MatTuple& b) {
    if (a.g() != b.g()) throw DimensionMismatch("direct sum of tuples with different letter counts");
    std::vector<Mat> c;
    for (std::size_t j = 0; j < a.g(); ++j) c.push_back(direct_sum(a[j], b[j]));
    return MatTuple(a.size() + b.size(), std::move(c));
}

/// ([S,Y_1],...,[S,Y_g]) with [S,Y] = SY - YS.
inline MatTuple commutator(const Mat& s, const MatTuple& y) {
    std::vector<Mat> c;
    for (std::size_t j = 0; j < y.g(); ++j) c.push_back(commutator(s, y[j]));
    return MatTuple(y.size(), std::move(c));
}

/// P·Y·P^{-1} given P and its inverse.
inline MatTuple conjugate(const MatTuple& y, const Mat& p, const Mat& pinv) {
    std::vector<Mat> c;
    for (std::size_t j = 0; j < y.g(); ++j) c.push_back(p * y[j] * pinv);
    return MatTuple(y.size(), std::move(c));
}

/// Coordinates of a tuple in the basis E_pq of each component: index j*s*s + p*s + q.
inline std::vector<Scalar> tuple_to_vector(const MatTuple& z) {
    std::vector<Scalar> v;
    v.reserve(z.g() * z.size() * z.size());
    for (const auto& m : z.components()) v.insert(v.end(), m.data().begin(), m.data().end());
    return v;
}

inline MatTuple vector_to_tuple(const std::vector<Scalar>& v, std::size_t s, std::size_t g) {
    if (v.size() != g * s * s) throw DimensionMismatch("vector length is not g*s*s");
    std::vector<Mat> c;
    for (std::size_t j = 0; j < g; ++j)
        c.emplace_back(s, s, std::vector<Scalar>(v.begin() + j * s * s, v.begin() + (j + 1) * s * s));
    return MatTuple(s, std::move(c));
}

/// The basis tuple with E_pq in component j and zeros elsewhere.
inline MatTuple basis_tuple(std::size_t s, std::size_t g, std::size_t index) {
    MatTuple z = MatTuple::zero(s, g);
    std::size_t j = index / (s * s), r = index % (s * s);
    z[j](r / s, r % s) = 1;
    return z;
}

} // namespace ncgerm

#endif // NCGERM_MATRIX_HPP
