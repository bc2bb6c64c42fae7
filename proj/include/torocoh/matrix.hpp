#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "torocoh/real.hpp"

namespace torocoh {

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols, T(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }

    T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    Matrix block(std::size_t i0, std::size_t j0, std::size_t rows, std::size_t cols) const {
        Matrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = (*this)(i0 + i, j0 + j);
        return m;
    }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.c_ != y.r_) throw Error(Errc::invalid_input, "matrix shape mismatch");
        Matrix m(x.r_, y.c_);
        for (std::size_t i = 0; i < x.r_; ++i)
            for (std::size_t k = 0; k < x.c_; ++k) {
                const T& v = x(i, k);
                if (v.is_zero()) continue;
                for (std::size_t j = 0; j < y.c_; ++j) m(i, j) += v * y(k, j);
            }
        return m;
    }
    friend Matrix operator+(const Matrix& x, const Matrix& y) {
        Matrix m = x;
        for (std::size_t k = 0; k < m.a_.size(); ++k) m.a_[k] += y.a_[k];
        return m;
    }
    friend Matrix operator-(const Matrix& x, const Matrix& y) {
        Matrix m = x;
        for (std::size_t k = 0; k < m.a_.size(); ++k) m.a_[k] -= y.a_[k];
        return m;
    }

    bool is_identity() const {
        if (r_ != c_) return false;
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j)
                if ((*this)(i, j) != T(i == j ? 1 : 0)) return false;
        return true;
    }

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<T> a_;
};

using RMatrix = Matrix<Real>;
using CMatrix = Matrix<Complex>;
using RVector = std::vector<Real>;
using CVector = std::vector<Complex>;

namespace detail {

inline bool usable_pivot(const Real& v) {
    if (v.is_evidence()) return v.sign() != Sign::undecided;
    return !v.is_zero();
}
inline bool usable_pivot(const Complex& v) {
    if (v.is_evidence()) return usable_pivot(v.re) || usable_pivot(v.im);
    return !v.is_zero();
}

} // namespace detail

// Exact Gauss-Jordan inverse over the scalar field. Returns nullopt if no
// certified nonzero pivot exists in some column.
template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& m) {
    std::size_t n = m.rows();
    if (n != m.cols()) throw Error(Errc::invalid_input, "inverse of a non-square matrix");
    Matrix<T> a = m, inv = Matrix<T>::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = n;
        for (std::size_t r = col; r < n; ++r)
            if (detail::usable_pivot(a(r, col))) {
                piv = r;
                break;
            }
        if (piv == n) return std::nullopt;
        if (piv != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(piv, j), a(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        T p = a(col, col).inverse();
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) = a(col, j) * p;
            inv(col, j) = inv(col, j) * p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            T f = a(r, col);
            if (f.is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j) {
                a(r, j) -= f * a(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

// Row vector times matrix.
template <class T>
std::vector<T> row_times(const std::vector<T>& v, const Matrix<T>& m) {
    if (v.size() != m.rows()) throw Error(Errc::invalid_input, "vector/matrix shape mismatch");
    std::vector<T> out(m.cols(), T(0));
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
    }
    return out;
}

template <class T>
std::vector<T> times_col(const Matrix<T>& m, const std::vector<T>& v) {
    if (v.size() != m.cols()) throw Error(Errc::invalid_input, "matrix/vector shape mismatch");
    std::vector<T> out(m.rows(), T(0));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            if (!v[j].is_zero()) out[i] += m(i, j) * v[j];
    return out;
}

inline Matrix<Complex> complexify(const Matrix<Real>& m) {
    Matrix<Complex> out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Complex(m(i, j));
    return out;
}

// Rational nullspace basis of a matrix given as rows of coefficients.
inline std::vector<std::vector<Rational>> nullspace(std::vector<std::vector<Rational>> rows, std::size_t cols) {
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[r]);
        Rational inv = 1 / rows[r][c];
        for (auto& v : rows[r]) v *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            Rational f = rows[i][c];
            for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= f * rows[r][j];
        }
        pivot_cols.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(cols);
        v[free] = 1;
        for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -rows[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

// Unique solution of A x = b over Q, nullopt if inconsistent; throws if underdetermined.
inline std::optional<std::vector<Rational>> solve_unique(std::vector<std::vector<Rational>> rows, std::vector<Rational> rhs,
                                                        std::size_t cols) {
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i].push_back(rhs[i]);
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c <= cols && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        if (c == cols) return std::nullopt;  // 0 = nonzero
        std::swap(rows[p], rows[r]);
        Rational inv = 1 / rows[r][c];
        for (auto& v : rows[r]) v *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            Rational f = rows[i][c];
            for (std::size_t j = 0; j <= cols; ++j) rows[i][j] -= f * rows[r][j];
        }
        pivot_cols.push_back(c);
        ++r;
    }
    if (pivot_cols.size() < cols) throw Error(Errc::invalid_input, "linear system is underdetermined");
    std::vector<Rational> x(cols);
    for (std::size_t i = 0; i < cols; ++i) x[pivot_cols[i]] = rows[i][cols];
    return x;
}

} // namespace torocoh
