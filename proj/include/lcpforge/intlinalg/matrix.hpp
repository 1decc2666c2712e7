#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lcpforge/error.hpp"
#include "lcpforge/numberfield/poly.hpp"

namespace lcpforge {

// Dense row-major matrix over a ring.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), a_(rows * cols, fill) {}
    Matrix(std::vector<std::vector<T>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows[0].size() : 0;
        for (auto& r : rows) {
            if (r.size() != cols_) fail(ErrorKind::DimensionMismatch, "ragged matrix rows");
            for (auto& v : r) a_.push_back(std::move(v));
        }
    }

    static Matrix identity(std::size_t n, const T& zero, const T& one) {
        Matrix m(n, n, zero);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols_ != y.rows_) fail(ErrorKind::DimensionMismatch, "matrix product shape mismatch");
        Matrix r(x.rows_, y.cols_, x.zero_like());
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                const T& v = x(i, k);
                for (std::size_t j = 0; j < y.cols_; ++j) r(i, j) += v * y(k, j);
            }
        return r;
    }
    friend Matrix operator+(Matrix x, const Matrix& y) {
        x.check_same(y);
        for (std::size_t i = 0; i < x.a_.size(); ++i) x.a_[i] += y.a_[i];
        return x;
    }
    friend Matrix operator-(Matrix x, const Matrix& y) {
        x.check_same(y);
        for (std::size_t i = 0; i < x.a_.size(); ++i) x.a_[i] -= y.a_[i];
        return x;
    }
    friend Matrix operator*(const T& s, Matrix x) {
        for (auto& v : x.a_) v = s * v;
        return x;
    }
    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

    Matrix transpose() const {
        Matrix r(cols_, rows_, zero_like());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    T zero_like() const {
        if constexpr (requires(const T& t) { t.prec(); }) {
            return a_.empty() ? T() : T(a_[0].prec());
        } else {
            return T(0);
        }
    }

private:
    void check_same(const Matrix& y) const {
        if (rows_ != y.rows_ || cols_ != y.cols_) fail(ErrorKind::DimensionMismatch, "matrix shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> a_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

inline IntMatrix int_identity(std::size_t n) { return IntMatrix::identity(n, Integer(0), Integer(1)); }

inline RatMatrix to_rat(const IntMatrix& m) {
    RatMatrix r(m.rows(), m.cols(), Rational(0));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
    return r;
}

// Companion matrix with ones on the subdiagonal and -c_0..-c_{d-1} in the last
// column: the matrix of multiplication by the root in the power basis.
inline IntMatrix companion(const IntPoly& p) {
    if (p.degree() < 1) fail(ErrorKind::InvalidInput, "companion of a constant polynomial");
    if (!p.is_monic()) fail(ErrorKind::NonMonic, "companion matrix needs a monic polynomial: " + to_string(p));
    const auto d = static_cast<std::size_t>(p.degree());
    IntMatrix c(d, d, Integer(0));
    for (std::size_t i = 0; i + 1 < d; ++i) c(i + 1, i) = 1;
    for (std::size_t i = 0; i < d; ++i) c(i, d - 1) = -p.coeff(static_cast<int>(i));
    return c;
}

// Fraction-free (Bareiss) determinant.
inline Integer det(IntMatrix a) {
    if (!a.square()) fail(ErrorKind::DimensionMismatch, "determinant of a non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t r = k + 1;
            while (r < n && a(r, k) == 0) ++r;
            if (r == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(r, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                a(i, j) = v;
            }
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

inline bool is_gl_z(const IntMatrix& a) {
    if (!a.square()) return false;
    Integer d = det(a);
    return d == 1 || d == -1;
}

namespace detail {

inline IntPoly div_monic_exact(const IntPoly& a, const IntPoly& m) {
    if (a.is_zero()) return a;
    const int dm = m.degree();
    std::vector<Integer> r = a.coeffs();
    std::vector<Integer> q(static_cast<std::size_t>(std::max(a.degree() - dm + 1, 0)), Integer(0));
    for (int i = a.degree(); i >= dm; --i) {
        Integer f = r[static_cast<std::size_t>(i)];
        q[static_cast<std::size_t>(i - dm)] = f;
        if (f == 0) continue;
        for (int j = 0; j <= dm; ++j) r[static_cast<std::size_t>(i - dm + j)] -= f * m.coeffs()[static_cast<std::size_t>(j)];
    }
    for (const auto& v : r)
        if (v != 0) fail(ErrorKind::InvalidInput, "Bareiss step: inexact division");
    return IntPoly(std::move(q));
}

}  // namespace detail

// Characteristic polynomial det(X I - A), by Bareiss elimination over Z[X].
// The leading principal minors of X I - A are monic, so no pivoting is
// needed and every division is by a monic polynomial.
inline IntPoly char_poly(const IntMatrix& a) {
    if (!a.square()) fail(ErrorKind::DimensionMismatch, "characteristic polynomial of a non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return IntPoly{Integer(1)};
    Matrix<IntPoly> m(n, n, IntPoly{});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = (i == j) ? IntPoly{-a(i, j), Integer(1)} : IntPoly::constant(-a(i, j));
    IntPoly prev{Integer(1)};
    for (std::size_t k = 0; k + 1 < n; ++k) {
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                IntPoly v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                m(i, j) = detail::div_monic_exact(v, prev);
            }
        }
        prev = m(k, k);
    }
    return m(n - 1, n - 1);
}

// P(A) by Horner's rule.
inline IntMatrix poly_apply(const IntPoly& p, const IntMatrix& a) {
    if (!a.square()) fail(ErrorKind::DimensionMismatch, "poly_apply needs a square matrix");
    const std::size_t n = a.rows();
    IntMatrix acc(n, n, Integer(0));
    IntMatrix id = int_identity(n);
    for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * a + (*it) * id;
    return acc;
}

inline bool commute(const IntMatrix& a, const IntMatrix& b) {
    if (!a.square() || !b.square() || a.rows() != b.rows())
        fail(ErrorKind::DimensionMismatch, "commute needs square matrices of equal size");
    return a * b == b * a;
}

// Kronecker product; its eigenvalues are the pairwise products of the factors' eigenvalues.
inline IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix r(a.rows() * b.rows(), a.cols() * b.cols(), Integer(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l) r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return r;
}

// "a,b;c,d" row-major text.
inline IntMatrix parse_matrix(std::string_view text) {
    std::vector<std::vector<Integer>> rows;
    std::string s;
    for (char ch : text)
        if (ch != ' ' && ch != '\t') s += ch;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t end = s.find(';', start);
        if (end == std::string::npos) end = s.size();
        std::string row = s.substr(start, end - start);
        std::vector<Integer> vals;
        std::size_t p = 0;
        while (p <= row.size()) {
            std::size_t q = row.find(',', p);
            if (q == std::string::npos) q = row.size();
            vals.push_back(parse_integer(row.substr(p, q - p)));
            p = q + 1;
        }
        rows.push_back(std::move(vals));
        start = end + 1;
    }
    for (const auto& r : rows)
        if (r.size() != rows[0].size()) fail(ErrorKind::Parse, "ragged matrix rows: '" + std::string(text) + "'");
    IntMatrix m(std::move(rows));
    if (!m.square() || m.rows() == 0) fail(ErrorKind::Parse, "matrix must be square: '" + std::string(text) + "'");
    return m;
}

inline std::string to_string(const IntMatrix& m) {
    std::string out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) out += ";";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out += ",";
            out += m(i, j).get_str();
        }
    }
    return out;
}

}  // namespace lcpforge
