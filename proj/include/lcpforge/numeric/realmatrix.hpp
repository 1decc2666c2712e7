#pragma once

#include <vector>

#include "lcpforge/intlinalg/matrix.hpp"
#include "lcpforge/numeric/interval.hpp"

namespace lcpforge {

using RealMatrix = Matrix<Real>;
using RealVec = std::vector<Real>;

inline RealMatrix real_zero(std::size_t r, std::size_t c, mpfr_prec_t prec) { return RealMatrix(r, c, Real(prec)); }

inline RealMatrix real_identity(std::size_t n, mpfr_prec_t prec) {
    return RealMatrix::identity(n, Real(prec), Real(1, prec));
}

inline RealMatrix to_real(const IntMatrix& a, mpfr_prec_t prec) {
    RealMatrix r = real_zero(a.rows(), a.cols(), prec);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = Real(a(i, j), prec);
    return r;
}

inline RealMatrix to_real(const RatMatrix& a, mpfr_prec_t prec) {
    RealMatrix r = real_zero(a.rows(), a.cols(), prec);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = Real(a(i, j), prec);
    return r;
}

inline Real max_abs(const RealMatrix& a) {
    Real m(a.rows() ? a(0, 0).prec() : 64);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m = max(m, abs(a(i, j)));
    return m;
}

// Solves A X = B by partial pivoting; throws DivisionByZero on an exactly
// singular pivot.
inline RealMatrix solve(RealMatrix a, RealMatrix b) {
    const std::size_t n = a.rows();
    if (!a.square() || b.rows() != n) fail(ErrorKind::DimensionMismatch, "solve shape mismatch");
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (abs(a(i, k)) > abs(a(piv, k))) piv = i;
        if (a(piv, k).is_zero()) fail(ErrorKind::DivisionByZero, "singular matrix");
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            for (std::size_t j = 0; j < b.cols(); ++j) std::swap(b(k, j), b(piv, j));
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            Real f = a(i, k) / a(k, k);
            if (f.is_zero()) continue;
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
            for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) -= f * b(k, j);
        }
    }
    for (std::size_t k = n; k-- > 0;) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Real s = b(k, j);
            for (std::size_t i = k + 1; i < n; ++i) s -= a(k, i) * b(i, j);
            b(k, j) = s / a(k, k);
        }
    }
    return b;
}

inline RealMatrix inverse(const RealMatrix& a) { return solve(a, real_identity(a.rows(), a(0, 0).prec())); }

inline Real norm_inf(const RealMatrix& a) {
    Real best(a(0, 0).prec());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Real s(a(0, 0).prec());
        for (std::size_t j = 0; j < a.cols(); ++j) s += abs(a(i, j));
        best = max(best, s);
    }
    return best;
}

// Cholesky attempt; true iff every pivot is positive.
inline bool is_positive_definite(RealMatrix a) {
    const std::size_t n = a.rows();
    for (std::size_t k = 0; k < n; ++k) {
        Real d = a(k, k);
        for (std::size_t j = 0; j < k; ++j) d -= a(k, j) * a(k, j);
        if (d.sign() <= 0) return false;
        Real l = sqrt(d);
        a(k, k) = l;
        for (std::size_t i = k + 1; i < n; ++i) {
            Real s = a(i, k);
            for (std::size_t j = 0; j < k; ++j) s -= a(i, j) * a(k, j);
            a(i, k) = s / l;
        }
    }
    return true;
}

// Interval Gaussian elimination on the point matrix; the result encloses det.
inline Interval interval_det(const RealMatrix& a) {
    const std::size_t n = a.rows();
    const mpfr_prec_t prec = a(0, 0).prec();
    Matrix<Interval> m(n, n, Interval(prec));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = Interval::point(a(i, j));
    Interval det = Interval::point(Real(1, prec));
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (m(i, k).mig() > m(piv, k).mig()) piv = i;
        if (m(piv, k).contains_zero()) return hull(det * m(piv, k), Interval::point(Real(prec)));
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
            det = -det;
        }
        det = det * m(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            Interval f = m(i, k) / m(k, k);
            for (std::size_t j = k + 1; j < n; ++j) m(i, j) = m(i, j) - f * m(k, j);
        }
    }
    return det;
}

// Kernel vector of a singular complex matrix with one-dimensional kernel:
// elimination with full pivoting; the column left without a pivot is free.
inline std::vector<Complex> complex_kernel_vector(std::vector<std::vector<Complex>> m) {
    const std::size_t n = m.size();
    const mpfr_prec_t prec = m[0][0].re.prec();
    std::vector<std::size_t> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = i;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t pi = k, pj = k;
        Real best(prec);
        for (std::size_t i = k; i < n; ++i)
            for (std::size_t j = k; j < n; ++j) {
                Real v = m[i][col[j]].modulus();
                if (v > best) {
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        if (best.is_zero()) fail(ErrorKind::IndistinctEigenbasis, "eigenvalue has a multi-dimensional eigenspace");
        std::swap(m[k], m[pi]);
        std::swap(col[k], col[pj]);
        for (std::size_t i = k + 1; i < n; ++i) {
            Complex f = m[i][col[k]] / m[k][col[k]];
            for (std::size_t j = k; j < n; ++j) m[i][col[j]] = m[i][col[j]] - f * m[k][col[j]];
        }
    }
    std::vector<Complex> v(n, Complex{Real(prec), Real(prec)});
    v[col[n - 1]] = Complex{Real(1, prec), Real(prec)};
    for (std::size_t k = n - 1; k-- > 0;) {
        Complex s{Real(prec), Real(prec)};
        for (std::size_t j = k + 1; j < n; ++j) s = s + m[k][col[j]] * v[col[j]];
        v[col[k]] = Complex{-s.re, -s.im} / m[k][col[k]];
    }
    return v;
}

}  // namespace lcpforge
