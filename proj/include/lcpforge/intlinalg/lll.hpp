#pragma once

#include <optional>
#include <vector>

#include "lcpforge/numeric/real.hpp"

namespace lcpforge {

using IntVec = std::vector<Integer>;

// LLL reduction of linearly independent integer rows, exact rational
// Gram-Schmidt data updated in place on swaps.
inline void lll_reduce(std::vector<IntVec>& b, const Rational& delta = Rational(3, 4)) {
    const std::size_t n = b.size();
    if (n < 2) return;
    const std::size_t m = b[0].size();
    auto dot = [m](const auto& x, const auto& y) {
        Rational s = 0;
        for (std::size_t i = 0; i < m; ++i) s += Rational(x[i]) * Rational(y[i]);
        return s;
    };
    std::vector<std::vector<Rational>> mu(n, std::vector<Rational>(n, Rational(0)));
    std::vector<Rational> bn(n);
    {
        std::vector<std::vector<Rational>> bstar(n, std::vector<Rational>(m));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t c = 0; c < m; ++c) bstar[i][c] = Rational(b[i][c]);
            for (std::size_t j = 0; j < i; ++j) {
                mu[i][j] = dot(b[i], bstar[j]) / bn[j];
                for (std::size_t c = 0; c < m; ++c) bstar[i][c] -= mu[i][j] * bstar[j][c];
            }
            bn[i] = dot(bstar[i], bstar[i]);
            if (bn[i] == 0) fail(ErrorKind::InvalidInput, "LLL input rows are linearly dependent");
        }
    }
    auto size_reduce = [&](std::size_t k, std::size_t l) {
        Rational half(1, 2);
        if (abs(mu[k][l]) <= half) return;
        Rational shifted = mu[k][l] + half;
        Integer r;
        mpz_fdiv_q(r.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
        for (std::size_t c = 0; c < m; ++c) b[k][c] -= r * b[l][c];
        for (std::size_t j = 0; j < l; ++j) mu[k][j] -= Rational(r) * mu[l][j];
        mu[k][l] -= Rational(r);
    };
    std::size_t k = 1;
    while (k < n) {
        size_reduce(k, k - 1);
        if (bn[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * bn[k - 1]) {
            Rational mk = mu[k][k - 1];
            Rational big = bn[k] + mk * mk * bn[k - 1];
            mu[k][k - 1] = mk * bn[k - 1] / big;
            bn[k] = bn[k - 1] * bn[k] / big;
            bn[k - 1] = big;
            std::swap(b[k], b[k - 1]);
            for (std::size_t j = 0; j + 1 < k; ++j) std::swap(mu[k][j], mu[k - 1][j]);
            for (std::size_t i = k + 1; i < n; ++i) {
                Rational t = mu[i][k];
                mu[i][k] = mu[i][k - 1] - mk * t;
                mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k];
            }
            if (k > 1) --k;
        } else {
            for (std::size_t l = k - 1; l-- > 0;) size_reduce(k, l);
            ++k;
        }
    }
}

struct IntegerRelation {
    IntVec coeffs;
    Real residual;
};

// Short integer vectors c with sum c_i x_i ~ 0, from LLL on the lattice
// (e_i | round(2^scale * x_i)). Each x_i may have several real components
// (real and imaginary parts); the relation must hold in every component.
// Returns reduced rows that pass the residual and height filters; they are
// independent but not proven to be relations.
inline std::vector<IntegerRelation> find_integer_relations(const std::vector<std::vector<Real>>& x, long height_bits = -1) {
    const std::size_t n = x.size();
    if (n == 0) return {};
    const std::size_t comps = x[0].size();
    mpfr_prec_t prec = x[0][0].prec();
    for (const auto& v : x)
        for (const auto& c : v) prec = std::min(prec, c.prec());
    const long scale = static_cast<long>(prec) - 8;
    if (height_bits < 0) height_bits = std::max<long>(8, scale / static_cast<long>(2 * n));
    std::vector<IntVec> basis(n, IntVec(n + comps, Integer(0)));
    for (std::size_t i = 0; i < n; ++i) {
        basis[i][i] = 1;
        for (std::size_t c = 0; c < comps; ++c) {
            Real scaled = x[i][c] * Real::pow2(scale, prec + 16);
            basis[i][n + c] = scaled.round();
        }
    }
    lll_reduce(basis);
    std::vector<IntegerRelation> out;
    Real tol = Real::pow2(-(scale / 2), prec);
    Integer height_cap = Integer(1) << static_cast<mp_bitcnt_t>(height_bits);
    for (const auto& row : basis) {
        Integer hmax = 0;
        for (std::size_t i = 0; i < n; ++i) hmax = std::max(hmax, Integer(abs(row[i])));
        if (hmax == 0 || hmax > height_cap) continue;
        Real worst(prec);
        for (std::size_t c = 0; c < comps; ++c) {
            Real sum(prec);
            Real scale_ref(prec);
            for (std::size_t i = 0; i < n; ++i) {
                sum = sum + Real(row[i], prec) * x[i][c];
                scale_ref = max(scale_ref, abs(Real(row[i], prec) * x[i][c]));
            }
            worst = max(worst, abs(sum) / max(scale_ref, Real(1, prec)));
        }
        if (worst < tol) out.push_back({IntVec(row.begin(), row.begin() + static_cast<long>(n)), worst});
    }
    return out;
}

inline std::vector<IntegerRelation> find_integer_relations(const std::vector<Real>& x, long height_bits = -1) {
    std::vector<std::vector<Real>> wrapped;
    for (const auto& v : x) wrapped.push_back({v});
    return find_integer_relations(wrapped, height_bits);
}

}  // namespace lcpforge
