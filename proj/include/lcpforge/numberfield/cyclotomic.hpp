#pragma once

#include <map>

#include "lcpforge/numberfield/poly.hpp"

namespace lcpforge {

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline long euler_phi(long m) {
    long r = m;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p != 0) continue;
        while (m % p == 0) m /= p;
        r -= r / p;
    }
    if (m > 1) r -= r / m;
    return r;
}

// Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d
inline IntPoly cyclotomic_poly(long m) {
    if (m < 1) fail(ErrorKind::InvalidInput, "cyclotomic index must be >= 1");
    std::map<long, IntPoly> cache;
    auto rec = [&](auto&& self, long n) -> IntPoly {
        if (auto it = cache.find(n); it != cache.end()) return it->second;
        IntPoly num = IntPoly::monomial(Integer(1), static_cast<int>(n)) - IntPoly{Integer(1)};
        for (long d = 1; d < n; ++d) {
            if (n % d == 0) num = exact_div(num, self(self, d));
        }
        cache.emplace(n, num);
        return num;
    };
    return rec(rec, m);
}

// Dickson polynomials D_k with D_k(x + 1/x) = x^k + x^-k.
inline IntPoly dickson(int k) {
    IntPoly d0{Integer(2)}, d1 = IntPoly::x();
    if (k == 0) return d0;
    for (int i = 2; i <= k; ++i) {
        IntPoly next = IntPoly::x() * d1 - d0;
        d0 = std::move(d1);
        d1 = std::move(next);
    }
    return d1;
}

// Minimal polynomial of 2cos(2 pi / m) for an odd prime m, from the
// palindromic Phi_m via the substitution y = x + 1/x.
inline IntPoly real_subfield_minpoly(long m) {
    if (m < 3 || !is_prime(m)) fail(ErrorKind::InvalidInput, "real_subfield_minpoly needs an odd prime, got " + std::to_string(m));
    IntPoly phi = cyclotomic_poly(m);
    const int p = static_cast<int>((m - 1) / 2);
    IntPoly acc = IntPoly::constant(phi.coeff(p));
    for (int k = 1; k <= p; ++k) acc += IntPoly::constant(phi.coeff(p + k)) * dickson(k);
    return acc;
}

}  // namespace lcpforge
