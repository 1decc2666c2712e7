#pragma once

// Sound but incomplete irreducibility test for monic integer polynomials:
// rational roots and squarefreeness detect reducibility; distinct-degree
// factorization modulo small primes bounds the possible factor degrees over Q.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "lcpforge/numberfield/cyclotomic.hpp"
#include "lcpforge/numberfield/roots.hpp"

namespace lcpforge {

enum class Irreducibility { Irreducible, Reducible, Inconclusive };

struct IrreducibilityWitness {
    Irreducibility verdict = Irreducibility::Inconclusive;
    std::string detail;
};

namespace detail {

using ModPoly = std::vector<std::uint64_t>;

inline void mod_trim(ModPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    b %= p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

inline ModPoly mod_rem(ModPoly a, const ModPoly& m, std::uint64_t p) {
    mod_trim(a);
    const std::size_t dm = m.size() - 1;
    std::uint64_t inv = mod_pow(m.back(), p - 2, p);
    while (a.size() >= m.size()) {
        std::uint64_t f = a.back() * inv % p;
        std::size_t shift = a.size() - m.size();
        for (std::size_t j = 0; j <= dm; ++j) a[shift + j] = (a[shift + j] + p - f * m[j] % p) % p;
        mod_trim(a);
    }
    return a;
}

inline ModPoly mod_mul(const ModPoly& a, const ModPoly& b, const ModPoly& m, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    ModPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return mod_rem(std::move(r), m, p);
}

inline ModPoly mod_gcd(ModPoly a, ModPoly b, std::uint64_t p) {
    mod_trim(a);
    mod_trim(b);
    while (!b.empty()) {
        ModPoly r = mod_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

inline ModPoly mod_div(ModPoly a, const ModPoly& b, std::uint64_t p) {
    mod_trim(a);
    if (a.size() < b.size()) return {};
    std::uint64_t inv = mod_pow(b.back(), p - 2, p);
    ModPoly q(a.size() - b.size() + 1, 0);
    while (a.size() >= b.size()) {
        std::uint64_t f = a.back() * inv % p;
        std::size_t shift = a.size() - b.size();
        q[shift] = f;
        for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = (a[shift + j] + p - f * b[j] % p) % p;
        mod_trim(a);
    }
    return q;
}

inline ModPoly reduce_mod(const IntPoly& f, std::uint64_t p) {
    ModPoly r;
    for (const auto& c : f.coeffs()) {
        Integer v = c % static_cast<unsigned long>(p);
        if (v < 0) v += static_cast<unsigned long>(p);
        r.push_back(v.get_ui());
    }
    mod_trim(r);
    return r;
}

// Degrees of the irreducible factors of squarefree f mod p.
inline std::vector<int> factor_degrees_mod(const ModPoly& f, std::uint64_t p) {
    std::vector<int> degs;
    ModPoly rest = f;
    ModPoly xpoly{0, 1};
    ModPoly h = mod_rem(xpoly, rest, p);
    for (int i = 1; 2 * i <= static_cast<int>(rest.size()) - 1; ++i) {
        // h <- h^p mod rest
        ModPoly acc{1};
        ModPoly base = h;
        std::uint64_t e = p;
        while (e) {
            if (e & 1) acc = mod_mul(acc, base, rest, p);
            base = mod_mul(base, base, rest, p);
            e >>= 1;
        }
        h = acc;
        ModPoly diff = h;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = (diff[1] + p - 1) % p;
        mod_trim(diff);
        ModPoly g = mod_gcd(rest, diff, p);
        int dg = static_cast<int>(g.size()) - 1;
        if (dg > 0) {
            for (int k = 0; k < dg / i; ++k) degs.push_back(i);
            rest = mod_div(rest, g, p);
            h = mod_rem(h, rest, p);
        }
    }
    if (rest.size() > 1) degs.push_back(static_cast<int>(rest.size()) - 1);
    return degs;
}

inline std::set<int> subset_sums(const std::vector<int>& degs) {
    std::set<int> sums{0};
    for (int d : degs) {
        std::set<int> next = sums;
        for (int s : sums) next.insert(s + d);
        sums = std::move(next);
    }
    return sums;
}

}  // namespace detail

inline IrreducibilityWitness test_irreducible(const IntPoly& f) {
    const int d = f.degree();
    if (d < 1) return {Irreducibility::Reducible, "constant polynomial"};
    if (d == 1) return {Irreducibility::Irreducible, "degree 1"};
    RatPoly fr = to_rat(f);
    if (gcd(fr, fr.derivative()).degree() > 0) return {Irreducibility::Reducible, "repeated factor"};
    if (f.coeff(0) == 0) return {Irreducibility::Reducible, "rational root 0"};
    // Rational roots of a monic integer polynomial are integers; look inside each isolating interval.
    for (const auto& iso : isolate_real_roots(fr)) {
        Interval iv = refine_real_root(fr, iso, 4);
        Integer lo = iv.lo().round() - 1, hi = iv.hi().round() + 1;
        for (Integer k = lo; k <= hi; ++k)
            if (f(k) == 0) return {Irreducibility::Reducible, "rational root " + k.get_str()};
    }
    if (d <= 3) return {Irreducibility::Irreducible, "no rational root, degree <= 3"};

    std::set<int> possible;
    for (int k = 0; k <= d; ++k) possible.insert(k);
    std::string trail;
    int used = 0;
    for (std::uint64_t p = 3; p < 400 && used < 24; p += 2) {
        if (!is_prime(static_cast<long>(p))) continue;
        detail::ModPoly fm = detail::reduce_mod(f, p);
        if (static_cast<int>(fm.size()) - 1 != d) continue;
        detail::ModPoly dfm;
        for (std::size_t i = 1; i < fm.size(); ++i) dfm.push_back(fm[i] * i % p);
        detail::mod_trim(dfm);
        if (detail::mod_gcd(fm, dfm, p).size() > 1) continue;
        ++used;
        std::vector<int> degs = detail::factor_degrees_mod(fm, p);
        if (degs.size() == 1) {
            return {Irreducibility::Irreducible, "irreducible mod " + std::to_string(p)};
        }
        std::set<int> sums = detail::subset_sums(degs);
        std::set<int> meet;
        for (int k : possible)
            if (sums.count(k)) meet.insert(k);
        possible = std::move(meet);
        std::string pat;
        for (int g : degs) pat += (pat.empty() ? "" : "+") + std::to_string(g);
        trail += (trail.empty() ? "" : ", ") + std::string("mod ") + std::to_string(p) + ": " + pat;
        if (possible.size() == 2) return {Irreducibility::Irreducible, "factor degree patterns " + trail};
    }
    return {Irreducibility::Inconclusive, "factor degree patterns " + trail};
}

}  // namespace lcpforge
