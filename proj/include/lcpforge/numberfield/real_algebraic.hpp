#pragma once

#include <string>

#include "lcpforge/intlinalg/lll.hpp"
#include "lcpforge/numberfield/irreducibility.hpp"

namespace lcpforge {

// A real algebraic number: the unique root of poly in (lo, hi] (lo == hi for a
// rational root). minimal is set when poly is certified irreducible.
struct RealAlgebraic {
    IntPoly poly;
    Rational lo;
    Rational hi;
    bool minimal = false;

    Interval enclosure(long bits) const { return refine_real_root(to_rat(poly), {lo, hi}, bits); }
    Real value(long bits) const { return enclosure(bits).mid(); }

    bool is_unit_witness() const {
        return poly.is_monic() && (poly.coeff(0) == 1 || poly.coeff(0) == -1);
    }

    // Exact consistency: poly has exactly one root in (lo, hi].
    bool isolates() const {
        RatPoly p = to_rat(poly);
        if (poly.degree() < 1) return false;
        if (lo == hi) return p(lo) == 0;
        if (gcd(p, p.derivative()).degree() > 0) return false;
        return SturmSequence(p).count(lo, hi) == 1;
    }
};

namespace detail {

inline IntPoly monic_primitive(const RatPoly& p) {
    IntPoly q = primitive_part(p);
    if (q.leading() < 0) q = -q;
    return q;
}

}  // namespace detail

// Smallest integer factor of the squarefree polynomial sf vanishing at the
// isolated root, found by integer-relation search on powers of the root and
// confirmed by exact division and a sign change on the isolating interval.
inline IntPoly minimal_factor(const IntPoly& sf, const RootIsolation& iso, bool* certified = nullptr) {
    RatPoly sfq = to_rat(sf);
    if (certified) *certified = false;
    for (int k = 1; k < sf.degree(); ++k) {
        long bits = 128 + 64L * k;
        Real r = refine_real_root(sfq, iso, bits).mid();
        std::vector<Real> pw;
        Real cur(1, r.prec());
        for (int i = 0; i <= k; ++i) {
            pw.push_back(cur);
            cur = cur * r;
        }
        for (const auto& rel : find_integer_relations(pw)) {
            if (rel.coeffs.back() == 0) continue;
            RatPoly g(std::vector<Rational>(rel.coeffs.begin(), rel.coeffs.end()));
            if (g.degree() != k) continue;
            if (!(sfq % g).is_zero()) continue;
            bool vanishes = iso.lo == iso.hi ? g(iso.lo) == 0 : (sgn(g(iso.hi)) == 0 || sgn(g(iso.lo)) * sgn(g(iso.hi)) < 0);
            if (!vanishes) continue;
            IntPoly out = detail::monic_primitive(g);
            if (certified) *certified = test_irreducible(out).verdict == Irreducibility::Irreducible;
            return out;
        }
    }
    IntPoly out = detail::monic_primitive(sfq);
    if (certified) *certified = test_irreducible(out).verdict == Irreducibility::Irreducible;
    return out;
}

// Isolating interval of the root of squarefree sf nearest to approx; the
// approximation must be clearly closer to it than to any other root.
inline RootIsolation nearest_root(const IntPoly& sf, const Real& approx) {
    std::vector<RootIsolation> isos = isolate_real_roots(to_rat(sf));
    if (isos.empty()) fail(ErrorKind::InvalidInput, to_string(sf) + " has no real root");
    const mpfr_prec_t prec = approx.prec();
    std::size_t best = 0;
    Real d1(prec), d2(prec);
    bool have_second = false;
    for (std::size_t i = 0; i < isos.size(); ++i) {
        Real v = refine_real_root(to_rat(sf), isos[i], 64).mid();
        Real dist = abs(Real(v, prec) - approx);
        if (i == 0 || dist < d1) {
            if (i > 0) {
                d2 = d1;
                have_second = true;
            }
            d1 = dist;
            best = i;
        } else if (!have_second || dist < d2) {
            d2 = dist;
            have_second = true;
        }
    }
    if (have_second && !(d1 * Real(4, prec) < d2))
        fail(ErrorKind::NeedsEscalation, "approximation does not single out one root of " + to_string(sf));
    return isos[best];
}

// Root of an annihilating polynomial near approx, reduced to the root's
// minimal factor where possible.
inline RealAlgebraic real_algebraic_from(const IntPoly& annihilator, const Real& approx) {
    IntPoly sf = detail::monic_primitive(squarefree_part(to_rat(annihilator)));
    RootIsolation iso = nearest_root(sf, approx);
    RealAlgebraic out;
    out.poly = minimal_factor(sf, iso, &out.minimal);
    // The factor's roots are a subset of sf's, so the interval still isolates.
    out.lo = iso.lo;
    out.hi = iso.hi;
    return out;
}

// Root of a polynomial already known to be the minimal polynomial.
inline RealAlgebraic real_algebraic_minimal(const IntPoly& minpoly, const Real& approx, bool certified) {
    RootIsolation iso = nearest_root(minpoly, approx);
    return {minpoly, iso.lo, iso.hi, certified};
}

}  // namespace lcpforge
