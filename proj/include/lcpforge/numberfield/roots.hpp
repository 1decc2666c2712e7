#pragma once

// Certified root enclosures for squarefree rational polynomials.
//
// Real roots: Sturm-sequence isolation on exact rationals, bisection, then
// interval Newton. Complex roots: Aberth iteration followed by the
// Weierstrass-correction disk test (disks of radius d*|W_i| around the
// approximations; a disk disjoint from all others contains exactly one root).

#include <algorithm>
#include <vector>

#include "lcpforge/numberfield/poly.hpp"
#include "lcpforge/numeric/interval.hpp"

namespace lcpforge {

class SturmSequence {
public:
    explicit SturmSequence(const RatPoly& p) {
        if (p.degree() < 1) fail(ErrorKind::InvalidInput, "Sturm sequence of a constant");
        seq_.push_back(normalize(p));
        seq_.push_back(normalize(p.derivative()));
        while (seq_.back().degree() > 0) {
            RatPoly r = seq_[seq_.size() - 2] % seq_.back();
            if (r.is_zero()) break;
            seq_.push_back(normalize(-r));
        }
    }

    // Number of distinct real roots in (a, b].
    int count(const Rational& a, const Rational& b) const { return variations(a) - variations(b); }

    int count_all() const { return variations_at_infinity(-1) - variations_at_infinity(1); }

    int variations(const Rational& x) const {
        int v = 0, last = 0;
        for (const auto& q : seq_) {
            int s = sgn(q(x));
            if (s == 0) continue;
            if (last != 0 && s != last) ++v;
            last = s;
        }
        return v;
    }

private:
    static RatPoly normalize(const RatPoly& p) {
        if (p.is_zero()) return p;
        Rational l = abs(p.leading());
        return Rational(1) / l * p;
    }

    int variations_at_infinity(int dir) const {
        int v = 0, last = 0;
        for (const auto& q : seq_) {
            int s = sgn(q.leading());
            if (dir < 0 && q.degree() % 2 == 1) s = -s;
            if (last != 0 && s != last) ++v;
            last = s;
        }
        return v;
    }

    std::vector<RatPoly> seq_;
};

inline int real_root_count(const RatPoly& p) {
    RatPoly sf = squarefree_part(p);
    if (sf.degree() < 1) return 0;
    return SturmSequence(sf).count_all();
}

// Cauchy bound: every root has modulus < bound.
inline Rational root_bound(const RatPoly& p) {
    Rational m(0);
    for (int i = 0; i < p.degree(); ++i) {
        Rational r = abs(p.coeff(i) / p.leading());
        if (r > m) m = r;
    }
    return m + 1;
}

// Isolating interval (lo, hi] for one real root; lo == hi marks an exact rational root.
struct RootIsolation {
    Rational lo;
    Rational hi;
};

// Isolating intervals of all real roots of squarefree p, in descending order.
inline std::vector<RootIsolation> isolate_real_roots(const RatPoly& p) {
    std::vector<RootIsolation> out;
    if (p.degree() < 1) return out;
    SturmSequence sturm(p);
    Rational b = root_bound(p);
    std::vector<RootIsolation> stack{{-b, b}};
    while (!stack.empty()) {
        RootIsolation iv = stack.back();
        stack.pop_back();
        int n = sturm.count(iv.lo, iv.hi);
        if (n == 0) continue;
        if (n == 1) {
            out.push_back(iv);
            continue;
        }
        Rational mid = (iv.lo + iv.hi) / 2;
        stack.push_back({iv.lo, mid});
        stack.push_back({mid, iv.hi});
    }
    for (auto& iv : out) {
        if (p(iv.hi) == 0) {
            iv.lo = iv.hi;
            continue;
        }
        // A neighbouring exact root may sit on lo; move lo off it.
        while (p(iv.lo) == 0) {
            Rational mid = (iv.lo + iv.hi) / 2;
            if (p(mid) == 0) {
                iv.lo = iv.hi = mid;
                break;
            }
            if (sturm.count(mid, iv.hi) == 1) iv.lo = mid; else iv.hi = mid;
        }
    }
    std::sort(out.begin(), out.end(), [](const RootIsolation& a, const RootIsolation& b) { return a.hi > b.hi; });
    return out;
}

inline Interval eval(const RatPoly& p, const Interval& x) {
    Interval zero(Rational(0), x.prec());
    return p.eval_with(x, zero, [&](const Rational& c) { return Interval(c, x.prec()); });
}

inline ComplexInterval eval(const RatPoly& p, const ComplexInterval& z) {
    mpfr_prec_t prec = z.re.prec();
    ComplexInterval zero{Interval(Rational(0), prec), Interval(Rational(0), prec)};
    return p.eval_with(z, zero, [&](const Rational& c) {
        return ComplexInterval{Interval(c, prec), Interval(Rational(0), prec)};
    });
}

inline Real eval(const RatPoly& p, const Real& x) {
    return p.eval_with(x, Real(x.prec()), [&](const Rational& c) { return Real(c, x.prec()); });
}

inline Complex eval(const RatPoly& p, const Complex& z) {
    mpfr_prec_t prec = z.re.prec();
    Complex zero{Real(prec), Real(prec)};
    return p.eval_with(z, zero, [&](const Rational& c) { return Complex{Real(c, prec), Real(prec)}; });
}

// Shrinks an isolating interval of a simple root of p to width <= 2^-bits.
inline Interval refine_real_root(const RatPoly& p, const RootIsolation& iso, long bits) {
    mpfr_prec_t prec = bits + 64;
    if (iso.lo == iso.hi) return Interval(iso.lo, prec);
    Rational lo = iso.lo, hi = iso.hi;
    int slo = sgn(p(lo));
    // Coarse bisection so that interval Newton starts inside its contraction region.
    Rational coarse = Rational(1, 1u << 20);
    while (hi - lo > coarse) {
        Rational mid = (lo + hi) / 2;
        int s = sgn(p(mid));
        if (s == 0) return Interval(mid, prec);
        if (s == slo) lo = mid; else hi = mid;
    }
    RatPoly dp = p.derivative();
    Interval x(lo, hi, prec);
    Real target = Real::pow2(-bits, prec);
    for (int iter = 0; iter < 200 && x.width() > target; ++iter) {
        Real m = x.mid();
        Interval fm = eval(p, Interval::point(m));
        Interval dx = eval(dp, x);
        bool progressed = false;
        if (!dx.contains_zero()) {
            Interval n = Interval::point(m) - fm / dx;
            Real nlo = n.lo() > x.lo() ? n.lo() : x.lo();
            Real nhi = n.hi() < x.hi() ? n.hi() : x.hi();
            if (nlo <= nhi) {
                Real old_width = x.width();
                x = Interval(nlo, nhi);
                progressed = x.width() < old_width / Real(2, prec);
            }
        }
        if (!progressed) {
            // Exact bisection step as a fallback.
            Rational ql = x.lo().to_rational(), qh = x.hi().to_rational();
            Rational mid = (ql + qh) / 2;
            int s = sgn(p(mid));
            if (s == 0) return Interval(mid, prec);
            if (s == sgn(p(ql))) ql = mid; else qh = mid;
            x = Interval(ql, qh, prec);
        }
    }
    if (x.width() > target) fail(ErrorKind::PrecisionExhausted, "real root refinement stalled");
    return x;
}

// Certified disk around a complex root.
struct ComplexRoot {
    Real re;
    Real im;
    Real radius;

    ComplexInterval box() const { return {Interval::around(re, radius), Interval::around(im, radius)}; }
};

namespace detail {

inline std::vector<Complex> aberth(const RatPoly& p, mpfr_prec_t prec) {
    const int d = p.degree();
    RatPoly monic = make_monic(p);
    RatPoly dp = monic.derivative();
    Real radius(root_bound(monic), prec);
    std::vector<Complex> z;
    Real two_pi = Real::pi(prec) * Real(2, prec);
    for (int k = 0; k < d; ++k) {
        Real ang = two_pi * Real(k, prec) / Real(d, prec) + Real(0.4, prec);
        Real c(prec), s(prec);
        mpfr_sin_cos(s.get(), c.get(), ang.get(), MPFR_RNDN);
        Real r = radius * Real(0.5 + 0.5 * (k % 2 == 0 ? 1.0 : 0.9), prec);
        z.push_back({r * c, r * s});
    }
    Real tiny = Real::pow2(-static_cast<long>(prec) + 8, prec);
    for (int iter = 0; iter < 100 * d + 200; ++iter) {
        Real maxstep(prec);
        for (int i = 0; i < d; ++i) {
            Complex f = eval(monic, z[static_cast<std::size_t>(i)]);
            Complex fp = eval(dp, z[static_cast<std::size_t>(i)]);
            if (f.re.is_zero() && f.im.is_zero()) continue;
            Complex ratio = f / fp;
            Complex sum{Real(prec), Real(prec)};
            for (int j = 0; j < d; ++j) {
                if (j == i) continue;
                Complex diff = z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)];
                sum = sum + Complex{Real(1, prec), Real(prec)} / diff;
            }
            Complex denom = Complex{Real(1, prec), Real(prec)} - ratio * sum;
            Complex step = ratio / denom;
            z[static_cast<std::size_t>(i)] = z[static_cast<std::size_t>(i)] - step;
            Real sm = step.modulus() / max(Real(1, prec), z[static_cast<std::size_t>(i)].modulus());
            if (sm > maxstep) maxstep = sm;
        }
        if (maxstep < tiny) break;
    }
    return z;
}

}  // namespace detail

// All roots of squarefree p with Im > 0, certified to radius <= 2^-bits, sorted
// by descending real part.
inline std::vector<ComplexRoot> certified_complex_roots(const RatPoly& p, long bits, int expected_upper) {
    const int d = p.degree();
    if (expected_upper == 0) return {};
    for (mpfr_prec_t prec = bits + 64; prec <= 8 * (bits + 64); prec *= 2) {
        std::vector<Complex> z = detail::aberth(p, prec);
        RatPoly monic = make_monic(p);
        std::vector<ComplexRoot> disks;
        bool ok = true;
        for (int i = 0; i < d && ok; ++i) {
            const Complex& zi = z[static_cast<std::size_t>(i)];
            ComplexInterval pt{Interval::point(zi.re), Interval::point(zi.im)};
            Interval num = eval(monic, pt).modulus();
            Interval den(Rational(1), prec);
            for (int j = 0; j < d; ++j) {
                if (j == i) continue;
                const Complex& zj = z[static_cast<std::size_t>(j)];
                ComplexInterval diff = pt - ComplexInterval{Interval::point(zj.re), Interval::point(zj.im)};
                den = den * diff.modulus();
            }
            if (den.contains_zero()) {
                ok = false;
                break;
            }
            Interval w = num / den * Interval(Rational(d), prec);
            disks.push_back({zi.re, zi.im, w.hi()});
        }
        if (!ok) continue;
        // Pairwise disjointness, including against conjugate images.
        for (int i = 0; i < d && ok; ++i) {
            for (int j = i + 1; j < d && ok; ++j) {
                const auto& a = disks[static_cast<std::size_t>(i)];
                const auto& b = disks[static_cast<std::size_t>(j)];
                Interval dist = ComplexInterval{Interval::point(a.re) - Interval::point(b.re),
                                                Interval::point(a.im) - Interval::point(b.im)}
                                    .modulus();
                Interval rsum = Interval::point(a.radius) + Interval::point(b.radius);
                if (!(dist.lo() > rsum.hi())) ok = false;
            }
        }
        if (!ok) continue;
        std::vector<ComplexRoot> upper;
        Real target = Real::pow2(-bits, prec);
        for (auto& disk : disks) {
            if (disk.im > disk.radius) {
                if (disk.radius > target) ok = false;
                upper.push_back(disk);
            }
        }
        if (!ok || static_cast<int>(upper.size()) != expected_upper) continue;
        std::sort(upper.begin(), upper.end(), [](const ComplexRoot& a, const ComplexRoot& b) { return a.re > b.re; });
        return upper;
    }
    fail(ErrorKind::NeedsEscalation, "could not certify complex root disks");
}

}  // namespace lcpforge
