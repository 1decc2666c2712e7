#pragma once

// Closed real intervals with outward-rounded endpoints, and rectangular
// complex intervals built on them. Every operation returns an enclosure of
// the exact result set.

#include <mpfr.h>

#include <algorithm>
#include <string>

#include "lcpforge/numeric/real.hpp"

namespace lcpforge {

class Interval {
public:
    explicit Interval(mpfr_prec_t prec = 64) : lo_(prec), hi_(prec) {}
    Interval(Real lo, Real hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
        if (lo_ > hi_) fail(ErrorKind::InvalidInput, "interval with lo > hi");
    }
    Interval(const Rational& q, mpfr_prec_t prec) : lo_(q, prec, MPFR_RNDD), hi_(q, prec, MPFR_RNDU) {}
    Interval(const Rational& lo, const Rational& hi, mpfr_prec_t prec)
        : lo_(lo, prec, MPFR_RNDD), hi_(hi, prec, MPFR_RNDU) {}
    static Interval point(const Real& x) { return Interval(x, x); }
    static Interval around(const Real& center, const Real& radius) {
        mpfr_prec_t p = center.prec();
        Real lo(p), hi(p);
        mpfr_sub(lo.get(), center.get(), radius.get(), MPFR_RNDD);
        mpfr_add(hi.get(), center.get(), radius.get(), MPFR_RNDU);
        return Interval(std::move(lo), std::move(hi));
    }

    const Real& lo() const noexcept { return lo_; }
    const Real& hi() const noexcept { return hi_; }
    mpfr_prec_t prec() const noexcept { return std::max(lo_.prec(), hi_.prec()); }

    Real mid() const {
        Real m(prec());
        mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
        mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
        return m;
    }
    Real width() const {
        Real w(prec());
        mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
        return w;
    }
    // Upper bound on |x| for x in the interval.
    Real mag() const {
        Real a = abs(lo_), b = abs(hi_);
        return a < b ? b : a;
    }
    // Lower bound on |x| for x in the interval.
    Real mig() const {
        if (contains_zero()) return Real(prec());
        Real a = abs(lo_), b = abs(hi_);
        return a < b ? a : b;
    }
    bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
    bool contains(const Real& x) const { return lo_ <= x && x <= hi_; }
    bool positive() const { return lo_.sign() > 0; }
    bool negative() const { return hi_.sign() < 0; }

    friend Interval operator+(const Interval& a, const Interval& b) {
        mpfr_prec_t p = std::max(a.prec(), b.prec());
        Real lo(p), hi(p);
        mpfr_add(lo.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
        mpfr_add(hi.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
        return Interval(std::move(lo), std::move(hi));
    }
    friend Interval operator-(const Interval& a, const Interval& b) {
        mpfr_prec_t p = std::max(a.prec(), b.prec());
        Real lo(p), hi(p);
        mpfr_sub(lo.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
        mpfr_sub(hi.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
        return Interval(std::move(lo), std::move(hi));
    }
    friend Interval operator-(const Interval& a) { return Interval(-a.hi_, -a.lo_); }
    friend Interval operator*(const Interval& a, const Interval& b) {
        mpfr_prec_t p = std::max(a.prec(), b.prec());
        const Real* xs[2] = {&a.lo_, &a.hi_};
        const Real* ys[2] = {&b.lo_, &b.hi_};
        Real lo(p), hi(p), t(p);
        bool first = true;
        for (const Real* x : xs) {
            for (const Real* y : ys) {
                mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDD);
                if (first || t < lo) lo = t;
                mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDU);
                if (first || t > hi) hi = t;
                first = false;
            }
        }
        return Interval(std::move(lo), std::move(hi));
    }
    friend Interval operator/(const Interval& a, const Interval& b) {
        if (b.contains_zero()) fail(ErrorKind::DivisionByZero, "interval divisor contains zero");
        mpfr_prec_t p = std::max(a.prec(), b.prec());
        Real rlo(p), rhi(p);
        mpfr_ui_div(rlo.get(), 1, b.hi_.get(), MPFR_RNDD);
        mpfr_ui_div(rhi.get(), 1, b.lo_.get(), MPFR_RNDU);
        return a * Interval(std::move(rlo), std::move(rhi));
    }

    friend Interval sqr(const Interval& a) {
        if (a.contains_zero()) {
            Real m = a.mag();
            Real hi(m.prec());
            mpfr_sqr(hi.get(), m.get(), MPFR_RNDU);
            return Interval(Real(a.prec()), std::move(hi));
        }
        return a * a;
    }
    friend Interval abs(const Interval& a) {
        if (a.lo_.sign() >= 0) return a;
        if (a.hi_.sign() <= 0) return -a;
        return Interval(Real(a.prec()), a.mag());
    }
    friend Interval log(const Interval& a) {
        if (!a.positive()) fail(ErrorKind::InvalidInput, "log of interval not bounded away from zero");
        Real lo(a.prec()), hi(a.prec());
        mpfr_log(lo.get(), a.lo_.get(), MPFR_RNDD);
        mpfr_log(hi.get(), a.hi_.get(), MPFR_RNDU);
        return Interval(std::move(lo), std::move(hi));
    }
    friend Interval exp(const Interval& a) {
        Real lo(a.prec()), hi(a.prec());
        mpfr_exp(lo.get(), a.lo_.get(), MPFR_RNDD);
        mpfr_exp(hi.get(), a.hi_.get(), MPFR_RNDU);
        return Interval(std::move(lo), std::move(hi));
    }
    friend Interval sqrt(const Interval& a) {
        if (a.lo_.sign() < 0) fail(ErrorKind::InvalidInput, "sqrt of interval with negative part");
        Real lo(a.prec()), hi(a.prec());
        mpfr_sqrt(lo.get(), a.lo_.get(), MPFR_RNDD);
        mpfr_sqrt(hi.get(), a.hi_.get(), MPFR_RNDU);
        return Interval(std::move(lo), std::move(hi));
    }
    friend Interval hull(const Interval& a, const Interval& b) {
        return Interval(a.lo_ < b.lo_ ? a.lo_ : b.lo_, a.hi_ > b.hi_ ? a.hi_ : b.hi_);
    }

    std::string to_string(int digits = 20) const {
        return "[" + lo_.to_string(digits) + ", " + hi_.to_string(digits) + "]";
    }

private:
    Real lo_;
    Real hi_;
};

struct ComplexInterval {
    Interval re;
    Interval im;

    friend ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    Interval norm2() const { return sqr(re) + sqr(im); }
    Interval modulus() const { return sqrt(norm2()); }
};

// Plain (non-certified) complex numbers for iterative root finding.
struct Complex {
    Real re;
    Real im;

    friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator/(const Complex& a, const Complex& b) {
        Real d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    Real modulus() const { return hypot(re, im); }
};

}  // namespace lcpforge
