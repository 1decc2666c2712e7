#pragma once

// Arbitrary-precision binary floating point with an explicit precision on
// every value. There is no global precision context: a result takes the
// larger precision of its operands.

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <climits>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "lcpforge/error.hpp"

namespace lcpforge {

using Integer = mpz_class;
using Rational = mpq_class;

class Real {
public:
    explicit Real(mpfr_prec_t prec = 64) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    Real(long value, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_si(v_, value, MPFR_RNDN);
    }
    Real(int value, mpfr_prec_t prec) : Real(static_cast<long>(value), prec) {}
    Real(const Integer& value, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
        mpfr_init2(v_, prec);
        mpfr_set_z(v_, value.get_mpz_t(), rnd);
    }
    Real(const Rational& value, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
        mpfr_init2(v_, prec);
        mpfr_set_q(v_, value.get_mpq_t(), rnd);
    }
    Real(double value, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_d(v_, value, MPFR_RNDN);
    }
    Real(const Real& other) {
        mpfr_init2(v_, mpfr_get_prec(other.v_));
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    Real(const Real& other, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
        mpfr_init2(v_, prec);
        mpfr_set(v_, other.v_, rnd);
    }
    Real(Real&& other) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, other.v_);
    }
    Real& operator=(const Real& other) {
        if (this != &other) {
            mpfr_set_prec(v_, mpfr_get_prec(other.v_));
            mpfr_set(v_, other.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& other) noexcept {
        mpfr_swap(v_, other.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    static Real parse(std::string_view text, mpfr_prec_t prec) {
        Real r(prec);
        std::string s(text);
        if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0 && !mpfr_number_p(r.v_))
            fail(ErrorKind::Parse, "not a decimal number: " + s);
        return r;
    }

    static Real pow2(long exponent, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_ui_2exp(r.v_, 1, exponent, MPFR_RNDN);
        return r;
    }

    mpfr_prec_t prec() const noexcept { return mpfr_get_prec(v_); }
    mpfr_ptr get() noexcept { return v_; }
    mpfr_srcptr get() const noexcept { return v_; }

    bool is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const noexcept { return mpfr_number_p(v_) != 0; }
    int sign() const noexcept { return mpfr_sgn(v_); }
    double to_double() const noexcept { return mpfr_get_d(v_, MPFR_RNDN); }
    long exponent() const noexcept { return is_zero() ? LONG_MIN / 2 : mpfr_get_exp(v_); }

    // Exact rational value of the stored binary number.
    Rational to_rational() const {
        if (!is_finite()) fail(ErrorKind::InvalidInput, "non-finite value has no rational form");
        Rational q;
        mpfr_get_q(q.get_mpq_t(), v_);
        return q;
    }

    Integer round() const {
        Integer z;
        mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
        return z;
    }

    // Shortest decimal that reads back to the same binary value at this precision.
    std::string to_string() const {
        if (is_zero()) return "0";
        if (!is_finite()) return mpfr_nan_p(v_) ? "nan" : (sign() > 0 ? "inf" : "-inf");
        std::size_t digits = mpfr_get_str_ndigits(10, prec());
        mpfr_exp_t exp = 0;
        char* raw = mpfr_get_str(nullptr, &exp, 10, digits, v_, MPFR_RNDN);
        std::string mant(raw);
        mpfr_free_str(raw);
        bool neg = !mant.empty() && mant[0] == '-';
        if (neg) mant.erase(0, 1);
        while (mant.size() > 1 && mant.back() == '0') mant.pop_back();
        std::string out = neg ? "-" : "";
        out += mant.substr(0, 1);
        if (mant.size() > 1) out += "." + mant.substr(1);
        out += "e" + std::to_string(static_cast<long>(exp) - 1);
        return out;
    }

    // Short decimal for human-readable reports.
    std::string to_string(int digits) const {
        if (is_zero()) return "0";
        std::string buf(static_cast<std::size_t>(digits) + 32, '\0');
        int n = mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
        buf.resize(static_cast<std::size_t>(std::max(n, 0)));
        return buf;
    }

    Real& operator+=(const Real& o) { return assign_op(o, mpfr_add); }
    Real& operator-=(const Real& o) { return assign_op(o, mpfr_sub); }
    Real& operator*=(const Real& o) { return assign_op(o, mpfr_mul); }
    Real& operator/=(const Real& o) { return assign_op(o, mpfr_div); }

    friend Real operator+(const Real& a, const Real& b) { return binary(a, b, mpfr_add); }
    friend Real operator-(const Real& a, const Real& b) { return binary(a, b, mpfr_sub); }
    friend Real operator*(const Real& a, const Real& b) { return binary(a, b, mpfr_mul); }
    friend Real operator/(const Real& a, const Real& b) { return binary(a, b, mpfr_div); }
    friend Real operator-(const Real& a) {
        Real r(a.prec());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend std::partial_ordering operator<=>(const Real& a, const Real& b) {
        if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
        int c = mpfr_cmp(a.v_, b.v_);
        return c < 0 ? std::partial_ordering::less
                     : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
    }

    friend Real abs(const Real& a) { return unary(a, mpfr_abs); }
    friend Real sqrt(const Real& a) { return unary(a, mpfr_sqrt); }
    friend Real log(const Real& a) { return unary(a, mpfr_log); }
    friend Real exp(const Real& a) { return unary(a, mpfr_exp); }
    friend Real pow(const Real& a, long n) {
        Real r(a.prec());
        mpfr_pow_si(r.v_, a.v_, n, MPFR_RNDN);
        return r;
    }
    friend Real hypot(const Real& a, const Real& b) { return binary(a, b, mpfr_hypot); }
    friend Real atan2(const Real& y, const Real& x) { return binary(y, x, mpfr_atan2); }
    friend Real max(const Real& a, const Real& b) { return a < b ? b : a; }

    static Real pi(mpfr_prec_t prec) {
        Real r(prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }

private:
    using BinFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
    using UnFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

    static Real binary(const Real& a, const Real& b, BinFn fn) {
        Real r(std::max(a.prec(), b.prec()));
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    static Real unary(const Real& a, UnFn fn) {
        Real r(a.prec());
        fn(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    Real& assign_op(const Real& o, BinFn fn) {
        if (o.prec() > prec()) mpfr_prec_round(v_, o.prec(), MPFR_RNDN);
        fn(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }

    mpfr_t v_;
};

// 2^(-bits/2): the pass threshold for every numeric check at `bits` of precision.
inline Real tolerance_for(long bits, mpfr_prec_t prec) { return Real::pow2(-bits / 2, prec); }

inline std::string to_string(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    return c.get_den() == 1 ? c.get_num().get_str() : c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    Rational q;
    if (s.empty() || q.set_str(s, 10) != 0) fail(ErrorKind::Parse, "not a rational: '" + s + "'");
    if (q.get_den() == 0) fail(ErrorKind::Parse, "zero denominator: '" + s + "'");
    q.canonicalize();
    return q;
}

inline Integer parse_integer(std::string_view text) {
    std::string s(text);
    Integer z;
    if (s.empty() || z.set_str(s, 10) != 0) fail(ErrorKind::Parse, "not an integer: '" + s + "'");
    return z;
}

}  // namespace lcpforge
