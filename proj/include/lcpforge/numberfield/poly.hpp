#pragma once

#include <gmpxx.h>

#include <cctype>
#include <initializer_list>
#include <ostream>
#include <string>
#include <tuple>
#include <type_traits>
#include <string_view>
#include <utility>
#include <vector>

#include "lcpforge/error.hpp"
#include "lcpforge/numeric/real.hpp"

namespace lcpforge {

// Dense univariate polynomial, coefficients lowest degree first. The zero
// polynomial has no coefficients and degree -1; otherwise the last stored
// coefficient is nonzero.
template <class T>
class Poly {
public:
    using coeff_type = T;

    Poly() = default;
    explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }
    template <class U>
        requires std::is_integral_v<U>
    Poly(std::initializer_list<U> coeffs) {
        for (U v : coeffs) c_.emplace_back(static_cast<long>(v));
        trim();
    }

    static Poly constant(const T& v) { return Poly(std::vector<T>{v}); }
    static Poly monomial(const T& v, int deg) {
        std::vector<T> c(static_cast<std::size_t>(deg) + 1, T(0));
        c.back() = v;
        return Poly(std::move(c));
    }
    static Poly x() { return monomial(T(1), 1); }

    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    const std::vector<T>& coeffs() const noexcept { return c_; }
    T coeff(int i) const { return (i >= 0 && i <= degree()) ? c_[static_cast<std::size_t>(i)] : T(0); }
    const T& leading() const { return c_.back(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(Poly a) {
        for (auto& v : a.c_) v = -v;
        return a;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(r));
    }
    friend Poly operator*(const T& s, Poly a) {
        for (auto& v : a.c_) v *= s;
        a.trim();
        return a;
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    // Horner evaluation in any ring that accepts T coefficients through `lift`.
    template <class R, class Lift>
    R eval_with(const R& at, const R& zero, Lift&& lift) const {
        R acc = zero;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * at + lift(*it);
        return acc;
    }
    T operator()(const T& at) const {
        T acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * at + *it;
        return acc;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<T> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
        return Poly(std::move(r));
    }

    // p(q(x))
    Poly compose(const Poly& q) const {
        Poly acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * q + constant(*it);
        return acc;
    }

    // p(-x)
    Poly reflect() const {
        std::vector<T> r = c_;
        for (std::size_t i = 1; i < r.size(); i += 2) r[i] = -r[i];
        return Poly(std::move(r));
    }

    // x^deg p(1/x)
    Poly reversed() const {
        std::vector<T> r(c_.rbegin(), c_.rend());
        return Poly(std::move(r));
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<T> c_;
};

using IntPoly = Poly<Integer>;
using RatPoly = Poly<Rational>;

inline RatPoly to_rat(const IntPoly& p) {
    std::vector<Rational> c;
    c.reserve(p.coeffs().size());
    for (const auto& v : p.coeffs()) c.emplace_back(v);
    return RatPoly(std::move(c));
}

inline bool is_integral(const RatPoly& p) {
    for (const auto& v : p.coeffs())
        if (v.get_den() != 1) return false;
    return true;
}

inline IntPoly to_int(const RatPoly& p) {
    std::vector<Integer> c;
    c.reserve(p.coeffs().size());
    for (const auto& v : p.coeffs()) {
        if (v.get_den() != 1) fail(ErrorKind::InvalidInput, "polynomial has non-integral coefficients");
        c.emplace_back(v.get_num());
    }
    return IntPoly(std::move(c));
}

inline RatPoly make_monic(const RatPoly& p) {
    if (p.is_zero()) return p;
    return Rational(1) / p.leading() * p;
}

// Division with remainder over Q.
inline std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
    if (b.is_zero()) fail(ErrorKind::DivisionByZero, "polynomial division by zero");
    std::vector<Rational> r = a.coeffs();
    int db = b.degree();
    if (a.degree() < db) return {RatPoly{}, a};
    std::vector<Rational> q(static_cast<std::size_t>(a.degree() - db) + 1, Rational(0));
    Rational inv = 1 / b.leading();
    for (int i = a.degree(); i >= db; --i) {
        const Rational& top = r[static_cast<std::size_t>(i)];
        if (top == 0) continue;
        Rational f = top * inv;
        q[static_cast<std::size_t>(i - db)] = f;
        for (int j = 0; j <= db; ++j)
            r[static_cast<std::size_t>(i - db + j)] -= f * b.coeffs()[static_cast<std::size_t>(j)];
    }
    return {RatPoly(std::move(q)), RatPoly(std::move(r))};
}

inline RatPoly operator%(const RatPoly& a, const RatPoly& b) { return divmod(a, b).second; }

// Remainder of a by a monic integer polynomial stays integral.
inline IntPoly rem_monic(const IntPoly& a, const IntPoly& m) {
    if (!m.is_monic()) fail(ErrorKind::NonMonic, "rem_monic needs a monic divisor");
    std::vector<Integer> r = a.coeffs();
    int dm = m.degree();
    for (int i = a.degree(); i >= dm; --i) {
        Integer f = r[static_cast<std::size_t>(i)];
        if (f == 0) continue;
        for (int j = 0; j <= dm; ++j) r[static_cast<std::size_t>(i - dm + j)] -= f * m.coeffs()[static_cast<std::size_t>(j)];
    }
    return IntPoly(std::move(r));
}

// Exact quotient a / b over Z; fails if b does not divide a.
inline IntPoly exact_div(const IntPoly& a, const IntPoly& b) {
    auto [q, r] = divmod(to_rat(a), to_rat(b));
    if (!r.is_zero() || !is_integral(q)) fail(ErrorKind::InvalidInput, "inexact polynomial division");
    return to_int(q);
}

// Monic gcd over Q.
inline RatPoly gcd(RatPoly a, RatPoly b) {
    while (!b.is_zero()) {
        RatPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a);
}

// Extended Euclid: returns (g, s, t) with s a + t b = g, g monic.
inline std::tuple<RatPoly, RatPoly, RatPoly> xgcd(const RatPoly& a, const RatPoly& b) {
    RatPoly r0 = a, r1 = b, s0 = RatPoly{Rational(1)}, s1, t0, t1 = RatPoly{Rational(1)};
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::exchange(r1, r);
        s0 = std::exchange(s1, s0 - q * s1);
        t0 = std::exchange(t1, t0 - q * t1);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    Rational inv = 1 / r0.leading();
    return {inv * r0, inv * s0, inv * t0};
}

// Squarefree part p / gcd(p, p'), made monic.
inline RatPoly squarefree_part(const RatPoly& p) {
    if (p.degree() <= 0) return make_monic(p);
    RatPoly g = gcd(p, p.derivative());
    return make_monic(divmod(p, g).first);
}

inline Integer content(const IntPoly& p) {
    Integer g = 0;
    for (const auto& v : p.coeffs()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    return g;
}

// Scales a rational polynomial to a primitive integer polynomial with
// positive leading coefficient.
inline IntPoly primitive_part(const RatPoly& p) {
    if (p.is_zero()) return {};
    Integer l = 1;
    for (const auto& v : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den().get_mpz_t());
    std::vector<Integer> c;
    for (const auto& v : p.coeffs()) c.emplace_back(v.get_num() * (l / v.get_den()));
    IntPoly r(std::move(c));
    Integer g = content(r);
    if (r.leading() < 0) g = -g;
    std::vector<Integer> d;
    for (const auto& v : r.coeffs()) d.emplace_back(v / g);
    return IntPoly(std::move(d));
}

template <class T>
std::string to_string(const Poly<T>& p, std::string_view var = "x") {
    if (p.is_zero()) return "0";
    std::string out;
    for (int i = p.degree(); i >= 0; --i) {
        T c = p.coeff(i);
        if (c == 0) continue;
        bool neg = c < 0;
        T a = neg ? T(-c) : c;
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? "-" : "+";
        }
        std::string mag;
        if constexpr (std::is_same_v<T, Rational>) {
            mag = lcpforge::to_string(Rational(a));
        } else {
            mag = a.get_str();
        }
        bool unit = (a == 1);
        if (i == 0) {
            out += mag;
        } else {
            if (!unit) out += mag.find('/') != std::string::npos ? "(" + mag + ")*" : mag;
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

template <class T>
std::ostream& operator<<(std::ostream& os, const Poly<T>& p) {
    return os << to_string(p);
}

namespace detail {

// Grammar: term (('+'|'-') term)*, term = [coeff ['*']] [var ['^' int]]
// where coeff is an integer or a fraction "a/b" (optionally in parentheses).
inline RatPoly parse_poly_text(std::string_view text, std::string_view vars) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) fail(ErrorKind::Parse, "empty polynomial text");
    std::size_t i = 0;
    RatPoly acc;
    auto error = [&](const std::string& why) {
        fail(ErrorKind::Parse, "polynomial '" + std::string(text) + "': " + why);
    };
    auto read_uint = [&]() -> std::string {
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        return s.substr(start, i - start);
    };
    bool first = true;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (!first) {
            error("expected '+' or '-' at position " + std::to_string(i));
        }
        first = false;
        Rational coeff(1);
        bool have_coeff = false;
        bool paren = i < s.size() && s[i] == '(';
        if (paren) ++i;
        std::string num = read_uint();
        if (!num.empty()) {
            have_coeff = true;
            coeff = Rational(Integer(num));
            if (i < s.size() && s[i] == '/') {
                ++i;
                std::string den = read_uint();
                if (den.empty() || Integer(den) == 0) error("bad denominator");
                coeff /= Rational(Integer(den));
            }
        }
        if (paren) {
            if (i >= s.size() || s[i] != ')') error("unbalanced parenthesis");
            ++i;
        }
        if (have_coeff && i < s.size() && s[i] == '*') ++i;
        int deg = 0;
        if (i < s.size() && vars.find(s[i]) != std::string_view::npos) {
            ++i;
            deg = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::string e = read_uint();
                if (e.empty()) error("missing exponent");
                deg = std::stoi(e);
            }
        } else if (!have_coeff) {
            error("expected a term at position " + std::to_string(i));
        }
        coeff *= sign;
        coeff.canonicalize();
        acc += RatPoly::monomial(coeff, deg);
    }
    return acc;
}

}  // namespace detail

// Accepts "x^3+x^2-2x-1" style text; 'X', 'x', 'a' and 'y' all name the variable.
inline RatPoly parse_rat_poly(std::string_view text) { return detail::parse_poly_text(text, "xXay"); }

inline IntPoly parse_int_poly(std::string_view text) {
    RatPoly p = parse_rat_poly(text);
    if (!is_integral(p)) fail(ErrorKind::Parse, "expected integer coefficients: " + std::string(text));
    return to_int(p);
}

}  // namespace lcpforge
