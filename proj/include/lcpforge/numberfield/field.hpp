#pragma once

#include <memory>
#include <string>
#include <vector>

#include "lcpforge/intlinalg/matrix.hpp"
#include "lcpforge/numberfield/irreducibility.hpp"
#include "lcpforge/numberfield/roots.hpp"

namespace lcpforge {

// Q(alpha) = Q[x]/(minpoly), elements in the power basis 1, alpha, ..., alpha^(d-1).
class NumberField {
public:
    struct Data {
        IntPoly minpoly;
        RatPoly minpoly_q;
        int degree = 0;
        int s = 0;
        int t = 0;
        IrreducibilityWitness irreducibility;
        std::string witness_text;
        std::string order = "Z[alpha]";
    };

    NumberField() = default;
    explicit NumberField(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

    const IntPoly& minpoly() const { return d_->minpoly; }
    const RatPoly& minpoly_q() const { return d_->minpoly_q; }
    int degree() const { return d_->degree; }
    int s() const { return d_->s; }
    int t() const { return d_->t; }
    const std::string& witness() const { return d_->witness_text; }
    const std::string& order() const { return d_->order; }
    bool valid() const { return d_ != nullptr; }

    friend bool operator==(const NumberField& a, const NumberField& b) {
        return a.d_ == b.d_ || (a.d_ && b.d_ && a.d_->minpoly == b.d_->minpoly);
    }

private:
    std::shared_ptr<const Data> d_;
};

// theory_witness: accepted in place of an inconclusive modular test when the
// polynomial is irreducible for structural reasons the caller vouches for.
inline NumberField field_new(const IntPoly& minpoly, bool force = false, const std::string& theory_witness = "") {
    if (minpoly.degree() < 1) fail(ErrorKind::InvalidInput, "field polynomial must have degree >= 1");
    if (!minpoly.is_monic()) fail(ErrorKind::NonMonic, "field polynomial must be monic: " + to_string(minpoly));
    auto data = std::make_shared<NumberField::Data>();
    data->minpoly = minpoly;
    data->minpoly_q = to_rat(minpoly);
    data->degree = minpoly.degree();
    data->irreducibility = test_irreducible(minpoly);
    switch (data->irreducibility.verdict) {
    case Irreducibility::Irreducible:
        data->witness_text = data->irreducibility.detail;
        break;
    case Irreducibility::Reducible:
        if (!force) fail(ErrorKind::ReduciblePolynomial, to_string(minpoly) + " is reducible (" + data->irreducibility.detail + ")");
        data->witness_text = "forced: " + data->irreducibility.detail;
        break;
    case Irreducibility::Inconclusive:
        if (!theory_witness.empty()) {
            data->witness_text = theory_witness;
        } else if (force) {
            data->witness_text = "forced: " + data->irreducibility.detail;
        } else {
            fail(ErrorKind::InconclusiveIrreducibility,
                 "irreducibility of " + to_string(minpoly) + " not established (" + data->irreducibility.detail + ")");
        }
        break;
    }
    RatPoly sf = squarefree_part(data->minpoly_q);
    int real = SturmSequence(sf).count_all();
    data->s = real;
    data->t = (sf.degree() - real) / 2;
    return NumberField(std::move(data));
}

class FieldElem {
public:
    FieldElem() = default;
    FieldElem(NumberField f, std::vector<Rational> coords) : f_(std::move(f)), c_(std::move(coords)) {
        if (static_cast<int>(c_.size()) != f_.degree()) fail(ErrorKind::DimensionMismatch, "coordinate vector length differs from field degree");
    }

    static FieldElem from_rational(const NumberField& f, const Rational& q) {
        std::vector<Rational> c(static_cast<std::size_t>(f.degree()), Rational(0));
        c[0] = q;
        return FieldElem(f, std::move(c));
    }
    static FieldElem generator(const NumberField& f) { return from_poly(f, RatPoly::x()); }
    static FieldElem from_poly(const NumberField& f, const RatPoly& p) {
        return FieldElem(f, reduce(f, p.coeffs()));
    }

    const NumberField& field() const { return f_; }
    const std::vector<Rational>& coords() const { return c_; }
    RatPoly as_poly() const { return RatPoly(c_); }

    bool is_zero() const {
        for (const auto& v : c_)
            if (v != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }

    friend FieldElem operator+(const FieldElem& a, const FieldElem& b) {
        a.check_same(b);
        FieldElem r = a;
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
        return r;
    }
    friend FieldElem operator-(const FieldElem& a, const FieldElem& b) {
        a.check_same(b);
        FieldElem r = a;
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= b.c_[i];
        return r;
    }
    friend FieldElem operator-(const FieldElem& a) {
        FieldElem r = a;
        for (auto& v : r.c_) v = -v;
        return r;
    }
    friend FieldElem operator*(const FieldElem& a, const FieldElem& b) {
        a.check_same(b);
        std::vector<Rational> prod(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) prod[i + j] += a.c_[i] * b.c_[j];
        }
        return FieldElem(a.f_, reduce(a.f_, prod));
    }
    friend FieldElem operator*(const Rational& q, const FieldElem& a) {
        FieldElem r = a;
        for (auto& v : r.c_) v *= q;
        return r;
    }
    friend FieldElem operator/(const FieldElem& a, const FieldElem& b) { return a * b.inverse(); }
    friend bool operator==(const FieldElem& a, const FieldElem& b) { return a.f_ == b.f_ && a.c_ == b.c_; }

    FieldElem inverse() const {
        if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of the zero element");
        auto [g, s, t] = xgcd(as_poly(), f_.minpoly_q());
        (void)t;
        if (g.degree() != 0) fail(ErrorKind::DivisionByZero, "element is a zero divisor (field polynomial is reducible)");
        return from_poly(f_, Rational(1) / g.leading() * s);
    }

    FieldElem pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        FieldElem acc = from_rational(f_, Rational(1));
        FieldElem base = *this;
        while (e) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    // Matrix of x -> self * x in the power basis (columns are images of alpha^j).
    RatMatrix mult_matrix() const {
        const auto d = static_cast<std::size_t>(f_.degree());
        RatMatrix m(d, d, Rational(0));
        FieldElem col = *this;
        FieldElem a = generator(f_);
        for (std::size_t j = 0; j < d; ++j) {
            for (std::size_t i = 0; i < d; ++i) m(i, j) = col.c_[i];
            col = col * a;
        }
        return m;
    }

private:
    static std::vector<Rational> reduce(const NumberField& f, std::vector<Rational> r) {
        const int d = f.degree();
        const auto& m = f.minpoly().coeffs();
        for (int i = static_cast<int>(r.size()) - 1; i >= d; --i) {
            Rational c = r[static_cast<std::size_t>(i)];
            if (c == 0) continue;
            for (int j = 0; j < d; ++j) r[static_cast<std::size_t>(i - d + j)] -= c * m[static_cast<std::size_t>(j)];
            r[static_cast<std::size_t>(i)] = 0;
        }
        r.resize(static_cast<std::size_t>(d), Rational(0));
        return r;
    }

    void check_same(const FieldElem& b) const {
        if (!(f_ == b.f_)) fail(ErrorKind::InvalidInput, "elements belong to different fields");
    }

    NumberField f_;
    std::vector<Rational> c_;
};

inline FieldElem pow(const FieldElem& a, long e) { return a.pow(e); }

template <class T>
FieldElem eval(const Poly<T>& p, const FieldElem& a) {
    FieldElem zero = FieldElem::from_rational(a.field(), Rational(0));
    return p.eval_with(a, zero, [&](const T& c) { return FieldElem::from_rational(a.field(), Rational(c)); });
}

inline std::string to_string(const FieldElem& a, std::string_view var = "a") { return to_string(a.as_poly(), var); }

inline FieldElem parse_elem(const NumberField& f, std::string_view text) { return FieldElem::from_poly(f, parse_rat_poly(text)); }

// Monic minimal polynomial over Q: squarefree part of the characteristic
// polynomial of multiplication by a, computed on the integral multiple D*a.
inline RatPoly minimal_polynomial(const FieldElem& a) {
    Integer den = 1;
    for (const auto& c : a.coords()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Integer> scaled;
    for (const auto& c : a.coords()) scaled.push_back(Integer(c * den));
    IntMatrix m = poly_apply(IntPoly(scaled), companion(a.field().minpoly()));
    IntPoly chi = char_poly(m);
    const int d = chi.degree();
    std::vector<Rational> coeffs;
    Integer dpow = 1;
    for (int i = 0; i <= d; ++i) {
        // c_i * D^i / D^d
        coeffs.push_back(Rational(chi.coeff(i)) * Rational(dpow));
        dpow *= den;
    }
    Integer dd = 1;
    mpz_pow_ui(dd.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(d));
    for (auto& c : coeffs) c /= Rational(dd);
    RatPoly mp = squarefree_part(RatPoly(coeffs));
    if (!eval(mp, a).is_zero()) fail(ErrorKind::InvalidInput, "minimal polynomial does not annihilate the element (reducible field?)");
    return mp;
}

inline bool is_unit(const FieldElem& a) {
    if (a.is_zero()) return false;
    RatPoly mp = minimal_polynomial(a);
    if (!is_integral(mp)) return false;
    Rational c0 = abs(mp.coeff(0));
    return c0 == 1;
}

}  // namespace lcpforge
