#pragma once

#include <algorithm>
#include <vector>

#include "lcpforge/numberfield/embedding.hpp"

namespace lcpforge {

// Automorphism determined by the image of alpha.
class GaloisMap {
public:
    GaloisMap(NumberField f, FieldElem image) : f_(std::move(f)), image_(std::move(image)) {}

    const NumberField& field() const { return f_; }
    const FieldElem& image_of_alpha() const { return image_; }

    FieldElem operator()(const FieldElem& a) const { return eval(a.as_poly(), image_); }

    // alpha, s(alpha), s^2(alpha), ... until it returns to alpha (at most d + 1 steps).
    std::vector<FieldElem> orbit() const {
        FieldElem a = FieldElem::generator(f_);
        std::vector<FieldElem> out{a};
        FieldElem cur = (*this)(a);
        while (!(cur == a) && static_cast<int>(out.size()) <= f_.degree()) {
            out.push_back(cur);
            cur = (*this)(cur);
        }
        return out;
    }

private:
    NumberField f_;
    FieldElem image_;
};

namespace detail {

// Conjugates of alpha that lie in Q(alpha): for each numeric root r_k, an
// integer relation among (1, r_1, ..., r_1^(d-1), r_k) proposes an element,
// which is accepted only if it is an exact root of the minimal polynomial.
inline std::vector<FieldElem> conjugates_in_field(const NumberField& f, long bits) {
    const int d = f.degree();
    EmbeddingSet e = make_embeddings(f, bits);
    const mpfr_prec_t prec = working_prec(bits);
    std::vector<Complex> roots;
    for (const auto& r : e.real_roots) roots.push_back({r.mid(), Real(prec)});
    for (const auto& c : e.complex_roots) {
        roots.push_back({c.re, c.im});
        roots.push_back({c.re, -c.im});
    }
    const bool complex_parts = !e.complex_roots.empty();
    std::vector<std::vector<Real>> powers;
    Complex pw{Real(1, prec), Real(prec)};
    for (int i = 0; i < d; ++i) {
        powers.push_back(complex_parts ? std::vector<Real>{pw.re, pw.im} : std::vector<Real>{pw.re});
        pw = pw * roots[0];
    }
    FieldElem alpha = FieldElem::generator(f);
    std::vector<FieldElem> found{alpha};
    for (std::size_t k = 1; k < roots.size(); ++k) {
        std::vector<std::vector<Real>> x = powers;
        x.push_back(complex_parts ? std::vector<Real>{roots[k].re, roots[k].im} : std::vector<Real>{roots[k].re});
        for (const auto& rel : find_integer_relations(x)) {
            const Integer& last = rel.coeffs.back();
            if (last == 0) continue;
            std::vector<Rational> c;
            for (int i = 0; i < d; ++i) c.push_back(Rational(-rel.coeffs[static_cast<std::size_t>(i)]) / Rational(last));
            FieldElem beta(f, c);
            if (!eval(f.minpoly(), beta).is_zero()) continue;
            if (std::find(found.begin(), found.end(), beta) == found.end()) found.push_back(beta);
            break;
        }
    }
    return found;
}

}  // namespace detail

inline GaloisMap galois_generator(const NumberField& f) {
    const int d = f.degree();
    FieldElem alpha = FieldElem::generator(f);
    if (d == 1) return GaloisMap(f, alpha);
    if (f.s() > 0 && f.t() > 0)
        fail(ErrorKind::NotNormal, "mixed signature (" + std::to_string(f.s()) + "," + std::to_string(f.t()) + ") cannot be normal");
    std::vector<FieldElem> conj;
    for (long bits = 128 + 32L * d; bits <= 4096; bits *= 2) {
        conj = detail::conjugates_in_field(f, bits);
        if (static_cast<int>(conj.size()) == d) break;
    }
    if (static_cast<int>(conj.size()) != d)
        fail(ErrorKind::NotNormal, "found " + std::to_string(conj.size()) + " of " + std::to_string(d) + " conjugates inside the field");
    // Prefer the generator whose first-embedding image is the largest other real root.
    EmbeddingSet e = make_embeddings(f, 64);
    std::vector<std::pair<Real, FieldElem>> ranked;
    for (std::size_t i = 1; i < conj.size(); ++i) {
        EmbeddedValues v = embed(conj[i], e);
        Real key = v.real.empty() ? v.complex[0].re.mid() : v.real[0].mid();
        ranked.emplace_back(key, conj[i]);
    }
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    for (const auto& [key, beta] : ranked) {
        GaloisMap g(f, beta);
        if (static_cast<int>(g.orbit().size()) == d) return g;
    }
    fail(ErrorKind::NotCyclic, "no conjugate generates a cyclic orbit of length " + std::to_string(d));
}

}  // namespace lcpforge
