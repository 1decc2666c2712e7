#pragma once

#include <functional>
#include <vector>

#include "lcpforge/intlinalg/lll.hpp"
#include "lcpforge/numberfield/field.hpp"

namespace lcpforge {

// Real embeddings in descending order of the image of alpha, then one
// upper-half-plane representative per conjugate pair, descending real part.
struct EmbeddingSet {
    NumberField field;
    long precision_bits = 0;
    std::vector<Interval> real_roots;
    std::vector<ComplexRoot> complex_roots;

    std::size_t size() const { return real_roots.size() + complex_roots.size(); }
};

inline mpfr_prec_t working_prec(long bits) { return static_cast<mpfr_prec_t>(bits + 64); }

inline EmbeddingSet make_embeddings(const NumberField& f, long bits) {
    if (bits < 8) fail(ErrorKind::InvalidInput, "embedding precision too small");
    EmbeddingSet e;
    e.field = f;
    e.precision_bits = bits;
    const RatPoly& p = f.minpoly_q();
    for (const auto& iso : isolate_real_roots(p)) e.real_roots.push_back(refine_real_root(p, iso, bits + 32));
    e.complex_roots = certified_complex_roots(p, bits + 32, f.t());
    if (static_cast<int>(e.real_roots.size()) != f.s()) fail(ErrorKind::InvalidInput, "real root count disagrees with signature");
    return e;
}

struct EmbeddedValues {
    std::vector<Interval> real;
    std::vector<ComplexInterval> complex;
};

inline EmbeddedValues embed(const FieldElem& a, const EmbeddingSet& e) {
    if (!(a.field() == e.field)) fail(ErrorKind::InvalidInput, "element and embedding set belong to different fields");
    const mpfr_prec_t prec = working_prec(e.precision_bits);
    RatPoly p = a.as_poly();
    EmbeddedValues out;
    auto accurate = [&](const Interval& v) {
        Real scale = max(Real(1, prec), v.mag());
        return v.width() <= Real::pow2(-e.precision_bits, prec) * scale;
    };
    for (const auto& r : e.real_roots) {
        Interval x(r.lo(), r.hi());
        Interval v = eval(p, Interval(Real(x.lo(), prec, MPFR_RNDD), Real(x.hi(), prec, MPFR_RNDU)));
        if (!accurate(v)) fail(ErrorKind::NeedsEscalation, "embedding not certified at requested precision");
        out.real.push_back(v);
    }
    for (const auto& c : e.complex_roots) {
        ComplexInterval z = c.box();
        ComplexInterval v = eval(p, ComplexInterval{Interval(Real(z.re.lo(), prec, MPFR_RNDD), Real(z.re.hi(), prec, MPFR_RNDU)),
                                                    Interval(Real(z.im.lo(), prec, MPFR_RNDD), Real(z.im.hi(), prec, MPFR_RNDU))});
        if (!accurate(v.re) || !accurate(v.im)) fail(ErrorKind::NeedsEscalation, "embedding not certified at requested precision");
        out.complex.push_back(v);
    }
    return out;
}

struct LogVector {
    std::vector<Interval> entries;
    long precision_bits = 0;

    Real sum() const {
        Real s(entries.empty() ? 64 : entries[0].prec());
        for (const auto& e : entries) s = s + e.mid();
        return s;
    }
    std::vector<Real> mids() const {
        std::vector<Real> m;
        for (const auto& e : entries) m.push_back(e.mid());
        return m;
    }
};

// (ln|s_1(u)|, ..., ln|s_s(u)|, 2 ln|s_{s+1}(u)|, ..., 2 ln|s_{s+t}(u)|)
inline LogVector log_vector(const FieldElem& u, const EmbeddingSet& e) {
    if (!is_unit(u)) fail(ErrorKind::InvalidInput, "log_vector needs a unit, got " + to_string(u));
    EmbeddedValues v = embed(u, e);
    LogVector out;
    out.precision_bits = e.precision_bits;
    for (const auto& r : v.real) out.entries.push_back(log(abs(r)));
    for (const auto& c : v.complex) {
        Interval l = log(c.norm2());  // 2 ln|z| = ln |z|^2
        out.entries.push_back(l);
    }
    return out;
}

// Rank of a real matrix by full-pivot elimination; a pivot counts as zero when
// below tol relative to the largest entry.
inline int numeric_rank(std::vector<std::vector<Real>> rows, const Real& tol) {
    if (rows.empty()) return 0;
    const std::size_t n = rows.size(), m = rows[0].size();
    const mpfr_prec_t prec = tol.prec();
    Real scale(1, prec);
    for (const auto& r : rows)
        for (const auto& v : r) scale = max(scale, abs(v));
    int rank = 0;
    std::vector<bool> used_row(n, false), used_col(m, false);
    for (std::size_t step = 0; step < std::min(n, m); ++step) {
        Real best(prec);
        std::size_t bi = n, bj = m;
        for (std::size_t i = 0; i < n; ++i) {
            if (used_row[i]) continue;
            for (std::size_t j = 0; j < m; ++j) {
                if (used_col[j]) continue;
                if (abs(rows[i][j]) > best) {
                    best = abs(rows[i][j]);
                    bi = i;
                    bj = j;
                }
            }
        }
        if (bi == n || best <= tol * scale) break;
        used_row[bi] = used_col[bj] = true;
        ++rank;
        for (std::size_t i = 0; i < n; ++i) {
            if (used_row[i]) continue;
            Real f = rows[i][bj] / rows[bi][bj];
            for (std::size_t j = 0; j < m; ++j) rows[i][j] = rows[i][j] - f * rows[bi][j];
        }
    }
    return rank;
}

// Runs a numeric integer decision at P and 2P; on disagreement escalates to
// 4P and 8P, accepting the first consecutive pair that agrees.
inline int escalate_decision(long bits, const std::function<int(long)>& decide) {
    int prev = decide(bits);
    long p = bits;
    for (int round = 0; round < 3; ++round) {
        p *= 2;
        int next = decide(p);
        if (next == prev) return next;
        prev = next;
    }
    fail(ErrorKind::PrecisionExhausted, "numeric decision unstable under precision escalation");
}

inline int multiplicative_rank(const std::vector<FieldElem>& units, const EmbeddingSet& e) {
    if (units.empty()) return 0;
    for (const auto& u : units)
        if (!is_unit(u)) fail(ErrorKind::InvalidInput, "multiplicative_rank needs units, got " + to_string(u));
    return escalate_decision(e.precision_bits, [&](long bits) {
        EmbeddingSet local = bits == e.precision_bits ? e : make_embeddings(e.field, bits);
        std::vector<std::vector<Real>> rows;
        for (const auto& u : units) rows.push_back(log_vector(u, local).mids());
        return numeric_rank(rows, tolerance_for(bits, working_prec(bits)));
    });
}

inline int dirichlet_rank_bound(const NumberField& f) { return f.s() + f.t() - 1; }

// Rank of the Z-span of real numbers (logs of ratios), as n minus the number of
// independent small integer relations LLL finds. Used when no injective real
// embedding carries the values.
inline int log_relation_rank(long bits, const std::function<std::vector<Real>(long)>& logs_at) {
    return escalate_decision(bits, [&](long b) {
        std::vector<Real> x = logs_at(b);
        return static_cast<int>(x.size() - find_integer_relations(x).size());
    });
}

}  // namespace lcpforge
