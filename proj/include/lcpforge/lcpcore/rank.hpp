#pragma once

#include <optional>
#include <vector>

#include "lcpforge/lcpcore/metric.hpp"

namespace lcpforge {

// A ratio is a unit ratio when its minimal polynomial is integral with constant term +-1.
inline bool verify_unit_ratio(const FieldElem& lambda) { return is_unit(lambda); }

inline IntPoly unit_witness(const FieldElem& lambda) {
    RatPoly mp = minimal_polynomial(lambda);
    if (!is_integral(mp)) fail(ErrorKind::InvalidInput, to_string(lambda) + " is not an algebraic integer");
    return to_int(mp);
}

// Exact description of Lambda_k(gamma) = |eigenvalue of A on block k|. With a
// known eigen-element u (real block), the witness is the minimal polynomial of
// +-u. Otherwise it is extracted from chi_A(x) chi_A(-x) for real blocks, or
// from chi_{A (x) A}(x^2), whose roots include |mu|, for complex blocks.
inline RealAlgebraic ratio_witness(const IntMatrix& a, const BlockDecomposition& d, std::size_t k, const Real& ratio,
                                   const std::optional<FieldElem>& eigen = std::nullopt) {
    const Block& b = d.blocks.at(k);
    if (b.size == 1 && eigen) {
        RealMatrix t = d.transform(a);
        FieldElem w = t(b.start, b.start).sign() < 0 ? -*eigen : *eigen;
        bool certified = eigen->field().witness().rfind("forced", 0) != 0;
        return real_algebraic_minimal(unit_witness(w), ratio, certified);
    }
    IntPoly ann;
    if (b.size == 1) {
        IntPoly chi = char_poly(a);
        ann = chi * chi.reflect();
    } else {
        IntPoly x2 = IntPoly::monomial(Integer(1), 2);
        ann = char_poly(kronecker(a, a)).compose(x2);
    }
    return real_algebraic_from(ann, ratio);
}

inline bool witness_matches(const RealAlgebraic& w, const Real& ratio, long bits) {
    if (!w.isolates()) return false;
    Real v = w.value(bits);
    const mpfr_prec_t prec = ratio.prec();
    return abs(Real(v, prec) - ratio) <= tolerance_for(bits, prec) * max(Real(1, prec), abs(ratio));
}

// Rank of the subgroup of R_+^* generated by the flat-block ratios. When each
// ratio is |s(u_j)| for a field element u_j and an injective real embedding s,
// this is the multiplicative rank of the u_j; otherwise integer relations
// among the logarithms are searched directly.
inline int lcp_rank(const std::vector<RealAlgebraic>& flat_ratios, long bits,
                    const std::optional<std::vector<FieldElem>>& elements = std::nullopt) {
    if (flat_ratios.empty()) return 0;
    if (elements) {
        if (elements->empty()) return 0;
        EmbeddingSet e = make_embeddings(elements->front().field(), bits);
        return multiplicative_rank(*elements, e);
    }
    return log_relation_rank(bits, [&](long b) {
        std::vector<Real> logs;
        for (const auto& w : flat_ratios) logs.push_back(log(w.value(b)));
        return logs;
    });
}

// Default flat block: maximal rank of its ratio column, ties to the first
// block; blocks where every ratio is 1 are skipped since J2 would fail.
inline std::size_t select_flat_block(const std::vector<std::vector<RealAlgebraic>>& witness_rows, long bits) {
    if (witness_rows.empty() || witness_rows[0].empty()) fail(ErrorKind::InvalidInput, "no ratios to choose a flat block from");
    std::optional<std::size_t> best;
    int best_rank = 0;
    for (std::size_t k = 0; k < witness_rows[0].size(); ++k) {
        std::vector<RealAlgebraic> column;
        for (const auto& row : witness_rows) column.push_back(row.at(k));
        int r = lcp_rank(column, bits);
        if (r > best_rank) {
            best = k;
            best_rank = r;
        }
    }
    if (!best) fail(ErrorKind::InvalidInput, "every block is an isometry for every generator");
    return *best;
}

}  // namespace lcpforge
