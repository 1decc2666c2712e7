#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lcpforge/constructions/certificate.hpp"

namespace lcpforge {

// Cyclic totally real field Q(2 cos(2 pi / m)) for the smallest prime m >= 2n + 3.
struct CyclicField {
    long m = 0;
    NumberField field;
    GaloisMap sigma;
};

inline CyclicField make_exfield(long n) {
    if (n < 1) fail(ErrorKind::InvalidInput, "n must be positive");
    long m = 2 * n + 3;
    while (!is_prime(m)) ++m;
    NumberField f = field_new(real_subfield_minpoly(m), false, "theory: maximal real subfield of Q(zeta_" + std::to_string(m) + ")");
    return {m, f, galois_generator(f)};
}

struct DMatrixData {
    CyclicField base;
    IntMatrix companion;
    std::vector<FieldElem> units;  // u_l = sigma^(l-1)(alpha)
    std::vector<IntPoly> polys;    // P_l with P_l(alpha) = u_l
    std::vector<IntMatrix> matrices;
    int units_rank = 0;

    std::size_t p() const { return companion.rows(); }
};

inline DMatrixData make_dmatrix(long n, long bits = 128) {
    DMatrixData out{make_exfield(n), {}, {}, {}, {}, 0};
    const NumberField& f = out.base.field;
    out.companion = companion(f.minpoly());
    std::vector<FieldElem> orbit = out.base.sigma.orbit();
    if (static_cast<long>(orbit.size()) < n) fail(ErrorKind::IndependentUnitsNotFound, "Galois orbit of alpha is too short");
    for (long l = 0; l < n; ++l) {
        const FieldElem& u = orbit[static_cast<std::size_t>(l)];
        if (!is_unit(u)) fail(ErrorKind::IndependentUnitsNotFound, to_string(u) + " is not a unit");
        IntPoly pl = detail::integral_poly(u.coords());  // a denominator would contradict u in Z[alpha]
        IntMatrix al = poly_apply(pl, out.companion);
        if (!is_gl_z(al)) fail(ErrorKind::IndependentUnitsNotFound, "P_l(A) is not in GL(Z)");
        out.units.push_back(u);
        out.polys.push_back(pl);
        out.matrices.push_back(al);
    }
    detail::check_family(out.matrices);
    out.units_rank = multiplicative_rank(out.units, make_embeddings(f, bits));
    if (out.units_rank != n)
        fail(ErrorKind::IndependentUnitsNotFound, "units sigma^l(alpha) have rank " + std::to_string(out.units_rank) + ", need " + std::to_string(n));
    return out;
}

struct OtData {
    NumberField field;
    int s = 0;
    int t = 0;
    std::vector<FieldElem> input_units;
    std::vector<FieldElem> units;  // totally positive generators actually used
    std::vector<bool> squared;
    std::vector<std::vector<Real>> log_projection;  // (ln s_1(u), ..., ln s_s(u)) per unit
    std::vector<IntMatrix> matrices;
    int lattice_rank = 0;
    bool block_form = false;
};

namespace detail {

inline const std::vector<std::string>& open_questions() {
    static const std::vector<std::string> q{
        "free and properly discontinuous action of the group (assumed for these families)",
        "equal dimension of all leaf closures",
        "simple connectivity of the identity component of the closed similarity group",
        "freeness of the induced action on the non-flat factor",
        "weaker forms of J1 and J2",
        "LCK extensions beyond the t = 1 preset",
    };
    return q;
}

inline std::vector<std::vector<RealAlgebraic>> ratio_witness_rows(const std::vector<IntMatrix>& linears, const BlockDecomposition& d,
                                                                 const RatioMatrix& r, const std::vector<FieldElem>* eigen) {
    std::vector<std::vector<RealAlgebraic>> out;
    for (std::size_t g = 0; g < linears.size(); ++g) {
        std::vector<RealAlgebraic> row;
        for (std::size_t k = 0; k < d.count(); ++k) {
            std::optional<FieldElem> e;
            if (eigen) e = (*eigen)[g];
            row.push_back(ratio_witness(linears[g], d, k, r.ratios[g][k], e));
        }
        out.push_back(std::move(row));
    }
    return out;
}

inline FieldRecord record_of(const NumberField& f) { return {f.minpoly(), f.s(), f.t(), f.witness()}; }

inline GeneratorRecord generator_record(const IntMatrix& a, std::vector<RealAlgebraic> witnesses,
                                        std::vector<std::optional<RealAlgebraic>> base_args) {
    return {a, std::vector<Rational>(a.rows(), Rational(0)), std::move(base_args), std::move(witnesses)};
}

// Shared body of the rank-n and worked-example pipelines.
inline LcpCertificate rank_lcp(const std::string& name, long n, long bits, std::uint64_t seed) {
    DMatrixData dm = make_dmatrix(n, bits);
    BlockDecomposition d = find_block_decomposition(dm.matrices, bits, dm.companion);
    RatioMatrix r = check_J1(d, dm.matrices);
    auto witnesses = ratio_witness_rows(dm.matrices, d, r, &dm.units);

    LcpCertificate c;
    c.pipeline = name;
    c.parameters = Json{{"n", n}, {"m", dm.base.m}};
    c.precision_bits = bits;
    c.seed = seed;
    c.field = record_of(dm.base.field);
    for (const auto& u : dm.units) c.flat_elements.push_back(u.coords());
    c.ordering = dm.companion;
    c.flat_block = select_flat_block(witnesses, bits);
    for (std::size_t l = 0; l < dm.matrices.size(); ++l) {
        // Generator l scales base coordinate l by |u_l| at the flat embedding.
        std::vector<std::optional<RealAlgebraic>> args(dm.matrices.size());
        args[l] = witnesses[l][c.flat_block];
        c.generators.push_back(generator_record(dm.matrices[l], witnesses[l], std::move(args)));
    }
    c.claimed_rank = static_cast<int>(n);
    c.notes.push_back("field: smallest prime m >= 2n+3 is m = " + std::to_string(dm.base.m));
    c.notes.push_back("units: u_l = sigma^(l-1)(alpha), sigma(alpha) = " + to_string(dm.base.sigma.image_of_alpha()));
    c.notes.push_back("base translations use |u_l| at the flat embedding, so negative conjugates are allowed");
    c.unverified = open_questions();
    return c;
}

}  // namespace detail

inline LcpCertificate make_rank_n_lcp(long n, long bits = 128, std::uint64_t seed = 1) {
    return seal(detail::rank_lcp("ranklcp", n, bits, seed));
}

inline LcpCertificate worked_rank2_example(long bits = 128, std::uint64_t seed = 1) {
    LcpCertificate c = detail::rank_lcp("worked-example", 2, bits, seed);
    c.notes.push_back(
        "warp factors: the displayed closed forms raise alpha/sigma(alpha) to ln(t_1/alpha), which is not equivariant under "
        "t_1 -> alpha t_1; the implemented exponents are linear in (ln t_1, ln t_2), equivalent to logarithms base alpha and "
        "|sigma(alpha)|");
    c = seal(std::move(c));
    for (const auto& ch : c.verification->checks)
        if (ch.name == "golden" && !ch.pass) fail(ErrorKind::GoldenMismatch, ch.detail);
    return c;
}

// Kourganoff's family on T^(q+1) x S^1: generator (x, t) -> (A x, lambda t)
// with metric b|E^s + t^(2q+2) b|E^u + dt^2.
inline LcpCertificate make_kourganoff(long q, const IntMatrix& a, long bits = 128, std::uint64_t seed = 1) {
    if (q != 1 && q != 2) fail(ErrorKind::AdmissibleQ, "only q = 1 and q = 2 are admissible for this family, got q = " + std::to_string(q));
    if (!a.square() || a.rows() != static_cast<std::size_t>(q + 1))
        fail(ErrorKind::DimensionMismatch, "A must be " + std::to_string(q + 1) + "x" + std::to_string(q + 1));
    if (det(a) != 1) fail(ErrorKind::SpectralHypothesis, "A must have determinant 1");
    BlockDecomposition d;
    RatioMatrix r;
    try {
        d = find_block_decomposition({a}, bits);
        r = check_J1(d, {a});
    } catch (const Error& e) {
        fail(ErrorKind::SpectralHypothesis, std::string("A is not a similarity on E^s and E^u: ") + e.what());
    }
    if (d.count() != 2) fail(ErrorKind::SpectralHypothesis, "A must have exactly one expanding line and one contracted similarity block");
    const auto& row = r.ratios[0];
    const Real one(1, row[0].prec());
    std::optional<std::size_t> flat;
    for (std::size_t k = 0; k < 2; ++k)
        if (d.blocks[k].size == static_cast<std::size_t>(q) && row[k] < one && d.blocks[1 - k].size == 1 && row[1 - k] > one) flat = k;
    if (!flat) fail(ErrorKind::SpectralHypothesis, "A restricted to E^s is not lambda times an orthogonal map with lambda < 1");
    auto witnesses = detail::ratio_witness_rows({a}, d, r, nullptr);

    LcpCertificate c;
    c.pipeline = "kourganoff";
    c.parameters = Json{{"q", q}, {"matrix", to_string(a)}};
    c.precision_bits = bits;
    c.seed = seed;
    c.ordering = d.ordering;
    c.flat_block = *flat;
    c.generators.push_back(detail::generator_record(a, witnesses[0], {witnesses[0][*flat]}));
    c.claimed_rank = 1;
    c.notes.push_back("base coordinate s = ln t; lambda = " + to_string(witnesses[0][*flat].poly) + " root in (" +
                      to_string(witnesses[0][*flat].lo) + ", " + to_string(witnesses[0][*flat].hi) + "]");
    c.notes.push_back("warp phi(t) = t^" + std::to_string(2 * q + 2));
    c.unverified = detail::open_questions();
    return seal(std::move(c));
}

struct OtResult {
    OtData data;
    LcpCertificate certificate;
};

// OT manifold X(K, U) with base R^s (logs of the H^s imaginary parts). With
// lck, t must be 1: the C block becomes the flat factor and the real blocks
// are coupled by cross terms.
inline OtResult make_ot(const IntPoly& minpoly, const std::vector<std::string>& unit_exprs, long bits = 128, std::uint64_t seed = 1,
                        bool lck = false) {
    NumberField f = field_new(minpoly);
    if (f.t() == 0) fail(ErrorKind::NotOtField, to_string(minpoly) + " defines a totally real field");
    if (f.s() == 0) fail(ErrorKind::NotOtField, to_string(minpoly) + " has no real embedding");
    if (lck && f.t() != 1) fail(ErrorKind::InvalidInput, "the LCK preset needs t = 1");
    OtData ot{f, f.s(), f.t(), {}, {}, {}, {}, {}, 0, false};
    EmbeddingSet e = make_embeddings(f, bits);
    const IntMatrix comp = companion(f.minpoly());
    for (const auto& text : unit_exprs) {
        FieldElem u = parse_elem(f, text);
        if (!is_unit(u)) fail(ErrorKind::InvalidInput, text + " is not a unit");
        detail::integral_poly(u.coords());
        bool negative = false;
        for (const auto& v : embed(u, e).real) negative = negative || v.negative();
        ot.input_units.push_back(u);
        ot.squared.push_back(negative);
        ot.units.push_back(negative ? u * u : u);
    }
    const std::size_t s = static_cast<std::size_t>(f.s());
    for (const auto& u : ot.units) {
        std::vector<Real> lv = log_vector(u, e).mids();
        lv.resize(s, Real(working_prec(bits)));
        ot.log_projection.push_back(std::move(lv));
        ot.matrices.push_back(poly_apply(detail::integral_poly(u.coords()), comp));
    }
    if (!ot.units.empty())
        ot.lattice_rank = escalate_decision(bits, [&](long b) {
            EmbeddingSet eb = make_embeddings(f, b);
            std::vector<std::vector<Real>> rows;
            for (const auto& u : ot.units) {
                std::vector<Real> lv = log_vector(u, eb).mids();
                lv.resize(s, Real(working_prec(b)));
                rows.push_back(std::move(lv));
            }
            return numeric_rank(rows, tolerance_for(b, working_prec(b)));
        });
    if (ot.units.size() != s || ot.lattice_rank != f.s())
        fail(ErrorKind::NotFullLattice, "projected unit logarithms have rank " + std::to_string(ot.lattice_rank) + " with " +
                                            std::to_string(ot.units.size()) + " units, need " + std::to_string(s));

    BlockDecomposition d = find_block_decomposition(ot.matrices, bits, comp);
    RatioMatrix r = check_J1(d, ot.matrices);
    ot.block_form = d.count() == s + static_cast<std::size_t>(f.t());
    for (std::size_t k = 0; k < d.count(); ++k) ot.block_form = ot.block_form && d.blocks[k].size == (k < s ? 1u : 2u);
    auto witnesses = detail::ratio_witness_rows(ot.matrices, d, r, &ot.units);

    LcpCertificate c;
    c.pipeline = "ot";
    Json units_json = Json::array(), squared_json = Json::array();
    for (std::size_t i = 0; i < ot.units.size(); ++i) {
        units_json.push_back(unit_exprs[i]);
        squared_json.push_back(static_cast<bool>(ot.squared[i]));
    }
    c.parameters = Json{{"minpoly", to_string(minpoly)}, {"units", units_json}, {"squared", squared_json}, {"lck", lck}};
    c.precision_bits = bits;
    c.seed = seed;
    c.field = detail::record_of(f);
    for (const auto& u : ot.units) c.flat_elements.push_back(u.coords());
    c.ordering = comp;
    c.flat_block = lck ? s : select_flat_block(witnesses, bits);
    for (std::size_t j = 0; j < ot.matrices.size(); ++j) {
        std::vector<std::optional<RealAlgebraic>> args;
        for (std::size_t i = 0; i < s; ++i) args.push_back(witnesses[j][i]);
        c.generators.push_back(detail::generator_record(ot.matrices[j], witnesses[j], std::move(args)));
    }
    for (std::size_t i = 0; i < ot.squared.size(); ++i)
        if (ot.squared[i]) c.notes.push_back("unit " + unit_exprs[i] + " squared to make it totally positive");
    if (lck) {
        std::vector<SimilarityGenerator> gens;
        const mpfr_prec_t prec = d.prec();
        for (std::size_t j = 0; j < c.generators.size(); ++j)
            gens.push_back({ot.matrices[j], c.generators[j].translation, detail::base_translation_of(c.generators[j], bits, prec), r.ratios[j]});
        for (std::size_t k1 = 0; k1 < s; ++k1)
            for (std::size_t k2 = k1 + 1; k2 < s; ++k2) c.cross_pairs.push_back({k1, k2, RatMatrix({{Rational(1)}})});
        if (!c.cross_pairs.empty()) {
            MetricSpec spec = add_cross_terms(build_metric_spec(d, r, c.flat_block, gens), c.cross_pairs, gens);
            c.cross_scale = spec.cross_terms.front().scale;
        }
        c.notes.push_back("LCK preset: flat factor is the complex block");
    }
    if (c.flat_block < s) {
        // A real embedding is injective, so the flat ratios have the rank of the units.
        c.claimed_rank = f.s();
    } else {
        std::vector<RealAlgebraic> flat;
        for (const auto& row : witnesses) flat.push_back(row[c.flat_block]);
        c.claimed_rank = lcp_rank(flat, bits);
    }
    c.unverified = detail::open_questions();
    return {std::move(ot), seal(std::move(c))};
}

inline OtResult make_ot(const IntPoly& minpoly, const std::vector<FieldElem>& units, long bits = 128, std::uint64_t seed = 1,
                        bool lck = false) {
    std::vector<std::string> exprs;
    for (const auto& u : units) exprs.push_back(to_string(u, "x"));
    return make_ot(minpoly, exprs, bits, seed, lck);
}

}  // namespace lcpforge
