#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lcpforge/lcpcore/decomposition.hpp"

namespace lcpforge {

// f(x) = coeffs . x + constant on base log-coordinates.
struct AffineFunctional {
    RealVec coeffs;
    Real constant;

    Real operator()(const RealVec& x) const {
        Real s = constant;
        for (std::size_t i = 0; i < coeffs.size(); ++i) s += coeffs[i] * x[i];
        return s;
    }
    static AffineFunctional zero(std::size_t n, mpfr_prec_t prec) { return {RealVec(n, Real(prec)), Real(prec)}; }
};

// One generator gamma of G: x -> linear x + translation on R^p, plus a
// translation on the base log-coordinates, with its per-block ratios.
struct SimilarityGenerator {
    IntMatrix linear;
    std::vector<Rational> translation;
    RealVec base_translation;
    RealVec ratio_row;
};

// Coefficients c with c . v_j = r_j (constant 0). Rows of the system are the
// translation vectors.
inline AffineFunctional solve_equivariant_functional(const std::vector<RealVec>& translations, const RealVec& targets) {
    const std::size_t n = translations.size();
    if (n == 0) return {RealVec{}, Real(64)};
    if (targets.size() != n) fail(ErrorKind::DimensionMismatch, "one target per translation required");
    const mpfr_prec_t prec = targets[0].prec();
    RealMatrix v = real_zero(n, n, prec);
    RealMatrix r = real_zero(n, 1, prec);
    for (std::size_t j = 0; j < n; ++j) {
        if (translations[j].size() != n) fail(ErrorKind::DimensionMismatch, "translations must live in R^n with n generators");
        for (std::size_t i = 0; i < n; ++i) v(j, i) = translations[j][i];
        r(j, 0) = targets[j];
    }
    RealMatrix c = real_zero(n, 1, prec);
    RealMatrix vinv = real_zero(n, n, prec);
    try {
        vinv = inverse(v);
        c = vinv * r;
    } catch (const Error&) {
        fail(ErrorKind::NoFunctional, "translation vectors are singular");
    }
    Real cond = norm_inf(v) * norm_inf(vinv);
    if (cond > Real::pow2(static_cast<long>(prec) / 4, prec))
        fail(ErrorKind::NoFunctional, "translation vectors ill-conditioned, condition estimate " + cond.to_string(6));
    AffineFunctional f{RealVec(n, Real(prec)), Real(prec)};
    for (std::size_t i = 0; i < n; ++i) f.coeffs[i] = c(i, 0);
    return f;
}

struct CrossTerm {
    std::size_t k1 = 0;
    std::size_t k2 = 0;
    RatMatrix table;  // bilinear form E_k1 x E_k2, in decomposition coordinates
    AffineFunctional exponent;
    Rational scale;   // epsilon
};

// Extra factor with metric e^(2 phi) g_K on which the group acts trivially.
struct Extension {
    AffineFunctional phi;
    RatMatrix gram;
};

struct MetricSpec {
    BlockDecomposition decomposition;
    std::size_t flat_block = 0;
    std::size_t base_dim = 0;
    std::vector<AffineFunctional> block_exponents;  // f_k, zero for the flat block
    AffineFunctional base_conformal;                // f_0
    std::vector<CrossTerm> cross_terms;
    std::vector<Extension> extensions;

    std::size_t extension_dim() const {
        std::size_t m = 0;
        for (const auto& e : extensions) m += e.gram.rows();
        return m;
    }
    std::size_t dim() const { return decomposition.p + base_dim + extension_dim(); }
};

inline std::vector<RealVec> base_translations(const std::vector<SimilarityGenerator>& gens) {
    std::vector<RealVec> out;
    for (const auto& g : gens) out.push_back(g.base_translation);
    return out;
}

// f_k targets ln(Lambda_flat / Lambda_k), f_0 targets ln Lambda_flat.
inline MetricSpec build_metric_spec(const BlockDecomposition& d, const RatioMatrix& ratios, std::size_t flat_block,
                                    const std::vector<SimilarityGenerator>& gens) {
    if (flat_block >= d.count()) fail(ErrorKind::InvalidInput, "flat block index out of range");
    if (ratios.generators() != gens.size()) fail(ErrorKind::DimensionMismatch, "ratio rows differ from generator count");
    const mpfr_prec_t prec = d.prec();
    MetricSpec spec;
    spec.decomposition = d;
    spec.flat_block = flat_block;
    spec.base_dim = gens.empty() ? 0 : gens[0].base_translation.size();
    std::vector<RealVec> v = base_translations(gens);
    for (std::size_t k = 0; k < d.count(); ++k) {
        if (k == flat_block) {
            spec.block_exponents.push_back(AffineFunctional::zero(spec.base_dim, prec));
            continue;
        }
        RealVec targets;
        for (const auto& row : ratios.ratios) targets.push_back(log(row[flat_block] / row[k]));
        spec.block_exponents.push_back(solve_equivariant_functional(v, targets));
    }
    RealVec targets;
    for (const auto& row : ratios.ratios) targets.push_back(log(row[flat_block]));
    spec.base_conformal = solve_equivariant_functional(v, targets);
    return spec;
}

// Gram matrix of h at base point x, coordinates ordered (decomposition blocks, base, extensions).
inline RealMatrix evaluate_metric(const MetricSpec& spec, const RealVec& x) {
    const mpfr_prec_t prec = spec.decomposition.prec();
    const std::size_t p = spec.decomposition.p, n = spec.base_dim;
    RealMatrix h = real_zero(spec.dim(), spec.dim(), prec);
    const Real two(2, prec);
    for (std::size_t k = 0; k < spec.decomposition.count(); ++k) {
        const Block& b = spec.decomposition.blocks[k];
        Real w = exp(two * spec.block_exponents[k](x));
        for (std::size_t i = b.start; i < b.start + b.size; ++i) h(i, i) = w;
    }
    for (const auto& c : spec.cross_terms) {
        const Block& b1 = spec.decomposition.blocks[c.k1];
        const Block& b2 = spec.decomposition.blocks[c.k2];
        Real w = Real(c.scale, prec) * exp(two * c.exponent(x));
        for (std::size_t i = 0; i < b1.size; ++i)
            for (std::size_t j = 0; j < b2.size; ++j) {
                Real v = w * Real(c.table(i, j), prec);
                h(b1.start + i, b2.start + j) += v;
                h(b2.start + j, b1.start + i) += v;
            }
    }
    Real g = exp(two * spec.base_conformal(x));
    for (std::size_t i = 0; i < n; ++i) h(p + i, p + i) = g;
    std::size_t off = p + n;
    for (const auto& e : spec.extensions) {
        Real w = exp(two * e.phi(x));
        for (std::size_t i = 0; i < e.gram.rows(); ++i)
            for (std::size_t j = 0; j < e.gram.cols(); ++j) h(off + i, off + j) = w * Real(e.gram(i, j), prec);
        off += e.gram.rows();
    }
    return h;
}

// Seeded points of the fundamental parallelepiped spanned by the base translations.
inline std::vector<RealVec> sample_base_points(const std::vector<SimilarityGenerator>& gens, std::size_t count, std::uint64_t seed,
                                               mpfr_prec_t prec) {
    std::mt19937_64 rng(seed);
    const std::size_t n = gens.empty() ? 0 : gens[0].base_translation.size();
    std::vector<RealVec> out;
    for (std::size_t s = 0; s < count; ++s) {
        RealVec x(n, Real(prec));
        for (const auto& g : gens) {
            // 53 random bits as an exact dyadic in [0, 1).
            Real theta = Real(static_cast<long>(rng() >> 11), prec) * Real::pow2(-53, prec);
            for (std::size_t i = 0; i < n; ++i) x[i] += theta * g.base_translation[i];
        }
        out.push_back(std::move(x));
    }
    return out;
}

struct EquivarianceReport {
    std::size_t generator = 0;
    std::size_t samples = 0;
    Real max_residual;
    long precision_bits = 0;
    bool pass = false;
};

// Max over samples of |J^T h(gamma P) J - Lambda_flat^2 h(P)| / |Lambda_flat^2 h(P)| (entrywise max norms).
inline EquivarianceReport verify_equivariance(const MetricSpec& spec, const SimilarityGenerator& gen, std::size_t gen_id,
                                              const std::vector<RealVec>& points) {
    const BlockDecomposition& d = spec.decomposition;
    const mpfr_prec_t prec = d.prec();
    const std::size_t p = d.p, n = spec.base_dim, dim = spec.dim();
    RealMatrix jac = real_identity(dim, prec);
    RealMatrix t = d.transform(gen.linear);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) jac(i, j) = t(i, j);
    RealMatrix jt = jac.transpose();
    Real lam = gen.ratio_row.at(spec.flat_block);
    Real lam2 = lam * lam;
    EquivarianceReport rep;
    rep.generator = gen_id;
    rep.samples = points.size();
    rep.precision_bits = d.precision_bits;
    rep.max_residual = Real(prec);
    for (const auto& x : points) {
        RealVec moved = x;
        for (std::size_t i = 0; i < n; ++i) moved[i] += gen.base_translation[i];
        RealMatrix pulled = jt * evaluate_metric(spec, moved) * jac;
        RealMatrix target = lam2 * evaluate_metric(spec, x);
        Real res = max_abs(pulled - target) / max_abs(target);
        rep.max_residual = max(rep.max_residual, res);
    }
    rep.pass = rep.max_residual < tolerance_for(d.precision_bits, prec);
    return rep;
}

// Grid of 10 points per base direction over the fundamental parallelepiped.
inline std::vector<RealVec> fundamental_grid(const std::vector<SimilarityGenerator>& gens, mpfr_prec_t prec) {
    const std::size_t n = gens.size();
    const std::size_t dim = n ? gens[0].base_translation.size() : 0;
    std::vector<RealVec> out;
    std::vector<int> idx(n, 0);
    while (true) {
        RealVec x(dim, Real(prec));
        for (std::size_t g = 0; g < n; ++g) {
            Real theta = Real(Rational(idx[g]) / 10, prec);
            for (std::size_t i = 0; i < dim; ++i) x[i] += theta * gens[g].base_translation[i];
        }
        out.push_back(std::move(x));
        std::size_t k = 0;
        while (k < n && ++idx[k] == 10) idx[k++] = 0;
        if (k == n) break;
    }
    return out;
}

struct CrossPair {
    std::size_t k1 = 0;
    std::size_t k2 = 0;
    RatMatrix table;
};

// Adds e^(2 f_{k,k'}) eps b_{k,k'} terms. Invariance of each table is read
// relative to the normalized block actions (S_k / Lambda_k)^T b (S_k' / Lambda_k') = b.
// eps = 1 if the metric stays positive definite on the grid, else 20 bisection
// steps on [0, 1] and half of the last good value. A fixed eps is only checked.
inline MetricSpec add_cross_terms(MetricSpec spec, const std::vector<CrossPair>& pairs, const std::vector<SimilarityGenerator>& gens,
                                  const std::optional<Rational>& fixed_scale = std::nullopt) {
    if (pairs.empty()) return spec;
    const BlockDecomposition& d = spec.decomposition;
    const mpfr_prec_t prec = d.prec();
    const Real tol = tolerance_for(d.precision_bits, prec);
    std::vector<RealVec> v = base_translations(gens);
    std::vector<CrossTerm> added;
    for (const auto& pr : pairs) {
        if (pr.k1 >= d.count() || pr.k2 >= d.count() || pr.k1 == pr.k2 || pr.k1 == spec.flat_block || pr.k2 == spec.flat_block)
            fail(ErrorKind::InvalidInput, "cross terms need two distinct non-flat blocks");
        const Block& b1 = d.blocks[pr.k1];
        const Block& b2 = d.blocks[pr.k2];
        if (pr.table.rows() != b1.size || pr.table.cols() != b2.size) fail(ErrorKind::DimensionMismatch, "cross-term table shape differs from block sizes");
        RealMatrix b = to_real(pr.table, prec);
        for (std::size_t g = 0; g < gens.size(); ++g) {
            RealMatrix t = d.transform(gens[g].linear);
            RealMatrix s1 = real_zero(b1.size, b1.size, prec), s2 = real_zero(b2.size, b2.size, prec);
            for (std::size_t i = 0; i < b1.size; ++i)
                for (std::size_t j = 0; j < b1.size; ++j) s1(i, j) = t(b1.start + i, b1.start + j) / gens[g].ratio_row[pr.k1];
            for (std::size_t i = 0; i < b2.size; ++i)
                for (std::size_t j = 0; j < b2.size; ++j) s2(i, j) = t(b2.start + i, b2.start + j) / gens[g].ratio_row[pr.k2];
            RealMatrix moved = s1.transpose() * b * s2;
            if (max_abs(moved - b) > tol * max(Real(1, prec), max_abs(b)))
                fail(ErrorKind::InvarianceFailed, "cross-term table for blocks (" + std::to_string(pr.k1) + "," + std::to_string(pr.k2) +
                                                      ") is not invariant under generator " + std::to_string(g));
        }
        RealVec targets;
        for (const auto& g : gens)
            targets.push_back(log(g.ratio_row[spec.flat_block] / sqrt(g.ratio_row[pr.k1] * g.ratio_row[pr.k2])));
        added.push_back({pr.k1, pr.k2, pr.table, solve_equivariant_functional(v, targets), Rational(1)});
    }
    std::vector<RealVec> grid = fundamental_grid(gens, prec);
    auto positive_with = [&](const Rational& eps) {
        MetricSpec trial = spec;
        for (auto c : added) {
            c.scale = eps;
            trial.cross_terms.push_back(std::move(c));
        }
        for (const auto& x : grid)
            if (!is_positive_definite(evaluate_metric(trial, x))) return false;
        return true;
    };
    Rational eps = fixed_scale.value_or(Rational(1));
    if (fixed_scale) {
        if (eps <= 0 || !positive_with(eps)) fail(ErrorKind::NoPositiveScale, "cross-term scale " + to_string(eps) + " breaks positive definiteness");
    } else if (!positive_with(eps)) {
        Rational lo(0), hi(1);
        for (int step = 0; step < 20; ++step) {
            Rational mid = (lo + hi) / 2;
            if (positive_with(mid)) lo = mid; else hi = mid;
        }
        if (lo == 0) fail(ErrorKind::NoPositiveScale, "no positive cross-term scale keeps the metric positive definite");
        eps = lo / 2;
    }
    for (auto& c : added) {
        c.scale = eps;
        spec.cross_terms.push_back(std::move(c));
    }
    return spec;
}

// Adds an m-dimensional factor e^(2 phi) g_K; phi must satisfy phi . v_j = ln Lambda_flat(gamma_j).
inline MetricSpec extend(MetricSpec spec, const AffineFunctional& phi, const RatMatrix& gram, const std::vector<SimilarityGenerator>& gens) {
    if (gram.rows() == 0) return spec;
    if (!gram.square()) fail(ErrorKind::DimensionMismatch, "extension metric must be square");
    const mpfr_prec_t prec = spec.decomposition.prec();
    for (std::size_t i = 0; i < gram.rows(); ++i)
        for (std::size_t j = 0; j < gram.cols(); ++j)
            if (gram(i, j) != gram(j, i)) fail(ErrorKind::InvalidInput, "extension metric must be symmetric");
    if (!is_positive_definite(to_real(gram, prec))) fail(ErrorKind::InvalidInput, "extension metric must be positive definite");
    if (phi.coeffs.size() != spec.base_dim) fail(ErrorKind::DimensionMismatch, "extension functional has wrong dimension");
    const Real tol = tolerance_for(spec.decomposition.precision_bits, prec);
    for (std::size_t g = 0; g < gens.size(); ++g) {
        Real shift = phi(gens[g].base_translation) - phi(RealVec(spec.base_dim, Real(prec)));
        Real want = log(gens[g].ratio_row[spec.flat_block]);
        if (abs(shift - want) > tol * max(Real(1, prec), abs(want)))
            fail(ErrorKind::EquivarianceMismatch, "extension functional is not equivariant for generator " + std::to_string(g));
    }
    spec.extensions.push_back({phi, gram});
    return spec;
}

}  // namespace lcpforge
