#pragma once

// Certificates hold only exact data (integer matrices, rationals, isolated
// real algebraic numbers). Every numeric quantity is recomputed on
// verification, so a certificate can be re-checked at any precision.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lcpforge/constructions/json_io.hpp"
#include "lcpforge/intlinalg/eigen.hpp"
#include "lcpforge/lcpcore/rank.hpp"
#include "lcpforge/numberfield/cyclotomic.hpp"
#include "lcpforge/numberfield/galois.hpp"

namespace lcpforge {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

using json_io::Json;

struct FieldRecord {
    IntPoly minpoly;
    int s = 0;
    int t = 0;
    std::string irreducibility;  // witness text, "theory: ..." or "forced: ..." when not proven by the modular test
};

struct GeneratorRecord {
    IntMatrix linear;
    std::vector<Rational> translation;
    // Base log-translation: entry i is ln(arg_i), or 0 when absent.
    std::vector<std::optional<RealAlgebraic>> base_log_args;
    // Lambda_k of this generator for every block k.
    std::vector<RealAlgebraic> ratio_witnesses;
};

struct ExtensionRecord {
    RatMatrix gram;
    Rational phi_constant;  // phi = f_0 + phi_constant
};

struct CheckResult {
    std::string name;
    bool pass = true;
    std::string detail;
    Json data = Json::object();
};

struct Verification {
    bool pass = false;
    std::optional<std::string> first_failure;
    long precision_bits = 0;
    long confirmed_at_bits = 0;
    std::vector<CheckResult> checks;

    Json to_json() const {
        Json checks_json = Json::array();
        for (const auto& c : checks)
            checks_json.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}, {"data", c.data}});
        return Json{{"status", pass ? "PASS" : "FAILED"},
                    {"first_failure", first_failure ? Json(*first_failure) : Json(nullptr)},
                    {"precision_bits", precision_bits},
                    {"confirmed_at_bits", confirmed_at_bits},
                    {"checks", std::move(checks_json)}};
    }

    std::vector<std::pair<std::string, bool>> verdicts() const {
        std::vector<std::pair<std::string, bool>> v;
        for (const auto& c : checks) v.emplace_back(c.name, c.pass);
        return v;
    }
};

struct LcpCertificate {
    std::string pipeline;
    Json parameters = Json::object();
    long precision_bits = 128;
    std::uint64_t seed = 1;
    std::size_t samples = 100;
    std::optional<FieldRecord> field;
    // Power-basis coordinates of the field element acting as each generator;
    // on a real flat block their absolute values are the flat ratios.
    std::vector<std::vector<Rational>> flat_elements;
    std::optional<IntMatrix> ordering;
    std::size_t flat_block = 0;
    std::vector<GeneratorRecord> generators;
    std::vector<CrossPair> cross_pairs;
    std::optional<Rational> cross_scale;
    std::vector<ExtensionRecord> extensions;
    int claimed_rank = 0;
    std::vector<std::string> notes;
    std::vector<std::string> unverified;
    std::optional<Verification> verification;

    bool passed() const { return verification && verification->pass; }
};

// Everything rebuilt from a certificate at one precision; exposed so tests can
// perturb the metric.
struct Geometry {
    std::vector<IntMatrix> linears;
    BlockDecomposition decomposition;
    RatioMatrix ratios;
    std::vector<SimilarityGenerator> generators;
    MetricSpec metric;
    std::vector<RealVec> samples;
};

namespace detail {

inline std::vector<IntMatrix> linears_of(const LcpCertificate& c) {
    std::vector<IntMatrix> out;
    for (const auto& g : c.generators) out.push_back(g.linear);
    return out;
}

inline NumberField rebuild_field(const FieldRecord& r) {
    const std::string& w = r.irreducibility;
    if (w.rfind("theory:", 0) == 0) return field_new(r.minpoly, false, w);
    return field_new(r.minpoly, w.rfind("forced:", 0) == 0);
}

inline IntPoly integral_poly(const std::vector<Rational>& coords) {
    std::vector<Integer> c;
    for (const auto& q : coords) {
        if (q.get_den() != 1) fail(ErrorKind::InvalidInput, "element is not in Z[alpha]");
        c.push_back(q.get_num());
    }
    return IntPoly(std::move(c));
}

inline RealVec base_translation_of(const GeneratorRecord& g, long bits, mpfr_prec_t prec) {
    RealVec v;
    for (const auto& arg : g.base_log_args) {
        if (!arg) {
            v.emplace_back(prec);
            continue;
        }
        Real x(arg->value(bits + 32), prec);
        if (x.sign() <= 0) fail(ErrorKind::InvalidInput, "base translation argument is not positive");
        v.push_back(log(x));
    }
    return v;
}

inline AffineFunctional extension_phi(const MetricSpec& spec, const ExtensionRecord& e, mpfr_prec_t prec) {
    AffineFunctional phi = spec.base_conformal;
    phi.constant = phi.constant + Real(e.phi_constant, prec);
    return phi;
}

inline Json real_json(const Real& v, long bits) { return json_io::from_real(v, bits); }

inline Json reals_json(const RealVec& v, long bits) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(real_json(x, bits));
    return a;
}

// Runs named checks; a throwing check fails with the error text.
class CheckRunner {
public:
    std::vector<CheckResult> results;

    bool run(const std::string& name, const std::function<void(CheckResult&)>& body) {
        CheckResult r;
        r.name = name;
        try {
            body(r);
        } catch (const Error& e) {
            r.pass = false;
            r.detail = e.what();
        } catch (const std::exception& e) {
            // Malformed certificate data, e.g. an index past the end of a table.
            r.pass = false;
            r.detail = std::string("malformed certificate: ") + e.what();
        }
        results.push_back(std::move(r));
        return results.back().pass;
    }

    void skip(const std::string& name, const std::string& missing) {
        results.push_back({name, false, "not run: " + missing + " failed", Json::object()});
    }
};

inline std::vector<std::vector<Integer>> golden_a1() { return {{0, 0, 1}, {1, 0, 2}, {0, 1, -1}}; }
inline std::vector<std::vector<Integer>> golden_a2() { return {{-2, 1, -1}, {0, 0, -1}, {1, -1, 1}}; }

}  // namespace detail

// Numeric reconstruction; throws on the first failing stage.
inline Geometry build_geometry(const LcpCertificate& c, long bits) {
    Geometry g;
    g.linears = detail::linears_of(c);
    g.decomposition = find_block_decomposition(g.linears, bits, c.ordering);
    g.ratios = check_J1(g.decomposition, g.linears);
    const mpfr_prec_t prec = g.decomposition.prec();
    for (std::size_t i = 0; i < c.generators.size(); ++i)
        g.generators.push_back({c.generators[i].linear, c.generators[i].translation,
                                detail::base_translation_of(c.generators[i], bits, prec), g.ratios.ratios[i]});
    g.metric = build_metric_spec(g.decomposition, g.ratios, c.flat_block, g.generators);
    if (!c.cross_pairs.empty()) g.metric = add_cross_terms(g.metric, c.cross_pairs, g.generators, c.cross_scale);
    for (const auto& e : c.extensions)
        g.metric = extend(g.metric, detail::extension_phi(g.metric, e, prec), e.gram, g.generators);
    g.samples = sample_base_points(g.generators, c.samples, c.seed, prec);
    return g;
}

namespace detail {

inline void pipeline_checks(const LcpCertificate& c, long bits, const std::optional<NumberField>& field, const Geometry* geo,
                            CheckRunner& run) {
    const std::string& p = c.pipeline;
    if ((p == "ranklcp" || p == "worked-example") && field) {
        run.run("dmatrix", [&](CheckResult& r) {
            const NumberField& f = *field;
            long m = c.parameters.at("m").get<long>();
            if (f.minpoly() != real_subfield_minpoly(m)) fail(ErrorKind::InvalidInput, "field is not the real subfield for m");
            GaloisMap sigma = galois_generator(f);
            if (c.flat_elements.size() != c.generators.size()) fail(ErrorKind::InvalidInput, "one unit per generator required");
            IntMatrix a = companion(f.minpoly());
            FieldElem u = FieldElem::generator(f);
            for (std::size_t l = 0; l < c.generators.size(); ++l) {
                FieldElem stored(f, c.flat_elements[l]);
                if (!(stored == u)) fail(ErrorKind::InvalidInput, "unit " + std::to_string(l) + " is not sigma^" + std::to_string(l) + "(alpha)");
                if (!is_unit(stored)) fail(ErrorKind::InvalidInput, "unit " + std::to_string(l) + " is not a unit");
                if (poly_apply(integral_poly(c.flat_elements[l]), a) != c.generators[l].linear)
                    fail(ErrorKind::InvalidInput, "generator " + std::to_string(l) + " differs from P_l(companion)");
                u = sigma(u);
            }
            r.data = Json{{"m", m}, {"sigma_alpha", to_string(sigma.image_of_alpha())}};
        });
    }
    if (p == "worked-example") {
        run.run("golden", [&](CheckResult& r) {
            if (!field) fail(ErrorKind::GoldenMismatch, "field missing");
            const NumberField& f = *field;
            if (f.minpoly() != parse_int_poly("x^3+x^2-2x-1")) fail(ErrorKind::GoldenMismatch, "minimal polynomial differs");
            IntMatrix a1(golden_a1()), a2(golden_a2());
            if (c.generators.size() != 2) fail(ErrorKind::GoldenMismatch, "two generators expected");
            if (c.generators[0].linear != a1) fail(ErrorKind::GoldenMismatch, "A_1 differs from the displayed matrix");
            if (c.generators[1].linear != a2) fail(ErrorKind::GoldenMismatch, "A_2 differs from the displayed matrix");
            if (a1 * a1 - Integer(2) * int_identity(3) != a2)
                fail(ErrorKind::GoldenMismatch, "A_2 != A_1^2 - 2I");
            FieldElem alpha = FieldElem::generator(f);
            FieldVector x1 = eigen_solve(a1, alpha);
            FieldVector want{{FieldElem::from_rational(f, Rational(1)), alpha + alpha * alpha, alpha}};
            if (!(x1 == want)) fail(ErrorKind::GoldenMismatch, "eigenvector x_1 differs");
            FieldElem s = galois_generator(f).image_of_alpha();
            if (!(s == alpha * alpha - FieldElem::from_rational(f, Rational(2)))) fail(ErrorKind::GoldenMismatch, "sigma(alpha) != alpha^2 - 2");
            Json x = Json::array();
            for (const auto& e : x1.coords) x.push_back(to_string(e));
            r.data = Json{{"x1", x}, {"sigma_alpha", to_string(s)}};
        });
    }
    if (p == "kourganoff") {
        if (!geo) {
            run.skip("kourganoff_spectrum", "geometry");
            run.skip("kourganoff_warp", "geometry");
            return;
        }
        const long q = c.parameters.at("q").get<long>();
        run.run("kourganoff_spectrum", [&](CheckResult& r) {
            if (q != 1 && q != 2) fail(ErrorKind::AdmissibleQ, "q must be 1 or 2");
            if (c.generators.size() != 1) fail(ErrorKind::SpectralHypothesis, "one generator expected");
            const IntMatrix& a = c.generators[0].linear;
            if (a.rows() != static_cast<std::size_t>(q + 1) || det(a) != 1) fail(ErrorKind::SpectralHypothesis, "A must lie in SL_{q+1}(Z)");
            const BlockDecomposition& d = geo->decomposition;
            if (d.count() != 2) fail(ErrorKind::SpectralHypothesis, "expected exactly the blocks E^u and E^s");
            const std::size_t other = 1 - c.flat_block;
            const auto& row = geo->ratios.ratios[0];
            const Real one(1, row[0].prec());
            if (d.blocks[c.flat_block].size != static_cast<std::size_t>(q) || !(row[c.flat_block] < one))
                fail(ErrorKind::SpectralHypothesis, "flat block is not a contracted q-dimensional similarity");
            if (d.blocks[other].size != 1 || !(row[other] > one)) fail(ErrorKind::SpectralHypothesis, "no expanding eigenline");
            r.data = Json{{"lambda", real_json(row[c.flat_block], bits)}, {"expanding", real_json(row[other], bits)}};
        });
        run.run("kourganoff_warp", [&](CheckResult& r) {
            // phi(t) = t^(2q+2): exact power law in Q(lambda), and the metric's
            // E^u exponent in t = e^s must be that power.
            const RealAlgebraic& w = c.generators.at(0).ratio_witnesses.at(c.flat_block);
            RatPoly mod = to_rat(w.poly);
            const RatPoly lam = RatPoly::x() % mod;
            const long k = 2 * q + 2;
            auto power = [&](const RatPoly& base) {
                RatPoly acc = RatPoly::constant(Rational(1));
                for (long i = 0; i < k; ++i) acc = (acc * base) % mod;
                return acc;
            };
            const RatPoly lam_k = power(lam);
            for (int i = 1; i <= 50; ++i) {
                const Rational t = Rational(3 * i + 1) / (7 + i);
                Rational t_k = 1;
                for (long e = 0; e < k; ++e) t_k *= t;
                if (power(t * lam) != t_k * lam_k) fail(ErrorKind::EquivarianceMismatch, "phi(lambda t) != lambda^(2q+2) phi(t)");
            }
            const std::size_t other = 1 - c.flat_block;
            const mpfr_prec_t prec = geo->decomposition.prec();
            const Real tol = tolerance_for(bits, prec);
            // Block exponents live on s = ln t: f_u(s) = (q+1) s, f_0(s) = s.
            Real eu = geo->metric.block_exponents[other].coeffs.at(0);
            Real e0 = geo->metric.base_conformal.coeffs.at(0);
            if (abs(eu - Real(q + 1, prec)) > tol || abs(e0 - Real(1, prec)) > tol)
                fail(ErrorKind::EquivarianceMismatch, "metric warp exponent differs from 2q+2");
            r.data = Json{{"warp_exponent", k}, {"samples", 50}, {"lambda_minpoly", to_string(w.poly)}};
        });
    }
    if (p == "ot") {
        if (!field) {
            run.skip("ot_field", "field");
            return;
        }
        const NumberField& f = *field;
        run.run("ot_field", [&](CheckResult& r) {
            if (f.t() < 1) fail(ErrorKind::NotOtField, "field is totally real");
            if (f.s() < 1) fail(ErrorKind::NotOtField, "field has no real embedding");
            r.data = Json{{"s", f.s()}, {"t", f.t()}};
        });
        std::vector<FieldElem> units;
        for (const auto& e : c.flat_elements) units.emplace_back(f, e);
        run.run("ot_positivity", [&](CheckResult& r) {
            if (units.size() != c.generators.size()) fail(ErrorKind::InvalidInput, "one unit per generator required");
            EmbeddingSet e = make_embeddings(f, bits);
            IntMatrix a = companion(f.minpoly());
            for (std::size_t i = 0; i < units.size(); ++i) {
                if (!is_unit(units[i])) fail(ErrorKind::InvalidInput, to_string(units[i]) + " is not a unit");
                if (poly_apply(integral_poly(units[i].coords()), a) != c.generators[i].linear)
                    fail(ErrorKind::InvalidInput, "generator " + std::to_string(i) + " is not multiplication by its unit");
                for (const auto& v : embed(units[i], e).real)
                    if (!v.positive()) fail(ErrorKind::InvalidInput, to_string(units[i]) + " is not totally positive");
            }
            r.data = Json{{"units", units.size()}};
        });
        run.run("full_lattice", [&](CheckResult& r) {
            int rank = escalate_decision(bits, [&](long b) {
                EmbeddingSet e = make_embeddings(f, b);
                std::vector<std::vector<Real>> rows;
                for (const auto& u : units) {
                    std::vector<Real> lv = log_vector(u, e).mids();
                    lv.resize(static_cast<std::size_t>(f.s()), Real(working_prec(b)));
                    rows.push_back(std::move(lv));
                }
                return numeric_rank(rows, tolerance_for(b, working_prec(b)));
            });
            if (rank != f.s() || static_cast<int>(units.size()) != f.s())
                fail(ErrorKind::NotFullLattice, "projected unit logarithms have rank " + std::to_string(rank) + ", need " + std::to_string(f.s()));
            r.data = Json{{"rank", rank}};
        });
        if (!geo) {
            run.skip("ot_block_form", "geometry");
            return;
        }
        run.run("ot_block_form", [&](CheckResult& r) {
            const BlockDecomposition& d = geo->decomposition;
            if (d.count() != static_cast<std::size_t>(f.s() + f.t())) fail(ErrorKind::InvalidInput, "block count differs from s + t");
            for (std::size_t k = 0; k < d.count(); ++k)
                if (d.blocks[k].size != (k < static_cast<std::size_t>(f.s()) ? 1u : 2u))
                    fail(ErrorKind::InvalidInput, "blocks are not s real scalings followed by t rotation-scalings");
            const mpfr_prec_t prec = d.prec();
            Json products = Json::array();
            for (const auto& row : geo->ratios.ratios) {
                Real prod(1, prec);
                for (std::size_t k = 0; k < d.count(); ++k) prod = prod * (d.blocks[k].size == 1 ? row[k] : row[k] * row[k]);
                if (abs(prod - Real(1, prec)) > tolerance_for(bits, prec)) fail(ErrorKind::InvalidInput, "ratio norm product differs from 1");
                products.push_back(real_json(prod, bits));
            }
            r.data = Json{{"norm_products", products}};
        });
    }
}

inline Verification verify_once(const LcpCertificate& c, long bits) {
    CheckRunner run;
    run.run("schema", [&](CheckResult&) {
        if (c.generators.empty()) fail(ErrorKind::Schema, "no generators");
        const std::size_t p = c.generators[0].linear.rows();
        for (const auto& g : c.generators) {
            if (g.translation.size() != p) fail(ErrorKind::Schema, "translation length differs from dimension");
            if (g.base_log_args.size() != c.generators.size()) fail(ErrorKind::Schema, "base dimension differs from generator count");
        }
        if (c.claimed_rank < 1) fail(ErrorKind::Schema, "claimed rank must be positive");
        if (c.samples == 0) fail(ErrorKind::Schema, "sample count must be positive");
        if (!c.flat_elements.empty() && !c.field) fail(ErrorKind::Schema, "flat elements need a field");
    });

    std::optional<NumberField> field;
    if (c.field) {
        run.run("field", [&](CheckResult& r) {
            NumberField f = rebuild_field(*c.field);
            if (f.s() != c.field->s || f.t() != c.field->t) fail(ErrorKind::InvalidInput, "stored signature differs from Sturm count");
            field = f;
            r.data = Json{{"minpoly", to_string(f.minpoly())}, {"s", f.s()}, {"t", f.t()}, {"irreducibility", f.witness()}};
        });
    }

    const std::vector<IntMatrix> linears = linears_of(c);
    run.run("gl_z", [&](CheckResult&) {
        for (std::size_t i = 0; i < linears.size(); ++i)
            if (!is_gl_z(linears[i])) fail(ErrorKind::InvalidInput, "generator " + std::to_string(i) + " is not in GL(Z)");
    });
    run.run("commuting", [&](CheckResult&) { check_family(linears); });

    std::optional<BlockDecomposition> dec;
    run.run("block_decomposition", [&](CheckResult& r) {
        dec = find_block_decomposition(linears, bits, c.ordering);
        Json sizes = Json::array();
        for (const auto& b : dec->blocks) sizes.push_back(b.size);
        r.data = Json{{"p", dec->p}, {"blocks", sizes}};
    });

    Geometry geo;
    bool have_geometry = false;
    if (!dec) {
        for (const char* n : {"dimension", "J1", "multiplicativity", "unit_ratios", "ratio_witnesses", "J2", "base_translations",
                              "functionals", "cross_terms", "extensions", "equivariance", "lcp_rank"})
            run.skip(n, "block_decomposition");
    } else {
        const BlockDecomposition& d = *dec;
        const mpfr_prec_t prec = d.prec();
        const Real tol = tolerance_for(bits, prec);
        run.run("dimension", [&](CheckResult& r) {
            if (d.p < 2 || d.count() < 2) fail(ErrorKind::InvalidInput, "need p >= 2 and at least two blocks");
            if (c.flat_block >= d.count()) fail(ErrorKind::InvalidInput, "flat block index out of range");
            r.data = Json{{"p", d.p}, {"blocks", d.count()}, {"flat_block", c.flat_block}};
        });
        std::optional<RatioMatrix> ratios;
        run.run("J1", [&](CheckResult& r) {
            ratios = check_J1(d, linears);
            Json rows = Json::array();
            for (const auto& row : ratios->ratios) rows.push_back(reals_json(row, bits));
            r.data = Json{{"ratios", rows}};
        });
        if (!ratios) {
            for (const char* n : {"multiplicativity", "unit_ratios", "ratio_witnesses", "J2", "base_translations", "functionals",
                                  "cross_terms", "extensions", "equivariance", "lcp_rank"})
                run.skip(n, "J1");
        } else {
            const RatioMatrix& rm = *ratios;
            run.run("multiplicativity", [&](CheckResult&) {
                for (std::size_t i = 0; i < linears.size(); ++i)
                    for (std::size_t j = i; j < linears.size(); ++j) {
                        RatioMatrix prod = check_J1(d, {linears[i] * linears[j]});
                        for (std::size_t k = 0; k < d.count(); ++k) {
                            Real want = rm.ratios[i][k] * rm.ratios[j][k];
                            if (abs(prod.ratios[0][k] - want) > tol * max(Real(1, prec), want))
                                fail(ErrorKind::InvalidInput, "ratio of a generator product is not the product of ratios");
                        }
                    }
            });
            run.run("unit_ratios", [&](CheckResult& r) {
                // A monic integral annihilator with constant term +-1 forces the
                // minimal polynomial (a monic integral factor) to have constant term +-1.
                Json polys = Json::array();
                for (std::size_t g = 0; g < c.generators.size(); ++g) {
                    const auto& ws = c.generators[g].ratio_witnesses;
                    if (ws.size() != d.count()) fail(ErrorKind::Schema, "one ratio witness per block required");
                    Json row = Json::array();
                    for (std::size_t k = 0; k < ws.size(); ++k) {
                        if (!ws[k].is_unit_witness())
                            fail(ErrorKind::InvalidInput, "ratio (" + std::to_string(g) + "," + std::to_string(k) + ") witness is not a unit polynomial");
                        if (!ws[k].isolates()) fail(ErrorKind::InvalidInput, "ratio witness interval does not isolate a root");
                        row.push_back(to_string(ws[k].poly));
                    }
                    polys.push_back(row);
                }
                r.data = Json{{"witnesses", polys}};
            });
            run.run("ratio_witnesses", [&](CheckResult&) {
                for (std::size_t g = 0; g < c.generators.size(); ++g)
                    for (std::size_t k = 0; k < d.count(); ++k)
                        if (!witness_matches(c.generators[g].ratio_witnesses.at(k), rm.ratios[g][k], bits))
                            fail(ErrorKind::InvalidInput, "ratio (" + std::to_string(g) + "," + std::to_string(k) + ") differs from its witness");
            });
            run.run("J2", [&](CheckResult&) {
                if (!check_J2(rm, c.flat_block, bits)) fail(ErrorKind::InvalidInput, "every generator is an isometry on the flat block");
            });

            std::vector<SimilarityGenerator> gens;
            run.run("base_translations", [&](CheckResult& r) {
                Json rows = Json::array();
                for (std::size_t i = 0; i < c.generators.size(); ++i) {
                    for (const auto& arg : c.generators[i].base_log_args)
                        if (arg && !arg->isolates()) fail(ErrorKind::InvalidInput, "base translation witness does not isolate a root");
                    gens.push_back({linears[i], c.generators[i].translation, base_translation_of(c.generators[i], bits, prec), rm.ratios[i]});
                    rows.push_back(reals_json(gens.back().base_translation, bits));
                }
                r.data = Json{{"translations", rows}};
            });

            std::optional<MetricSpec> spec;
            if (gens.size() == c.generators.size()) {
                run.run("functionals", [&](CheckResult& r) {
                    MetricSpec s = build_metric_spec(d, rm, c.flat_block, gens);
                    Real worst(prec);
                    for (std::size_t j = 0; j < gens.size(); ++j) {
                        const Real lflat = log(rm.ratios[j][c.flat_block]);
                        worst = max(worst, abs(s.base_conformal(gens[j].base_translation) - s.base_conformal.constant - lflat));
                        for (std::size_t k = 0; k < d.count(); ++k) {
                            Real want = k == c.flat_block ? Real(prec) : lflat - log(rm.ratios[j][k]);
                            worst = max(worst, abs(s.block_exponents[k](gens[j].base_translation) - s.block_exponents[k].constant - want));
                        }
                    }
                    if (worst > tol) fail(ErrorKind::NoFunctional, "functional residual above tolerance");
                    Json ex = Json::array();
                    for (const auto& f : s.block_exponents) ex.push_back(reals_json(f.coeffs, bits));
                    r.data = Json{{"block_exponents", ex}, {"base_conformal", reals_json(s.base_conformal.coeffs, bits)},
                                  {"max_residual", real_json(worst, bits)}};
                    spec = std::move(s);
                });
            } else {
                run.skip("functionals", "base_translations");
            }
            if (spec && !c.cross_pairs.empty()) {
                run.run("cross_terms", [&](CheckResult& r) {
                    MetricSpec s = add_cross_terms(*spec, c.cross_pairs, gens, c.cross_scale);
                    r.data = Json{{"pairs", c.cross_pairs.size()}, {"scale", to_string(s.cross_terms.front().scale)}};
                    spec = std::move(s);
                });
            }
            if (spec && !c.extensions.empty()) {
                run.run("extensions", [&](CheckResult& r) {
                    MetricSpec s = *spec;
                    for (const auto& e : c.extensions) s = extend(s, extension_phi(s, e, prec), e.gram, gens);
                    r.data = Json{{"extra_dimensions", s.extension_dim()}};
                    spec = std::move(s);
                });
            }
            if (spec && run.results.back().pass) {
                geo = Geometry{linears, d, rm, gens, *spec, sample_base_points(gens, c.samples, c.seed, prec)};
                have_geometry = true;
                run.run("equivariance", [&](CheckResult& r) {
                    Json reps = Json::array();
                    bool all = true;
                    for (std::size_t i = 0; i < gens.size(); ++i) {
                        EquivarianceReport rep = verify_equivariance(geo.metric, gens[i], i, geo.samples);
                        all = all && rep.pass;
                        reps.push_back(Json{{"generator", i}, {"samples", rep.samples}, {"max_residual", real_json(rep.max_residual, bits)},
                                            {"pass", rep.pass}});
                    }
                    r.data = Json{{"tolerance", real_json(tol, bits)}, {"generators", reps}};
                    if (!all) fail(ErrorKind::EquivarianceMismatch, "pullback residual above tolerance");
                });
            } else {
                run.skip("equivariance", "metric construction");
            }

            run.run("lcp_rank", [&](CheckResult& r) {
                std::vector<RealAlgebraic> flat;
                for (const auto& g : c.generators) flat.push_back(g.ratio_witnesses.at(c.flat_block));
                std::optional<std::vector<FieldElem>> elems;
                // A complex flat block has no injective real embedding behind it;
                // its rank comes from integer relations among the logarithms.
                if (!c.flat_elements.empty() && d.blocks[c.flat_block].size == 1) {
                    if (!field) fail(ErrorKind::InvalidInput, "flat elements need a valid field");
                    if (!c.ordering || char_poly(*c.ordering) != field->minpoly())
                        fail(ErrorKind::InvalidInput, "flat elements need the companion ordering");
                    // The flat block is the eigenline of a root r of the minimal
                    // polynomial; its ratios must be |u_j(r)|.
                    const Real& root = d.ordering_eigenvalues[c.flat_block].re;
                    elems.emplace();
                    for (std::size_t j = 0; j < c.flat_elements.size(); ++j) {
                        FieldElem u(*field, c.flat_elements[j]);
                        Real v = abs(eval(u.as_poly(), root));
                        if (abs(v - rm.ratios[j][c.flat_block]) > tol * max(Real(1, prec), v))
                            fail(ErrorKind::InvalidInput, "flat ratio " + std::to_string(j) + " is not |u_j| at the flat embedding");
                        elems->push_back(u);
                    }
                }
                int rank = lcp_rank(flat, bits, elems);
                r.data = Json{{"rank", rank}, {"claimed", c.claimed_rank}};
                if (rank != c.claimed_rank) fail(ErrorKind::InvalidInput, "rank " + std::to_string(rank) + " differs from claimed rank");
            });
        }
    }

    if (field) {
        run.run("dirichlet", [&](CheckResult& r) {
            int bound = dirichlet_rank_bound(*field);
            int units_rank = 0;
            if (!c.flat_elements.empty()) {
                std::vector<FieldElem> us;
                for (const auto& e : c.flat_elements) us.emplace_back(*field, e);
                units_rank = multiplicative_rank(us, make_embeddings(*field, bits));
            }
            r.data = Json{{"bound", bound}, {"units_rank", units_rank}};
            if (units_rank > bound || c.claimed_rank > bound) fail(ErrorKind::InvalidInput, "rank exceeds s + t - 1");
        });
    }

    pipeline_checks(c, bits, field, have_geometry ? &geo : nullptr, run);

    Verification v;
    v.precision_bits = bits;
    v.confirmed_at_bits = bits;
    v.checks = std::move(run.results);
    v.pass = true;
    for (const auto& ch : v.checks)
        if (!ch.pass) {
            v.pass = false;
            v.first_failure = ch.name;
            break;
        }
    return v;
}

}  // namespace detail

// Verifies at bits and 2*bits; if the verdicts differ, 4*bits decides between
// them, and disagreement with both is reported as precision exhaustion.
inline Verification verify(const LcpCertificate& c, long bits) {
    Verification lo = detail::verify_once(c, bits);
    Verification hi = detail::verify_once(c, 2 * bits);
    if (lo.verdicts() == hi.verdicts()) {
        lo.confirmed_at_bits = 2 * bits;
        return lo;
    }
    Verification top = detail::verify_once(c, 4 * bits);
    if (top.verdicts() == hi.verdicts()) {
        hi.confirmed_at_bits = 4 * bits;
        return hi;
    }
    if (top.verdicts() == lo.verdicts()) {
        lo.confirmed_at_bits = 4 * bits;
        return lo;
    }
    lo.pass = false;
    lo.first_failure = "precision-exhausted";
    return lo;
}

inline LcpCertificate seal(LcpCertificate c) {
    c.verification = verify(c, c.precision_bits);
    return c;
}

// ---- serialization ----

inline Json to_json(const LcpCertificate& c) {
    using namespace json_io;
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["tool"] = Json{{"name", "lcpforge"}, {"version", kToolVersion}};
    j["pipeline"] = Json{{"name", c.pipeline}, {"parameters", c.parameters}};
    j["precision_bits"] = c.precision_bits;
    j["seed"] = c.seed;
    j["samples"] = c.samples;
    if (c.field)
        j["field"] = Json{{"minpoly", from_poly(c.field->minpoly)},
                          {"signature", Json::array({c.field->s, c.field->t})},
                          {"irreducibility", c.field->irreducibility},
                          {"order", "Z[alpha]"}};
    else
        j["field"] = nullptr;
    Json flat = Json::array();
    for (const auto& e : c.flat_elements) flat.push_back(from_rationals(e));
    j["flat_elements"] = flat;
    j["ordering"] = c.ordering ? from_matrix(*c.ordering) : Json(nullptr);
    j["flat_block"] = c.flat_block;
    Json gens = Json::array();
    for (const auto& g : c.generators) {
        Json args = Json::array();
        for (const auto& a : g.base_log_args) args.push_back(a ? from_algebraic(*a) : Json(nullptr));
        Json ws = Json::array();
        for (const auto& w : g.ratio_witnesses) ws.push_back(from_algebraic(w));
        gens.push_back(Json{{"linear", from_matrix(g.linear)},
                            {"translation", from_rationals(g.translation)},
                            {"base_log_args", args},
                            {"ratio_witnesses", ws}});
    }
    j["generators"] = gens;
    Json pairs = Json::array();
    for (const auto& p : c.cross_pairs) pairs.push_back(Json{{"blocks", Json::array({p.k1, p.k2})}, {"table", from_rat_matrix(p.table)}});
    j["cross_terms"] = Json{{"pairs", pairs}, {"scale", c.cross_scale ? from_rational(*c.cross_scale) : Json(nullptr)}};
    Json ext = Json::array();
    for (const auto& e : c.extensions) ext.push_back(Json{{"gram", from_rat_matrix(e.gram)}, {"phi_constant", from_rational(e.phi_constant)}});
    j["extensions"] = ext;
    j["claimed_rank"] = c.claimed_rank;
    j["notes"] = c.notes;
    j["unverified"] = c.unverified;
    j["verification"] = c.verification ? c.verification->to_json() : Json(nullptr);
    return j;
}

namespace detail {

template <class T>
T get_as(const Json& j, const char* key) {
    const Json& v = json_io::at(j, key);
    try {
        return v.get<T>();
    } catch (const nlohmann::json::exception&) {
        json_io::schema_error(std::string("field '") + key + "' has the wrong type");
    }
}

inline Verification verification_from_json(const Json& j) {
    Verification v;
    v.pass = json_io::str(json_io::at(j, "status")) == "PASS";
    const Json& ff = json_io::at(j, "first_failure");
    if (!ff.is_null()) v.first_failure = json_io::str(ff);
    v.precision_bits = get_as<long>(j, "precision_bits");
    v.confirmed_at_bits = get_as<long>(j, "confirmed_at_bits");
    for (const auto& c : json_io::at(j, "checks"))
        v.checks.push_back({get_as<std::string>(c, "name"), get_as<bool>(c, "pass"), get_as<std::string>(c, "detail"), json_io::at(c, "data")});
    return v;
}

}  // namespace detail

inline LcpCertificate from_json(const Json& j) {
    using namespace json_io;
    using detail::get_as;
    if (!j.is_object()) schema_error("certificate must be a JSON object");
    if (get_as<int>(j, "schema_version") != kSchemaVersion) schema_error("unsupported schema_version");
    LcpCertificate c;
    const Json& pipe = at(j, "pipeline");
    c.pipeline = get_as<std::string>(pipe, "name");
    c.parameters = at(pipe, "parameters");
    c.precision_bits = get_as<long>(j, "precision_bits");
    c.seed = get_as<std::uint64_t>(j, "seed");
    c.samples = get_as<std::size_t>(j, "samples");
    const Json& f = at(j, "field");
    if (!f.is_null()) {
        FieldRecord r;
        r.minpoly = to_poly(at(f, "minpoly"));
        const Json& sig = at(f, "signature");
        if (!sig.is_array() || sig.size() != 2) schema_error("signature must be [s, t]");
        r.s = sig[0].get<int>();
        r.t = sig[1].get<int>();
        r.irreducibility = get_as<std::string>(f, "irreducibility");
        c.field = r;
    }
    for (const auto& e : at(j, "flat_elements")) c.flat_elements.push_back(to_rationals(e));
    const Json& ord = at(j, "ordering");
    if (!ord.is_null()) c.ordering = to_matrix(ord);
    c.flat_block = get_as<std::size_t>(j, "flat_block");
    for (const auto& g : at(j, "generators")) {
        GeneratorRecord r;
        r.linear = to_matrix(at(g, "linear"));
        r.translation = to_rationals(at(g, "translation"));
        for (const auto& a : at(g, "base_log_args")) r.base_log_args.push_back(a.is_null() ? std::nullopt : std::optional(to_algebraic(a)));
        for (const auto& w : at(g, "ratio_witnesses")) r.ratio_witnesses.push_back(to_algebraic(w));
        c.generators.push_back(std::move(r));
    }
    const Json& cross = at(j, "cross_terms");
    for (const auto& p : at(cross, "pairs")) {
        const Json& b = at(p, "blocks");
        if (!b.is_array() || b.size() != 2) schema_error("cross-term blocks must be a pair");
        c.cross_pairs.push_back({b[0].get<std::size_t>(), b[1].get<std::size_t>(), to_rat_matrix(at(p, "table"))});
    }
    const Json& scale = at(cross, "scale");
    if (!scale.is_null()) c.cross_scale = to_rational(scale);
    for (const auto& e : at(j, "extensions")) c.extensions.push_back({to_rat_matrix(at(e, "gram")), to_rational(at(e, "phi_constant"))});
    c.claimed_rank = get_as<int>(j, "claimed_rank");
    c.notes = get_as<std::vector<std::string>>(j, "notes");
    c.unverified = get_as<std::vector<std::string>>(j, "unverified");
    const Json& v = at(j, "verification");
    if (!v.is_null()) c.verification = detail::verification_from_json(v);
    return c;
}

inline LcpCertificate parse_certificate(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        json_io::schema_error(std::string("malformed JSON: ") + e.what());
    }
    return from_json(j);
}

}  // namespace lcpforge
