// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>

#include "lcpforge/constructions/pipelines.hpp"

using namespace lcpforge;

namespace {

IntPoly P(const char* text) { return parse_int_poly(text); }

IntMatrix M(std::vector<std::vector<long>> rows) {
    std::vector<std::vector<Integer>> r;
    for (const auto& row : rows) {
        r.emplace_back();
        for (long v : row) r.back().emplace_back(v);
    }
    return IntMatrix(std::move(r));
}

const IntMatrix kA1 = M({{0, 0, 1}, {1, 0, 2}, {0, 1, -1}});
const IntMatrix kA2 = M({{-2, 1, -1}, {0, 0, -1}, {1, -1, 1}});
const IntMatrix kB = M({{2, 1}, {1, 1}});

struct Failure {
    std::string why;
};

void require(bool ok, const std::string& why) {
    if (!ok) throw Failure{why};
}

const CheckResult* find_check(const LcpCertificate& c, const std::string& name) {
    for (const auto& ch : c.verification->checks)
        if (ch.name == name) return &ch;
    return nullptr;
}

bool check_passed(const LcpCertificate& c, const std::string& name) {
    const CheckResult* r = find_check(c, name);
    return r && r->pass;
}

const std::map<std::string, LcpCertificate>& corpus() {
    static const std::map<std::string, LcpCertificate> all = [] {
        std::map<std::string, LcpCertificate> m;
        m.emplace("worked-example", worked_rank2_example());
        for (long n = 1; n <= 4; ++n) m.emplace("ranklcp n=" + std::to_string(n), make_rank_n_lcp(n));
        m.emplace("kourganoff q=1", make_kourganoff(1, kB));
        m.emplace("kourganoff q=2", make_kourganoff(2, companion(P("x^3-x-1"))));
        m.emplace("ot x^3-x-1", make_ot(P("x^3-x-1"), std::vector<std::string>{"x"}).certificate);
        m.emplace("ot lck x^4-x-1", make_ot(P("x^4-x-1"), std::vector<std::string>{"x", "x-1"}, 128, 1, true).certificate);
        return m;
    }();
    return all;
}

std::string golden() {
    require(real_subfield_minpoly(7) == P("x^3+x^2-2x-1"), "real_subfield_minpoly(7)");
    require(companion(P("x^3+x^2-2x-1")) == kA1, "companion matrix differs from A1");
    require(poly_apply(P("x^2-2"), kA1) == kA2, "A1^2 - 2I differs from A2");
    NumberField f = field_new(P("x^3+x^2-2x-1"));
    FieldElem a = FieldElem::generator(f);
    FieldVector x1 = eigen_solve(kA1, a);
    require(x1.coords.size() == 3 && x1.coords[0] == FieldElem::from_rational(f, Rational(1)) && x1.coords[1] == a + a * a &&
                x1.coords[2] == a,
            "eigenvector x1");
    return "minpoly, A1, A2, x1 exact";
}

std::string rank_certificates() {
    std::string detail;
    for (long n = 1; n <= 4; ++n) {
        for (long bits : {128L, 256L}) {
            LcpCertificate c = bits == 128 ? corpus().at("ranklcp n=" + std::to_string(n)) : make_rank_n_lcp(n, bits);
            require(c.passed(), "ranklcp n=" + std::to_string(n) + " at " + std::to_string(bits) + " bits did not pass");
            int rank = find_check(c, "lcp_rank")->data.at("rank").get<int>();
            require(rank == n, "rank " + std::to_string(rank) + " for n=" + std::to_string(n));
        }
        detail += (n > 1 ? ", " : "") + std::to_string(n);
    }
    return "ranks " + detail + " at 128 and 256 bits";
}

std::string dirichlet() {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> ex(-5, 5);
    std::vector<std::pair<IntPoly, std::string>> fields;
    for (long n = 1; n <= 4; ++n) fields.push_back({make_exfield(n).field.minpoly(), "theory"});
    fields.push_back({P("x^3-x-1"), ""});
    fields.push_back({P("x^4-x-1"), ""});
    int sets = 0;
    for (const auto& [mp, w] : fields) {
        NumberField f = w.empty() ? field_new(mp) : field_new(mp, false, "theory: real subfield");
        EmbeddingSet e = make_embeddings(f, 128);
        const int bound = dirichlet_rank_bound(f);
        require(bound == f.s() + f.t() - 1, "bound formula");
        std::vector<FieldElem> base = {FieldElem::generator(f)};
        if (f.t() == 0) base = galois_generator(f).orbit();
        else if (is_unit(FieldElem::generator(f) - FieldElem::from_rational(f, Rational(1))))
            base.push_back(FieldElem::generator(f) - FieldElem::from_rational(f, Rational(1)));
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<FieldElem> units;
            for (int i = 0; i < static_cast<int>(base.size()) + 2; ++i) {
                FieldElem u = FieldElem::from_rational(f, Rational(1));
                for (const auto& b : base) u = u * b.pow(ex(rng));
                units.push_back(u);
            }
            require(multiplicative_rank(units, e) <= bound, "rank above s + t - 1 for " + to_string(mp));
            ++sets;
        }
    }
    NumberField f7 = field_new(P("x^3+x^2-2x-1"));
    FieldElem a = FieldElem::generator(f7);
    require(dirichlet_rank_bound(f7) == 2, "m=7 bound");
    require(multiplicative_rank({a, a * a - FieldElem::from_rational(f7, Rational(2))}, make_embeddings(f7, 128)) == 2,
            "{alpha, sigma(alpha)} does not attain 2");
    return std::to_string(sets) + " unit sets within bound; m=7 bound 2 attained";
}

std::string unit_ratios() {
    int count = 0;
    for (const auto& [name, c] : corpus()) {
        Geometry g = build_geometry(c, c.precision_bits);
        for (std::size_t j = 0; j < c.generators.size(); ++j)
            for (std::size_t k = 0; k < c.generators[j].ratio_witnesses.size(); ++k) {
                const RealAlgebraic& w = c.generators[j].ratio_witnesses[k];
                require(w.is_unit_witness(), name + ": witness " + to_string(w.poly) + " is not monic with constant +-1");
                require(w.isolates(), name + ": witness interval does not isolate one root");
                require(witness_matches(w, g.ratios.ratios[j][k], c.precision_bits), name + ": witness root differs from the ratio");
                ++count;
            }
    }
    return std::to_string(count) + " ratios with integral unit minimal polynomials";
}

std::string equivariance() {
    Real worst(192);
    int flips = 0;
    for (const auto& [name, c] : corpus()) {
        Geometry g = build_geometry(c, 128);
        require(g.samples.size() == 100, "100 samples");
        const mpfr_prec_t prec = g.decomposition.prec();
        auto all_pass = [&] {
            bool ok = true;
            for (std::size_t j = 0; j < g.generators.size(); ++j) {
                EquivarianceReport rep = verify_equivariance(g.metric, g.generators[j], j, g.samples);
                worst = max(worst, Real(rep.max_residual, 192));
                ok = ok && rep.max_residual < Real::pow2(-64, prec);
            }
            return ok;
        };
        require(all_pass(), name + ": residual above 2^-64");
        std::vector<Real*> coeffs;
        for (std::size_t k = 0; k < g.metric.block_exponents.size(); ++k)
            if (k != g.metric.flat_block)
                for (auto& v : g.metric.block_exponents[k].coeffs) coeffs.push_back(&v);
        for (auto& v : g.metric.base_conformal.coeffs) coeffs.push_back(&v);
        for (auto& ct : g.metric.cross_terms)
            for (auto& v : ct.exponent.coeffs) coeffs.push_back(&v);
        for (Real* v : coeffs) {
            Real saved = *v;
            *v += Real(Rational(1, 1000), prec);
            Real probe_worst = worst;
            require(!all_pass(), name + ": perturbed coefficient still passes");
            worst = probe_worst;
            *v = saved;
            ++flips;
        }
    }
    return "max residual " + worst.to_string(3) + " < 2^-64; " + std::to_string(flips) + " perturbations all detected";
}

std::string kourganoff() {
    const LcpCertificate& c = corpus().at("kourganoff q=1");
    require(c.passed(), "make_kourganoff(1, B) did not pass");
    const CheckResult* w = find_check(c, "kourganoff_warp");
    require(w && w->pass && w->data.at("warp_exponent").get<int>() == 4 && w->data.at("samples").get<int>() == 50, "warp check");
    // Independent exact check in Q(lambda), lambda the contracting root of x^2 - 3x + 1.
    NumberField f = field_new(P("x^2-3x+1"));
    FieldElem lam = FieldElem::generator(f).inverse();
    for (int i = 0; i < 50; ++i) {
        FieldElem t = FieldElem::from_rational(f, Rational(2 * i + 1) / (i + 3));
        require((lam * t).pow(4) == lam.pow(4) * t.pow(4), "phi(lambda t) != lambda^4 phi(t)");
    }
    bool rejected = false;
    try {
        make_kourganoff(3, int_identity(4));
    } catch (const Error& e) {
        rejected = e.kind() == ErrorKind::AdmissibleQ;
    }
    require(rejected, "q = 3 accepted");
    return "phi(t) = t^4 exact at 50 rationals; q = 3 rejected";
}

std::string ot() {
    OtResult r = make_ot(P("x^3-x-1"), std::vector<std::string>{"x"});
    require(r.data.s == 1 && r.data.t == 1, "signature");
    require(r.data.matrices.size() == 1 && r.data.matrices[0].rows() == 3 && is_gl_z(r.data.matrices[0]), "GL_3(Z) action");
    require(r.certificate.passed(), "certificate did not pass");
    require(check_passed(r.certificate, "full_lattice"), "full lattice");
    Geometry g = build_geometry(r.certificate, 128);
    require(g.decomposition.count() == 2 && g.decomposition.blocks[0].size == 1 && g.decomposition.blocks[1].size == 2,
            "block form is not one real line plus one plane");
    const auto& row = g.ratios.ratios[0];
    Real prod = row[0] * row[1] * row[1];
    require(abs(prod - Real(1, prod.prec())) < Real::pow2(-64, prod.prec()), "|s1(a)| |s2(a)|^2 != 1");
    bool rejected = false;
    try {
        make_ot(P("x^3+x^2-2x-1"), std::vector<std::string>{"x"});
    } catch (const Error& e) {
        rejected = e.kind() == ErrorKind::NotOtField;
    }
    require(rejected, "t = 0 field accepted");
    return "signature (1,1), GL_3(Z), full lattice, 1+2 block form, norm product 1; t = 0 rejected";
}

std::string norm_zero() {
    NumberField f = field_new(P("x^3+x^2-2x-1"));
    EmbeddingSet e = make_embeddings(f, 128);
    FieldElem a = FieldElem::generator(f);
    FieldElem s = a * a - FieldElem::from_rational(f, Rational(2));
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> ex(-20, 20), sg(0, 1);
    Real worst(192);
    for (int i = 0; i < 200; ++i) {
        FieldElem u = a.pow(ex(rng)) * s.pow(ex(rng));
        if (sg(rng)) u = -u;
        Real sum = abs(log_vector(u, e).sum());
        require(sum < Real::pow2(-64, sum.prec()), "log sum above 2^-64 for " + to_string(u));
        worst = max(worst, Real(sum, 192));
    }
    return "200 units, max |sum| " + worst.to_string(3);
}

std::string round_trip() {
    int n = 0;
    for (const auto& [name, c] : corpus()) {
        std::string text = to_json(c).dump(2);
        LcpCertificate back = parse_certificate(text);
        require(to_json(back).dump(2) == text, name + ": serialization not stable");
        Verification v = verify(back, back.precision_bits);
        require(v.verdicts() == c.verification->verdicts(), name + ": verdicts differ");
        require(v.to_json().dump() == c.verification->to_json().dump(), name + ": verification report differs");
        ++n;
    }
    return std::to_string(n) + " certificates reproduce bit-identically";
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<std::string()>>> criteria = {
        {"1 golden reproduction", golden},
        {"2 rank certificates", rank_certificates},
        {"3 Dirichlet bound", dirichlet},
        {"4 unit ratios", unit_ratios},
        {"5 equivariance", equivariance},
        {"6 Kourganoff family", kourganoff},
        {"7 OT pipeline", ot},
        {"8 norm-zero property", norm_zero},
        {"9 round-trip", round_trip},
    };
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        auto start = std::chrono::steady_clock::now();
        std::string status, detail;
        try {
            detail = fn();
            status = "PASS";
        } catch (const Failure& f) {
            status = "FAIL";
            detail = f.why;
        } catch (const std::exception& e) {
            status = "FAIL";
            detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (status != "PASS") ++failed;
        std::printf("[%s] %s: %s (%.2f s)\n", status.c_str(), name.c_str(), detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
