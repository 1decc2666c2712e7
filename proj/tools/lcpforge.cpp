// Command-line front end: runs a pipeline or re-verifies a certificate.
// Exit codes: 0 PASS, 1 FAILED, 2 usage error.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "lcpforge/constructions/pipelines.hpp"

namespace {

using namespace lcpforge;

constexpr int kPass = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct Config {
    long n = 0;
    long q = 0;
    std::string matrix;
    std::string minpoly;
    std::string units;
    bool lck = false;
    long precision = 128;
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "json";
    std::string input;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

long default_precision() {
    const char* env = std::getenv("LCPFORGE_PRECISION");
    if (!env || !*env) return 128;
    try {
        std::size_t used = 0;
        long v = std::stol(env, &used);
        if (used != std::string(env).size()) throw std::invalid_argument(env);
        return v;
    } catch (const std::exception&) {
        throw UsageError(std::string("LCPFORGE_PRECISION is not an integer: ") + env);
    }
}

std::vector<std::string> split_units(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';'))
        if (!item.empty()) out.push_back(item);
    return out;
}

// Writes through a temporary file so readers never see a partial document.
void emit(const Config& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::filesystem::path target(cfg.out);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw UsageError("cannot write " + tmp.string());
        f << text;
    }
    std::filesystem::rename(tmp, target);
}

std::string field_text(const Json& j) {
    std::ostringstream os;
    for (const auto& [k, v] : j.items()) os << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    return os.str();
}

std::string certificate_text(const LcpCertificate& c, const Verification& v) {
    std::ostringstream os;
    os << "pipeline: " << c.pipeline << " " << c.parameters.dump() << "\n";
    os << "precision_bits: " << v.precision_bits << " (confirmed at " << v.confirmed_at_bits << ")\n";
    os << "seed: " << c.seed << "\n";
    if (c.field) os << "field: " << to_string(c.field->minpoly) << ", signature (" << c.field->s << "," << c.field->t << ")\n";
    os << "generators: " << c.generators.size() << ", flat block " << c.flat_block << ", claimed rank " << c.claimed_rank << "\n";
    for (const auto& ch : v.checks) {
        os << "  [" << (ch.pass ? "pass" : "FAIL") << "] " << ch.name;
        if (!ch.detail.empty()) os << ": " << ch.detail;
        os << "\n";
    }
    for (const auto& n : c.notes) os << "note: " << n << "\n";
    os << "status: " << (v.pass ? "PASS" : "FAILED");
    if (v.first_failure) os << " (first failure: " << *v.first_failure << ")";
    os << "\n";
    return os.str();
}

int report_certificate(const Config& cfg, const LcpCertificate& c) {
    if (cfg.format == "json")
        emit(cfg, to_json(c).dump(2) + "\n");
    else
        emit(cfg, certificate_text(c, *c.verification));
    return c.passed() ? kPass : kFailed;
}

int report_json(const Config& cfg, const Json& j) {
    emit(cfg, cfg.format == "json" ? j.dump(2) + "\n" : field_text(j));
    return kPass;
}

Json matrices_json(const std::vector<IntMatrix>& ms) {
    Json a = Json::array();
    for (const auto& m : ms) a.push_back(to_string(m));
    return a;
}

int run_exfield(const Config& cfg) {
    CyclicField cf = make_exfield(cfg.n);
    const NumberField& f = cf.field;
    return report_json(cfg, Json{{"n", cfg.n},
                                 {"m", cf.m},
                                 {"minpoly", to_string(f.minpoly())},
                                 {"degree", f.degree()},
                                 {"signature", Json::array({f.s(), f.t()})},
                                 {"irreducibility", f.witness()},
                                 {"sigma_alpha", to_string(cf.sigma.image_of_alpha())},
                                 {"seed", cfg.seed}});
}

int run_dmatrix(const Config& cfg) {
    DMatrixData d = make_dmatrix(cfg.n, cfg.precision);
    Json units = Json::array(), polys = Json::array();
    for (const auto& u : d.units) units.push_back(to_string(u));
    for (const auto& p : d.polys) polys.push_back(to_string(p));
    return report_json(cfg, Json{{"n", cfg.n},
                                 {"m", d.base.m},
                                 {"p", d.p()},
                                 {"minpoly", to_string(d.base.field.minpoly())},
                                 {"units", units},
                                 {"polynomials", polys},
                                 {"matrices", matrices_json(d.matrices)},
                                 {"units_rank", d.units_rank},
                                 {"precision_bits", cfg.precision},
                                 {"seed", cfg.seed}});
}

int run_verify(const Config& cfg) {
    std::ifstream in(cfg.input, std::ios::binary);
    if (!in) throw UsageError("cannot read " + cfg.input);
    std::stringstream buf;
    buf << in.rdbuf();
    LcpCertificate c = parse_certificate(buf.str());
    Verification v = verify(c, cfg.precision);
    bool same = !c.verification || c.verification->verdicts() == v.verdicts();
    if (cfg.format == "json") {
        Json j = v.to_json();
        j["seed"] = c.seed;
        j["matches_stored_verdicts"] = same;
        emit(cfg, j.dump(2) + "\n");
    } else {
        emit(cfg, certificate_text(c, v) + (same ? "verdicts match the stored report\n" : "verdicts DIFFER from the stored report\n"));
    }
    return v.pass && same ? kPass : kFailed;
}

bool is_usage_error(ErrorKind k) {
    return k == ErrorKind::Parse || k == ErrorKind::AdmissibleQ || k == ErrorKind::Schema || k == ErrorKind::NonMonic;
}

}  // namespace

int main(int argc, char** argv) {
    Config cfg;
    CLI::App app{"Build and verify locally conformally product structures on compact quotients"};
    app.require_subcommand(1);

    std::string command;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--precision", cfg.precision, "working precision in bits, 64..4096 (env LCPFORGE_PRECISION)");
        sub->add_option("--seed", cfg.seed, "seed for metric sample points");
        sub->add_option("--out", cfg.out, "write the report to this file");
        sub->add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));
        sub->callback([&, sub] { command = sub->get_name(); });
    };
    auto* exfield = app.add_subcommand("exfield", "cyclic totally real field of degree >= n+1");
    exfield->add_option("--n", cfg.n)->required();
    auto* dmatrix = app.add_subcommand("dmatrix", "commuting GL_p(Z) matrices with rank-n flat eigenvalues");
    dmatrix->add_option("--n", cfg.n)->required();
    auto* ranklcp = app.add_subcommand("ranklcp", "rank-n LCP certificate");
    ranklcp->add_option("--n", cfg.n)->required();
    auto* kourganoff = app.add_subcommand("kourganoff", "Kourganoff family on T^(q+1) x S^1");
    kourganoff->add_option("--q", cfg.q)->required();
    kourganoff->add_option("--matrix", cfg.matrix, "row-major \"a,b;c,d\"")->required();
    auto* ot = app.add_subcommand("ot", "OT manifold X(K, U)");
    ot->add_option("--minpoly", cfg.minpoly, "e.g. \"x^3-x-1\"")->required();
    ot->add_option("--units", cfg.units, "';'-separated polynomials in x")->required();
    ot->add_flag("--lck", cfg.lck, "use the LCK preset (t = 1)");
    auto* worked = app.add_subcommand("worked-example", "explicit rank-2 example in dimension 3+2");
    auto* verify_cmd = app.add_subcommand("verify", "re-verify a certificate");
    verify_cmd->add_option("certificate", cfg.input)->required();
    for (auto* sub : {exfield, dmatrix, ranklcp, kourganoff, ot, worked, verify_cmd}) common(sub);

    bool precision_given = false;
    try {
        cfg.precision = default_precision();
        app.parse(argc, argv);
        precision_given = verify_cmd->count("--precision") > 0;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (command == "verify" && !precision_given && !std::getenv("LCPFORGE_PRECISION")) {
            std::ifstream in(cfg.input, std::ios::binary);
            if (in) {
                std::stringstream buf;
                buf << in.rdbuf();
                cfg.precision = parse_certificate(buf.str()).precision_bits;
            }
        }
        if (cfg.precision < 64 || cfg.precision > 4096) throw UsageError("--precision must lie in [64, 4096]");
        if ((command == "exfield" || command == "dmatrix" || command == "ranklcp") && cfg.n < 1) throw UsageError("--n must be positive");

        if (command == "exfield") return run_exfield(cfg);
        if (command == "dmatrix") return run_dmatrix(cfg);
        if (command == "ranklcp") return report_certificate(cfg, make_rank_n_lcp(cfg.n, cfg.precision, cfg.seed));
        if (command == "worked-example") return report_certificate(cfg, worked_rank2_example(cfg.precision, cfg.seed));
        if (command == "kourganoff") {
            if (cfg.q != 1 && cfg.q != 2)
                throw Error(ErrorKind::AdmissibleQ, "only q = 1 and q = 2 are admissible for the Kourganoff family, got q = " +
                                                        std::to_string(cfg.q));
            return report_certificate(cfg, make_kourganoff(cfg.q, parse_matrix(cfg.matrix), cfg.precision, cfg.seed));
        }
        if (command == "ot") {
            std::vector<std::string> units = split_units(cfg.units);
            if (units.empty()) throw UsageError("--units is empty");
            IntPoly f = parse_int_poly(cfg.minpoly);
            return report_certificate(cfg, make_ot(f, units, cfg.precision, cfg.seed, cfg.lck).certificate);
        }
        if (command == "verify") return run_verify(cfg);
        throw UsageError("unknown command");
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return is_usage_error(e.kind()) ? kUsage : kFailed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailed;
    }
}
