#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

struct CliRun {
    int code = -1;
    std::string out;
};

CliRun run(const std::string& args, const std::string& env = "") {
    std::string cmd = env + (env.empty() ? "" : " ") + std::string("\"") + LCPFORGE_CLI + "\" " + args + " 2>/dev/null";
    CliRun r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

class TempDir {
public:
    TempDir() {
        path_ = fs::temp_directory_path() / ("lcpforge_cli_" + std::to_string(::getpid()) + "_" +
                                             ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    fs::path path_;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(Cli, ExfieldReportsField) {
    CliRun r = run("exfield --n 2");
    ASSERT_EQ(r.code, 0);
    Json j = Json::parse(r.out);
    EXPECT_EQ(j["m"], 7);
    EXPECT_EQ(j["minpoly"], "x^3+x^2-2x-1");
    EXPECT_EQ(j["signature"], Json::array({3, 0}));
}

TEST(Cli, DmatrixReportsMatrices) {
    CliRun r = run("dmatrix --n 2");
    ASSERT_EQ(r.code, 0);
    Json j = Json::parse(r.out);
    EXPECT_EQ(j["matrices"], Json::array({"0,0,1;1,0,2;0,1,-1", "-2,1,-1;0,0,-1;1,-1,1"}));
    EXPECT_EQ(j["units_rank"], 2);
}

TEST(Cli, WorkedExamplePasses) {
    CliRun r = run("worked-example");
    ASSERT_EQ(r.code, 0);
    Json j = Json::parse(r.out);
    EXPECT_EQ(j["verification"]["status"], "PASS");
    EXPECT_EQ(j["claimed_rank"], 2);
}

TEST(Cli, OutputIsDeterministic) {
    CliRun a = run("ranklcp --n 2 --seed 3"), b = run("ranklcp --n 2 --seed 3"), c = run("ranklcp --n 2 --seed 4");
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out, c.out);
}

TEST(Cli, KourganoffExitCodes) {
    EXPECT_EQ(run("kourganoff --q 1 --matrix \"2,1;1,1\"").code, 0);
    EXPECT_EQ(run("kourganoff --q 3 --matrix \"2,1;1,1\"").code, 2);
    EXPECT_EQ(run("kourganoff --q 1 --matrix \"0,1;1,0\"").code, 1);
    EXPECT_EQ(run("kourganoff --q 1 --matrix \"2,1;1\"").code, 2);
}

TEST(Cli, OtExitCodes) {
    EXPECT_EQ(run("ot --minpoly \"x^3-x-1\" --units x").code, 0);
    EXPECT_EQ(run("ot --minpoly \"x^3+x^2-2x-1\" --units x").code, 1);
    EXPECT_EQ(run("ot --minpoly \"x^3-x-1\" --units 1").code, 1);
    EXPECT_EQ(run("ot --minpoly \"2x^2+1\" --units x").code, 2);
    EXPECT_EQ(run("ot --minpoly \"x^4-x-1\" --units \"x;x-1\" --lck").code, 0);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("ranklcp").code, 2);
    EXPECT_EQ(run("ranklcp --n 0").code, 2);
    EXPECT_EQ(run("ranklcp --n 2 --precision 32").code, 2);
    EXPECT_EQ(run("ranklcp --n 2 --precision 9000").code, 2);
    EXPECT_EQ(run("ranklcp --n 2 --format yaml").code, 2);
    EXPECT_EQ(run("ranklcp --n 2", "LCPFORGE_PRECISION=abc").code, 2);
    EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, EnvironmentSetsDefaultPrecision) {
    CliRun r = run("ranklcp --n 1", "LCPFORGE_PRECISION=192");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(Json::parse(r.out)["precision_bits"], 192);
    CliRun flag = run("ranklcp --n 1 --precision 256", "LCPFORGE_PRECISION=192");
    EXPECT_EQ(Json::parse(flag.out)["precision_bits"], 256);
}

TEST(Cli, OutFileThenVerify) {
    TempDir dir;
    std::string cert = dir.file("worked.json");
    CliRun w = run("worked-example --out \"" + cert + "\"");
    ASSERT_EQ(w.code, 0);
    EXPECT_TRUE(w.out.empty());
    EXPECT_FALSE(fs::exists(cert + ".tmp"));
    ASSERT_TRUE(fs::exists(cert));

    CliRun v = run("verify \"" + cert + "\"");
    ASSERT_EQ(v.code, 0);
    Json j = Json::parse(v.out);
    EXPECT_EQ(j["status"], "PASS");
    EXPECT_EQ(j["matches_stored_verdicts"], true);
    EXPECT_EQ(j["precision_bits"], 128);

    CliRun hi = run("verify --precision 256 \"" + cert + "\"");
    ASSERT_EQ(hi.code, 0);
    EXPECT_EQ(Json::parse(hi.out)["precision_bits"], 256);
    EXPECT_EQ(Json::parse(hi.out)["confirmed_at_bits"], 512);
}

TEST(Cli, VerifyRejectsTamperingAndGarbage) {
    TempDir dir;
    std::string cert = dir.file("rank.json");
    ASSERT_EQ(run("ranklcp --n 2 --out \"" + cert + "\"").code, 0);
    Json j = Json::parse(slurp(cert));
    j["claimed_rank"] = 3;
    std::string bad = dir.file("bad.json");
    std::ofstream(bad) << j.dump(2);
    CliRun v = run("verify \"" + bad + "\"");
    EXPECT_EQ(v.code, 1);
    EXPECT_EQ(Json::parse(v.out)["status"], "FAILED");

    std::string junk = dir.file("junk.json");
    std::ofstream(junk) << "{ not json";
    EXPECT_EQ(run("verify \"" + junk + "\"").code, 2);
    EXPECT_EQ(run("verify \"" + dir.file("missing.json") + "\"").code, 2);
}

TEST(Cli, TextFormat) {
    CliRun r = run("worked-example --format text");
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("status: PASS"), std::string::npos);
    EXPECT_NE(r.out.find("[pass] golden"), std::string::npos);
    CliRun e = run("exfield --n 1 --format text");
    ASSERT_EQ(e.code, 0);
    EXPECT_NE(e.out.find("m: 5"), std::string::npos);
}
