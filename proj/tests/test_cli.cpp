#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
};

Result run(const std::string& args) {
    const std::string cmd = std::string(BLOCKADE_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, {}};
    std::string out;
    std::array<char, 4096> buf{};
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("blockade_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST(Cli, SteadyReportJson) {
    const Result r = run("steady --omega 3 --delta 0");
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_NEAR(j["blockade_ratio"].get<double>(), 1.0, 1e-14);
    EXPECT_EQ(j["concurrence"].get<double>(), 0.0);
}

TEST(Cli, ConfigFileWithFlagOverride) {
    const fs::path dir = scratch_dir("config");
    const fs::path cfg = dir / "case.conf";
    std::ofstream(cfg) << "# case a with a larger shift on the command line\nomega=5\ndelta=5\n";
    const Result from_file = run("--config " + cfg.string() + " steady");
    ASSERT_EQ(from_file.code, 0);
    EXPECT_NEAR(nlohmann::json::parse(from_file.out)["blockade_ratio"].get<double>(), 51716.0 / 52441.0, 1e-12);
    const Result overridden = run("--config " + cfg.string() + " steady --delta 30");
    ASSERT_EQ(overridden.code, 0);
    EXPECT_NEAR(nlohmann::json::parse(overridden.out)["blockade_ratio"].get<double>(), 405216.0 / 1218816.0, 1e-12);
}

TEST(Cli, EvolveIsByteIdentical) {
    const fs::path dir = scratch_dir("evolve");
    ASSERT_EQ(run("evolve --preset fig1b --samples 21 --out " + (dir / "a.csv").string()).code, 0);
    ASSERT_EQ(run("evolve --preset fig1b --samples 21 --out " + (dir / "b.csv").string()).code, 0);
    const std::string a = slurp(dir / "a.csv");
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, slurp(dir / "b.csv"));
    EXPECT_NE(a.find("t_gamma,P_e,P_e_squared,P_ee,C,pop_ee,pop_s,pop_a,pop_gg"), std::string::npos);
}

TEST(Cli, ConfigErrorsExitTwo) {
    EXPECT_EQ(run("evolve --samples 1").code, 2);
    EXPECT_EQ(run("evolve --format xml").code, 2);
    EXPECT_EQ(run("g2 --omega 0").code, 2);
    EXPECT_EQ(run("sweep --omega-min 3 --omega-max 1").code, 2);
    EXPECT_EQ(run("figures fig9").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("evolve --preset nope").code, 2);
}

TEST(Cli, FiguresWriteDatasets) {
    const fs::path dir = scratch_dir("figures");
    ASSERT_EQ(run("figures fig4 --out " + dir.string()).code, 0);
    const std::string csv = slurp(dir / "fig4.csv");
    EXPECT_NE(csv.find("# omega_max_d10="), std::string::npos);
    EXPECT_NE(csv.find("omega_over_gamma,C_d1,cross_d1"), std::string::npos);
    ASSERT_EQ(run("figures fig5 --format json --out " + dir.string()).code, 0);
    for (const char* f : {"fig5a.json", "fig5b.json", "fig5c.json"}) {
        EXPECT_TRUE(fs::exists(dir / f)) << f;
    }
}

TEST(Cli, G2WithPhasesOnStdout) {
    const Result r = run("g2 --preset monitor --tau-points 3");
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("# phi1=1.5707963267948966"), std::string::npos);
    EXPECT_NE(r.out.find("tau_gamma,g2"), std::string::npos);
}
