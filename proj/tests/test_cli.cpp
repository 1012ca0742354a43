#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "discord_lab/cli.hpp"
#include "test_support.hpp"

using namespace discord;

namespace {

struct CliResult {
    int code = -1;
    std::string out, err;
};

CliResult run(std::vector<std::string> args) {
    args.insert(args.begin(), "discord_lab");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    CliResult r;
    r.code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("discord_lab_cli_" + name)).string();
}

std::string write_temp_state(const std::string& name, const DensityMatrix4& rho) {
    const std::string p = temp_path(name);
    write_state_file(p, rho);
    return p;
}

double value_of(const std::string& report, const std::string& key) {
    std::istringstream in(report);
    std::string line;
    while (std::getline(in, line))
        if (line.rfind(key + "=", 0) == 0) return std::stod(line.substr(key.size() + 1));
    ADD_FAILURE() << "missing key " << key;
    return 0.0;
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> v;
    std::istringstream in(text);
    std::string l;
    while (std::getline(in, l)) v.push_back(l);
    return v;
}

} // namespace

TEST(Cli, MeasuresOnBellState) {
    const CliResult r = run({"measures", write_temp_state("bell.json", bell_state(Bell::PhiPlus))});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(value_of(r.out, "dg_closed"), 1.0, 1e-12);
    EXPECT_NEAR(value_of(r.out, "dg_bruteforce"), 1.0, 1e-10);
    EXPECT_NEAR(value_of(r.out, "d1"), 1.0, 1e-6);
    EXPECT_NEAR(value_of(r.out, "cm"), 1.0, 1e-12);
    EXPECT_NEAR(value_of(r.out, "corr_distance"), 1.5, 1e-12);
    EXPECT_NEAR(value_of(r.out, "negativity"), 1.0, 1e-12);
}

TEST(Cli, MeasuresOnRhoZeroAndMixed) {
    const CliResult r0 = run({"measures", write_temp_state("rho0.json", rho_zero())});
    ASSERT_EQ(r0.code, 0);
    EXPECT_NEAR(value_of(r0.out, "dg_closed"), 0.0, 1e-12);
    EXPECT_NEAR(value_of(r0.out, "cm"), 1.0, 1e-12);
    EXPECT_EQ(value_of(r0.out, "negativity"), 0.0);
    const CliResult rm = run({"measures", write_temp_state("mixed.json", maximally_mixed())});
    ASSERT_EQ(rm.code, 0);
    for (const char* k : {"dg_closed", "dg_bruteforce", "d1", "cm", "corr_distance", "negativity"})
        EXPECT_NEAR(value_of(rm.out, k), 0.0, 1e-12) << k;
}

TEST(Cli, EvolveToLn2) {
    const std::string in = write_temp_state("evolve_in.json", rho_zero());
    const std::string out = temp_path("evolve_out.json");
    const CliResult r = run({"evolve", in, "--channel", "two-sided", "--gamma0t", "0.69314718055994531", "--out", out});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    EXPECT_NEAR(geometric_discord_closed(read_state_file(out)).value, 0.125, 1e-12);
}

TEST(Cli, EvolveAtZeroIsIdentity) {
    const DensityMatrix4 rho = random_density_matrix(42);
    const CliResult r = run({"evolve", write_temp_state("zero.json", rho), "--gamma0t", "0"});
    ASSERT_EQ(r.code, 0);
    EXPECT_LE(max_abs_diff(state_from_string(r.out).matrix(), rho.matrix()), 1e-15);
}

TEST(Cli, EvolveWithOracle) {
    const CliResult r = run({"evolve", write_temp_state("oracle.json", rho_zero()), "--channel", "one-sided-a", "--gamma0t",
                       "1.5", "--oracle", "--dt", "1e-4"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.err.find("oracle max deviation"), std::string::npos);
    EXPECT_NEAR(max_abs_diff(state_from_string(r.out).matrix(), propagate_one_sided_a(rho_zero(), 1.5).matrix()), 0.0,
                1e-9);
}

TEST(Cli, EvolveOracleRejectsLargeStep) {
    const CliResult r = run({"evolve", write_temp_state("oracle_dt.json", rho_zero()), "--gamma0t", "1", "--oracle", "--dt",
                       "0.01"});
    EXPECT_NE(r.code, 0);
}

TEST(Cli, OneSidedTrajectoryPeak) {
    const CliResult r = run({"evolve", write_temp_state("traj.json", rho_zero()), "--channel", "one-sided-a", "--gamma0t", "2",
                       "--trajectory", "--steps", "2001"});
    ASSERT_EQ(r.code, 0);
    const auto ls = lines(r.out);
    ASSERT_EQ(ls.front(), "label,gamma0t,value");
    EXPECT_EQ(ls.size(), 1u + 4u * 2001u);
    double peak = 0.0;
    for (std::size_t i = 1; i < ls.size(); ++i)
        if (ls[i].rfind("dg,", 0) == 0) peak = std::max(peak, std::stod(ls[i].substr(ls[i].rfind(',') + 1)));
    EXPECT_NEAR(peak, 0.19098, 3e-4);
}

TEST(Cli, TrajectoryTimeUnits) {
    const CliResult r = run({"evolve", write_temp_state("units.json", rho_zero()), "--gamma0t", "2", "--trajectory", "--steps",
                       "3", "--gamma0", "2"});
    ASSERT_EQ(r.code, 0);
    const auto ls = lines(r.out);
    EXPECT_EQ(ls[0], "label,t,value");
    EXPECT_EQ(ls[3].substr(0, 5), "dg,1,");
}

TEST(Cli, FigureHeaders) {
    const CliResult f1 = run({"figure", "1", "--steps", "11"});
    ASSERT_EQ(f1.code, 0);
    EXPECT_EQ(lines(f1.out).front(), "label,gamma0t,value");
    EXPECT_EQ(lines(f1.out).size(), 23u);
    const CliResult f3 = run({"figure", "3", "--alphas", "5"});
    ASSERT_EQ(f3.code, 0);
    EXPECT_EQ(lines(f3.out).front(), "label,alpha,value");
    const std::string out = temp_path("fig2.csv");
    EXPECT_EQ(run({"figure", "2", "--out", out, "--steps", "5"}).code, 0);
    EXPECT_TRUE(std::filesystem::exists(out));
    EXPECT_NE(run({"figure", "4"}).code, 0);
}

TEST(Cli, SweepAndDmaxScan) {
    const CliResult s = run({"sweep", "--family", "cq", "--n", "4", "--seed", "3"});
    ASSERT_EQ(s.code, 0) << s.err;
    const auto ls = lines(s.out);
    EXPECT_EQ(ls.front(), "seed,family,cm0,peak_dg,peak_t");
    EXPECT_EQ(ls.size(), 5u);
    EXPECT_EQ(ls[1].substr(0, 5), "3,cq,");
    EXPECT_NE(s.err.find("creating="), std::string::npos);
    EXPECT_NE(run({"sweep", "--family", "cc", "--n", "2"}).code, 0); // --seed is required

    const CliResult d = run({"dmax-scan", "--alphas", "3"});
    ASSERT_EQ(d.code, 0);
    const auto dl = lines(d.out);
    EXPECT_EQ(dl.front(), "alpha,dmax,t_peak");
    ASSERT_EQ(dl.size(), 4u);
    EXPECT_EQ(dl[2].substr(0, 13), "3.14159265359");
}

TEST(Cli, VerifyTypo) {
    const CliResult r = run({"verify-typo"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("[agrees]"), std::string::npos);
    EXPECT_NE(r.out.find("[diverges]"), std::string::npos);
}

TEST(Cli, ValidateAndExitCodes) {
    const CliResult ok = run({"validate", write_temp_state("valid.json", rho_zero())});
    EXPECT_EQ(ok.code, cli::kExitOk);
    EXPECT_EQ(ok.out, "valid\n");

    EXPECT_EQ(run({"validate", "/nonexistent/file.json"}).code, cli::kExitIo);

    const std::string bad = temp_path("bad.json");
    write_text_file(bad, "{ broken");
    EXPECT_EQ(run({"validate", bad}).code, cli::kExitInvalidState);

    const std::string neg = temp_path("neg.json");
    write_text_file(neg, R"({"basis":"ee,eg,ge,gg","matrix":[[[1.1,0],[0,0],[0,0],[0,0]],[[0,0],[-0.1,0],[0,0],[0,0]],
        [[0,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]]]})");
    const CliResult r = run({"measures", neg});
    EXPECT_EQ(r.code, cli::kExitInvalidState);
    EXPECT_NE(r.err.find("positive"), std::string::npos);

    EXPECT_EQ(run({"evolve", write_temp_state("w.json", rho_zero()), "--gamma0t", "1", "--out", "/nonexistent/x.json"})
                  .code,
              cli::kExitIo);
    EXPECT_NE(run({}).code, 0);
}

TEST(Cli, VerifyTypoOptions) {
    EXPECT_EQ(run({"verify-typo", "--gamma0t", "1"}).code, cli::kExitOk);
    // the integrator refuses coarse steps
    EXPECT_EQ(run({"verify-typo", "--dt", "0.1"}).code, cli::kExitIo);
}

TEST(Cli, ToleranceFromEnvironment) {
    const std::string path = temp_path("tol.json");
    write_text_file(path, R"({"basis":"ee,eg,ge,gg","matrix":[[[1.00000001,0],[0,0],[0,0],[0,0]],
        [[0,0],[-0.00000001,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]]]})");
    unsetenv("DISCORD_LAB_TOL");
    EXPECT_EQ(run({"validate", path}).code, cli::kExitInvalidState);
    setenv("DISCORD_LAB_TOL", "1e-7", 1);
    EXPECT_EQ(cli::psd_tolerance(), 1e-7);
    EXPECT_EQ(run({"validate", path}).code, cli::kExitOk);
    setenv("DISCORD_LAB_TOL", "garbage", 1);
    EXPECT_EQ(cli::psd_tolerance(), kTolPsd);
    unsetenv("DISCORD_LAB_TOL");
}
