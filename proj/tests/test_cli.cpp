#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "../tools/report_io.hpp"
#include "betapenta/suite.hpp"

using namespace betapenta;
using io::json;

namespace {

const std::string kCli = BETAPENTA_CLI_PATH;

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args)
{
    const std::string tmp = ::testing::TempDir() + "cli_stdout.txt";
    const int status = std::system((kCli + " " + args + " > " + tmp + " 2>/dev/null").c_str());
    std::ifstream f(tmp);
    std::stringstream ss;
    ss << f.rdbuf();
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

json load(const std::string& path)
{
    std::ifstream f(path);
    return json::parse(f);
}

std::string tmp(const std::string& name) { return ::testing::TempDir() + name; }

/// Structural check of the documented report layout.
void expect_schema(const json& j)
{
    ASSERT_TRUE(j.is_object());
    EXPECT_EQ(j.at("schema_version"), io::kSchemaVersion);
    EXPECT_TRUE(j.at("suite").is_string());
    EXPECT_TRUE(j.at("params").is_object());
    for (const auto& [k, v] : j.at("params").items()) EXPECT_TRUE(v.is_string()) << k;
    EXPECT_TRUE(j.at("tol").is_number());
    EXPECT_TRUE(j.at("pass").is_boolean());
    EXPECT_TRUE(j.at("error_count").is_number_unsigned());
    EXPECT_TRUE(j.at("wall_seconds").is_number());
    EXPECT_TRUE(j.at("max_rel_err").is_number() || j.at("max_rel_err").is_null());
    const auto is_cplx = [](const json& c) {
        return c.is_object() && c.size() == 2 && c.contains("re") && c.contains("im");
    };
    for (const auto& p : j.at("points")) {
        for (const auto& [k, v] : p.at("inputs").items()) EXPECT_TRUE(is_cplx(v)) << k;
        EXPECT_TRUE(is_cplx(p.at("lhs")));
        EXPECT_TRUE(is_cplx(p.at("rhs")));
        for (const char* f : {"abs_err", "rel_err", "quad_err"})
            EXPECT_TRUE(p.at(f).is_number() || p.at(f).is_null()) << f;
        EXPECT_TRUE(p.at("note").is_string());
        EXPECT_TRUE(p.at("error").is_null() || (p.at("error").at("kind").is_string() &&
                                                p.at("error").at("message").is_string()));
    }
}

} // namespace

TEST(RunSuite, ConstantPentagonPassesExactly)
{
    SuiteConfig cfg;
    cfg.suite = "pentagon";
    cfg.solution = "const";
    cfg.group = "zn:4";
    cfg.samples = 5;
    const auto rep = run_suite(cfg);
    EXPECT_TRUE(rep.pass);
    EXPECT_LE(rep.max_rel_err, 1e-12);
    EXPECT_EQ(rep.points.size(), 5u);
}

TEST(RunSuite, QdilogSelftest)
{
    SuiteConfig cfg;
    cfg.suite = "qdilog-selftest";
    cfg.hbar = 0.5;
    const auto rep = run_suite(cfg);
    EXPECT_TRUE(rep.pass) << rep.max_rel_err;
    EXPECT_EQ(rep.tol, 1e-8);
}

TEST(RunSuite, ConfigErrors)
{
    const auto kind = [](SuiteConfig c) {
        try {
            run_suite(c);
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::NonConvergent;
    };
    SuiteConfig c;
    c.suite = "pentagon";
    c.solution = "const";
    c.group = "zn:0";
    EXPECT_EQ(kind(c), ErrorKind::ConfigError);
    c.group = "r";
    EXPECT_EQ(kind(c), ErrorKind::ConfigError);
    c.solution = "nonsense";
    EXPECT_EQ(kind(c), ErrorKind::ConfigError);
    c.suite = "nonsense";
    EXPECT_EQ(kind(c), ErrorKind::ConfigError);
    SuiteConfig d;
    d.suite = "pentagon";
    d.solution = "const";
    d.group = "zn:3";
    d.samples = 0;
    EXPECT_EQ(kind(d), ErrorKind::ConfigError);
    d.samples = 1;
    d.tol = -1.0;
    EXPECT_EQ(kind(d), ErrorKind::ConfigError);
}

TEST(Selftest, ZeroToleranceFails)
{
    AcceptanceOptions opt;
    opt.tol_override = 0.0;
    const auto r = run_criterion(1, opt);
    EXPECT_FALSE(r.pass);
    EXPECT_NE(format_criterion(r).find("[FAIL] C1"), std::string::npos);
}

TEST(Selftest, ReportSemantics)
{
    CriterionResult ok{1, "a", true, true, {{"x", 1e-9, 1e-8, false, true}}, "", 0.0};
    CriterionResult info{9, "b", false, false, {{"trend", 1.0, 0.0, true, false}}, "", 0.0};
    EXPECT_TRUE(selftest_report({ok, info}).pass);
    CriterionResult bad = ok;
    bad.pass = false;
    bad.checks[0] = {"x", 1e-7, 1e-8, false, false};
    const auto rep = selftest_report({ok, bad});
    EXPECT_FALSE(rep.pass);
    EXPECT_NEAR(rep.max_rel_err, 10.0, 1e-9);
}

TEST(Cli, QdilogEval)
{
    const auto r = run("qdilog eval --hbar 0.5 --x 0.3+0.1i --method product");
    ASSERT_EQ(r.code, 0);
    const auto j = json::parse(r.out);
    const auto ctx = make_context(0.5);
    const cplx v(j["value"]["re"].get<double>(), j["value"]["im"].get<double>());
    EXPECT_LE(rel_err(v, phi_eval(ctx, cplx(0.3, 0.1))), 1e-14);
    EXPECT_LE(j["cross_residual"].get<double>(), 1e-8);
    const auto neg = json::parse(run("qdilog eval --x=-0.2-1e-2i").out);
    EXPECT_DOUBLE_EQ(neg["x"]["re"].get<double>(), -0.2);
    EXPECT_DOUBLE_EQ(neg["x"]["im"].get<double>(), -0.01);
    EXPECT_EQ(run("qdilog eval --x 0.3+").code, 2);
    EXPECT_EQ(run("qdilog eval --hbar -1").code, 2);
}

TEST(Cli, VerifyWritesSchemaConformingJson)
{
    const auto out = tmp("pent.json"), csv = tmp("pent.csv");
    ASSERT_EQ(run("verify pentagon --solution const --group zn:4 --samples 4 --seed 3 --out " + out + " --csv " + csv)
                  .code,
              0);
    const auto j = load(out);
    expect_schema(j);
    EXPECT_TRUE(j["pass"].get<bool>());
    EXPECT_EQ(j["points"].size(), 4u);
    EXPECT_EQ(j["params"]["group"], "zn:4");
    std::ifstream f(csv);
    std::string line;
    int rows = 0;
    while (std::getline(f, line)) ++rows;
    EXPECT_EQ(rows, 5);
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run("verify pentagon --solution const --group zn:0").code, 2);
    EXPECT_EQ(run("verify pentagon --no-such-flag").code, 2);
    EXPECT_EQ(run("verify simplicial --group zn:6 --solution const --trials 3 --out " + tmp("s.json")).code, 0);
    // A suite-level rejection is a failed report, not a configuration error.
    const auto f = tmp("f.json");
    EXPECT_EQ(run("verify faddeev --tuple constant --out " + f).code, 1);
    const auto j = load(f);
    expect_schema(j);
    EXPECT_EQ(j["points"][0]["error"]["kind"], "DistributionalInput");
    EXPECT_EQ(run("selftest --only 6 --tol 0").code, 1);
    EXPECT_EQ(run("selftest --only 6").code, 0);
    EXPECT_EQ(run("selftest --only 11").code, 2);
}

TEST(Cli, DeterministicForFixedSeed)
{
    const auto a = tmp("d1.json"), b = tmp("d2.json");
    const std::string args = "verify simplicial --group r --solution phi-plus --trials 2 --seed 4 --out ";
    ASSERT_EQ(run(args + a).code, 0);
    ASSERT_EQ(run(args + b).code, 0);
    auto ja = load(a), jb = load(b);
    ja.erase("wall_seconds");
    jb.erase("wall_seconds");
    EXPECT_EQ(ja.dump(), jb.dump());
}

TEST(Cli, ConfigFileWithFlagOverride)
{
    const auto cfg = tmp("run.cfg"), out = tmp("cfg.json");
    {
        std::ofstream f(cfg);
        f << "# sample config\nsolution = const\ngroup = zn:7\nsamples = 3\nseed = 5\nout = " << out << "\n";
    }
    ASSERT_EQ(run("verify pentagon --config " + cfg + " --samples 2").code, 0);
    const auto j = load(out);
    EXPECT_EQ(j["params"]["group"], "zn:7");
    EXPECT_EQ(j["params"]["seed"], "5");
    EXPECT_EQ(j["points"].size(), 2u);
    {
        std::ofstream f(cfg);
        f << "colour = blue\n";
    }
    EXPECT_EQ(run("verify pentagon --config " + cfg).code, 2);
}

TEST(Cli, SelftestJson)
{
    const auto out = tmp("self.json");
    ASSERT_EQ(run("selftest --only 6 --only 10 --out " + out).code, 0);
    const auto j = load(out);
    expect_schema(j);
    EXPECT_EQ(j["suite"], "selftest");
    EXPECT_TRUE(j["pass"].get<bool>());
}
