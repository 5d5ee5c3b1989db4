// Command-line front end: evaluate Phi, run verification suites, selftest.
// Exit status: 0 pass, 1 fail, 2 configuration error.

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "betapenta/suite.hpp"
#include "report_io.hpp"

using namespace betapenta;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

/// Parses "a", "a+bi", "a-bi", "bi" or "i" forms.
cplx parse_complex(std::string s)
{
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; }), s.end());
    const auto bad = [&] { fail(ErrorKind::ConfigError, "cannot parse complex number '" + s + "'"); };
    if (s.empty()) bad();
    const char* p = s.c_str();
    char* end = nullptr;
    if (s.back() != 'i' && s.back() != 'j') {
        const double re = std::strtod(p, &end);
        if (end == p || *end != '\0') bad();
        return re;
    }
    const std::string body = s.substr(0, s.size() - 1);
    // Split at the last sign that is not part of an exponent.
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;)
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    const auto number = [&](const std::string& t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        char* e = nullptr;
        const double v = std::strtod(t.c_str(), &e);
        if (e == t.c_str() || *e != '\0') bad();
        return v;
    };
    if (split == std::string::npos) return {0.0, number(body)};
    return {number(body.substr(0, split)), number(body.substr(split))};
}

/// Simple "key = value" file; '#' starts a comment.
std::map<std::string, std::string> read_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) fail(ErrorKind::ConfigError, "cannot open config file '" + path + "'");
    std::map<std::string, std::string> out;
    std::string line;
    int n = 0;
    const auto trim = [](std::string t) {
        const auto a = t.find_first_not_of(" \t\r");
        const auto b = t.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : t.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        ++n;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(ErrorKind::ConfigError, path + ":" + std::to_string(n) + ": expected key = value");
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

template <class T>
T parse_value(const std::string& key, const std::string& v)
{
    std::istringstream is(v);
    T out{};
    if (!(is >> out) || !is.eof()) fail(ErrorKind::ConfigError, "bad value for '" + key + "': " + v);
    return out;
}

void apply_config(const std::map<std::string, std::string>& kv, SuiteConfig& cfg, std::string& out,
                  std::string& csv)
{
    for (const auto& [k, v] : kv) {
        if (k == "hbar") cfg.hbar = parse_value<double>(k, v);
        else if (k == "samples" || k == "trials") cfg.samples = parse_value<std::size_t>(k, v);
        else if (k == "seed") cfg.seed = parse_value<std::uint64_t>(k, v);
        else if (k == "tol") cfg.tol = parse_value<double>(k, v);
        else if (k == "eps") cfg.eps = parse_value<double>(k, v);
        else if (k == "group") cfg.group = v;
        else if (k == "solution") cfg.solution = v;
        else if (k == "tuple") cfg.tuple = v;
        else if (k == "policy") cfg.policy = v;
        else if (k == "out") out = v;
        else if (k == "csv") csv = v;
        else fail(ErrorKind::ConfigError, "unknown config key '" + k + "'");
    }
}

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream f(path);
    if (!f) fail(ErrorKind::ConfigError, "cannot write '" + path + "'");
    f << text;
}

void emit(const VerificationReport& rep, const std::string& out, const std::string& csv)
{
    const std::string text = io::to_json(rep).dump(2) + "\n";
    if (out.empty()) std::cout << text;
    else write_text(out, text);
    if (!csv.empty()) {
        std::ostringstream os;
        io::write_csv(os, rep);
        write_text(csv, os.str());
    }
    std::cerr << rep.suite << ": " << (rep.pass ? "PASS" : "FAIL") << " max_rel_err " << quad::detail::sci(rep.max_rel_err)
              << " tol " << quad::detail::sci(rep.tol) << " errors " << rep.error_count() << " ("
              << rep.points.size() << " points)\n";
}

/// Suite failures other than configuration problems become a one-record report.
VerificationReport run_or_record(const SuiteConfig& cfg)
{
    try {
        return run_suite(cfg);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::ConfigError) throw;
        VerificationReport rep;
        rep.suite = cfg.suite;
        rep.params = cfg.params();
        rep.tol = cfg.tol.value_or(detail::default_tol(cfg));
        rep.points.push_back(error_record({}, e));
        rep.finalize();
        return rep;
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Quantum dilogarithm and beta-pentagon verification lab"};
    app.require_subcommand(1);

    SuiteConfig cfg;
    std::string out, csv, config_path;
    std::optional<double> tol;

    // qdilog eval
    auto* qd = app.add_subcommand("qdilog", "Quantum dilogarithm utilities");
    qd->require_subcommand(1);
    auto* eval = qd->add_subcommand("eval", "Evaluate Phi_hbar(x)");
    double e_hbar = 0.5;
    std::string e_x = "0", e_method = "auto";
    eval->add_option("--hbar", e_hbar, "Planck constant (> 0)")->capture_default_str();
    eval->add_option("--x", e_x, "Argument, e.g. 0.3+0.1i")->capture_default_str();
    eval->add_option("--method", e_method, "integral|product|auto")
        ->check(CLI::IsMember({"integral", "product", "auto"}))
        ->capture_default_str();

    // verify <suite>
    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->require_subcommand(1);
    const auto common = [&](CLI::App* s) {
        s->add_option("--hbar", cfg.hbar, "Planck constant (> 0)");
        s->add_option("--samples", cfg.samples, "Number of seeded samples");
        s->add_option("--seed", cfg.seed, "RNG seed");
        s->add_option("--tol", tol, "Pass threshold on the relative residual");
        s->add_option("--out", out, "JSON report path (default: stdout)");
        s->add_option("--csv", csv, "Optional CSV flattening of the points");
        s->add_option("--config", config_path, "key = value file; flags override its values");
    };
    auto* v_pent = verify->add_subcommand("pentagon", "Five-term relation for a pentagon family");
    common(v_pent);
    v_pent->add_option("--solution", cfg.solution, "phi-plus|phi-minus|quasiperiodic|beta|const");
    v_pent->add_option("--group", cfg.group, "r | zn:<N>");
    v_pent->add_option("--eps", cfg.eps, "Regulator for the Euler-beta solution");
    v_pent->add_option("--policy", cfg.policy, "Lift policy for quasiperiodic: strip|regulator");
    auto* v_fad = verify->add_subcommand("faddeev", "Fourier-side five-term identity for a tuple");
    common(v_fad);
    v_fad->add_option("--tuple", cfg.tuple, "phi|reflected-phi|gaussian|constant");
    auto* v_aut = verify->add_subcommand("automorphic", "Quasi-periodic lift and quotient relation");
    common(v_aut);
    v_aut->add_option("--policy", cfg.policy, "strip|regulator");
    auto* v_simp = verify->add_subcommand("simplicial", "2-3 move on the faces of the 4-simplex");
    common(v_simp);
    v_simp->add_option("--solution", cfg.solution, "const|phi-plus");
    v_simp->add_option("--group", cfg.group, "r | zn:<N>");
    v_simp->add_option("--trials", cfg.samples, "Number of seeded labelings");

    // selftest
    auto* self = app.add_subcommand("selftest", "Run the acceptance battery");
    std::vector<int> only;
    std::optional<double> self_tol;
    std::string self_out;
    self->add_option("--only", only, "Run only these criteria (repeatable)")->check(CLI::Range(1, kCriterionCount));
    self->add_option("--tol", self_tol, "Override every numeric threshold");
    self->add_option("--out", self_out, "JSON report path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitConfig;
    }

    try {
        if (*eval) {
            if (!(e_hbar > 0.0)) fail(ErrorKind::ConfigError, "hbar must be positive");
            const auto ctx = make_context(e_hbar);
            const cplx x = parse_complex(e_x);
            const EvalMethod m = e_method == "integral" ? EvalMethod::Integral
                                 : e_method == "product" ? EvalMethod::Product
                                                         : EvalMethod::Auto;
            io::json j = {{"hbar", e_hbar}, {"x", io::complex(x)}, {"method", e_method}};
            j["value"] = io::complex(phi_eval(ctx, x, m));
            // Cross-representation residual where both apply.
            if (ctx.product_available()) {
                try {
                    j["cross_residual"] = io::real(
                        rel_err(phi_eval(ctx, x, EvalMethod::Integral), phi_eval(ctx, x, EvalMethod::Product)));
                } catch (const Error&) {
                    j["cross_residual"] = nullptr;
                }
            } else {
                j["cross_residual"] = nullptr;
            }
            std::cout << j.dump(2) << "\n";
            return kExitPass;
        }
        if (*self) {
            AcceptanceOptions opt;
            opt.tol_override = self_tol;
            if (only.empty())
                for (int i = 1; i <= kCriterionCount; ++i) only.push_back(i);
            std::vector<CriterionResult> results;
            for (const int id : only) {
                results.push_back(run_criterion(id, opt));
                std::cout << format_criterion(results.back()) << std::endl;
            }
            const auto rep = selftest_report(results);
            if (!self_out.empty()) write_text(self_out, io::to_json(rep).dump(2) + "\n");
            std::cout << "selftest: " << (rep.pass ? "PASS" : "FAIL") << "\n";
            return rep.pass ? kExitPass : kExitFail;
        }
        for (auto* sub : {v_pent, v_fad, v_aut, v_simp}) {
            if (!*sub) continue;
            // File values first, then command-line flags on top.
            if (!config_path.empty()) {
                SuiteConfig from_file;
                std::string f_out, f_csv;
                apply_config(read_config(config_path), from_file, f_out, f_csv);
                const SuiteConfig flags = cfg;
                const auto given = [&](const char* name) { return sub->get_option_no_throw(name) &&
                                                                  sub->get_option_no_throw(name)->count() > 0; };
                cfg = from_file;
                if (given("--hbar")) cfg.hbar = flags.hbar;
                if (given("--samples") || given("--trials")) cfg.samples = flags.samples;
                if (given("--seed")) cfg.seed = flags.seed;
                if (given("--eps")) cfg.eps = flags.eps;
                if (given("--group")) cfg.group = flags.group;
                if (given("--solution")) cfg.solution = flags.solution;
                if (given("--tuple")) cfg.tuple = flags.tuple;
                if (given("--policy")) cfg.policy = flags.policy;
                if (!given("--out")) out = f_out;
                if (!given("--csv")) csv = f_csv;
            }
            if (tol) cfg.tol = tol;
            cfg.suite = sub->get_name();
            if (cfg.suite == "pentagon" && cfg.solution.empty()) cfg.solution = "phi-plus";
            if (cfg.suite == "simplicial" && cfg.solution.empty()) cfg.solution = "const";
            const auto rep = run_or_record(cfg);
            emit(rep, out, csv);
            return rep.pass ? kExitPass : kExitFail;
        }
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return e.kind() == ErrorKind::ConfigError ? kExitConfig : kExitFail;
    }
    return kExitConfig;
}
