#pragma once
// Suite orchestration shared by the command-line tool and the acceptance
// binary: named verification suites with seeded inputs, and the battery of
// acceptance checks run by `selftest`.

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "betapenta/automorphic.hpp"
#include "betapenta/faddeev.hpp"
#include "betapenta/pentagon.hpp"
#include "betapenta/qdilog.hpp"
#include "betapenta/quad.hpp"
#include "betapenta/simplicial.hpp"

namespace betapenta {

struct SuiteConfig {
    std::string suite;          // qdilog-selftest | pentagon | faddeev | automorphic | simplicial
    std::string group = "r";    // pentagon, simplicial
    std::string solution;       // pentagon: phi-plus|phi-minus|quasiperiodic|beta|const; simplicial: const|phi-plus
    std::string tuple = "phi";  // faddeev: phi|reflected-phi|gaussian|constant
    std::string policy = "strip";
    double hbar = 0.5;
    std::size_t samples = 10;
    std::uint64_t seed = 1;
    std::optional<double> tol;  // unset: the suite's default
    double eps = 0.025;         // beta regulator

    void validate() const
    {
        if (tol && !(*tol >= 0.0)) fail(ErrorKind::ConfigError, "tolerance must be non-negative");
        if (samples < 1) fail(ErrorKind::ConfigError, "sample count must be at least 1");
        if (!(hbar > 0.0)) fail(ErrorKind::ConfigError, "hbar must be positive");
    }

    std::vector<std::pair<std::string, std::string>> params() const
    {
        const auto num = [](double v) {
            std::ostringstream os;
            os.precision(17);
            os << v;
            return os.str();
        };
        std::vector<std::pair<std::string, std::string>> p = {
            {"suite", suite}, {"hbar", num(hbar)}, {"samples", std::to_string(samples)}, {"seed", std::to_string(seed)}};
        if (suite == "pentagon" || suite == "simplicial") {
            p.emplace_back("group", group);
            p.emplace_back("solution", solution);
        }
        if (suite == "pentagon" && solution == "beta") p.emplace_back("eps", num(eps));
        if (suite == "faddeev") p.emplace_back("tuple", tuple);
        if (suite == "automorphic" || (suite == "pentagon" && solution == "quasiperiodic"))
            p.emplace_back("policy", policy);
        return p;
    }
};

namespace detail {

/// Appends `from`'s points to `into`, tagging each with `note` if it has none.
inline void append_points(VerificationReport& into, const VerificationReport& from, const std::string& note)
{
    for (auto p : from.points) {
        if (p.note.empty()) p.note = note;
        into.points.push_back(std::move(p));
    }
}

inline std::vector<cplx> qdilog_grid(const HbarContext& ctx)
{
    std::vector<cplx> pts;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) pts.emplace_back(-1.0 + 0.5 * i, ctx.strip_halfwidth * (-0.6 + 0.3 * j));
    return pts;
}

/// Phi(0)^2 as derived from the inversion relation and the x -> +-inf limits.
inline cplx phi_zero_squared(double hbar) { return std::exp(I * pi * (1.0 / hbar - 2.0) / 12.0); }

/// Representation agreement, both difference equations and the inversion
/// relation at one hbar.
inline VerificationReport qdilog_report(double hbar, std::size_t n, std::uint64_t seed)
{
    const auto ctx = make_context(hbar);
    VerificationReport rep;
    rep.suite = "qdilog-selftest";
    const auto run = [&](std::vector<std::pair<std::string, cplx>> in, const std::string& note, auto&& fn) {
        try {
            auto [l, r] = fn();
            auto rec = make_record(std::move(in), l, r);
            rec.note = note;
            rep.points.push_back(std::move(rec));
        } catch (const Error& e) {
            auto rec = error_record(std::move(in), e);
            rec.note = note;
            rep.points.push_back(std::move(rec));
        }
    };
    if (ctx.product_available())
        for (const cplx x : qdilog_grid(ctx))
            run({{"x", x}}, "integral-vs-product", [&] {
                return std::make_pair(phi_eval(ctx, x, EvalMethod::Integral), phi_eval(ctx, x, EvalMethod::Product));
            });
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> re(-1.5, 1.5), im(-0.4, 0.4);
    const cplx c = phi_zero_squared(hbar);
    for (std::size_t k = 0; k < n; ++k) {
        const cplx x(re(rng), im(rng) * ctx.strip_halfwidth);
        for (const cplx s : {ctx.b, 1.0 / ctx.b})
            run({{"x", x}, {"shift", s}}, "difference-equation", [&] {
                return std::make_pair(phi_eval(ctx, x - I * s / 2.0),
                                      (1.0 + std::exp(2.0 * pi * s * x)) * phi_eval(ctx, x + I * s / 2.0));
            });
        run({{"x", x}}, "inversion", [&] {
            return std::make_pair(phi_eval(ctx, x) * phi_eval(ctx, -x) * std::exp(-I * pi * x * x), c);
        });
    }
    run({}, "phi-zero-squared", [&] { return std::make_pair(ctx.phi_zero * ctx.phi_zero, c); });
    return rep;
}

inline std::vector<std::pair<cplx, cplx>> complex_strip_points(double h, std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> re(-1.0, 1.0), frac(0.1, 0.9);
    std::vector<std::pair<cplx, cplx>> out;
    for (std::size_t k = 0; k < n; ++k) {
        const double ix = frac(rng) * h;
        const double iy = -frac(rng) * ix;
        out.emplace_back(cplx(re(rng), ix), cplx(re(rng), iy));
    }
    return out;
}

inline std::vector<std::pair<cplx, cplx>> real_points(std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> re(-0.8, 0.8);
    std::vector<std::pair<cplx, cplx>> out;
    for (std::size_t k = 0; k < n; ++k) {
        const double x = re(rng);
        out.emplace_back(x, re(rng));
    }
    return out;
}

/// Lift of the Phi-times-constant family, quasi-periodicity and the quotient
/// five-term relation.
inline VerificationReport automorphic_report(const HbarContext& ctx, LiftPolicy policy, std::size_t n,
                                             std::uint64_t seed)
{
    LiftOptions opt;
    opt.policy = policy;
    const auto q = automorphic_lift(phi_times_one_family(ctx), make_data(1.0, 1.0, 1.0), opt);
    VerificationReport rep;
    rep.suite = "automorphic";
    const auto pts = policy == LiftPolicy::Strip ? complex_strip_points(ctx.strip_halfwidth, n, seed)
                                                 : real_points(n, seed);
    append_points(rep, verify_quasiperiodicity(q, pts, 0.0), "");
    append_points(rep, verify_quotient_pentagon(q, quotient_samples(ctx, n, seed), 0.0), "quotient-pentagon");
    return rep;
}

/// Reality of phi^- at real samples (lhs = value, rhs = its real part) and the
/// Fourier relation to phi^+ at the first sample.
inline VerificationReport phi_minus_report(const HbarContext& ctx, std::size_t n, std::uint64_t seed)
{
    VerificationReport rep;
    rep.suite = "pentagon";
    PhiMinusOptions reg;
    reg.method = PhiMinusMethod::Regulator;
    const auto pts = real_points(n, seed);
    for (const auto& [x, y] : pts) {
        std::vector<std::pair<std::string, cplx>> in = {{"x", x}, {"y", y}};
        try {
            const auto r = phi_minus(ctx, x, y, reg);
            auto rec = make_record(std::move(in), r.value, r.value.real(), r.err_estimate);
            rec.note = "reality";
            rep.points.push_back(std::move(rec));
        } catch (const Error& e) {
            rep.points.push_back(error_record(std::move(in), e));
        }
    }
    const double h = ctx.strip_halfwidth;
    const cplx x = 0.5 * pts.front().first, y = 0.5 * pts.front().second;
    std::vector<std::pair<std::string, cplx>> in = {{"x", x}, {"y", y}};
    try {
        const auto lhs = phi_minus(ctx, -2.0 * x, -2.0 * y);
        const auto rhs = phi_plus_fourier(ctx, x, y, 1.2 * h, 0.6 * h, 1e-8);
        auto rec = make_record(std::move(in), 2.0 * lhs.value, rhs.value, rhs.err_estimate);
        rec.note = "fourier-relation";
        rep.points.push_back(std::move(rec));
    } catch (const Error& e) {
        rep.points.push_back(error_record(std::move(in), e));
    }
    return rep;
}

inline double default_tol(const SuiteConfig& c)
{
    if (c.suite == "qdilog-selftest") return 1e-8;
    if (c.suite == "faddeev") return 1e-6;
    if (c.suite == "automorphic") return 1e-4;
    if (c.solution == "const") return 1e-12;
    if (c.solution == "phi-minus" || c.solution == "quasiperiodic") return 1e-4;
    return 1e-5;
}

inline Group parse_finite(const std::string& spec)
{
    const Group g = parse_group(spec);
    if (!g.is_finite()) fail(ErrorKind::ConfigError, "solution 'const' needs a finite group zn:<N>");
    return g;
}

inline void require_reals(const std::string& spec, const std::string& what)
{
    if (parse_group(spec).kind != GroupKind::Reals) fail(ErrorKind::ConfigError, what + " is defined over the group r");
}

} // namespace detail

/// Runs one named suite. Configuration problems throw ConfigError; failures of
/// individual points are recorded in the report.
inline VerificationReport run_suite(const SuiteConfig& cfg)
{
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();
    const double tol = cfg.tol.value_or(detail::default_tol(cfg));
    VerificationReport rep;
    const auto ctx = [&] { return make_context(cfg.hbar); };
    if (cfg.suite == "qdilog-selftest") {
        rep = detail::qdilog_report(cfg.hbar, cfg.samples, cfg.seed);
    } else if (cfg.suite == "faddeev") {
        const auto c = ctx();
        FaddeevTuple t;
        if (cfg.tuple == "phi") t = make_phi(c);
        else if (cfg.tuple == "reflected-phi") t = make_reflected(make_phi(c));
        else if (cfg.tuple == "gaussian") {
            const auto g = gaussian_solution(cplx(0.5, 4.0), cplx(0.5, 4.0));
            t = make_gaussian(g.a, g.bcoef);
        } else if (cfg.tuple == "constant") t = make_constant();
        else fail(ErrorKind::ConfigError, "unknown tuple '" + cfg.tuple + "'");
        rep = verify_fourier_five_term(t, five_term_samples(cfg.samples, cfg.seed), {tol});
    } else if (cfg.suite == "automorphic" || (cfg.suite == "pentagon" && cfg.solution == "quasiperiodic")) {
        LiftPolicy p;
        if (cfg.policy == "strip") p = LiftPolicy::Strip;
        else if (cfg.policy == "regulator") p = LiftPolicy::Regulator;
        else fail(ErrorKind::ConfigError, "unknown policy '" + cfg.policy + "'");
        rep = detail::automorphic_report(ctx(), p, cfg.samples, cfg.seed);
    } else if (cfg.suite == "pentagon") {
        const PentagonOptions opt{tol};
        if (cfg.solution == "const") {
            const Group g = detail::parse_finite(cfg.group);
            rep = verify_pentagon(constant_solution(g), group_samples(g, cfg.samples, cfg.seed), opt);
        } else if (cfg.solution == "phi-plus") {
            detail::require_reals(cfg.group, "phi-plus");
            const auto c = ctx();
            rep = verify_pentagon(phi_plus_family(c), phi_plus_samples(c, cfg.samples, cfg.seed), opt);
        } else if (cfg.solution == "beta") {
            detail::require_reals(cfg.group, "the Euler-beta solution");
            if (!(cfg.eps > 0.0)) fail(ErrorKind::ConfigError, "eps must be positive");
            PentagonOptions o = opt;
            o.rel_accuracy = 1e-6;
            rep = verify_pentagon(beta_family(cfg.eps), group_samples(Group::reals(), cfg.samples, cfg.seed), o);
        } else if (cfg.solution == "phi-minus") {
            detail::require_reals(cfg.group, "phi-minus");
            rep = detail::phi_minus_report(ctx(), cfg.samples, cfg.seed);
        } else {
            fail(ErrorKind::ConfigError, "unknown solution '" + cfg.solution + "'");
        }
    } else if (cfg.suite == "simplicial") {
        const PentagonOptions opt{tol};
        if (cfg.solution == "const") {
            const Group g = detail::parse_finite(cfg.group);
            rep = verify_23move(constant_solution(g), group_labelings(g, cfg.samples, cfg.seed), opt);
        } else if (cfg.solution == "phi-plus") {
            detail::require_reals(cfg.group, "phi-plus");
            const auto c = ctx();
            rep = verify_23move(phi_plus_family(c), phi_plus_labelings(c, cfg.samples, cfg.seed), opt);
        } else {
            fail(ErrorKind::ConfigError, "unknown solution '" + cfg.solution + "'");
        }
    } else {
        fail(ErrorKind::ConfigError, "unknown suite '" + cfg.suite + "'");
    }
    rep.suite = cfg.suite;
    rep.tol = tol;
    rep.params = cfg.params();
    rep.finalize();
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

// ---------------------------------------------------------------------------
// Acceptance battery

/// One measured quantity against its threshold. Structural checks (counts,
/// expected rejections) keep their threshold under a tolerance override.
struct Check {
    std::string name;
    double value = 0.0;
    double tol = 0.0;
    bool structural = false;
    bool pass = false;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool gating = true;
    bool pass = false;
    std::vector<Check> checks;
    std::string note;
    double seconds = 0.0;
};

struct AcceptanceOptions {
    std::optional<double> tol_override;
};

inline constexpr int kCriterionCount = 10;

namespace detail {

class CheckList {
public:
    explicit CheckList(const AcceptanceOptions& opt) : opt_(opt) {}

    void add(std::string name, double value, double tol)
    {
        const double t = opt_.tol_override.value_or(tol);
        checks_.push_back({std::move(name), value, t, false, value <= t});
    }
    void structural(std::string name, bool ok) { checks_.push_back({std::move(name), ok ? 0.0 : 1.0, 0.0, true, ok}); }
    /// Worst relative residual of a report; points that failed to evaluate count as infinite.
    void report(std::string name, const VerificationReport& r, double tol)
    {
        add(std::move(name), r.error_count() ? INFINITY : r.max_rel_err, tol);
    }
    std::vector<Check> take() { return std::move(checks_); }

private:
    const AcceptanceOptions& opt_;
    std::vector<Check> checks_;
};

inline double worst_note(const VerificationReport& r, const std::string& note)
{
    double w = 0.0;
    for (const auto& p : r.points)
        if (p.note == note) w = std::max(w, p.failed() ? INFINITY : p.rel_err);
    return w;
}

/// Both sides of the five-term relation on Z/N by explicit integer loops with
/// counting measure times the Haar weight.
inline std::pair<cplx, cplx> brute_pentagon(const PentagonFamily& f, int n, const std::array<int, 4>& s)
{
    const auto at = [&](int i, int a, int b) { return f(i, double(((a % n) + n) % n), double(((b % n) + n) % n)); };
    const auto [x, y, u, v] = s;
    cplx rhs = 0.0;
    for (int z = 0; z < n; ++z) rhs += at(4, u + y, v - z) * at(2, x + y + u + v - z, z) * at(0, x + v, y - z);
    return {at(1, x, y) * at(3, u, v), f.group.measure_scale * rhs};
}

/// Both sides of the 2-3 move with the five face weights written out by hand.
inline std::pair<cplx, cplx> brute_23(const PentagonFamily& f, int n, std::array<std::array<int, 5>, 5> x)
{
    const auto at = [&](int i, int a, int b) { return f(i, double(((a % n) + n) % n), double(((b % n) + n) % n)); };
    const auto w = [&](int i) {
        switch (i) {
        case 0: return at(0, x[1][2] + x[3][4] - x[1][4] - x[2][3], x[1][4] + x[2][3] - x[1][3] - x[2][4]);
        case 1: return at(1, x[0][2] + x[3][4] - x[0][4] - x[2][3], x[0][4] + x[2][3] - x[0][3] - x[2][4]);
        case 2: return at(2, x[0][1] + x[3][4] - x[0][4] - x[1][3], x[0][4] + x[1][3] - x[0][3] - x[1][4]);
        case 3: return at(3, x[0][1] + x[2][4] - x[0][4] - x[1][2], x[0][4] + x[1][2] - x[0][2] - x[1][4]);
        default: return at(4, x[0][1] + x[2][3] - x[0][3] - x[1][2], x[0][3] + x[1][2] - x[0][2] - x[1][3]);
        }
    };
    const cplx lhs = w(1) * w(3);
    cplx rhs = 0.0;
    for (int t = 0; t < n; ++t) {
        x[1][3] = t;
        rhs += w(0) * w(2) * w(4);
    }
    return {lhs, f.group.measure_scale * rhs};
}

/// Runs verify_pentagon and verify_23move on `fam` over Z/n and returns the
/// worst residual and the worst deviation from the brute-force oracle.
inline std::pair<double, double> finite_battery(const PentagonFamily& fam, int n, std::uint64_t seed)
{
    const auto samples = group_samples(fam.group, 6, seed);
    const auto labels = group_labelings(fam.group, 6, seed + 1);
    const auto p = verify_pentagon(fam, samples, {0.0});
    const auto s = verify_23move(fam, labels, {0.0});
    double resid = std::max(p.max_rel_err, s.max_rel_err);
    if (p.error_count() || s.error_count()) resid = INFINITY;
    double dev = 0.0;
    const auto as_int = [](Elem e) { return static_cast<int>(std::llround(e.real())); };
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const auto& q = samples[k];
        const auto [l, r] = brute_pentagon(fam, n, {as_int(q.x), as_int(q.y), as_int(q.u), as_int(q.v)});
        dev = std::max({dev, rel_err(l, p.points[k].lhs), rel_err(r, p.points[k].rhs)});
    }
    for (std::size_t k = 0; k < labels.size(); ++k) {
        std::array<std::array<int, 5>, 5> x{};
        for (int j = 0; j < 5; ++j)
            for (int l = j + 1; l < 5; ++l) x[j][l] = as_int(labels[k].x(j, l));
        const auto [l, r] = brute_23(fam, n, x);
        dev = std::max({dev, rel_err(l, s.points[k].lhs), rel_err(r, s.points[k].rhs)});
    }
    return {resid, dev};
}

inline std::string sci(double v) { return quad::detail::sci(v); }

inline void criterion_body(int id, CriterionResult& res, CheckList& c)
{
    switch (id) {
    case 1: {
        res.title = "Phi representation agreement (integral vs product)";
        for (double hbar : {0.3, 0.5, 1.0}) {
            const auto ctx = make_context(hbar);
            double worst = 0.0;
            for (const cplx x : qdilog_grid(ctx))
                worst = std::max(worst, rel_err(phi_eval(ctx, x, EvalMethod::Integral),
                                                phi_eval(ctx, x, EvalMethod::Product)));
            c.add("hbar=" + sci(hbar) + " 5x5 grid", worst, 1e-8);
        }
        break;
    }
    case 2: {
        res.title = "Difference equations and inversion relation";
        double flipped = 0.0;
        for (double hbar : {0.3, 0.5, 1.0}) {
            const auto rep = qdilog_report(hbar, 10, 2000 + static_cast<std::uint64_t>(100 * hbar));
            c.add("hbar=" + sci(hbar) + " difference equations", worst_note(rep, "difference-equation"), 1e-8);
            c.add("hbar=" + sci(hbar) + " inversion relation", worst_note(rep, "inversion"), 1e-8);
            c.add("hbar=" + sci(hbar) + " Phi(0)^2 vs e^{i pi (1/hbar - 2)/12}", worst_note(rep, "phi-zero-squared"),
                  1e-8);
            const auto ctx = make_context(hbar);
            flipped = std::max(flipped, rel_err(ctx.phi_zero * ctx.phi_zero,
                                                std::exp(-I * pi * (2.0 + 1.0 / hbar) / 12.0)));
        }
        c.add("Phi(0)^2 vs e^{-i pi (2 + 1/hbar)/12}", flipped, 1e-8);
        res.note = "e^{-i pi (2 + 1/hbar)/12} has the wrong sign on the 1/hbar term; the derived constant is checked "
                   "separately and the flipped one is reported as measured";
        break;
    }
    case 3: {
        res.title = "Five-term Fourier identity for Faddeev-type tuples";
        const auto ctx = make_context(0.5);
        const auto samples = five_term_samples(10, 3);
        c.report("Phi tuple", verify_fourier_five_term(make_phi(ctx), samples, {1e-6}), 1e-6);
        c.report("reflected Phi tuple", verify_fourier_five_term(make_reflected(make_phi(ctx)), samples, {1e-6}), 1e-6);
        bool rejected = false;
        try {
            verify_fourier_five_term(make_constant(), samples);
        } catch (const Error& e) {
            rejected = e.kind() == ErrorKind::DistributionalInput;
        }
        c.structural("constant tuple rejected as distributional", rejected);
        break;
    }
    case 4: {
        res.title = "Tuple construction: two integral forms and the closed form";
        const auto ctx = make_context(0.5);
        const auto fam = construct_from_tuples(make_phi(ctx), make_phi(ctx));
        double cross = 0.0, closed = 0.0;
        int j = 0;
        for (const double rx : {-0.6, 0.0, 0.6})
            for (const double ry : {-0.5, 0.1, 0.7}) {
                const cplx x(rx, 0.3), y(ry, -0.1);
                const cplx a = fam(j, x, y);
                cross = std::max(cross, rel_err(a, fam.alt[static_cast<std::size_t>(j)](x, y)));
                closed = std::max(closed, rel_err(a, phi_plus_closed(ctx, x, y)));
                j = (j + 1) % 5;
            }
        c.add("t-integral vs dual t-integral, 9 points", cross, 1e-6);
        c.add("t-integral vs closed form, 9 points", closed, 1e-6);
        break;
    }
    case 5: {
        res.title = "Five-term relation for phi-plus";
        const auto ctx = make_context(0.5);
        c.report("10 seeded complexified samples",
                 verify_pentagon(phi_plus_family(ctx), phi_plus_samples(ctx, 10, 20240)), 1e-5);
        break;
    }
    case 6: {
        res.title = "Exact finite-group battery";
        for (const int n : {1, 4, 7}) {
            const auto fam = constant_solution(Group::cyclic(n));
            const auto [resid, dev] = finite_battery(fam, n, 60 + static_cast<std::uint64_t>(n));
            c.add("Z/" + std::to_string(n) + " constant: residual", resid, 1e-12);
            c.add("Z/" + std::to_string(n) + " constant: vs brute force", dev, 1e-12);
            if (n == 1) continue;
            const std::vector<std::pair<std::string, PentagonFamily>> transformed = {
                {"Fourier", fourier_family(fam)},
                {"inverted", symmetry_invert(fam)},
                {"Fourier of inverted", fourier_family(symmetry_invert(fam))}};
            for (const auto& [name, f] : transformed) {
                const auto [r, d] = finite_battery(f, n, 90 + static_cast<std::uint64_t>(n));
                c.add("Z/" + std::to_string(n) + " " + name + ": residual", std::max(r, d), 1e-12);
            }
        }
        break;
    }
    case 7: {
        res.title = "Quasi-periodic example and quotient relation";
        const auto ctx = make_context(0.5);
        const double h = ctx.strip_halfwidth;
        const auto phi = make_phi(ctx);
        double fourier_gap = 0.0;
        for (const auto& [x, y] : complex_strip_points(h, 4, 5)) {
            const cplx yy(y.real(), -0.15 * h);
            const auto q = fourier_by_quadrature(phi.f[0], -yy, 0.5 * h, 1e-14);
            fourier_gap = std::max(fourier_gap, rel_err(std::exp(-I * pi * x * yy) * q.value, phi_times_one_closed(ctx, x, yy)));
        }
        c.add("closed form vs quadrature of the Fourier transform", fourier_gap, 1e-8);
        const auto q = automorphic_lift(phi_times_one_family(ctx), make_data(1.0, 1.0, 1.0));
        const auto qp = verify_quasiperiodicity(q, complex_strip_points(h, 5, 71), 1e-8);
        c.add("ratios e^{-i pi y} (x-shift)", worst_note(qp, "x-shift"), 1e-8);
        c.add("ratios -e^{i pi x} (y-shift)", worst_note(qp, "y-shift"), 1e-8);
        const auto e = verify_quotient_pentagon(q, quotient_samples(ctx, 5, 77), 1e-4);
        double rel = 0.0;
        for (const auto& p : e.points)
            if (p.note != "periodicity") rel = std::max(rel, p.failed() ? INFINITY : p.rel_err);
        c.add("quotient five-term relation, 5 samples", rel, 1e-4);
        c.add("z-periodicity of the integrand", worst_note(e, "periodicity"), 1e-8);
        break;
    }
    case 8: {
        res.title = "phi-minus reality and Fourier relation";
        const auto ctx = make_context(0.5);
        PhiMinusOptions reg;
        reg.method = PhiMinusMethod::Regulator;
        double im = 0.0;
        for (const auto& [x, y] : real_points(5, 8)) im = std::max(im, std::abs(phi_minus(ctx, x, y, reg).value.imag()));
        c.add("|Im phi-minus| after extrapolation, 5 real samples", im, 1e-6);
        const double h = ctx.strip_halfwidth;
        const double x = 0.15, y = -0.1;
        const auto lhs = phi_minus(ctx, -2.0 * x, -2.0 * y);
        const auto rhs = phi_plus_fourier(ctx, x, y, 1.2 * h, 0.6 * h, 1e-8);
        c.add("2 phi-minus(-2x,-2y) vs Fourier transform of phi-plus", rel_err(2.0 * lhs.value, rhs.value), 1e-4);
        break;
    }
    case 9: {
        res.title = "Euler-beta solution residual trend";
        res.gating = false;
        const SamplePoint s{0.31, -0.17, 0.23, 0.12};
        PentagonOptions opt;
        opt.tol = 1.0;
        opt.rel_accuracy = 1e-6;
        std::vector<double> r;
        std::ostringstream os;
        for (double eps : {0.1, 0.05, 0.025}) {
            const auto rep = verify_pentagon(beta_family(eps), {s}, opt);
            r.push_back(rep.points[0].failed() ? INFINITY : rep.points[0].rel_err);
            os << (r.size() > 1 ? ", " : "") << "eps=" << eps << ": " << sci(r.back());
        }
        const bool decreasing = r[1] < r[0] && r[2] < r[1];
        c.structural("residual strictly decreases as eps halves", decreasing);
        res.note = os.str();
        break;
    }
    case 10: {
        res.title = "Quadrature engine fixtures";
        const auto within = [&](const std::string& name, const quad::QuadResult& q, cplx exact) {
            const double slack = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(exact));
            c.structural(name + " within error estimate", std::abs(q.value - exact) <= q.err_estimate + slack);
        };
        within("Gaussian",
               quad::integrate_line([](double x) { return cplx(std::exp(-pi * x * x)); },
                                    quad::Window::real_line(quad::Decay::gaussian(pi))),
               1.0);
        const double eps = 0.05;
        within("regulated Fresnel",
               quad::integrate_line([eps](double x) { return std::exp(cplx(-eps * x * x, pi * x * x)); },
                                    quad::Window::real_line(quad::Decay::gaussian(eps))),
               std::sqrt(cplx(pi, 0.0) / cplx(eps, -pi)));
        const cplx dir = std::polar(1.0, pi / 4.0);
        quad::Contour rotated = quad::Contour::polyline({0.0});
        rotated.from_infinity(-dir, quad::Decay::gaussian(pi)).to_infinity(dir, quad::Decay::gaussian(pi));
        within("rotated Fresnel", quad::integrate_contour([](cplx z) { return std::exp(I * pi * z * z); }, rotated),
               dir);
        for (double h : {-1.0, 0.5, 1.0})
            within("Gaussian on Im z = " + sci(h),
                   quad::integrate_contour([](cplx z) { return std::exp(-pi * z * z); },
                                           quad::Contour::horizontal(h, quad::Decay::gaussian(pi),
                                                                     quad::Decay::gaussian(pi))),
                   1.0);
        const std::vector<std::pair<std::string, std::function<quad::QuadResult(const quad::Options&)>>> fixtures = {
            {"Gaussian", [](const quad::Options& o) {
                 return quad::integrate_line([](double x) { return cplx(std::exp(-pi * x * x)); },
                                             quad::Window::real_line(quad::Decay::gaussian(pi)), o);
             }},
            {"regulated Fresnel", [eps](const quad::Options& o) {
                 return quad::integrate_line([eps](double x) { return std::exp(cplx(-eps * x * x, pi * x * x)); },
                                             quad::Window::real_line(quad::Decay::gaussian(eps)), o);
             }},
            {"shifted Gaussian", [](const quad::Options& o) {
                 return quad::integrate_contour(
                     [](cplx z) { return std::exp(-pi * z * z); },
                     quad::Contour::horizontal(0.7, quad::Decay::gaussian(pi), quad::Decay::gaussian(pi)), o);
             }},
            {"sqrt on [0,1]", [](const quad::Options& o) {
                 return quad::integrate_line([](double x) { return cplx(std::sqrt(x)); },
                                             quad::Window::interval(0.0, 1.0), o);
             }},
        };
        for (const auto& [name, run] : fixtures) {
            bool mono = true;
            double prev = INFINITY;
            for (double tol = 1e-4; tol >= 1e-12; tol /= 2.0) {
                quad::Options o;
                o.abs_tol = tol;
                const double e = run(o).err_estimate;
                mono = mono && e <= prev && e <= tol;
                prev = e;
            }
            c.structural(name + " refinement monotone", mono);
        }
        break;
    }
    default:
        fail(ErrorKind::ConfigError, "no acceptance criterion " + std::to_string(id));
    }
}

} // namespace detail

inline CriterionResult run_criterion(int id, const AcceptanceOptions& opt = {})
{
    const auto start = std::chrono::steady_clock::now();
    CriterionResult res;
    res.id = id;
    detail::CheckList checks(opt);
    try {
        detail::criterion_body(id, res, checks);
        res.checks = checks.take();
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::ConfigError && res.title.empty()) throw;
        res.checks = checks.take();
        res.checks.push_back({std::string("evaluation error: ") + e.what(), INFINITY, 0.0, true, false});
    }
    res.pass = !res.checks.empty();
    for (const auto& ch : res.checks) res.pass = res.pass && ch.pass;
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

/// One line per criterion: "[PASS] C5 title: detail (1.2s)". Non-gating
/// criteria print INFO with their measured trend.
inline std::string format_criterion(const CriterionResult& r)
{
    std::ostringstream os;
    os << (r.gating ? (r.pass ? "[PASS]" : "[FAIL]") : "[INFO]") << " C" << r.id << " " << r.title << ": ";
    double worst = 0.0;
    bool numeric = false;
    std::vector<std::string> failed;
    for (const auto& c : r.checks) {
        if (!c.structural) {
            numeric = true;
            worst = std::max(worst, c.tol > 0.0 ? c.value / c.tol : (c.value > 0.0 ? INFINITY : 0.0));
        }
        if (!c.pass) failed.push_back(c.name);
    }
    os << r.checks.size() - failed.size() << "/" << r.checks.size() << " checks";
    if (numeric) os << ", worst residual/tol " << detail::sci(worst);
    for (const auto& f : failed) os << "; failed: " << f;
    if (!r.note.empty()) os << " [" << r.note << "]";
    os << " (" << std::fixed;
    os.precision(1);
    os << r.seconds << "s)";
    return os.str();
}

/// The selftest report: one record per check, lhs = measured value,
/// rhs = threshold, rel_err = value / threshold (0 for passed structural
/// checks), report tolerance 1. Non-gating criteria contribute records with
/// rel_err 0 and a note.
inline VerificationReport selftest_report(const std::vector<CriterionResult>& results)
{
    VerificationReport rep;
    rep.suite = "selftest";
    rep.tol = 1.0;
    double secs = 0.0;
    for (const auto& r : results) {
        secs += r.seconds;
        for (const auto& c : r.checks) {
            PointRecord p;
            p.inputs = {{"criterion", cplx(r.id)}};
            p.lhs = c.value;
            p.rhs = c.tol;
            p.abs_err = c.value;
            if (!r.gating) p.rel_err = 0.0;
            else if (c.structural) p.rel_err = c.pass ? 0.0 : INFINITY;
            else p.rel_err = c.tol > 0.0 ? c.value / c.tol : (c.value > 0.0 ? INFINITY : 0.0);
            p.note = "C" + std::to_string(r.id) + " " + c.name + (r.gating ? "" : " (non-gating)");
            rep.points.push_back(std::move(p));
        }
    }
    rep.finalize();
    for (const auto& r : results) rep.pass = rep.pass && (r.pass || !r.gating);
    rep.wall_seconds = secs;
    return rep;
}

} // namespace betapenta
