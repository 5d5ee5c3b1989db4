#pragma once

// Periodisation of pentagon families over the subgroup Z of R. A family with
//
//   phi_i(x + m, y) = gamma_i^m h_y(m) phi_i(x, y),   h_x(m) = e^{-i pi c m x},
//
// lifts to psi_i(x, y) = sum_m phi_i(x, y + m) mu_i^m h_{x+m}(m), which is
// quasi-periodic in both arguments and satisfies the five-term relation with
// z integrated over one period.

#include <array>
#include <chrono>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "betapenta/family.hpp"
#include "betapenta/pentagon.hpp"

namespace betapenta {

/// Characters of Z are stored as the unit complex number chi(1).
struct AutomorphicData {
    std::array<cplx, 3> g{1.0, 1.0, 1.0};
    cplx alpha = 1.0;
    cplx beta = 1.0;
    double c = 1.0;
    std::array<cplx, 5> gamma{};
    std::array<cplx, 5> mu{};

    /// h_x(m) = e^{-i pi c m x}.
    cplx h(Elem x, double m) const { return std::exp(-I * pi * c * m * x); }
    /// eps(m) = h_m(m).
    cplx epsilon(double m) const { return h(m, m); }
};

inline cplx char_power(cplx chi, double m) { return std::pow(chi, m); }

inline AutomorphicData make_data(cplx g0, cplx g1, cplx g2, cplx alpha = 1.0, cplx beta = 1.0, double c = 1.0)
{
    for (const cplx v : {g0, g1, g2, alpha, beta})
        if (std::abs(std::abs(v) - 1.0) > 1e-12) fail(ErrorKind::DomainError, "characters of Z must have unit modulus");
    AutomorphicData d;
    d.g = {g0, g1, g2};
    d.alpha = alpha;
    d.beta = beta;
    d.c = c;
    // Cocycle condition h_m(n) h_n(m) = e^{-2 pi i c m n} = 1 on the generator.
    if (std::abs(d.h(1.0, 1.0) * d.h(1.0, 1.0) - 1.0) > 1e-12)
        fail(ErrorKind::InvalidHomomorphism, "h_b(c) h_c(b) != 1 on B = Z: c must be an integer, got c = " + std::to_string(c));
    d.gamma = {g0, g0 * g1, g1, g1 * g2, g2};
    const auto& gm = d.gamma;
    d.mu = {alpha * gm[3], alpha, alpha * beta * gm[0] * gm[2] * gm[4], beta, beta * gm[1]};
    return d;
}

// ---------------------------------------------------------------------------
// Sums over Z

struct LatticeSum {
    cplx value;
    double tail_bound = 0.0;  // estimate of the neglected remainder
    long terms = 0;
};

struct LatticeOptions {
    double abs_tol = 1e-15;
    long max_terms = 200000;  // per side
    long fixed_terms = 0;     // > 0: truncate at |m| <= fixed_terms and only estimate the tail
};

/// sum_{m in Z} t(m). Each side runs until the geometric tail estimate
/// |t_m| rho / (1 - rho), rho = |t_m / t_{m-1}|, stays below tolerance.
template <class F>
LatticeSum lattice_sum(F&& term, const LatticeOptions& opt = {})
{
    LatticeSum out;
    out.value = term(0.0);
    out.terms = 1;
    for (const double dir : {1.0, -1.0}) {
        double prev = std::abs(out.value);
        int quiet = 0;
        double bound = INFINITY;
        for (long m = 1;; ++m) {
            const cplx t = term(dir * static_cast<double>(m));
            out.value += t;
            ++out.terms;
            const double a = std::abs(t);
            const double rho = prev > 0.0 ? a / prev : (a == 0.0 ? 0.0 : 1.0);
            bound = rho < 1.0 ? a * rho / (1.0 - rho) : INFINITY;
            prev = a;
            if (opt.fixed_terms > 0) {
                if (m >= opt.fixed_terms) break;
                continue;
            }
            quiet = (bound <= opt.abs_tol) ? quiet + 1 : 0;
            if (quiet >= 3) break;
            if (m >= opt.max_terms)
                fail(ErrorKind::NonConvergent, "lattice sum terms do not decay (|term| " + std::to_string(a) + ")");
        }
        out.tail_bound += bound;
    }
    return out;
}

/// Lattice transform f~(x, y, xi) = sum_b xi^b f(x, y + b).
inline LatticeSum lattice_transform(const FamilyFn& f, Elem x, Elem y, cplx xi, const LatticeOptions& opt = {})
{
    return lattice_sum([&](double m) { return char_power(xi, m) * f(x, y + m); }, opt);
}

// ---------------------------------------------------------------------------
// The lift

enum class LiftPolicy { Strip, Regulator };

struct LiftOptions {
    LiftPolicy policy = LiftPolicy::Strip;
    LatticeOptions sum{};
    double delta = 0.01;  // regulator e^{-delta (Re y + m)^2}, halved `levels - 1` times
    int levels = 6;
    std::vector<std::pair<cplx, cplx>> probes = {{cplx(0.37, 0.2), cplx(-0.21, -0.05)},
                                                 {cplx(-0.45, 0.1), cplx(0.33, 0.02)}};
    double automorphy_tol = 1e-8;
};

struct QuotientFamily {
    std::array<FamilyFn, 5> psi;
    AutomorphicData data;
    LiftOptions options;
    Group quotient = Group::circle();

    cplx operator()(int i, Elem x, Elem y) const { return psi.at(static_cast<std::size_t>(i))(x, y); }
};

/// Checks phi_i(x + m, y) = gamma_i^m h_y(m) phi_i(x, y) for m in {1, -1, 2} at
/// the given points; returns the largest relative residual.
inline double automorphy_residual(const PentagonFamily& fam, const AutomorphicData& d,
                                  const std::vector<std::pair<cplx, cplx>>& points)
{
    double worst = 0.0;
    for (int i = 0; i < 5; ++i)
        for (const auto& [x, y] : points)
            for (const double m : {1.0, -1.0, 2.0}) {
                const cplx lhs = fam(i, x + m, y);
                const cplx rhs = char_power(d.gamma[static_cast<std::size_t>(i)], m) * d.h(y, m) * fam(i, x, y);
                worst = std::max(worst, rel_err(lhs, rhs));
            }
    return worst;
}

namespace detail {

inline LatticeSum lift_sum(const PentagonFamily& fam, const AutomorphicData& d, int i, Elem x, Elem y,
                           const LatticeOptions& sum, double delta)
{
    const cplx mu = d.mu[static_cast<std::size_t>(i)];
    return lattice_sum(
        [&](double m) {
            const cplx w = char_power(mu, m) * d.h(x + m, m);
            const cplx t = w * fam(i, x, y + m);
            const double s = y.real() + m;  // centred on the argument, so y-shifts commute with it
            return delta > 0.0 ? std::exp(-delta * s * s) * t : t;
        },
        sum);
}

} // namespace detail

/// psi_i(x, y) = sum_m phi_i(x, y + m) mu_i^m h_{x+m}(m). The Strip policy sums
/// the absolutely convergent series (complexified x); the Regulator policy
/// damps terms by e^{-delta (Re y + m)^2} and extrapolates delta -> 0.
inline QuotientFamily automorphic_lift(const PentagonFamily& fam, const AutomorphicData& d, const LiftOptions& opt = {})
{
    if (fam.group.kind != GroupKind::Reals) fail(ErrorKind::DomainError, "the lift is implemented for Z inside R");
    const double res = automorphy_residual(fam, d, opt.probes);
    if (!(res <= opt.automorphy_tol))
        fail(ErrorKind::AutomorphicityViolation,
             "family violates phi(x + m, y) = gamma^m h_y(m) phi(x, y) (residual " + quad::detail::sci(res) + ")");
    QuotientFamily q;
    q.data = d;
    q.options = opt;
    for (int i = 0; i < 5; ++i) {
        q.psi[static_cast<std::size_t>(i)] = [fam, d, opt, i](Elem x, Elem y) {
            if (opt.policy == LiftPolicy::Strip) return detail::lift_sum(fam, d, i, x, y, opt.sum, 0.0).value;
            std::vector<cplx> v;
            double delta = opt.delta;
            for (int k = 0; k < opt.levels; ++k, delta *= 0.5)
                v.push_back(detail::lift_sum(fam, d, i, x, y, opt.sum, delta).value);
            return detail::richardson_halving(std::move(v));
        };
    }
    return q;
}

/// The family phi_j(x, y) = e^{-i pi (x + y) y} Phi(y + ih) e^{i pi (1 + 1/hbar)/12},
/// automorphic for g = 1, c = 1.
inline PentagonFamily phi_times_one_family(const HbarContext& ctx)
{
    return uniform_family(Group::reals(), [ctx](Elem x, Elem y) { return phi_times_one_closed(ctx, x, y); });
}

/// e^{-i pi x y} sum_m (F Phi)(y + m) e^{-2 pi i (x + 1/2) m}, with
/// (F Phi)(y) = e^{-i pi y^2} Phi(y + ih) e^{i pi (1 + 1/hbar)/12}: the
/// quasi-periodic lift written directly.
inline LatticeSum psi_series(const HbarContext& ctx, cplx x, cplx y, const LatticeOptions& opt = {})
{
    auto s = lattice_sum(
        [&](double m) {
            const cplx w = y + m;
            return phi_times_one_closed(ctx, 0.0, w) * std::exp(-2.0 * pi * I * (x + 0.5) * m);
        },
        opt);
    s.value *= std::exp(-I * pi * x * y);
    return s;
}

// ---------------------------------------------------------------------------
// Verification

inline VerificationReport verify_quasiperiodicity(const QuotientFamily& q, const std::vector<std::pair<cplx, cplx>>& samples,
                                                  double tol, const std::vector<double>& shifts = {1.0, -1.0, 2.0})
{
    const auto start = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.suite = "quasi-periodicity";
    rep.tol = tol;
    const auto& d = q.data;
    std::vector<std::pair<std::size_t, std::pair<cplx, cplx>>> jobs;
    for (const auto& s : samples)
        for (int i = 0; i < 5; ++i) jobs.push_back({static_cast<std::size_t>(i), s});
    rep.points.resize(jobs.size() * shifts.size() * 2);
    parallel_for(jobs.size(), [&](std::size_t k) {
        const auto i = jobs[k].first;
        const auto [x, y] = jobs[k].second;
        for (std::size_t s = 0; s < shifts.size(); ++s) {
            const double b = shifts[s];
            const std::size_t base = (k * shifts.size() + s) * 2;
            std::vector<std::pair<std::string, cplx>> in = {{"i", double(i)}, {"x", x}, {"y", y}, {"b", b}};
            try {
                const cplx p = q(static_cast<int>(i), x, y);
                rep.points[base] = make_record(in, q(static_cast<int>(i), x + b, y),
                                               char_power(d.gamma[i], b) * d.h(y, b) * p);
                rep.points[base].note = "x-shift";
                rep.points[base + 1] = make_record(in, q(static_cast<int>(i), x, y + b),
                                                   d.epsilon(b) * char_power(1.0 / d.mu[i], b) * d.h(-x, b) * p);
                rep.points[base + 1].note = "y-shift";
            } catch (const Error& e) {
                rep.points[base] = rep.points[base + 1] = error_record(in, e);
            }
        }
    });
    rep.finalize();
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

struct QuotientSample {
    cplx x, y, u, v;
    double z_height = 0.0;  // z runs over [0, 1) + i z_height
};

inline cplx quotient_integrand(const QuotientFamily& q, const QuotientSample& s, cplx z)
{
    return q(4, s.u + s.y, s.v - z) * q(2, s.x + s.y + s.u + s.v - z, z) * q(0, s.x + s.v, s.y - z);
}

/// psi_1(x, y) psi_3(u, v) = int_0^1 psi_4(u + y, v - z) psi_2(x + y + u + v - z, z) psi_0(x + v, y - z) dz,
/// plus a probe of the integrand's 1-periodicity in z (reported as extra
/// points with note "periodicity").
inline VerificationReport verify_quotient_pentagon(const QuotientFamily& q, const std::vector<QuotientSample>& samples, double tol,
                                      double abs_tol_rel = 1e-9)
{
    const auto start = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.suite = "quotient-pentagon";
    rep.tol = tol;
    rep.points.resize(samples.size() * 3);
    parallel_for(samples.size(), [&](std::size_t k) {
        const auto& s = samples[k];
        std::vector<std::pair<std::string, cplx>> in = {{"x", s.x}, {"y", s.y}, {"u", s.u}, {"v", s.v}};
        try {
            const cplx lhs = q(1, s.x, s.y) * q(3, s.u, s.v);
            quad::Options o;
            o.abs_tol = std::max(1e-300, abs_tol_rel * std::abs(lhs));
            o.panel = 0.25;
            const auto r = quad::integrate_contour([&](cplx z) { return quotient_integrand(q, s, z); },
                                                   quad::Contour::segment(cplx(0.0, s.z_height), cplx(1.0, s.z_height)), o);
            rep.points[3 * k] = make_record(in, lhs, r.value * q.quotient.measure_scale, r.err_estimate);
            for (int p = 0; p < 2; ++p) {
                const cplx z(0.3 * p, s.z_height);
                auto rec = make_record(in, quotient_integrand(q, s, z), quotient_integrand(q, s, z + 1.0));
                rec.inputs.emplace_back("z", z);
                rec.note = "periodicity";
                rep.points[3 * k + 1 + static_cast<std::size_t>(p)] = rec;
            }
        } catch (const Error& e) {
            for (int p = 0; p < 3; ++p) rep.points[3 * k + static_cast<std::size_t>(p)] = error_record(in, e);
        }
    });
    rep.finalize();
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

/// Samples with Im x = Im u = 0.35h, Im y = Im v = -0.15h and z at height
/// -0.075h: every psi argument stays where the lift series converges
/// absolutely (0 < Im X < h, Im X + Im Y > 0).
inline std::vector<QuotientSample> quotient_samples(const HbarContext& ctx, std::size_t n, std::uint64_t seed)
{
    const double h = ctx.strip_halfwidth;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> re(-1.0, 1.0);
    std::vector<QuotientSample> out;
    for (std::size_t k = 0; k < n; ++k) {
        QuotientSample s;
        s.x = {re(rng), 0.35 * h};
        s.y = {re(rng), -0.15 * h};
        s.u = {re(rng), 0.35 * h};
        s.v = {re(rng), -0.15 * h};
        s.z_height = -0.075 * h;
        out.push_back(s);
    }
    return out;
}

} // namespace betapenta
