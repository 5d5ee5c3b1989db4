#pragma once

// Five-tuples of functions on R together with their Fourier transforms
// f~(w) = int e^{-2 pi i w y} f(y) dy, analytic metadata (tail decay rates and
// pole lattices), and the Fourier-side five-term identity
//
//   f~1(x) f~3(y) = e^{-2 pi i x y} int f~4(y-z) f~2(z) f~0(x-z) e^{i pi z^2} dz
//
// together with its complex-conjugate companion.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "betapenta/cmath.hpp"
#include "betapenta/error.hpp"
#include "betapenta/parallel.hpp"
#include "betapenta/qdilog.hpp"
#include "betapenta/quad.hpp"
#include "betapenta/report.hpp"

namespace betapenta {

/// log|f(p + i s)| ~ -rate(s) |p| as p -> +/-inf, with rate affine in s.
/// `superexp` marks Gaussian-type decay (faster than any exponential).
struct TailModel {
    double plus0 = 0.0, plus1 = 0.0;
    double minus0 = 0.0, minus1 = 0.0;
    bool superexp = false;

    double plus(double s) const { return superexp ? INFINITY : plus0 + plus1 * s; }
    double minus(double s) const { return superexp ? INFINITY : minus0 + minus1 * s; }

    /// Model of w -> f(-w).
    TailModel reflected() const { return {minus0, -minus1, plus0, -plus1, superexp}; }
    /// Model of w -> conj(f(conj w)).
    TailModel conjugated() const { return {plus0, -plus1, minus0, -minus1, superexp}; }
};

/// Poles at apex + direction * i (b m + n / b), m, n >= 0.
struct PoleLattice {
    cplx apex{};
    int direction = -1;
    cplx b{1.0};

    /// Smallest vertical distance from the apex to any other lattice point.
    double spacing() const { return std::min(b.real(), (1.0 / b).real()); }
    PoleLattice reflected() const { return {-apex, -direction, b}; }
    PoleLattice conjugated() const { return {std::conj(apex), -direction, std::conj(b)}; }
};

/// A function analytic away from finitely many pole lattices, with tail data.
struct AnalyticFn {
    std::function<cplx(cplx)> fn;
    TailModel tail{};
    std::vector<PoleLattice> poles;

    cplx operator()(cplx w) const { return fn(w); }
    explicit operator bool() const { return static_cast<bool>(fn); }

    AnalyticFn reflected() const
    {
        AnalyticFn out{[f = fn](cplx w) { return f(-w); }, tail.reflected(), {}};
        for (const auto& p : poles) out.poles.push_back(p.reflected());
        return out;
    }

    AnalyticFn conjugated() const
    {
        AnalyticFn out{[f = fn](cplx w) { return std::conj(f(std::conj(w))); }, tail.conjugated(), {}};
        for (const auto& p : poles) out.poles.push_back(p.conjugated());
        return out;
    }
};

struct FaddeevTuple {
    std::string name;
    std::array<AnalyticFn, 5> f;
    std::array<AnalyticFn, 5> ft;  // Fourier side; empty when distributional
    bool square_integrable = false;
};

// ---------------------------------------------------------------------------
// Constructors

inline FaddeevTuple make_constant()
{
    FaddeevTuple t;
    t.name = "constant";
    for (auto& fj : t.f) fj = AnalyticFn{[](cplx) { return cplx(1.0); }, {}, {}};
    t.square_integrable = false;
    return t;
}

/// f_j(x) = a_j e^{-b_j x^2}, Re b_j > 0, with f~_j(w) = a_j sqrt(pi/b_j) e^{-pi^2 w^2 / b_j}.
inline FaddeevTuple make_gaussian(const std::array<cplx, 5>& a, const std::array<cplx, 5>& bcoef)
{
    FaddeevTuple t;
    t.name = "gaussian";
    TailModel fast;
    fast.superexp = true;
    for (std::size_t j = 0; j < 5; ++j) {
        if (!(bcoef[j].real() > 0.0)) fail(ErrorKind::DomainError, "Gaussian widths need a positive real part");
        const cplx aj = a[j], bj = bcoef[j];
        const cplx amp = aj * std::sqrt(pi / bj);
        t.f[j] = AnalyticFn{[aj, bj](cplx x) { return aj * std::exp(-bj * x * x); }, fast, {}};
        t.ft[j] = AnalyticFn{[amp, bj](cplx w) { return amp * std::exp(-pi * pi * w * w / bj); }, fast, {}};
    }
    t.square_integrable = true;
    return t;
}

/// Gaussian widths/amplitudes solving the five-term identity. Parametrised by
/// the Fourier-side widths beta0, beta4 (f~_j(w) = A_j e^{-beta_j w^2}); the
/// remaining widths follow from matching the quadratic form after completing
/// the square in z, and the amplitudes from the resulting Gaussian integral.
struct GaussianSolution {
    std::array<cplx, 5> a;      // x-side amplitudes
    std::array<cplx, 5> bcoef;  // x-side widths b_j = pi^2 / beta_j
    std::array<cplx, 5> beta;   // Fourier-side widths
    cplx s;                     // beta0 + beta2 + beta4 - i pi
};

inline GaussianSolution gaussian_solution(cplx beta0, cplx beta4, cplx amp0 = 1.0, cplx amp2 = 1.0,
                                          cplx amp4 = 1.0, cplx amp1 = 1.0)
{
    GaussianSolution g;
    // Cross terms: beta0 beta4 = i pi S with S = beta0 + beta2 + beta4 - i pi.
    const cplx s = beta0 * beta4 / (I * pi);
    const cplx beta2 = s - beta0 - beta4 + I * pi;
    const cplx beta1 = beta0 * (s - beta0) / s;
    const cplx beta3 = beta4 * (s - beta4) / s;
    g.beta = {beta0, beta1, beta2, beta3, beta4};
    g.s = s;
    if (!(s.real() > 0.0)) fail(ErrorKind::DomainError, "Gaussian z-integral needs Re S > 0");
    // Amplitudes: A1 A3 = A0 A2 A4 sqrt(pi / S).
    const std::array<cplx, 5> amp = {amp0, amp1, amp2, amp0 * amp2 * amp4 * std::sqrt(pi / s) / amp1, amp4};
    for (std::size_t j = 0; j < 5; ++j) {
        if (!(g.beta[j].real() > 0.0)) fail(ErrorKind::DomainError, "derived Gaussian width has Re <= 0");
        g.bcoef[j] = pi * pi / g.beta[j];
        g.a[j] = amp[j] / std::sqrt(pi / g.bcoef[j]);
    }
    return g;
}

/// f_j = Phi_hbar for all j; f~(w) = c e^{-i pi w^2} Phi(i h - w), c = e^{i pi (1 + 1/hbar)/12}.
inline FaddeevTuple make_phi(const HbarContext& ctx)
{
    FaddeevTuple t;
    t.name = "phi";
    const double h = ctx.strip_halfwidth;
    const cplx c = std::exp(I * pi * (1.0 + 1.0 / ctx.hbar) / 12.0);
    const AnalyticFn phi{[ctx](cplx x) { return phi_eval(ctx, x); },
                         TailModel{0.0, 2.0 * pi, 0.0, 0.0, false},
                         {PoleLattice{cplx(0.0, h), +1, ctx.b}}};
    const AnalyticFn phit{[ctx, c, h](cplx w) {
                              return c * std::exp(log_phi(ctx, cplx(0.0, h) - w) - I * pi * w * w);
                          },
                          TailModel{0.0, -2.0 * pi, 2.0 * pi * h, 0.0, false},
                          {PoleLattice{0.0, -1, ctx.b}}};
    for (std::size_t j = 0; j < 5; ++j) {
        t.f[j] = phi;
        t.ft[j] = phit;
    }
    t.square_integrable = true;
    return t;
}

/// g_j(x) = f_j(-x) (and g~_j(w) = f~_j(-w)).
inline FaddeevTuple make_reflected(const FaddeevTuple& t)
{
    FaddeevTuple out;
    out.name = "reflected-" + t.name;
    for (std::size_t j = 0; j < 5; ++j) {
        out.f[j] = t.f[j].reflected();
        if (t.ft[j]) out.ft[j] = t.ft[j].reflected();
    }
    out.square_integrable = t.square_integrable;
    return out;
}

// ---------------------------------------------------------------------------
// Fourier transform by quadrature

/// f~(w) = int e^{-2 pi i w y} f(y) dy along R + i*height. The decay of the
/// shifted integrand is read off the tail model; non-decaying configurations
/// are rejected.
inline quad::QuadResult fourier_by_quadrature(const AnalyticFn& f, cplx w, double height, double abs_tol = 1e-13)
{
    const double rp = f.tail.plus(height) - 2.0 * pi * w.imag();
    const double rm = f.tail.minus(height) + 2.0 * pi * w.imag();
    if (!(rp > 0.0) || !(rm > 0.0))
        fail(ErrorKind::NonConvergent, "Fourier integrand does not decay on the chosen line");
    const auto decay = [](double r) {
        return std::isinf(r) ? quad::Decay::unknown() : quad::Decay::exponential(0.9 * r);
    };
    quad::Options opt;
    opt.abs_tol = abs_tol;
    opt.panel = 0.5;
    return quad::integrate_contour([&](cplx y) { return std::exp(-2.0 * pi * I * w * y) * f(y); },
                                   quad::Contour::horizontal(height, decay(rm), decay(rp)), opt);
}

// ---------------------------------------------------------------------------
// Pole-separating contours

/// Builds a horizontal contour with rectangular detours so that every point
/// in `above` lies below the path and every point in `below` lies above it.
/// Fails with DegenerateSample when the two sets pinch the path.
inline quad::Contour separating_contour(const std::vector<cplx>& above, const std::vector<cplx>& below,
                                        double preferred, double delta, quad::Decay left, quad::Decay right,
                                        double* base_out = nullptr)
{
    double hi_a = -INFINITY, lo_b = INFINITY;
    for (const auto& a : above) hi_a = std::max(hi_a, a.imag());
    for (const auto& b : below) lo_b = std::min(lo_b, b.imag());
    if (hi_a + 2.0 * delta < lo_b) {
        const double h = std::clamp(preferred, hi_a + delta, lo_b - delta);
        if (base_out) *base_out = h;
        return quad::Contour::horizontal(h, left, right);
    }
    for (double d = delta; d >= 1e-3; d /= 2.0) {
        const double base = std::min(preferred, lo_b - d);
        struct Bump {
            double l, r, top;
        };
        std::vector<Bump> bumps;
        for (const auto& a : above)
            if (a.imag() > base - d) bumps.push_back({a.real() - d, a.real() + d, a.imag() + d});
        std::sort(bumps.begin(), bumps.end(), [](const Bump& x, const Bump& y) { return x.l < y.l; });
        std::vector<Bump> merged;
        for (const auto& bm : bumps) {
            if (!merged.empty() && bm.l <= merged.back().r + d) {
                merged.back().r = std::max(merged.back().r, bm.r);
                merged.back().top = std::max(merged.back().top, bm.top);
            } else {
                merged.push_back(bm);
            }
        }
        bool pinched = false;
        for (const auto& bm : merged)
            for (const auto& b : below)
                if (b.real() > bm.l - d && b.real() < bm.r + d && b.imag() < bm.top + d) pinched = true;
        if (pinched) continue;
        std::vector<cplx> v;
        if (merged.empty()) v.emplace_back(0.0, base);
        for (const auto& bm : merged) {
            v.emplace_back(bm.l, base);
            v.emplace_back(bm.l, bm.top);
            v.emplace_back(bm.r, bm.top);
            v.emplace_back(bm.r, base);
        }
        if (base_out) *base_out = base;
        quad::Contour c = quad::Contour::polyline(std::move(v));
        c.from_infinity(-1.0, left).to_infinity(1.0, right);
        return c;
    }
    fail(ErrorKind::DegenerateSample, "pole lattices pinch the integration contour");
}

// ---------------------------------------------------------------------------
// Five-term identity

struct FiveTermOptions {
    double tol = 1e-6;
    double delta = 0.1;  // detour size around pole apexes
};

namespace detail {

struct Term {
    const AnalyticFn* fn;
    cplx shift;  // argument = shift + sign * z
    int sign;
};

inline quad::Decay as_decay(double rate)
{
    if (std::isinf(rate)) return quad::Decay::unknown();
    if (!(rate > 0.0)) fail(ErrorKind::NonConvergent, "z-integrand does not decay along the contour");
    return quad::Decay::exponential(0.9 * rate);
}

/// Tail rate of |fn(shift + sign * (p + i H))| as p -> +inf (plus=true) or -inf.
inline double term_rate(const Term& t, double height, bool plus)
{
    const double s = t.shift.imag() + t.sign * height;
    const bool arg_plus = (t.sign > 0) == plus;
    return arg_plus ? t.fn->tail.plus(s) : t.fn->tail.minus(s);
}

/// int prod_k F_k(shift_k + sign_k z) e^{i pi kq z^2 + 2 pi i kl z} dz over a
/// horizontal contour (near height `preferred`) with detours that keep every
/// pole lattice on the side it occupies for real arguments.
inline quad::QuadResult product_integral(const std::vector<Term>& terms, double kq, cplx kl, double abs_tol,
                                         double delta, double preferred = 0.0, double rel_tol = 0.0)
{
    std::vector<cplx> above, below;
    double spacing = INFINITY;
    for (const auto& t : terms) {
        for (const auto& p : t.fn->poles) {
            // z with shift + sign z = apex + dir i (...): z = sign (apex - shift) + sign dir i (...)
            const cplx apex = static_cast<double>(t.sign) * (p.apex - t.shift);
            const double dir = t.sign * p.direction;
            const cplx bz = p.b;
            // The apex and the first few lattice points nearest to it.
            for (int m = 0; m <= 4; ++m)
                for (int n = 0; m + n <= 4; ++n)
                    (dir < 0 ? above : below).push_back(apex + dir * I * (bz * double(m) + double(n) / bz));
            spacing = std::min(spacing, p.spacing());
        }
    }
    const double d = std::min(delta, std::isfinite(spacing) ? spacing / 4.0 : delta);
    double base = 0.0;
    // Rates depend on the base height; compute them after the contour is fixed.
    quad::Contour c = separating_contour(above, below, preferred, d, {}, {}, &base);
    double rate_p = 2.0 * pi * (kq * base + kl.imag()), rate_m = -2.0 * pi * (kq * base + kl.imag());
    for (const auto& t : terms) {
        rate_p += term_rate(t, base, true);
        rate_m += term_rate(t, base, false);
    }
    c = separating_contour(above, below, preferred, d, as_decay(rate_m), as_decay(rate_p));
    quad::Options opt;
    opt.abs_tol = abs_tol;
    opt.rel_tol = rel_tol;
    opt.panel = 0.5;
    return quad::integrate_contour(
        [&](cplx z) {
            cplx v = std::exp(I * pi * kq * z * z + 2.0 * pi * I * kl * z);
            for (const auto& t : terms) v *= (*t.fn)(t.shift + static_cast<double>(t.sign) * z);
            return v;
        },
        c, opt);
}

inline VerificationReport verify_five_term(const std::array<AnalyticFn, 5>& F, double kernel,
                                           const std::vector<std::pair<cplx, cplx>>& samples,
                                           const FiveTermOptions& opt, std::string suite)
{
    const auto start = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.suite = std::move(suite);
    rep.tol = opt.tol;
    rep.points.resize(samples.size());
    parallel_for(samples.size(), [&](std::size_t k) {
        const auto [x, y] = samples[k];
        std::vector<std::pair<std::string, cplx>> in = {{"x", x}, {"y", y}};
        try {
            const cplx lhs = F[1](x) * F[3](y);
            const double abs_tol = std::max(1e-15, std::abs(lhs) * std::min(1e-10, 1e-3 * opt.tol));
            const std::vector<Term> terms = {{&F[4], y, -1}, {&F[2], 0.0, +1}, {&F[0], x, -1}};
            const auto r = product_integral(terms, kernel, 0.0, abs_tol, opt.delta);
            const cplx pre = std::exp(-2.0 * pi * I * kernel * x * y);
            rep.points[k] = make_record(in, lhs, pre * r.value, std::abs(pre) * r.err_estimate);
        } catch (const Error& e) {
            rep.points[k] = error_record(in, e);
        }
    });
    rep.finalize();
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

} // namespace detail

/// Checks f~1(x) f~3(y) = e^{-2 pi i x y} int f~4(y-z) f~2(z) f~0(x-z) e^{i pi z^2} dz.
inline VerificationReport verify_fourier_five_term(const FaddeevTuple& t, const std::vector<std::pair<cplx, cplx>>& samples,
                                      const FiveTermOptions& opt = {})
{
    if (!t.square_integrable)
        fail(ErrorKind::DistributionalInput, "tuple '" + t.name + "' has no square-integrable Fourier transform");
    return detail::verify_five_term(t.ft, 1.0, samples, opt, "faddeev");
}

/// The complex-conjugate companion: conjugated transforms, kernel e^{-i pi z^2}, prefactor e^{2 pi i x y}.
inline VerificationReport verify_conjugate_five_term(const FaddeevTuple& t, const std::vector<std::pair<cplx, cplx>>& samples,
                                      const FiveTermOptions& opt = {})
{
    if (!t.square_integrable)
        fail(ErrorKind::DistributionalInput, "tuple '" + t.name + "' has no square-integrable Fourier transform");
    std::array<AnalyticFn, 5> conj;
    for (std::size_t j = 0; j < 5; ++j) conj[j] = t.ft[j].conjugated();
    return detail::verify_five_term(conj, -1.0, samples, opt, "faddeev-conjugate");
}

/// Seeded real (x, y) samples in [-1, 1]^2, kept 0.05 away from the axes where
/// the separating contour would be pinched between pole apexes.
inline std::vector<std::pair<cplx, cplx>> five_term_samples(std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<std::pair<cplx, cplx>> out;
    while (out.size() < n) {
        const double x = u(rng), y = u(rng);
        if (std::abs(x) > 0.05 && std::abs(y) > 0.05) out.emplace_back(x, y);
    }
    return out;
}

} // namespace betapenta
