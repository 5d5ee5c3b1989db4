#pragma once

// Beta-pentagon families and the five-term integral relation
//
//   phi_1(x, y) phi_3(u, v) = int_A phi_4(u + y, v - z) phi_2(x + y + u + v - z, z) phi_0(x + v, y - z) dz
//
// (written additively). Families come from Faddeev-type tuples through the
// t-integral construction, from closed forms, or from the finite-group
// fixtures.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "betapenta/faddeev.hpp"
#include "betapenta/family.hpp"
#include "betapenta/special.hpp"

namespace betapenta {

// ---------------------------------------------------------------------------
// Closed forms

/// Psi(x - ih) Psi(y + ih) Psi(-x - y + ih), h = 1/(2 sqrt(hbar)).
inline cplx phi_plus_closed(const HbarContext& ctx, cplx x, cplx y)
{
    const cplx ih(0.0, ctx.strip_halfwidth);
    return psi_eval(ctx, x - ih) * psi_eval(ctx, y + ih) * psi_eval(ctx, -x - y + ih);
}

/// Exponential decay rate of |phi_plus_closed(X + dX t, Y + dY t)| as t -> +inf,
/// from log|Psi(p + i s)| ~ -pi |p| s at both ends.
inline double phi_plus_tail_rate(const HbarContext& ctx, Elem x, Elem y, double dx, double dy)
{
    const double h = ctx.strip_halfwidth;
    return pi * (std::abs(dx) * (x.imag() - h) + std::abs(dy) * (y.imag() + h) +
                 std::abs(dx + dy) * (h - x.imag() - y.imag()));
}

/// Region where the defining t-integral converges: Im x > 0, Im y < 0, Im(x + y) > 0.
inline std::vector<StripConstraint> phi_plus_strip()
{
    return {{1.0, 0.0, 0.0}, {0.0, -1.0, 0.0}, {1.0, 1.0, 0.0}};
}

inline PentagonFamily phi_plus_family(const HbarContext& ctx)
{
    PentagonFamily fam = uniform_family(Group::reals(), [ctx](Elem x, Elem y) { return phi_plus_closed(ctx, x, y); });
    for (auto& s : fam.strips) s = phi_plus_strip();
    fam.tail_rate = [ctx](int, Elem x, Elem y, double dx, double dy) {
        return phi_plus_tail_rate(ctx, x, y, dx, dy);
    };
    return fam;
}

/// e^{-i pi (x + y) y} Phi(y + ih) e^{i pi (1 + 1/hbar)/12}: the family built
/// from f = Phi and g = 1.
inline cplx phi_times_one_closed(const HbarContext& ctx, cplx x, cplx y)
{
    const cplx c = std::exp(I * pi * (1.0 + 1.0 / ctx.hbar) / 12.0);
    return c * std::exp(log_phi(ctx, y + cplx(0.0, ctx.strip_halfwidth)) - I * pi * (x + y) * y);
}

/// B(2 pi i (x + y) + 2 pi eps, -2 pi i y + 2 pi eps): the Euler-beta solution
/// with the -i0 / +i0 prescriptions replaced by a finite eps.
inline cplx beta_solution(double eps, cplx x, cplx y)
{
    if (!(eps > 0.0)) fail(ErrorKind::DomainError, "beta solution needs eps > 0");
    return euler_beta(2.0 * pi * I * (x + y) + 2.0 * pi * eps, -2.0 * pi * I * y + 2.0 * pi * eps);
}

inline PentagonFamily beta_family(double eps)
{
    return uniform_family(Group::reals(), [eps](Elem x, Elem y) { return beta_solution(eps, x, y); });
}

/// phi_i = 1 / (N s) on Z/N with Haar weight s per point.
inline PentagonFamily constant_solution(const Group& g)
{
    if (!g.is_finite()) fail(ErrorKind::ConfigError, "constant solution needs a finite cyclic group");
    const cplx c = 1.0 / (static_cast<double>(g.order) * g.measure_scale);
    return uniform_family(g, [c](Elem, Elem) { return c; });
}

// ---------------------------------------------------------------------------
// Construction from Faddeev-type tuples

struct ConstructionOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    double delta = 0.1;
};

namespace detail {

/// Constraints on (Im x, Im y) under which
///   int e^{2 pi i (kx x + ky y) t} a(t + ax x + ay y) c(t + cx x + cy y) dt
/// decays at both ends, read off the two tail models.
inline std::vector<StripConstraint> product_strip(const TailModel& a, const TailModel& c, double ax, double ay,
                                                  double cx, double cy, double kx, double ky)
{
    std::vector<StripConstraint> out;
    if (!a.superexp && !c.superexp) {
        // rate+ = 2 pi (kx Im x + ky Im y) + a.plus(...) + c.plus(...)
        out.push_back({2.0 * pi * kx + a.plus1 * ax + c.plus1 * cx, 2.0 * pi * ky + a.plus1 * ay + c.plus1 * cy,
                       -(a.plus0 + c.plus0)});
        out.push_back({-2.0 * pi * kx + a.minus1 * ax + c.minus1 * cx, -2.0 * pi * ky + a.minus1 * ay + c.minus1 * cy,
                       -(a.minus0 + c.minus0)});
    }
    return out;
}

} // namespace detail

/// phi_j(x, y) = int e^{2 pi i y t} f_j(t + x/2) gbar_j(t - x/2) dt with
/// gbar(w) = conj(g(conj w)). When both tuples carry Fourier transforms the
/// dual form int e^{2 pi i x t} f~_j(t - y/2) gbar~_j(t + y/2) dt is attached
/// as `alt` (with its own strip, checked on call).
inline PentagonFamily construct_from_tuples(const FaddeevTuple& f, const FaddeevTuple& g,
                                         const ConstructionOptions& opt = {})
{
    PentagonFamily fam;
    fam.group = Group::reals();
    fam.provenance = "constructed";
    fam.distributional = !(f.square_integrable && g.square_integrable);
    for (std::size_t j = 0; j < 5; ++j) {
        const AnalyticFn fj = f.f[j];
        const AnalyticFn gj = g.f[j].conjugated();
        fam.strips[j] = detail::product_strip(fj.tail, gj.tail, 0.5, 0.0, -0.5, 0.0, 0.0, 1.0);
        fam.phi[j] = [fj, gj, opt](Elem x, Elem y) {
            const std::vector<detail::Term> terms = {{&fj, 0.5 * x, +1}, {&gj, -0.5 * x, +1}};
            return detail::product_integral(terms, 0.0, y, opt.abs_tol, opt.delta, 0.0, opt.rel_tol).value;
        };
        if (f.ft[j] && g.ft[j]) {
            const AnalyticFn ftj = f.ft[j];
            const AnalyticFn gtj = g.ft[j].conjugated();
            const auto strip = detail::product_strip(ftj.tail, gtj.tail, 0.0, -0.5, 0.0, 0.5, 1.0, 0.0);
            fam.alt[j] = [ftj, gtj, opt, strip](Elem x, Elem y) {
                for (const auto& s : strip)
                    if (!s.holds(x, y)) fail(ErrorKind::OutsideStrip, "dual-form integral does not converge here");
                const std::vector<detail::Term> terms = {{&ftj, -0.5 * y, +1}, {&gtj, 0.5 * y, +1}};
                return detail::product_integral(terms, 0.0, x, opt.abs_tol, opt.delta, 0.0, opt.rel_tol).value;
            };
        }
    }
    return fam;
}

// ---------------------------------------------------------------------------
// phi^-: int Phi(x/2 + t) / Phi(x/2 - t) e^{2 pi i t y} dt

enum class PhiMinusMethod { Contour, Regulator };

struct PhiMinusOptions {
    PhiMinusMethod method = PhiMinusMethod::Contour;
    double eps = 0.04;      // largest regulator; halved `levels - 1` times
    int levels = 4;
    double abs_tol = 1e-11;
};

struct PhiMinusResult {
    cplx value;
    double err_estimate = 0.0;
    std::vector<double> eps;      // regulator values (Regulator route)
    std::vector<cplx> regulated;  // integrals at those values
};

namespace detail {

inline cplx phi_minus_integrand(const HbarContext& ctx, cplx x, cplx y, cplx t)
{
    return std::exp(log_phi(ctx, 0.5 * x + t) - log_phi(ctx, 0.5 * x - t) + 2.0 * pi * I * t * y);
}

/// Richardson extrapolation to eps -> 0 for values at eps, eps/2, eps/4, ...
/// assuming an expansion in integer powers of eps.
inline cplx richardson_halving(std::vector<cplx> v)
{
    for (std::size_t k = 1; k < v.size(); ++k) {
        const double f = std::pow(2.0, static_cast<double>(k));
        for (std::size_t j = v.size() - 1; j >= k; --j) v[j] = (f * v[j] - v[j - 1]) / (f - 1.0);
    }
    return v.back();
}

} // namespace detail

/// phi^-(x, y). The Contour route bends both ends of the real line into the
/// upper half-plane (the ratio then decays like a Gaussian); the Regulator
/// route integrates along R with e^{-eps t^2} and extrapolates eps -> 0.
inline PhiMinusResult phi_minus(const HbarContext& ctx, cplx x, cplx y, const PhiMinusOptions& opt = {})
{
    PhiMinusResult out;
    quad::Options q;
    q.abs_tol = opt.abs_tol;
    q.panel = 0.5;
    if (opt.method == PhiMinusMethod::Contour) {
        // The pole/zero cones of the ratio open upwards from +-x/2 + ih with
        // half-angle arg b, so rays below angle pi/2 - arg b stay clear.
        const double theta = std::min(0.3, 0.5 * (0.5 * pi - std::arg(ctx.b)));
        const cplx right = std::polar(1.0, theta);
        const cplx left = std::polar(1.0, pi - theta);
        quad::Contour c = quad::Contour::polyline({cplx(0.0)});
        c.from_infinity(left, quad::Decay::unknown()).to_infinity(right, quad::Decay::unknown());
        const auto r =
            quad::integrate_contour([&](cplx t) { return detail::phi_minus_integrand(ctx, x, y, t); }, c, q);
        out.value = r.value;
        out.err_estimate = r.err_estimate;
        return out;
    }
    if (!(opt.eps > 0.0) || opt.levels < 1) fail(ErrorKind::DomainError, "regulator needs eps > 0 and levels >= 1");
    q.max_extent = 1e5;
    double e = opt.eps;
    for (int k = 0; k < opt.levels; ++k, e *= 0.5) {
        const auto r = quad::integrate_line(
            [&](double t) { return std::exp(-e * t * t) * detail::phi_minus_integrand(ctx, x, y, t); },
            quad::Window::real_line(quad::Decay::gaussian(e)), q);
        out.eps.push_back(e);
        out.regulated.push_back(r.value);
        out.err_estimate = std::max(out.err_estimate, r.err_estimate);
    }
    out.value = detail::richardson_halving(out.regulated);
    if (out.regulated.size() >= 2) {
        std::vector<cplx> shorter(out.regulated.begin() + 1, out.regulated.end());
        out.err_estimate += std::abs(out.value - detail::richardson_halving(shorter));
    }
    return out;
}

inline PentagonFamily phi_minus_family(const HbarContext& ctx, const PhiMinusOptions& opt = {})
{
    PentagonFamily fam =
        uniform_family(Group::reals(), [ctx, opt](Elem x, Elem y) { return phi_minus(ctx, x, y, opt).value; });
    return fam;
}

/// int int e^{2 pi i (x v - y u)} phi^+(u, v) du dv, integrated over
/// (R + i a) x (R - i b) with 0 < b < a < 2h, where the closed form decays
/// exponentially in every direction.
inline quad::QuadResult phi_plus_fourier(const HbarContext& ctx, cplx x, cplx y, double a, double b,
                                         double abs_tol = 1e-9)
{
    const double h = ctx.strip_halfwidth;
    if (!(0.0 < b && b < a && a < 2.0 * h))
        fail(ErrorKind::OutsideStrip, "shift heights need 0 < b < a < 2h for the double transform");
    const double rate_v = pi * (2.0 * h - a);
    const double rate_u = pi * std::min(b, a - b);
    quad::Options q;
    q.abs_tol = abs_tol;
    q.panel = 1.0;
    const auto wu = quad::Window::real_line(quad::Decay::exponential(0.9 * rate_u));
    const auto wv = quad::Window::real_line(quad::Decay::exponential(0.9 * rate_v));
    return quad::integrate_2d(
        [&](double ur, double vr) {
            const cplx u(ur, a), v(vr, -b);
            return std::exp(2.0 * pi * I * (x * v - y * u)) * phi_plus_closed(ctx, u, v);
        },
        wu, wv, q);
}

// ---------------------------------------------------------------------------
// Verification of the five-term relation

struct SamplePoint {
    Elem x{}, y{}, u{}, v{};
    quad::Contour z_contour = quad::Contour::horizontal(0.0);  // R only

    /// The argument-negated sample, with the z contour mirrored.
    SamplePoint mirrored() const { return {-x, -y, -u, -v, z_contour.mirrored()}; }
};

struct PentagonOptions {
    double tol = 1e-5;
    double rel_accuracy = 0.0;  // quadrature target relative to |LHS|; 0 = min(1e-10, 1e-3 tol)
    std::size_t max_evals = 4'000'000;
};

namespace detail {

struct PentagonArgs {
    Elem x4, y4, x2, y2, x0, y0;
};

inline PentagonArgs rhs_args(const Group& g, const SamplePoint& s, Elem z)
{
    return {g.add(s.u, s.y),
            g.sub(s.v, z),
            g.sub(g.add(g.add(s.x, s.y), g.add(s.u, s.v)), z),
            z,
            g.add(s.x, s.v),
            g.sub(s.y, z)};
}

inline cplx rhs_integrand(const PentagonFamily& fam, const SamplePoint& s, Elem z)
{
    const auto a = rhs_args(fam.group, s, z);
    return fam(4, a.x4, a.y4) * fam(2, a.x2, a.y2) * fam(0, a.x0, a.y0);
}

/// Label and z-direction (dX, dY) per unit dz of each RHS factor.
struct RhsDirection {
    int label;
    double dx, dy;
};
inline constexpr std::array<RhsDirection, 3> kRhsDirections = {{{4, 0.0, -1.0}, {2, -1.0, 1.0}, {0, 0.0, -1.0}}};

inline quad::Decay end_decay(const PentagonFamily& fam, const SamplePoint& s, cplx z, double sign)
{
    if (!fam.tail_rate) return quad::Decay::unknown();
    const auto a = rhs_args(fam.group, s, z);
    const std::array<std::pair<Elem, Elem>, 3> xy = {{{a.x4, a.y4}, {a.x2, a.y2}, {a.x0, a.y0}}};
    double rate = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
        const auto& d = kRhsDirections[k];
        rate += fam.tail_rate(d.label, xy[k].first, xy[k].second, sign * d.dx, sign * d.dy);
    }
    if (!(rate > 0.0))
        fail(ErrorKind::NonConvergent, "z-integrand does not decay along the contour (rate " + std::to_string(rate) + ")");
    return quad::Decay::exponential(0.9 * rate);
}

inline void check_contour_strips(const PentagonFamily& fam, const SamplePoint& s)
{
    const auto [lo, hi] = s.z_contour.imag_range();
    for (const double im : {lo, hi}) {
        const auto a = rhs_args(fam.group, s, cplx(0.0, im));
        if (!fam.in_strip(4, a.x4, a.y4) || !fam.in_strip(2, a.x2, a.y2) || !fam.in_strip(0, a.x0, a.y0))
            fail(ErrorKind::OutsideStrip, "z contour leaves the convergence strip of an integrand factor");
    }
}

/// Integrates `integrand(z)` along the sample's z contour (or over the finite
/// group). Strip checks and tail decays come from the reduced pentagon
/// arguments of `s`, so the integrand must agree with `rhs_integrand` up to
/// rewriting its arguments.
template <class F>
quad::QuadResult rhs_integral_of(const PentagonFamily& fam, const SamplePoint& s, double abs_tol,
                                 std::size_t max_evals, F&& integrand)
{
    const Group& g = fam.group;
    if (g.kind != GroupKind::Reals) {
        quad::Options q;
        q.abs_tol = abs_tol;
        q.max_evals = max_evals;
        return haar_integrate(integrand, g, q);
    }
    check_contour_strips(fam, s);
    quad::Contour c = s.z_contour;
    const auto& head = c.head();
    const auto& tail = c.tail();
    const auto horizontal = [](const std::optional<quad::Contour::End>& e) {
        return e && std::abs(e->direction.imag()) < 1e-14;
    };
    if (horizontal(head) && horizontal(tail)) {
        c = quad::Contour::polyline(c.vertices());
        c.from_infinity(-1.0, end_decay(fam, s, s.z_contour.vertices().front(), -1.0))
            .to_infinity(1.0, end_decay(fam, s, s.z_contour.vertices().back(), 1.0));
    }
    quad::Options q;
    q.abs_tol = abs_tol;
    q.max_evals = max_evals;
    q.panel = 0.5;
    auto r = quad::integrate_contour(integrand, c, q);
    r.value *= g.measure_scale;
    r.err_estimate *= g.measure_scale;
    return r;
}

inline quad::QuadResult rhs_integral(const PentagonFamily& fam, const SamplePoint& s, double abs_tol,
                                     std::size_t max_evals)
{
    return rhs_integral_of(fam, s, abs_tol, max_evals, [&](Elem z) { return rhs_integrand(fam, s, z); });
}

} // namespace detail

inline VerificationReport verify_pentagon(const PentagonFamily& fam, const std::vector<SamplePoint>& samples,
                                          const PentagonOptions& opt = {})
{
    const auto start = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.suite = "pentagon";
    rep.tol = opt.tol;
    rep.params = {{"group", fam.group.spec()}, {"provenance", fam.provenance}};
    rep.points.resize(samples.size());
    const double rel = opt.rel_accuracy > 0.0 ? opt.rel_accuracy : std::min(1e-10, 1e-3 * opt.tol);
    parallel_for(samples.size(), [&](std::size_t k) {
        const auto& s = samples[k];
        std::vector<std::pair<std::string, cplx>> in = {{"x", s.x}, {"y", s.y}, {"u", s.u}, {"v", s.v}};
        try {
            const cplx lhs = fam(1, s.x, s.y) * fam(3, s.u, s.v);
            const auto r = detail::rhs_integral(fam, s, std::max(1e-300, std::abs(lhs) * rel), opt.max_evals);
            rep.points[k] = make_record(std::move(in), lhs, r.value, r.err_estimate);
        } catch (const Error& e) {
            rep.points[k] = error_record(std::move(in), e);
        }
    });
    rep.finalize();
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

// ---------------------------------------------------------------------------
// Sample generators

/// Imaginary offsets (a, b) with Im x = Im u = a, Im y = Im v = -b and the z
/// contour at height -b/2: every factor then lies inside its t-integral strip.
inline std::pair<double, double> phi_plus_offsets(const HbarContext& ctx)
{
    return {0.1 / ctx.sqrt_hbar, 0.05 / ctx.sqrt_hbar};
}

inline std::vector<SamplePoint> phi_plus_samples(const HbarContext& ctx, std::size_t n, std::uint64_t seed)
{
    const auto [a, b] = phi_plus_offsets(ctx);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> re(-1.0, 1.0);
    std::vector<SamplePoint> out;
    for (std::size_t k = 0; k < n; ++k) {
        SamplePoint s;
        s.x = {re(rng), a};
        s.y = {re(rng), -b};
        s.u = {re(rng), a};
        s.v = {re(rng), -b};
        s.z_contour = quad::Contour::horizontal(-0.5 * b);
        out.push_back(std::move(s));
    }
    return out;
}

/// Uniform samples on Z/N (or real samples on R along the real z line).
inline std::vector<SamplePoint> group_samples(const Group& g, std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<SamplePoint> out;
    for (std::size_t k = 0; k < n; ++k) {
        SamplePoint s;
        if (g.is_finite()) {
            std::uniform_int_distribution<std::int64_t> d(0, g.order - 1);
            s.x = static_cast<double>(d(rng));
            s.y = static_cast<double>(d(rng));
            s.u = static_cast<double>(d(rng));
            s.v = static_cast<double>(d(rng));
        } else {
            std::uniform_real_distribution<double> d(-1.0, 1.0);
            s.x = d(rng);
            s.y = d(rng);
            s.u = d(rng);
            s.v = d(rng);
        }
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace betapenta
