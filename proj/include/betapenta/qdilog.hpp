#pragma once

// Faddeev's quantum dilogarithm Phi_hbar: contour-integral and q-product
// evaluators, the ladder continuation outside the integral's strip, and the
// normalized companion Psi_hbar.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>

#include "betapenta/cmath.hpp"
#include "betapenta/error.hpp"
#include "betapenta/quad.hpp"

namespace betapenta {

enum class EvalMethod { Integral, Product, Auto };

inline std::string to_string(EvalMethod m)
{
    switch (m) {
    case EvalMethod::Integral: return "integral";
    case EvalMethod::Product: return "product";
    case EvalMethod::Auto: return "auto";
    }
    return "auto";
}

struct HbarContext {
    double hbar = 0.0;
    cplx b{};
    cplx q{};     // e^{i pi b^2}
    cplx qbar{};  // e^{-i pi b^{-2}}
    double sqrt_hbar = 0.0;
    double strip_halfwidth = 0.0;
    double contour_offset = 0.0;
    cplx phi_zero{};  // Phi_hbar(0), fixed by direct evaluation

    bool product_available() const { return std::abs(q) < 1.0 && std::abs(qbar) < 1.0; }

    /// Height of the lowest pole of the integral representation's integrand.
    double nearest_pole_height() const { return pi * std::min(b.real(), (1.0 / b).real()); }
};

/// Result of a Phi evaluation with diagnostics.
struct PhiValue {
    cplx log_value{};  // a branch of log Phi (value = exp(log_value))
    EvalMethod method = EvalMethod::Auto;
    int ladder_steps = 0;
    double quad_err = 0.0;

    cplx value() const { return std::exp(log_value); }
};

namespace detail {

inline cplx integral_log_phi(const HbarContext& ctx, cplx x, double* err = nullptr)
{
    if (!(std::abs(x.imag()) < ctx.strip_halfwidth))
        fail(ErrorKind::OutsideStrip, "integral representation needs |Im x| < " + std::to_string(ctx.strip_halfwidth));
    const cplx b = ctx.b, binv = 1.0 / b;
    const cplx s = b + binv;
    auto integrand = [=](cplx z) -> cplx {
        // e^{-2ixz} / (4 sinh(zb) sinh(z/b) z), rewritten with decaying exponentials.
        if (z.real() >= 0.0) {
            const cplx num = std::exp(-2.0 * I * x * z - z * s);
            return num / (expm1(-2.0 * z * b) * expm1(-2.0 * z * binv) * z);
        }
        const cplx num = std::exp(-2.0 * I * x * z + z * s);
        return num / (expm1(2.0 * z * b) * expm1(2.0 * z * binv) * z);
    };
    const double rate = 1.0 / ctx.sqrt_hbar - 2.0 * std::abs(x.imag());
    const auto decay = quad::Decay::exponential(rate);
    quad::Options opt;
    // Cancellation near z = 0 grows like 1/eps^2 as the contour approaches the real axis.
    opt.abs_tol = std::max(1e-13, 1e-15 / (ctx.contour_offset * ctx.contour_offset));
    opt.panel = std::min(1.0, 2.0 / (1.0 + std::abs(x.real())));
    const auto r = quad::integrate_contour(integrand, quad::Contour::horizontal(ctx.contour_offset, decay, decay), opt);
    if (err) *err = r.err_estimate;
    return r.value;
}

// sum_{n>=0} log(1 + e^{t0 + n*step}); Re step < 0. Returns nullopt-like flag on exact zero factor.
struct LogProduct {
    cplx value{};
    bool has_zero = false;
};

inline LogProduct log_product(cplx t0, cplx step, double tol)
{
    const double ratio = std::exp(step.real());
    LogProduct out;
    cplx t = t0;
    for (int n = 0; n < 1'000'000; ++n, t += step) {
        const cplx w = std::exp(t);
        if (std::abs(1.0 + w) < 1e-300 || (t.real() > -1.0 && std::abs(1.0 + w) < 1e-14 * std::max(1.0, std::abs(w)))) {
            out.has_zero = true;
            return out;
        }
        out.value += log1pexp(t);
        if (t.real() < 0.0 && std::abs(w) < tol * (1.0 - ratio)) return out;
    }
    fail(ErrorKind::NonConvergent, "q-product did not converge");
}

inline cplx product_log_phi(const HbarContext& ctx, cplx x)
{
    if (!ctx.product_available())
        fail(ErrorKind::DomainError, "product representation needs hbar > 1/4 (|q| < 1)");
    const cplx b = ctx.b, binv = 1.0 / b;
    const double tol = 1e-17;
    // (-q e^{2 pi b x}; q^2)_inf: factors 1 + e^{(2n+1) i pi b^2 + 2 pi b x}
    const LogProduct num = log_product(I * pi * b * b + 2.0 * pi * b * x, 2.0 * I * pi * b * b, tol);
    // (-qbar e^{2 pi x/b}; qbar^2)_inf: factors 1 + e^{-(2n+1) i pi b^{-2} + 2 pi x/b}
    const LogProduct den = log_product(-I * pi * binv * binv + 2.0 * pi * binv * x, -2.0 * I * pi * binv * binv, tol);
    if (den.has_zero) fail(ErrorKind::PoleHit, "Phi has a pole at the requested point");
    if (num.has_zero) return {-std::numeric_limits<double>::infinity(), 0.0};
    return num.value - den.value;
}

} // namespace detail

/// Builds the context for a given hbar. contour_offset defaults to
/// min(1/10, nearest pole height / 4).
inline HbarContext make_context(double hbar, std::optional<double> contour_offset = std::nullopt)
{
    if (!(hbar > 0.0) || !std::isfinite(hbar)) fail(ErrorKind::DomainError, "hbar must be positive and finite");
    HbarContext ctx;
    ctx.hbar = hbar;
    const double s = 1.0 / std::sqrt(hbar);
    if (hbar <= 0.25) {
        ctx.b = (s - std::sqrt(std::max(0.0, s * s - 4.0))) / 2.0;
    } else {
        ctx.b = cplx(s / 2.0, std::sqrt(4.0 - s * s) / 2.0);
    }
    ctx.q = std::exp(I * pi * ctx.b * ctx.b);
    ctx.qbar = std::exp(-I * pi / (ctx.b * ctx.b));
    ctx.sqrt_hbar = std::sqrt(hbar);
    ctx.strip_halfwidth = 0.5 * s;
    const double pole = ctx.nearest_pole_height();
    ctx.contour_offset = contour_offset.value_or(std::min(0.1, pole / 4.0));
    if (!(ctx.contour_offset > 0.0) || !(ctx.contour_offset < pole))
        fail(ErrorKind::DomainError, "contour offset must lie strictly between 0 and the nearest pole height");
    ctx.phi_zero = std::exp(detail::integral_log_phi(ctx, 0.0));
    return ctx;
}

/// The same hbar with the root b replaced by 1/b (Phi is symmetric under this swap).
inline HbarContext swapped_root(const HbarContext& ctx)
{
    HbarContext out = ctx;
    out.b = 1.0 / ctx.b;
    out.q = std::exp(I * pi * out.b * out.b);
    out.qbar = std::exp(-I * pi / (out.b * out.b));
    return out;
}

/// (x; q)_inf = prod_{n>=0} (1 - x q^n).
inline cplx pochhammer_inf(cplx x, cplx q, double tol = 1e-17)
{
    const double aq = std::abs(q);
    if (!(aq < 1.0)) fail(ErrorKind::DivergentParameter, "pochhammer needs |q| < 1");
    cplx prod = 1.0, xn = x;
    for (int n = 0; n < 10'000'000; ++n) {
        prod *= 1.0 - xn;
        if (std::abs(xn) < tol * (1.0 - aq) || prod == 0.0) return prod;
        xn *= q;
    }
    fail(ErrorKind::NonConvergent, "pochhammer product did not converge");
}

/// Full evaluation with diagnostics. Auto prefers the product form and falls
/// back to the integral, continued by the functional equations when x lies
/// outside the integral's strip.
inline PhiValue phi_eval_detailed(const HbarContext& ctx, cplx x, EvalMethod method = EvalMethod::Auto)
{
    PhiValue out;
    if (method == EvalMethod::Product || (method == EvalMethod::Auto && ctx.product_available())) {
        out.method = EvalMethod::Product;
        out.log_value = detail::product_log_phi(ctx, x);
        return out;
    }
    out.method = EvalMethod::Integral;
    const double h = ctx.strip_halfwidth;
    if (method == EvalMethod::Integral || std::abs(x.imag()) < 0.5 * h) {
        out.log_value = detail::integral_log_phi(ctx, x, &out.quad_err);
        return out;
    }
    // Ladder: Phi(w) = Phi(w - ic) / (1 + e^{2 pi c w - i pi c^2}) for c in {b, 1/b},
    // applied (or inverted) until w is well inside the strip.
    const cplx big = (std::abs(ctx.b) <= 1.0) ? 1.0 / ctx.b : ctx.b;
    const cplx small = (std::abs(ctx.b) <= 1.0) ? ctx.b : 1.0 / ctx.b;
    const double target = 0.5 * h;
    cplx w = x, acc = 0.0;
    int steps = 0;
    while (std::abs(w.imag()) > target) {
        if (++steps > 64) fail(ErrorKind::OutsideStrip, "ladder continuation exceeded 64 steps");
        const double dir = w.imag() > 0.0 ? 1.0 : -1.0;
        const cplx c = (dir * w.imag() - big.real() >= -target) ? big : small;
        if (dir > 0.0) {
            const cplx t = 2.0 * pi * c * w - I * pi * c * c;
            if (std::abs(1.0 + std::exp(t)) < 1e-14) fail(ErrorKind::PoleHit, "Phi has a pole at the requested point");
            acc -= log1pexp(t);
            w -= I * c;
        } else {
            const cplx t = 2.0 * pi * c * w + I * pi * c * c;
            if (std::abs(1.0 + std::exp(t)) < 1e-14) {
                out.log_value = {-std::numeric_limits<double>::infinity(), 0.0};
                out.ladder_steps = steps;
                return out;
            }
            acc += log1pexp(t);
            w += I * c;
        }
    }
    out.log_value = acc + detail::integral_log_phi(ctx, w, &out.quad_err);
    out.ladder_steps = steps;
    return out;
}

inline cplx phi_eval(const HbarContext& ctx, cplx x, EvalMethod method = EvalMethod::Auto)
{
    return phi_eval_detailed(ctx, x, method).value();
}

inline cplx log_phi(const HbarContext& ctx, cplx x, EvalMethod method = EvalMethod::Auto)
{
    return phi_eval_detailed(ctx, x, method).log_value;
}

/// Psi(x) = Phi(x) / Phi(0) * e^{-i pi x^2 / 2}.
inline cplx psi_eval(const HbarContext& ctx, cplx x, EvalMethod method = EvalMethod::Auto)
{
    return std::exp(log_phi(ctx, x, method) - I * pi * x * x / 2.0) / ctx.phi_zero;
}

} // namespace betapenta
