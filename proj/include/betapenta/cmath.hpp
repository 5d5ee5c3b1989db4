#pragma once

// Small complex helpers shared across the library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace betapenta {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

/// log(1+w) without cancellation for small |w|.
inline cplx log1p(cplx w)
{
    if (std::abs(w) < 1e-3) {
        // Alternating series; seven terms reach ~1e-21 relative at |w| = 1e-3.
        cplx term = w, sum = 0.0;
        for (int k = 1; k <= 7; ++k) {
            sum += term / static_cast<double>(k);
            term *= -w;
        }
        return sum;
    }
    return std::log(1.0 + w);
}

/// e^w - 1 without cancellation for small |w|.
inline cplx expm1(cplx w)
{
    const double x = w.real(), y = w.imag();
    const double s = std::sin(0.5 * y);
    return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

/// log(1+e^t), stable when e^t is huge or tiny.
inline cplx log1pexp(cplx t)
{
    if (t.real() > 0.0) return t + log1p(std::exp(-t));
    return log1p(std::exp(t));
}

inline cplx cexp_i(double phase) { return {std::cos(phase), std::sin(phase)}; }

inline double rel_err(cplx a, cplx b)
{
    const double d = std::abs(a - b);
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : d / s;
}

} // namespace betapenta
