#pragma once

// Complex log-gamma (Lanczos, g = 7, nine terms) and the Euler beta function.

#include <array>
#include <cmath>
#include <complex>

#include "betapenta/cmath.hpp"
#include "betapenta/error.hpp"

namespace betapenta {

namespace detail {

inline constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

/// log sin(pi z), stable for large |Im z|.
inline cplx log_sin_pi(cplx z)
{
    if (std::abs(z.imag()) < 5.0) return std::log(std::sin(pi * z));
    if (z.imag() > 0.0) return -I * pi * z + std::log(expm1(2.0 * pi * I * z) / (2.0 * I));
    return I * pi * z + std::log(-expm1(-2.0 * pi * I * z) / (2.0 * I));
}

} // namespace detail

/// A branch of log Gamma(z); exp(log_gamma(z)) = Gamma(z). Non-positive integers
/// raise PoleHit.
inline cplx log_gamma(cplx z)
{
    const double nearest = std::round(z.real());
    if (nearest <= 0.0 && std::abs(z - nearest) < 1e-12) fail(ErrorKind::PoleHit, "Gamma has a pole here");
    if (z.real() < 0.5) {
        // Reflection: Gamma(z) Gamma(1 - z) = pi / sin(pi z).
        return std::log(pi) - detail::log_sin_pi(z) - log_gamma(1.0 - z);
    }
    const cplx zz = z - 1.0;
    cplx x = detail::kLanczos[0];
    for (int k = 1; k < 9; ++k) x += detail::kLanczos[static_cast<std::size_t>(k)] / (zz + static_cast<double>(k));
    const cplx t = zz + 7.5;
    return 0.5 * std::log(2.0 * pi) + (zz + 0.5) * std::log(t) - t + std::log(x);
}

inline cplx complex_gamma(cplx z) { return std::exp(log_gamma(z)); }

/// B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b).
inline cplx euler_beta(cplx a, cplx b) { return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b)); }

} // namespace betapenta
