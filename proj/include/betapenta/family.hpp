#pragma once

// Five-function families phi_0..phi_4 : A x A -> C together with the
// evaluation-domain metadata needed to integrate them, plus the two
// structure-preserving operations: argument inversion and the symplectic
// Fourier transform onto the dual group.

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "betapenta/lca.hpp"

namespace betapenta {

/// cx * Im X + cy * Im Y > bound (strict).
struct StripConstraint {
    double cx = 0.0;
    double cy = 0.0;
    double bound = 0.0;

    bool holds(Elem x, Elem y) const { return cx * x.imag() + cy * y.imag() > bound; }
};

using FamilyFn = std::function<cplx(Elem, Elem)>;

/// Exponential decay rate of |phi_i(X + dX t, Y + dY t)| as t -> +inf for real
/// directions (dX, dY); +inf means faster than any exponential, values <= 0
/// mean no decay.
using TailRateFn = std::function<double(int, Elem, Elem, double, double)>;

struct PentagonFamily {
    Group group;
    std::array<FamilyFn, 5> phi;
    std::array<std::vector<StripConstraint>, 5> strips;  // only meaningful over R
    TailRateFn tail_rate;                                 // optional, R only
    std::array<FamilyFn, 5> alt;                          // optional independent evaluator
    std::string provenance = "closed-form";              // constructed | closed-form | transformed
    bool distributional = false;

    /// Evaluates phi_i after checking the strip metadata.
    cplx operator()(int i, Elem x, Elem y) const
    {
        for (const auto& s : strips.at(static_cast<std::size_t>(i))) {
            if (!s.holds(x, y)) {
                std::ostringstream os;
                os << "phi_" << i << " at Im x=" << x.imag() << ", Im y=" << y.imag() << " violates " << s.cx
                   << "*Im x + " << s.cy << "*Im y > " << s.bound;
                fail(ErrorKind::OutsideStrip, os.str());
            }
        }
        return phi[static_cast<std::size_t>(i)](group.reduce(x), group.reduce(y));
    }

    bool in_strip(int i, Elem x, Elem y) const
    {
        for (const auto& s : strips.at(static_cast<std::size_t>(i)))
            if (!s.holds(x, y)) return false;
        return true;
    }
};

/// Same function for all five labels.
inline PentagonFamily uniform_family(Group g, FamilyFn f, std::string provenance = "closed-form")
{
    PentagonFamily fam;
    fam.group = g;
    for (auto& p : fam.phi) p = f;
    fam.provenance = std::move(provenance);
    return fam;
}

inline PentagonFamily zero_family(Group g)
{
    return uniform_family(g, [](Elem, Elem) { return cplx(0.0); });
}

/// phi'_i(x, y) = phi_i(-x, -y).
inline PentagonFamily symmetry_invert(const PentagonFamily& fam)
{
    PentagonFamily out = fam;
    const Group g = fam.group;
    for (std::size_t i = 0; i < 5; ++i) {
        out.phi[i] = [f = fam.phi[i], g](Elem x, Elem y) { return f(g.neg(x), g.neg(y)); };
        for (auto& s : out.strips[i]) {
            s.cx = -s.cx;
            s.cy = -s.cy;
        }
    }
    if (fam.tail_rate) {
        out.tail_rate = [t = fam.tail_rate](int i, Elem x, Elem y, double dx, double dy) {
            return t(i, -x, -y, -dx, -dy);
        };
    }
    for (std::size_t i = 0; i < 5; ++i) {
        if (fam.alt[i]) out.alt[i] = [f = fam.alt[i], g](Elem x, Elem y) { return f(g.neg(x), g.neg(y)); };
    }
    out.provenance = "transformed";
    return out;
}

struct FourierOptions {
    quad::Options quad{};
    quad::Window wx = quad::Window::real_line();
    quad::Window wy = quad::Window::real_line();
};

/// phi^_i(xi, eta) = int_{A^2} xi(y) conj(eta(x)) phi_i(x, y) dx dy, a family
/// over the dual group. Finite groups are transformed exactly (tables are
/// computed once); other groups integrate on demand.
inline PentagonFamily fourier_family(const PentagonFamily& fam, const FourierOptions& opt = {})
{
    if (fam.distributional)
        fail(ErrorKind::NotIntegrable, "family is declared distributional; its Fourier transform is not a function");
    const Group g = fam.group;
    const Group d = dual(g);
    PentagonFamily out;
    out.group = d;
    out.provenance = "transformed";
    if (g.is_finite()) {
        const auto n = static_cast<std::size_t>(g.order);
        const double w = g.measure_scale;
        for (std::size_t i = 0; i < 5; ++i) {
            // Separable double DFT: first over y, then over x.
            std::vector<cplx> vals(n * n), half(n * n), table(n * n);
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t y = 0; y < n; ++y)
                    vals[x * n + y] = fam(static_cast<int>(i), static_cast<double>(x), static_cast<double>(y));
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t xi = 0; xi < n; ++xi) {
                    cplx s = 0.0;
                    for (std::size_t y = 0; y < n; ++y)
                        s += pairing(g, static_cast<double>(y), static_cast<double>(xi)) * vals[x * n + y];
                    half[x * n + xi] = s * w;
                }
            for (std::size_t xi = 0; xi < n; ++xi)
                for (std::size_t eta = 0; eta < n; ++eta) {
                    cplx s = 0.0;
                    for (std::size_t x = 0; x < n; ++x)
                        s += std::conj(pairing(g, static_cast<double>(x), static_cast<double>(eta))) * half[x * n + xi];
                    table[xi * n + eta] = s * w;
                }
            // Entries within the summation rounding bound of zero are zero.
            double mass = 0.0;
            for (const auto& v : vals) mass += std::abs(v);
            const double noise = 8.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon() * w * w * mass;
            for (auto& v : table)
                if (std::abs(v) <= noise) v = 0.0;
            auto shared = std::make_shared<const std::vector<cplx>>(std::move(table));
            out.phi[i] = [shared, n](Elem xi, Elem eta) {
                const auto a = static_cast<std::size_t>(std::llround(xi.real()));
                const auto b = static_cast<std::size_t>(std::llround(eta.real()));
                return (*shared)[a * n + b];
            };
        }
        return out;
    }
    for (std::size_t i = 0; i < 5; ++i) {
        out.phi[i] = [fam, g, opt, i](Elem xi, Elem eta) {
            auto inner = [&](Elem x) {
                return std::conj(pairing(g, x, eta)) *
                       haar_integrate([&](Elem y) { return pairing(g, y, xi) * fam(static_cast<int>(i), x, y); }, g,
                                      opt.quad, opt.wy)
                           .value;
            };
            return haar_integrate(inner, g, opt.quad, opt.wx).value;
        };
    }
    return out;
}

} // namespace betapenta
