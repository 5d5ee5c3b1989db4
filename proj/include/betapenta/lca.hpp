#pragma once

// The four locally compact abelian groups used throughout (R, Z/N, Z, R/Z),
// their Haar measures, Pontryagin duals and characters.
//
// Group elements are carried as complex numbers: the real part holds the
// value (an integer for Z/N and Z, a real reduced mod 1 for R/Z) and the
// imaginary part is only ever non-zero for R, where samples are complexified
// to reach the convergence strips of the integral families.

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "betapenta/cmath.hpp"
#include "betapenta/error.hpp"
#include "betapenta/quad.hpp"

namespace betapenta {

using Elem = cplx;

enum class GroupKind { Reals, Cyclic, Integers, Circle };

struct Group {
    GroupKind kind = GroupKind::Reals;
    std::int64_t order = 0;      // N for Cyclic, 0 otherwise
    double measure_scale = 1.0;  // Haar measure = scale * (Lebesgue | counting)

    static Group reals(double scale = 1.0) { return make(GroupKind::Reals, 0, scale); }
    static Group cyclic(std::int64_t n, double scale = 1.0)
    {
        if (n < 1) fail(ErrorKind::DomainError, "cyclic group order must be at least 1");
        return make(GroupKind::Cyclic, n, scale);
    }
    static Group integers(double scale = 1.0) { return make(GroupKind::Integers, 0, scale); }
    static Group circle(double scale = 1.0) { return make(GroupKind::Circle, 0, scale); }

    bool is_finite() const { return kind == GroupKind::Cyclic; }
    bool is_discrete() const { return kind == GroupKind::Cyclic || kind == GroupKind::Integers; }

    Elem reduce(Elem x) const
    {
        switch (kind) {
        case GroupKind::Reals: return x;
        case GroupKind::Cyclic: {
            auto n = static_cast<std::int64_t>(std::llround(x.real())) % order;
            if (n < 0) n += order;
            return static_cast<double>(n);
        }
        case GroupKind::Integers: return std::round(x.real());
        case GroupKind::Circle: {
            double r = x.real() - std::floor(x.real());
            if (r >= 1.0) r = 0.0;
            return r;
        }
        }
        return x;
    }

    Elem identity() const { return 0.0; }
    Elem add(Elem a, Elem b) const { return reduce(a + b); }
    Elem sub(Elem a, Elem b) const { return reduce(a - b); }
    Elem neg(Elem a) const { return reduce(-a); }

    /// Elements of a finite group in canonical order.
    std::vector<Elem> elements() const
    {
        if (!is_finite()) fail(ErrorKind::DomainError, "only finite groups can be enumerated");
        std::vector<Elem> out;
        out.reserve(static_cast<std::size_t>(order));
        for (std::int64_t k = 0; k < order; ++k) out.emplace_back(static_cast<double>(k));
        return out;
    }

    /// Group spec string understood by parse_group.
    std::string spec() const
    {
        std::ostringstream os;
        switch (kind) {
        case GroupKind::Reals: os << "r"; break;
        case GroupKind::Cyclic: os << "zn:" << order; break;
        case GroupKind::Integers: os << "z"; break;
        case GroupKind::Circle: os << "t"; break;
        }
        if (measure_scale != 1.0) os << ":scale=" << measure_scale;
        return os.str();
    }

    bool operator==(const Group&) const = default;

private:
    static Group make(GroupKind k, std::int64_t n, double scale)
    {
        if (!(scale > 0.0) || !std::isfinite(scale)) fail(ErrorKind::DomainError, "measure scale must be positive");
        Group g;
        g.kind = k;
        g.order = n;
        g.measure_scale = scale;
        return g;
    }
};

/// Pontryagin dual with the measure that makes Fourier inversion hold for the
/// kernel e^{2 pi i <x, xi>}.
inline Group dual(const Group& g)
{
    switch (g.kind) {
    case GroupKind::Reals: return Group::reals(1.0 / g.measure_scale);
    case GroupKind::Cyclic: return Group::cyclic(g.order, 1.0 / (static_cast<double>(g.order) * g.measure_scale));
    case GroupKind::Integers: return Group::circle(1.0 / g.measure_scale);
    case GroupKind::Circle: return Group::integers(1.0 / g.measure_scale);
    }
    return g;
}

/// Parses `r`, `zn:<N>`, `z`, `t`, each optionally followed by `:scale=<s>`.
inline Group parse_group(const std::string& text)
{
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.empty()) fail(ErrorKind::ConfigError, "empty group spec");
    double scale = 1.0;
    std::optional<std::int64_t> n;
    const auto parse_number = [&](const std::string& s, auto& out) {
        std::istringstream is(s);
        is >> out;
        if (!is || !is.eof()) fail(ErrorKind::ConfigError, "bad number '" + s + "' in group spec '" + text + "'");
    };
    std::size_t i = 1;
    if (parts[0] == "zn") {
        if (parts.size() < 2) fail(ErrorKind::ConfigError, "zn needs an order, e.g. zn:4");
        std::int64_t v = 0;
        parse_number(parts[1], v);
        n = v;
        i = 2;
    }
    for (; i < parts.size(); ++i) {
        if (parts[i].rfind("scale=", 0) != 0) fail(ErrorKind::ConfigError, "unknown group option '" + parts[i] + "'");
        parse_number(parts[i].substr(6), scale);
    }
    if (!(scale > 0.0) || !std::isfinite(scale)) fail(ErrorKind::ConfigError, "group scale must be positive");
    if (parts[0] == "r") return Group::reals(scale);
    if (parts[0] == "z") return Group::integers(scale);
    if (parts[0] == "t") return Group::circle(scale);
    if (parts[0] == "zn") {
        if (*n < 1) fail(ErrorKind::ConfigError, "zn order must be at least 1");
        return Group::cyclic(*n, scale);
    }
    fail(ErrorKind::ConfigError, "unknown group '" + parts[0] + "'");
}

/// The duality pairing <x, xi> between A and its dual, as a unit complex number.
inline cplx pairing(const Group& g, Elem x, Elem xi)
{
    switch (g.kind) {
    case GroupKind::Cyclic: {
        const auto n = static_cast<std::int64_t>(std::llround(x.real()));
        const auto k = static_cast<std::int64_t>(std::llround(xi.real()));
        const std::int64_t r = ((n * k) % g.order + g.order) % g.order;
        return cexp_i(2.0 * pi * static_cast<double>(r) / static_cast<double>(g.order));
    }
    case GroupKind::Reals: return std::exp(2.0 * pi * I * x * xi);
    case GroupKind::Integers:
    case GroupKind::Circle: {
        // Integer times real: reduce the product mod 1 before exponentiating.
        const double p = x.real() * xi.real();
        return cexp_i(2.0 * pi * (p - std::floor(p)));
    }
    }
    return 1.0;
}

/// A character of `group`, stored by its parameter in the dual group.
struct Character {
    Group group;
    Elem parameter;

    cplx operator()(Elem x) const { return pairing(group, x, parameter); }
    Character inverse() const { return {group, dual(group).neg(parameter)}; }
    Character operator*(const Character& o) const { return {group, dual(group).add(parameter, o.parameter)}; }
    bool operator==(const Character& o) const { return group == o.group && parameter == o.parameter; }
};

/// Integral against the Haar measure. Finite groups are summed exactly; Z is
/// summed outward until the terms fall below the tolerance; R and R/Z use
/// adaptive quadrature (R with the supplied window hints).
template <class F>
quad::QuadResult haar_integrate(F&& f, const Group& g, const quad::Options& opt = {},
                                const quad::Window& window = quad::Window::real_line())
{
    switch (g.kind) {
    case GroupKind::Cyclic: {
        cplx s = 0.0;
        for (std::int64_t k = 0; k < g.order; ++k) s += cplx(f(Elem(static_cast<double>(k))));
        return {s * g.measure_scale, 0.0, static_cast<std::size_t>(g.order)};
    }
    case GroupKind::Integers: {
        cplx s = cplx(f(Elem(0.0)));
        std::size_t evals = 1;
        int quiet = 0;
        for (std::int64_t m = 1;; ++m) {
            const cplx a = f(Elem(static_cast<double>(m))), b = f(Elem(static_cast<double>(-m)));
            evals += 2;
            s += a + b;
            const double mag = std::abs(a) + std::abs(b);
            quiet = (mag <= 0.01 * opt.abs_tol) ? quiet + 1 : 0;
            if (quiet >= 8) break;
            if (m > 1'000'000) fail(ErrorKind::NonConvergent, "lattice sum does not converge");
        }
        return {s * g.measure_scale, opt.abs_tol, evals};
    }
    case GroupKind::Circle: {
        auto r = quad::integrate_line([&](double x) { return cplx(f(Elem(x))); }, quad::Window::interval(0.0, 1.0), opt);
        r.value *= g.measure_scale;
        r.err_estimate *= g.measure_scale;
        return r;
    }
    case GroupKind::Reals: {
        auto r = quad::integrate_line([&](double x) { return cplx(f(Elem(x))); }, window, opt);
        r.value *= g.measure_scale;
        r.err_estimate *= g.measure_scale;
        return r;
    }
    }
    return {};
}

} // namespace betapenta
