#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "betapenta/quad.hpp"

using namespace betapenta::quad;
using betapenta::Error;
using betapenta::ErrorKind;
using cd = std::complex<double>;

namespace {

constexpr double kPi = 3.14159265358979323846;

ErrorKind kind_of(const std::function<void()>& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected an Error";
    return ErrorKind::ConfigError;
}

} // namespace

TEST(Quad, GaussianOnRealLine)
{
    const auto r = integrate_line([](double x) { return cd(std::exp(-kPi * x * x)); },
                                  Window::real_line(Decay::gaussian(kPi)));
    EXPECT_NEAR(std::abs(r.value - 1.0), 0.0, 1e-12);
    EXPECT_GE(r.err_estimate, 0.0);
    EXPECT_GE(r.evaluations, 1u);
}

TEST(Quad, UnitIntervalOfOne)
{
    const auto r = integrate_line([](double) { return cd(1.0); }, Window::interval(0.0, 1.0));
    EXPECT_NEAR(r.value.real(), 1.0, 1e-15);
    EXPECT_EQ(r.value.imag(), 0.0);
}

TEST(Quad, ReversedIntervalFlipsSign)
{
    const auto r = integrate_line([](double x) { return cd(x * x); }, Window::interval(2.0, 0.0));
    EXPECT_NEAR(r.value.real(), -8.0 / 3.0, 1e-13);
}

TEST(Quad, HalfLineExponential)
{
    Window w{0.0, std::numeric_limits<double>::infinity(), 0.0, {}, Decay::exponential(1.0)};
    const auto r = integrate_line([](double x) { return cd(std::exp(-x)); }, w);
    EXPECT_NEAR(r.value.real(), 1.0, 1e-12);
}

TEST(Quad, UnknownDecayIsMeasured)
{
    const auto r = integrate_line([](double x) { return cd(1.0 / std::cosh(x)); }, Window::real_line());
    EXPECT_NEAR(r.value.real(), kPi, 1e-11);
}

// Fresnel integral: the regulated value sqrt(pi/(eps - i pi)) tends to e^{i pi/4};
// independently, rotating the contour onto e^{i pi/4} R turns it into a Gaussian.
TEST(Quad, FresnelRegulatedMatchesRotatedContour)
{
    const double eps = 0.05;
    const auto reg = integrate_line(
        [eps](double x) { return std::exp(cd(-eps * x * x, kPi * x * x)); }, Window::real_line(Decay::gaussian(eps)));
    EXPECT_NEAR(std::abs(reg.value - std::sqrt(cd(kPi, 0.0) / cd(eps, -kPi))), 0.0, 1e-10);

    const cd dir = std::polar(1.0, kPi / 4.0);
    Contour rotated = Contour::polyline({0.0});
    rotated.from_infinity(-dir, Decay::gaussian(kPi)).to_infinity(dir, Decay::gaussian(kPi));
    const auto rot = integrate_contour([](cd z) { return std::exp(cd(0.0, kPi) * z * z); }, rotated);
    EXPECT_NEAR(std::abs(rot.value - dir), 0.0, 1e-12);

    // Richardson in eps (error is O(eps)) approaches the rotated value.
    const auto reg2 = integrate_line(
        [eps](double x) { return std::exp(cd(-0.5 * eps * x * x, kPi * x * x)); },
        Window::real_line(Decay::gaussian(0.5 * eps)));
    const cd extrap = 2.0 * reg2.value - reg.value;
    EXPECT_LT(std::abs(extrap - dir), std::abs(reg.value - dir));
}

TEST(Quad, SegmentOfIdentity)
{
    const auto r = integrate_contour([](cd z) { return z; }, Contour::segment(0.0, 1.0));
    EXPECT_NEAR(std::abs(r.value - 0.5), 0.0, 1e-15);
}

TEST(Quad, ContourShiftInvariance)
{
    for (double c : {-1.0, -0.4, 0.1, 0.5, 1.0}) {
        const auto r = integrate_contour([](cd z) { return std::exp(-kPi * z * z); },
                                         Contour::horizontal(c, Decay::gaussian(kPi), Decay::gaussian(kPi)));
        EXPECT_NEAR(std::abs(r.value - 1.0), 0.0, 1e-11) << "c=" << c;
    }
}

TEST(Quad, ClosedLoopOfEntireFunctionVanishes)
{
    const auto r = integrate_contour([](cd z) { return std::exp(z) * std::cos(z); },
                                     Contour::polyline({0.0, 1.0, cd(1.0, 1.0), cd(0.0, 1.0), 0.0}));
    EXPECT_LT(std::abs(r.value), 1e-13);
}

TEST(Quad, MirroredContourKeepsOrientation)
{
    Contour c = Contour::polyline({cd(-1.0, 0.0), cd(0.0, 0.5), cd(1.0, 0.0)});
    c.from_infinity(-1.0, Decay::gaussian(1.0)).to_infinity(1.0, Decay::gaussian(1.0));
    auto f = [](cd z) { return std::exp(-z * z + cd(0.0, 0.3) * z); };
    auto g = [&](cd z) { return f(-z); };
    const auto a = integrate_contour(f, c);
    const auto b = integrate_contour(g, c.mirrored());
    EXPECT_NEAR(std::abs(a.value - b.value), 0.0, 1e-12);
}

TEST(Quad, ZeroLengthWindow)
{
    int calls = 0;
    const auto r = integrate_line([&](double) { ++calls; return cd(3.0); }, Window::interval(2.0, 2.0));
    EXPECT_EQ(r.value, cd(0.0));
    EXPECT_EQ(r.err_estimate, 0.0);
    EXPECT_EQ(r.evaluations, 1u);
    EXPECT_EQ(calls, 1);
}

TEST(Quad, NonDecayingTailRejected)
{
    Options opt;
    opt.max_extent = 200.0;
    EXPECT_EQ(kind_of([&] {
                  integrate_line([](double x) { return std::exp(cd(0.0, kPi * x * x)); }, Window::real_line(), opt);
              }),
              ErrorKind::NonConvergent);
    EXPECT_EQ(kind_of([&] {
                  integrate_line([](double x) { return cd(1.0 / (1.0 + std::abs(x))); }, Window::real_line(), opt);
              }),
              ErrorKind::NonConvergent);
}

TEST(Quad, ThrowingIntegrandIsDomainError)
{
    EXPECT_EQ(kind_of([] {
                  integrate_line(
                      [](double x) -> cd {
                          if (x > 0.5) throw std::runtime_error("boom");
                          return 1.0;
                      },
                      Window::interval(0.0, 1.0));
              }),
              ErrorKind::DomainError);
    EXPECT_EQ(kind_of([] { integrate_line([](double x) { return cd(1.0 / (x - x)); }, Window::interval(0.0, 1.0)); }),
              ErrorKind::DomainError);
}

TEST(Quad, BudgetExhaustionIsNonConvergent)
{
    Options opt;
    opt.max_evals = 200;
    opt.abs_tol = 1e-15;
    EXPECT_EQ(kind_of([&] {
                  integrate_line([](double x) { return cd(std::sin(200.0 * x) * std::sqrt(x)); },
                                 Window::interval(0.0, 10.0), opt);
              }),
              ErrorKind::NonConvergent);
}

TEST(Quad, DoubleIntegrals)
{
    const auto g = integrate_2d([](double x, double y) { return cd(std::exp(-kPi * (x * x + y * y))); },
                                Window::real_line(Decay::gaussian(kPi)), Window::real_line(Decay::gaussian(kPi)));
    EXPECT_NEAR(std::abs(g.value - 1.0), 0.0, 1e-11);
    const auto sq = integrate_2d([](double, double) { return cd(1.0); }, Window::interval(0, 1), Window::interval(0, 1));
    EXPECT_NEAR(std::abs(sq.value - 1.0), 0.0, 1e-14);
}

// Property: linearity within the summed error estimates, on random Gaussian-modulated trigonometric integrands.
TEST(QuadProperty, Linearity)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double k1 = u(rng), k2 = u(rng), s1 = 1.0 + std::abs(u(rng)), s2 = 1.0 + std::abs(u(rng));
        const cd alpha(u(rng), u(rng)), beta(u(rng), u(rng));
        auto f = [=](double x) { return std::exp(cd(-s1 * x * x, k1 * x)); };
        auto g = [=](double x) { return std::exp(cd(-s2 * x * x, k2 * x)) * x; };
        const Window w = Window::real_line(Decay::gaussian(1.0));
        const auto rf = integrate_line(f, w), rg = integrate_line(g, w);
        const auto rs = integrate_line([&](double x) { return alpha * f(x) + beta * g(x); }, w);
        const double bound = std::abs(alpha) * rf.err_estimate + std::abs(beta) * rg.err_estimate + rs.err_estimate;
        EXPECT_LE(std::abs(rs.value - alpha * rf.value - beta * rg.value), bound + 1e-14) << "trial " << trial;
        // Closed form as an independent oracle.
        const cd exact_f = std::sqrt(kPi / s1) * std::exp(-k1 * k1 / (4.0 * s1));
        EXPECT_NEAR(std::abs(rf.value - exact_f), 0.0, 1e-11);
    }
}

// Property: halving the tolerance never increases the reported error.
TEST(QuadProperty, RefinementMonotonicity)
{
    const std::vector<std::function<QuadResult(double)>> fixtures = {
        [](double tol) {
            Options o;
            o.abs_tol = tol;
            return integrate_line([](double x) { return cd(std::exp(-kPi * x * x)); },
                                  Window::real_line(Decay::gaussian(kPi)), o);
        },
        [](double tol) {
            Options o;
            o.abs_tol = tol;
            return integrate_line([](double x) { return std::exp(cd(-0.05 * x * x, kPi * x * x)); },
                                  Window::real_line(Decay::gaussian(0.05)), o);
        },
        [](double tol) {
            Options o;
            o.abs_tol = tol;
            return integrate_contour([](cd z) { return std::exp(-kPi * z * z); },
                                     Contour::horizontal(0.7, Decay::gaussian(kPi), Decay::gaussian(kPi)), o);
        },
        [](double tol) {
            Options o;
            o.abs_tol = tol;
            return integrate_line([](double x) { return cd(std::sqrt(x)); }, Window::interval(0.0, 1.0), o);
        },
    };
    for (std::size_t i = 0; i < fixtures.size(); ++i) {
        double prev = std::numeric_limits<double>::infinity();
        for (double tol = 1e-4; tol >= 1e-12; tol /= 2.0) {
            const double e = fixtures[i](tol).err_estimate;
            EXPECT_LE(e, prev) << "fixture " << i << " tol " << tol;
            EXPECT_LE(e, tol) << "fixture " << i;
            prev = e;
        }
    }
}
