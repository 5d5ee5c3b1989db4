#include <gtest/gtest.h>

#include <random>

#include "betapenta/automorphic.hpp"

using namespace betapenta;

namespace {

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

const HbarContext& ctx_half()
{
    static const HbarContext c = make_context(0.5);
    return c;
}

double h_half() { return ctx_half().strip_halfwidth; }

const QuotientFamily& psi_strip()
{
    static const QuotientFamily q = automorphic_lift(phi_times_one_family(ctx_half()), make_data(1.0, 1.0, 1.0));
    return q;
}

std::vector<std::pair<cplx, cplx>> strip_points(unsigned seed, int n)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> re(-1.0, 1.0), frac(0.1, 0.9);
    std::vector<std::pair<cplx, cplx>> out;
    for (int k = 0; k < n; ++k) {
        const double ix = frac(rng) * h_half();
        const double iy = -frac(rng) * ix;  // keeps Im x + Im y > 0
        out.emplace_back(cplx(re(rng), ix), cplx(re(rng), iy));
    }
    return out;
}

} // namespace

TEST(AutomorphicData, DerivedCharacters)
{
    const auto d = make_data(1.0, 1.0, 1.0);
    for (const auto& g : d.gamma) EXPECT_EQ(g, cplx(1.0));
    for (const auto& m : d.mu) EXPECT_EQ(m, cplx(1.0));
    for (int m = -4; m <= 4; ++m) EXPECT_LE(std::abs(d.epsilon(m) - (m % 2 == 0 ? 1.0 : -1.0)), 1e-14);
    EXPECT_EQ(kind_of([] { make_data(1.0, 1.0, 1.0, 1.0, 1.0, 0.5); }), ErrorKind::InvalidHomomorphism);
    EXPECT_EQ(kind_of([] { make_data(2.0, 1.0, 1.0); }), ErrorKind::DomainError);
}

// Property: for random unit characters the tables obey the defining relations
// and eps is multiplicative.
TEST(AutomorphicData, CharacterTablesProperty)
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> ang(-pi, pi);
    std::uniform_int_distribution<int> ci(-3, 3), mi(-6, 6);
    for (int trial = 0; trial < 50; ++trial) {
        const auto u = [&] { return std::polar(1.0, ang(rng)); };
        const auto d = make_data(u(), u(), u(), u(), u(), ci(rng));
        const auto& g = d.gamma;
        EXPECT_LE(std::abs(g[1] - g[0] * g[2]), 1e-14);
        EXPECT_LE(std::abs(g[3] - g[2] * g[4]), 1e-14);
        EXPECT_LE(std::abs(d.mu[2] - d.alpha * d.beta * g[1] * std::conj(g[2]) * g[3]), 1e-14);
        EXPECT_LE(std::abs(d.mu[0] - d.alpha * g[3]), 1e-14);
        EXPECT_LE(std::abs(d.mu[4] - d.beta * g[1]), 1e-14);
        const int m = mi(rng), n = mi(rng);
        EXPECT_LE(std::abs(d.epsilon(m + n) - d.epsilon(m) * d.epsilon(n)), 1e-12);
        EXPECT_LE(std::abs(d.h(m, n) * d.h(n, m) - 1.0), 1e-12);
    }
}

TEST(PhiTimesConstant, ClosedFormMatchesFourierQuadrature)
{
    // (F Phi)(y) = int e^{2 pi i y s} Phi(s) ds = f~(-y); the family is e^{-i pi x y} (F Phi)(y).
    const auto phi = make_phi(ctx_half());
    const double h = h_half();
    for (const auto& [x, y] : strip_points(5, 4)) {
        const cplx yy(y.real(), -0.15 * h);
        const auto q = fourier_by_quadrature(phi.f[0], -yy, 0.5 * h, 1e-14);
        EXPECT_LE(rel_err(std::exp(-I * pi * x * yy) * q.value, phi_times_one_closed(ctx_half(), x, yy)), 1e-8);
    }
}

TEST(PhiTimesConstant, QuasiPeriodicInX)
{
    const auto fam = phi_times_one_family(ctx_half());
    for (const auto& [x, y] : strip_points(8, 5))
        EXPECT_LE(rel_err(fam(0, x + 1.0, y), fam(0, x, y) * std::exp(-I * pi * y)), 1e-12);
    EXPECT_LE(automorphy_residual(fam, make_data(1.0, 1.0, 1.0), strip_points(2, 3)), 1e-12);
}

TEST(Lift, MatchesDirectSeries)
{
    for (const auto& [x, y] : strip_points(3, 5)) {
        const auto s = psi_series(ctx_half(), x, y);
        for (int i = 0; i < 5; ++i) EXPECT_LE(rel_err(psi_strip()(i, x, y), s.value), 1e-12);
    }
}

TEST(Lift, ZeroFamily)
{
    const auto q = automorphic_lift(zero_family(Group::reals()), make_data(1.0, 1.0, 1.0));
    EXPECT_EQ(q(2, cplx(0.1, 0.2), cplx(0.3, -0.1)), cplx(0.0));
    const auto rep = verify_quotient_pentagon(q, quotient_samples(ctx_half(), 1, 1), 1e-4);
    EXPECT_EQ(rep.points[0].lhs, cplx(0.0));
    EXPECT_EQ(rep.points[0].rhs, cplx(0.0));
}

TEST(Lift, RejectsNonAutomorphicInput)
{
    const auto fam = phi_plus_family(ctx_half());
    LiftOptions opt;
    opt.probes = {{cplx(0.2, 0.3), cplx(-0.1, -0.1)}};
    EXPECT_EQ(kind_of([&] { automorphic_lift(fam, make_data(1.0, 1.0, 1.0), opt); }), ErrorKind::AutomorphicityViolation);
}

TEST(Lift, TruncationHalvingWithinTailBound)
{
    const cplx x(0.2, 0.35 * h_half()), y(-0.3, -0.15 * h_half());
    const auto full = psi_series(ctx_half(), x, y);
    for (long m : {10, 20, 40}) {
        LatticeOptions a, b;
        a.fixed_terms = m;
        b.fixed_terms = 2 * m;
        const auto sa = psi_series(ctx_half(), x, y, a);
        const auto sb = psi_series(ctx_half(), x, y, b);
        EXPECT_LE(std::abs(sb.value - sa.value), sa.tail_bound) << m;
        EXPECT_LE(std::abs(full.value - sa.value), sa.tail_bound) << m;
    }
}

TEST(Lift, SymmetricAndOneSidedOrderAgree)
{
    // Summing the series in a different order (all m >= 0 first, then m < 0)
    // gives the same value within the tail bound.
    const cplx x(-0.4, 0.3 * h_half()), y(0.25, -0.1 * h_half());
    const auto s = psi_series(ctx_half(), x, y);
    const auto term = [&](double m) {
        return phi_times_one_closed(ctx_half(), 0.0, y + m) * std::exp(-2.0 * pi * I * (x + 0.5) * m);
    };
    cplx pos = 0.0, neg = 0.0;
    for (int m = 0; m <= 400; ++m) pos += term(m);
    for (int m = 1; m <= 400; ++m) neg += term(-m);
    EXPECT_LE(std::abs(std::exp(-I * pi * x * y) * (pos + neg) - s.value), std::max(s.tail_bound, 1e-13));
}

TEST(Lift, RegulatorAgreesWithStripInOverlap)
{
    LiftOptions opt;
    opt.policy = LiftPolicy::Regulator;
    const auto q = automorphic_lift(phi_times_one_family(ctx_half()), make_data(1.0, 1.0, 1.0), opt);
    for (const auto& [x, y] : strip_points(4, 3)) EXPECT_LE(rel_err(q(0, x, y), psi_strip()(0, x, y)), 1e-8);
}

TEST(Quasiperiodicity, StripPolicy)
{
    const auto rep = verify_quasiperiodicity(psi_strip(), strip_points(6, 4), 1e-8);
    EXPECT_TRUE(rep.pass) << rep.max_rel_err;
    // Explicit instance: psi(x + 1, y) = e^{-i pi y} psi, psi(x, y + 1) = -e^{i pi x} psi.
    const cplx x(0.2, 0.3), y(0.1, -0.1);
    const cplx p = psi_strip()(0, x, y);
    EXPECT_LE(rel_err(psi_strip()(0, x + 1.0, y), std::exp(-I * pi * y) * p), 1e-8);
    EXPECT_LE(rel_err(psi_strip()(0, x, y + 1.0), -std::exp(I * pi * x) * p), 1e-8);
    EXPECT_EQ(psi_strip()(0, x + 0.0, y), p);
}

TEST(Quasiperiodicity, RegulatorPolicyAtRealArguments)
{
    LiftOptions opt;
    opt.policy = LiftPolicy::Regulator;
    const auto q = automorphic_lift(phi_times_one_family(ctx_half()), make_data(1.0, 1.0, 1.0), opt);
    const auto rep = verify_quasiperiodicity(q, {{0.3, -0.2}, {-0.7, 0.45}}, 1e-8, {1.0, -1.0});
    EXPECT_TRUE(rep.pass) << rep.max_rel_err;
}

TEST(Quasiperiodicity, GeneralCharacters)
{
    // A family satisfying the automorphy law with nontrivial gamma_i:
    // phi_i(x, y) = gamma_i^x e^{-i pi c x y} F(y) with F decaying fast.
    const double c = 2.0;
    const auto d = make_data(std::polar(1.0, 0.4), std::polar(1.0, -1.1), std::polar(1.0, 2.0), std::polar(1.0, 0.3),
                             std::polar(1.0, -0.7), c);
    PentagonFamily fam;
    fam.group = Group::reals();
    for (std::size_t i = 0; i < 5; ++i) {
        const cplx lg = std::log(d.gamma[i]);
        fam.phi[i] = [lg, c](Elem x, Elem y) {
            return std::exp(lg * x - I * pi * c * x * y - (y - 0.1) * (y - 0.1));
        };
    }
    const auto q = automorphic_lift(fam, d);
    const auto rep = verify_quasiperiodicity(q, {{cplx(0.3, 0.1), cplx(-0.2, 0.05)}, {cplx(-0.6), cplx(0.4)}}, 1e-8);
    EXPECT_TRUE(rep.pass) << rep.max_rel_err;
}

TEST(LatticeTransform, ShiftLaws)
{
    const auto fam = phi_times_one_family(ctx_half());
    const auto d = make_data(1.0, 1.0, 1.0);
    const FamilyFn f = [&](Elem x, Elem y) { return fam(0, x, y); };
    const cplx x(0.3, 0.4), y(-0.1, -0.1);
    for (const cplx xi : {cplx(1.0), std::polar(1.0, 0.7)})
        for (const double b : {1.0, -1.0, 2.0}) {
            const cplx shifted_char = xi * std::exp(I * pi * d.c * b);  // xi h_{-b}
            EXPECT_LE(rel_err(lattice_transform(f, x + b, y, xi).value,
                              d.gamma[0] * d.h(y, b) * lattice_transform(f, x, y, shifted_char).value),
                      1e-8);
            EXPECT_LE(rel_err(lattice_transform(f, x, y + b, xi).value,
                              char_power(1.0 / xi, b) * lattice_transform(f, x, y, xi).value),
                      1e-8);
        }
}

TEST(QuotientPentagon, SeededSamples)
{
    const auto rep = verify_quotient_pentagon(psi_strip(), quotient_samples(ctx_half(), 5, 77), 1e-4);
    EXPECT_TRUE(rep.pass) << rep.max_rel_err;
    double worst_periodic = 0.0;
    for (const auto& p : rep.points)
        if (p.note == "periodicity") worst_periodic = std::max(worst_periodic, p.rel_err);
    EXPECT_LE(worst_periodic, 1e-8);
}

TEST(QuotientPentagon, OtherHbar)
{
    const auto ctx = make_context(1.0);
    const auto q = automorphic_lift(phi_times_one_family(ctx), make_data(1.0, 1.0, 1.0));
    const auto rep = verify_quotient_pentagon(q, quotient_samples(ctx, 2, 5), 1e-4);
    EXPECT_TRUE(rep.pass) << rep.max_rel_err;
}
