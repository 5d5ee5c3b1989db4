#include <gtest/gtest.h>

#include <random>

#include "betapenta/simplicial.hpp"

using namespace betapenta;

namespace {

using Labels = std::array<std::array<int, 5>, 5>;  // symmetric integer labels, lab[j][k] for j < k

Labels random_labels(std::mt19937_64& rng, int n)
{
    Labels lab{};
    for (int j = 0; j < 5; ++j)
        for (int k = j + 1; k < 5; ++k) lab[j][k] = static_cast<int>(rng() % static_cast<unsigned>(n));
    return lab;
}

SimplicialSample to_sample(const Labels& lab)
{
    SimplicialSample s;
    for (int j = 0; j < 5; ++j)
        for (int k = j + 1; k < 5; ++k) s.x(j, k) = double(lab[j][k]);
    return s;
}

/// Independent oracle: the face weights written out by hand for each vertex
/// omitted, summed over x13 by explicit integer arithmetic.
std::pair<cplx, cplx> brute_force_23(const std::function<cplx(int, int, int)>& phi, int n, Labels x)
{
    const auto m = [n](int a) { return ((a % n) + n) % n; };
    const auto at = [&](int i, int a, int b) { return phi(i, m(a), m(b)); };
    const auto w0 = [&] { return at(0, x[1][2] + x[3][4] - x[1][4] - x[2][3], x[1][4] + x[2][3] - x[1][3] - x[2][4]); };
    const auto w1 = [&] { return at(1, x[0][2] + x[3][4] - x[0][4] - x[2][3], x[0][4] + x[2][3] - x[0][3] - x[2][4]); };
    const auto w2 = [&] { return at(2, x[0][1] + x[3][4] - x[0][4] - x[1][3], x[0][4] + x[1][3] - x[0][3] - x[1][4]); };
    const auto w3 = [&] { return at(3, x[0][1] + x[2][4] - x[0][4] - x[1][2], x[0][4] + x[1][2] - x[0][2] - x[1][4]); };
    const auto w4 = [&] { return at(4, x[0][1] + x[2][3] - x[0][3] - x[1][2], x[0][3] + x[1][2] - x[0][2] - x[1][3]); };
    const cplx lhs = w1() * w3();
    cplx rhs = 0.0;
    for (int t = 0; t < n; ++t) {
        x[1][3] = t;
        rhs += w0() * w2() * w4();
    }
    return {lhs, rhs};
}

PentagonFamily table_family(int n, const std::vector<cplx>& table)
{
    PentagonFamily fam;
    fam.group = Group::cyclic(n);
    for (int i = 0; i < 5; ++i)
        fam.phi[static_cast<std::size_t>(i)] = [&table, n, i](Elem x, Elem y) {
            return table[static_cast<std::size_t>((i * n + int(x.real())) * n + int(y.real()))];
        };
    return fam;
}

} // namespace

TEST(Pullback, FaceInjections)
{
    EdgeLabeling x;
    for (std::size_t e = 0; e < 10; ++e) x.v[e] = double(e + 1);
    const auto t4 = pullback(4, x);
    for (int j = 0; j < 4; ++j)
        for (int k = j + 1; k < 4; ++k) EXPECT_EQ(t4(j, k), x(j, k));
    const auto t0 = pullback(0, x);
    for (int j = 0; j < 4; ++j)
        for (int k = j + 1; k < 4; ++k) EXPECT_EQ(t0(j, k), x(j + 1, k + 1));
    EXPECT_EQ(pullback(2, x)(1, 2), x(1, 3));
    EXPECT_THROW(pullback(5, x), Error);
}

TEST(Pullback, EdgeIndexIsABijection)
{
    std::array<int, 10> seen{};
    for (int j = 0; j < 5; ++j)
        for (int k = j + 1; k < 5; ++k) ++seen[detail::edge_index(4, j, k)];
    for (const int s : seen) EXPECT_EQ(s, 1);
}

TEST(Pullback, OnlyFacesZeroTwoFourSeeEdgeOneThree)
{
    for (int i = 0; i < 5; ++i) EXPECT_EQ(face_contains_edge(i, 1, 3), i == 0 || i == 2 || i == 4);
    // Structural check: perturbing x13 changes exactly those pullbacks.
    EdgeLabeling a;
    for (std::size_t e = 0; e < 10; ++e) a.v[e] = double(e);
    EdgeLabeling b = a;
    b(1, 3) = 100.0;
    for (int i = 0; i < 5; ++i) EXPECT_EQ(pullback(i, a).v != pullback(i, b).v, face_contains_edge(i, 1, 3)) << i;
}

TEST(Weight, ConstantAndIdentityLabels)
{
    const auto fam = phi_plus_family(make_context(0.5));
    const TetLabeling zero;
    EXPECT_EQ(weight_args(fam.group, zero), std::make_pair(Elem(0.0), Elem(0.0)));
    const auto c = constant_solution(Group::cyclic(5));
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 10; ++trial) {
        TetLabeling y;
        for (auto& e : y.v) e = double(rng() % 5);
        for (int i = 0; i < 5; ++i) EXPECT_NEAR(std::abs(weight_W(c, i, y) - 0.2), 0.0, 1e-15);
    }
}

TEST(Weight, MatchesHandComposedArguments)
{
    const int n = 5;
    std::mt19937_64 rng(9);
    std::vector<cplx> table(static_cast<std::size_t>(5 * n * n));
    std::normal_distribution<double> d;
    for (auto& v : table) v = {d(rng), d(rng)};
    const auto fam = table_family(n, table);
    for (int trial = 0; trial < 20; ++trial) {
        const auto lab = random_labels(rng, n);
        const auto s = to_sample(lab);
        // Face 4 is the tetrahedron 0123 itself.
        const auto m = [n](int a) { return ((a % n) + n) % n; };
        const int a = m(lab[0][1] + lab[2][3] - lab[0][3] - lab[1][2]);
        const int b = m(lab[0][3] + lab[1][2] - lab[0][2] - lab[1][3]);
        EXPECT_EQ(weight_W(fam, 4, pullback(4, s.x)), table[static_cast<std::size_t>((4 * n + a) * n + b)]);
    }
}

TEST(TwoThreeMove, ConstantSolution)
{
    const auto fam = constant_solution(Group::cyclic(4));
    std::mt19937_64 rng(2);
    std::vector<SimplicialSample> samples;
    for (int k = 0; k < 5; ++k) samples.push_back(to_sample(random_labels(rng, 4)));
    const auto rep = verify_23move(fam, samples, {1e-12});
    EXPECT_TRUE(rep.pass) << rep.max_rel_err;
    for (const auto& p : rep.points) {
        EXPECT_NEAR(std::abs(p.lhs - 1.0 / 16.0), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(p.rhs - 1.0 / 16.0), 0.0, 1e-15);
    }
}

TEST(TwoThreeMove, ConstantSolutionsAgainstBruteForce)
{
    for (const int n : {1, 4, 7}) {
        const auto fam = constant_solution(Group::cyclic(n));
        std::mt19937_64 rng(static_cast<std::uint64_t>(n));
        std::vector<Labels> labs;
        std::vector<SimplicialSample> samples;
        for (int k = 0; k < 6; ++k) {
            labs.push_back(random_labels(rng, n));
            samples.push_back(to_sample(labs.back()));
        }
        const auto rep = verify_23move(fam, samples, {1e-12});
        EXPECT_TRUE(rep.pass) << n;
        const auto phi = [&](int i, int x, int y) { return fam(i, double(x), double(y)); };
        for (std::size_t k = 0; k < samples.size(); ++k) {
            const auto [lhs, rhs] = brute_force_23(phi, n, labs[k]);
            EXPECT_LE(std::abs(lhs - rep.points[k].lhs), 1e-15);
            EXPECT_LE(std::abs(rhs - rep.points[k].rhs), 1e-15);
        }
    }
}

TEST(TwoThreeMove, TransformedConstantFamilies)
{
    const auto fam = constant_solution(Group::cyclic(6));
    std::mt19937_64 rng(6);
    std::vector<Labels> labs;
    std::vector<SimplicialSample> samples;
    for (int k = 0; k < 6; ++k) {
        labs.push_back(random_labels(rng, 6));
        samples.push_back(to_sample(labs.back()));
    }
    for (const auto& f : {fourier_family(fam), symmetry_invert(fam), fourier_family(symmetry_invert(fam))}) {
        const auto rep = verify_23move(f, samples, {1e-12});
        EXPECT_TRUE(rep.pass) << rep.max_rel_err;
        const auto phi = [&](int i, int x, int y) { return f(i, double(x), double(y)); };
        for (std::size_t k = 0; k < samples.size(); ++k) {
            const auto [lhs, rhs] = brute_force_23(phi, 6, labs[k]);
            EXPECT_LE(std::abs(rhs - rep.points[k].rhs), 1e-12);
            EXPECT_LE(std::abs(lhs - rep.points[k].lhs), 1e-12);
        }
    }
}

// Property: for arbitrary tables (solutions or not) both sides match the
// hand-written oracle, and they equal the five-term sides at the induced sample.
TEST(TwoThreeMoveProperty, ReductionToFiveTermOnRandomTables)
{
    std::mt19937_64 rng(321);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 7);
        std::normal_distribution<double> d;
        std::vector<cplx> table(static_cast<std::size_t>(5 * n * n));
        for (auto& v : table) v = {d(rng), d(rng)};
        const auto fam = table_family(n, table);
        const auto phi = [&](int i, int x, int y) { return table[static_cast<std::size_t>((i * n + x) * n + y)]; };
        std::vector<Labels> labs;
        std::vector<SimplicialSample> samples;
        std::vector<SamplePoint> reduced;
        for (int k = 0; k < 3; ++k) {
            labs.push_back(random_labels(rng, n));
            samples.push_back(to_sample(labs.back()));
            reduced.push_back(reduce_labeling(fam.group, samples.back()).point);
        }
        const auto rep = verify_23move(fam, samples, {1e-12});
        const auto five = verify_pentagon(fam, reduced, {1e-12});
        for (std::size_t k = 0; k < samples.size(); ++k) {
            const auto [lhs, rhs] = brute_force_23(phi, n, labs[k]);
            EXPECT_LE(std::abs(lhs - rep.points[k].lhs), 1e-12);
            EXPECT_LE(std::abs(rhs - rep.points[k].rhs), 1e-12);
            EXPECT_LE(std::abs(five.points[k].lhs - rep.points[k].lhs), 1e-12);
            EXPECT_LE(std::abs(five.points[k].rhs - rep.points[k].rhs), 1e-12);
        }
    }
}

TEST(TwoThreeMove, PhiPlusOverReals)
{
    const auto ctx = make_context(0.5);
    const auto fam = phi_plus_family(ctx);
    const auto samples = phi_plus_labelings(ctx, 3, 11);
    const auto [a, b] = phi_plus_offsets(ctx);
    for (const auto& s : samples) {
        const auto r = reduce_labeling(fam.group, s).point;
        EXPECT_NEAR(r.x.imag(), a, 1e-15);
        EXPECT_NEAR(r.u.imag(), a, 1e-15);
        EXPECT_NEAR(r.y.imag(), -b, 1e-15);
        EXPECT_NEAR(r.v.imag(), -b, 1e-15);
        EXPECT_NEAR(r.z_contour.imag_range().first, -0.5 * b, 1e-15);
    }
    const auto rep = verify_23move(fam, samples, {1e-5});
    EXPECT_TRUE(rep.pass) << rep.max_rel_err;
    // Same values as the five-term verifier on the induced samples.
    std::vector<SamplePoint> reduced;
    for (const auto& s : samples) reduced.push_back(reduce_labeling(fam.group, s).point);
    const auto five = verify_pentagon(fam, reduced, {1e-5});
    for (std::size_t k = 0; k < samples.size(); ++k) {
        EXPECT_LE(rel_err(rep.points[k].lhs, five.points[k].lhs), 1e-12);
        EXPECT_LE(rel_err(rep.points[k].rhs, five.points[k].rhs), 1e-8);
    }
}

TEST(TwoThreeMove, RealLabelsOffTheStripAreRejected)
{
    const auto fam = phi_plus_family(make_context(0.5));
    const auto rep = verify_23move(fam, group_labelings(fam.group, 1, 3), {1e-5});
    ASSERT_EQ(rep.points.size(), 1u);
    EXPECT_FALSE(rep.pass);
    EXPECT_TRUE(rep.points[0].error_kind.has_value());
}
