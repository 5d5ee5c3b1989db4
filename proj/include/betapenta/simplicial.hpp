#pragma once
// Simplicial reading of the five-term relation: edge labels on the 4-simplex,
// tetrahedral weights on its faces and the 2-3 move equality.

#include <array>
#include <chrono>
#include <random>
#include <string>
#include <vector>

#include "pentagon.hpp"

namespace betapenta {

namespace detail {

/// Position of edge {j,k} (j < k) among the edges of the n-simplex, listed
/// lexicographically.
constexpr std::size_t edge_index(int n, int j, int k)
{
    std::size_t idx = 0;
    for (int a = 0; a < j; ++a) idx += static_cast<std::size_t>(n - a);
    return idx + static_cast<std::size_t>(k - j - 1);
}

} // namespace detail

/// Group labels on the 6 edges of a tetrahedron.
struct TetLabeling {
    std::array<Elem, 6> v{};

    Elem& operator()(int j, int k) { return v[detail::edge_index(3, j, k)]; }
    Elem operator()(int j, int k) const { return v[detail::edge_index(3, j, k)]; }
};

/// Group labels on the 10 edges of the 4-simplex.
struct EdgeLabeling {
    std::array<Elem, 10> v{};

    Elem& operator()(int j, int k) { return v[detail::edge_index(4, j, k)]; }
    Elem operator()(int j, int k) const { return v[detail::edge_index(4, j, k)]; }
};

/// The coface injection [3] -> [4] skipping vertex i.
constexpr int coface(int i, int j) { return j < i ? j : j + 1; }

/// True iff the face opposite vertex i contains edge {j,k}.
constexpr bool face_contains_edge(int i, int j, int k) { return i != j && i != k; }

inline TetLabeling pullback(int i, const EdgeLabeling& x)
{
    if (i < 0 || i > 4) fail(ErrorKind::ConfigError, "face index must lie in 0..4");
    TetLabeling t;
    for (int j = 0; j < 4; ++j)
        for (int k = j + 1; k < 4; ++k) t(j, k) = x(coface(i, j), coface(i, k));
    return t;
}

/// The two group arguments at which a tetrahedron's weight evaluates phi_i.
inline std::pair<Elem, Elem> weight_args(const Group& g, const TetLabeling& y)
{
    return {g.sub(g.add(y(0, 1), y(2, 3)), g.add(y(0, 3), y(1, 2))),
            g.sub(g.add(y(0, 3), y(1, 2)), g.add(y(0, 2), y(1, 3)))};
}

inline cplx weight_W(const PentagonFamily& fam, int i, const TetLabeling& y)
{
    const auto [a, b] = weight_args(fam.group, y);
    return fam(i, a, b);
}

/// Product of the weights over the faces listed in `faces`.
inline cplx face_product(const PentagonFamily& fam, std::initializer_list<int> faces, const EdgeLabeling& x)
{
    cplx p = 1.0;
    for (const int i : faces) p *= weight_W(fam, i, pullback(i, x));
    return p;
}

/// A labeling plus, over R, the height of the horizontal x13 contour. The x13
/// entry of `x` is the integration variable and its value is ignored.
struct SimplicialSample {
    EdgeLabeling x;
    double x13_height = 0.0;
};

/// The five-term sample (x, y, u, v) induced by a labeling, together with the
/// offset c such that the pentagon variable is z = x13 + c.
struct ReducedSample {
    SamplePoint point;
    Elem offset{};
};

inline ReducedSample reduce_labeling(const Group& g, const SimplicialSample& s)
{
    const auto& x = s.x;
    const auto comb = [&](Elem a, Elem b, Elem c, Elem d) { return g.sub(g.add(a, b), g.add(c, d)); };
    ReducedSample r;
    r.point.x = comb(x(0, 2), x(3, 4), x(0, 4), x(2, 3));
    r.point.y = comb(x(0, 4), x(2, 3), x(0, 3), x(2, 4));
    r.point.u = comb(x(0, 1), x(2, 4), x(0, 4), x(1, 2));
    r.point.v = comb(x(0, 4), x(1, 2), x(0, 2), x(1, 4));
    r.offset = g.sub(x(0, 4), g.add(x(0, 3), x(1, 4)));
    r.point.z_contour = quad::Contour::horizontal(s.x13_height + r.offset.imag());
    return r;
}

inline VerificationReport verify_23move(const PentagonFamily& fam, const std::vector<SimplicialSample>& samples,
                                        const PentagonOptions& opt = {})
{
    const auto start = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.suite = "simplicial";
    rep.tol = opt.tol;
    rep.params = {{"group", fam.group.spec()}, {"provenance", fam.provenance}};
    rep.points.resize(samples.size());
    const double rel = opt.rel_accuracy > 0.0 ? opt.rel_accuracy : std::min(1e-10, 1e-3 * opt.tol);
    const Group& g = fam.group;
    parallel_for(samples.size(), [&](std::size_t k) {
        const auto& s = samples[k];
        std::vector<std::pair<std::string, cplx>> in;
        for (int j = 0; j < 5; ++j)
            for (int l = j + 1; l < 5; ++l)
                if (!(j == 1 && l == 3)) in.emplace_back("x" + std::to_string(j) + std::to_string(l), s.x(j, l));
        try {
            const cplx lhs = face_product(fam, {1, 3}, s.x);
            const auto red = reduce_labeling(g, s);
            // Integrate over x13 = z - c along the contour the reduced sample uses.
            const auto r = detail::rhs_integral_of(fam, red.point, std::max(1e-300, std::abs(lhs) * rel),
                                                   opt.max_evals, [&](Elem z) {
                                                       EdgeLabeling x = s.x;
                                                       x(1, 3) = g.sub(z, red.offset);
                                                       return face_product(fam, {0, 2, 4}, x);
                                                   });
            rep.points[k] = make_record(std::move(in), lhs, r.value, r.err_estimate);
        } catch (const Error& e) {
            rep.points[k] = error_record(std::move(in), e);
        }
    });
    rep.finalize();
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

/// Uniform labelings on Z/N, or real labelings on R with x13 along the real line.
inline std::vector<SimplicialSample> group_labelings(const Group& g, std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<SimplicialSample> out(n);
    for (auto& s : out) {
        for (auto& e : s.x.v) {
            if (g.is_finite()) {
                std::uniform_int_distribution<std::int64_t> d(0, g.order - 1);
                e = static_cast<double>(d(rng));
            } else {
                std::uniform_real_distribution<double> d(-1.0, 1.0);
                e = d(rng);
            }
        }
        s.x(1, 3) = 0.0;
    }
    return out;
}

/// Complexified labelings for phi-plus over R. Giving x34, x01 imaginary part a
/// and x03, x14 imaginary part b (with (a, b) = phi_plus_offsets) puts the
/// induced (x, y, u, v) at the heights used by phi_plus_samples, and x13 at
/// height 1.5 b places the pentagon variable at -b/2.
inline std::vector<SimplicialSample> phi_plus_labelings(const HbarContext& ctx, std::size_t n, std::uint64_t seed)
{
    const auto [a, b] = phi_plus_offsets(ctx);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> re(-0.5, 0.5);
    std::vector<SimplicialSample> out(n);
    for (auto& s : out) {
        for (auto& e : s.x.v) e = re(rng);
        s.x(1, 3) = 0.0;
        s.x(3, 4) += cplx(0.0, a);
        s.x(0, 1) += cplx(0.0, a);
        s.x(0, 3) += cplx(0.0, b);
        s.x(1, 4) += cplx(0.0, b);
        s.x13_height = 1.5 * b;
    }
    return out;
}

} // namespace betapenta
