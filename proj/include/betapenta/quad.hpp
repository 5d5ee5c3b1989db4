#pragma once

// Adaptive Gauss-Kronrod (7/15) quadrature for complex-valued integrands over
// finite intervals, the real line, half-lines and polyline contours in the
// complex plane. Infinite ranges are cut into panels that are probed outward
// until the declared (or measured) tail decay bounds the remainder; all panels
// then share one global bisection queue so that the error budget is spent
// where it is largest.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "betapenta/error.hpp"

namespace betapenta::quad {

using cplx = std::complex<double>;

struct QuadResult {
    cplx value{};
    double err_estimate = 0.0;
    std::size_t evaluations = 0;
};

/// Tail behaviour of an integrand along an infinite end. `Exponential` means
/// |f(s)| <~ C e^{-rate s}; `Gaussian` means |f(s)| <~ C e^{-rate s^2}.
/// `Unknown` makes the engine measure decay from successive panel masses and
/// reject tails that do not shrink.
struct Decay {
    enum class Kind { Unknown, Exponential, Gaussian };
    Kind kind = Kind::Unknown;
    double rate = 0.0;

    static Decay unknown() { return {}; }
    static Decay exponential(double r) { return {Kind::Exponential, r}; }
    static Decay gaussian(double c) { return {Kind::Gaussian, c}; }
};

struct Options {
    double abs_tol = 1e-12;
    double rel_tol = 0.0;
    std::size_t max_evals = 4'000'000;
    double panel = 1.0;
    double max_extent = 1.0e4;
};

/// A real integration window; either end may be infinite.
struct Window {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    double center = 0.0;
    Decay left{};
    Decay right{};

    static Window interval(double a, double b) { return {a, b, 0.5 * (a + b), {}, {}}; }
    static Window real_line(Decay both = {}, double center = 0.0)
    {
        return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), center, both,
                both};
    }
    static Window real_line(Decay left, Decay right, double center)
    {
        return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), center, left,
                right};
    }
};

/// Oriented polyline in the complex plane. The head (if present) is a ray that
/// comes in from infinity to the first vertex; the tail leaves the last vertex
/// towards infinity. Ray directions point away from the vertex.
class Contour {
public:
    struct End {
        cplx direction;
        Decay decay;
    };

    static Contour segment(cplx a, cplx b) { return polyline({a, b}); }

    static Contour polyline(std::vector<cplx> vertices)
    {
        if (vertices.empty()) fail(ErrorKind::DomainError, "contour needs at least one vertex");
        Contour c;
        c.vertices_ = std::move(vertices);
        return c;
    }

    /// The line R + i*im, oriented left to right.
    static Contour horizontal(double im, Decay left = {}, Decay right = {}, double center = 0.0)
    {
        Contour c = polyline({cplx(center, im)});
        c.head_ = End{cplx(-1.0, 0.0), left};
        c.tail_ = End{cplx(1.0, 0.0), right};
        return c;
    }

    Contour& from_infinity(cplx direction, Decay decay)
    {
        head_ = End{direction / std::abs(direction), decay};
        return *this;
    }

    Contour& to_infinity(cplx direction, Decay decay)
    {
        tail_ = End{direction / std::abs(direction), decay};
        return *this;
    }

    const std::vector<cplx>& vertices() const { return vertices_; }
    const std::optional<End>& head() const { return head_; }
    const std::optional<End>& tail() const { return tail_; }

    /// Number of pieces (finite segments plus rays).
    std::size_t segment_count() const
    {
        return vertices_.size() - 1 + (head_ ? 1 : 0) + (tail_ ? 1 : 0);
    }

    /// Image under z -> -z with orientation kept left to right.
    Contour mirrored() const
    {
        Contour c;
        c.vertices_.assign(vertices_.rbegin(), vertices_.rend());
        for (auto& v : c.vertices_) v = -v;
        if (tail_) c.head_ = End{-tail_->direction, tail_->decay};
        if (head_) c.tail_ = End{-head_->direction, head_->decay};
        return c;
    }

    Contour shifted(cplx by) const
    {
        Contour c = *this;
        for (auto& v : c.vertices_) v += by;
        return c;
    }

    /// Imaginary parts visited by the contour (vertices; rays keep their
    /// direction so horizontal rays add nothing new).
    std::pair<double, double> imag_range() const
    {
        double lo = vertices_.front().imag(), hi = lo;
        for (const auto& v : vertices_) {
            lo = std::min(lo, v.imag());
            hi = std::max(hi, v.imag());
        }
        return {lo, hi};
    }

private:
    std::vector<cplx> vertices_;
    std::optional<End> head_;
    std::optional<End> tail_;
};

namespace detail {

// Kronrod 15-point abscissae/weights with the embedded 7-point Gauss rule
// (QUADPACK qk15 constants).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

using RealFn = std::function<cplx(double)>;

inline std::string sci(double v)
{
    std::ostringstream os;
    os << std::scientific << std::setprecision(3) << v;
    return os.str();
}

struct RuleResult {
    cplx value;
    double err;
    double abs_mass;                        // sum of w|f| over the panel
    std::array<std::pair<double, double>, 15> samples;  // (abscissa, |f|)
};

inline cplx checked_call(const RealFn& f, double t)
{
    cplx v;
    try {
        v = f(t);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::NonConvergent) throw;
        fail(ErrorKind::DomainError, "integrand failed at t=" + std::to_string(t) + ": " + e.what());
    } catch (const std::exception& e) {
        fail(ErrorKind::DomainError, "integrand failed at t=" + std::to_string(t) + ": " + e.what());
    }
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        fail(ErrorKind::DomainError, "integrand is not finite at t=" + std::to_string(t));
    return v;
}

inline RuleResult gk15(const RealFn& f, double a, double b)
{
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    RuleResult r{};
    cplx kron{}, gauss{};
    double mass = 0.0;
    std::size_t idx = 0;
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const cplx f1 = checked_call(f, mid - dx);
        const cplx f2 = checked_call(f, mid + dx);
        kron += kWgk[j] * (f1 + f2);
        mass += kWgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
        r.samples[idx++] = {mid - dx, std::abs(f1)};
        r.samples[idx++] = {mid + dx, std::abs(f2)};
    }
    const cplx fc = checked_call(f, mid);
    kron += kWgk[7] * fc;
    gauss += kWg[3] * fc;
    mass += kWgk[7] * std::abs(fc);
    r.samples[idx] = {mid, std::abs(fc)};
    r.value = kron * half;
    r.err = std::abs((kron - gauss) * half);
    r.abs_mass = mass * std::abs(half);
    return r;
}

class Engine {
public:
    explicit Engine(Options opt) : opt_(opt)
    {
        if (!(opt_.abs_tol > 0.0) && !(opt_.rel_tol > 0.0))
            fail(ErrorKind::DomainError, "quadrature tolerance must be positive");
    }

    int add_piece(RealFn g)
    {
        pieces_.push_back(std::move(g));
        return static_cast<int>(pieces_.size()) - 1;
    }

    void add_interval(int piece, double a, double b, double panel)
    {
        if (a == b) return;
        const double len = b - a;
        const int n = std::clamp(static_cast<int>(std::ceil(std::abs(len) / panel)), 1, 512);
        for (int k = 0; k < n; ++k) {
            const double lo = a + len * k / n;
            const double hi = (k + 1 == n) ? b : a + len * (k + 1) / n;
            push(piece, lo, hi, gk15(pieces_[piece], lo, hi));
        }
    }

    /// Probe [0, inf) of piece `piece` panel by panel until the tail is bounded.
    void add_half_line(int piece, Decay decay)
    {
        const auto& g = pieces_[piece];
        double s = 0.0;
        double prev_mass = -1.0;
        for (int k = 0;; ++k) {
            const double width = opt_.panel * std::min(std::pow(1.2, k), 16.0);
            const double end = s + width;
            if (end > opt_.max_extent)
                fail(ErrorKind::NonConvergent,
                     "integrand tail not bounded within extent " + std::to_string(opt_.max_extent));
            const RuleResult r = gk15(g, s, end);
            push(piece, s, end, r);
            probe_mass_ += r.abs_mass;
            const double target = 0.05 * tail_target();
            double bound = std::numeric_limits<double>::infinity();
            switch (decay.kind) {
            case Decay::Kind::Exponential: {
                if (!(decay.rate > 0.0)) fail(ErrorKind::NonConvergent, "declared decay rate is not positive");
                double m = 0.0;
                for (const auto& [x, v] : r.samples) m = std::max(m, v * std::exp(-decay.rate * (end - x)));
                bound = m / decay.rate;
                break;
            }
            case Decay::Kind::Gaussian: {
                if (!(decay.rate > 0.0)) fail(ErrorKind::NonConvergent, "declared decay rate is not positive");
                double m = 0.0;
                for (const auto& [x, v] : r.samples)
                    m = std::max(m, v * std::exp(-decay.rate * (end * end - x * x)));
                bound = m / (2.0 * decay.rate * end);
                break;
            }
            case Decay::Kind::Unknown: {
                if (r.abs_mass == 0.0 && prev_mass == 0.0) {
                    bound = 0.0;
                } else if (prev_mass > 0.0) {
                    const double rho = r.abs_mass / prev_mass;
                    if (rho < 0.9) bound = r.abs_mass * rho / (1.0 - rho);
                }
                break;
            }
            }
            prev_mass = r.abs_mass;
            s = end;
            if (bound <= target) {
                tail_err_ += bound;
                return;
            }
        }
    }

    QuadResult run()
    {
        // Refine the interval with the largest error until the summed estimate
        // meets the target. Running sums are resynchronised periodically and
        // before the final decision so that drift cannot end the loop early.
        std::vector<Item> frozen;
        const auto exact_sums = [&](double& err, cplx& total) {
            err = current_err();
            total = current_value();
            for (const auto& it : frozen) {
                err += it.err;
                total += it.value;
            }
        };
        double err = 0.0;
        cplx total{};
        exact_sums(err, total);
        std::size_t since_resum = 0;
        for (;;) {
            if (err + tail_err_ <= target(total) || heap_.empty()) {
                exact_sums(err, total);
                if (err + tail_err_ <= target(total) || heap_.empty()) break;
            }
            if (evals_ >= opt_.max_evals)
                fail(ErrorKind::NonConvergent, "evaluation budget exhausted; error estimate " +
                                                   detail::sci(err + tail_err_));
            std::pop_heap(heap_.begin(), heap_.end(), by_err);
            Item top = heap_.back();
            heap_.pop_back();
            const double mid = 0.5 * (top.a + top.b);
            const double scale = std::max({std::abs(top.a), std::abs(top.b), 1.0});
            if (std::abs(top.b - top.a) < 64.0 * std::numeric_limits<double>::epsilon() * scale) {
                frozen.push_back(top);
                continue;
            }
            const RuleResult l = gk15(pieces_[top.piece], top.a, mid);
            const RuleResult r = gk15(pieces_[top.piece], mid, top.b);
            evals_ += 30;
            push_no_count(top.piece, top.a, mid, l);
            push_no_count(top.piece, mid, top.b, r);
            err += l.err + r.err - top.err;
            total += l.value + r.value - top.value;
            if (++since_resum == 256) {
                since_resum = 0;
                exact_sums(err, total);
            }
        }
        const double all_err = err + tail_err_;
        if (all_err > target(total))
            fail(ErrorKind::NonConvergent, "error estimate " + detail::sci(all_err) +
                                               " stalled above tolerance " + detail::sci(target(total)));
        return {total, all_err, std::max<std::size_t>(evals_, 1)};
    }

private:
    struct Item {
        double a, b;
        cplx value;
        double err;
        int piece;
    };

    static bool by_err(const Item& x, const Item& y) { return x.err < y.err; }

    void push(int piece, double a, double b, const RuleResult& r)
    {
        evals_ += 15;
        push_no_count(piece, a, b, r);
    }

    void push_no_count(int piece, double a, double b, const RuleResult& r)
    {
        heap_.push_back({a, b, r.value, r.err, piece});
        std::push_heap(heap_.begin(), heap_.end(), by_err);
    }

    double current_err() const
    {
        double e = 0.0;
        for (const auto& it : heap_) e += it.err;
        return e;
    }

    cplx current_value() const
    {
        cplx v{};
        for (const auto& it : heap_) v += it.value;
        return v;
    }

    double target(cplx total) const { return std::max(opt_.abs_tol, opt_.rel_tol * std::abs(total)); }

    double tail_target() const { return std::max(opt_.abs_tol, opt_.rel_tol * std::abs(current_value())); }

    Options opt_;
    std::vector<RealFn> pieces_;
    std::vector<Item> heap_;
    double tail_err_ = 0.0;
    double probe_mass_ = 0.0;
    std::size_t evals_ = 0;
};

} // namespace detail

/// Integrate f over a real window. Zero-length windows evaluate f once (to
/// surface domain errors) and return 0 with zero error.
template <class F>
QuadResult integrate_line(F&& f, const Window& w, const Options& opt = {})
{
    using detail::RealFn;
    if (w.lo == w.hi) {
        (void)detail::checked_call(RealFn(std::ref(f)), w.lo);
        return {cplx{}, 0.0, 1};
    }
    if (w.lo > w.hi) {
        Window flipped{w.hi, w.lo, w.center, w.right, w.left};
        QuadResult r = integrate_line(f, flipped, opt);
        r.value = -r.value;
        return r;
    }
    detail::Engine eng(opt);
    const bool lo_inf = std::isinf(w.lo);
    const bool hi_inf = std::isinf(w.hi);
    if (!lo_inf && !hi_inf) {
        const int p = eng.add_piece(RealFn([&f](double t) { return cplx(f(t)); }));
        eng.add_interval(p, w.lo, w.hi, opt.panel);
    } else if (lo_inf && hi_inf) {
        const double c = w.center;
        const int pr = eng.add_piece(RealFn([&f, c](double s) { return cplx(f(c + s)); }));
        const int pl = eng.add_piece(RealFn([&f, c](double s) { return cplx(f(c - s)); }));
        eng.add_half_line(pr, w.right);
        eng.add_half_line(pl, w.left);
    } else if (hi_inf) {
        const double a = w.lo;
        const int p = eng.add_piece(RealFn([&f, a](double s) { return cplx(f(a + s)); }));
        eng.add_half_line(p, w.right);
    } else {
        const double b = w.hi;
        const int p = eng.add_piece(RealFn([&f, b](double s) { return cplx(f(b - s)); }));
        eng.add_half_line(p, w.left);
    }
    return eng.run();
}

/// Integrate an analytic f along a polyline contour (finite segments plus
/// optional infinite rays). The value is the sum of the per-piece integrals;
/// the error estimate is shared across pieces.
template <class F>
QuadResult integrate_contour(F&& f, const Contour& c, const Options& opt = {})
{
    using detail::RealFn;
    if (c.segment_count() == 0) fail(ErrorKind::DomainError, "contour has no segments");
    detail::Engine eng(opt);
    const auto& v = c.vertices();
    for (std::size_t k = 0; k + 1 < v.size(); ++k) {
        const cplx a = v[k], d = v[k + 1] - v[k];
        if (d == cplx{}) continue;
        const int p = eng.add_piece(RealFn([&f, a, d](double s) { return cplx(f(a + d * s)) * d; }));
        eng.add_interval(p, 0.0, 1.0, opt.panel / std::abs(d));
    }
    if (c.head()) {
        const cplx a = v.front(), d = c.head()->direction;
        const int p = eng.add_piece(RealFn([&f, a, d](double s) { return -cplx(f(a + d * s)) * d; }));
        eng.add_half_line(p, c.head()->decay);
    }
    if (c.tail()) {
        const cplx a = v.back(), d = c.tail()->direction;
        const int p = eng.add_piece(RealFn([&f, a, d](double s) { return cplx(f(a + d * s)) * d; }));
        eng.add_half_line(p, c.tail()->decay);
    }
    return eng.run();
}

/// Iterated integral: outer over x in wx, inner over y in wy. The reported
/// error adds the outer estimate to the largest inner estimate times the
/// outer extent that was actually visited.
template <class F>
QuadResult integrate_2d(F&& f, const Window& wx, const Window& wy, const Options& opt = {})
{
    const auto span_of = [&opt](const Window& w) {
        return std::isfinite(w.hi - w.lo) ? std::abs(w.hi - w.lo) : 40.0 * opt.panel;
    };
    Options inner = opt;
    inner.abs_tol = 0.1 * opt.abs_tol / std::max(1.0, span_of(wx));
    double max_inner_err = 0.0;
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    std::size_t inner_evals = 0;
    auto outer = [&](double x) {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        const QuadResult r = integrate_line([&](double y) { return cplx(f(x, y)); }, wy, inner);
        max_inner_err = std::max(max_inner_err, r.err_estimate);
        inner_evals += r.evaluations;
        return r.value;
    };
    QuadResult r = integrate_line(outer, wx, opt);
    const double extent = std::isfinite(xmax - xmin) ? std::max(xmax - xmin, 0.0) : 0.0;
    r.err_estimate += max_inner_err * extent;
    r.evaluations = std::max<std::size_t>(inner_evals, 1);
    return r;
}

/// Iterated contour integral: outer contour in x, inner contour in y.
template <class F>
QuadResult integrate_2d_contour(F&& f, const Contour& cx, const Contour& cy, const Options& opt = {},
                                double inner_scale = 40.0)
{
    Options inner = opt;
    inner.abs_tol = 0.1 * opt.abs_tol / inner_scale;
    double max_inner_err = 0.0;
    std::size_t inner_evals = 0;
    auto outer = [&](cplx x) {
        const QuadResult r = integrate_contour([&](cplx y) { return cplx(f(x, y)); }, cy, inner);
        max_inner_err = std::max(max_inner_err, r.err_estimate);
        inner_evals += r.evaluations;
        return r.value;
    };
    QuadResult r = integrate_contour(outer, cx, opt);
    r.err_estimate += max_inner_err * inner_scale;
    r.evaluations = std::max<std::size_t>(inner_evals, 1);
    return r;
}

} // namespace betapenta::quad
