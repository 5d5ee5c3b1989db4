// A short tour: evaluate Phi, check one five-term relation over R and over
// Z/5, and run a 2-3 move on complexified edge labels.

#include <cstdio>

#include "betapenta/betapenta.hpp"

using namespace betapenta;

static void show(const char* what, cplx lhs, cplx rhs)
{
    std::printf("%-34s lhs = %+.12f%+.12fi\n%-34s rhs = %+.12f%+.12fi   rel err %.2e\n", what, lhs.real(), lhs.imag(),
                "", rhs.real(), rhs.imag(), rel_err(lhs, rhs));
}

int main()
{
    const auto ctx = make_context(0.5);
    std::printf("hbar = %.2f, b = %.6f%+.6fi, Phi(0) = %.6f%+.6fi\n\n", ctx.hbar, ctx.b.real(), ctx.b.imag(),
                ctx.phi_zero.real(), ctx.phi_zero.imag());

    const cplx x(0.3, 0.1);
    show("Phi(x): integral vs product", phi_eval(ctx, x, EvalMethod::Integral), phi_eval(ctx, x, EvalMethod::Product));
    show("difference equation in b",
         phi_eval(ctx, x - I * ctx.b / 2.0), (1.0 + std::exp(2.0 * pi * ctx.b * x)) * phi_eval(ctx, x + I * ctx.b / 2.0));

    const auto fam = phi_plus_family(ctx);
    const auto pent = verify_pentagon(fam, phi_plus_samples(ctx, 1, 7));
    show("phi-plus five-term relation", pent.points[0].lhs, pent.points[0].rhs);

    const auto fin = fourier_family(constant_solution(Group::cyclic(5)));
    const auto fp = verify_pentagon(fin, {SamplePoint{0.0, 0.0, 0.0, 0.0}}, {1e-12});
    show("Fourier of constant, Z/5", fp.points[0].lhs, fp.points[0].rhs);

    const auto move = verify_23move(fam, phi_plus_labelings(ctx, 1, 2));
    show("2-3 move for phi-plus", move.points[0].lhs, move.points[0].rhs);

    const auto q = automorphic_lift(phi_times_one_family(ctx), make_data(1.0, 1.0, 1.0));
    const auto e = verify_quotient_pentagon(q, quotient_samples(ctx, 1, 4), 1e-4);
    show("quotient relation on R/Z", e.points[0].lhs, e.points[0].rhs);
    return 0;
}
