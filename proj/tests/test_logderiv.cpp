#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "umbra/errors.hpp"
#include "umbra/logderiv.hpp"

using namespace umbra;

namespace {

std::vector<Rat> R(std::initializer_list<Rat> cs) { return {cs}; }

YSeries<Rat> expy(int order) {
    YSeries<Rat> f(order);
    for (int k = 1; k <= order; ++k) f.mutable_coeff(k) = factorial(k).inv();
    return f;
}

} // namespace

TEST_CASE("context ratios") {
    MonicFamily mono = MonicFamily::builtin("monomial", FamilyOptions{8, 10, 12});
    LogDerivContext ctx = build_context(mono);
    for (int k = 0; k <= ctx.order; ++k) {
        CHECK(ctx.W_ratio.coeff(k) == ((k == 0) ? XPoly(Rat(1)) : XPoly{}));
        CHECK(ctx.w0.coeff(k) == ((k == 0) ? XPoly(Rat(1)) : XPoly{}));
    }

    MonicFamily qexp = MonicFamily::builtin("qexp", FamilyOptions{8, 10, 12});
    LogDerivContext qctx = build_context(qexp);
    CHECK(qctx.W_ratio.coeff(1).degree() <= 0);
    CHECK(qctx.w0.coeff(1).degree() <= 0);

    MonicFamily fall = MonicFamily::builtin("falling", FamilyOptions{8, 10, 12});
    LogDerivContext fctx = build_context(fall);
    for (int k = 1; k <= 8; ++k) {
        CHECK(fctx.W_ratio.coeff(k).degree() <= k - 1);
        CHECK(fctx.w0.coeff(k).degree() <= k - 1);
        CHECK(fctx.h_ser.coeff(k).degree() <= k - 1);
        CHECK(fctx.d_ser.coeff(k).degree() <= k - 1);
    }

    // p_1 = x + 1 fails the vanishing precondition.
    std::vector<std::vector<Rat>> xi(13);
    for (int n = 0; n <= 12; ++n) {
        xi[n].resize(n + 1);
        xi[n][0] = Rat(1);
    }
    xi[1][1] = Rat(1);
    MonicFamily shifted = MonicFamily::from_xi(xi, FamilyOptions{8, 8, 12});
    CHECK_THROWS_AS(build_context(shifted), PreconditionViolated);
}

TEST_CASE("neumann iterates") {
    MonicFamily mono = MonicFamily::builtin("monomial", FamilyOptions{8, 10, 12});
    auto xi = neumann_xi(build_context(mono), 4, 6);
    CHECK(xi[0] == XPoly(Rat(1)));
    for (int k = 1; k <= 6; ++k) CHECK(xi[k].is_zero());

    MonicFamily qexp = MonicFamily::builtin("qexp", FamilyOptions{8, 10, 12});
    LogDerivContext ctx = build_context(qexp);
    auto xi1 = neumann_xi(ctx, 1, 6);
    for (int k = 1; k <= 6; ++k) CHECK(xi1[k].is_zero());

    auto xi3 = neumann_xi(ctx, 3, 6);
    CHECK(xi3[0] == XPoly(Rat(1)));
    for (int k = 0; k <= 6; ++k) CHECK(xi3[k].degree() <= k / 2);

    CHECK_THROWS_AS(neumann_xi(ctx, 3, ctx.order), OrderExhausted);
}

TEST_CASE("oracle by long division") {
    MonicFamily mono = MonicFamily::builtin("monomial", FamilyOptions{8, 10, 12});
    auto e = oracle_logderiv(mono, 5, 4);
    CHECK(e.coeffs == R({Rat(1), Rat(0), Rat(0), Rat(0), Rat(0)}));

    MonicFamily qexp = MonicFamily::builtin("qexp", FamilyOptions{8, 10, 12});
    CHECK(oracle_logderiv(qexp, 3, 3).coeffs == R({Rat(1), Rat(1), Rat(3), Rat(9)}));

    MonicFamily fall = MonicFamily::builtin("falling", FamilyOptions{8, 10, 12});
    CHECK(oracle_logderiv(fall, 2, 2).coeffs == R({Rat(1), Rat(1, 2), Rat(1, 2)}));
}

TEST_CASE("assembled expansion matches the oracle") {
    MonicFamily mono = MonicFamily::builtin("monomial", FamilyOptions{8, 10, 30});
    LogDerivContext mctx = build_context(mono);
    for (int n = 1; n <= 6; ++n) {
        auto e = assemble_expansion(mctx, n, 4);
        CHECK(e.coeffs == R({Rat(1), Rat(0), Rat(0), Rat(0), Rat(0)}));
    }

    MonicFamily qexp = MonicFamily::builtin("qexp", FamilyOptions{8, 10, 30});
    LogDerivContext qctx = build_context(qexp);
    CHECK(assemble_expansion(qctx, 3, 4).coeffs ==
          R({Rat(1), Rat(1), Rat(3), Rat(9), Rat(27)}));

    MonicFamily fall = MonicFamily::builtin("falling", FamilyOptions{8, 10, 30});
    LogDerivContext fctx = build_context(fall);
    CHECK(assemble_expansion(fctx, 2, 3).coeffs ==
          R({Rat(1), Rat(1, 2), Rat(1, 2), Rat(1, 2)}));

    // n = 1 degeneration and the general property on seeded vanishing families.
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        MonicFamily fam = MonicFamily::random(seed, true, FamilyOptions{8, 10, 24});
        LogDerivContext ctx = build_context(fam);
        for (int n = 1; n <= 6; ++n) {
            auto engine = assemble_expansion(ctx, n, 4);
            auto oracle = oracle_logderiv(fam, n, 4);
            INFO("seed ", seed, " n ", n);
            CHECK(engine.coeffs == oracle.coeffs);
        }
    }
}

TEST_CASE("finiteness under deeper iteration") {
    MonicFamily fam = MonicFamily::random(9, true, FamilyOptions{8, 10, 26});
    LogDerivContext ctx = build_context(fam);
    for (int n : {2, 3, 4}) {
        int K = 4 * (n - 1);
        auto a = assemble_expansion(ctx, n, 4, K);
        auto b = assemble_expansion(ctx, n, 4, K + 2);
        CHECK(a.coeffs == b.coeffs);
    }
}

TEST_CASE("degree bound") {
    MonicFamily fall = MonicFamily::builtin("falling", FamilyOptions{8, 10, 16});
    LogDerivContext fctx = build_context(fall);
    auto rep2 = degree_bound_check(fctx, 2, 8);
    CHECK(rep2.ok);
    for (int d : rep2.degrees) CHECK(d <= 0);

    MonicFamily qexp = MonicFamily::builtin("qexp", FamilyOptions{8, 10, 16});
    auto rep3 = degree_bound_check(build_context(qexp), 3, 8);
    CHECK(rep3.ok);
    for (std::uint64_t seed = 2; seed <= 4; ++seed) {
        MonicFamily fam = MonicFamily::random(seed, true, FamilyOptions{8, 10, 16});
        for (int n = 2; n <= 5; ++n) CHECK(degree_bound_check(build_context(fam), n, 8).ok);
    }
}

TEST_CASE("binomial closed form") {
    FamilyOptions opts{8, 24, 24};
    YSeries<Rat> idy = YSeries<Rat>::y(24);
    MonicFamily mono = MonicFamily::binomial(idy, opts);
    auto e = binomial_closed_form(mono, 4, 4);
    CHECK(e.coeffs == R({Rat(1), Rat(0), Rat(0), Rat(0), Rat(0)}));

    MonicFamily fall = MonicFamily::binomial(expy(24), opts);
    CHECK(binomial_closed_form(fall, 2, 2).coeffs == R({Rat(1), Rat(1, 2), Rat(1, 2)}));

    YSeries<Rat> f2(30), f3(30);
    f2.mutable_coeff(1) = Rat(1);
    f2.mutable_coeff(2) = Rat(1);
    f3.mutable_coeff(1) = Rat(1);
    f3.mutable_coeff(3) = Rat(1, 6);
    for (const YSeries<Rat>& f : {YSeries<Rat>::y(30), expy(30), f2, f3}) {
        MonicFamily fam = MonicFamily::binomial(f, FamilyOptions{8, 30, 30});
        LogDerivContext ctx = build_context(fam);
        for (int n = 1; n <= 6; ++n) {
            auto closed = binomial_closed_form(fam, n, 5);
            auto engine = assemble_expansion(ctx, n, 5);
            auto oracle = oracle_logderiv(fam, n, 5);
            INFO("n = ", n);
            CHECK(closed.coeffs == engine.coeffs);
            CHECK(engine.coeffs == oracle.coeffs);
        }
    }

    MonicFamily nonb = MonicFamily::builtin("qexp", FamilyOptions{8, 10, 12});
    CHECK_THROWS_AS(binomial_closed_form(nonb, 2, 3), NotBinomial);
}

TEST_CASE("dual expansion") {
    FamilyOptions opts{8, 30, 30};
    MonicFamily mono = MonicFamily::builtin("monomial", opts);
    for (int n = 1; n <= 4; ++n) {
        auto e = dual_fn_logderiv(mono, n, 6);
        CHECK(e.coeffs[0] == Rat(1));
        for (int h = 1; h <= 6; ++h) CHECK(e.coeffs[h] == Rat(0));
        CHECK(e.coeffs == dual_direct(mono, n, 6).coeffs);
    }

    MonicFamily fall = MonicFamily::builtin("falling", opts);
    for (int n = 1; n <= 4; ++n) {
        auto engine = dual_fn_logderiv(fall, n, 6);
        auto direct = dual_direct(fall, n, 6);
        INFO("n = ", n);
        CHECK(engine.coeffs == direct.coeffs);
        CHECK(engine.coeffs[0] == Rat(1));
    }
}
