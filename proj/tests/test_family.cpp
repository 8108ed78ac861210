#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "umbra/errors.hpp"
#include "umbra/family.hpp"

using namespace umbra;

namespace {

FamilyOptions small() { return FamilyOptions{8, 10, -1}; }

YSeries<Rat> expy(int order) { // e^y - 1
    YSeries<Rat> f(order);
    for (int k = 1; k <= order; ++k) f.mutable_coeff(k) = factorial(k).inv();
    return f;
}

XPoly P(std::initializer_list<Rat> cs) { return XPoly(cs); }

} // namespace

TEST_CASE("monomial family") {
    MonicFamily fam = MonicFamily::builtin("monomial", small());
    for (int n = 0; n <= fam.N(); ++n) {
        CHECK(fam.p(n) == XPoly::monomial(n));
        for (int k = 1; k <= n; ++k) {
            CHECK(fam.xi(n, k) == Rat(0));
            CHECK(fam.xi_star(n, k) == Rat(0));
        }
        CHECK(fam.fn(n).valuation() == n);
        CHECK(fam.fn(n).coeff(n) == Rat(1));
        for (int k = n + 1; k <= fam.Ny(); ++k) CHECK(fam.fn(n).coeff(k) == Rat(0));
    }
    auto lemma = fam.vanish_lemma_check();
    CHECK(lemma.f0_is_one);
    CHECK(lemma.all_vanish_at_zero);
}

TEST_CASE("falling factorials from xi table and from binomial series") {
    MonicFamily fam = MonicFamily::builtin("falling", small());
    CHECK(fam.p(2) == P({Rat(0), Rat(-1), Rat(1)}));
    CHECK(fam.p(3) == P({Rat(0), Rat(2), Rat(-3), Rat(1)}));
    CHECK(fam.xi(2, 1) == Rat(-1, 2));
    CHECK(fam.xi(2, 2) == Rat(0));
    CHECK(fam.xi(3, 1) == Rat(-1));
    CHECK(fam.xi(3, 2) == Rat(2, 3));
    CHECK(fam.xi(3, 3) == Rat(0));
    CHECK(fam.xi_star(2, 1) == Rat(1, 2)); // x^2 = p_2 + p_1

    // f_1 = e^y - 1.
    CHECK(fam.fn(1) == expy(fam.Ny()).truncate(fam.Ny()));

    // Same family through the xi-table constructor.
    std::vector<std::vector<Rat>> xi(fam.poly_order() + 1);
    for (int n = 0; n <= fam.poly_order(); ++n) {
        xi[n].resize(n + 1);
        for (int k = 0; k <= n; ++k) xi[n][k] = fam.xi(n, k);
    }
    MonicFamily fam2 = MonicFamily::from_xi(xi, small());
    for (int n = 0; n <= fam.N(); ++n) CHECK(fam2.p(n) == fam.p(n));

    // And through prescribed f_n = (e^y - 1)^n.
    int ord = fam.poly_order();
    std::vector<YSeries<Rat>> fns{YSeries<Rat>::constant(ord, Rat(1))};
    YSeries<Rat> f = expy(ord);
    YSeries<Rat> acc = f;
    for (int n = 1; n <= fam.poly_order(); ++n) {
        fns.push_back(acc);
        acc = series_mul(acc, f);
    }
    MonicFamily fam3 = MonicFamily::from_fns(fns, small());
    for (int n = 0; n <= fam.N(); ++n) CHECK(fam3.p(n) == fam.p(n));
}

TEST_CASE("binomial f = y + y^2") {
    FamilyOptions opts = small();
    int need = std::max(opts.resolved_poly_order(), opts.Ny);
    YSeries<Rat> f(need);
    f.mutable_coeff(1) = Rat(1);
    f.mutable_coeff(2) = Rat(1);
    MonicFamily fam = MonicFamily::binomial(f, opts);
    CHECK(fam.p(2) == P({Rat(0), Rat(-2), Rat(1)}));
    // fns equal powers of f exactly.
    YSeries<Rat> acc = YSeries<Rat>::constant(opts.Ny, Rat(1));
    for (int n = 0; n <= 4; ++n) {
        CHECK(fam.fn(n) == acc.truncate(opts.Ny));
        acc = series_mul(acc.truncate(opts.Ny), f.truncate(opts.Ny));
    }
}

TEST_CASE("qexp worked family") {
    MonicFamily fam = MonicFamily::builtin("qexp", small());
    CHECK(fam.p(2) == P({Rat(0), Rat(0), Rat(1)}));
    CHECK(fam.p(3) == P({Rat(0), Rat(0), Rat(-3), Rat(1)}));
    CHECK(fam.p(4) == P({Rat(0), Rat(0), Rat(30), Rat(-12), Rat(1)}));
}

TEST_CASE("non-vanishing family flagged by the lemma") {
    // p_1 = x + 1 (xi_1^1 = 1), everything else monomial-like.
    FamilyOptions opts = small();
    int M = opts.resolved_poly_order();
    std::vector<std::vector<Rat>> xi(M + 1);
    for (int n = 0; n <= M; ++n) {
        xi[n].resize(n + 1);
        xi[n][0] = Rat(1);
    }
    xi[1][1] = Rat(1);
    MonicFamily fam = MonicFamily::from_xi(xi, opts);
    auto lemma = fam.vanish_lemma_check();
    CHECK_FALSE(lemma.f0_is_one);
    CHECK_FALSE(lemma.all_vanish_at_zero);
}

TEST_CASE("dual family and involution") {
    MonicFamily fam = MonicFamily::builtin("falling", small());
    MonicFamily du = fam.dual();
    // x^n expanded in p-basis: columns of the dual reproduce monomials.
    for (int n = 0; n <= fam.N(); ++n) {
        XPoly acc;
        for (int k = 0; k <= n; ++k)
            acc += fam.p(n - k) * (binomial(n, k) * fam.xi_star(n, k));
        CHECK(acc == XPoly::monomial(n));
    }
    MonicFamily back = du.dual();
    for (int n = 0; n <= fam.N(); ++n) CHECK(back.p(n) == fam.p(n));

    // Dual of falling is built from ln(1+y): f*_1 = ln(1+y).
    YSeries<Rat> lg = series_log(YSeries<Rat>::y(fam.Ny()) +
                                 YSeries<Rat>::constant(fam.Ny(), Rat(1)));
    CHECK(du.fn(1) == lg);
}

TEST_CASE("tilde family") {
    MonicFamily mono = MonicFamily::builtin("monomial", small());
    MonicFamily mt = mono.tilde();
    for (int n = 0; n <= mt.N(); ++n) CHECK(mt.p(n) == XPoly::monomial(n));

    MonicFamily fam = MonicFamily::builtin("falling", small());
    MonicFamily ft = fam.tilde();
    CHECK(ft.p(1) == P({Rat(-1), Rat(1)})); // p_2 / x = x - 1

    // For a vanishing family, tilde is just the shift p_{n+1}/x.
    for (int n = 0; n <= ft.N(); ++n) CHECK(ft.p(n) == fam.p(n + 1).div_x());

    // Binomial families: fn~ / fn = f'(y) as a series identity.
    YSeries<Rat> fp = deriv_y(*fam.binomial_f());
    for (int n = 1; n <= 4; ++n) {
        auto lhs = series_div(ft.fn(n).shift_down(n), fam.fn(n).shift_down(n));
        CHECK(lhs == fp.truncate(lhs.order()));
    }
    CHECK(check_gf_identity(ft, 8).ok);
}

TEST_CASE("generating function identity") {
    for (const char* name : {"monomial", "falling", "qexp"}) {
        MonicFamily fam = MonicFamily::builtin(name, small());
        auto res = check_gf_identity(fam, 8);
        CHECK(res.ok);
    }
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        MonicFamily fam = MonicFamily::random(seed, seed % 2 == 0, small());
        CHECK(check_gf_identity(fam, 8).ok);
        auto lemma = fam.vanish_lemma_check();
        CHECK(lemma.agree());
    }
}

TEST_CASE("constructor validation") {
    FamilyOptions opts = small();
    std::vector<std::vector<Rat>> bad{{Rat(1)}, {Rat(2), Rat(0)}};
    CHECK_THROWS_AS(MonicFamily::from_xi(bad, opts), BadLeadingCoefficient);

    YSeries<Rat> notf(opts.resolved_poly_order() + 2);
    notf.mutable_coeff(1) = Rat(2);
    CHECK_THROWS_AS(MonicFamily::binomial(notf, opts), BadLowestTerms);

    CHECK_THROWS_AS(MonicFamily::builtin("nope", opts), UnknownAtom);
}
