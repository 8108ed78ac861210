#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "umbra/errors.hpp"
#include "umbra/series.hpp"

using namespace umbra;

namespace {

YSeries<Rat> S(int order, std::initializer_list<Rat> cs) {
    YSeries<Rat> s(order);
    int k = 0;
    for (const Rat& c : cs) s.mutable_coeff(k++) = c;
    return s;
}

YSeries<Rat> expy(int order) { // e^y - 1
    YSeries<Rat> f(order);
    for (int k = 1; k <= order; ++k) f.mutable_coeff(k) = factorial(k).inv();
    return f;
}

YSeries<Rat> random_admissible(std::mt19937_64& rng, int order) {
    std::uniform_int_distribution<long> num(-3, 3);
    std::uniform_int_distribution<long> den(1, 4);
    YSeries<Rat> f(order);
    f.mutable_coeff(1) = Rat(1);
    for (int k = 2; k <= order; ++k) f.mutable_coeff(k) = Rat(num(rng), den(rng));
    return f;
}

} // namespace

TEST_CASE("product basics") {
    auto one_plus = S(6, {Rat(1), Rat(1)});
    auto one_minus = S(6, {Rat(1), Rat(-1)});
    CHECK(series_mul(one_plus, one_minus) == S(6, {Rat(1), Rat(0), Rat(-1)}));

    YSeries<Rat> geo(8);
    for (int k = 0; k <= 8; ++k) geo.mutable_coeff(k) = Rat(1);
    CHECK(series_mul(geo, one_minus.truncate(8)) == YSeries<Rat>::constant(8, Rat(1)));

    auto f = S(6, {Rat(0), Rat(1), Rat(1)}); // y + y^2
    CHECK(series_mul(f, f) == S(6, {Rat(0), Rat(0), Rat(1), Rat(2), Rat(1)}));
}

TEST_CASE("division") {
    auto one_minus = S(8, {Rat(1), Rat(-1)});
    auto q = series_div(YSeries<Rat>::constant(8, Rat(1)), one_minus);
    for (int k = 0; k <= 8; ++k) CHECK(q.coeff(k) == Rat(1));

    auto f = S(6, {Rat(0), Rat(1), Rat(1)});
    CHECK(series_div(f.shift_down(1), YSeries<Rat>::y(6).shift_down(1)) ==
          S(5, {Rat(1), Rat(1)}));

    // f_2/f_1 for f_n = (e^y-1)^n.
    auto f1 = expy(10);
    auto f2 = series_mul(f1, f1);
    // (f2/y^2)/(f1/y) = (e^y - 1)/y, so f2/f1 = e^y - 1 after restoring the shift.
    auto r = series_div(f2.shift_down(2), f1.shift_down(1));
    CHECK(r == f1.shift_down(1).truncate(r.order()));
    CHECK(r.shift_up(1).truncate(r.order()) == f1.truncate(r.order()));

    CHECK_THROWS_AS(series_div(f1, YSeries<Rat>::y(6)), NonUnitDivisor);
}

TEST_CASE("mul after div round-trip") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(-5, 5);
    std::uniform_int_distribution<long> den(1, 4);
    for (int trial = 0; trial < 20; ++trial) {
        YSeries<Rat> a(10), b(10);
        for (int k = 0; k <= 10; ++k) {
            a.mutable_coeff(k) = Rat(num(rng), den(rng));
            b.mutable_coeff(k) = Rat(num(rng), den(rng));
        }
        if (b.coeff(0).is_zero()) b.mutable_coeff(0) = Rat(1);
        CHECK(series_mul(series_div(a, b), b) == a);
    }
}

TEST_CASE("composition") {
    auto e = series_exp(YSeries<Rat>::y(8));
    CHECK(series_compose(e, YSeries<Rat>::y(8)) == e);

    auto f = expy(10);
    auto lg = series_log(S(10, {Rat(1), Rat(1)})); // log(1+y)
    CHECK(series_compose(f, lg) == YSeries<Rat>::y(10));

    auto sq = S(6, {Rat(0), Rat(0), Rat(1)});
    auto inner = S(6, {Rat(0), Rat(1), Rat(1)});
    CHECK(series_compose(sq, inner) == series_mul(inner, inner));

    CHECK_THROWS_AS(series_compose(f, YSeries<Rat>::constant(6, Rat(1))),
                    NonzeroConstantTerm);
}

TEST_CASE("reversion") {
    CHECK(series_revert(YSeries<Rat>::y(8)) == YSeries<Rat>::y(8));

    auto phi = series_revert(expy(8));
    CHECK(phi.coeff(1) == Rat(1));
    CHECK(phi.coeff(2) == Rat(-1, 2));
    CHECK(phi.coeff(3) == Rat(1, 3));
    CHECK(phi.coeff(4) == Rat(-1, 4));

    auto g = series_revert(S(8, {Rat(0), Rat(1), Rat(1)}));
    CHECK(g.coeff(1) == Rat(1));
    CHECK(g.coeff(2) == Rat(-1));
    CHECK(g.coeff(3) == Rat(2));
    CHECK(g.coeff(4) == Rat(-5));

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        auto f = random_admissible(rng, 9);
        auto ph = series_revert(f);
        CHECK(series_compose(f, ph) == YSeries<Rat>::y(9));
        CHECK(series_compose(ph, f) == YSeries<Rat>::y(9));
    }

    CHECK_THROWS_AS(series_revert(S(6, {Rat(0), Rat(2)})), BadLowestTerms);
    CHECK_THROWS_AS(series_revert(S(6, {Rat(1), Rat(1)})), BadLowestTerms);
}

TEST_CASE("exp and log") {
    CHECK(series_exp(YSeries<Rat>(5)) == YSeries<Rat>::constant(5, Rat(1)));

    auto e = series_exp(YSeries<Rat>::y(3));
    CHECK(e == S(3, {Rat(1), Rat(1), Rat(1, 2), Rat(1, 6)}));

    auto lg = series_log(S(3, {Rat(1), Rat(1)}));
    CHECK(lg == S(3, {Rat(0), Rat(1), Rat(-1, 2), Rat(1, 3)}));

    std::mt19937_64 rng(13);
    std::uniform_int_distribution<long> num(-4, 4);
    for (int trial = 0; trial < 10; ++trial) {
        YSeries<Rat> a(8);
        for (int k = 1; k <= 8; ++k) a.mutable_coeff(k) = Rat(num(rng), 3);
        CHECK(series_log(series_exp(a)) == a);
    }

    CHECK_THROWS_AS(series_exp(YSeries<Rat>::constant(4, Rat(1))), BadConstantTerm);
    CHECK_THROWS_AS(series_log(YSeries<Rat>(4)), BadConstantTerm);
}

TEST_CASE("zero-derivative shift") {
    CHECK(zero_derivative_L(S(4, {Rat(1), Rat(2), Rat(3)})) ==
          S(3, {Rat(2), Rat(3)}));
    CHECK(zero_derivative_L(YSeries<Rat>::constant(4, Rat(9))).is_zero());

    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> num(-6, 6);
    YSeries<Rat> g(7);
    for (int k = 0; k <= 7; ++k) g.mutable_coeff(k) = Rat(num(rng), 2);
    auto h = zero_derivative_L(g);
    for (int k = 1; k <= h.order() + 1; ++k) CHECK(h.coeff(k - 1) == g.coeff(k));
}

TEST_CASE("derivatives") {
    YSeries<Rat> y3(5);
    y3.mutable_coeff(3) = Rat(1);
    auto d = deriv_y(y3);
    CHECK(d.coeff(2) == Rat(3));
    CHECK(d.valuation() == 2);

    XPoly p{Rat(0), Rat(0), Rat(-3), Rat(1)}; // x^3 - 3x^2
    CHECK(p.deriv() == XPoly{Rat(0), Rat(-6), Rat(3)});
}

TEST_CASE("bivariate kernel sanity") {
    // Q = truncated e^{xy}: [y^k] = x^k/k!; d/dy Q = x Q at the shared order.
    int ord = 8;
    BiSeries Q(ord);
    for (int k = 0; k <= ord; ++k) Q.mutable_coeff(k) = XPoly::monomial(k, factorial(k).inv());
    BiSeries xQ(ord - 1);
    for (int k = 0; k + 1 <= ord; ++k) xQ.mutable_coeff(k) = Q.coeff(k).shift_up(1);
    CHECK(deriv_y(Q) == xQ);
}
