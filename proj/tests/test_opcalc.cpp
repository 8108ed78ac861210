#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "umbra/errors.hpp"
#include "umbra/identities.hpp"

using namespace umbra;

namespace {

FamilyOptions opts10() { return FamilyOptions{10, 14, -1}; }
FamilyOptions opts8() { return FamilyOptions{8, 12, -1}; }

void expect_pass(const VerifyReport& r) {
    INFO(r.identity, " [", r.family, "] ", r.detail);
    CHECK(r.pass);
    CHECK(r.window >= 1);
}

} // namespace

TEST_CASE("G and Ginv") {
    MonicFamily mono = MonicFamily::builtin("monomial", opts8());
    OpMatrix G = op_G(mono);
    CHECK_FALSE(OpMatrix::first_mismatch(G, OpMatrix::identity(8), 8).found);

    MonicFamily fall = MonicFamily::builtin("falling", opts8());
    OpMatrix Gf = op_G(fall);
    CHECK(Gf.column(2) == XPoly{Rat(0), Rat(-1), Rat(1)});

    for (const char* name : {"falling", "qexp"}) {
        MonicFamily fam = MonicFamily::builtin(name, opts8());
        OpMatrix a = op_G(fam) * op_Ginv(fam);
        OpMatrix b = op_Ginv(fam) * op_G(fam);
        CHECK_FALSE(OpMatrix::first_mismatch(a, OpMatrix::identity(8), 8).found);
        CHECK_FALSE(OpMatrix::first_mismatch(b, OpMatrix::identity(8), 8).found);
    }
}

TEST_CASE("xi representation of G and Ginv") {
    for (const char* name : {"monomial", "falling", "qexp"}) {
        expect_pass(xi_representation_check(MonicFamily::builtin(name, opts8())));
    }
}

TEST_CASE("U and D") {
    MonicFamily mono = MonicFamily::builtin("monomial", opts10());
    OpMatrix U = op_U(mono), D = op_D(mono);
    CHECK_FALSE(OpMatrix::first_mismatch(U, OpMatrix::mult_x(10), U.window()).found);
    CHECK_FALSE(OpMatrix::first_mismatch(D, OpMatrix::deriv(10), D.window()).found);

    for (const char* name : {"falling", "qexp"}) {
        MonicFamily fam = MonicFamily::builtin(name, opts10());
        expect_pass(verify_commutator(fam));
        // U_P p_n = p_{n+1}, D_P p_n = n p_{n-1} inside the window.
        OpMatrix Uf = op_U(fam), Df = op_D(fam);
        for (int n = 0; n < fam.N(); ++n) {
            CHECK(Uf.apply(fam.p(n)) == fam.p(n + 1));
            CHECK(Df.apply(fam.p(n)) == fam.p(std::max(n - 1, 0)) * Rat(n));
        }
    }

    // Falling: D_P = e^D - 1 (forward difference).
    MonicFamily fall = MonicFamily::builtin("falling", opts10());
    OpMatrix acc = OpMatrix::zero(10);
    acc.set_window(10);
    OpMatrix dpow = OpMatrix::identity(10);
    for (int k = 1; k <= 10; ++k) {
        dpow = dpow * OpMatrix::deriv(10);
        acc = acc + dpow.scaled(factorial(k).inv());
    }
    CHECK_FALSE(OpMatrix::first_mismatch(acc, op_D(fall), 10).found);
}

TEST_CASE("diagonal operators") {
    MonicFamily mono = MonicFamily::builtin("monomial", opts8());
    std::vector<Rat> n_vals(9), ones(9, Rat(1));
    for (int i = 0; i <= 8; ++i) n_vals[i] = Rat(i);
    CHECK_FALSE(
        OpMatrix::first_mismatch(diag_in_P(mono, n_vals), OpMatrix::theta(8), 8).found);
    CHECK_FALSE(
        OpMatrix::first_mismatch(diag_in_P(mono, ones), OpMatrix::identity(8), 8).found);

    MonicFamily fam = MonicFamily::builtin("qexp", opts8());
    OpMatrix ud = op_U(fam) * op_D(fam);
    OpMatrix dg = diag_in_P(fam, n_vals);
    CHECK_FALSE(OpMatrix::first_mismatch(ud, dg, ud.window()).found);
}

TEST_CASE("overline transform") {
    int N = 8;
    OverlineOp yd = overline(OpMatrix::deriv(N));
    for (int k = 0; k <= N; ++k)
        for (int m = 0; m <= N; ++m)
            CHECK(yd.at(k, m) == ((m == k - 1) ? Rat(1) : Rat(0))); // mult by y

    OverlineOp dx = overline(OpMatrix::mult_x(N));
    for (int k = 0; k <= N; ++k)
        for (int m = 0; m <= N; ++m)
            CHECK(dx.at(k, m) == ((m == k + 1) ? Rat(m) : Rat(0))); // d/dy

    // Binomial family: overline(U_P) acts as d/df = (1/f'(y)) d/dy.
    MonicFamily fall = MonicFamily::builtin("falling", opts8());
    OverlineOp dP = overline(op_U(fall));
    YSeries<Rat> fp = deriv_y(fall.binomial_f()->truncate(N + 1));
    YSeries<Rat> inv_fp = invert_unit(fp.truncate(N));
    for (int m = 0; m <= N; ++m) {
        YSeries<Rat> ym(N);
        if (m <= N) ym.mutable_coeff(m) = Rat(1);
        YSeries<Rat> img = series_mul(inv_fp, deriv_y(ym).truncate(N));
        for (int k = 0; k <= dP.rows_valid() && k <= img.order(); ++k)
            CHECK(dP.at(k, m) == img.coeff(k));
    }

    for (const char* name : {"monomial", "falling", "qexp"})
        expect_pass(verify_overline_consistency(MonicFamily::builtin(name, opts8())));
}

TEST_CASE("normal-ordered substitution") {
    int N = 8;
    MonicFamily mono = MonicFamily::builtin("monomial", FamilyOptions{N, 12, -1});
    BiSeries F(3);
    F.mutable_coeff(1) = XPoly::monomial(1); // F = x y
    OpMatrix m = normal_order_subst(F, op_U(mono), op_D(mono));
    CHECK_FALSE(OpMatrix::first_mismatch(m, OpMatrix::theta(N), m.window()).found);

    BiSeries Fx(3);
    Fx.mutable_coeff(0) = XPoly::monomial(1); // F = x
    OpMatrix mx = normal_order_subst(Fx, OpMatrix::mult_x(N), OpMatrix::deriv(N));
    CHECK_FALSE(OpMatrix::first_mismatch(mx, OpMatrix::mult_x(N), mx.window()).found);

    // Falling family: (Qx/Q)|_{y=D_P} = phi(D_P) = D.
    MonicFamily fall = MonicFamily::builtin("falling", FamilyOptions{N, 12, -1});
    BiSeries Q = gf_Q(fall, N);
    BiSeries Qx(N);
    for (int k = 0; k <= N; ++k) Qx.mutable_coeff(k) = Q.coeff(k).deriv();
    BiSeries rat = series_div(Qx, Q);
    OpMatrix phi_dp = normal_order_subst(rat, OpMatrix::mult_x(N), op_D(fall));
    CHECK_FALSE(
        OpMatrix::first_mismatch(phi_dp, OpMatrix::deriv(N), phi_dp.window()).found);
}

TEST_CASE("change of basis") {
    std::vector<MonicFamily> fams;
    for (const char* name : {"monomial", "falling", "qexp"})
        fams.push_back(MonicFamily::builtin(name, opts8()));
    for (const auto& p : fams)
        for (const auto& q : fams) expect_pass(verify_change_of_basis(p, q));
}

TEST_CASE("mixed representations") {
    for (const char* name : {"monomial", "falling", "qexp"}) {
        MonicFamily fam = MonicFamily::builtin(name, opts10());
        expect_pass(verify_prop_dp(fam));
        expect_pass(verify_prop_x(fam));
        expect_pass(verify_dpk(fam, 2));
        expect_pass(verify_dpk(fam, 3));
        expect_pass(verify_conj_dp(fam));
    }
    MonicFamily rnd = MonicFamily::random(5, false, opts8());
    expect_pass(verify_prop_dp(rnd));
    expect_pass(verify_conj_dp(rnd));
}

TEST_CASE("representation theorem") {
    for (const char* name : {"monomial", "falling", "qexp"}) {
        MonicFamily fam = MonicFamily::builtin(name, opts8());
        expect_pass(verify_representation_theorem(fam, OpMatrix::identity(8), "id"));
        expect_pass(verify_representation_theorem(fam, OpMatrix::deriv(8), "D"));
    }
    MonicFamily qexp = MonicFamily::builtin("qexp", FamilyOptions{6, 10, -1});
    for (std::uint64_t seed = 1; seed <= 3; ++seed)
        expect_pass(
            verify_representation_theorem(qexp, random_lower_triangular(6, seed), "rand"));
}

TEST_CASE("theta corollary") {
    for (const char* name : {"monomial", "falling", "qexp"})
        expect_pass(verify_theta_corollary(MonicFamily::builtin(name, opts10())));

    // theta p_3 = 3x^3 - 6x^2 = 3 p_3 + 3 p_2 for the worked family.
    MonicFamily qexp = MonicFamily::builtin("qexp", opts10());
    XPoly t = OpMatrix::theta(10).apply(qexp.p(3));
    CHECK(t == XPoly{Rat(0), Rat(0), Rat(-6), Rat(3)});
    CHECK(t == qexp.p(3) * Rat(3) + qexp.p(2) * Rat(3));
}

TEST_CASE("worked example identities") {
    expect_pass(verify_qexp_worked_example(MonicFamily::builtin("qexp", opts10())));
}

TEST_CASE("eigen relations of the generating function") {
    for (const char* name : {"monomial", "falling", "qexp"})
        expect_pass(verify_eigen_q(MonicFamily::builtin(name, opts8())));
}

TEST_CASE("catalog dispatch") {
    MonicFamily fam = MonicFamily::builtin("falling", opts8());
    for (const auto& name : identity_catalog()) {
        VerifyReport r = run_identity(name, fam, nullptr, 42);
        INFO(name, ": ", r.detail);
        CHECK(r.pass);
    }
    CHECK_THROWS_AS(run_identity("bogus", fam, nullptr, 1), UnknownAtom);
}
