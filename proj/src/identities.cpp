#include "umbra/identities.hpp"

#include <chrono>
#include <random>

#include "umbra/errors.hpp"

namespace umbra {

namespace {

using Clock = std::chrono::steady_clock;

struct Timer {
    Clock::time_point t0 = Clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    }
};

VerifyReport base_report(const std::string& name, const MonicFamily& fam) {
    VerifyReport r;
    r.identity = name;
    r.family = fam.describe();
    r.N = fam.N();
    r.Ny = fam.Ny();
    r.pass = true;
    return r;
}

void check(VerifyReport& r, const std::string& label, const OpMatrix& lhs, const OpMatrix& rhs,
           int window) {
    if (window < 1) {
        r.pass = false;
        r.detail += label + ": window " + std::to_string(window) + " too small; ";
        return;
    }
    auto mm = OpMatrix::first_mismatch(lhs, rhs, window);
    if (mm.found) {
        r.pass = false;
        r.detail += label + ": mismatch at basis column " + std::to_string(mm.col) +
                    ", coefficient of x^" + std::to_string(mm.row) + " (" + mm.lhs.str() +
                    " vs " + mm.rhs.str() + "); ";
    }
    r.window = (r.window < 0) ? window : std::min(r.window, window);
}

// f_{n+shift}/f_n style coefficient table over the family's own series.
std::vector<std::vector<Rat>> shifted_ratio_table(const MonicFamily& fam, int shift, int max_j) {
    int max_n = std::min(fam.N(), fam.fn_count() - 1 - shift);
    return ratio_coeff_table([&](int n) { return fam.fn(n + shift); },
                             [&](int n) { return fam.fn(n); }, max_j, max_n);
}

} // namespace

const std::vector<std::string>& identity_catalog() {
    static const std::vector<std::string> names = {
        "commutator",    "xi-repr", "change-of-basis", "prop-dp",
        "prop-x",        "dpk",     "conj-dp",         "repr-theorem",
        "theta-corollary", "eigen-q", "overline-consistency",
    };
    return names;
}

std::vector<std::vector<Rat>> ratio_coeff_table(
    const std::function<YSeries<Rat>(int)>& num,
    const std::function<YSeries<Rat>(int)>& den, int max_j, int max_n) {
    std::vector<std::vector<Rat>> c(max_j + 1, std::vector<Rat>(std::max(max_n + 1, 0)));
    for (int n = 0; n <= max_n; ++n) {
        YSeries<Rat> d = den(n);
        YSeries<Rat> m = num(n);
        int v = d.valuation();
        if (v > d.order())
            throw RatioValuationError("denominator series at index " + std::to_string(n) +
                                      " is zero at the working order");
        if (m.valuation() < v)
            throw RatioValuationError("numerator valuation below denominator valuation at index " +
                                      std::to_string(n));
        YSeries<Rat> q = series_div(m.shift_down(v), d.shift_down(v));
        for (int j = 0; j <= std::min(max_j, q.order()); ++j) c[j][n] = q.coeff(j);
    }
    return c;
}

OpMatrix assemble_diag_series(const MonicFamily& fam, const std::vector<std::vector<Rat>>& c,
                              bool diag_in_p_basis, const OpMatrix& step) {
    int N = fam.N();
    OpMatrix acc = OpMatrix::zero(N);
    acc.set_window(N);
    OpMatrix spow = OpMatrix::identity(N);
    for (int j = 0; j < static_cast<int>(c.size()) && j <= N; ++j) {
        if (j > 0) spow = spow * step;
        bool all_zero = true;
        for (const Rat& v : c[j])
            if (!v.is_zero()) { all_zero = false; break; }
        if (all_zero) continue;
        OpMatrix diag = diag_in_p_basis ? diag_in_P(fam, c[j]) : OpMatrix::diagonal(N, c[j]);
        acc = acc + diag * spow;
    }
    return acc;
}

VerifyReport xi_representation_check(const MonicFamily& fam) {
    Timer t;
    VerifyReport r = base_report("xi-repr", fam);
    int N = fam.N();
    for (bool star : {false, true}) {
        OpMatrix acc = OpMatrix::zero(N);
        acc.set_window(N);
        OpMatrix dpow = OpMatrix::identity(N);
        for (int k = 0; k <= N; ++k) {
            if (k > 0) dpow = dpow * OpMatrix::deriv(N);
            std::vector<Rat> vals(N + 1);
            for (int n = 0; n <= N; ++n) vals[n] = star ? fam.xi_star(n, k) : fam.xi(n, k);
            acc = acc + (dpow * OpMatrix::diagonal(N, vals)).scaled(factorial(k).inv());
        }
        check(r, star ? "Ginv" : "G", acc, star ? op_Ginv(fam) : op_G(fam), N);
    }
    r.millis = t.ms();
    return r;
}

VerifyReport verify_commutator(const MonicFamily& fam) {
    Timer t;
    VerifyReport r = base_report("commutator", fam);
    OpMatrix U = op_U(fam), D = op_D(fam);
    OpMatrix comm = D * U - U * D;
    check(r, "DpUp-UpDp", comm, OpMatrix::identity(fam.N()), comm.window());
    r.millis = t.ms();
    return r;
}

VerifyReport verify_change_of_basis(const MonicFamily& famP, const MonicFamily& famQ) {
    Timer t;
    VerifyReport r = base_report("change-of-basis", famP);
    r.family2 = famQ.describe();
    if (famP.N() != famQ.N())
        throw PreconditionViolated("change-of-basis requires equal N");
    int N = famP.N();
    OpMatrix A = op_G(famP) * op_Ginv(famQ);

    // Form 1: the operator defined column-wise by q_n -> p_n.
    OpMatrix form1 = OpMatrix::zero(N);
    form1.set_window(N);
    {
        OpMatrix cols(N, 0, N);
        for (int n = 0; n <= N; ++n) cols.set_column(n, famP.p(n));
        form1 = cols * op_Ginv(famQ);
    }
    check(r, "form1", form1, A, N);

    // Form 2: (e/f)|_{U_P D_P}(D) with e_n the Q-side series, f_n the P-side.
    int max_j = N;
    int max_n = std::min({N, famP.fn_count() - 1, famQ.fn_count() - 1});
    auto c = ratio_coeff_table([&](int n) { return famQ.fn(n); },
                              [&](int n) { return famP.fn(n); }, max_j, max_n);
    OpMatrix form2 = assemble_diag_series(famP, c, true, OpMatrix::deriv(N));
    check(r, "form2", form2, A, std::min(form2.window(), std::min(famP.Ny(), famQ.Ny())));
    r.millis = t.ms();
    return r;
}

VerifyReport verify_prop_dp(const MonicFamily& fam) {
    Timer t;
    VerifyReport r = base_report("prop-dp", fam);
    int N = fam.N();
    auto c = shifted_ratio_table(fam, 1, N);
    OpMatrix rhs = assemble_diag_series(fam, c, true, OpMatrix::deriv(N));
    check(r, "Dp", op_D(fam), rhs, std::min(rhs.window(), fam.Ny() - 1));
    r.millis = t.ms();
    return r;
}

VerifyReport verify_prop_x(const MonicFamily& fam) {
    Timer t;
    VerifyReport r = base_report("prop-x", fam);
    int N = fam.N();
    MonicFamily til = fam.tilde();
    int max_n = std::min({N, fam.fn_count() - 1, til.fn_count() - 1});
    auto c = ratio_coeff_table([&](int n) { return til.fn(n); },
                              [&](int n) { return fam.fn(n); }, N, max_n);
    OpMatrix ratio_part = assemble_diag_series(fam, c, true, OpMatrix::deriv(N));

    const YSeries<Rat>& f0 = fam.fn(0);
    OpMatrix f0_of_D = OpMatrix::zero(N);
    f0_of_D.set_window(N);
    OpMatrix dpow = OpMatrix::identity(N);
    for (int k = 0; k <= std::min(N, f0.order()); ++k) {
        if (k > 0) dpow = dpow * OpMatrix::deriv(N);
        if (!f0.coeff(k).is_zero()) f0_of_D = f0_of_D + dpow.scaled(f0.coeff(k));
    }
    OpMatrix rhs = f0_of_D * op_U(fam) * ratio_part;
    check(r, "x", OpMatrix::mult_x(N), rhs, std::min(rhs.window(), fam.Ny() - 1));
    r.millis = t.ms();
    return r;
}

VerifyReport verify_dpk(const MonicFamily& fam, int k) {
    Timer t;
    VerifyReport r = base_report("dpk", fam);
    int N = fam.N();
    auto c = shifted_ratio_table(fam, k, N);
    OpMatrix rhs = assemble_diag_series(fam, c, true, OpMatrix::deriv(N));
    OpMatrix lhs = op_D(fam).pow(k);
    check(r, "Dp^" + std::to_string(k), lhs, rhs, std::min(rhs.window(), fam.Ny() - k));
    r.millis = t.ms();
    return r;
}

VerifyReport verify_conj_dp(const MonicFamily& fam) {
    Timer t;
    VerifyReport r = base_report("conj-dp", fam);
    int N = fam.N();
    MonicFamily du = fam.dual();
    int max_n = std::min(N, du.fn_count() - 2);
    auto c = ratio_coeff_table([&](int n) { return du.fn(n + 1); },
                              [&](int n) { return du.fn(n); }, N, max_n);
    OpMatrix rhs = assemble_diag_series(fam, c, false, op_D(fam));
    check(r, "D", OpMatrix::deriv(N), rhs, std::min(rhs.window(), fam.Ny() - 1));
    r.millis = t.ms();
    return r;
}

VerifyReport verify_representation_theorem(const MonicFamily& fam, const OpMatrix& T,
                                           const std::string& label) {
    Timer t;
    VerifyReport r = base_report("repr-theorem", fam);
    r.detail = "[" + label + "] ";
    if (T.raise() > 0)
        throw PreconditionViolated("representation theorem forms 3/4 need raise(T) <= 0");
    int N = fam.N();
    int wT = T.window();
    OpMatrix X = OpMatrix::mult_x(N), D = OpMatrix::deriv(N);
    OpMatrix Up = op_U(fam), Dp = op_D(fam);

    // Form 1: (x)(T.Q/Q)|_{y=D_P}.
    {
        int ord = std::min(N, wT);
        BiSeries Q = gf_Q(fam, ord);
        BiSeries TQ(ord);
        for (int n = 0; n <= ord; ++n)
            TQ.mutable_coeff(n) = T.apply(fam.p(n)) * factorial(n).inv();
        BiSeries F = series_div(TQ, Q);
        OpMatrix m1 = normal_order_subst(F, X, Dp);
        check(r, "form1", m1, T, std::min({m1.window(), F.order(), wT}));
    }
    // Form 2: the P-basis tautology.
    {
        OpMatrix B = op_Ginv(fam) * T * op_G(fam);
        OpMatrix m2 = op_G(fam) * B * op_Ginv(fam);
        check(r, "form2", m2, T, std::min(m2.window(), wT));
    }
    // Form 3: (U_P)(Tbar.Q*/Q*)|_{y=D}.
    OverlineOp Tbar = overline(T);
    MonicFamily du = fam.dual();
    {
        int ord = std::min(N, wT);
        BiSeries Qs = gf_Q(du, ord);
        BiSeries TQs = Tbar.apply(Qs).truncate(std::min(ord, Tbar.rows_valid()));
        BiSeries F = series_div(TQs, Qs);
        OpMatrix m3 = normal_order_subst(F, Up, D);
        check(r, "form3", m3, T, std::min({m3.window(), F.order(), wT}));
    }
    // Form 4: (Tbar.f_n/f_n)|_{n=U_P D_P}(D).
    {
        int max_n = std::min(N, fam.fn_count() - 1);
        auto c = ratio_coeff_table(
            [&](int n) { return Tbar.apply(fam.fn(n).truncate(N)); },
            [&](int n) { return fam.fn(n).truncate(N); }, N, max_n);
        OpMatrix m4 = assemble_diag_series(fam, c, true, D);
        check(r, "form4", m4, T, std::min(m4.window(), wT));
    }
    r.millis = t.ms();
    return r;
}

VerifyReport verify_theta_corollary(const MonicFamily& fam) {
    Timer t;
    VerifyReport r = base_report("theta-corollary", fam);
    int N = fam.N();
    OpMatrix X = OpMatrix::mult_x(N), D = OpMatrix::deriv(N);
    OpMatrix Up = op_U(fam), Dp = op_D(fam);
    OpMatrix theta = OpMatrix::theta(N);

    // theta = x (x)(Q'/Q)|_{y=D_P}
    {
        BiSeries Q = gf_Q(fam, N);
        BiSeries Qx(N);
        for (int n = 0; n <= N; ++n) Qx.mutable_coeff(n) = Q.coeff(n).deriv();
        BiSeries F = series_div(Qx, Q);
        OpMatrix m = X * normal_order_subst(F, X, Dp);
        check(r, "gf-form", m, theta, std::min(m.window(), F.order()));
    }
    // theta = (U_P)(y d/dy ln Q*)|_{y=D}
    MonicFamily du = fam.dual();
    {
        BiSeries Qs = gf_Q(du, N);
        BiSeries F = deriv_y(series_log(Qs)).shift_up(1).truncate(N);
        OpMatrix m = normal_order_subst(F, Up, D);
        check(r, "dual-log-form", m, theta, std::min(m.window(), F.order()));
    }
    // theta = x (x)(p'_n/p_n)|_{n=U_P D_P}: columns p_n -> x p'_n.
    {
        OpMatrix m = (X * D * op_G(fam)) * op_Ginv(fam);
        check(r, "p-basis-form", m, theta, m.window());
    }
    // theta = (f'_n/f_n)|_{n=U_P D_P}(D) D, assembled from y f'_n/f_n.
    {
        int max_n = std::min(N, fam.fn_count() - 1);
        auto c = ratio_coeff_table(
            [&](int n) { return deriv_y(fam.fn(n)).shift_up(1); },
            [&](int n) { return fam.fn(n); }, N, max_n);
        OpMatrix m = assemble_diag_series(fam, c, true, D);
        check(r, "series-form", m, theta, std::min(m.window(), fam.Ny() - 1));
    }
    // Binomial degenerations.
    if (fam.binomial_f()) {
        YSeries<Rat> f = fam.binomial_f()->truncate(std::max(N, fam.Ny()));
        YSeries<Rat> phi = series_revert(f);
        auto series_of = [&](const YSeries<Rat>& s, const OpMatrix& A) {
            OpMatrix acc = OpMatrix::zero(N);
            acc.set_window(N);
            OpMatrix apow = OpMatrix::identity(N);
            for (int k = 0; k <= std::min(N, s.order()); ++k) {
                if (k > 0) apow = apow * A;
                if (!s.coeff(k).is_zero()) acc = acc + apow.scaled(s.coeff(k));
            }
            return acc;
        };
        OpMatrix m1 = X * series_of(phi, Dp);
        check(r, "binom-x-phi", m1, theta, m1.window());
        OpMatrix m2 = Up * D * series_of(deriv_y(f), D);
        check(r, "binom-up-d", m2, theta, m2.window());
        // y f'(y)/f(y): cancel the common valuation-1 factor before dividing.
        YSeries<Rat> s = series_div(deriv_y(f).truncate(f.order() - 1),
                                    f.shift_down(1).truncate(f.order() - 1));
        OpMatrix m3 = Up * Dp * series_of(s, D);
        check(r, "binom-up-dp", m3, theta, m3.window());
    }
    r.millis = t.ms();
    return r;
}

VerifyReport verify_eigen_q(const MonicFamily& fam) {
    Timer t;
    VerifyReport r = base_report("eigen-q", fam);
    int N = fam.N();
    OpMatrix Dp = op_D(fam);
    BiSeries Q = gf_Q(fam, N);

    bool ok1 = true;
    BiSeries yQ = Q.shift_up(1).truncate(N);
    for (int k = 0; k <= N && ok1; ++k) {
        XPoly lhs = Dp.apply(Q.coeff(k));
        if (lhs != yQ.coeff(k)) {
            ok1 = false;
            r.pass = false;
            r.detail += "DpQ=yQ fails at y^" + std::to_string(k) + "; ";
        }
    }
    MonicFamily du = fam.dual();
    OverlineOp dbar = overline(op_U(du));
    BiSeries lhs = dbar.apply(Q);
    bool ok2 = true;
    for (int k = 0; k <= dbar.rows_valid() && ok2; ++k) {
        XPoly rhs = Q.coeff(k).shift_up(1);
        if (lhs.coeff(k) != rhs) {
            ok2 = false;
            r.pass = false;
            r.detail += "dbar_{P*}Q=xQ fails at y^" + std::to_string(k) + "; ";
        }
    }
    r.window = dbar.rows_valid();
    r.millis = t.ms();
    return r;
}

VerifyReport verify_overline_consistency(const MonicFamily& fam) {
    Timer t;
    VerifyReport r = base_report("overline-consistency", fam);
    int N = fam.N();
    struct Case { std::string name; OpMatrix op; };
    std::vector<Case> cases{{"D", OpMatrix::deriv(N)},
                            {"x", OpMatrix::mult_x(N)},
                            {"Up", op_U(fam)}};
    for (const auto& cs : cases) {
        OverlineOp tb = overline(cs.op);
        OpMatrix back = overline_inverse(tb, cs.op.raise());
        check(r, cs.name + "-roundtrip", back, cs.op, cs.op.window());
        // Kernel consistency: T . e^{xy} = Tbar . e^{xy} coefficient-wise.
        for (int b = 0; b <= cs.op.window(); ++b) {
            XPoly lhs = cs.op.apply(XPoly::monomial(b)) * factorial(b).inv();
            XPoly rhs;
            for (int m = 0; m <= N; ++m)
                if (!tb.at(b, m).is_zero())
                    rhs += XPoly::monomial(m, tb.at(b, m) * factorial(m).inv());
            if (lhs != rhs) {
                r.pass = false;
                r.detail += cs.name + "-kernel mismatch at y^" + std::to_string(b) + "; ";
                break;
            }
        }
    }
    r.millis = t.ms();
    return r;
}

VerifyReport verify_qexp_worked_example(const MonicFamily& fam) {
    Timer t;
    VerifyReport r = base_report("qexp-worked-example", fam);
    int N = fam.N();
    OpMatrix D = OpMatrix::deriv(N);
    OpMatrix Up = op_U(fam), Dp = op_D(fam);
    OpMatrix UD = Up * Dp;

    // D_P = sum_k (U_P D_P)^k D^{k+1} / k!
    OpMatrix acc = OpMatrix::zero(N);
    acc.set_window(N);
    OpMatrix udpow = OpMatrix::identity(N);
    OpMatrix dpow = D;
    for (int k = 0; k <= N; ++k) {
        if (k > 0) { udpow = udpow * UD; dpow = dpow * D; }
        acc = acc + (udpow * (k == 0 ? D : dpow)).scaled(factorial(k).inv());
    }
    check(r, "dp-series", Dp, acc, acc.window());

    OpMatrix theta_rhs = UD + (Up * Up * Dp * Dp * D).scaled(Rat(1, 2));
    check(r, "theta-instance", OpMatrix::theta(N), theta_rhs, theta_rhs.window());
    r.millis = t.ms();
    return r;
}

OpMatrix random_lower_triangular(int N, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num(-4, 4);
    std::uniform_int_distribution<long> den(1, 3);
    OpMatrix T(N, 0, N);
    for (int j = 0; j <= N; ++j)
        for (int i = 0; i <= j; ++i) T.at(i, j) = Rat(num(rng), den(rng));
    return T;
}

VerifyReport run_identity(const std::string& name, const MonicFamily& fam,
                          const MonicFamily* second, std::uint64_t seed) {
    if (name == "commutator") return verify_commutator(fam);
    if (name == "xi-repr") return xi_representation_check(fam);
    if (name == "change-of-basis") {
        if (second) return verify_change_of_basis(fam, *second);
        FamilyOptions opts{fam.N(), fam.Ny(), fam.poly_order()};
        MonicFamily mono = MonicFamily::builtin("monomial", opts);
        return verify_change_of_basis(fam, mono);
    }
    if (name == "prop-dp") return verify_prop_dp(fam);
    if (name == "prop-x") return verify_prop_x(fam);
    if (name == "dpk") {
        VerifyReport r2 = verify_dpk(fam, 2);
        VerifyReport r3 = verify_dpk(fam, 3);
        r2.pass = r2.pass && r3.pass;
        r2.detail += r3.detail;
        r2.window = std::min(r2.window, r3.window);
        r2.millis += r3.millis;
        return r2;
    }
    if (name == "conj-dp") return verify_conj_dp(fam);
    if (name == "repr-theorem") {
        VerifyReport rd = verify_representation_theorem(fam, OpMatrix::deriv(fam.N()), "D");
        OpMatrix T = random_lower_triangular(fam.N(), seed);
        VerifyReport rt = verify_representation_theorem(fam, T, "random");
        rd.pass = rd.pass && rt.pass;
        rd.detail += rt.detail;
        rd.window = std::min(rd.window, rt.window);
        rd.millis += rt.millis;
        rd.seed = seed;
        return rd;
    }
    if (name == "theta-corollary") return verify_theta_corollary(fam);
    if (name == "eigen-q") return verify_eigen_q(fam);
    if (name == "overline-consistency") return verify_overline_consistency(fam);
    throw UnknownAtom("unknown identity '" + name + "'");
}

} // namespace umbra
