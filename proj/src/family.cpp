#include "umbra/family.hpp"

#include <random>

#include "umbra/errors.hpp"

namespace umbra {

YSeries<Rat> compute_fn(const std::vector<std::vector<Rat>>& xi_star, int n, int Ny) {
    YSeries<Rat> f(Ny);
    for (int k = 0; n + k <= Ny; ++k) {
        int row = n + k;
        if (row >= static_cast<int>(xi_star.size()))
            throw InsufficientTable("xi* table ends at index " +
                                    std::to_string(xi_star.size() - 1) + ", need " +
                                    std::to_string(row));
        f.mutable_coeff(row) = xi_star[row][k] / factorial(k);
    }
    return f;
}

std::vector<std::vector<Rat>> dual_xi(const std::vector<std::vector<Rat>>& xi_table) {
    int M = static_cast<int>(xi_table.size()) - 1;
    // G[m][n] = coefficient of x^m in p_n = C(n, n-m) * xi[n][n-m].
    std::vector<std::vector<Rat>> G(M + 1, std::vector<Rat>(M + 1));
    for (int n = 0; n <= M; ++n)
        for (int m = 0; m <= n; ++m)
            G[m][n] = binomial(n, n - m) * xi_table[n][n - m];

    // Invert the unitriangular system column by column (back substitution).
    std::vector<std::vector<Rat>> B(M + 1, std::vector<Rat>(M + 1));
    for (int n = 0; n <= M; ++n) {
        B[n][n] = Rat(1);
        for (int m = n - 1; m >= 0; --m) {
            Rat acc(0);
            for (int j = m + 1; j <= n; ++j) acc += G[m][j] * B[j][n];
            B[m][n] = -acc;
        }
    }

    std::vector<std::vector<Rat>> xs(M + 1);
    for (int n = 0; n <= M; ++n) {
        xs[n].resize(n + 1);
        for (int k = 0; k <= n; ++k) xs[n][k] = B[n - k][n] / binomial(n, k);
    }
    return xs;
}

const XPoly& MonicFamily::p(int n) const {
    if (n < 0 || n > Ntab_)
        throw InsufficientTable("p_" + std::to_string(n) + " beyond poly_order " +
                                std::to_string(Ntab_));
    return polys_[n];
}

const YSeries<Rat>& MonicFamily::fn(int n) const {
    if (n < 0 || n >= static_cast<int>(fns_.size()))
        throw InsufficientTable("f_" + std::to_string(n) + " not materialized");
    return fns_[n];
}

Rat MonicFamily::xi(int n, int k) const {
    if (n < 0 || n > Ntab_ || k < 0 || k > n) return Rat(0);
    return xi_[n][k];
}

Rat MonicFamily::xi_star(int n, int k) const {
    if (n < 0 || n > Ntab_ || k < 0 || k > n) return Rat(0);
    return xi_star_[n][k];
}

void MonicFamily::finish(const FamilyOptions& opts) {
    N_ = opts.N;
    Ny_ = opts.Ny;
    Ntab_ = static_cast<int>(polys_.size()) - 1;
    if (Ntab_ < std::max(N_, Ny_))
        throw InsufficientTable("family data reaches index " + std::to_string(Ntab_) +
                                ", need " + std::to_string(std::max(N_, Ny_)));
    for (int n = 0; n <= Ntab_; ++n) {
        if (polys_[n].degree() != n || !polys_[n].is_monic())
            throw BadLeadingCoefficient("p_" + std::to_string(n) + " is not monic of degree " +
                                        std::to_string(n));
    }
    if (xi_.empty()) {
        xi_.resize(Ntab_ + 1);
        for (int n = 0; n <= Ntab_; ++n) {
            xi_[n].resize(n + 1);
            for (int k = 0; k <= n; ++k)
                xi_[n][k] = polys_[n].coeff(n - k) / umbra::binomial(n, k);
        }
    }
    xi_star_ = dual_xi(xi_);
    int nf = std::min(Ntab_, Ny_ + 4);
    fns_.reserve(nf + 1);
    for (int n = 0; n <= nf; ++n) fns_.push_back(compute_fn(xi_star_, n, Ny_));
}

MonicFamily MonicFamily::from_xi(const std::vector<std::vector<Rat>>& xi_table,
                                 const FamilyOptions& opts) {
    MonicFamily fam;
    int M = static_cast<int>(xi_table.size()) - 1;
    for (int n = 0; n <= M; ++n) {
        if (static_cast<int>(xi_table[n].size()) != n + 1)
            throw InsufficientTable("xi row " + std::to_string(n) + " must have " +
                                    std::to_string(n + 1) + " entries");
        if (!xi_table[n][0].is_one())
            throw BadLeadingCoefficient("xi[" + std::to_string(n) + "][0] must be 1");
    }
    fam.polys_.resize(M + 1);
    for (int n = 0; n <= M; ++n) {
        std::vector<Rat> c(n + 1);
        for (int k = 0; k <= n; ++k) c[n - k] = umbra::binomial(n, k) * xi_table[n][k];
        fam.polys_[n] = XPoly(std::move(c));
    }
    fam.xi_ = xi_table;
    fam.desc_ = "xi-table";
    fam.finish(opts);
    return fam;
}

MonicFamily MonicFamily::binomial(const YSeries<Rat>& f, const FamilyOptions& opts) {
    int Ntab = opts.resolved_poly_order();
    if (!f.coeff(0).is_zero() || !f.coeff(1).is_one())
        throw BadLowestTerms("binomial series must lie in y + y^2*C[[y]]");
    if (f.order() < Ntab)
        throw InsufficientTable("binomial series order " + std::to_string(f.order()) +
                                " below required poly order " + std::to_string(Ntab));
    YSeries<Rat> phi = series_revert(f.truncate(Ntab));
    BiSeries xphi(Ntab);
    for (int k = 1; k <= Ntab; ++k)
        xphi.mutable_coeff(k) = XPoly::monomial(1, phi.coeff(k));
    BiSeries E = series_exp(xphi);
    std::vector<XPoly> polys(Ntab + 1);
    for (int n = 0; n <= Ntab; ++n) polys[n] = E.coeff(n) * factorial(n);
    MonicFamily fam = from_polys(std::move(polys), opts, "binomial");
    fam.binom_f_ = f.truncate(std::max(opts.Ny, Ntab));
    return fam;
}

MonicFamily MonicFamily::from_fns(const std::vector<YSeries<Rat>>& fns,
                                  const FamilyOptions& opts) {
    int Ntab = opts.resolved_poly_order();
    if (static_cast<int>(fns.size()) <= Ntab)
        throw InsufficientTable("need f_0..f_" + std::to_string(Ntab) + " to recover p_n");
    for (int n = 0; n <= Ntab; ++n) {
        if (fns[n].order() < Ntab)
            throw InsufficientTable("f_" + std::to_string(n) + " must carry order >= " +
                                    std::to_string(Ntab));
        if (fns[n].valuation() != std::min(n, fns[n].order() + 1) ||
            (n <= fns[n].order() && !fns[n].coeff(n).is_one()))
            throw BadValuation("f_" + std::to_string(n) + " must lie in y^n + y^{n+1}*C[[y]]");
    }
    // Match coefficients of y^k in e^{xy} = sum p_n f_n / n!:
    //   x^k/k! = sum_{n<=k} p_n [y^k]f_n / n!.
    std::vector<XPoly> polys(Ntab + 1);
    for (int k = 0; k <= Ntab; ++k) {
        XPoly acc = XPoly::monomial(k);
        for (int n = 0; n < k; ++n)
            acc -= polys[n] * (factorial(k) / factorial(n) * fns[n].coeff(k));
        polys[k] = acc;
    }
    MonicFamily fam = from_polys(std::move(polys), opts, "fns");
    // The canonical (xi*-synthesized) series must reproduce the input.
    for (int n = 0; n < fam.fn_count(); ++n)
        if (fam.fns_[n] != fns[n].truncate(opts.Ny))
            throw InconsistentSystem("prescribed f_" + std::to_string(n) +
                                     " disagrees with the xi*-synthesized series");
    return fam;
}

MonicFamily MonicFamily::from_polys(std::vector<XPoly> polys, const FamilyOptions& opts,
                                    std::string desc) {
    MonicFamily fam;
    fam.polys_ = std::move(polys);
    fam.desc_ = std::move(desc);
    fam.finish(opts);
    return fam;
}

MonicFamily MonicFamily::builtin(const std::string& name, const FamilyOptions& opts) {
    int Ntab = opts.resolved_poly_order();
    if (name == "monomial") {
        std::vector<std::vector<Rat>> xi(Ntab + 1);
        for (int n = 0; n <= Ntab; ++n) {
            xi[n].resize(n + 1);
            xi[n][0] = Rat(1);
        }
        MonicFamily fam = from_xi(xi, opts);
        fam.desc_ = "builtin:monomial";
        return fam;
    }
    if (name == "falling") {
        int ord = std::max(Ntab, opts.Ny);
        YSeries<Rat> f(ord);
        for (int k = 1; k <= ord; ++k) f.mutable_coeff(k) = factorial(k).inv();
        MonicFamily fam = binomial(f, opts);
        fam.desc_ = "builtin:falling";
        return fam;
    }
    if (name == "qexp") {
        int ord = std::max(Ntab, opts.Ny);
        std::vector<YSeries<Rat>> fns;
        fns.reserve(Ntab + 1);
        for (int n = 0; n <= Ntab; ++n) {
            YSeries<Rat> e(ord);
            if (ord >= 1) e.mutable_coeff(1) = Rat(static_cast<long>(n) * (n - 1), 2);
            fns.push_back(series_exp(e).shift_up(n).truncate(ord));
        }
        MonicFamily fam = from_fns(fns, opts);
        fam.desc_ = "builtin:qexp";
        return fam;
    }
    throw UnknownAtom("unknown builtin family '" + name + "'");
}

MonicFamily MonicFamily::random(std::uint64_t seed, bool vanishing, const FamilyOptions& opts) {
    int Ntab = opts.resolved_poly_order();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num(-3, 3);
    std::uniform_int_distribution<long> den(1, 3);
    std::vector<std::vector<Rat>> xi(Ntab + 1);
    for (int n = 0; n <= Ntab; ++n) {
        xi[n].resize(n + 1);
        xi[n][0] = Rat(1);
        for (int k = 1; k <= n; ++k) xi[n][k] = Rat(num(rng), den(rng));
        if (vanishing && n >= 1) xi[n][n] = Rat(0);
    }
    MonicFamily fam = from_xi(xi, opts);
    fam.desc_ = std::string("random:") + std::to_string(seed) + (vanishing ? ":vanishing" : "");
    return fam;
}

MonicFamily MonicFamily::dual() const {
    FamilyOptions opts{N_, Ny_, Ntab_};
    MonicFamily d = from_xi(xi_star_, opts);
    d.desc_ = desc_ + "*";
    return d;
}

MonicFamily MonicFamily::tilde() const {
    if (Ntab_ < 1) throw InsufficientTable("tilde family needs poly_order >= 1");
    // f_0 to full internal order: tail coefficients act on high-degree p_{n+1}.
    YSeries<Rat> f0 = compute_fn(xi_star_, 0, Ntab_);
    std::vector<XPoly> polys(Ntab_);
    for (int n = 0; n + 1 <= Ntab_; ++n) {
        XPoly q = polys_[n + 1];
        XPoly acc = q; // f0[0] = 1
        XPoly dq = q;
        for (int k = 1; k <= q.degree(); ++k) {
            dq = dq.deriv();
            if (f0.coeff(k).is_zero()) continue;
            acc += dq * f0.coeff(k);
        }
        polys[n] = acc.div_x(); // NonzeroRemainder here means a construction bug upstream
    }
    FamilyOptions opts{N_, Ny_, Ntab_ - 1};
    if (opts.poly_order < std::max(N_, Ny_)) {
        opts.N = std::min(N_, opts.poly_order);
        opts.Ny = std::min(Ny_, opts.poly_order);
    }
    MonicFamily t = from_polys(std::move(polys), opts, desc_ + "~");
    return t;
}

LemmaReport MonicFamily::vanish_lemma_report() const {
    LemmaReport r;
    YSeries<Rat> one = YSeries<Rat>::constant(Ny_, Rat(1));
    r.f0_is_one = (fns_[0] == one);
    r.all_vanish_at_zero = true;
    for (int n = 1; n <= std::min(Ntab_, Ny_); ++n)
        if (!polys_[n].at_zero().is_zero()) { r.all_vanish_at_zero = false; break; }
    return r;
}

LemmaReport MonicFamily::vanish_lemma_check() const {
    LemmaReport r = vanish_lemma_report();
    if (!r.agree())
        throw LemmaViolation("f_0 == 1 and p_n(0) == 0 predicates disagree for " + desc_);
    return r;
}

GfIdentityResult check_gf_identity(const MonicFamily& fam, int window) {
    GfIdentityResult res;
    window = std::min({window, fam.Ny(), fam.poly_order()});
    for (int b = 0; b <= window; ++b) {
        XPoly sum;
        for (int n = 0; n <= b && n < fam.fn_count(); ++n) {
            Rat c = fam.fn(n).coeff(b);
            if (c.is_zero()) continue;
            sum += fam.p(n) * (c / factorial(n));
        }
        XPoly expect = XPoly::monomial(b, factorial(b).inv());
        if (sum != expect) {
            XPoly diff = sum - expect;
            res.ok = false;
            res.bad_b = b;
            for (int a = 0; a <= diff.degree(); ++a)
                if (!diff.coeff(a).is_zero()) { res.bad_a = a; break; }
            return res;
        }
    }
    return res;
}

} // namespace umbra
