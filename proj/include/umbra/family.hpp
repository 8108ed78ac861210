#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "umbra/poly.hpp"
#include "umbra/series.hpp"

namespace umbra {

// Construction/truncation parameters for a family.
//   N          max public polynomial index (matrices act on degrees 0..N)
//   Ny         truncation order of the series f_n
//   poly_order highest internal polynomial index (>= N); defaults to
//              max(N, Ny) + 4 so that f_{n+k} ratios and the tilde family
//              are available.
struct FamilyOptions {
    int N = 12;
    int Ny = 16;
    int poly_order = -1;

    int resolved_poly_order() const {
        return poly_order >= 0 ? poly_order : std::max(N, Ny) + 4;
    }
};

struct LemmaReport {
    bool f0_is_one = false;
    bool all_vanish_at_zero = false;
    bool agree() const { return f0_is_one == all_vanish_at_zero; }
};

// A monic polynomial family p_0..p_N with its xi / xi* coefficient tables and
// the synthesized series family f_0..f_N. Immutable after construction.
//
// Internally polynomials and tables are kept up to index poly_order so that
// duals, tilde families and index-shifted series ratios stay available.
class MonicFamily {
public:
    // p_n(x) = sum_k C(n,k) xi[n][k] x^(n-k); requires xi[n][0] = 1.
    // The table must reach index opts.resolved_poly_order().
    static MonicFamily from_xi(const std::vector<std::vector<Rat>>& xi_table,
                               const FamilyOptions& opts = {});

    // Binomial family with series f in y + y^2 C[[y]]; p_n from exp(x*phi(y)),
    // phi = revert(f). `f` is evaluated/extended by the callable to any order.
    static MonicFamily binomial(const YSeries<Rat>& f, const FamilyOptions& opts = {});

    // Recover p_n from prescribed f_n (valuation n, unit leading series
    // coefficient) by the triangular match against the e^{xy} kernel.
    // fns must reach index >= poly order and carry order >= poly order.
    static MonicFamily from_fns(const std::vector<YSeries<Rat>>& fns,
                                const FamilyOptions& opts = {});

    // "monomial", "falling" (f = e^y - 1), "qexp" (f_n = y^n e^{n(n-1)y/2}).
    static MonicFamily builtin(const std::string& name, const FamilyOptions& opts = {});

    // Seeded random xi-table family with small rational entries.
    // vanishing=true forces p_n(0) = 0 for n >= 1 (i.e. xi[n][n] = 0).
    static MonicFamily random(std::uint64_t seed, bool vanishing, const FamilyOptions& opts = {});

    int N() const { return N_; }
    int Ny() const { return Ny_; }
    int poly_order() const { return Ntab_; }

    // n may exceed N() up to poly_order().
    const XPoly& p(int n) const;
    const YSeries<Rat>& fn(int n) const; // available for n <= min(poly_order, ...)
    int fn_count() const { return static_cast<int>(fns_.size()); }

    Rat xi(int n, int k) const;
    Rat xi_star(int n, int k) const;
    const std::vector<std::vector<Rat>>& xi_table() const { return xi_; }
    const std::vector<std::vector<Rat>>& xi_star_table() const { return xi_star_; }

    // The dual family P*: p*_n = G_P^{-1} x^n, i.e. the family built from xi*.
    MonicFamily dual() const;

    // P~ = { f_0(D) p_{n+1}(x) / x }; series side f~_n = (f_{n+1}/f_0)'/(n+1).
    MonicFamily tilde() const;

    LemmaReport vanish_lemma_report() const;
    // Throws LemmaViolation if the two predicates disagree.
    LemmaReport vanish_lemma_check() const;

    // For binomial families, the defining series f (order >= Ny).
    const std::optional<YSeries<Rat>>& binomial_f() const { return binom_f_; }

    std::string describe() const { return desc_; }

private:
    MonicFamily() = default;
    static MonicFamily from_polys(std::vector<XPoly> polys, const FamilyOptions& opts,
                                  std::string desc);
    void finish(const FamilyOptions& opts); // fills xi*, fns from xi/polys

    int N_ = 0, Ny_ = 0, Ntab_ = 0;
    std::vector<XPoly> polys_;                  // 0..Ntab
    std::vector<std::vector<Rat>> xi_;          // rows 0..Ntab
    std::vector<std::vector<Rat>> xi_star_;     // rows 0..Ntab
    std::vector<YSeries<Rat>> fns_;             // 0..min(Ntab, Ny+4), order Ny
    std::optional<YSeries<Rat>> binom_f_;
    std::string desc_ = "family";
};

// f_n(y) = sum_k y^{n+k} xi*[n+k][k] / k!, truncated at order Ny.
// Requires the table to reach index min(n + Ny, Ny') actually touched.
YSeries<Rat> compute_fn(const std::vector<std::vector<Rat>>& xi_star, int n, int Ny);

// Inverts the unitriangular change-of-basis system: given xi rows 0..M,
// returns xi* rows 0..M with x^n = sum_k C(n,k) xi*[n][k] p_{n-k}(x).
std::vector<std::vector<Rat>> dual_xi(const std::vector<std::vector<Rat>>& xi_table);

// Compares sum_{n} p_n(x) f_n(y)/n! with e^{xy} on all monomials x^a y^b with
// a,b <= window. Returns true iff they agree exactly.
struct GfIdentityResult {
    bool ok = true;
    int bad_a = -1, bad_b = -1;
};
GfIdentityResult check_gf_identity(const MonicFamily& fam, int window);

} // namespace umbra
