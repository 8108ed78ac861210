#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "umbra/family.hpp"
#include "umbra/opmatrix.hpp"

namespace umbra {

struct VerifyReport {
    std::string identity;
    std::string family;
    std::string family2; // set for two-family identities
    int N = 0;
    int Ny = 0;
    int window = -1;
    bool pass = false;
    std::string detail; // first mismatch / sub-check summary
    std::uint64_t seed = 0;
    double millis = 0.0;
};

// Stable catalog names: commutator, xi-repr, change-of-basis, prop-dp,
// prop-x, dpk, conj-dp, repr-theorem, theta-corollary, eigen-q,
// overline-consistency.
const std::vector<std::string>& identity_catalog();

// Coefficient functions c_j(n) = [y^j](num(n)/den(n)) for j <= max_j,
// n <= max_n; both series must share their valuation structure.
std::vector<std::vector<Rat>> ratio_coeff_table(
    const std::function<YSeries<Rat>(int)>& num,
    const std::function<YSeries<Rat>(int)>& den, int max_j, int max_n);

// sum_j diag_P(n -> c[j][n]) . D^j.
OpMatrix assemble_diag_series(const MonicFamily& fam, const std::vector<std::vector<Rat>>& c,
                              bool diag_in_p_basis, const OpMatrix& step);

// G_P = sum_k (D^k/k!) xi_k^theta, and the dual form for G^-1.
VerifyReport xi_representation_check(const MonicFamily& fam);

VerifyReport verify_commutator(const MonicFamily& fam);

// G_P G_Q^-1 = (x)(p/q)|_{U_Q D_Q} = (e/f)|_{U_P D_P}(D).
VerifyReport verify_change_of_basis(const MonicFamily& famP, const MonicFamily& famQ);

// Proposition: prop-dp, prop-x, dpk (k = 2,3), conj-dp.
VerifyReport verify_prop_dp(const MonicFamily& fam);
VerifyReport verify_prop_x(const MonicFamily& fam);
VerifyReport verify_dpk(const MonicFamily& fam, int k);
VerifyReport verify_conj_dp(const MonicFamily& fam);

// All four representations of an arbitrary operator T (raise(T) <= 0).
VerifyReport verify_representation_theorem(const MonicFamily& fam, const OpMatrix& T,
                                           const std::string& label = "T");

// Four theta representations plus the binomial degenerations when available.
VerifyReport verify_theta_corollary(const MonicFamily& fam);

// D_P Q = y Q and dbar_{P*} Q = x Q on the truncated kernel.
VerifyReport verify_eigen_q(const MonicFamily& fam);

// Overline transform round-trip and kernel consistency for D, x, U_P.
VerifyReport verify_overline_consistency(const MonicFamily& fam);

// qexp worked example: D_P = sum_k (U_P D_P)^k D^{k+1}/k! and
// theta = U_P D_P + (1/2) U_P^2 D_P^2 D.
VerifyReport verify_qexp_worked_example(const MonicFamily& fam);

// Seeded random lower-triangular operator with raise 0 and window N.
OpMatrix random_lower_triangular(int N, std::uint64_t seed);

// Dispatch by catalog name. `second` is used by change-of-basis (defaults to
// the monomial family when null); `seed` drives repr-theorem's random T.
VerifyReport run_identity(const std::string& name, const MonicFamily& fam,
                          const MonicFamily* second, std::uint64_t seed);

} // namespace umbra
