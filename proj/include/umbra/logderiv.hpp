#pragma once

#include <vector>

#include "umbra/family.hpp"
#include "umbra/opmatrix.hpp"

namespace umbra {

// Expansion of (x/n) p_n'(x)/p_n(x) in descending powers of x:
// coeffs[h] = coefficient of x^{-h}, h = 0..H; coeffs[0] = 1.
struct InverseXExpansion {
    int n = 0;
    std::vector<Rat> coeffs;
};

// Expansion of (y/n) (f*_n)'(y)/f*_n(y) in ascending powers of y.
struct YExpansion {
    int n = 0;
    std::vector<Rat> coeffs;
};

// All the exact ratio series in C[x][[y]] entering the inverse-x expansion.
// order is the common truncation order in y.
//
//   Q        sum p_k(x) y^k / k!
//   Qx       d/dx Q,  Qy = d/dy Q
//   W_ratio  x Q / Qy     = 1 + sum l_k(x) y^k,   deg l_k <= k-1
//   w0       (x/y) Qx/Qy  = 1 + sum m_k(x) y^k,   deg m_k <= k-1
//   h_ser    (1/x) Qy/Q   = 1 + sum h_k(x) y^k
//   d_ser    (1/y) Qx/Q   = 1 + sum d_k(x) y^k
struct LogDerivContext {
    explicit LogDerivContext(MonicFamily f) : fam(std::move(f)) {}

    MonicFamily fam;
    int order = 0;
    BiSeries Q{0}, Qx{0}, Qy{0};
    BiSeries W_ratio{0}, w0{0}, h_ser{0}, d_ser{0};
};

// Requires p_n(0) = 0 for n >= 1 (equivalently f_0 = 1). The default y-order
// is the family's internal polynomial extent.
LogDerivContext build_context(const MonicFamily& fam, int y_order = -1);

// xi_0..xi_K by iterating W = W_ratio (d/dy - n L) on w0 and reading the
// y = 0 coefficient. Requires ctx.order >= K + 2.
std::vector<XPoly> neumann_xi(const LogDerivContext& ctx, int n, int K);

// coeffs[h] = sum_M (-1)^M [x^{M-h}] xi_M, M = 0..K with K = H (n-1) unless
// overridden. Uses a top-coefficient window of width H+1, which is exact
// because every operation in the iteration only lowers nominal degrees.
InverseXExpansion assemble_expansion(const LogDerivContext& ctx, int n, int H,
                                     int K_override = -1);

// Independent check: expand x p_n'(x) / (n p_n(x)) by long division in 1/x.
InverseXExpansion oracle_logderiv(const MonicFamily& fam, int n, int H);

// Binomial specialization: W_ratio = 1/phi'(y), w0 = phi/(y phi') with
// phi = revert(f); every xi_M is a constant and coeffs[h] = (-1)^h xi_h.
InverseXExpansion binomial_closed_form(const MonicFamily& fam, int n, int H);

struct DegreeBoundReport {
    bool ok = true;
    std::vector<int> degrees; // deg xi_M, M = 0..K (-1 for zero)
    std::vector<int> bounds;  // floor(M (n-2)/(n-1))
};
DegreeBoundReport degree_bound_check(const LogDerivContext& ctx, int n, int K);

// Dual expansion via the role-swapped engine on [x^k] Q = f*_k(y)/k!.
// coeffs[h] = coefficient of y^h, h = 0..H; no negative powers occur.
YExpansion dual_fn_logderiv(const MonicFamily& fam, int n, int H);

// Direct series computation of y (f*_n)'/(n f*_n) for cross-checking.
YExpansion dual_direct(const MonicFamily& fam, int n, int H);

} // namespace umbra
