#pragma once

#include <functional>
#include <string>
#include <vector>

#include "umbra/family.hpp"
#include "umbra/poly.hpp"
#include "umbra/rat.hpp"
#include "umbra/series.hpp"

namespace umbra {

// Square (N+1)x(N+1) rational matrix over the monomial basis {x^0..x^N}.
// Column j holds the coordinates of (operator . x^j).
//
//   raise   degree-raise bound of the untruncated operator (+1 for x, -1 for D)
//   window  largest basis degree on which the matrix action equals the true
//           operator action; compositions update it conservatively as
//           window(AB) = min(window(B), window(A) - max(raise(B), 0)).
class OpMatrix {
public:
    OpMatrix(int N, int raise, int window)
        : N_(N), raise_(raise), window_(window),
          e_(N + 1, std::vector<Rat>(N + 1)) {}

    static OpMatrix identity(int N);
    static OpMatrix zero(int N);
    static OpMatrix mult_x(int N);          // raise +1, window N-1
    static OpMatrix deriv(int N);           // raise -1, window N
    static OpMatrix diagonal(int N, const std::vector<Rat>& values); // a_theta
    static OpMatrix theta(int N);           // xD

    int N() const { return N_; }
    int raise() const { return raise_; }
    int window() const { return window_; }
    void set_window(int w) { window_ = w; }
    void set_raise(int r) { raise_ = r; }

    const Rat& at(int row, int col) const { return e_[row][col]; }
    Rat& at(int row, int col) { return e_[row][col]; }

    // Column j as a polynomial (the image of x^j).
    XPoly column(int j) const;
    void set_column(int j, const XPoly& p);

    XPoly apply(const XPoly& p) const;

    friend OpMatrix operator*(const OpMatrix& a, const OpMatrix& b); // a after b
    friend OpMatrix operator+(const OpMatrix& a, const OpMatrix& b);
    friend OpMatrix operator-(const OpMatrix& a, const OpMatrix& b);
    OpMatrix scaled(const Rat& s) const;
    OpMatrix pow(int k) const;

    // Exact equality of columns 0..w (w = min of both windows if negative).
    struct Mismatch {
        bool found = false;
        int row = -1, col = -1;
        Rat lhs, rhs;
    };
    static Mismatch first_mismatch(const OpMatrix& a, const OpMatrix& b, int w = -1);

private:
    int N_;
    int raise_;
    int window_;
    std::vector<std::vector<Rat>> e_;
};

// Operator on truncated y-series, column k = coordinates of (op . y^k).
// Produced by the overline transform; rows 0..rows_valid are trustworthy.
class OverlineOp {
public:
    OverlineOp(int N, int rows_valid)
        : N_(N), rows_valid_(rows_valid), e_(N + 1, std::vector<Rat>(N + 1)) {}

    int N() const { return N_; }
    int rows_valid() const { return rows_valid_; }
    const Rat& at(int row, int col) const { return e_[row][col]; }
    Rat& at(int row, int col) { return e_[row][col]; }

    YSeries<Rat> apply(const YSeries<Rat>& s) const;
    BiSeries apply(const BiSeries& s) const;

private:
    int N_;
    int rows_valid_;
    std::vector<std::vector<Rat>> e_;
};

// G_P . x^n = p_n(x) and its inverse (columns = dual polynomials).
OpMatrix op_G(const MonicFamily& fam);
OpMatrix op_Ginv(const MonicFamily& fam);

// U_P = G x G^-1 (raise +1), D_P = G D G^-1 (raise -1).
OpMatrix op_U(const MonicFamily& fam);
OpMatrix op_D(const MonicFamily& fam);

// Eigenoperator in the P basis: result . p_n = values[n] . p_n.
OpMatrix diag_in_P(const MonicFamily& fam, const std::vector<Rat>& values);

// T_bar with T . e^{xy} = T_bar . e^{xy}: entries m!/k! * T[m][k].
// Valid rows limited by window(T).
OverlineOp overline(const OpMatrix& T);

// Reconstruct the x-side operator from an overline operator (the transform is
// an involution through the e^{xy} kernel).
OpMatrix overline_inverse(const OverlineOp& Tbar, int raise);

// Normal-ordered substitution: F = sum c_{jk} x^j y^k  ->  sum c_{jk} L^j R^k,
// all left factors to the left. Terms whose window bookkeeping collapses
// below zero are rejected via WindowTooSmall.
OpMatrix normal_order_subst(const BiSeries& F, const OpMatrix& left, const OpMatrix& right);

// Generating function Q_y^P(x) = sum_{n<=y_order} p_n(x) y^n / n!.
BiSeries gf_Q(const MonicFamily& fam, int y_order);

} // namespace umbra
