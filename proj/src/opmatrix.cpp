#include "umbra/opmatrix.hpp"

#include <algorithm>

#include "umbra/errors.hpp"

namespace umbra {

OpMatrix OpMatrix::identity(int N) {
    OpMatrix m(N, 0, N);
    for (int i = 0; i <= N; ++i) m.e_[i][i] = Rat(1);
    return m;
}

OpMatrix OpMatrix::zero(int N) { return OpMatrix(N, 0, N); }

OpMatrix OpMatrix::mult_x(int N) {
    OpMatrix m(N, 1, N - 1);
    for (int j = 0; j < N; ++j) m.e_[j + 1][j] = Rat(1);
    return m;
}

OpMatrix OpMatrix::deriv(int N) {
    OpMatrix m(N, -1, N);
    for (int j = 1; j <= N; ++j) m.e_[j - 1][j] = Rat(j);
    return m;
}

OpMatrix OpMatrix::diagonal(int N, const std::vector<Rat>& values) {
    OpMatrix m(N, 0, N);
    for (int j = 0; j <= N; ++j)
        m.e_[j][j] = (j < static_cast<int>(values.size())) ? values[j] : Rat(0);
    return m;
}

OpMatrix OpMatrix::theta(int N) {
    OpMatrix m(N, 0, N);
    for (int j = 0; j <= N; ++j) m.e_[j][j] = Rat(j);
    return m;
}

XPoly OpMatrix::column(int j) const {
    std::vector<Rat> c(N_ + 1);
    for (int i = 0; i <= N_; ++i) c[i] = e_[i][j];
    return XPoly(std::move(c));
}

void OpMatrix::set_column(int j, const XPoly& p) {
    for (int i = 0; i <= N_; ++i) e_[i][j] = p.coeff(i);
}

XPoly OpMatrix::apply(const XPoly& p) const {
    if (p.degree() > window_)
        throw WindowTooSmall("applying operator with window " + std::to_string(window_) +
                             " to a polynomial of degree " + std::to_string(p.degree()));
    std::vector<Rat> out(N_ + 1);
    for (int j = 0; j <= std::min(p.degree(), N_); ++j) {
        Rat c = p.coeff(j);
        if (c.is_zero()) continue;
        for (int i = 0; i <= N_; ++i)
            if (!e_[i][j].is_zero()) out[i] += e_[i][j] * c;
    }
    return XPoly(std::move(out));
}

OpMatrix operator*(const OpMatrix& a, const OpMatrix& b) {
    int N = a.N_;
    int window = std::min(b.window_, a.window_ - std::max(b.raise_, 0));
    OpMatrix m(N, a.raise_ + b.raise_, window);
    for (int i = 0; i <= N; ++i)
        for (int k = 0; k <= N; ++k) {
            if (a.e_[i][k].is_zero()) continue;
            for (int j = 0; j <= N; ++j)
                if (!b.e_[k][j].is_zero()) m.e_[i][j] += a.e_[i][k] * b.e_[k][j];
        }
    return m;
}

OpMatrix operator+(const OpMatrix& a, const OpMatrix& b) {
    OpMatrix m(a.N_, std::max(a.raise_, b.raise_), std::min(a.window_, b.window_));
    for (int i = 0; i <= a.N_; ++i)
        for (int j = 0; j <= a.N_; ++j) m.e_[i][j] = a.e_[i][j] + b.e_[i][j];
    return m;
}

OpMatrix operator-(const OpMatrix& a, const OpMatrix& b) {
    OpMatrix m(a.N_, std::max(a.raise_, b.raise_), std::min(a.window_, b.window_));
    for (int i = 0; i <= a.N_; ++i)
        for (int j = 0; j <= a.N_; ++j) m.e_[i][j] = a.e_[i][j] - b.e_[i][j];
    return m;
}

OpMatrix OpMatrix::scaled(const Rat& s) const {
    OpMatrix m(N_, raise_, window_);
    for (int i = 0; i <= N_; ++i)
        for (int j = 0; j <= N_; ++j) m.e_[i][j] = e_[i][j] * s;
    return m;
}

OpMatrix OpMatrix::pow(int k) const {
    OpMatrix acc = identity(N_);
    for (int i = 0; i < k; ++i) acc = acc * *this;
    return acc;
}

OpMatrix::Mismatch OpMatrix::first_mismatch(const OpMatrix& a, const OpMatrix& b, int w) {
    if (w < 0) w = std::min(a.window_, b.window_);
    Mismatch mm;
    for (int j = 0; j <= std::min(w, a.N_); ++j)
        for (int i = 0; i <= a.N_; ++i)
            if (a.e_[i][j] != b.e_[i][j]) {
                mm.found = true;
                mm.row = i;
                mm.col = j;
                mm.lhs = a.e_[i][j];
                mm.rhs = b.e_[i][j];
                return mm;
            }
    return mm;
}

YSeries<Rat> OverlineOp::apply(const YSeries<Rat>& s) const {
    int ord = std::min(s.order(), N_);
    YSeries<Rat> out(ord);
    for (int k = 0; k <= ord; ++k) {
        Rat acc(0);
        for (int m = 0; m <= std::min(s.order(), N_); ++m)
            if (!e_[k][m].is_zero()) acc += e_[k][m] * s.coeff(m);
        out.mutable_coeff(k) = acc;
    }
    return out;
}

BiSeries OverlineOp::apply(const BiSeries& s) const {
    int ord = std::min(s.order(), N_);
    BiSeries out(ord);
    for (int k = 0; k <= ord; ++k) {
        XPoly acc;
        for (int m = 0; m <= std::min(s.order(), N_); ++m)
            if (!e_[k][m].is_zero()) acc += s.coeff(m) * e_[k][m];
        out.mutable_coeff(k) = acc;
    }
    return out;
}

OpMatrix op_G(const MonicFamily& fam) {
    int N = fam.N();
    OpMatrix g(N, 0, N);
    for (int n = 0; n <= N; ++n) g.set_column(n, fam.p(n));
    return g;
}

OpMatrix op_Ginv(const MonicFamily& fam) {
    int N = fam.N();
    OpMatrix g(N, 0, N);
    for (int n = 0; n <= N; ++n) {
        std::vector<Rat> c(n + 1);
        for (int k = 0; k <= n; ++k) c[n - k] = binomial(n, k) * fam.xi_star(n, k);
        g.set_column(n, XPoly(std::move(c)));
    }
    return g;
}

OpMatrix op_U(const MonicFamily& fam) {
    return op_G(fam) * OpMatrix::mult_x(fam.N()) * op_Ginv(fam);
}

OpMatrix op_D(const MonicFamily& fam) {
    return op_G(fam) * OpMatrix::deriv(fam.N()) * op_Ginv(fam);
}

OpMatrix diag_in_P(const MonicFamily& fam, const std::vector<Rat>& values) {
    return op_G(fam) * OpMatrix::diagonal(fam.N(), values) * op_Ginv(fam);
}

OverlineOp overline(const OpMatrix& T) {
    int N = T.N();
    OverlineOp tb(N, T.window());
    for (int k = 0; k <= N; ++k) {
        Rat inv_kfac = factorial(k).inv();
        for (int m = 0; m <= N; ++m)
            tb.at(k, m) = factorial(m) * inv_kfac * T.at(m, k);
    }
    return tb;
}

OpMatrix overline_inverse(const OverlineOp& Tbar, int raise) {
    int N = Tbar.N();
    OpMatrix T(N, raise, Tbar.rows_valid());
    for (int m = 0; m <= N; ++m) {
        Rat inv_mfac = factorial(m).inv();
        for (int k = 0; k <= N; ++k)
            T.at(m, k) = factorial(k) * inv_mfac * Tbar.at(k, m);
    }
    return T;
}

OpMatrix normal_order_subst(const BiSeries& F, const OpMatrix& left, const OpMatrix& right) {
    int N = left.N();
    int max_j = 0;
    for (int k = 0; k <= F.order(); ++k) max_j = std::max(max_j, F.coeff(k).degree());
    std::vector<OpMatrix> lpow{OpMatrix::identity(N)};
    for (int j = 1; j <= max_j; ++j) lpow.push_back(lpow.back() * left);
    OpMatrix acc = OpMatrix::zero(N);
    acc.set_window(N);
    OpMatrix rpow = OpMatrix::identity(N);
    bool any = false;
    for (int k = 0; k <= F.order(); ++k) {
        if (k > 0) rpow = rpow * right;
        const XPoly& c = F.coeff(k);
        for (int j = 0; j <= c.degree(); ++j) {
            if (c.coeff(j).is_zero()) continue;
            OpMatrix term = (lpow[j] * rpow).scaled(c.coeff(j));
            // Sharper than the generic composition rule: raise(rpow) is an
            // upper bound on the degree gain of the right factor, so inputs
            // of degree <= window(lpow) - raise(rpow) stay inside lpow's
            // window even when that raise is negative (degree-lowering).
            term.set_window(std::min(rpow.window(), lpow[j].window() - rpow.raise()));
            acc = acc + term;
            any = true;
        }
    }
    if (!any) { acc.set_window(N); acc.set_raise(0); }
    if (acc.window() < 0)
        throw WindowTooSmall("normal-ordered substitution has empty validity window");
    return acc;
}

BiSeries gf_Q(const MonicFamily& fam, int y_order) {
    if (y_order > fam.poly_order())
        throw InsufficientTable("generating function order " + std::to_string(y_order) +
                                " exceeds poly_order " + std::to_string(fam.poly_order()));
    BiSeries Q(y_order);
    for (int n = 0; n <= y_order; ++n)
        Q.mutable_coeff(n) = fam.p(n) * factorial(n).inv();
    return Q;
}

} // namespace umbra
