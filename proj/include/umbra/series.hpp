#pragma once

#include <algorithm>
#include <ostream>
#include <string>
#include <vector>

#include "umbra/errors.hpp"
#include "umbra/poly.hpp"
#include "umbra/rat.hpp"

namespace umbra {

inline bool ring_is_zero(const Rat& r) { return r.is_zero(); }
inline bool ring_is_zero(const XPoly& p) { return p.is_zero(); }

// Inverse of an invertible constant term. For XPoly coefficients the constant
// term of a unit series must be a degree-0 polynomial.
inline Rat invert_unit(const Rat& r) {
    if (r.is_zero()) throw NonUnitDivisor("constant term is zero");
    return r.inv();
}
inline XPoly invert_unit(const XPoly& p) {
    if (p.degree() != 0)
        throw NonUnitDivisor("constant term is not an invertible degree-0 polynomial: " + p.str());
    return XPoly(p.coeff(0).inv());
}

// Truncated formal power series in y with coefficients in R.
// Stores coefficients of y^0 .. y^order; all arithmetic truncates to the
// minimum operand order and records the resulting order.
template <typename R>
class YSeries {
public:
    YSeries() : order_(0), c_(1) {}
    explicit YSeries(int order) : order_(order), c_(order + 1) {}
    YSeries(int order, std::vector<R> coeffs) : order_(order), c_(std::move(coeffs)) {
        c_.resize(order_ + 1);
    }

    static YSeries y(int order) {
        YSeries s(order);
        if (order >= 1) s.c_[1] = R(1);
        return s;
    }
    static YSeries constant(int order, const R& v) {
        YSeries s(order);
        s.c_[0] = v;
        return s;
    }

    int order() const { return order_; }
    const R& coeff(int k) const {
        static const R zero{};
        if (k < 0 || k > order_) return zero;
        return c_[k];
    }
    R& mutable_coeff(int k) { return c_[k]; }
    const std::vector<R>& coeffs() const { return c_; }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](const R& v) { return ring_is_zero(v); });
    }

    // Index of the lowest nonzero coefficient; order()+1 when zero.
    int valuation() const {
        for (int k = 0; k <= order_; ++k)
            if (!ring_is_zero(c_[k])) return k;
        return order_ + 1;
    }

    YSeries truncate(int new_order) const {
        YSeries s(new_order);
        for (int k = 0; k <= std::min(order_, new_order); ++k) s.c_[k] = c_[k];
        return s;
    }

    // Exact division by y^k: the k lowest coefficients must vanish.
    YSeries shift_down(int k) const {
        for (int j = 0; j < std::min(k, order_ + 1); ++j)
            if (!ring_is_zero(c_[j]))
                throw BadValuation("shift_down(" + std::to_string(k) + ") on series of valuation " +
                                   std::to_string(valuation()));
        YSeries s(order_ - k);
        for (int j = 0; j <= order_ - k; ++j) s.c_[j] = c_[j + k];
        return s;
    }

    YSeries shift_up(int k) const {
        YSeries s(order_ + k);
        for (int j = 0; j <= order_; ++j) s.c_[j + k] = c_[j];
        return s;
    }

    YSeries scaled(const Rat& s) const {
        YSeries r(order_);
        for (int k = 0; k <= order_; ++k) r.c_[k] = c_[k] * s;
        return r;
    }
    YSeries scaled_by(const R& s) const {
        YSeries r(order_);
        for (int k = 0; k <= order_; ++k) r.c_[k] = c_[k] * s;
        return r;
    }

    friend YSeries operator+(const YSeries& a, const YSeries& b) {
        int n = std::min(a.order_, b.order_);
        YSeries s(n);
        for (int k = 0; k <= n; ++k) s.c_[k] = a.c_[k] + b.c_[k];
        return s;
    }
    friend YSeries operator-(const YSeries& a, const YSeries& b) {
        int n = std::min(a.order_, b.order_);
        YSeries s(n);
        for (int k = 0; k <= n; ++k) s.c_[k] = a.c_[k] - b.c_[k];
        return s;
    }
    YSeries operator-() const {
        YSeries s(order_);
        for (int k = 0; k <= order_; ++k) s.c_[k] = -c_[k];
        return s;
    }

    friend bool operator==(const YSeries& a, const YSeries& b) {
        return a.order_ == b.order_ && a.c_ == b.c_;
    }
    friend bool operator!=(const YSeries& a, const YSeries& b) { return !(a == b); }

    std::string str(const std::string& var = "y") const;

private:
    int order_;
    std::vector<R> c_;
};

template <typename R>
bool ring_is_zero(const YSeries<R>& s) { return s.is_zero(); }

// Cauchy product, truncated to the minimum operand order.
template <typename R>
YSeries<R> series_mul(const YSeries<R>& a, const YSeries<R>& b) {
    int n = std::min(a.order(), b.order());
    YSeries<R> s(n);
    for (int i = 0; i <= n; ++i) {
        if (ring_is_zero(a.coeff(i))) continue;
        for (int j = 0; i + j <= n; ++j) {
            if (ring_is_zero(b.coeff(j))) continue;
            s.mutable_coeff(i + j) += a.coeff(i) * b.coeff(j);
        }
    }
    return s;
}

// q with q*b = a up to truncation; requires b(0) invertible.
template <typename R>
YSeries<R> series_div(const YSeries<R>& a, const YSeries<R>& b) {
    int n = std::min(a.order(), b.order());
    auto binv = invert_unit(b.coeff(0));
    YSeries<R> q(n);
    for (int k = 0; k <= n; ++k) {
        R acc = a.coeff(k);
        for (int j = 1; j <= k; ++j) {
            if (ring_is_zero(b.coeff(j))) continue;
            acc = acc - b.coeff(j) * q.coeff(k - j);
        }
        q.mutable_coeff(k) = acc * binv;
    }
    return q;
}

// Full series inverse, enabling division towers like YSeries<YSeries<Rat>>.
inline YSeries<Rat> invert_unit(const YSeries<Rat>& s) {
    return series_div(YSeries<Rat>::constant(s.order(), Rat(1)), s);
}
inline YSeries<Rat> operator*(const YSeries<Rat>& a, const YSeries<Rat>& b) {
    return series_mul(a, b);
}

// outer(inner), truncated to the common order; inner must have zero constant term.
template <typename R>
YSeries<R> series_compose(const YSeries<R>& outer, const YSeries<R>& inner) {
    if (!ring_is_zero(inner.coeff(0)))
        throw NonzeroConstantTerm("composition inner series has nonzero constant term");
    int n = std::min(outer.order(), inner.order());
    YSeries<R> acc(n);
    for (int k = outer.order(); k >= 0; --k) {
        acc = series_mul(acc, inner.truncate(n));
        acc.mutable_coeff(0) += outer.coeff(k);
    }
    return acc;
}

template <typename R>
YSeries<R> deriv_y(const YSeries<R>& g) {
    YSeries<R> d(std::max(g.order() - 1, 0));
    for (int k = 1; k <= g.order(); ++k)
        if (k - 1 <= d.order()) d.mutable_coeff(k - 1) = g.coeff(k) * Rat(k);
    if (g.order() == 0) d.mutable_coeff(0) = R{};
    return d;
}

// 0-derivative L: g(y) -> (g(y) - g(0)) / y, a pure coefficient shift.
template <typename R>
YSeries<R> zero_derivative_L(const YSeries<R>& g) {
    YSeries<R> d(std::max(g.order() - 1, 0));
    for (int k = 1; k <= g.order(); ++k)
        if (k - 1 <= d.order()) d.mutable_coeff(k - 1) = g.coeff(k);
    if (g.order() == 0) d.mutable_coeff(0) = R{};
    return d;
}

// Formal exponential; requires a(0) = 0.
template <typename R>
YSeries<R> series_exp(const YSeries<R>& a) {
    if (!ring_is_zero(a.coeff(0)))
        throw BadConstantTerm("exp of a series with nonzero constant term");
    int n = a.order();
    YSeries<R> e(n);
    e.mutable_coeff(0) = R(1);
    for (int k = 1; k <= n; ++k) {
        R acc{};
        for (int j = 1; j <= k; ++j) {
            if (ring_is_zero(a.coeff(j))) continue;
            acc = acc + (a.coeff(j) * Rat(j)) * e.coeff(k - j);
        }
        e.mutable_coeff(k) = acc * Rat(1, k);
    }
    return e;
}

// Formal logarithm; requires a(0) = 1.
template <typename R>
YSeries<R> series_log(const YSeries<R>& a) {
    if (ring_is_zero(a.coeff(0) - R(1)))
        ; // ok
    else
        throw BadConstantTerm("log of a series with constant term != 1");
    int n = a.order();
    YSeries<R> l(n);
    for (int k = 1; k <= n; ++k) {
        R acc = a.coeff(k);
        for (int j = 1; j < k; ++j) {
            if (ring_is_zero(l.coeff(j))) continue;
            acc = acc - (l.coeff(j) * Rat(j, k)) * a.coeff(k - j);
        }
        l.mutable_coeff(k) = acc;
    }
    return l;
}

// Functional inverse by Newton iteration on composition; requires
// f in y + y^2 C[[y]]. Correctness is defined by the compose-back property.
inline YSeries<Rat> series_revert(const YSeries<Rat>& f) {
    if (!f.coeff(0).is_zero() || !f.coeff(1).is_one())
        throw BadLowestTerms("reversion requires f in y + y^2*C[[y]]");
    int n = f.order();
    YSeries<Rat> g = YSeries<Rat>::y(n);
    YSeries<Rat> fp = deriv_y(f).truncate(n);
    for (;;) {
        YSeries<Rat> err = series_compose(f, g) - YSeries<Rat>::y(n);
        if (err.is_zero()) break;
        YSeries<Rat> corr = series_div(err, series_compose(fp, g));
        g = g - corr;
    }
    return g;
}

using BiSeries = YSeries<XPoly>;

template <typename R>
std::string YSeries<R>::str(const std::string& var) const {
    std::string out;
    for (int k = 0; k <= order_; ++k) {
        if (ring_is_zero(c_[k])) continue;
        std::string coeff_str;
        if constexpr (std::is_same_v<R, Rat>) coeff_str = c_[k].str();
        else coeff_str = "(" + c_[k].str() + ")";
        std::string pow = (k == 0) ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
        std::string term = pow.empty() ? coeff_str
                         : (coeff_str == "1" ? pow : coeff_str + "*" + pow);
        out += (out.empty() ? "" : " + ") + term;
    }
    if (out.empty()) out = "0";
    return out + " + O(" + var + "^" + std::to_string(order_ + 1) + ")";
}

template <typename R>
std::ostream& operator<<(std::ostream& os, const YSeries<R>& s) { return os << s.str(); }

} // namespace umbra
