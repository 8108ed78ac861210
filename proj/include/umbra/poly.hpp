#pragma once

#include <algorithm>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include "umbra/errors.hpp"
#include "umbra/rat.hpp"

namespace umbra {

// Dense polynomial in x over Rat, trailing zeros trimmed.
// degree() of the zero polynomial is -1 (the "minus infinity" marker).
class XPoly {
public:
    XPoly() = default;
    XPoly(const Rat& c) { if (!c.is_zero()) coeffs_.push_back(c); } // NOLINT
    XPoly(long c) : XPoly(Rat(c)) {}                                // NOLINT
    explicit XPoly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
    XPoly(std::initializer_list<Rat> coeffs) : coeffs_(coeffs) { trim(); }

    static XPoly monomial(int deg, const Rat& c = Rat(1)) {
        std::vector<Rat> v(deg + 1);
        v[deg] = c;
        return XPoly(std::move(v));
    }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_monic() const { return !coeffs_.empty() && coeffs_.back().is_one(); }

    Rat coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(coeffs_.size())) return Rat(0);
        return coeffs_[k];
    }
    const std::vector<Rat>& coeffs() const { return coeffs_; }

    Rat leading() const { return coeffs_.empty() ? Rat(0) : coeffs_.back(); }
    Rat at_zero() const { return coeff(0); }

    Rat eval(const Rat& x) const {
        Rat acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    XPoly deriv() const {
        if (coeffs_.size() <= 1) return {};
        std::vector<Rat> d(coeffs_.size() - 1);
        for (size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = Rat(static_cast<long>(k)) * coeffs_[k];
        return XPoly(std::move(d));
    }

    // Exact division by x; throws if the constant term is nonzero.
    XPoly div_x() const {
        if (!at_zero().is_zero())
            throw NonzeroRemainder("polynomial not divisible by x");
        if (coeffs_.empty()) return {};
        return XPoly(std::vector<Rat>(coeffs_.begin() + 1, coeffs_.end()));
    }

    XPoly shift_up(int k) const {
        if (is_zero()) return {};
        std::vector<Rat> v(coeffs_.size() + k);
        std::copy(coeffs_.begin(), coeffs_.end(), v.begin() + k);
        return XPoly(std::move(v));
    }

    XPoly truncate(int max_deg) const {
        if (degree() <= max_deg) return *this;
        if (max_deg < 0) return {};
        return XPoly(std::vector<Rat>(coeffs_.begin(), coeffs_.begin() + max_deg + 1));
    }

    friend XPoly operator+(const XPoly& a, const XPoly& b) {
        std::vector<Rat> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
        return XPoly(std::move(v));
    }
    friend XPoly operator-(const XPoly& a, const XPoly& b) {
        std::vector<Rat> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
        return XPoly(std::move(v));
    }
    XPoly operator-() const {
        std::vector<Rat> v(coeffs_.size());
        for (size_t i = 0; i < v.size(); ++i) v[i] = -coeffs_[i];
        return XPoly(std::move(v));
    }
    friend XPoly operator*(const XPoly& a, const XPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rat> v(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i].is_zero()) continue;
            for (size_t j = 0; j < b.coeffs_.size(); ++j)
                v[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return XPoly(std::move(v));
    }
    friend XPoly operator*(const XPoly& a, const Rat& s) {
        std::vector<Rat> v(a.coeffs_.size());
        for (size_t i = 0; i < v.size(); ++i) v[i] = a.coeffs_[i] * s;
        return XPoly(std::move(v));
    }
    friend XPoly operator*(const Rat& s, const XPoly& a) { return a * s; }

    XPoly& operator+=(const XPoly& o) { *this = *this + o; return *this; }
    XPoly& operator-=(const XPoly& o) { *this = *this - o; return *this; }

    friend bool operator==(const XPoly& a, const XPoly& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const XPoly& a, const XPoly& b) { return !(a == b); }

    std::string str(const std::string& var = "x") const;

    friend std::ostream& operator<<(std::ostream& os, const XPoly& p) { return os << p.str(); }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    std::vector<Rat> coeffs_;
};

inline std::string XPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
        Rat c = coeff(k);
        if (c.is_zero()) continue;
        std::string term;
        if (k == 0) {
            term = c.str();
        } else {
            std::string pow = (k == 1) ? var : var + "^" + std::to_string(k);
            if (c.is_one()) term = pow;
            else if (c == Rat(-1)) term = "-" + pow;
            else term = c.str() + "*" + pow;
        }
        if (out.empty()) out = term;
        else if (!term.empty() && term[0] == '-') out += " - " + term.substr(1);
        else out += " + " + term;
    }
    return out;
}

} // namespace umbra
