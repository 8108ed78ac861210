#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

#include "umbra/errors.hpp"

namespace umbra {

// Exact rational scalar. Always canonical: lowest terms, denominator > 0.
// Thin value wrapper around GMP's mpq_class; all arithmetic is exact.
class Rat {
public:
    Rat() : v_(0) {}
    Rat(long n) : v_(static_cast<signed long>(n)) {} // NOLINT: implicit by design
    Rat(int n) : v_(n) {}                            // NOLINT
    Rat(long num, long den) {
        if (den == 0) throw NonUnitDivisor("rational with zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }
    explicit Rat(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

    // Accepts "p", "-p", "p/q" with arbitrary-precision decimal digits.
    static Rat parse(const std::string& text) {
        mpq_class v;
        if (v.set_str(text, 10) != 0)
            throw SyntaxError("bad rational literal '" + text + "'");
        if (v.get_den() == 0)
            throw NonUnitDivisor("rational literal with zero denominator");
        v.canonicalize();
        Rat r;
        r.v_ = std::move(v);
        return r;
    }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }

    Rat inv() const {
        if (is_zero()) throw NonUnitDivisor("inverse of zero");
        return Rat(1 / v_);
    }

    // Floor of the rational as a plain long (used for small indices only).
    long floor_long() const {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
        return q.get_si();
    }

    std::string num_str() const { return v_.get_num().get_str(); }
    std::string den_str() const { return v_.get_den().get_str(); }
    std::string str() const {
        return is_integer() ? num_str() : num_str() + "/" + den_str();
    }

    friend Rat operator+(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ + b.v_)); }
    friend Rat operator-(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ - b.v_)); }
    friend Rat operator*(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ * b.v_)); }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.is_zero()) throw NonUnitDivisor("division by zero rational");
        return Rat(mpq_class(a.v_ / b.v_));
    }
    Rat operator-() const { return Rat(mpq_class(-v_)); }

    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o) { *this = *this / o; return *this; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

private:
    mpq_class v_;
};

// Exact binomial coefficient C(n, k) as a Rat.
inline Rat binomial(long n, long k) {
    if (k < 0 || k > n) return Rat(0);
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rat(mpq_class(b));
}

inline Rat factorial(long n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Rat(mpq_class(f));
}

} // namespace umbra
