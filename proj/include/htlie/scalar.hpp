#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace htlie {

using Rational = mpq_class;

inline Rational rat(long num, long den = 1) { return Rational(num, den); }

/// Exact scalar of the form a + b*sqrt(d), with a, b rational and d a
/// square-free integer > 1. b == 0 is the pure rational case (d is then 0).
/// All arithmetic within a computation must stay inside a single Q(sqrt(d));
/// mixing two distinct radicands throws.
class Scalar {
public:
    Scalar() : a_(0), b_(0), d_(0) {}
    Scalar(long v) : a_(v), b_(0), d_(0) {}
    Scalar(const Rational& v) : a_(v), b_(0), d_(0) { a_.canonicalize(); }
    Scalar(const Rational& a, const Rational& b, long d) : a_(a), b_(b), d_(d) {
        a_.canonicalize();
        b_.canonicalize();
        normalize();
    }

    const Rational& rational_part() const { return a_; }
    const Rational& surd_part() const { return b_; }
    long radicand() const { return d_; }
    bool is_rational() const { return d_ == 0; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }

    const Rational& as_rational() const {
        if (!is_rational()) throw std::domain_error("Scalar: not a rational value");
        return a_;
    }

    Scalar operator-() const { return Scalar(-a_, -b_, d_); }

    friend Scalar operator+(const Scalar& x, const Scalar& y) {
        long d = joint_radicand(x, y);
        return Scalar(x.a_ + y.a_, x.b_ + y.b_, d);
    }
    friend Scalar operator-(const Scalar& x, const Scalar& y) { return x + (-y); }
    friend Scalar operator*(const Scalar& x, const Scalar& y) {
        long d = joint_radicand(x, y);
        if (d == 0) return Scalar(x.a_ * y.a_);
        Rational a = x.a_ * y.a_ + x.b_ * y.b_ * d;
        Rational b = x.a_ * y.b_ + x.b_ * y.a_;
        return Scalar(a, b, d);
    }
    friend Scalar operator/(const Scalar& x, const Scalar& y) { return x * y.inverse(); }

    Scalar& operator+=(const Scalar& y) { return *this = *this + y; }
    Scalar& operator-=(const Scalar& y) { return *this = *this - y; }
    Scalar& operator*=(const Scalar& y) { return *this = *this * y; }

    Scalar inverse() const {
        if (is_zero()) throw std::domain_error("Scalar: division by zero");
        if (is_rational()) return Scalar(Rational(1) / a_);
        // 1/(a+b sqrt d) = (a-b sqrt d)/(a^2-b^2 d); the denominator is nonzero
        // because sqrt(d) is irrational.
        Rational n = a_ * a_ - b_ * b_ * d_;
        return Scalar(a_ / n, -b_ / n, d_);
    }

    friend bool operator==(const Scalar& x, const Scalar& y) {
        if (x.a_ != y.a_) return false;
        if (x.b_ == 0 && y.b_ == 0) return true;
        return x.b_ == y.b_ && x.d_ == y.d_;
    }
    friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }

    /// Exact sign: -1, 0, +1.
    int sign() const {
        if (is_rational()) return sgn(a_);
        if (a_ == 0) return sgn(b_);
        int sa = sgn(a_), sb = sgn(b_);
        if (sa == sb) return sa;
        // a and b*sqrt(d) have opposite signs; compare a^2 against b^2 d.
        Rational diff = a_ * a_ - b_ * b_ * d_;
        int c = sgn(diff);
        return c == 0 ? 0 : (c > 0 ? sa : sb);
    }
    bool is_positive() const { return sign() > 0; }

    /// Total order usable for deterministic sorting; consistent with the real value.
    friend bool operator<(const Scalar& x, const Scalar& y) { return (x - y).sign() < 0; }

    std::string str() const {
        std::string s = a_.get_str();
        if (d_ != 0) {
            s += (sgn(b_) < 0 ? " - " : " + ");
            Rational ab = abs(b_);
            if (ab != 1) s += ab.get_str() + "*";
            s += "sqrt(" + std::to_string(d_) + ")";
        }
        return s;
    }

private:
    static long joint_radicand(const Scalar& x, const Scalar& y) {
        if (x.d_ == 0) return y.d_;
        if (y.d_ == 0) return x.d_;
        if (x.d_ != y.d_)
            throw std::domain_error("Scalar: mixed radicands " + std::to_string(x.d_) +
                                    " and " + std::to_string(y.d_));
        return x.d_;
    }
    void normalize() {
        if (b_ == 0) d_ = 0;
        else if (d_ <= 1) throw std::domain_error("Scalar: radicand must be > 1");
    }

    Rational a_, b_;
    long d_;
};

inline int sign_of(const Rational& r) { return sgn(r); }

/// Splits n = m^2 * d with d square-free, by trial division. Throws for n
/// beyond the factoring budget; the callers only produce small radicands.
inline void square_free_split(unsigned long n, unsigned long& m, unsigned long& d) {
    if (n == 0) { m = 0; d = 1; return; }
    m = 1; d = 1;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (p > 2000000)
            throw std::domain_error("square_free_split: radicand too large to factor");
        unsigned long e = 0;
        while (n % p == 0) { n /= p; ++e; }
        for (unsigned long i = 0; i + 1 < e; i += 2) m *= p;
        if (e % 2 == 1) d *= p;
    }
    d *= n;
}

/// Exact square root of a non-negative rational, as a Scalar in Q(sqrt(d)).
inline Scalar sqrt_exact(const Rational& r) {
    if (sgn(r) < 0) throw std::domain_error("sqrt_exact: negative argument");
    if (r == 0) return Scalar(0);
    // sqrt(p/q) = sqrt(p*q)/q
    mpz_class pq = r.get_num() * r.get_den();
    if (!pq.fits_ulong_p()) throw std::domain_error("sqrt_exact: radicand too large");
    unsigned long m, d;
    square_free_split(pq.get_ui(), m, d);
    Rational coeff(mpz_class(m), r.get_den());
    coeff.canonicalize();
    if (d == 1) return Scalar(coeff);
    return Scalar(Rational(0), coeff, static_cast<long>(d));
}

}  // namespace htlie
