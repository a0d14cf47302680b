#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include "univalent/bigint.hpp"
#include "univalent/errors.hpp"

namespace univalent {

// Exact rational number; denominator kept positive, fraction kept reduced.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(int n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    // Accepts "p", "-p", "p/q" with decimal integers.
    static Rational from_string(std::string_view s) {
        auto slash = s.find('/');
        if (slash == std::string_view::npos) return Rational(BigInt::from_string(s), BigInt(1));
        return Rational(BigInt::from_string(s.substr(0, slash)),
                        BigInt::from_string(s.substr(slash + 1)));
    }

    // Exact dyadic conversion; every finite double is a rational with a
    // power-of-two denominator.
    static Rational from_double(double x) {
        if (!std::isfinite(x)) throw Error("Rational: non-finite double");
        if (x == 0.0) return Rational();
        int e = 0;
        double m = std::frexp(x, &e); // x = m * 2^e, |m| in [0.5, 1)
        long long scaled = static_cast<long long>(std::ldexp(m, 53));
        e -= 53;
        BigInt num(scaled), den(1);
        BigInt two(2);
        for (int i = 0; i < e; ++i) num = num * two;
        for (int i = 0; i < -e; ++i) den = den * two;
        return Rational(std::move(num), std::move(den));
    }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_ == BigInt(1) && den_ == BigInt(1); }
    bool is_negative() const { return num_.sign() < 0; }
    bool is_integer() const { return den_ == BigInt(1); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw Error("Rational: division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }
    Rational operator-() const {
        Rational r = *this;
        r.num_ = -r.num_;
        return r;
    }
    Rational& operator+=(const Rational& b) { return *this = *this + b; }
    Rational& operator-=(const Rational& b) { return *this = *this - b; }
    Rational& operator*=(const Rational& b) { return *this = *this * b; }
    Rational& operator/=(const Rational& b) { return *this = *this / b; }

    static int compare(const Rational& a, const Rational& b) {
        return BigInt::compare(a.num_ * b.den_, b.num_ * a.den_);
    }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return compare(a, b) < 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return compare(a, b) <= 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return compare(a, b) > 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return compare(a, b) >= 0; }

    Rational abs() const { return is_negative() ? -*this : *this; }

    Rational pow(long long e) const {
        if (e < 0) {
            if (is_zero()) throw Error("Rational: zero to negative power");
            return (Rational(1) / *this).pow(-e);
        }
        Rational base = *this, acc(1);
        while (e > 0) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    double to_double() const {
        long en = 0, ed = 0;
        double mn = num_.to_double_parts(en);
        double md = den_.to_double_parts(ed);
        double v = std::ldexp(mn / md, static_cast<int>(en - ed));
        return num_.sign() < 0 ? -v : v;
    }

    std::string to_string() const {
        if (den_ == BigInt(1)) return num_.to_string();
        return num_.to_string() + "/" + den_.to_string();
    }

private:
    BigInt num_, den_;

    void normalize() {
        if (den_.is_zero()) throw Error("Rational: zero denominator");
        if (den_.sign() < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_.is_zero()) {
            den_ = BigInt(1);
            return;
        }
        BigInt g = BigInt::gcd(num_, den_);
        if (!(g == BigInt(1))) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
    }
};

} // namespace univalent
