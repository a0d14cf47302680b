#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "univalent/errors.hpp"
#include "univalent/rational.hpp"

namespace univalent {

using Cplx = std::complex<double>;

// Complex number with exact rational real and imaginary parts. The exact
// coefficient scalar for all exact-mode series work.
struct RatC {
    Rational re, im;

    RatC() = default;
    RatC(Rational r) : re(std::move(r)) {}
    RatC(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    RatC(long long n) : re(n) {}
    RatC(long long p, long long q) : re(p, q) {}

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_real() const { return im.is_zero(); }

    friend RatC operator+(const RatC& a, const RatC& b) { return {a.re + b.re, a.im + b.im}; }
    friend RatC operator-(const RatC& a, const RatC& b) { return {a.re - b.re, a.im - b.im}; }
    RatC operator-() const { return {-re, -im}; }
    friend RatC operator*(const RatC& a, const RatC& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend RatC operator/(const RatC& a, const RatC& b) {
        Rational n2 = b.norm2();
        if (n2.is_zero()) throw Error("RatC: division by zero");
        return {(a.re * b.re + a.im * b.im) / n2, (a.im * b.re - a.re * b.im) / n2};
    }
    RatC& operator+=(const RatC& b) { return *this = *this + b; }
    RatC& operator-=(const RatC& b) { return *this = *this - b; }
    RatC& operator*=(const RatC& b) { return *this = *this * b; }
    RatC& operator/=(const RatC& b) { return *this = *this / b; }

    friend bool operator==(const RatC& a, const RatC& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const RatC& a, const RatC& b) { return !(a == b); }

    RatC conj() const { return {re, -im}; }
    Rational norm2() const { return re * re + im * im; } // |z|^2, exact

    Cplx to_complex() const { return {re.to_double(), im.to_double()}; }
    std::string to_string() const {
        if (im.is_zero()) return re.to_string();
        return re.to_string() + (im.is_negative() ? "" : "+") + im.to_string() + "i";
    }
};

// Small uniform interface over the two coefficient scalars, so series and
// sample code can be written once and instantiated per mode.
template <class K>
struct scalar_traits;

template <>
struct scalar_traits<RatC> {
    static constexpr bool is_exact = true;
    using real_type = Rational;

    static RatC zero() { return RatC(); }
    static RatC one() { return RatC(1); }
    static RatC from_int(long long v) { return RatC(v); }
    static RatC from_ratio(long long p, long long q) { return RatC(p, q); }
    static RatC from_rational(const Rational& r) { return RatC(r); }
    static bool is_zero(const RatC& v) { return v.is_zero(); }
    static double abs(const RatC& v) { return std::sqrt(v.norm2().to_double()); }
    static Rational norm2(const RatC& v) { return v.norm2(); }
    static Cplx to_complex(const RatC& v) { return v.to_complex(); }

    // Exact mode carries unimodular phases only when they are real, so theta
    // is restricted to multiples of pi.
    static RatC unit_phase(double theta) {
        constexpr double pi = std::numbers::pi;
        double t = std::remainder(theta, 2 * pi);
        if (std::abs(t) < 1e-12) return RatC(1);
        if (std::abs(std::abs(t) - pi) < 1e-12) return RatC(-1);
        throw ExactPhaseUnsupported("exact mode supports theta in {0, pi} only");
    }
};

template <>
struct scalar_traits<Cplx> {
    static constexpr bool is_exact = false;
    using real_type = double;

    static Cplx zero() { return {0.0, 0.0}; }
    static Cplx one() { return {1.0, 0.0}; }
    static Cplx from_int(long long v) { return {static_cast<double>(v), 0.0}; }
    static Cplx from_ratio(long long p, long long q) {
        return {static_cast<double>(p) / static_cast<double>(q), 0.0};
    }
    static Cplx from_rational(const Rational& r) { return {r.to_double(), 0.0}; }
    static bool is_zero(const Cplx& v) { return v.real() == 0.0 && v.imag() == 0.0; }
    static double abs(const Cplx& v) { return std::abs(v); }
    static double norm2(const Cplx& v) { return std::norm(v); }
    static Cplx to_complex(const Cplx& v) { return v; }
    static Cplx unit_phase(double theta) { return std::polar(1.0, theta); }
};

} // namespace univalent
