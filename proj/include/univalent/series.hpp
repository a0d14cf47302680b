#pragma once

#include <algorithm>
#include <vector>

#include "univalent/errors.hpp"
#include "univalent/scalar.hpp"

namespace univalent {

// Truncated power series sum_{k=0..N} c_k z^k. The truncation order N is part
// of the value; no operation ever reports a coefficient beyond it, and binary
// operations truncate to min(N_a, N_b). Instantiated with RatC (exact mode,
// every identity holds on the nose) or Cplx (float mode).
template <class K>
class TruncSeries {
public:
    explicit TruncSeries(int order) : c_(static_cast<std::size_t>(check_order(order)) + 1) {}

    explicit TruncSeries(std::vector<K> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) throw InsufficientOrder("series needs at least the constant term");
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }

    const K& operator[](int k) const {
        if (k < 0 || k > order())
            throw InsufficientOrder("coefficient index " + std::to_string(k) +
                                    " beyond truncation order " + std::to_string(order()));
        return c_[static_cast<std::size_t>(k)];
    }

    K& at(int k) {
        if (k < 0 || k > order())
            throw InsufficientOrder("coefficient index " + std::to_string(k) +
                                    " beyond truncation order " + std::to_string(order()));
        return c_[static_cast<std::size_t>(k)];
    }

    const std::vector<K>& coeffs() const { return c_; }

    TruncSeries truncated(int new_order) const {
        if (new_order >= order()) return *this;
        std::vector<K> c(c_.begin(), c_.begin() + new_order + 1);
        return TruncSeries(std::move(c));
    }

    friend bool operator==(const TruncSeries& a, const TruncSeries& b) { return a.c_ == b.c_; }
    friend bool operator!=(const TruncSeries& a, const TruncSeries& b) { return !(a == b); }

    static TruncSeries zero(int order) { return TruncSeries(order); }

    static TruncSeries constant(const K& v, int order) {
        TruncSeries s(order);
        s.c_[0] = v;
        return s;
    }

    // z
    static TruncSeries identity(int order) { return monomial(scalar_traits<K>::one(), 1, order); }

    // v * z^k
    static TruncSeries monomial(const K& v, int k, int order) {
        TruncSeries s(order);
        s.at(k) = v;
        return s;
    }

private:
    std::vector<K> c_;

    static int check_order(int order) {
        if (order < 0) throw InsufficientOrder("negative truncation order");
        return order;
    }
};

template <class K>
TruncSeries<K> operator+(const TruncSeries<K>& a, const TruncSeries<K>& b) {
    int n = std::min(a.order(), b.order());
    std::vector<K> c(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) c[static_cast<std::size_t>(k)] = a[k] + b[k];
    return TruncSeries<K>(std::move(c));
}

template <class K>
TruncSeries<K> operator-(const TruncSeries<K>& a, const TruncSeries<K>& b) {
    int n = std::min(a.order(), b.order());
    std::vector<K> c(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) c[static_cast<std::size_t>(k)] = a[k] - b[k];
    return TruncSeries<K>(std::move(c));
}

template <class K>
TruncSeries<K> operator-(const TruncSeries<K>& a) {
    std::vector<K> c(a.coeffs());
    for (auto& v : c) v = -v;
    return TruncSeries<K>(std::move(c));
}

// Cauchy product truncated to min(N_a, N_b).
template <class K>
TruncSeries<K> operator*(const TruncSeries<K>& a, const TruncSeries<K>& b) {
    int n = std::min(a.order(), b.order());
    std::vector<K> c(static_cast<std::size_t>(n) + 1, scalar_traits<K>::zero());
    for (int i = 0; i <= n; ++i) {
        if (scalar_traits<K>::is_zero(a[i])) continue;
        for (int j = 0; i + j <= n; ++j)
            c[static_cast<std::size_t>(i + j)] += a[i] * b[j];
    }
    return TruncSeries<K>(std::move(c));
}

template <class K>
TruncSeries<K> operator*(const K& v, const TruncSeries<K>& a) {
    std::vector<K> c(a.coeffs());
    for (auto& x : c) x = v * x;
    return TruncSeries<K>(std::move(c));
}

// 1 / b to order N_b; requires b(0) != 0.
template <class K>
TruncSeries<K> reciprocal(const TruncSeries<K>& b) {
    if (scalar_traits<K>::is_zero(b[0]))
        throw DivisionByZeroConstantTerm("series reciprocal of vanishing constant term");
    int n = b.order();
    std::vector<K> r(static_cast<std::size_t>(n) + 1, scalar_traits<K>::zero());
    r[0] = scalar_traits<K>::one() / b[0];
    for (int k = 1; k <= n; ++k) {
        K acc = scalar_traits<K>::zero();
        for (int j = 1; j <= k; ++j) acc += b[j] * r[static_cast<std::size_t>(k - j)];
        r[static_cast<std::size_t>(k)] = -(acc / b[0]);
    }
    return TruncSeries<K>(std::move(r));
}

// Long-division semantics via reciprocal-and-multiply.
template <class K>
TruncSeries<K> operator/(const TruncSeries<K>& a, const TruncSeries<K>& b) {
    int n = std::min(a.order(), b.order());
    return a.truncated(n) * reciprocal(b.truncated(n));
}

// f(g(z)) to order min(N_f, N_g) by Horner accumulation; requires g(0) = 0.
template <class K>
TruncSeries<K> compose(const TruncSeries<K>& f, const TruncSeries<K>& g) {
    if (!scalar_traits<K>::is_zero(g[0]))
        throw NonzeroInnerConstant("compose requires inner series with g(0) = 0");
    int n = std::min(f.order(), g.order());
    TruncSeries<K> gn = g.truncated(n);
    TruncSeries<K> acc = TruncSeries<K>::constant(f[n], n);
    for (int k = n - 1; k >= 0; --k)
        acc = acc * gn + TruncSeries<K>::constant(f[k], n);
    return acc;
}

// f^alpha with f(0) = 1, principal branch. The standard first-order ODE
// recurrence n g_n = sum_{k=1..n} (k (alpha+1) - n) f_k g_{n-k}; exact when
// alpha and the coefficients are exact.
template <class K>
TruncSeries<K> pow_series(const TruncSeries<K>& f, const K& alpha) {
    if (!(f[0] == scalar_traits<K>::one()))
        throw NonUnitConstantTerm("series power requires constant term 1");
    int n = f.order();
    std::vector<K> g(static_cast<std::size_t>(n) + 1, scalar_traits<K>::zero());
    g[0] = scalar_traits<K>::one();
    K ap1 = alpha + scalar_traits<K>::one();
    for (int m = 1; m <= n; ++m) {
        K acc = scalar_traits<K>::zero();
        for (int k = 1; k <= m; ++k) {
            K w = scalar_traits<K>::from_int(k) * ap1 - scalar_traits<K>::from_int(m);
            acc += w * f[k] * g[static_cast<std::size_t>(m - k)];
        }
        g[static_cast<std::size_t>(m)] = acc / scalar_traits<K>::from_int(m);
    }
    return TruncSeries<K>(std::move(g));
}

// f^{p/q}, principal branch, q > 0.
template <class K>
TruncSeries<K> pow_rational(const TruncSeries<K>& f, long long p, long long q) {
    if (q <= 0) throw ParameterOutOfRange("rational power needs positive denominator");
    return pow_series(f, scalar_traits<K>::from_ratio(p, q));
}

// Termwise derivative; truncation order drops by one (a constant series
// differentiates to the zero constant series).
template <class K>
TruncSeries<K> differentiate(const TruncSeries<K>& f) {
    if (f.order() == 0) return TruncSeries<K>::zero(0);
    int n = f.order() - 1;
    std::vector<K> c(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k)
        c[static_cast<std::size_t>(k)] = scalar_traits<K>::from_int(k + 1) * f[k + 1];
    return TruncSeries<K>(std::move(c));
}

// z^k * g truncated to result_order. Used to restore the z factor after
// working with a unit-constant-term cofactor.
template <class K>
TruncSeries<K> shift_up(const TruncSeries<K>& g, int k, int result_order) {
    TruncSeries<K> r(result_order);
    for (int j = 0; j + k <= result_order && j <= g.order(); ++j)
        r.at(j + k) = g[j];
    return r;
}

inline TruncSeries<Cplx> to_float(const TruncSeries<RatC>& s) {
    std::vector<Cplx> c;
    c.reserve(static_cast<std::size_t>(s.order()) + 1);
    for (const auto& v : s.coeffs()) c.push_back(v.to_complex());
    return TruncSeries<Cplx>(std::move(c));
}

} // namespace univalent
