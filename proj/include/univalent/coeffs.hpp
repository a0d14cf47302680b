#pragma once

#include <string>
#include <vector>

#include "univalent/errors.hpp"
#include "univalent/scalar.hpp"
#include "univalent/series.hpp"

namespace univalent {

// Coefficient tail (a_2, ..., a_N) of a normalized function
// f(z) = z + a_2 z^2 + ... in the class S.
template <class K>
struct SCoeffs {
    std::vector<K> a; // a[i] holds a_{i+2}

    SCoeffs() = default;
    explicit SCoeffs(std::vector<K> coeffs) : a(std::move(coeffs)) {}

    int max_index() const { return static_cast<int>(a.size()) + 1; }

    // a_n for 2 <= n <= max_index(). Out-of-range requests are a hard error,
    // never zero-filled.
    const K& a_n(int n) const {
        if (n < 2 || n > max_index())
            throw InsufficientOrder("a_" + std::to_string(n) + " requested but only a_2..a_" +
                                    std::to_string(max_index()) + " available");
        return a[static_cast<std::size_t>(n - 2)];
    }

    friend bool operator==(const SCoeffs& x, const SCoeffs& y) { return x.a == y.a; }
};

// Coefficient tail (b_0, ..., b_M) of F(z) = z + b_0 + b_1 z^{-1} + ... in
// the class Sigma.
template <class K>
struct SigmaCoeffs {
    std::vector<K> b; // b[j] holds b_j

    SigmaCoeffs() = default;
    explicit SigmaCoeffs(std::vector<K> coeffs) : b(std::move(coeffs)) {}

    int max_index() const { return static_cast<int>(b.size()) - 1; }

    const K& b_j(int j) const {
        if (j < 0 || j > max_index())
            throw InsufficientOrder("b_" + std::to_string(j) + " requested but only b_0..b_" +
                                    std::to_string(max_index()) + " available");
        return b[static_cast<std::size_t>(j)];
    }

    friend bool operator==(const SigmaCoeffs& x, const SigmaCoeffs& y) { return x.b == y.b; }
};

// (a_2..a_N) -> (b_0..b_{N-2}):
//   b_0 = -a_2,  b_n = -a_{n+2} - sum_{j=1..n} b_{n-j} a_{j+1}.
template <class K>
SigmaCoeffs<K> s_to_sigma(const SCoeffs<K>& s) {
    if (s.a.empty()) throw InsufficientOrder("s_to_sigma needs at least a_2");
    int m = static_cast<int>(s.a.size()) - 1; // produces b_0..b_m
    std::vector<K> b(static_cast<std::size_t>(m) + 1);
    b[0] = -s.a_n(2);
    for (int n = 1; n <= m; ++n) {
        K acc = s.a_n(n + 2);
        for (int j = 1; j <= n; ++j) acc += b[static_cast<std::size_t>(n - j)] * s.a_n(j + 1);
        b[static_cast<std::size_t>(n)] = -acc;
    }
    return SigmaCoeffs<K>(std::move(b));
}

// (b_0..b_M) -> (a_2..a_{M+2}); exact inverse of s_to_sigma.
template <class K>
SCoeffs<K> sigma_to_s(const SigmaCoeffs<K>& sig) {
    if (sig.b.empty()) throw InsufficientOrder("sigma_to_s needs at least b_0");
    int m = sig.max_index();
    std::vector<K> a(static_cast<std::size_t>(m) + 1);
    a[0] = -sig.b_j(0); // a_2
    for (int n = 1; n <= m; ++n) {
        K acc = sig.b_j(n);
        for (int j = 1; j <= n; ++j) acc += sig.b_j(n - j) * a[static_cast<std::size_t>(j - 1)];
        a[static_cast<std::size_t>(n)] = -acc;
    }
    return SCoeffs<K>(std::move(a));
}

// b_1 = a_2^2 - a_3, the Schwarzian-at-zero bridge: 6 (a_3 - a_2^2) = S_f(0),
// and the z^{-4} coefficient of S_{F_f} is -6 b_1 (see schwarzian.hpp for the
// observed sign relation between the two).
template <class K>
K b1_bridge(const K& a2, const K& a3) {
    return a2 * a2 - a3;
}

// Taylor series z + a_2 z^2 + ... + a_N z^N of the sample, at its native order.
template <class K>
TruncSeries<K> s_series(const SCoeffs<K>& s) {
    int n = s.max_index();
    TruncSeries<K> f(n);
    f.at(1) = scalar_traits<K>::one();
    for (int k = 2; k <= n; ++k) f.at(k) = s.a_n(k);
    return f;
}

template <class K>
SCoeffs<Cplx> to_float(const SCoeffs<K>& s) {
    std::vector<Cplx> a;
    a.reserve(s.a.size());
    for (const auto& v : s.a) a.push_back(scalar_traits<K>::to_complex(v));
    return SCoeffs<Cplx>(std::move(a));
}

template <class K>
SigmaCoeffs<Cplx> to_float(const SigmaCoeffs<K>& s) {
    std::vector<Cplx> b;
    b.reserve(s.b.size());
    for (const auto& v : s.b) b.push_back(scalar_traits<K>::to_complex(v));
    return SigmaCoeffs<Cplx>(std::move(b));
}

} // namespace univalent
