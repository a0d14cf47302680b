#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "univalent/coeffs.hpp"
#include "univalent/errors.hpp"
#include "univalent/series.hpp"

namespace univalent {

// S_f = (f''/f')' - (f''/f')^2 / 2, as a Taylor series to order N - 3.
// For normalized f the constant term is 6 (a_3 - a_2^2).
template <class K>
TruncSeries<K> schwarzian(const TruncSeries<K>& f) {
    if (f.order() < 3)
        throw InsufficientOrder("schwarzian needs truncation order >= 3");
    TruncSeries<K> fp = differentiate(f);
    if (scalar_traits<K>::is_zero(fp[0]))
        throw CriticalPointAtOrigin("schwarzian requires f'(0) != 0");
    TruncSeries<K> fpp = differentiate(fp);
    TruncSeries<K> pre = fpp / fp; // order N-2
    TruncSeries<K> dpre = differentiate(pre); // order N-3
    TruncSeries<K> sq = (pre * pre).truncated(dpre.order());
    K half = scalar_traits<K>::from_ratio(1, 2);
    return dpre - half * sq;
}

// Laurent tail of S_F for F in Sigma: coefficients s_k of z^{-4-k}.
template <class K>
struct SchwarzianTail {
    std::vector<K> s;

    int terms() const { return static_cast<int>(s.size()); }
    const K& coeff(int k) const {
        if (k < 0 || k >= terms())
            throw InsufficientOrder("Schwarzian tail truncated before index " + std::to_string(k));
        return s[static_cast<std::size_t>(k)];
    }
    // S_F(z), evaluated from the truncated tail.
    Cplx eval(Cplx z) const {
        Cplx w = 1.0 / z;
        Cplx acc{0.0, 0.0};
        for (int k = terms() - 1; k >= 0; --k)
            acc = acc * w + scalar_traits<K>::to_complex(s[static_cast<std::size_t>(k)]);
        return acc * w * w * w * w;
    }
};

inline SchwarzianTail<Cplx> to_float(const SchwarzianTail<RatC>& t) {
    std::vector<Cplx> s;
    s.reserve(t.s.size());
    for (const auto& v : t.s) s.push_back(v.to_complex());
    return SchwarzianTail<Cplx>{std::move(s)};
}

// S_F via the reflection g(w) = w / (1 + b_0 w + b_1 w^2 + ...): the
// Schwarzian is Moebius-invariant, so S_F(1/w) = w^4 S_g(w) and the Laurent
// coefficient of z^{-4-k} equals the Taylor coefficient s_k of S_g. The
// leading coefficient is -6 b_1. Missing b_j beyond the stored tail are
// exact zeros of the sample, not an approximation.
template <class K>
SchwarzianTail<K> sigma_schwarzian_tail(const SigmaCoeffs<K>& F, int tail_terms = 12) {
    if (tail_terms < 1) throw ParameterOutOfRange("tail needs at least one term");
    int n = tail_terms + 2; // g must carry order n so S_g reaches order n-3
    TruncSeries<K> A = TruncSeries<K>::constant(scalar_traits<K>::one(), n);
    for (int j = 0; j <= F.max_index() && j + 1 <= n; ++j) A.at(j + 1) = F.b_j(j);
    TruncSeries<K> g = shift_up(reciprocal(A), 1, n);
    TruncSeries<K> sg = schwarzian(g); // order n-3 = tail_terms - 1
    std::vector<K> s(sg.coeffs().begin(), sg.coeffs().end());
    s.resize(static_cast<std::size_t>(tail_terms), scalar_traits<K>::zero());
    return SchwarzianTail<K>{std::move(s)};
}

// Both sides of the sign relation between S_f(0) and lim z^4 S_{F_f}(z),
// reported rather than assumed (observed: the two agree with a plus sign).
template <class K>
struct SignBridgeReport {
    K limit_z4_schwarzian; // lim_{z->oo} z^4 S_F(z) = -6 b_1
    K sf0_bridge;          // S_f(0) = 6 (a_3 - a_2^2)
    bool equal_with_plus;
    bool equal_with_minus;
};

template <class K>
SignBridgeReport<K> schwarzian_sign_report(const SigmaCoeffs<K>& F) {
    K lim = sigma_schwarzian_tail(F, 1).coeff(0);
    SCoeffs<K> a = sigma_to_s(F);
    K six = scalar_traits<K>::from_int(6);
    K bridge = six * (a.a_n(3) - a.a_n(2) * a.a_n(2));
    SignBridgeReport<K> rep{lim, bridge, false, false};
    if constexpr (scalar_traits<K>::is_exact) {
        rep.equal_with_plus = lim == bridge;
        rep.equal_with_minus = lim == -bridge;
    } else {
        double scale = std::max({1.0, std::abs(lim), std::abs(bridge)});
        rep.equal_with_plus = std::abs(lim - bridge) <= 1e-9 * scale;
        rep.equal_with_minus = std::abs(lim + bridge) <= 1e-9 * scale;
    }
    return rep;
}

// Sampling grid on the exterior disk: radii log-spaced over (1, r_max],
// angles uniform. refine() doubles both counts and keeps every old node, so
// estimates grow monotonically toward the sup.
struct BNormGrid {
    double r_lo = 1.05;
    double r_hi = 8.0;
    int n_r = 64;     // radial intervals
    int n_theta = 64; // angular samples

    BNormGrid refined() const { return {r_lo, r_hi, 2 * n_r, 2 * n_theta}; }
};

// Grid lower bound for ||S_F||_B = sup (|z|^2 - 1)^2 |S_F(z)|.
template <class K>
double b_norm_estimate(const SchwarzianTail<K>& tail, const BNormGrid& grid) {
    if (grid.n_r < 1 || grid.n_theta < 1 || grid.r_lo <= 1.0 || grid.r_hi <= grid.r_lo)
        throw ParameterOutOfRange("b-norm grid wants 1 < r_lo < r_hi and positive counts");
    double best = 0.0;
    double log_lo = std::log(grid.r_lo), log_hi = std::log(grid.r_hi);
    for (int i = 0; i <= grid.n_r; ++i) {
        double r = std::exp(log_lo + (log_hi - log_lo) * i / grid.n_r);
        double weight = (r * r - 1.0) * (r * r - 1.0);
        for (int j = 0; j < grid.n_theta; ++j) {
            double th = 2.0 * 3.141592653589793 * j / grid.n_theta;
            Cplx z = std::polar(r, th);
            double v = weight * std::abs(tail.eval(z));
            if (v > best) best = v;
        }
    }
    return best;
}

// Golusin's improvement of the Schwarz lemma: a self-map of the disk with a
// zero of order m and |t^m|-coefficient modulus c_m is bounded by
// |t|^m (|t| + c_m) / (1 + c_m |t|).
inline double golusin_bound(int m, double c_m, double t_abs) {
    if (m < 1) throw ParameterOutOfRange("golusin_bound needs m >= 1");
    if (c_m < 0.0 || c_m > 1.0 || t_abs < 0.0 || t_abs >= 1.0)
        throw ParameterOutOfRange("golusin_bound needs c in [0,1], |t| in [0,1)");
    return std::pow(t_abs, m) * (t_abs + c_m) / (1.0 + c_m * t_abs);
}

} // namespace univalent
