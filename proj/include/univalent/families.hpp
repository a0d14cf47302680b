#pragma once

#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "univalent/coeffs.hpp"
#include "univalent/errors.hpp"
#include "univalent/series.hpp"

namespace univalent {

enum class FunctionClass { S, Sigma };

inline std::string fmt_param(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// A generated test function: coefficient tail plus enough provenance to
// regenerate it deterministically.
template <class K>
struct UnivalentSample {
    std::string id;
    std::string family;
    std::map<std::string, double> params;
    std::optional<std::uint64_t> seed;
    std::variant<SCoeffs<K>, SigmaCoeffs<K>> coeffs;

    FunctionClass klass() const {
        return coeffs.index() == 0 ? FunctionClass::S : FunctionClass::Sigma;
    }
    const SCoeffs<K>& s() const {
        if (klass() != FunctionClass::S) throw WrongClass(id + ": expected an S-class sample");
        return std::get<SCoeffs<K>>(coeffs);
    }
    const SigmaCoeffs<K>& sigma() const {
        if (klass() != FunctionClass::Sigma)
            throw WrongClass(id + ": expected a Sigma-class sample");
        return std::get<SigmaCoeffs<K>>(coeffs);
    }
};

namespace detail {

inline std::string make_id(const std::string& family, const std::map<std::string, double>& params,
                           std::optional<std::uint64_t> seed) {
    std::string id = family;
    for (const auto& [k, v] : params) id += ";" + k + "=" + fmt_param(v);
    if (seed) id += ";seed=" + std::to_string(*seed);
    return id;
}

template <class K>
bool norm_at_most_one(const K& v) {
    if constexpr (scalar_traits<K>::is_exact)
        return scalar_traits<K>::norm2(v) <= Rational(1);
    else
        return scalar_traits<K>::norm2(v) <= 1.0 + 1e-12;
}

template <class K>
bool unimodular(const K& v) {
    if constexpr (scalar_traits<K>::is_exact)
        return scalar_traits<K>::norm2(v) == Rational(1);
    else
        return std::abs(scalar_traits<K>::norm2(v) - 1.0) <= 1e-12;
}

template <class K>
UnivalentSample<K> make_s_sample(std::string family, std::map<std::string, double> params,
                                 std::optional<std::uint64_t> seed, SCoeffs<K> a) {
    UnivalentSample<K> smp;
    smp.family = family;
    smp.params = std::move(params);
    smp.seed = seed;
    smp.id = make_id(family, smp.params, seed);
    smp.coeffs = std::move(a);
    return smp;
}

template <class K>
UnivalentSample<K> make_sigma_sample(std::string family, std::map<std::string, double> params,
                                     std::optional<std::uint64_t> seed, SigmaCoeffs<K> b) {
    UnivalentSample<K> smp;
    smp.family = family;
    smp.params = std::move(params);
    smp.seed = seed;
    smp.id = make_id(family, smp.params, seed);
    smp.coeffs = std::move(b);
    return smp;
}

} // namespace detail

// Koebe map z / (1 - e^{i theta} z)^2 with a_n = n e^{-i(n-1) theta}.
template <class K>
UnivalentSample<K> koebe(double theta, int order) {
    if (order < 2) throw ParameterOutOfRange("koebe needs order >= 2");
    K phase = scalar_traits<K>::unit_phase(-theta);
    std::vector<K> a(static_cast<std::size_t>(order) - 1);
    K rot = scalar_traits<K>::one();
    for (int n = 2; n <= order; ++n) {
        rot = rot * phase; // phase^{n-1}
        a[static_cast<std::size_t>(n - 2)] = scalar_traits<K>::from_int(n) * rot;
    }
    return detail::make_s_sample<K>("koebe", {{"theta", theta}}, std::nullopt,
                                    SCoeffs<K>(std::move(a)));
}

// Root transform z (1 - e^{i theta} z^m)^{-2/m}; m = 1 is the Koebe map
// (with phase convention e^{i theta}), m = 2 the odd function.
template <class K>
UnivalentSample<K> koebe_root(int m, double theta, int order) {
    if (m < 1) throw ParameterOutOfRange("koebe_root needs m >= 1");
    if (order < 2 * m + 1) throw ParameterOutOfRange("koebe_root needs order >= 2m+1");
    K phase = scalar_traits<K>::unit_phase(theta);
    TruncSeries<K> u = TruncSeries<K>::constant(scalar_traits<K>::one(), order - 1);
    u.at(m) = -phase;
    TruncSeries<K> g = pow_rational(u, -2, m);
    TruncSeries<K> f = shift_up(g, 1, order);
    std::vector<K> a(f.coeffs().begin() + 2, f.coeffs().end());
    return detail::make_s_sample<K>("koebe_root", {{"m", double(m)}, {"theta", theta}},
                                    std::nullopt, SCoeffs<K>(std::move(a)));
}

// F(z) = z + b_0 + b_1 z^{-1}; univalent with an affine extension when
// |b_1| <= 1.
template <class K>
UnivalentSample<K> two_coeff_sigma(const K& b0, const K& b1, int order = 8) {
    if (!detail::norm_at_most_one(b1))
        throw DilatationExceedsOne("two_coeff_sigma requires |b_1| <= 1");
    if (order < 1) throw ParameterOutOfRange("two_coeff_sigma needs order >= 1");
    std::vector<K> b(static_cast<std::size_t>(order) + 1, scalar_traits<K>::zero());
    b[0] = b0;
    b[1] = b1;
    Cplx c0 = scalar_traits<K>::to_complex(b0), c1 = scalar_traits<K>::to_complex(b1);
    return detail::make_sigma_sample<K>("two_coeff_sigma",
                                        {{"b0_re", c0.real()},
                                         {"b0_im", c0.imag()},
                                         {"b1_re", c1.real()},
                                         {"b1_im", c1.imag()}},
                                        std::nullopt, SigmaCoeffs<K>(std::move(b)));
}

// F_{m,t}(z) = z (1 - t z^{-(m+1)})^{2/(m+1)}, the extremal family with
// leading tail coefficient b_m = -2t/(m+1).
template <class K>
UnivalentSample<K> f_root_small(int m, const K& t, int order = 12) {
    if (m < 1) throw ParameterOutOfRange("f_root_small needs m >= 1");
    if (!detail::norm_at_most_one(t)) throw ParameterOutOfRange("f_root_small requires |t| <= 1");
    if (order < m) throw ParameterOutOfRange("f_root_small needs order >= m");
    TruncSeries<K> u = TruncSeries<K>::constant(scalar_traits<K>::one(), order + 1);
    u.at(m + 1) = -t;
    TruncSeries<K> g = pow_rational(u, 2, m + 1); // series in w = 1/z
    std::vector<K> b(static_cast<std::size_t>(order) + 1);
    for (int j = 0; j <= order; ++j) b[static_cast<std::size_t>(j)] = g[j + 1];
    Cplx tc = scalar_traits<K>::to_complex(t);
    return detail::make_sigma_sample<K>(
        "f_root_small", {{"m", double(m)}, {"t_re", tc.real()}, {"t_im", tc.imag()}},
        std::nullopt, SigmaCoeffs<K>(std::move(b)));
}

// f_{n-1,t}(z) = (z^{n-1} / (1 - k t z^{n-1})^2)^{1/(n-1)}
//             = z (1 - k t z^{n-1})^{-2/(n-1)},
// the small-dilatation extremal with a_n = 2kt/(n-1); k in (0, 1/(n^2+1)].
template <class K>
UnivalentSample<K> small_dilatation(int n, const Rational& k, const K& t, int order) {
    if (n < 3) throw ParameterOutOfRange("small_dilatation needs n >= 3");
    if (!(k > Rational(0)) || k > Rational(1, static_cast<long long>(n) * n + 1))
        throw ParameterOutOfRange("small_dilatation needs k in (0, 1/(n^2+1)]");
    if (!detail::unimodular(t)) throw ParameterOutOfRange("small_dilatation needs |t| = 1");
    if (order < n) throw ParameterOutOfRange("small_dilatation needs order >= n");
    K kt = scalar_traits<K>::from_rational(k) * t;
    TruncSeries<K> u = TruncSeries<K>::constant(scalar_traits<K>::one(), order - 1);
    u.at(n - 1) = -kt;
    TruncSeries<K> g = pow_rational(u, -2, n - 1);
    TruncSeries<K> f = shift_up(g, 1, order);
    std::vector<K> a(f.coeffs().begin() + 2, f.coeffs().end());
    Cplx tc = scalar_traits<K>::to_complex(t);
    return detail::make_s_sample<K>("small_dilatation",
                                    {{"n", double(n)},
                                     {"k", k.to_double()},
                                     {"t_re", tc.real()},
                                     {"t_im", tc.imag()}},
                                    std::nullopt, SCoeffs<K>(std::move(a)));
}

// f_t(z) = t^{-1} f(t z):  a_n -> a_n t^{n-1}.
template <class K>
UnivalentSample<K> homotopy_s(const UnivalentSample<K>& f, const K& t) {
    if (f.klass() != FunctionClass::S) throw WrongClass("homotopy_s needs an S-class sample");
    if (!detail::norm_at_most_one(t)) throw ParameterOutOfRange("homotopy needs |t| <= 1");
    const auto& src = f.s().a;
    std::vector<K> a(src.size());
    K tp = t; // t^{n-1}
    for (std::size_t i = 0; i < src.size(); ++i) {
        a[i] = src[i] * tp;
        tp = tp * t;
    }
    UnivalentSample<K> out = f;
    Cplx tc = scalar_traits<K>::to_complex(t);
    out.params["homotopy_t_re"] = tc.real();
    out.params["homotopy_t_im"] = tc.imag();
    out.id = detail::make_id(out.family, out.params, out.seed);
    out.coeffs = SCoeffs<K>(std::move(a));
    return out;
}

// F_t(z) = t F(z/t):  b_j -> b_j t^{j+1}.
template <class K>
UnivalentSample<K> homotopy_sigma(const UnivalentSample<K>& F, const K& t) {
    if (F.klass() != FunctionClass::Sigma)
        throw WrongClass("homotopy_sigma needs a Sigma-class sample");
    if (!detail::norm_at_most_one(t)) throw ParameterOutOfRange("homotopy needs |t| <= 1");
    const auto& src = F.sigma().b;
    std::vector<K> b(src.size());
    K tp = t; // t^{j+1}
    for (std::size_t j = 0; j < src.size(); ++j) {
        b[j] = src[j] * tp;
        tp = tp * t;
    }
    UnivalentSample<K> out = F;
    Cplx tc = scalar_traits<K>::to_complex(t);
    out.params["homotopy_t_re"] = tc.real();
    out.params["homotopy_t_im"] = tc.imag();
    out.id = detail::make_id(out.family, out.params, out.seed);
    out.coeffs = SigmaCoeffs<K>(std::move(b));
    return out;
}

// Starlike product f(z) = z prod_k (1 - phase_k z)^{-2 lambda_k} with
// lambda_k >= 0 summing to 1; univalence comes for free from starlikeness.
template <class K>
UnivalentSample<K> starlike_from(const std::vector<K>& phases, const std::vector<Rational>& lambdas,
                                 int order, std::optional<std::uint64_t> seed = std::nullopt,
                                 std::map<std::string, double> params = {}) {
    if (phases.size() != lambdas.size() || phases.empty())
        throw ParameterOutOfRange("starlike needs matching nonempty phase/weight lists");
    Rational total(0);
    for (const auto& l : lambdas) {
        if (l.is_negative()) throw ParameterOutOfRange("starlike weights must be nonnegative");
        total += l;
    }
    if (!(total == Rational(1))) throw ParameterOutOfRange("starlike weights must sum to 1");
    TruncSeries<K> g = TruncSeries<K>::constant(scalar_traits<K>::one(), order - 1);
    for (std::size_t k = 0; k < phases.size(); ++k) {
        TruncSeries<K> u = TruncSeries<K>::constant(scalar_traits<K>::one(), order - 1);
        u.at(1) = -phases[k];
        K expo = scalar_traits<K>::from_rational(Rational(-2) * lambdas[k]);
        g = g * pow_series(u, expo);
    }
    TruncSeries<K> f = shift_up(g, 1, order);
    std::vector<K> a(f.coeffs().begin() + 2, f.coeffs().end());
    params["K"] = double(phases.size());
    return detail::make_s_sample<K>("starlike", std::move(params), seed, SCoeffs<K>(std::move(a)));
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Platform-independent uniform in [0, 1).
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace detail

// Seeded random starlike sample with n_factors boundary atoms. Float mode
// draws angles uniformly on [0, 2pi); exact mode restricts phases to +-1 and
// draws rational weights, so the sample is exactly representable.
template <class K>
UnivalentSample<K> starlike_sample(std::uint64_t seed, int n_factors, int order) {
    if (n_factors < 1) throw ParameterOutOfRange("starlike_sample needs K >= 1");
    if (order < 2) throw ParameterOutOfRange("starlike_sample needs order >= 2");
    std::mt19937_64 rng(detail::splitmix64(seed));
    std::vector<K> phases;
    std::vector<Rational> lambdas;
    std::map<std::string, double> params;
    if constexpr (scalar_traits<K>::is_exact) {
        long long total = 0;
        std::vector<long long> w(static_cast<std::size_t>(n_factors));
        for (auto& wi : w) {
            wi = 1 + static_cast<long long>(rng() % 8);
            total += wi;
        }
        for (int k = 0; k < n_factors; ++k) {
            bool flip = (rng() & 1u) != 0;
            phases.push_back(scalar_traits<K>::from_int(flip ? -1 : 1));
            lambdas.emplace_back(w[static_cast<std::size_t>(k)], total);
            params["theta" + std::to_string(k)] = flip ? 3.141592653589793 : 0.0;
            params["lambda" + std::to_string(k)] = lambdas.back().to_double();
        }
    } else {
        std::vector<double> raw(static_cast<std::size_t>(n_factors));
        double total = 0.0;
        for (auto& x : raw) {
            x = -std::log(1.0 - detail::uniform01(rng));
            total += x;
        }
        for (int k = 0; k < n_factors; ++k) {
            double theta = 2.0 * 3.141592653589793 * detail::uniform01(rng);
            phases.push_back(std::polar(1.0, theta));
            lambdas.push_back(Rational::from_double(raw[static_cast<std::size_t>(k)] / total));
            params["theta" + std::to_string(k)] = theta;
            params["lambda" + std::to_string(k)] = raw[static_cast<std::size_t>(k)] / total;
        }
        // from_double keeps each weight exact but the sum may miss 1 by one
        // ulp; absorb the defect into the last weight.
        Rational sum(0);
        for (const auto& l : lambdas) sum += l;
        lambdas.back() += Rational(1) - sum;
    }
    return starlike_from<K>(phases, lambdas, order, seed, std::move(params));
}

// Coefficientwise Koebe-rotation test: a_n = n phase^{n-1} for a common
// unimodular phase. Exact mode demands literal equality.
template <class K>
bool is_koebe_rotation(const SCoeffs<K>& s, double tol = 1e-9) {
    if (s.a.empty()) return false;
    if constexpr (scalar_traits<K>::is_exact) {
        K phase = s.a_n(2) / scalar_traits<K>::from_int(2);
        if (!(phase.norm2() == Rational(1))) return false;
        K rot = phase;
        for (int n = 2; n <= s.max_index(); ++n) {
            if (!(s.a_n(n) == scalar_traits<K>::from_int(n) * rot)) return false;
            rot = rot * phase;
        }
        return true;
    } else {
        Cplx phase = s.a_n(2) / 2.0;
        if (std::abs(std::abs(phase) - 1.0) > tol) return false;
        Cplx rot = phase;
        for (int n = 2; n <= s.max_index(); ++n) {
            if (std::abs(s.a_n(n) - double(n) * rot) > tol * n) return false;
            rot = rot * phase;
        }
        return true;
    }
}

template <class K>
UnivalentSample<Cplx> to_float(const UnivalentSample<K>& s) {
    UnivalentSample<Cplx> out;
    out.id = s.id;
    out.family = s.family;
    out.params = s.params;
    out.seed = s.seed;
    if (s.klass() == FunctionClass::S)
        out.coeffs = to_float(s.s());
    else
        out.coeffs = to_float(s.sigma());
    return out;
}

} // namespace univalent
