#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "univalent/coeffs.hpp"
#include "univalent/errors.hpp"
#include "univalent/families.hpp"

namespace univalent {

// Homogeneous perturbation P(a_3, ..., a_{2n-2}): nonnegative monomial
// coefficients, every monomial of homotopy weight sum k_j (j-1) = 2n-2.
struct Perturbation {
    struct Term {
        std::map<int, int> exponents; // variable index j (3 <= j <= 2n-2) -> k_j
        Rational coeff;
    };

    int n = 0;
    std::vector<Term> terms;

    Perturbation(int n_, std::vector<Term> terms_) : n(n_), terms(std::move(terms_)) {
        if (n < 3) throw InvalidPerturbation("perturbation target needs n >= 3");
        for (const auto& t : terms) {
            if (t.coeff.is_negative())
                throw InvalidPerturbation("perturbation coefficients must be nonnegative");
            long long weight = 0;
            for (const auto& [j, kj] : t.exponents) {
                if (j < 3 || j > 2 * n - 2)
                    throw InvalidPerturbation("perturbation variable a_" + std::to_string(j) +
                                              " outside a_3..a_" + std::to_string(2 * n - 2));
                if (kj < 0) throw InvalidPerturbation("negative exponent in perturbation");
                weight += static_cast<long long>(kj) * (j - 1);
            }
            if (weight != 2 * n - 2)
                throw InvalidPerturbation("perturbation monomial has homogeneity weight " +
                                          std::to_string(weight) + ", expected " +
                                          std::to_string(2 * n - 2));
        }
    }

    template <class K>
    K evaluate(const SCoeffs<K>& f) const {
        K total = scalar_traits<K>::zero();
        for (const auto& t : terms) {
            K term = scalar_traits<K>::from_rational(t.coeff);
            for (const auto& [j, kj] : t.exponents)
                for (int rep = 0; rep < kj; ++rep) term *= f.a_n(j);
            total += term;
        }
        return total;
    }

    // Value at the Koebe point a_j = j; with nonnegative coefficients this is
    // max over rotations.
    Rational value_at_koebe() const {
        Rational total(0);
        for (const auto& t : terms) {
            Rational term = t.coeff;
            for (const auto& [j, kj] : t.exponents)
                term *= Rational(j).pow(kj);
            total += term;
        }
        return total;
    }
};

// J_n(f) = a_n^2 - a_{2n-1}.
template <class K>
K zalcman(const SCoeffs<K>& f, int n) {
    if (n < 2) throw ParameterOutOfRange("zalcman functional needs n >= 2");
    return f.a_n(n) * f.a_n(n) - f.a_n(2 * n - 1);
}

// a_n^p - a_2^{p(n-1)}.
template <class K>
K power_gap(const SCoeffs<K>& f, int n, int p) {
    if (n <= 3) throw ParameterOutOfRange("power_gap needs n > 3");
    if (p < 1) throw ParameterOutOfRange("power_gap needs p >= 1");
    K an = f.a_n(n), a2 = f.a_n(2);
    K lhs = scalar_traits<K>::one(), rhs = scalar_traits<K>::one();
    for (int i = 0; i < p; ++i) lhs *= an;
    for (int i = 0; i < p * (n - 1); ++i) rhs *= a2;
    return lhs - rhs;
}

// a_{n+1}^p - a_2^p a_n^p.
template <class K>
K adjacent_gap(const SCoeffs<K>& f, int n, int p) {
    if (n <= 2) throw ParameterOutOfRange("adjacent_gap needs n > 2");
    if (p < 1) throw ParameterOutOfRange("adjacent_gap needs p >= 1");
    K lhs = scalar_traits<K>::one(), rhs = scalar_traits<K>::one();
    for (int i = 0; i < p; ++i) {
        lhs *= f.a_n(n + 1);
        rhs *= f.a_n(2) * f.a_n(n);
    }
    return lhs - rhs;
}

// a_n^2 - a_{2n-1} + P(a_3, ..., a_{2n-2}), with the admissibility proxy
// max |P| over the supplied sample set < (n-1)^2 / 2. The true condition is a
// sup over all of S; the proxy is the best the workbench can certify and the
// result is conditional on it.
template <class K>
K perturbed_zalcman(const SCoeffs<K>& f, int n, const Perturbation& P,
                    std::type_identity_t<std::span<const SCoeffs<K>>> admissibility_witness) {
    if (n < 3) throw ParameterOutOfRange("perturbed zalcman needs n >= 3");
    if (P.n != n) throw InvalidPerturbation("perturbation built for a different n");
    double limit = 0.5 * (n - 1) * (n - 1);
    for (const auto& g : admissibility_witness) {
        double m = scalar_traits<K>::abs(P.evaluate(g));
        if (m >= limit)
            throw PerturbationTooLarge("perturbation reaches " + std::to_string(m) +
                                       " on the catalog, admissibility proxy requires < " +
                                       std::to_string(limit));
    }
    return zalcman(f, n) + P.evaluate(f);
}

enum class FunctionalName { zalcman, power_gap, adjacent_gap, perturbed };

inline std::string to_string(FunctionalName n) {
    switch (n) {
        case FunctionalName::zalcman: return "zalcman";
        case FunctionalName::power_gap: return "power_gap";
        case FunctionalName::adjacent_gap: return "adjacent_gap";
        case FunctionalName::perturbed: return "perturbed";
    }
    return "?";
}

// A named functional with its parameters and analytic homogeneity degree.
struct FunctionalSpec {
    FunctionalName name = FunctionalName::zalcman;
    int n = 3;
    int p = 1;
    std::optional<Perturbation> perturbation;

    static FunctionalSpec make_zalcman(int n) { return {FunctionalName::zalcman, n, 1, {}}; }
    static FunctionalSpec make_power_gap(int n, int p) {
        return {FunctionalName::power_gap, n, p, {}};
    }
    static FunctionalSpec make_adjacent_gap(int n, int p) {
        return {FunctionalName::adjacent_gap, n, p, {}};
    }
    static FunctionalSpec make_perturbed(int n, Perturbation P) {
        return {FunctionalName::perturbed, n, 1, std::move(P)};
    }

    int degree() const {
        switch (name) {
            case FunctionalName::zalcman: return 2 * n - 2;
            case FunctionalName::power_gap: return p * (n - 1);
            case FunctionalName::adjacent_gap: return p * n;
            case FunctionalName::perturbed: return 2 * n - 2;
        }
        return 0;
    }

    // Highest coefficient index the functional reads.
    int required_order() const {
        switch (name) {
            case FunctionalName::zalcman: return 2 * n - 1;
            case FunctionalName::power_gap: return n;
            case FunctionalName::adjacent_gap: return n + 1;
            case FunctionalName::perturbed: return 2 * n - 1;
        }
        return 0;
    }

    // |J| at the Koebe function; the sharp bound for the three theorem
    // functionals (every rotation attains it).
    Rational koebe_bound() const {
        switch (name) {
            case FunctionalName::zalcman:
                return Rational(static_cast<long long>(n - 1) * (n - 1));
            case FunctionalName::power_gap:
                return Rational(2).pow(static_cast<long long>(p) * (n - 1)) -
                       Rational(n).pow(p);
            case FunctionalName::adjacent_gap:
                return Rational(2).pow(p) * Rational(n).pow(p) - Rational(n + 1).pow(p);
            case FunctionalName::perturbed:
                return Rational(static_cast<long long>(n - 1) * (n - 1)) +
                       perturbation->value_at_koebe();
        }
        return Rational(0);
    }

    template <class K>
    K evaluate(const SCoeffs<K>& f) const {
        switch (name) {
            case FunctionalName::zalcman: return zalcman(f, n);
            case FunctionalName::power_gap: return power_gap(f, n, p);
            case FunctionalName::adjacent_gap: return adjacent_gap(f, n, p);
            case FunctionalName::perturbed: return zalcman(f, n) + perturbation->evaluate(f);
        }
        return scalar_traits<K>::zero();
    }

    std::string label() const {
        std::string s = to_string(name) + ";n=" + std::to_string(n);
        if (name == FunctionalName::power_gap || name == FunctionalName::adjacent_gap)
            s += ";p=" + std::to_string(p);
        return s;
    }
};

// J(f_t) == t^d J(f): exact identity in exact mode, 1e-12 relative in float.
template <class K>
bool verify_homogeneity(const FunctionalSpec& spec, const UnivalentSample<K>& f, const K& t) {
    K lhs = spec.evaluate(homotopy_s(f, t).s());
    K td = scalar_traits<K>::one();
    for (int i = 0; i < spec.degree(); ++i) td *= t;
    K rhs = td * spec.evaluate(f.s());
    if constexpr (scalar_traits<K>::is_exact) {
        return lhs == rhs;
    } else {
        double scale = std::max(1.0, std::abs(rhs));
        return std::abs(lhs - rhs) <= 1e-12 * scale;
    }
}

} // namespace univalent
