#pragma once

#include <algorithm>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "univalent/errors.hpp"
#include "univalent/scalar.hpp"

namespace univalent {

// Multivariate polynomial with integer coefficients in the inversion
// coefficients b_0, b_1, ..., b_k. Exponent vectors are kept with trailing
// zeros trimmed so equality is structural; zero coefficients are never stored.
class MultiPoly {
public:
    using Exponents = std::vector<int>;

    MultiPoly() = default;

    static MultiPoly constant(long long c) {
        MultiPoly p;
        if (c != 0) p.terms_[Exponents{}] = c;
        return p;
    }

    static MultiPoly variable(int index) {
        if (index < 0) throw Error("MultiPoly: negative variable index");
        MultiPoly p;
        Exponents e(static_cast<std::size_t>(index) + 1, 0);
        e.back() = 1;
        p.terms_[std::move(e)] = 1;
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Exponents, long long>& terms() const { return terms_; }

    // Largest variable index used, plus one. Zero for constants.
    int num_vars() const {
        std::size_t n = 0;
        for (const auto& [e, c] : terms_) n = std::max(n, e.size());
        return static_cast<int>(n);
    }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
        return r;
    }
    MultiPoly operator-() const {
        MultiPoly r;
        for (const auto& [e, c] : terms_) r.terms_[e] = -c;
        return r;
    }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly r;
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e(std::max(ea.size(), eb.size()), 0);
                for (std::size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
                for (std::size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
                long long prod = 0;
                if (__builtin_mul_overflow(ca, cb, &prod))
                    throw Error("MultiPoly: coefficient overflow in product");
                r.add_term(std::move(e), prod);
            }
        }
        return r;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    int degree_in_b0() const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, e.empty() ? 0 : e[0]);
        return d;
    }

    // Terms whose b_0-exponent is at least min_degree.
    MultiPoly filter_b0_degree_at_least(int min_degree) const {
        MultiPoly r;
        for (const auto& [e, c] : terms_) {
            int d = e.empty() ? 0 : e[0];
            if (d >= min_degree) r.terms_[e] = c;
        }
        return r;
    }

    long long coefficient(const Exponents& raw) const {
        Exponents e = raw;
        while (!e.empty() && e.back() == 0) e.pop_back();
        auto it = terms_.find(e);
        return it == terms_.end() ? 0 : it->second;
    }

    // Evaluate at b_i = values[i]; requires a value for every used variable.
    template <class K>
    K evaluate(std::span<const K> values) const {
        if (num_vars() > static_cast<int>(values.size()))
            throw InsufficientOrder("polynomial uses b_" + std::to_string(num_vars() - 1) +
                                    " but only " + std::to_string(values.size()) +
                                    " values were supplied");
        K total = scalar_traits<K>::zero();
        for (const auto& [e, c] : terms_) {
            K term = scalar_traits<K>::from_int(c);
            for (std::size_t i = 0; i < e.size(); ++i)
                for (int rep = 0; rep < e[i]; ++rep) term *= values[i];
            total += term;
        }
        return total;
    }

    // Canonical plain-text form. Terms are sorted by descending b_0-degree,
    // ties broken by lexicographically descending remaining exponents; factors
    // within a term are printed with descending variable index, e.g.
    //   a_4  ->  -b0^3 + 2*b1*b0 - b2
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::vector<std::pair<Exponents, long long>> ts(terms_.begin(), terms_.end());
        std::sort(ts.begin(), ts.end(), [](const auto& x, const auto& y) {
            int dx = x.first.empty() ? 0 : x.first[0];
            int dy = y.first.empty() ? 0 : y.first[0];
            if (dx != dy) return dx > dy;
            return tail_lex_greater(x.first, y.first);
        });
        std::string out;
        bool first = true;
        for (const auto& [e, c] : ts) {
            long long mag = c < 0 ? -c : c;
            if (first) {
                if (c < 0) out += "-";
                first = false;
            } else {
                out += c < 0 ? " - " : " + ";
            }
            std::string vars;
            for (int i = static_cast<int>(e.size()) - 1; i >= 0; --i) {
                int exp = e[static_cast<std::size_t>(i)];
                if (exp == 0) continue;
                if (!vars.empty()) vars += "*";
                vars += "b" + std::to_string(i);
                if (exp > 1) vars += "^" + std::to_string(exp);
            }
            if (vars.empty()) {
                out += std::to_string(mag);
            } else if (mag == 1) {
                out += vars;
            } else {
                out += std::to_string(mag) + "*" + vars;
            }
        }
        return out;
    }

private:
    std::map<Exponents, long long> terms_;

    void add_term(Exponents e, long long c) {
        if (c == 0) return;
        while (!e.empty() && e.back() == 0) e.pop_back();
        auto [it, inserted] = terms_.try_emplace(std::move(e), c);
        if (!inserted) {
            long long sum = 0;
            if (__builtin_add_overflow(it->second, c, &sum))
                throw Error("MultiPoly: coefficient overflow in sum");
            it->second = sum;
            if (it->second == 0) terms_.erase(it);
        }
    }

    static bool tail_lex_greater(const Exponents& a, const Exponents& b) {
        std::size_t n = std::max(a.size(), b.size());
        for (std::size_t i = 1; i < n; ++i) {
            int ea = i < a.size() ? a[i] : 0;
            int eb = i < b.size() ? b[i] : 0;
            if (ea != eb) return ea > eb;
        }
        return false;
    }
};

// a_n as an integer polynomial in b_0..b_{n-2}, by unwinding the coupling
//   b_0 + a_2 = 0,   b_m + sum_{j=1..m} b_{m-j} a_{j+1} + a_{m+2} = 0.
inline MultiPoly a_in_b(int n) {
    if (n < 2) throw ParameterOutOfRange("a_in_b requires n >= 2");
    std::vector<MultiPoly> a(static_cast<std::size_t>(n) + 1);
    a[2] = -MultiPoly::variable(0);
    for (int m = 3; m <= n; ++m) {
        MultiPoly acc = MultiPoly::variable(m - 2);
        for (int j = 1; j <= m - 2; ++j)
            acc = acc + MultiPoly::variable(m - 2 - j) * a[static_cast<std::size_t>(j + 1)];
        a[static_cast<std::size_t>(m)] = -acc;
    }
    return a[static_cast<std::size_t>(n)];
}

// The two top-degree-in-b_0 terms of a_n, checked against the closed form
// (-1)^{n-1} b_0^{n-1} - (-1)^{n-1} (n-2) b_1 b_0^{n-3}.
inline std::pair<int, MultiPoly> leading_structure(int n) {
    if (n < 3) throw ParameterOutOfRange("leading_structure requires n >= 3");
    MultiPoly an = a_in_b(n);
    MultiPoly top = an.filter_b0_degree_at_least(n - 3);
    int sign = (n - 1) % 2 == 0 ? 1 : -1;

    MultiPoly b0 = MultiPoly::variable(0);
    MultiPoly lead = MultiPoly::constant(sign);
    for (int i = 0; i < n - 1; ++i) lead = lead * b0;
    MultiPoly second = MultiPoly::constant(-sign * (n - 2)) * MultiPoly::variable(1);
    for (int i = 0; i < n - 3; ++i) second = second * b0;
    MultiPoly expected = lead + second;

    if (top != expected)
        throw StructureMismatch("a_" + std::to_string(n) +
                                " leading b_0 terms disagree with the closed form: got " +
                                top.to_string() + ", expected " + expected.to_string());
    return {sign, top};
}

// a_n^2 - a_{2n-1} in b_0..b_{2n-3}; its unique term of b_0-degree 2n-4 is
// b_1 b_0^{2n-4} with coefficient +1.
inline MultiPoly zalcman_in_b(int n) {
    if (n < 3) throw ParameterOutOfRange("zalcman_in_b requires n >= 3");
    MultiPoly an = a_in_b(n);
    return an * an - a_in_b(2 * n - 1);
}

} // namespace univalent
