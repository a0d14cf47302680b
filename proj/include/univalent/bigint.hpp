#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "univalent/errors.hpp"

namespace univalent {

// Arbitrary-precision signed integer, sign-magnitude over 32-bit limbs
// (little-endian). Sized for desk-scale exact series work: schoolbook
// multiplication and Knuth-style long division are ample here.
class BigInt {
public:
    BigInt() = default;

    BigInt(long long v) {
        if (v == 0) return;
        sign_ = v < 0 ? -1 : 1;
        unsigned long long u = v < 0 ? ~static_cast<unsigned long long>(v) + 1ULL
                                     : static_cast<unsigned long long>(v);
        while (u != 0) {
            mag_.push_back(static_cast<std::uint32_t>(u & 0xffffffffULL));
            u >>= 32;
        }
    }

    BigInt(int v) : BigInt(static_cast<long long>(v)) {}

    static BigInt from_string(std::string_view s) {
        BigInt r;
        bool neg = false;
        std::size_t i = 0;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            neg = s[i] == '-';
            ++i;
        }
        if (i == s.size()) throw Error("BigInt: empty numeral");
        for (; i < s.size(); ++i) {
            char c = s[i];
            if (c < '0' || c > '9') throw Error("BigInt: invalid digit in numeral");
            r = r * BigInt(10) + BigInt(c - '0');
        }
        if (neg) r.sign_ = -r.sign_;
        return r;
    }

    bool is_zero() const { return sign_ == 0; }
    int sign() const { return sign_; }
    bool odd() const { return sign_ != 0 && (mag_[0] & 1u); }

    bool fits_longlong() const {
        if (mag_.size() > 2) return false;
        unsigned long long u = to_u64();
        if (sign_ >= 0) return u <= 0x7fffffffffffffffULL;
        return u <= 0x8000000000000000ULL;
    }

    long long to_longlong() const {
        unsigned long long u = to_u64();
        return sign_ < 0 ? -static_cast<long long>(u) : static_cast<long long>(u);
    }

    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        if (a.sign_ == 0) return b;
        if (b.sign_ == 0) return a;
        BigInt r;
        if (a.sign_ == b.sign_) {
            r.mag_ = add_mag(a.mag_, b.mag_);
            r.sign_ = a.sign_;
        } else {
            int c = cmp_mag(a.mag_, b.mag_);
            if (c == 0) return BigInt();
            if (c > 0) {
                r.mag_ = sub_mag(a.mag_, b.mag_);
                r.sign_ = a.sign_;
            } else {
                r.mag_ = sub_mag(b.mag_, a.mag_);
                r.sign_ = b.sign_;
            }
        }
        return r;
    }

    friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        if (a.sign_ == 0 || b.sign_ == 0) return BigInt();
        BigInt r;
        r.mag_ = mul_mag(a.mag_, b.mag_);
        r.sign_ = a.sign_ * b.sign_;
        return r;
    }

    // Truncated (toward zero) quotient and remainder: a == q*b + r, |r| < |b|,
    // sign(r) == sign(a) unless r == 0.
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
        if (b.sign_ == 0) throw Error("BigInt: division by zero");
        if (a.sign_ == 0) {
            q = BigInt();
            r = BigInt();
            return;
        }
        std::vector<std::uint32_t> qm, rm;
        divmod_mag(a.mag_, b.mag_, qm, rm);
        q = BigInt();
        r = BigInt();
        q.mag_ = std::move(qm);
        r.mag_ = std::move(rm);
        q.trim();
        r.trim();
        if (!q.mag_.empty()) q.sign_ = a.sign_ * b.sign_;
        if (!r.mag_.empty()) r.sign_ = a.sign_;
    }

    friend BigInt operator/(const BigInt& a, const BigInt& b) {
        BigInt q, r;
        divmod(a, b, q, r);
        return q;
    }

    friend BigInt operator%(const BigInt& a, const BigInt& b) {
        BigInt q, r;
        divmod(a, b, q, r);
        return r;
    }

    BigInt operator-() const {
        BigInt r = *this;
        r.sign_ = -r.sign_;
        return r;
    }

    BigInt abs() const {
        BigInt r = *this;
        if (r.sign_ < 0) r.sign_ = 1;
        return r;
    }

    static int compare(const BigInt& a, const BigInt& b) {
        if (a.sign_ != b.sign_) return a.sign_ < b.sign_ ? -1 : 1;
        int c = cmp_mag(a.mag_, b.mag_);
        return a.sign_ >= 0 ? c : -c;
    }

    friend bool operator==(const BigInt& a, const BigInt& b) { return compare(a, b) == 0; }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return compare(a, b) != 0; }
    friend bool operator<(const BigInt& a, const BigInt& b) { return compare(a, b) < 0; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return compare(a, b) <= 0; }
    friend bool operator>(const BigInt& a, const BigInt& b) { return compare(a, b) > 0; }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return compare(a, b) >= 0; }

    static BigInt gcd(BigInt a, BigInt b) {
        a.sign_ = a.mag_.empty() ? 0 : 1;
        b.sign_ = b.mag_.empty() ? 0 : 1;
        while (!b.is_zero()) {
            BigInt q, r;
            divmod(a, b, q, r);
            a = std::move(b);
            b = std::move(r);
        }
        return a;
    }

    std::size_t bit_length() const {
        if (sign_ == 0) return 0;
        std::uint32_t top = mag_.back();
        std::size_t bits = 0;
        while (top != 0) {
            ++bits;
            top >>= 1;
        }
        return 32 * (mag_.size() - 1) + bits;
    }

    // Mantissa-exponent view: |value| == m * 2^exp2 with m in [0.5, 1).
    double to_double_parts(long& exp2) const {
        if (sign_ == 0) {
            exp2 = 0;
            return 0.0;
        }
        int n = static_cast<int>(mag_.size());
        int k = std::max(0, n - 3);
        double v = 0.0;
        for (int i = n - 1; i >= k; --i) v = v * 4294967296.0 + static_cast<double>(mag_[i]);
        int e = 0;
        v = std::frexp(v, &e);
        exp2 = static_cast<long>(e) + 32L * k;
        return v;
    }

    double to_double() const {
        long e = 0;
        double m = to_double_parts(e);
        double v = std::ldexp(m, static_cast<int>(e));
        return sign_ < 0 ? -v : v;
    }

    std::string to_string() const {
        if (sign_ == 0) return "0";
        std::vector<std::uint32_t> work = mag_;
        std::string out;
        while (!work.empty()) {
            std::uint64_t rem = 0;
            for (int i = static_cast<int>(work.size()) - 1; i >= 0; --i) {
                std::uint64_t cur = (rem << 32) | work[static_cast<std::size_t>(i)];
                work[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(cur / 1000000000ULL);
                rem = cur % 1000000000ULL;
            }
            while (!work.empty() && work.back() == 0) work.pop_back();
            std::string chunk = std::to_string(rem);
            if (!work.empty())
                chunk.insert(chunk.begin(), 9 - chunk.size(), '0');
            out.insert(0, chunk);
        }
        if (sign_ < 0) out.insert(out.begin(), '-');
        return out;
    }

private:
    int sign_ = 0;                    // -1, 0, +1
    std::vector<std::uint32_t> mag_;  // little-endian, no leading zero limbs

    unsigned long long to_u64() const {
        unsigned long long u = 0;
        if (mag_.size() > 1) u = static_cast<unsigned long long>(mag_[1]) << 32;
        if (!mag_.empty()) u |= mag_[0];
        return u;
    }

    void trim() {
        while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
        if (mag_.empty()) sign_ = 0;
    }

    static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) {
            std::size_t k = static_cast<std::size_t>(i);
            if (a[k] != b[k]) return a[k] < b[k] ? -1 : 1;
        }
        return 0;
    }

    static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        const auto& lo = a.size() < b.size() ? a : b;
        const auto& hi = a.size() < b.size() ? b : a;
        std::vector<std::uint32_t> r(hi.size() + 1, 0);
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < hi.size(); ++i) {
            std::uint64_t s = carry + hi[i] + (i < lo.size() ? lo[i] : 0u);
            r[i] = static_cast<std::uint32_t>(s);
            carry = s >> 32;
        }
        r[hi.size()] = static_cast<std::uint32_t>(carry);
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    // requires |a| >= |b|
    static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        std::vector<std::uint32_t> r(a.size(), 0);
        std::int64_t borrow = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            std::int64_t d = static_cast<std::int64_t>(a[i]) - borrow -
                             (i < b.size() ? static_cast<std::int64_t>(b[i]) : 0);
            if (d < 0) {
                d += 0x100000000LL;
                borrow = 1;
            } else {
                borrow = 0;
            }
            r[i] = static_cast<std::uint32_t>(d);
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    static std::vector<std::uint32_t> mul_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        std::vector<std::uint32_t> r(a.size() + b.size(), 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            std::uint64_t carry = 0;
            std::uint64_t ai = a[i];
            for (std::size_t j = 0; j < b.size(); ++j) {
                std::uint64_t cur = r[i + j] + ai * b[j] + carry;
                r[i + j] = static_cast<std::uint32_t>(cur);
                carry = cur >> 32;
            }
            std::size_t k = i + b.size();
            while (carry != 0) {
                std::uint64_t cur = r[k] + carry;
                r[k] = static_cast<std::uint32_t>(cur);
                carry = cur >> 32;
                ++k;
            }
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    static std::vector<std::uint32_t> shl_bits(const std::vector<std::uint32_t>& a, unsigned s) {
        if (s == 0) return a;
        std::vector<std::uint32_t> r(a.size() + 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            r[i] |= a[i] << s;
            r[i + 1] = a[i] >> (32 - s);
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    static std::vector<std::uint32_t> shr_bits(const std::vector<std::uint32_t>& a, unsigned s) {
        if (s == 0) return a;
        std::vector<std::uint32_t> r(a.size(), 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            r[i] = a[i] >> s;
            if (i + 1 < a.size()) r[i] |= a[i + 1] << (32 - s);
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    // Knuth algorithm D on magnitudes.
    static void divmod_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                           std::vector<std::uint32_t>& q, std::vector<std::uint32_t>& r) {
        q.clear();
        r.clear();
        if (cmp_mag(a, b) < 0) {
            r = a;
            return;
        }
        if (b.size() == 1) {
            std::uint64_t d = b[0];
            q.assign(a.size(), 0);
            std::uint64_t rem = 0;
            for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) {
                std::size_t k = static_cast<std::size_t>(i);
                std::uint64_t cur = (rem << 32) | a[k];
                q[k] = static_cast<std::uint32_t>(cur / d);
                rem = cur % d;
            }
            while (!q.empty() && q.back() == 0) q.pop_back();
            if (rem != 0) r.push_back(static_cast<std::uint32_t>(rem));
            return;
        }

        unsigned shift = 0;
        for (std::uint32_t top = b.back(); (top & 0x80000000u) == 0; top <<= 1) ++shift;
        std::vector<std::uint32_t> u = shl_bits(a, shift);
        std::vector<std::uint32_t> v = shl_bits(b, shift);
        const std::size_t n = v.size();
        u.push_back(0);
        const std::size_t m = u.size() - 1 - n;
        q.assign(m + 1, 0);

        const std::uint64_t base = 0x100000000ULL;
        for (int j = static_cast<int>(m); j >= 0; --j) {
            std::size_t js = static_cast<std::size_t>(j);
            std::uint64_t num = (static_cast<std::uint64_t>(u[js + n]) << 32) | u[js + n - 1];
            std::uint64_t qhat = num / v[n - 1];
            std::uint64_t rhat = num % v[n - 1];
            while (qhat >= base ||
                   qhat * v[n - 2] > ((rhat << 32) | u[js + n - 2])) {
                --qhat;
                rhat += v[n - 1];
                if (rhat >= base) break;
            }
            // multiply-subtract qhat * v from u[j .. j+n]
            std::int64_t borrow = 0;
            std::uint64_t carry = 0;
            for (std::size_t i = 0; i < n; ++i) {
                std::uint64_t p = qhat * v[i] + carry;
                carry = p >> 32;
                std::int64_t t = static_cast<std::int64_t>(u[js + i]) -
                                 static_cast<std::int64_t>(p & 0xffffffffULL) - borrow;
                if (t < 0) {
                    t += static_cast<std::int64_t>(base);
                    borrow = 1;
                } else {
                    borrow = 0;
                }
                u[js + i] = static_cast<std::uint32_t>(t);
            }
            std::int64_t t = static_cast<std::int64_t>(u[js + n]) -
                             static_cast<std::int64_t>(carry) - borrow;
            if (t < 0) {
                // qhat was one too large: add back
                t += static_cast<std::int64_t>(base);
                --qhat;
                std::uint64_t c2 = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    std::uint64_t s = static_cast<std::uint64_t>(u[js + i]) + v[i] + c2;
                    u[js + i] = static_cast<std::uint32_t>(s);
                    c2 = s >> 32;
                }
                t += static_cast<std::int64_t>(c2);
                t &= static_cast<std::int64_t>(base - 1);
            }
            u[js + n] = static_cast<std::uint32_t>(t);
            q[js] = static_cast<std::uint32_t>(qhat);
        }

        while (!q.empty() && q.back() == 0) q.pop_back();
        u.resize(n);
        r = shr_bits(u, shift);
    }
};

} // namespace univalent
