#include <doctest.h>

#include <random>

#include "univalent/rational.hpp"
#include "univalent/scalar.hpp"

using namespace univalent;

TEST_CASE("bigint basics") {
    CHECK(BigInt(0).is_zero());
    CHECK(BigInt(-5).to_string() == "-5");
    CHECK((BigInt(1000000007LL) * BigInt(998244353LL)).to_string() == "998244359987710471");
    CHECK(BigInt::from_string("-12345678901234567890123456789").to_string() ==
          "-12345678901234567890123456789");
    CHECK(BigInt::from_string("99999999999999999999") + BigInt(1) ==
          BigInt::from_string("100000000000000000000"));
}

TEST_CASE("bigint divmod agrees with reconstruction on random operands") {
    std::mt19937_64 rng(12345);
    for (int iter = 0; iter < 2000; ++iter) {
        // operands of wildly different limb counts, including single-limb divisors
        BigInt a(static_cast<long long>(rng() >> 1)), b(static_cast<long long>((rng() >> 40) + 1));
        for (int j = 0; j < static_cast<int>(rng() % 4); ++j)
            a = a * BigInt(static_cast<long long>(rng() >> 8) + 1) + BigInt(static_cast<long long>(rng() % 1000));
        for (int j = 0; j < static_cast<int>(rng() % 3); ++j)
            b = b * BigInt(static_cast<long long>(rng() >> 8) + 1) + BigInt(static_cast<long long>(rng() % 1000));
        if (rng() & 1) a = -a;
        if (rng() & 1) b = -b;
        BigInt q, r;
        BigInt::divmod(a, b, q, r);
        CHECK(q * b + r == a);
        CHECK(r.abs() < b.abs());
        if (!r.is_zero()) CHECK(r.sign() == a.sign());
    }
}

TEST_CASE("bigint divmod: multi-limb vectors exercising trial-digit correction") {
    // dividend prefix nearly equal to the divisor forces qhat corrections,
    // including the rare add-back step
    struct Case {
        const char* a;
        const char* b;
        const char* q;
        const char* r;
    };
    const Case cases[] = {
        {"39614081257132168796771975171", "9223372036854775809", "4294967295",
         "9223372032559808516"},
        {"39614081247908796759917199360", "9223372036854775808", "4294967295", "0"},
        {"340282366920938463463374607431768211455", "18446744073709551616",
         "18446744073709551615", "18446744073709551615"},
    };
    for (const auto& c : cases) {
        BigInt q, r;
        BigInt::divmod(BigInt::from_string(c.a), BigInt::from_string(c.b), q, r);
        CHECK(q.to_string() == c.q);
        CHECK(r.to_string() == c.r);
    }
    // crafted top-limb patterns, verified by reconstruction
    std::mt19937_64 rng(4096);
    const long long tops[] = {0x7fffffffLL, 0x80000000LL, 0x80000001LL, 0xffffffffLL};
    for (int iter = 0; iter < 400; ++iter) {
        BigInt b(tops[iter % 4]);
        for (int j = 0; j < 2; ++j)
            b = b * BigInt(0x100000000LL) + BigInt(static_cast<long long>(rng() % 3));
        BigInt a = b * BigInt(tops[(iter + 1) % 4]);
        if (iter & 1) a = a + b - BigInt(1);
        if (iter & 2) a = a + BigInt(static_cast<long long>(rng() % 7));
        BigInt q, r;
        BigInt::divmod(a, b, q, r);
        CHECK(q * b + r == a);
        CHECK(r.abs() < b.abs());
    }
}

TEST_CASE("bigint gcd") {
    CHECK(BigInt::gcd(BigInt(54), BigInt(24)) == BigInt(6));
    CHECK(BigInt::gcd(BigInt(-54), BigInt(24)) == BigInt(6));
    CHECK(BigInt::gcd(BigInt(0), BigInt(7)) == BigInt(7));
    BigInt big = BigInt::from_string("123456789012345678901234567890");
    CHECK(BigInt::gcd(big * BigInt(35), big * BigInt(21)) == big * BigInt(7));
}

TEST_CASE("rational arithmetic is exact and reduced") {
    Rational a(1, 3), b(1, 6);
    CHECK(a + b == Rational(1, 2));
    CHECK(a - b == Rational(1, 6));
    CHECK(a * b == Rational(1, 18));
    CHECK(a / b == Rational(2));
    CHECK(Rational(-4, -6) == Rational(2, 3));
    CHECK(Rational(4, -6).to_string() == "-2/3");
    CHECK(Rational(7, 1).to_string() == "7");
    CHECK(Rational::from_string("-22/7") == Rational(-22, 7));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(-1, 3));
    CHECK(Rational(3, 7).pow(3) == Rational(27, 343));
    CHECK(Rational(2, 5).pow(-2) == Rational(25, 4));
}

TEST_CASE("rational field laws on random small values") {
    std::mt19937_64 rng(99);
    auto draw = [&] {
        return Rational(static_cast<long long>(rng() % 41) - 20, 1 + static_cast<long long>(rng() % 12));
    };
    for (int iter = 0; iter < 500; ++iter) {
        Rational a = draw(), b = draw(), c = draw();
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        if (!b.is_zero()) CHECK((a / b) * b == a);
    }
}

TEST_CASE("rational to_double and from_double") {
    CHECK(Rational(1, 2).to_double() == 0.5);
    CHECK(Rational::from_double(0.15625) == Rational(5, 32));
    CHECK(Rational::from_double(-3.0) == Rational(-3));
    // huge numerator/denominator pair still converts through the scaled path
    Rational big(BigInt::from_string("3") * BigInt::from_string("10").abs(), BigInt(1));
    CHECK(big.to_double() == doctest::Approx(30.0));
    Rational ratio(BigInt::from_string("123456789123456789123456789123456789"),
                   BigInt::from_string("246913578246913578246913578246913578"));
    CHECK(ratio.to_double() == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("complex rational arithmetic") {
    RatC i(Rational(0), Rational(1));
    CHECK(i * i == RatC(-1));
    RatC z(Rational(3), Rational(4));
    CHECK(z.norm2() == Rational(25));
    CHECK(z * z.conj() == RatC(25));
    CHECK((z / z) == RatC(1));
    RatC w(Rational(1, 2), Rational(-1, 3));
    CHECK((z * w) / w == z);
    CHECK(scalar_traits<RatC>::unit_phase(0.0) == RatC(1));
    CHECK(scalar_traits<RatC>::unit_phase(3.141592653589793) == RatC(-1));
    CHECK(scalar_traits<RatC>::unit_phase(-3.141592653589793) == RatC(-1));
    CHECK_THROWS_AS(scalar_traits<RatC>::unit_phase(1.0), ExactPhaseUnsupported);
}
