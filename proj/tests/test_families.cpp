#include <doctest.h>

#include <cmath>

#include "univalent/families.hpp"

using namespace univalent;

namespace {
constexpr double kPi = 3.141592653589793;
}

TEST_CASE("koebe coefficients a_n = n e^{-i(n-1)theta}") {
    auto k0 = koebe<RatC>(0.0, 10);
    for (int n = 2; n <= 10; ++n) CHECK(k0.s().a_n(n) == RatC(n));

    auto kpi = koebe<RatC>(kPi, 10);
    for (int n = 2; n <= 10; ++n)
        CHECK(kpi.s().a_n(n) == (n % 2 == 0 ? RatC(-n) : RatC(n)));

    auto kf = koebe<Cplx>(0.9, 12);
    for (int n = 2; n <= 12; ++n) {
        CHECK(std::abs(kf.s().a_n(n)) == doctest::Approx(double(n)).epsilon(1e-13));
        Cplx expect = double(n) * std::polar(1.0, -(n - 1) * 0.9);
        CHECK(std::abs(kf.s().a_n(n) - expect) < 1e-12 * n);
    }
    CHECK(is_koebe_rotation(kf.s()));
    CHECK_THROWS_AS(koebe<RatC>(1.23, 8), ExactPhaseUnsupported);
}

TEST_CASE("koebe_root: odd function at m=2, leading identities, rotation covariance") {
    auto odd = koebe_root<RatC>(2, 0.0, 11);
    // kappa_{2,0} = z + z^3 + z^5 + ...
    for (int n = 2; n <= 11; ++n)
        CHECK(odd.s().a_n(n) == (n % 2 == 1 ? RatC(1) : RatC(0)));

    // a_{m+1} = (2/m) e^{i theta}; a_{2m+1} = (m+2)/m^2 e^{2 i theta}
    for (int m = 1; m <= 6; ++m) {
        auto km = koebe_root<RatC>(m, 0.0, 2 * m + 2);
        CHECK(km.s().a_n(m + 1) == RatC(Rational(2, m)));
        CHECK(km.s().a_n(2 * m + 1) == RatC(Rational(m + 2, static_cast<long long>(m) * m)));
        auto km_pi = koebe_root<RatC>(m, kPi, 2 * m + 2);
        CHECK(km_pi.s().a_n(m + 1) == RatC(Rational(-2, m)));
    }

    // m=3 float: a_7 = (5/9) e^{2 i theta} and |a_n(theta)| = |a_n(0)|
    double theta = 1.1;
    auto k3 = koebe_root<Cplx>(3, theta, 13);
    CHECK(std::abs(k3.s().a_n(7) - (5.0 / 9.0) * std::polar(1.0, 2 * theta)) < 1e-13);
    auto k3_base = koebe_root<Cplx>(3, 0.0, 13);
    for (int n = 2; n <= 13; ++n)
        CHECK(std::abs(k3.s().a_n(n)) == doctest::Approx(std::abs(k3_base.s().a_n(n))).epsilon(1e-12));

    // m = 1 reduces to the Koebe map (theta = 0)
    auto k1 = koebe_root<RatC>(1, 0.0, 9);
    auto kk = koebe<RatC>(0.0, 9);
    CHECK(k1.s() == kk.s());

    CHECK_THROWS_AS(koebe_root<RatC>(3, 0.0, 5), ParameterOutOfRange);
}

TEST_CASE("two_coeff_sigma") {
    auto F = two_coeff_sigma<RatC>(RatC(-2), RatC(1), 6);
    CHECK(F.sigma().b_j(0) == RatC(-2));
    CHECK(F.sigma().b_j(1) == RatC(1));
    CHECK(F.sigma().b_j(2).is_zero());
    // matches the inversion of the Koebe map
    auto from_koebe = s_to_sigma(koebe<RatC>(0.0, 8).s());
    for (int j = 0; j <= 6; ++j) CHECK(F.sigma().b_j(j) == from_koebe.b_j(j));

    auto ident = two_coeff_sigma<RatC>(RatC(0), RatC(0), 4);
    for (int j = 0; j <= 4; ++j) CHECK(ident.sigma().b_j(j).is_zero());

    CHECK_NOTHROW(two_coeff_sigma<RatC>(RatC(0), RatC(1, 2)));
    CHECK_THROWS_AS(two_coeff_sigma<RatC>(RatC(0), RatC(3, 2)), DilatationExceedsOne);
}

TEST_CASE("f_root_small tail structure") {
    for (int m = 1; m <= 5; ++m) {
        auto F = f_root_small<RatC>(m, RatC(1, 2), m + 6);
        CHECK(F.sigma().b_j(m) == RatC(Rational(-1, m + 1))); // -2t/(m+1) at t = 1/2
        for (int j = 0; j < m; ++j) CHECK(F.sigma().b_j(j).is_zero());
    }
    // t = 0 is the identity
    auto id = f_root_small<RatC>(3, RatC(0), 8);
    for (int j = 0; j <= 8; ++j) CHECK(id.sigma().b_j(j).is_zero());

    // m=1, t=1: b_1 = -1 and (m+1)/2 |b_m| = 1
    auto F11 = f_root_small<RatC>(1, RatC(1), 6);
    CHECK(F11.sigma().b_j(1) == RatC(-1));

    CHECK_THROWS_AS(f_root_small<RatC>(2, RatC(2), 8), ParameterOutOfRange);
}

TEST_CASE("small_dilatation family") {
    for (int n = 3; n <= 6; ++n) {
        Rational k(1, static_cast<long long>(n) * n + 1);
        auto f = small_dilatation<RatC>(n, k, RatC(-1), n + 3);
        CHECK(f.s().a_n(n) == RatC(Rational(-2) * k / Rational(n - 1)));
        // modulus hits the sharp bound 2k/(n-1)
        CHECK(f.s().a_n(n).norm2() == (Rational(2) * k / Rational(n - 1)).pow(2));
        // coefficients below index n vanish
        for (int j = 2; j < n; ++j) CHECK(f.s().a_n(j).is_zero());
    }
    CHECK_THROWS_AS(small_dilatation<RatC>(4, Rational(1, 10), RatC(1), 8), ParameterOutOfRange);
    CHECK_THROWS_AS(small_dilatation<RatC>(4, Rational(0), RatC(1), 8), ParameterOutOfRange);
    CHECK_THROWS_AS(small_dilatation<RatC>(4, Rational(1, 20), RatC(1, 2), 8), ParameterOutOfRange);

    // k -> 0 approaches the identity map (k = 0 itself is excluded)
    Rational tiny(1, 1000000);
    auto near_id = small_dilatation<RatC>(4, tiny, RatC(1), 10);
    for (int j = 2; j <= 10; ++j)
        CHECK(near_id.s().a_n(j).norm2() <= (Rational(4) * tiny).pow(2));
}

TEST_CASE("homotopy_s scales a_n by t^{n-1} and composes multiplicatively") {
    auto k = koebe<RatC>(0.0, 9);
    auto k1 = homotopy_s(k, RatC(1));
    CHECK(k1.s() == k.s());

    auto k0 = homotopy_s(k, RatC(0));
    for (int n = 2; n <= 9; ++n) CHECK(k0.s().a_n(n).is_zero());

    auto kh = homotopy_s(k, RatC(1, 2));
    for (int n = 2; n <= 9; ++n)
        CHECK(kh.s().a_n(n) == RatC(Rational(n) / Rational(2).pow(n - 1)));

    auto twice = homotopy_s(homotopy_s(k, RatC(1, 2)), RatC(2, 3));
    auto once = homotopy_s(k, RatC(1, 3));
    CHECK(twice.s() == once.s());

    CHECK_THROWS_AS(homotopy_s(k, RatC(2)), ParameterOutOfRange);
    CHECK_THROWS_AS(homotopy_s(two_coeff_sigma<RatC>(RatC(0), RatC(0)), RatC(1, 2)), WrongClass);
}

TEST_CASE("homotopy_sigma matches F_t(z) = t F(z/t) and commutes with inversion") {
    auto F = two_coeff_sigma<RatC>(RatC(3, 2), RatC(1, 3), 6);
    auto Ft = homotopy_sigma(F, RatC(1, 2));
    CHECK(Ft.sigma().b_j(0) == RatC(3, 4));   // b_0 t
    CHECK(Ft.sigma().b_j(1) == RatC(1, 12));  // b_1 t^2
    CHECK(Ft.sigma().b_j(2).is_zero());

    // s_to_sigma(f_t) = (s_to_sigma f)_t
    auto f = koebe<RatC>(kPi, 9);
    RatC t(2, 5);
    auto left = s_to_sigma(homotopy_s(f, t).s());
    auto F2 = detail::make_sigma_sample<RatC>("tmp", {}, std::nullopt, s_to_sigma(f.s()));
    auto right = homotopy_sigma(F2, t).sigma();
    CHECK(left == right);

    CHECK_THROWS_AS(homotopy_sigma(koebe<RatC>(0.0, 5), RatC(1, 2)), WrongClass);
}

TEST_CASE("starlike products: fixed cases") {
    // K=1, lambda=1, theta=0 degenerates to the Koebe map
    auto k = starlike_from<RatC>({RatC(1)}, {Rational(1)}, 9);
    for (int n = 2; n <= 9; ++n) CHECK(k.s().a_n(n) == RatC(n));

    // K=2, lambda=(1/2,1/2), theta=(0,pi): z/(1-z^2)
    auto l = starlike_from<RatC>({RatC(1), RatC(-1)}, {Rational(1, 2), Rational(1, 2)}, 9);
    CHECK(l.s().a_n(2).is_zero());
    CHECK(l.s().a_n(3) == RatC(1));
    for (int n = 2; n <= 9; ++n) CHECK(l.s().a_n(n) == (n % 2 == 1 ? RatC(1) : RatC(0)));

    CHECK_THROWS_AS(starlike_from<RatC>({RatC(1)}, {Rational(1, 2)}, 8), ParameterOutOfRange);
}

TEST_CASE("starlike sampler: determinism and coefficient sanity") {
    auto s1 = starlike_sample<Cplx>(42, 3, 10);
    auto s2 = starlike_sample<Cplx>(42, 3, 10);
    CHECK(s1.s().a == s2.s().a);
    CHECK(s1.id == s2.id);

    auto s3 = starlike_sample<Cplx>(43, 3, 10);
    CHECK(s1.s().a != s3.s().a);

    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        int factors = 1 + static_cast<int>(seed % 6);
        auto s = starlike_sample<Cplx>(seed, factors, 8);
        CHECK(std::abs(s.s().a_n(2)) <= 2.0 + 1e-12);
        for (int n = 2; n <= 8; ++n) CHECK(std::abs(s.s().a_n(n)) <= double(n) + 1e-9);
    }

    // exact-mode sampler is also deterministic and single-factor gives a Koebe rotation
    auto e1 = starlike_sample<RatC>(7, 2, 8);
    auto e2 = starlike_sample<RatC>(7, 2, 8);
    CHECK(e1.s() == e2.s());
    auto ek = starlike_sample<RatC>(9, 1, 8);
    CHECK(is_koebe_rotation(ek.s()));
}

TEST_CASE("is_koebe_rotation accepts rotations and rejects near misses") {
    CHECK(is_koebe_rotation(koebe<Cplx>(2.34, 10).s()));
    CHECK(is_koebe_rotation(koebe<RatC>(kPi, 10).s()));
    CHECK_FALSE(is_koebe_rotation(koebe_root<Cplx>(2, 0.0, 10).s()));
    auto perturbed = koebe<Cplx>(0.0, 10);
    std::get<SCoeffs<Cplx>>(perturbed.coeffs).a[3] += 1e-3;
    CHECK_FALSE(is_koebe_rotation(perturbed.s()));
    CHECK_FALSE(is_koebe_rotation(homotopy_s(koebe<Cplx>(0.0, 10), Cplx(0.5, 0.0)).s()));
}
