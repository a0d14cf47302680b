#include <doctest.h>

#include <random>

#include "univalent/schwarzian.hpp"
#include "univalent/families.hpp"

using namespace univalent;

namespace {

std::mt19937_64 g_rng(60601);

RatC rand_ratc(int num = 5, int den = 3) {
    auto part = [&] {
        return Rational(static_cast<long long>(g_rng() % (2 * num + 1)) - num,
                        1 + static_cast<long long>(g_rng() % den));
    };
    return RatC(part(), part());
}

// Moebius series (a z + b) / (c z + d), d != 0.
TruncSeries<RatC> mobius_series(long long a, long long b, long long c, long long d, int order) {
    TruncSeries<RatC> num(order), den(order);
    num.at(0) = RatC(b);
    num.at(1) = RatC(a);
    den.at(0) = RatC(d);
    den.at(1) = RatC(c);
    return num / den;
}

// Independent Laurent-side oracle: with w = 1/z,
//   F' = 1 - sum j b_j w^{j+1},  F'' = sum j(j+1) b_j w^{j+2},
//   R = F''/F',  S_F = -w^2 R'(w) - R^2/2  (a series in w starting at w^4),
// so the z^{-4-k} coefficient is the w^{4+k} coefficient of that series.
std::vector<RatC> tail_oracle(const SigmaCoeffs<RatC>& F, int terms) {
    int order = terms + 5;
    TruncSeries<RatC> P(order), Q(order);
    P.at(0) = RatC(1);
    for (int j = 1; j <= F.max_index(); ++j) {
        if (j + 1 <= order) P.at(j + 1) = RatC(-j) * F.b_j(j);
        if (j + 2 <= order) Q.at(j + 2) = RatC(static_cast<long long>(j) * (j + 1)) * F.b_j(j);
    }
    auto R = Q / P;
    auto w2 = TruncSeries<RatC>::monomial(RatC(1), 2, order);
    auto S = -(w2 * differentiate(R)).truncated(order - 1) -
             RatC(1, 2) * (R * R).truncated(order - 1);
    std::vector<RatC> s(static_cast<std::size_t>(terms));
    for (int k = 0; k < terms; ++k) s[static_cast<std::size_t>(k)] = S[4 + k];
    return s;
}

} // namespace

TEST_CASE("schwarzian annihilates Moebius maps exactly") {
    // z/(1-z) to order 11 -> zero series to order 8
    auto s = schwarzian(mobius_series(1, 0, -1, 1, 11));
    CHECK(s.order() == 8);
    for (int k = 0; k <= 8; ++k) CHECK(s[k].is_zero());

    auto s2 = schwarzian(mobius_series(2, 3, 1, -4, 11));
    for (int k = 0; k <= 8; ++k) CHECK(s2[k].is_zero());

    // identity
    auto sid = schwarzian(TruncSeries<RatC>::identity(9));
    for (int k = 0; k <= sid.order(); ++k) CHECK(sid[k].is_zero());
}

TEST_CASE("schwarzian of the Koebe map is -6/(1-z^2)^2") {
    TruncSeries<RatC> one_minus(13);
    one_minus.at(0) = RatC(1);
    one_minus.at(1) = RatC(-1);
    auto koebe = TruncSeries<RatC>::identity(13) / (one_minus * one_minus);
    auto s = schwarzian(koebe);
    CHECK(s[0] == RatC(-6));
    for (int k = 0; k <= s.order(); ++k) {
        if (k % 2 == 0)
            CHECK(s[k] == RatC(-6 * (k / 2 + 1)));
        else
            CHECK(s[k].is_zero());
    }
}

TEST_CASE("constant schwarzian term is 6(a_3 - a_2^2) for normalized series") {
    for (int iter = 0; iter < 15; ++iter) {
        TruncSeries<RatC> f(8);
        f.at(1) = RatC(1);
        for (int k = 2; k <= 8; ++k) f.at(k) = rand_ratc();
        auto s = schwarzian(f);
        CHECK(s[0] == RatC(6) * (f[3] - f[2] * f[2]));
    }
}

TEST_CASE("schwarzian is invariant under postcomposition with Moebius maps") {
    for (int iter = 0; iter < 10; ++iter) {
        TruncSeries<RatC> f(11);
        f.at(1) = RatC(1);
        for (int k = 2; k <= 11; ++k) f.at(k) = rand_ratc(3, 2);
        // sigma(u) = (2u + 3)/(u - 4)
        TruncSeries<RatC> num = RatC(2) * f + TruncSeries<RatC>::constant(RatC(3), 11);
        TruncSeries<RatC> den = f + TruncSeries<RatC>::constant(RatC(-4), 11);
        auto composed = num / den;
        CHECK(schwarzian(composed) == schwarzian(f));
    }
}

TEST_CASE("schwarzian preconditions") {
    TruncSeries<RatC> flat(6); // f' == 0 at the origin
    flat.at(2) = RatC(1);
    CHECK_THROWS_AS(schwarzian(flat), CriticalPointAtOrigin);
    CHECK_THROWS_AS(schwarzian(TruncSeries<RatC>::identity(2)), InsufficientOrder);
}

TEST_CASE("sigma tail: leading coefficient -6 b_1, zero cases, koebe inversion") {
    auto F = two_coeff_sigma<RatC>(RatC(-2), RatC(1), 8);
    auto tail = sigma_schwarzian_tail(F.sigma(), 10);
    CHECK(tail.coeff(0) == RatC(-6));
    CHECK(tail.coeff(1).is_zero());
    CHECK(tail.coeff(2) == RatC(-12));
    CHECK(tail.coeff(4) == RatC(-18));

    // identity -> zero tail
    auto id_tail = sigma_schwarzian_tail(two_coeff_sigma<RatC>(RatC(0), RatC(0), 4).sigma(), 8);
    for (int k = 0; k < 8; ++k) CHECK(id_tail.coeff(k).is_zero());

    // F_{2,1}: b_1 = 0, so the tail starts at z^{-5}
    auto Fr = f_root_small<RatC>(2, RatC(1), 8);
    auto tr = sigma_schwarzian_tail(Fr.sigma(), 8);
    CHECK(tr.coeff(0).is_zero());
    CHECK_FALSE(tr.coeff(1).is_zero());
}

TEST_CASE("sigma tail agrees with the direct Laurent oracle") {
    for (int iter = 0; iter < 20; ++iter) {
        std::vector<RatC> b(7);
        for (auto& v : b) v = rand_ratc(4, 3);
        SigmaCoeffs<RatC> F(b);
        auto tail = sigma_schwarzian_tail(F, 8);
        auto expect = tail_oracle(F, 8);
        for (int k = 0; k < 8; ++k) CHECK(tail.coeff(k) == expect[static_cast<std::size_t>(k)]);
        CHECK(tail.coeff(0) == RatC(-6) * F.b_j(1));
    }
}

TEST_CASE("sign bridge report: both quantities agree with a plus sign") {
    std::vector<RatC> b = {RatC(1, 2), RatC(-1, 3), RatC(2, 7)};
    auto rep = schwarzian_sign_report(SigmaCoeffs<RatC>(b));
    CHECK(rep.limit_z4_schwarzian == RatC(2));   // -6 b_1 = 2
    CHECK(rep.sf0_bridge == RatC(2));            // 6 (a_3 - a_2^2)
    CHECK(rep.equal_with_plus);
    CHECK_FALSE(rep.equal_with_minus);
}

TEST_CASE("b-norm estimate: zero tail, koebe inversion converging to 6") {
    SchwarzianTail<Cplx> zero{std::vector<Cplx>(8, Cplx(0, 0))};
    CHECK(b_norm_estimate(zero, BNormGrid{}) == 0.0);

    auto F = two_coeff_sigma<RatC>(RatC(-2), RatC(1), 8);
    auto tail = to_float(sigma_schwarzian_tail(F.sigma(), 12));
    BNormGrid grid{1.05, 8.0, 16, 16};
    double prev = 0.0;
    for (int level = 0; level < 4; ++level) {
        double est = b_norm_estimate(tail, grid);
        CHECK(est >= prev); // refinement never loses nodes
        prev = est;
        grid = grid.refined();
    }
    CHECK(prev == doctest::Approx(6.0).epsilon(1e-3));
    CHECK(prev <= 6.0 + 1e-9);

    // homotopy monotonicity: estimate at t=1/2 <= estimate at t=1
    auto Fh = homotopy_sigma(F, RatC(1, 2));
    auto tail_h = to_float(sigma_schwarzian_tail(Fh.sigma(), 12));
    BNormGrid g2{1.05, 8.0, 64, 64};
    CHECK(b_norm_estimate(tail_h, g2) <= b_norm_estimate(tail, g2) + 1e-12);
}

TEST_CASE("golusin bound values and properties") {
    CHECK(golusin_bound(3, 1.0, 0.5) == doctest::Approx(0.125));       // c=1 collapses the factor
    CHECK(golusin_bound(2, 0.0, 0.5) == doctest::Approx(0.125));       // c=0 gives |t|^{m+1}
    // equality case: g(t) = t^m (t + c)/(1 + c t) on the positive axis
    for (double c : {0.2, 0.6, 0.9}) {
        for (int m = 1; m <= 4; ++m) {
            double t = 0.3;
            double g = std::pow(t, m) * (t + c) / (1.0 + c * t);
            CHECK(g == doctest::Approx(golusin_bound(m, c, t)).epsilon(1e-15));
        }
    }
    // bound <= r^m <= r on a grid
    for (double c : {0.0, 0.3, 0.7, 1.0})
        for (int m = 1; m <= 5; ++m)
            for (double r = 0.05; r < 1.0; r += 0.05) {
                double bnd = golusin_bound(m, c, r);
                CHECK(bnd <= std::pow(r, m) + 1e-15);
                CHECK(std::pow(r, m) <= r + 1e-15);
            }
    CHECK_THROWS_AS(golusin_bound(0, 0.5, 0.5), ParameterOutOfRange);
    CHECK_THROWS_AS(golusin_bound(1, 1.5, 0.5), ParameterOutOfRange);
}
