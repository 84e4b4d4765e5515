#include <doctest.h>

#include <cmath>

#include "tta/symbols.hpp"

using namespace tta;

namespace {

// central finite differences as the derivative oracle
double fd1(const std::function<double(double)>& f, double t, double h = 1e-5) {
    return (f(t + h) - f(t - h)) / (2.0 * h);
}
double fd2(const std::function<double(double)>& f, double t, double h = 1e-4) {
    return (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
}

} // namespace

TEST_CASE("cutoff: plateau, support, midpoint and symmetry") {
    const CutoffTheta th = make_theta();
    for (double x : {0.0, 0.25, 0.5, -0.5}) CHECK(th(x) == 1.0);
    for (double x : {1.0, 1.5, -1.0, -2.0}) CHECK(th(x) == 0.0);
    CHECK(th(0.75) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(th(0.6) == doctest::Approx(th(-0.6)).epsilon(1e-15));
    CHECK(th(0.6) > th(0.9));
}

TEST_CASE("cutoff: C^2 junctions and derivative consistency") {
    const CutoffTheta th = make_theta();
    auto f = [&](double t) { return th(t); };
    for (double t : {0.55, 0.75, 0.95, -0.8}) {
        CHECK(th.d1(t) == doctest::Approx(fd1(f, t)).epsilon(1e-7));
        CHECK(th.d2(t) == doctest::Approx(fd2(f, t)).epsilon(1e-5));
    }
    // junction continuity
    CHECK(std::abs(th.d1(0.5 + 1e-9)) < 1e-6);
    CHECK(std::abs(th.d1(1.0 - 1e-9)) < 1e-6);
    CHECK(std::abs(th.d2(0.5 + 1e-7)) < 1e-4);
    CHECK(th.d2_sup() > 0.0);
}

TEST_CASE("korobov symbol values and derivatives") {
    const Symbol k = make_korobov(2.0);
    CHECK(k(0.0) == 1.0);
    CHECK(k(2.0) == doctest::Approx(0.25));
    CHECK(k(-3.0) == doctest::Approx(1.0 / 9.0));
    CHECK(k.is_korobov());
    auto f = [&](double t) { return k(t); };
    for (double t : {1.5, 3.0, -2.5}) {
        CHECK(k.d1(t) == doctest::Approx(fd1(f, t)).epsilon(1e-6));
        CHECK(k.d2(t) == doctest::Approx(fd2(f, t)).epsilon(1e-4));
    }
    CHECK_THROWS_AS(make_korobov(1.0), std::invalid_argument);
}

TEST_CASE("mask symbol: outer region values, evenness, C^1 junction") {
    const Symbol m = make_mask(2.0, 1.0);
    for (double t : {1.0, 2.0, 7.5}) {
        const double want = std::pow(t, -2.0) * std::pow(std::log(t + 1.0), -1.0);
        CHECK(m(t) == doctest::Approx(want).epsilon(1e-12));
        CHECK(m(-t) == doctest::Approx(want).epsilon(1e-12));
    }
    auto f = [&](double t) { return m(t); };
    for (double t : {0.3, 0.9, 1.4, 5.0}) {
        CHECK(m.d1(t) == doctest::Approx(fd1(f, t)).epsilon(1e-5));
        CHECK(m.d2(t) == doctest::Approx(fd2(f, t)).epsilon(1e-3));
    }
    // junction at |t| = 1
    CHECK(m(1.0 - 1e-9) == doctest::Approx(m(1.0 + 1e-9)).epsilon(1e-6));
    CHECK(m.d1(1.0 - 1e-7) == doctest::Approx(m.d1(1.0 + 1e-7)).epsilon(1e-4));
}

TEST_CASE("exponent symbol values and derivatives") {
    const Symbol e = make_exponent(1.5);
    CHECK(e(0.0) == doctest::Approx(1.0));
    CHECK(e(2.0) == doctest::Approx(std::exp(-3.0)).epsilon(1e-12));
    CHECK(e(-2.0) == doctest::Approx(std::exp(-3.0)).epsilon(1e-12));
    auto f = [&](double t) { return e(t); };
    for (double t : {0.5, 2.0, -1.3}) {
        CHECK(e.d1(t) == doctest::Approx(fd1(f, t)).epsilon(1e-6));
        CHECK(e.d2(t) == doctest::Approx(fd2(f, t)).epsilon(1e-4));
    }
    CHECK_THROWS_AS(make_exponent(0.0), std::invalid_argument);
}

TEST_CASE("ratio symbol follows the quotient rule") {
    const Symbol num = make_korobov(2.0);
    const Symbol den = make_exponent(0.5);
    const RatioSymbol G(num, den);
    auto f = [&](double t) { return num(t) / den(t); };
    for (double t : {0.8, 2.0, -3.1}) {
        CHECK(G(t) == doctest::Approx(f(t)).epsilon(1e-12));
        CHECK(G.d1(t) == doctest::Approx(fd1(f, t)).epsilon(1e-5));
        CHECK(G.d2(t) == doctest::Approx(fd2(f, t)).epsilon(1e-3));
    }
}

TEST_CASE("coefficient tail bounds dominate direct partial tails") {
    // oracle: direct summation far past N, remainder negligible by comparison
    const Symbol k = make_korobov(3.0);
    double direct = 0.0;
    for (int j = 21; j <= 200000; ++j) direct += 2.0 * k(double(j));
    CHECK(direct <= k.coeff_tail_l1(20.0));
    CHECK(k.coeff_tail_l1(20.0) < 2.0 * direct); // not wildly loose

    const Symbol e = make_exponent(1.0);
    double de = 0.0, de2 = 0.0;
    for (int j = 11; j <= 200; ++j) {
        de += 2.0 * e(double(j));
        de2 += 2.0 * e(double(j)) * e(double(j));
    }
    CHECK(de <= e.coeff_tail_l1(10.0));
    CHECK(de2 <= e.coeff_tail_l2sq(10.0));

    const Symbol m = make_mask(2.0, 1.0);
    double dm2 = 0.0;
    for (int j = 21; j <= 200000; ++j) dm2 += 2.0 * m(double(j)) * m(double(j));
    CHECK(dm2 <= m.coeff_tail_l2sq(20.0));
}

TEST_CASE("J_m matches the closed form for pure power symbols") {
    // hand integral: 2 m^-r (1/(r-1) + (r+1))
    for (double r : {1.5, 2.0, 3.0}) {
        const Symbol k = make_korobov(r);
        for (int m : {1, 4, 16}) {
            const double want = 2.0 * std::pow(double(m), -r) * (1.0 / (r - 1.0) + r + 1.0);
            CHECK(J_m(k, m, 1e-12) == doctest::Approx(want).epsilon(1e-6));
        }
    }
}

TEST_CASE("J_m decreases for the exponent symbol and accepts explicit cuts") {
    const Symbol e = make_exponent(1.0);
    const double j1 = J_m(e, 1, 1e-12);
    const double j4 = J_m(e, 4, 1e-12);
    CHECK(j1 > j4);
    CHECK(j4 > 0.0);
    const double jx = J_m(e, 1, 1e-12, 60.0);
    CHECK(jx == doctest::Approx(j1).epsilon(1e-6));
}

TEST_CASE("epsilon_m is positive and decreasing for the power class") {
    const Symbol k = make_korobov(2.0);
    const double e4 = epsilon_m(k, k, 4);
    const double e16 = epsilon_m(k, k, 16);
    CHECK(e4 > 0.0);
    CHECK(e16 > 0.0);
    CHECK(e16 < e4);
}

TEST_CASE("monotone-type comparability ratio for the power symbol") {
    const Symbol k = make_korobov(2.0);
    // |x|^-2 with 2|y| >= |x| >= |y|/2: worst ratio (y/x)^2 = 1/4
    const double c0 = monotone_type_ratio(k, 1.0, 1000.0);
    CHECK(c0 >= 0.24);
    CHECK(c0 <= 0.26);
}
