#include <cmath>
#include <limits>

#include "doctest.h"
#include "olp/series_core.hpp"
#include "test_support.hpp"

using namespace olp;
using olp::testing::near;

namespace {

TruncatedPowerSeries exp_series(std::size_t order) {
    std::vector<Complex> d(order + 1);
    double fact = 1.0;
    for (std::size_t k = 0; k <= order; ++k) {
        if (k > 0) fact *= static_cast<double>(k);
        d[k] = 1.0 / fact;
    }
    return TruncatedPowerSeries(d, std::numeric_limits<double>::infinity());
}

}  // namespace

TEST_SUITE("series_core") {

TEST_CASE("series_mul: geometric times its reciprocal is the unit series") {
    const TruncatedPowerSeries geo(std::vector<Complex>(8, 1.0), 1.0);
    std::vector<Complex> r(8, 0.0);
    r[0] = 1.0;
    r[1] = -1.0;
    const auto prod = series_mul(geo, TruncatedPowerSeries(r, std::nullopt));
    CHECK(prod.order() == 7);
    CHECK(prod[0] == Complex(1.0));
    for (std::size_t k = 1; k <= 7; ++k) CHECK(prod[k] == Complex(0.0));
    CHECK_FALSE(prod.radius().has_value());
}

TEST_CASE("series_mul: identity element and truncation to the shorter operand") {
    const TruncatedPowerSeries a({1.0, 2.0, Complex(3.0, -1.0), 4.0}, 2.0);
    const TruncatedPowerSeries one({1.0, 0.0, 0.0, 0.0, 0.0, 0.0}, 5.0);
    const auto p = series_mul(a, one);
    CHECK(p.order() == 3);
    CHECK(p.coeffs() == a.coeffs());
    CHECK(*p.radius() == 2.0);
}

TEST_CASE("series_mul: exp squared gives 2^k/k!") {
    const auto sq = series_mul(exp_series(6), exp_series(6));
    double fact = 1.0;
    for (std::size_t k = 0; k <= 6; ++k) {
        if (k > 0) fact *= static_cast<double>(k);
        CHECK(near(sq[k], std::pow(2.0, static_cast<double>(k)) / fact, 1e-15));
    }
}

TEST_CASE("series_reciprocal: closed forms") {
    const auto r = series_reciprocal(TruncatedPowerSeries(std::vector<Complex>(10, 1.0), 1.0));
    CHECK(r[0] == Complex(1.0));
    CHECK(r[1] == Complex(-1.0));
    for (std::size_t k = 2; k < 10; ++k) CHECK(r[k] == Complex(0.0));

    const auto e = series_reciprocal(exp_series(12));
    double fact = 1.0;
    for (std::size_t k = 0; k <= 12; ++k) {
        if (k > 0) fact *= static_cast<double>(k);
        CHECK(near(e[k], (k % 2 ? -1.0 : 1.0) / fact, 1e-15));
    }

    const auto c = series_reciprocal(TruncatedPowerSeries({1.0}, 1.0));
    CHECK(c.order() == 0);
    CHECK(c[0] == Complex(1.0));
}

TEST_CASE("series_reciprocal: zero constant term") {
    CHECK_THROWS_AS(series_reciprocal(TruncatedPowerSeries({0.0, 1.0}, 1.0)), Error);
    try {
        series_reciprocal(TruncatedPowerSeries({0.0, 1.0}, 1.0));
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ZeroConstantTerm);
    }
}

TEST_CASE("series_reciprocal: random series times reciprocal is the unit series") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Complex> a(15);
        a[0] = Complex(1.0, 0.0) + 0.5 * olp::testing::random_complex(rng);
        for (std::size_t k = 1; k < a.size(); ++k) a[k] = 0.5 * olp::testing::random_complex(rng);
        const TruncatedPowerSeries s(a, 1.0);
        const auto prod = series_mul(s, series_reciprocal(s));
        CHECK(std::abs(prod[0] - 1.0) <= 1e-13);
        double worst = 0.0;
        for (std::size_t k = 1; k < a.size(); ++k) worst = std::max(worst, std::abs(prod[k]));
        CHECK(worst <= 1e-13);
    }
}

TEST_CASE("TruncatedPowerSeries construction and normalization") {
    CHECK_THROWS_AS(TruncatedPowerSeries({}, 1.0), Error);
    CHECK_THROWS_AS(TruncatedPowerSeries({1.0}, 0.0), Error);
    CHECK_THROWS_AS(TruncatedPowerSeries::normalized({2.0, 1.0}, 1.0), Error);
    CHECK_THROWS_AS(TruncatedPowerSeries::normalized({1.0, 0.0, 1.0}, 1.0), Error);
    CHECK(TruncatedPowerSeries::normalized({1.0, 0.5, 0.25}, 2.0).is_normalized());
    CHECK_FALSE(TruncatedPowerSeries({1.0, 0.0}, 1.0).is_normalized());
}

TEST_CASE("evaluate: value and tail estimate") {
    const auto e = exp_series(40);
    const auto v = evaluate(e, Complex(1.0, 0.0));
    CHECK(near(v.value, std::exp(1.0), 1e-15));
    CHECK(v.tail_bound < 1e-40);
    CHECK(near(evaluate_checked(e, Complex(0.0, 1.0)), std::exp(Complex(0.0, 1.0)), 1e-15));

    const TruncatedPowerSeries geo(std::vector<Complex>(20, 1.0), 1.0);
    CHECK_THROWS_AS(evaluate_checked(geo, 0.9), Error);
    const auto g = evaluate(geo, 0.5);
    CHECK(g.tail_bound == doctest::Approx(std::pow(0.5, 20) / 0.5).epsilon(1e-12));
    CHECK(evaluate(geo, 0.0).tail_bound == 0.0);
}

TEST_CASE("laurent_mul examples") {
    const LaurentPoly r1{{-1, 1.0}, {0, 1.0}};
    const LaurentPoly sq = r1 * r1;
    CHECK(sq == LaurentPoly{{-2, 1.0}, {-1, 2.0}, {0, 1.0}});
    CHECK((r1 * LaurentPoly{}).empty());
    const LaurentPoly r2{{-1, 1.0}, {0, 1.0}, {1, 1.0}};
    CHECK(r1 * r2 == LaurentPoly{{-2, 1.0}, {-1, 2.0}, {0, 2.0}, {1, 1.0}});
}

TEST_CASE("laurent_eval examples") {
    const LaurentPoly r1{{-1, 1.0}, {0, 1.0}};
    CHECK(near(laurent_eval(r1, Complex(2.0)), 1.5, 1e-15));
    const LaurentPoly p{{-3, 2.0}, {0, Complex(1.0, 1.0)}, {4, -0.5}};
    CHECK(near(laurent_eval(p, Complex(1.0)), Complex(2.5, 1.0), 1e-15));
    const LaurentPoly sq{{-2, 1.0}, {-1, 2.0}, {0, 1.0}};
    CHECK(near(laurent_eval(sq, Complex(0.0, 1.0)), Complex(0.0, -2.0), 1e-15));
    CHECK(near(laurent_eval(LaurentPoly{{0, 3.0}, {2, 1.0}}, Complex(0.0)), 3.0, 0.0));
    try {
        (void)laurent_eval(r1, Complex(0.0));
        FAIL("expected EvalAtZero");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EvalAtZero);
    }
    const std::complex<long double> wide = laurent_eval(r1, std::complex<long double>(4.0L));
    CHECK(std::abs(wide - 1.25L) < 1e-18L);
}

TEST_CASE("laurent add and scale examples") {
    const LaurentPoly p{{-1, 1.0}, {0, 1.0}};
    CHECK((p + (-1.0) * p).empty());
    CHECK(laurent_scale(p, 1.0) == p);
    CHECK(laurent_add(p, LaurentPoly{{1, 1.0}, {0, -1.0}}) == LaurentPoly{{-1, 1.0}, {1, 1.0}});
}

TEST_CASE("LaurentPoly canonical form") {
    LaurentPoly p{{0, 1.0}, {3, 0.0}};
    CHECK(p.size() == 1);
    CHECK(p.coeff(3) == Complex(0.0));
    CHECK(p.coeff(-7) == Complex(0.0));
    p.add_to(0, -1.0);
    CHECK(p.empty());
    CHECK_THROWS_AS((void)p.min_exponent(), Error);
    p.set(-2, 1.0);
    p.set(5, 2.0);
    CHECK(p.min_exponent() == -2);
    CHECK(p.max_exponent() == 5);
    p.set(5, 0.0);
    CHECK(p.max_exponent() == -2);
    p *= Complex(1e-320);
    p *= Complex(1e-10);
    CHECK(p.empty());
    CHECK(p.is_canonical());
}

TEST_CASE("LaurentPoly ring axioms on random triples") {
    std::mt19937_64 rng(7);
    using olp::testing::laurent_distance;
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = olp::testing::random_laurent(rng, -4, 3);
        const auto b = olp::testing::random_laurent(rng, -2, 5);
        const auto c = olp::testing::random_laurent(rng, -6, 1);
        CHECK(laurent_distance((a * b) * c, a * (b * c)) <= 1e-12);
        CHECK(laurent_distance(a * b, b * a) <= 1e-12);
        CHECK(laurent_distance(a * (b + c), a * b + a * c) <= 1e-12);
        CHECK(laurent_distance(a + b, b + a) == 0.0);
        for (const auto* p : {&a, &b, &c}) CHECK(p->is_canonical());
        CHECK((a * b + c).is_canonical());
    }
}

TEST_CASE("laurent_eval is multiplicative") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const auto p = olp::testing::random_laurent(rng, -5, 5);
        const auto q = olp::testing::random_laurent(rng, -5, 5);
        const Complex x = std::polar(std::uniform_real_distribution<double>(0.7, 1.3)(rng),
                                     std::uniform_real_distribution<double>(0.0, 6.28)(rng));
        const Complex lhs = laurent_eval(p * q, x);
        const Complex rhs = laurent_eval(p, x) * laurent_eval(q, x);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
    }
}

}
