#include <cmath>

#include "doctest.h"
#include "olp/family_library.hpp"
#include "olp/functional_engine.hpp"
#include "olp/olp_builder.hpp"
#include "test_support.hpp"

using namespace olp;
using olp::testing::near;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no exception thrown");
    return ErrorCode::ConfigError;
}

struct Case {
    FamilySpec spec;
    double c;
};

std::vector<Case> families() {
    return {{FamilySpec::geometric(), 0.5},
            {FamilySpec::exponential(), 0.8},
            {FamilySpec::exp_binomial(1.0, {{0.5, 1.0}}), 0.7}};
}

std::size_t order_for(const FamilySpec& spec) { return spec.kind == FamilyKind::Exponential ? 150 : 600; }

}  // namespace

TEST_SUITE("functional_engine") {

TEST_CASE("exact moments: closed forms") {
    const auto geo = exact_moments(realize(FamilySpec::geometric(), 6), 6);
    CHECK(geo.window() == 6);
    CHECK(geo.at(0) == Complex(1.0));
    CHECK(geo.at(-1) == Complex(-1.0));
    for (int m = 2; m <= 6; ++m) CHECK(geo.at(-m) == Complex(0.0));
    for (int m = 1; m <= 6; ++m) CHECK(geo.at(m) == Complex(0.0));
    CHECK(code_of([&] { (void)geo.at(7); }) == ErrorCode::WindowExceeded);

    const auto ex = exact_moments(realize(FamilySpec::exponential(), 10), 10);
    double fact = 1.0;
    for (int m = 1; m <= 10; ++m) {
        fact *= m;
        CHECK(near(ex.at(-m), (m % 2 ? -1.0 : 1.0) / fact, 1e-16));
        CHECK(ex.at(m) == Complex(0.0));
    }
    CHECK(code_of([] { exact_moments(realize(FamilySpec::geometric(), 3), 4); }) == ErrorCode::InsufficientOrder);
}

TEST_CASE("apply_L examples") {
    const auto mt = exact_moments(realize(FamilySpec::geometric(), 4), 4);
    const LaurentPoly r1{{-1, 1.0}, {0, 1.0}};
    CHECK(apply_L(r1, mt) == Complex(0.0));
    CHECK(apply_L(LaurentPoly::constant(1.0), mt) == Complex(1.0));
    CHECK(apply_L(r1 * r1, mt) == Complex(-1.0));
    CHECK(code_of([&] { apply_L(LaurentPoly::monomial(-5), mt); }) == ErrorCode::WindowExceeded);
}

TEST_CASE("geometric Gram matrix K = 2") {
    const auto src = realize(FamilySpec::geometric(), 2);
    const auto g = gram_matrix(build_system(src, 2), exact_moments(src, 2));
    CHECK(g(0, 0) == Complex(1.0));
    CHECK(g(1, 1) == Complex(-1.0));
    CHECK(g(2, 2) == Complex(1.0));
    CHECK(g.max_off_diagonal() == 0.0);
}

TEST_CASE("exponential Gram matrix K = 10") {
    const auto src = realize(FamilySpec::exponential(), 10);
    const auto g = gram_matrix(build_system(src, 10), exact_moments(src, 10));
    CHECK(g(0, 0) == Complex(1.0));
    CHECK(g.max_off_diagonal() <= 1e-10);
    CHECK(g.min_diagonal() >= 1e-8);
}

TEST_CASE("Gram diagonal is the source coefficient of even index") {
    // L(R_n^2) = d_{2m} for n = 2m and -d_{2m+2} for n = 2m+1, formed by cancellation of O(1) terms.
    for (const auto& fc : families()) {
        const auto src = realize(fc.spec, 24);
        const auto g = gram_matrix(build_system(src, 20), exact_moments(src, 22));
        for (std::size_t n = 0; n <= 20; ++n) {
            const Complex want = n % 2 == 0 ? src[n] : -src[n + 1];
            CHECK(std::abs(g(n, n) - want) <= 1e-14);
        }
    }
}

TEST_CASE("contour functional examples") {
    const auto src = realize(FamilySpec::geometric(), 600);
    const ContourFunctional L(src, {0.5, 256});
    CHECK(near(L(LaurentPoly::constant(1.0)), 1.0, 1e-13));
    const auto sys = build_system(src, 10);
    for (std::size_t n = 2; n <= 10; n += 2) CHECK(std::abs(L(sys.R[n])) <= 1e-10);
    CHECK(near(contour_L(sys.R[1] * sys.R[1], src, {0.5, 256}), -1.0, 1e-10));
    CHECK(L.min_abs_denominator() > 0.5);
}

TEST_CASE("contour functional errors") {
    const auto geo = realize(FamilySpec::geometric(), 600);
    CHECK(code_of([&] { ContourFunctional(geo, {1.0, 256}); }) == ErrorCode::RadiusInvalid);
    CHECK(code_of([&] { ContourFunctional(geo, {0.0, 256}); }) == ErrorCode::RadiusInvalid);
    CHECK(code_of([&] { ContourFunctional(geo, {0.5, 8}); }) == ErrorCode::RadiusInvalid);
    CHECK(code_of([&] { ContourFunctional(realize(FamilySpec::geometric(), 20), {0.9, 256}); }) ==
          ErrorCode::TailNotNegligible);
    // 2 - e^z vanishes at z = ln 2, which is the node y^2 = c^2 for c = sqrt(ln 2).
    std::vector<Complex> d(60);
    double fact = 1.0;
    d[0] = 1.0;
    for (std::size_t k = 1; k < d.size(); ++k) d[k] = -1.0 / (fact *= static_cast<double>(k));
    const TruncatedPowerSeries two_minus_exp(d, std::numeric_limits<double>::infinity());
    CHECK(code_of([&] { ContourFunctional(two_minus_exp, {std::sqrt(std::log(2.0)), 256}); }) ==
          ErrorCode::NearZeroDenominator);
}

TEST_CASE("route agreement for products up to index 12") {
    for (const auto& fc : families()) {
        const auto src = realize(fc.spec, order_for(fc.spec));
        const auto sys = build_system(src, 12);
        const auto mt = exact_moments(src, 12);
        const ContourFunctional L(src, {fc.c, 512});
        for (std::size_t n = 0; n <= 12; ++n)
            for (std::size_t m = 0; m <= 12; ++m) {
                const auto p = sys.R[n] * sys.R[m];
                const Complex exact = apply_L(p, mt);
                CHECK(std::abs(L(p) - exact) <= 1e-9 * (1.0 + std::abs(exact)));
            }
    }
}

TEST_CASE("specialized exp-binomial route") {
    const auto spec = FamilySpec::exp_binomial(0.0, {{0.5, 1.0}});
    const auto src = realize(spec, 40);
    const auto sys = build_system(src, 12);
    const auto mt = exact_moments(src, 12);
    const ExpBinomialFunctional L(spec, 512);
    CHECK(near(L(LaurentPoly::constant(1.0)), 1.0, 1e-14));
    CHECK(std::abs(specialized_L_expbinomial(sys.R[1], spec, 512)) <= 1e-12);
    CHECK(near(L(sys.R[1] * sys.R[1]), apply_L(sys.R[1] * sys.R[1], mt), 1e-11));
    for (std::size_t n = 0; n <= 12; ++n)
        for (std::size_t m = 0; m <= 12; ++m) {
            const auto p = sys.R[n] * sys.R[m];
            const Complex exact = apply_L(p, mt);
            CHECK(std::abs(L(p) - exact) <= 1e-9 * (1.0 + std::abs(exact)));
        }
    CHECK(code_of([] { ExpBinomialFunctional(FamilySpec::geometric(), 64); }) == ErrorCode::UnsupportedFamily);
}

TEST_CASE("quadrature error decays as the node count doubles") {
    // 1/f = (1 - z/2)^(1/2) has a branch point at y^2 = 2, so the error at c = 1.2
    // decays like (c^2 / 2)^(N/2) and is visible at small N.
    const auto spec = FamilySpec::exp_binomial(0.0, {{0.5, 0.5}});
    const auto src = realize(spec, 600);
    const auto sys = build_system(src, 6);
    const auto mt = exact_moments(src, 6);
    const auto p = sys.R[5] * sys.R[6];
    const Complex exact = apply_L(p, mt);
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t nodes : {64, 128, 256}) {
        const double err = std::abs(ContourFunctional(src, {1.2, nodes})(p) - exact);
        CHECK((err < prev || err <= 1e-14));
        prev = err;
    }
}

TEST_CASE("moment vanishing is structural") {
    const auto mt = exact_moments(realize(FamilySpec::exp_binomial(2.0, {{0.9, 3.0}}), 15), 15);
    for (int m = 1; m <= 15; ++m) CHECK(mt.at(m) == Complex(0.0));
    CHECK(mt.at(0) == Complex(1.0));
}

}
