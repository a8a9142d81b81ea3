#include "olp/genfun_checker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

namespace olp {

namespace {

double radius_of(const TruncatedPowerSeries& s) {
    return s.radius().value_or(std::numeric_limits<double>::infinity());
}

void require_inside(const TruncatedPowerSeries& s, Complex w, const char* what) {
    const double rho = radius_of(s);
    if (std::isfinite(rho) && std::abs(w) > kRadiusMargin * rho)
        throw Error(ErrorCode::DomainViolation, std::string(what) + " = " + std::to_string(std::abs(w)) +
                                                    " exceeds " + std::to_string(kRadiusMargin) + " * rho");
}

void require_terms(const OLPSystem& sys, std::size_t terms) {
    if (sys.K < terms)
        throw Error(ErrorCode::InsufficientOrder, "system built to K = " + std::to_string(sys.K) + ", need " +
                                                      std::to_string(terms) + " terms");
}

}  // namespace

LaurentSample LaurentSample::with_branch(Complex x, Complex z, int branch, std::size_t terms) {
    const Complex root = std::sqrt(x);
    return {x, z, branch >= 0 ? root : -root, terms};
}

GenfunResult check_partial_sum_genfun(const OLPSystem& sys, const PartialSumSample& s) {
    const double abs_t = std::abs(s.t);
    if (!(abs_t < 1.0)) throw Error(ErrorCode::DomainViolation, "|t| must be < 1");
    if (!(std::abs(s.x) < radius_of(sys.source))) throw Error(ErrorCode::DomainViolation, "|x| must be < rho");
    require_inside(sys.source, s.x * s.t, "|x t|");
    require_terms(sys, s.terms);

    GenfunResult r;
    r.lhs = evaluate_checked(sys.source, s.x * s.t) / (1.0 - s.t);

    double c_max = 0.0;
    Complex t_power(1.0);
    for (std::size_t n = 0; n <= s.terms; ++n) {
        const Complex fn = laurent_eval(sys.partials[n], s.x);
        c_max = std::max(c_max, std::abs(fn));
        r.rhs += fn * t_power;
        t_power *= s.t;
    }
    r.residual = std::abs(r.lhs - r.rhs);
    r.tail_bound = c_max * std::pow(abs_t, static_cast<double>(s.terms + 1)) / (1.0 - abs_t);
    r.floor = 1e-13 * std::max({1.0, std::abs(r.lhs), c_max});
    return r;
}

GenfunResult check_laurent_genfun(const OLPSystem& sys, const LaurentSample& s) {
    const double abs_x = std::abs(s.x);
    if (!(abs_x > 0.0 && abs_x < radius_of(sys.source)))
        throw Error(ErrorCode::DomainViolation, "need 0 < |x| < rho");
    if (std::abs(s.sqrt_x * s.sqrt_x - s.x) > 1e-14 * abs_x)
        throw Error(ErrorCode::DomainViolation, "sqrt_x^2 does not reproduce x");
    const double abs_root = std::abs(s.sqrt_x);
    if (!(std::abs(s.z) < abs_root)) throw Error(ErrorCode::DomainViolation, "need |z| < |sqrt x|");
    if (std::abs(s.sqrt_x - s.z) < 1e-6 || std::abs(s.sqrt_x + s.z) < 1e-6)
        throw Error(ErrorCode::PoleProximity, "z within 1e-6 of a pole at +-sqrt x");
    require_inside(sys.source, s.sqrt_x * s.z, "|sqrt(x) z|");
    require_terms(sys, s.terms);

    const Complex root = s.sqrt_x;
    GenfunResult r;
    r.lhs = (root + 1.0) / (root - s.z) * evaluate_checked(sys.source, root * s.z) +
            (root - 1.0) / (root + s.z) * evaluate_checked(sys.source, -root * s.z);

    const double q = std::abs(s.z) / abs_root;
    double c_max = 0.0;
    double term_max = 0.0;
    Complex z_power(1.0);
    for (std::size_t n = 0; n <= s.terms; ++n) {
        const Complex term = laurent_eval(sys.R[n], s.x) * z_power;
        r.rhs += term;
        term_max = std::max(term_max, std::abs(term));
        if (q > 0.0)
            c_max = std::max(c_max, std::abs(term) / std::pow(q, static_cast<double>(n)));
        z_power *= s.z;
    }
    r.rhs *= 2.0;
    r.residual = std::abs(r.lhs - r.rhs);
    r.tail_bound = q > 0.0 ? 2.0 * c_max * std::pow(q, static_cast<double>(s.terms + 1)) / (1.0 - q) : 0.0;
    r.floor = 1e-13 * std::max({1.0, std::abs(r.lhs), 2.0 * term_max});
    return r;
}

Complex rn_by_contour(const TruncatedPowerSeries& source, std::size_t n, Complex x, std::size_t nodes) {
    const double abs_x = std::abs(x);
    if (!(abs_x > 0.0 && abs_x < radius_of(source))) throw Error(ErrorCode::DomainViolation, "need 0 < |x| < rho");
    if (nodes < 16) throw Error(ErrorCode::InvalidParams, "contour quadrature needs at least 16 nodes");
    const Complex root = std::sqrt(x);
    const double r = std::abs(root) / 2.0;
    require_inside(source, root * r, "|sqrt(x) z|");

    const auto N = static_cast<long long>(nodes);
    const auto shift = static_cast<long long>(n % nodes);
    Complex total(0.0);
    for (long long k = 0; k < N; ++k) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(N);
        const Complex z = std::polar(r, angle);
        const Complex integrand = (root + 1.0) / (root - z) * evaluate_checked(source, root * z) +
                                  (root - 1.0) / (root + z) * evaluate_checked(source, -root * z);
        const long long idx = (N - (shift * k) % N) % N;
        total += integrand *
                 std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(idx) / static_cast<double>(N));
    }
    return total / static_cast<double>(N) / 2.0 * std::pow(r, -static_cast<double>(n));
}

namespace {

Complex random_point(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> modulus(lo, hi);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    const double m = modulus(rng);
    return std::polar(m, phase(rng));
}

double sample_scale(double rho) { return std::min(rho, 4.0); }

}  // namespace

std::vector<Complex> admissible_points(double rho, std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const double scale = sample_scale(rho);
    std::vector<Complex> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(random_point(rng, 0.25 * scale, 0.8 * scale));
    return out;
}

std::vector<PartialSumSample> admissible_partial_sum_samples(double rho, std::size_t count, std::size_t terms,
                                                             std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const double scale = sample_scale(rho);
    std::vector<PartialSumSample> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const Complex x = random_point(rng, 0.25 * scale, 0.8 * scale);
        const Complex t = random_point(rng, 0.0, 0.6);
        out.push_back({x, t, terms});
    }
    return out;
}

std::vector<LaurentSample> admissible_laurent_samples(double rho, std::size_t count, std::size_t terms,
                                                      std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const double scale = sample_scale(rho);
    std::bernoulli_distribution coin(0.5);
    std::vector<LaurentSample> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const Complex x = random_point(rng, 0.25 * scale, 0.8 * scale);
        const Complex z = random_point(rng, 0.0, 0.6 * std::sqrt(std::abs(x)));
        out.push_back(LaurentSample::with_branch(x, z, coin(rng) ? 1 : -1, terms));
    }
    return out;
}

}  // namespace olp
