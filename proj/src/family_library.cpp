#include "olp/family_library.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace olp {

namespace {

// h_i = b [i = 0] + sum_j lambda_j a_j^(i+1): Maclaurin coefficients of (log f)'.
std::vector<double> log_derivative_coeffs(double b, const std::vector<BinomialFactor>& factors, std::size_t count) {
    std::vector<double> h(count, 0.0);
    for (const auto& f : factors) {
        double power = f.a;
        for (std::size_t i = 0; i < count; ++i) {
            h[i] += f.family_lambda * power;
            power *= f.a;
        }
    }
    if (count > 0) h[0] += b;
    return h;
}

std::vector<Complex> exp_binomial_coeffs(double b, const std::vector<BinomialFactor>& factors, std::size_t order) {
    const auto h = log_derivative_coeffs(b, factors, order);
    std::vector<double> d(order + 1, 0.0);
    d[0] = 1.0;
    for (std::size_t n = 0; n < order; ++n) {
        double acc = 0.0;
        for (std::size_t i = 0; i <= n; ++i) acc += h[i] * d[n - i];
        d[n + 1] = acc / static_cast<double>(n + 1);
    }
    return {d.begin(), d.end()};
}

std::vector<Complex> exponential_coeffs(std::size_t order, double sign) {
    std::vector<Complex> d(order + 1);
    double term = 1.0;
    d[0] = 1.0;
    for (std::size_t k = 1; k <= order; ++k) {
        term *= sign / static_cast<double>(k);
        d[k] = term;
    }
    return d;
}

}  // namespace

FamilySpec FamilySpec::exp_binomial(double b, std::vector<BinomialFactor> factors) {
    FamilySpec s;
    s.kind = FamilyKind::ExpBinomial;
    s.b = b;
    s.factors = std::move(factors);
    return s;
}

FamilySpec FamilySpec::explicit_list(std::vector<Complex> coeffs, double radius) {
    FamilySpec s;
    s.kind = FamilyKind::ExplicitList;
    s.coeffs = std::move(coeffs);
    s.radius = radius;
    return s;
}

void FamilySpec::validate() const {
    switch (kind) {
        case FamilyKind::Geometric:
        case FamilyKind::Exponential:
            return;
        case FamilyKind::ExpBinomial:
            if (!(b >= 0.0)) throw Error(ErrorCode::InvalidParams, "exp-binomial requires b >= 0");
            if (factors.empty()) throw Error(ErrorCode::InvalidParams, "exp-binomial requires at least one factor");
            for (std::size_t j = 0; j < factors.size(); ++j) {
                const auto& f = factors[j];
                if (!(f.a > 0.0 && f.a < 1.0))
                    throw Error(ErrorCode::InvalidParams, "exp-binomial requires 0 < a_" + std::to_string(j) + " < 1");
                if (!(f.family_lambda > 0.0))
                    throw Error(ErrorCode::InvalidParams,
                                "exp-binomial requires lambda_" + std::to_string(j) + " > 0");
            }
            return;
        case FamilyKind::ExplicitList:
            if (coeffs.empty()) throw Error(ErrorCode::InvalidParams, "explicit list has no coefficients");
            if (!(radius > 0.0))
                throw Error(ErrorCode::InvalidParams, "explicit list requires a positive radius of convergence");
            return;
    }
}

double FamilySpec::convergence_radius() const {
    switch (kind) {
        case FamilyKind::Geometric: return 1.0;
        case FamilyKind::Exponential: return std::numeric_limits<double>::infinity();
        case FamilyKind::ExpBinomial: {
            double amax = 0.0;
            for (const auto& f : factors) amax = std::max(amax, f.a);
            return 1.0 / amax;
        }
        case FamilyKind::ExplicitList: return radius;
    }
    return 0.0;
}

std::string to_string(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::ExplicitList: return "explicit-list";
        case FamilyKind::Geometric: return "geometric";
        case FamilyKind::Exponential: return "exponential";
        case FamilyKind::ExpBinomial: return "exp-binomial";
    }
    return "unknown";
}

TruncatedPowerSeries realize(const FamilySpec& spec, std::size_t order) {
    spec.validate();
    std::vector<Complex> d;
    switch (spec.kind) {
        case FamilyKind::Geometric: d.assign(order + 1, Complex(1.0)); break;
        case FamilyKind::Exponential: d = exponential_coeffs(order, 1.0); break;
        case FamilyKind::ExpBinomial: d = exp_binomial_coeffs(spec.b, spec.factors, order); break;
        case FamilyKind::ExplicitList:
            if (spec.coeffs.size() < order + 1)
                throw Error(ErrorCode::InsufficientOrder, "explicit list has " + std::to_string(spec.coeffs.size()) +
                                                              " coefficients, order " + std::to_string(order) +
                                                              " requested");
            d.assign(spec.coeffs.begin(), spec.coeffs.begin() + static_cast<std::ptrdiff_t>(order + 1));
            break;
    }
    // Also rejects built-in families whose coefficients underflow to zero at large order.
    return TruncatedPowerSeries::normalized(std::move(d), spec.convergence_radius());
}

TruncatedPowerSeries reciprocal_closed_form(const FamilySpec& spec, std::size_t order) {
    spec.validate();
    switch (spec.kind) {
        case FamilyKind::Geometric: {
            std::vector<Complex> e(order + 1, Complex(0.0));
            e[0] = 1.0;
            if (order >= 1) e[1] = -1.0;
            return TruncatedPowerSeries(std::move(e), std::numeric_limits<double>::infinity());
        }
        case FamilyKind::Exponential:
            return TruncatedPowerSeries(exponential_coeffs(order, -1.0), std::numeric_limits<double>::infinity());
        case FamilyKind::ExpBinomial: {
            std::vector<BinomialFactor> flipped = spec.factors;
            bool all_integer = true;
            for (auto& f : flipped) {
                all_integer = all_integer && f.family_lambda == std::floor(f.family_lambda);
                f.family_lambda = -f.family_lambda;
            }
            // prod (1 - a z)^lambda is a polynomial for integer lambda, otherwise
            // it branches at the same points as f.
            const double radius =
                all_integer ? std::numeric_limits<double>::infinity() : spec.convergence_radius();
            return TruncatedPowerSeries(exp_binomial_coeffs(-spec.b, flipped, order), radius);
        }
        case FamilyKind::ExplicitList:
            break;
    }
    throw Error(ErrorCode::UnsupportedFamily, "no closed-form reciprocal for explicit coefficient lists");
}

}  // namespace olp
