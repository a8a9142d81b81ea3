#pragma once

#include <string>
#include <vector>

#include "olp/series_core.hpp"

namespace olp {

enum class FamilyKind { ExplicitList, Geometric, Exponential, ExpBinomial };

/// One factor (1 - a z)^(-family_lambda) of the exponential-times-binomials family.
struct BinomialFactor {
    double a = 0.5;
    double family_lambda = 1.0;
};

/// Coefficient source for a partial-sum system.
///
/// ExpBinomial describes f(z) = exp(b z) * prod_j (1 - a_j z)^(-family_lambda_j)
/// with b >= 0, 0 < a_j < 1, family_lambda_j > 0 and at least one factor.
/// ExplicitList carries raw coefficients and a caller-supplied radius.
struct FamilySpec {
    FamilyKind kind = FamilyKind::Geometric;
    double b = 0.0;
    std::vector<BinomialFactor> factors;
    std::vector<Complex> coeffs;
    double radius = 0.0;

    static FamilySpec geometric() {
        FamilySpec s;
        s.kind = FamilyKind::Geometric;
        return s;
    }
    static FamilySpec exponential() {
        FamilySpec s;
        s.kind = FamilyKind::Exponential;
        return s;
    }
    static FamilySpec exp_binomial(double b, std::vector<BinomialFactor> factors);
    static FamilySpec explicit_list(std::vector<Complex> coeffs, double radius);

    /// Throws InvalidParams naming the violated constraint.
    void validate() const;

    /// Radius of convergence of f.
    double convergence_radius() const;
};

std::string to_string(FamilyKind kind);

/// Coefficients d_0..d_order of f. Exp-binomial coefficients come from the
/// logarithmic-derivative recurrence (n+1) d_{n+1} = sum_i h_i d_{n-i}.
TruncatedPowerSeries realize(const FamilySpec& spec, std::size_t order);

/// Coefficients of 1/f from its closed form (b -> -b, lambda -> -lambda).
/// Throws UnsupportedFamily for explicit lists.
TruncatedPowerSeries reciprocal_closed_form(const FamilySpec& spec, std::size_t order);

}  // namespace olp
