#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "olp/olp_builder.hpp"
#include "olp/series_core.hpp"

namespace olp {

/// Evaluation point for f(xt)/(1-t) = sum_n f_n(x) t^n; needs |t| < 1, |x| < rho.
struct PartialSumSample {
    Complex x;
    Complex t;
    std::size_t terms = 80;
};

/// Evaluation point for the Laurent generating function; needs 0 < |x| < rho
/// and |z| < |sqrt_x|. sqrt_x is any fixed square root of x.
struct LaurentSample {
    Complex x;
    Complex z;
    Complex sqrt_x;
    std::size_t terms = 80;

    /// branch = +1 takes the principal root, -1 its negative.
    static LaurentSample with_branch(Complex x, Complex z, int branch, std::size_t terms = 80);
};

struct GenfunResult {
    Complex lhs;
    Complex rhs;
    double residual = 0.0;
    /// Geometric tail estimate C q^(terms+1) / (1 - q) of the truncated right side.
    double tail_bound = 0.0;
    /// Rounding allowance, 1e-13 relative to the size of the terms.
    double floor = 0.0;

    bool within_bound() const noexcept { return residual <= tail_bound + floor; }
};

/// Margin required between an evaluation point of f and its radius.
inline constexpr double kRadiusMargin = 0.95;

/// Throws DomainViolation or InsufficientOrder.
GenfunResult check_partial_sum_genfun(const OLPSystem& sys, const PartialSumSample& s);

/// ((s+1)/(s-z)) f(s z) + ((s-1)/(s+z)) f(-s z) = 2 sum_n R_n(x) z^n with s = sqrt_x.
/// Throws DomainViolation, PoleProximity or InsufficientOrder.
GenfunResult check_laurent_genfun(const OLPSystem& sys, const LaurentSample& s);

/// R_n(x) as the n-th Taylor coefficient of the Laurent generating function,
/// by the trapezoidal rule on |z| = |sqrt x| / 2. Uses the principal root.
Complex rn_by_contour(const TruncatedPowerSeries& source, std::size_t n, Complex x, std::size_t nodes = 512);

/// Seeded points x with |x| in [0.25, 0.8] * min(rho, 4) and uniform phase.
std::vector<Complex> admissible_points(double rho, std::size_t count, std::uint64_t seed);

/// Seeded samples with |t| <= 0.6 (partial sums) or |z| <= 0.6 |sqrt x| and a
/// random square-root branch (Laurent), so the truncated sums converge geometrically.
std::vector<PartialSumSample> admissible_partial_sum_samples(double rho, std::size_t count, std::size_t terms,
                                                             std::uint64_t seed);
std::vector<LaurentSample> admissible_laurent_samples(double rho, std::size_t count, std::size_t terms,
                                                      std::uint64_t seed);

}  // namespace olp
