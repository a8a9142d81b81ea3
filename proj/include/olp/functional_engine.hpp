#pragma once

#include <cstddef>
#include <vector>

#include "olp/family_library.hpp"
#include "olp/olp_builder.hpp"
#include "olp/series_core.hpp"

namespace olp {

/// Values mu[m] = L(x^m) for m in [-window, window].
class MomentTable {
public:
    MomentTable(int window, std::vector<Complex> values);

    int window() const noexcept { return window_; }
    /// Throws WindowExceeded outside [-window, window].
    Complex at(int m) const;
    const std::vector<Complex>& values() const noexcept { return values_; }

private:
    int window_;
    std::vector<Complex> values_;
};

/// Dense row-major complex matrix.
struct ComplexMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Complex> data;

    ComplexMatrix() = default;
    ComplexMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

    Complex& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    Complex operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    double max_off_diagonal() const;
    double min_diagonal() const;
};

/// Moments of the partial-sum functional without quadrature: the residue of
/// y^(2m-1) / f(y^2) at 0 is the coefficient e_{-m} of 1/f, so
/// mu[-m] = e_m and mu[m] = 0 for m >= 1 (stored as exact zeros).
MomentTable exact_moments(const TruncatedPowerSeries& source, std::size_t N);

Complex apply_L(const LaurentPoly& p, const MomentTable& mt);

struct ContourSpec {
    double radius = 0.5;
    std::size_t nodes = 512;
};

/// Trapezoidal rule for (1/2 pi i) \oint_{|y|=c} R(y^2) dy / (y f(y^2)).
///
/// 1/f is tabulated once on the nodes, so one instance can evaluate many
/// polynomials. Node powers y_k^(2m) are formed as c^(2m) times a tabulated
/// root of unity; nodes, weights and sums are carried in long double.
class ContourFunctional {
public:
    /// Throws RadiusInvalid (c <= 0, c >= sqrt(rho) or fewer than 16 nodes),
    /// TailNotNegligible or NearZeroDenominator (min |f| on the nodes <= 1e-8).
    ContourFunctional(const TruncatedPowerSeries& source, ContourSpec spec);

    Complex operator()(const LaurentPoly& p) const;

    const ContourSpec& spec() const noexcept { return spec_; }
    double min_abs_denominator() const noexcept { return min_abs_f_; }

private:
    ContourSpec spec_;
    std::vector<WideComplex> roots_;
    std::vector<WideComplex> weight_;
    double min_abs_f_ = 0.0;
};

Complex contour_L(const LaurentPoly& p, const TruncatedPowerSeries& source, const ContourSpec& spec);

/// Same integral on the unit circle for the exp-binomial family, with the
/// closed form exp(-b y^2) prod (1 - a_j y^2)^lambda_j in place of 1/f.
class ExpBinomialFunctional {
public:
    /// Throws UnsupportedFamily unless spec is exp-binomial.
    ExpBinomialFunctional(const FamilySpec& spec, std::size_t nodes = 512);

    Complex operator()(const LaurentPoly& p) const;

private:
    std::vector<WideComplex> roots_;
    std::vector<WideComplex> weight_;
};

Complex specialized_L_expbinomial(const LaurentPoly& p, const FamilySpec& spec, std::size_t nodes = 512);

/// Entry (n, m) = L(R_n R_m) from the moment table.
ComplexMatrix gram_matrix(const OLPSystem& sys, const MomentTable& mt);

/// Entry (n, m) = contour value of R_n R_m for n, m <= max_index.
ComplexMatrix gram_matrix(const OLPSystem& sys, const ContourFunctional& functional, std::size_t max_index);

}  // namespace olp
