#pragma once

#include <cstddef>
#include <vector>

#include "olp/series_core.hpp"

namespace olp {

/// Partial sums f_n and the orthogonal Laurent polynomials
/// R_{2n} = f_{2n} / z^n, R_{2n+1} = f_{2n+1} / z^(n+1), for n <= K.
struct OLPSystem {
    TruncatedPowerSeries source;
    std::vector<LaurentPoly> R;
    std::vector<LaurentPoly> partials;
    std::size_t K = 0;

    /// Monic F_n = f_n / d_n.
    LaurentPoly F(std::size_t n) const;
};

/// Coefficients tying the monic system F_n to the two-step Laurent recurrence.
///
/// Index conventions: c[0] = 1; recur_lambda[0] = recur_lambda[1] = 1
/// (only recur_lambda[n], n >= 2, comes from the source); xi[k] for k >= 0
/// with xi_{-1} := 1 used by f_rec[1]; g[0] and f_rec[0] are unused and 0.
struct RecurrenceData {
    std::vector<Complex> c;
    std::vector<Complex> recur_lambda;
    std::vector<Complex> xi;
    std::vector<Complex> g;
    std::vector<Complex> f_rec;

    std::size_t size() const noexcept { return c.size(); }
};

OLPSystem build_system(const TruncatedPowerSeries& source, std::size_t K);

RecurrenceData recurrence_data(const TruncatedPowerSeries& source, std::size_t K);

/// Runs Q_{2n+1} = (x^-1 + g_{2n+1}) Q_{2n} + f_{2n+1} Q_{2n-1} and
/// Q_{2n+2} = (1 + g_{2n+2} x) Q_{2n+1} + f_{2n+2} Q_{2n} from Q_{-1} = 0, Q_0 = 1.
/// g and f_rec are indexed from 0 (entry 0 ignored). Throws MissingCoefficients.
std::vector<LaurentPoly> run_laurent_recurrence(const std::vector<Complex>& g, const std::vector<Complex>& f_rec,
                                                std::size_t K);

std::vector<LaurentPoly> build_by_recurrence(const RecurrenceData& rd, std::size_t K);

struct NormalizationReport {
    /// max over exponents of |Q_n xi_n d_n - R_n|_e / |R_n|_e, one entry per n.
    std::vector<double> deviation;
    double max_deviation = 0.0;
    bool passed(double tol = 1e-11) const noexcept { return max_deviation <= tol; }
};

NormalizationReport check_normalization(const OLPSystem& sys, const RecurrenceData& rd);

/// Largest residual of the recurrence when R_n (scaled to Q_n = R_n / (xi_n d_n))
/// is substituted, relative to the magnitude of the operands.
double recurrence_residual(const OLPSystem& sys, const RecurrenceData& rd);

/// True when R_n has the exponent support and extremal coefficient required of
/// index n: [-m, m] with top coefficient d_{2m} for n = 2m, [-m-1, m] with
/// bottom coefficient 1 for n = 2m+1.
bool has_expected_shape(const OLPSystem& sys, std::size_t n);

}  // namespace olp
