#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "olp/functional_engine.hpp"
#include "olp/olp_builder.hpp"
#include "olp/series_core.hpp"

namespace olp {


/// Recurrence data g_1..g_L, f_1..f_L (stored 0-based: g[0] is g_1) for a
/// finite system Q_0..Q_{2n}, extended to L = 4n so that moments on
/// [-2n, 2n] are determined.
struct FiniteSystemSpec {
    std::size_t n_cap = 1;
    std::vector<Complex> g;
    std::vector<Complex> f_rec;

    std::size_t length() const noexcept { return 4 * n_cap; }

    /// Pads the given heads to length 4 n_cap with g_k = 1, f_k = -1.
    static FiniteSystemSpec with_default_extension(std::size_t n_cap, std::vector<Complex> g_head,
                                                   std::vector<Complex> f_head);

    /// Spec whose Q_k are the partial-sum polynomials of the source behind rd.
    static FiniteSystemSpec from_recurrence(const RecurrenceData& rd, std::size_t n_cap);

    /// Throws InvalidParams (n_cap < 1, short lists, some f_k == 0).
    void validate() const;
};

/// Q_0..Q_{4n}. Throws DegenerateLeadingCoefficient when an extremal
/// coefficient falls below 1e-12 of the polynomial's scale.
std::vector<LaurentPoly> build_Q(const FiniteSystemSpec& spec);

/// Moments on [-window, window] fixed by L(1) = 1 and L(Q_k) = 0, k >= 1.
/// Q_k contributes exactly one new extremal exponent, so the system is
/// triangular. Throws PivotVanished or MissingCoefficients.
MomentTable solve_moments(const std::vector<LaurentPoly>& Q, std::size_t window);

/// a = L(x^-shift) and s_k = L(x^(k - shift)) / a for k = 0..2 shift.
struct FunctionalSolve {
    MomentTable mu_table;
    int shift = 0;
    Complex a;
    std::vector<Complex> s;
};

/// Throws RepresentationCondFailed when |a| <= 1e-12 max_{|m| <= shift} |mu_m|.
FunctionalSolve make_functional_solve(const MomentTable& mt, int shift);

struct Atom {
    WideComplex location;
    long double weight = 0.0L;
};

/// Positive measure on M = 2N+1 points center + radius * exp(2 pi i j / M).
struct AtomicMeasure {
    std::vector<Atom> atoms;
    std::size_t moment_window = 0;
    WideComplex center;
    long double radius = 0.0L;

    WideComplex moment(std::size_t k) const;
    /// sum_j w_j |z_j|^k, the scale against which moment k can be resolved.
    long double absolute_moment(std::size_t k) const;
    long double min_weight() const;
};

/// Atoms on the circle |z - center| = radius whose weights
/// w_j = (1/M)(1 + 2 sum_k Re(t_k radius^-k exp(-2 pi i j k / M))) reproduce
/// s_0..s_N, where t_k are the moments of s about center. Requires s_0 = 1.
/// Throws InvalidParams when a weight comes out non-positive.
AtomicMeasure circle_measure(std::span<const Complex> s, Complex center, double radius);

/// circle_measure centred at the mean s_1 with the smallest radius satisfying
/// 2 sum_k |t_k| radius^-k <= 1/2, which keeps every weight >= 1/(2M).
AtomicMeasure build_atomic_measure(std::span<const Complex> s);

/// |sum_j w_j z_j^k - s_k| for k = 0..N.
std::vector<double> moment_residuals(const AtomicMeasure& am, std::span<const Complex> s);

/// sum_j w_j Q(z_j) a z_j^shift. Throws RepresentationCondFailed (a == 0) or
/// WindowExceeded (support of Q outside [-shift, shift]).
Complex represent_functional(const FunctionalSolve& fs, const AtomicMeasure& am, const LaurentPoly& Q);

/// Everything derived from one FiniteSystemSpec: the measure for the
/// functional on span{x^-n..x^n} and the enlarged one on span{x^-2n..x^2n}
/// used to check orthogonality of products Q_k Q_m.
struct FiniteSolution {
    std::vector<LaurentPoly> Q;
    MomentTable mu_table;
    FunctionalSolve base;
    AtomicMeasure base_measure;
    FunctionalSolve enlarged;
    AtomicMeasure enlarged_measure;
    /// Entry (k, m) = represent_functional(enlarged, Q_k Q_m), k, m <= 2n.
    ComplexMatrix gram;
};

FiniteSolution solve_finite_system(const FiniteSystemSpec& spec);

}  // namespace olp
