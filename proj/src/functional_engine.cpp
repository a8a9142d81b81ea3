#include "olp/functional_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace olp {

namespace {

std::vector<WideComplex> roots_of_unity(std::size_t n) {
    std::vector<WideComplex> roots(n);
    for (std::size_t j = 0; j < n; ++j)
        roots[j] = std::polar(1.0L, 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(j) /
                                        static_cast<long double>(n));
    return roots;
}

WideComplex widen(Complex c) { return {c.real(), c.imag()}; }

// (1/N) sum_k p(y_k^2) w_k with y_k = c * root_k, accumulated in long double.
Complex trapezoid(const LaurentPoly& p, double c, const std::vector<WideComplex>& roots,
                  const std::vector<WideComplex>& weight) {
    const auto n = static_cast<long long>(roots.size());
    std::vector<std::pair<long long, WideComplex>> scaled;
    scaled.reserve(p.size());
    for (const auto& [e, coeff] : p.terms())
        scaled.emplace_back(2LL * e, widen(coeff) * std::pow(static_cast<long double>(c), 2 * e));

    WideComplex total(0.0L);
    for (long long k = 0; k < n; ++k) {
        WideComplex value(0.0L);
        for (const auto& [twice_e, coeff] : scaled) {
            long long idx = (twice_e * k) % n;
            if (idx < 0) idx += n;
            value += coeff * roots[static_cast<std::size_t>(idx)];
        }
        total += value * weight[static_cast<std::size_t>(k)];
    }
    total /= static_cast<long double>(n);
    return {static_cast<double>(total.real()), static_cast<double>(total.imag())};
}

}  // namespace

MomentTable::MomentTable(int window, std::vector<Complex> values) : window_(window), values_(std::move(values)) {
    if (window_ < 0 || values_.size() != static_cast<std::size_t>(2 * window_ + 1))
        throw Error(ErrorCode::InvalidParams, "moment table needs 2*window+1 values");
}

Complex MomentTable::at(int m) const {
    if (m < -window_ || m > window_)
        throw Error(ErrorCode::WindowExceeded,
                    "moment x^" + std::to_string(m) + " outside window " + std::to_string(window_));
    return values_[static_cast<std::size_t>(m + window_)];
}

double ComplexMatrix::max_off_diagonal() const {
    double m = 0.0;
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (i != j) m = std::max(m, std::abs((*this)(i, j)));
    return m;
}

double ComplexMatrix::min_diagonal() const {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < std::min(rows, cols); ++i) m = std::min(m, std::abs((*this)(i, i)));
    return m;
}

MomentTable exact_moments(const TruncatedPowerSeries& source, std::size_t N) {
    if (source.order() < N)
        throw Error(ErrorCode::InsufficientOrder, "moment window " + std::to_string(N) + " needs source order >= " +
                                                      std::to_string(N));
    if (source[0] != Complex(1.0)) throw Error(ErrorCode::InvalidParams, "source must have d_0 = 1");
    const std::vector<Complex> head(source.coeffs().begin(),
                                    source.coeffs().begin() + static_cast<std::ptrdiff_t>(N + 1));
    const auto recip = series_reciprocal(TruncatedPowerSeries(head, source.radius()));
    const int w = static_cast<int>(N);
    std::vector<Complex> values(2 * N + 1, Complex(0.0));
    for (int m = 0; m <= w; ++m) values[static_cast<std::size_t>(w - m)] = recip[static_cast<std::size_t>(m)];
    return MomentTable(w, std::move(values));
}

Complex apply_L(const LaurentPoly& p, const MomentTable& mt) {
    Complex acc(0.0);
    for (const auto& [e, c] : p.terms()) acc += c * mt.at(e);
    return acc;
}

ContourFunctional::ContourFunctional(const TruncatedPowerSeries& source, ContourSpec spec) : spec_(spec) {
    if (spec_.nodes < 16) throw Error(ErrorCode::RadiusInvalid, "contour quadrature needs at least 16 nodes");
    if (!(spec_.radius > 0.0)) throw Error(ErrorCode::RadiusInvalid, "contour radius must be positive");
    if (source.radius() && !(spec_.radius < std::sqrt(*source.radius())))
        throw Error(ErrorCode::RadiusInvalid, "contour radius " + std::to_string(spec_.radius) +
                                                  " is not below sqrt(rho) = " +
                                                  std::to_string(std::sqrt(*source.radius())));
    roots_ = roots_of_unity(spec_.nodes);
    weight_.resize(spec_.nodes);
    min_abs_f_ = std::numeric_limits<double>::infinity();
    const long double c2 = static_cast<long double>(spec_.radius) * spec_.radius;
    for (std::size_t k = 0; k < spec_.nodes; ++k) {
        const WideComplex y2 = c2 * roots_[(2 * k) % spec_.nodes];
        const Complex y2d(static_cast<double>(y2.real()), static_cast<double>(y2.imag()));
        min_abs_f_ = std::min(min_abs_f_, std::abs(evaluate_checked(source, y2d)));
        WideComplex f(0.0L);
        const auto& d = source.coeffs();
        for (auto it = d.rbegin(); it != d.rend(); ++it) f = f * y2 + widen(*it);
        weight_[k] = 1.0L / f;
    }
    if (!(min_abs_f_ > 1e-8))
        throw Error(ErrorCode::NearZeroDenominator,
                    "min |f(y^2)| on the contour is " + std::to_string(min_abs_f_) + "; shrink the radius");
}

Complex ContourFunctional::operator()(const LaurentPoly& p) const {
    return trapezoid(p, spec_.radius, roots_, weight_);
}

Complex contour_L(const LaurentPoly& p, const TruncatedPowerSeries& source, const ContourSpec& spec) {
    return ContourFunctional(source, spec)(p);
}

ExpBinomialFunctional::ExpBinomialFunctional(const FamilySpec& spec, std::size_t nodes) {
    if (spec.kind != FamilyKind::ExpBinomial)
        throw Error(ErrorCode::UnsupportedFamily, "specialized representation needs the exp-binomial family");
    spec.validate();
    if (nodes < 16) throw Error(ErrorCode::InvalidParams, "contour quadrature needs at least 16 nodes");
    roots_ = roots_of_unity(nodes);
    weight_.resize(nodes);
    for (std::size_t k = 0; k < nodes; ++k) {
        const WideComplex y2 = roots_[(2 * k) % nodes];
        WideComplex w = std::exp(-static_cast<long double>(spec.b) * y2);
        for (const auto& f : spec.factors)
            w *= std::pow(1.0L - static_cast<long double>(f.a) * y2, static_cast<long double>(f.family_lambda));
        weight_[k] = w;
    }
}

Complex ExpBinomialFunctional::operator()(const LaurentPoly& p) const { return trapezoid(p, 1.0, roots_, weight_); }

Complex specialized_L_expbinomial(const LaurentPoly& p, const FamilySpec& spec, std::size_t nodes) {
    return ExpBinomialFunctional(spec, nodes)(p);
}

ComplexMatrix gram_matrix(const OLPSystem& sys, const MomentTable& mt) {
    const std::size_t n = sys.K + 1;
    ComplexMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const Complex v = apply_L(laurent_mul(sys.R[i], sys.R[j]), mt);
            g(i, j) = v;
            g(j, i) = v;
        }
    return g;
}

ComplexMatrix gram_matrix(const OLPSystem& sys, const ContourFunctional& functional, std::size_t max_index) {
    const std::size_t n = std::min(max_index, sys.K) + 1;
    ComplexMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const Complex v = functional(laurent_mul(sys.R[i], sys.R[j]));
            g(i, j) = v;
            g(j, i) = v;
        }
    return g;
}

}  // namespace olp
