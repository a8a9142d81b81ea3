#include "olp/series_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace olp {

TruncatedPowerSeries::TruncatedPowerSeries(std::vector<Complex> coeffs, std::optional<double> radius)
    : coeffs_(std::move(coeffs)), radius_(radius) {
    if (coeffs_.empty()) throw Error(ErrorCode::InvalidParams, "power series needs at least one coefficient");
    if (radius_ && !(*radius_ > 0.0))
        throw Error(ErrorCode::InvalidParams, "radius of convergence must be positive");
}

TruncatedPowerSeries TruncatedPowerSeries::normalized(std::vector<Complex> coeffs, double radius) {
    TruncatedPowerSeries s(std::move(coeffs), radius);
    if (s.coeffs_.front() != Complex(1.0))
        throw Error(ErrorCode::NonzeroCoefficientViolated, "d_0 must equal 1");
    for (std::size_t k = 1; k < s.coeffs_.size(); ++k) {
        if (s.coeffs_[k] == Complex(0.0))
            throw Error(ErrorCode::NonzeroCoefficientViolated, "d_" + std::to_string(k) + " is zero");
    }
    return s;
}

bool TruncatedPowerSeries::is_normalized() const noexcept {
    if (coeffs_.front() != Complex(1.0)) return false;
    return std::none_of(coeffs_.begin(), coeffs_.end(), [](Complex c) { return c == Complex(0.0); });
}

TruncatedPowerSeries series_mul(const TruncatedPowerSeries& a, const TruncatedPowerSeries& b) {
    const std::size_t order = std::min(a.order(), b.order());
    std::vector<Complex> out(order + 1, Complex(0.0));
    for (std::size_t k = 0; k <= order; ++k) {
        Complex acc(0.0);
        for (std::size_t i = 0; i <= k; ++i) acc += a[i] * b[k - i];
        out[k] = acc;
    }
    std::optional<double> radius;
    if (a.radius() && b.radius()) radius = std::min(*a.radius(), *b.radius());
    return TruncatedPowerSeries(std::move(out), radius);
}

TruncatedPowerSeries series_reciprocal(const TruncatedPowerSeries& a) {
    const Complex a0 = a[0];
    if (a0 == Complex(0.0)) throw Error(ErrorCode::ZeroConstantTerm, "cannot invert a series with a_0 = 0");
    const auto& c = a.coeffs();
    std::vector<Complex> e(c.size());
    e[0] = 1.0 / a0;
    for (std::size_t k = 1; k < c.size(); ++k) {
        Complex acc(0.0);
        for (std::size_t i = 1; i <= k; ++i) acc += c[i] * e[k - i];
        e[k] = -acc / a0;
    }
    return TruncatedPowerSeries(std::move(e), std::nullopt);
}

namespace {

// Ratio-test estimate of the dropped tail from the last few stored terms,
// computed in log space so large orders cannot overflow.
double tail_estimate(const std::vector<Complex>& d, double abs_z) {
    if (abs_z == 0.0) return 0.0;
    constexpr std::size_t kWindow = 6;
    const std::size_t T = d.size() - 1;
    const std::size_t first = T >= kWindow ? T - kWindow : 0;
    const double log_z = std::log(abs_z);
    auto log_term = [&](std::size_t k) {
        const double m = std::abs(d[k]);
        return m == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(m) + static_cast<double>(k) * log_z;
    };

    double last = -std::numeric_limits<double>::infinity();
    std::size_t last_k = first;
    double log_ratio = -std::numeric_limits<double>::infinity();
    bool any = false;
    for (std::size_t k = first; k <= T; ++k) {
        const double lt = log_term(k);
        if (std::isinf(lt)) continue;
        if (any) log_ratio = std::max(log_ratio, (lt - last) / static_cast<double>(k - last_k));
        last = lt;
        last_k = k;
        any = true;
    }
    if (!any) return 0.0;
    if (std::isinf(log_ratio)) {
        // A single nonzero term in the window: fall back to the plain |z| ratio.
        log_ratio = log_z;
    }
    if (log_ratio >= 0.0) return std::numeric_limits<double>::infinity();
    const double q = std::exp(log_ratio);
    const double steps = static_cast<double>(T - last_k);
    return std::exp(last + steps * log_ratio) * q / (1.0 - q);
}

}  // namespace

SeriesValue evaluate(const TruncatedPowerSeries& s, Complex z) {
    const auto& d = s.coeffs();
    Complex acc(0.0);
    for (auto it = d.rbegin(); it != d.rend(); ++it) acc = acc * z + *it;
    return {acc, tail_estimate(d, std::abs(z))};
}

Complex evaluate_checked(const TruncatedPowerSeries& s, Complex z, double tol) {
    const SeriesValue v = evaluate(s, z);
    if (!(v.tail_bound <= tol * std::max(1.0, std::abs(v.value)))) {
        throw Error(ErrorCode::TailNotNegligible,
                    "series of order " + std::to_string(s.order()) + " truncated at |z| = " +
                        std::to_string(std::abs(z)) + " leaves tail ~" + std::to_string(v.tail_bound));
    }
    return v.value;
}

LaurentPoly::LaurentPoly(std::initializer_list<std::pair<const int, Complex>> terms) {
    for (const auto& [e, c] : terms) add_to(e, c);
}

LaurentPoly LaurentPoly::monomial(int exponent, Complex coeff) {
    LaurentPoly p;
    p.set(exponent, coeff);
    return p;
}

Complex LaurentPoly::coeff(int exponent) const {
    const auto it = terms_.find(exponent);
    return it == terms_.end() ? Complex(0.0) : it->second;
}

void LaurentPoly::set(int exponent, Complex c) {
    if (c == Complex(0.0))
        terms_.erase(exponent);
    else
        terms_[exponent] = c;
}

void LaurentPoly::add_to(int exponent, Complex c) {
    if (c == Complex(0.0)) return;
    auto [it, inserted] = terms_.try_emplace(exponent, c);
    if (inserted) return;
    it->second += c;
    if (it->second == Complex(0.0)) terms_.erase(it);
}

int LaurentPoly::min_exponent() const {
    if (terms_.empty()) throw Error(ErrorCode::InvalidParams, "empty Laurent polynomial has no exponents");
    return terms_.begin()->first;
}

int LaurentPoly::max_exponent() const {
    if (terms_.empty()) throw Error(ErrorCode::InvalidParams, "empty Laurent polynomial has no exponents");
    return terms_.rbegin()->first;
}

double LaurentPoly::max_abs_coeff() const noexcept {
    double m = 0.0;
    for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
    return m;
}

bool LaurentPoly::is_canonical() const noexcept {
    return std::none_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second == Complex(0.0); });
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
    for (const auto& [e, c] : other.terms_) add_to(e, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& other) {
    for (const auto& [e, c] : other.terms_) add_to(e, -c);
    return *this;
}

LaurentPoly& LaurentPoly::operator*=(Complex s) {
    if (s == Complex(0.0)) {
        terms_.clear();
        return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
        it->second *= s;
        // Underflow can produce an exact zero.
        if (it->second == Complex(0.0))
            it = terms_.erase(it);
        else
            ++it;
    }
    return *this;
}

LaurentPoly laurent_add(const LaurentPoly& p, const LaurentPoly& q) { return p + q; }

LaurentPoly laurent_scale(const LaurentPoly& p, Complex s) { return s * p; }

LaurentPoly laurent_mul(const LaurentPoly& p, const LaurentPoly& q) {
    std::map<int, Complex> acc;
    for (const auto& [ep, cp] : p.terms())
        for (const auto& [eq, cq] : q.terms()) acc[ep + eq] += cp * cq;
    LaurentPoly out;
    for (const auto& [e, c] : acc) out.set(e, c);
    return out;
}

}  // namespace olp
