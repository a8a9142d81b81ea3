#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "olp/error.hpp"

namespace olp {

using Complex = std::complex<double>;
using WideComplex = std::complex<long double>;

/// Maclaurin coefficients d_0..d_T of a power series together with its
/// radius of convergence. A missing radius means "not known" (for example
/// the reciprocal of an arbitrary series); +infinity is allowed.
class TruncatedPowerSeries {
public:
    TruncatedPowerSeries(std::vector<Complex> coeffs, std::optional<double> radius);

    /// Series usable as the source of a partial-sum system: d_0 = 1 and no
    /// coefficient is zero. Throws NonzeroCoefficientViolated or InvalidParams.
    static TruncatedPowerSeries normalized(std::vector<Complex> coeffs, double radius);

    std::size_t order() const noexcept { return coeffs_.size() - 1; }
    const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }
    Complex operator[](std::size_t k) const { return coeffs_.at(k); }
    std::optional<double> radius() const noexcept { return radius_; }

    /// d_0 == 1 and every stored d_k != 0.
    bool is_normalized() const noexcept;

private:
    std::vector<Complex> coeffs_;
    std::optional<double> radius_;
};

TruncatedPowerSeries series_mul(const TruncatedPowerSeries& a, const TruncatedPowerSeries& b);

/// e_0 = 1/a_0, e_k = -(1/a_0) sum_{i=1..k} a_i e_{k-i}. Radius of the result is unknown.
TruncatedPowerSeries series_reciprocal(const TruncatedPowerSeries& a);

struct SeriesValue {
    Complex value;
    /// Estimate of sum_{k>T} |d_k| |z|^k from the ratio of the last stored terms.
    double tail_bound;
};

SeriesValue evaluate(const TruncatedPowerSeries& s, Complex z);

/// Evaluates and throws TailNotNegligible unless tail_bound <= tol * max(1, |value|).
Complex evaluate_checked(const TruncatedPowerSeries& s, Complex z, double tol = 1e-13);

/// Sparse Laurent polynomial. Exact zeros are never stored.
class LaurentPoly {
public:
    using Terms = std::map<int, Complex>;

    LaurentPoly() = default;
    LaurentPoly(std::initializer_list<std::pair<const int, Complex>> terms);

    static LaurentPoly monomial(int exponent, Complex coeff = 1.0);
    static LaurentPoly constant(Complex c) { return monomial(0, c); }

    Complex coeff(int exponent) const;
    void set(int exponent, Complex c);
    void add_to(int exponent, Complex c);

    bool empty() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }
    const Terms& terms() const noexcept { return terms_; }

    /// Throws InvalidParams on the empty polynomial.
    int min_exponent() const;
    int max_exponent() const;

    double max_abs_coeff() const noexcept;

    /// Inspection hook for the canonical-form invariant.
    bool is_canonical() const noexcept;

    LaurentPoly& operator+=(const LaurentPoly& other);
    LaurentPoly& operator-=(const LaurentPoly& other);
    LaurentPoly& operator*=(Complex s);

    friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

private:
    Terms terms_;
};

LaurentPoly laurent_add(const LaurentPoly& p, const LaurentPoly& q);
LaurentPoly laurent_scale(const LaurentPoly& p, Complex s);
LaurentPoly laurent_mul(const LaurentPoly& p, const LaurentPoly& q);

inline LaurentPoly operator+(LaurentPoly p, const LaurentPoly& q) { return p += q; }
inline LaurentPoly operator-(LaurentPoly p, const LaurentPoly& q) { return p -= q; }
inline LaurentPoly operator*(const LaurentPoly& p, const LaurentPoly& q) { return laurent_mul(p, q); }
inline LaurentPoly operator*(Complex s, LaurentPoly p) { return p *= s; }

/// Horner in x over the non-negative exponents and in 1/x over the negative ones.
template <class T>
std::complex<T> laurent_eval(const LaurentPoly& p, std::complex<T> x) {
    using C = std::complex<T>;
    if (p.empty()) return C(0);
    const int lo = p.min_exponent();
    const int hi = p.max_exponent();
    auto cast = [](Complex c) { return C(static_cast<T>(c.real()), static_cast<T>(c.imag())); };
    if (x == C(0)) {
        if (lo < 0) throw Error(ErrorCode::EvalAtZero, "Laurent polynomial with negative exponents evaluated at 0");
        return cast(p.coeff(0));
    }

    C positive(0);
    for (int e = hi; e >= 0; --e) positive = positive * x + cast(p.coeff(e));

    C negative(0);
    if (lo < 0) {
        const C inv = C(1) / x;
        for (int e = lo; e <= -1; ++e) negative = negative * inv + cast(p.coeff(e));
        negative *= inv;
    }
    return positive + negative;
}

}  // namespace olp
