#include "olp/finite_moment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace olp {

namespace {

WideComplex widen(Complex c) { return {static_cast<long double>(c.real()), static_cast<long double>(c.imag())}; }

Complex narrow(WideComplex c) { return {static_cast<double>(c.real()), static_cast<double>(c.imag())}; }

WideComplex unit_root(std::size_t index, std::size_t order) {
    return std::polar(1.0L, 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(index) /
                                static_cast<long double>(order));
}

// t_k = sum_j C(k, j) (-center)^(k-j) s_j.
std::vector<WideComplex> central_moments(std::span<const Complex> s, WideComplex center) {
    const std::size_t N = s.size() - 1;
    std::vector<WideComplex> t(N + 1);
    std::vector<long double> binom(N + 1, 0.0L);
    for (std::size_t k = 0; k <= N; ++k) {
        // Row k of Pascal's triangle, updated in place.
        for (std::size_t j = k; j > 0; --j) binom[j] += binom[j - 1];
        binom[0] = 1.0L;
        WideComplex acc(0.0L);
        WideComplex power(1.0L);  // (-center)^(k-j), j descending
        for (std::size_t jj = 0; jj <= k; ++jj) {
            const std::size_t j = k - jj;
            acc += binom[j] * power * widen(s[j]);
            power *= -center;
        }
        t[k] = acc;
    }
    return t;
}

long double positivity_bound(const std::vector<WideComplex>& t, long double r) {
    long double acc = 0.0L;
    long double inv = 1.0L;
    for (std::size_t k = 1; k < t.size(); ++k) {
        inv /= r;
        acc += std::abs(t[k]) * inv;
    }
    return 2.0L * acc;
}

// Smallest r with positivity_bound(t, r) <= 1/2; the bound decreases in r.
long double minimal_radius(const std::vector<WideComplex>& t) {
    const bool trivial = std::all_of(t.begin() + 1, t.end(), [](WideComplex c) { return c == WideComplex(0.0L); });
    if (trivial) return 1.0L;
    const long double cap = std::ldexp(1.0L, 60);
    long double lo = 1.0L;
    long double hi = 1.0L;
    if (positivity_bound(t, 1.0L) > 0.5L) {
        while (positivity_bound(t, hi) > 0.5L && hi < cap) hi *= 2.0L;
        lo = hi / 2.0L;
    } else {
        const long double floor = std::ldexp(1.0L, -60);
        while (positivity_bound(t, lo) <= 0.5L && lo > floor) lo /= 2.0L;
        hi = lo * 2.0L;
    }
    for (int it = 0; it < 200 && hi - lo > hi * 1e-15L; ++it) {
        const long double mid = 0.5L * (lo + hi);
        if (positivity_bound(t, mid) > 0.5L)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

AtomicMeasure measure_on_circle(std::span<const Complex> s, WideComplex center, long double radius) {
    if (s.empty() || s[0] != Complex(1.0)) throw Error(ErrorCode::InvalidParams, "moment sequence must start with s_0 = 1");
    if (!(radius > 0.0L)) throw Error(ErrorCode::InvalidParams, "circle radius must be positive");
    const std::size_t N = s.size() - 1;
    const std::size_t M = 2 * N + 1;
    const auto t = central_moments(s, center);

    std::vector<WideComplex> scaled(N + 1);
    long double inv = 1.0L;
    for (std::size_t k = 1; k <= N; ++k) {
        inv /= radius;
        scaled[k] = t[k] * inv;
    }

    AtomicMeasure am;
    am.moment_window = N;
    am.center = center;
    am.radius = radius;
    am.atoms.reserve(M);
    for (std::size_t j = 0; j < M; ++j) {
        long double w = 1.0L;
        for (std::size_t k = 1; k <= N; ++k) {
            const std::size_t idx = (M - (j * k) % M) % M;
            w += 2.0L * (scaled[k] * unit_root(idx, M)).real();
        }
        w /= static_cast<long double>(M);
        if (!(w > 0.0L))
            throw Error(ErrorCode::InvalidParams, "radius too small: atom " + std::to_string(j) + " gets weight " +
                                                      std::to_string(static_cast<double>(w)));
        am.atoms.push_back({center + radius * unit_root(j, M), w});
    }
    return am;
}

}  // namespace

FiniteSystemSpec FiniteSystemSpec::with_default_extension(std::size_t n_cap, std::vector<Complex> g_head,
                                                          std::vector<Complex> f_head) {
    FiniteSystemSpec spec{n_cap, std::move(g_head), std::move(f_head)};
    if (spec.g.size() < spec.length()) spec.g.resize(spec.length(), Complex(1.0));
    if (spec.f_rec.size() < spec.length()) spec.f_rec.resize(spec.length(), Complex(-1.0));
    return spec;
}

FiniteSystemSpec FiniteSystemSpec::from_recurrence(const RecurrenceData& rd, std::size_t n_cap) {
    const std::size_t L = 4 * n_cap;
    if (rd.size() < L + 1)
        throw Error(ErrorCode::MissingCoefficients,
                    "recurrence data too short for a finite system with n = " + std::to_string(n_cap));
    FiniteSystemSpec spec;
    spec.n_cap = n_cap;
    spec.g.assign(rd.g.begin() + 1, rd.g.begin() + static_cast<std::ptrdiff_t>(L + 1));
    spec.f_rec.assign(rd.f_rec.begin() + 1, rd.f_rec.begin() + static_cast<std::ptrdiff_t>(L + 1));
    return spec;
}

void FiniteSystemSpec::validate() const {
    if (n_cap < 1) throw Error(ErrorCode::InvalidParams, "finite system needs n >= 1");
    if (g.size() < length() || f_rec.size() < length())
        throw Error(ErrorCode::InvalidParams, "finite system needs g_k, f_k for k = 1.." + std::to_string(length()));
    for (std::size_t k = 0; k < length(); ++k)
        if (f_rec[k] == Complex(0.0))
            throw Error(ErrorCode::InvalidParams, "f_" + std::to_string(k + 1) + " must be nonzero");
}

std::vector<LaurentPoly> build_Q(const FiniteSystemSpec& spec) {
    spec.validate();
    const std::size_t L = spec.length();
    std::vector<Complex> g(L + 1, Complex(0.0));
    std::vector<Complex> f(L + 1, Complex(0.0));
    std::copy_n(spec.g.begin(), L, g.begin() + 1);
    std::copy_n(spec.f_rec.begin(), L, f.begin() + 1);
    auto Q = run_laurent_recurrence(g, f, L);

    for (std::size_t k = 1; k <= L; ++k) {
        const int m = static_cast<int>(k / 2);
        const int extremal = (k % 2 == 0) ? m : -m - 1;
        const double scale = Q[k].max_abs_coeff();
        if (Q[k].empty() || std::abs(Q[k].coeff(extremal)) < 1e-12 * scale)
            throw Error(ErrorCode::DegenerateLeadingCoefficient,
                        "extremal coefficient of Q_" + std::to_string(k) + " at x^" + std::to_string(extremal) +
                            " vanishes");
    }
    return Q;
}

MomentTable solve_moments(const std::vector<LaurentPoly>& Q, std::size_t window) {
    if (Q.size() < 2 * window + 1)
        throw Error(ErrorCode::MissingCoefficients, "moment window " + std::to_string(window) + " needs Q_0..Q_" +
                                                        std::to_string(2 * window));
    const int w = static_cast<int>(window);
    std::vector<WideComplex> mu(2 * window + 1, WideComplex(0.0L));
    auto slot = [&](int m) -> WideComplex& { return mu[static_cast<std::size_t>(m + w)]; };

    if (Q[0].coeff(0) == Complex(0.0)) throw Error(ErrorCode::PivotVanished, "Q_0 is zero");
    slot(0) = 1.0L;
    int known_lo = 0;
    int known_hi = 0;
    for (std::size_t k = 1; k <= 2 * window; ++k) {
        const bool odd = k % 2 == 1;
        const int fresh = odd ? -static_cast<int>((k + 1) / 2) : static_cast<int>(k / 2);
        const Complex pivot = Q[k].coeff(fresh);
        if (Q[k].empty() || std::abs(pivot) < 1e-12 * Q[k].max_abs_coeff())
            throw Error(ErrorCode::PivotVanished, "pivot of Q_" + std::to_string(k) + " at x^" +
                                                      std::to_string(fresh) + " vanishes");
        WideComplex acc(0.0L);
        for (const auto& [e, c] : Q[k].terms()) {
            if (e == fresh) continue;
            if (e < known_lo || e > known_hi)
                throw Error(ErrorCode::DegenerateLeadingCoefficient,
                            "Q_" + std::to_string(k) + " has a term x^" + std::to_string(e) + " outside its span");
            acc += WideComplex(c.real(), c.imag()) * slot(e);
        }
        slot(fresh) = -acc / WideComplex(pivot.real(), pivot.imag());
        (odd ? known_lo : known_hi) = fresh;
    }
    std::vector<Complex> values;
    values.reserve(mu.size());
    for (const auto& m : mu) values.emplace_back(static_cast<double>(m.real()), static_cast<double>(m.imag()));
    return MomentTable(w, std::move(values));
}

FunctionalSolve make_functional_solve(const MomentTable& mt, int shift) {
    if (shift < 0 || shift > mt.window())
        throw Error(ErrorCode::WindowExceeded, "shift " + std::to_string(shift) + " outside moment window");
    double scale = 0.0;
    for (int m = -shift; m <= shift; ++m) scale = std::max(scale, std::abs(mt.at(m)));
    const Complex a = mt.at(-shift);
    if (!(std::abs(a) > 1e-12 * scale))
        throw Error(ErrorCode::RepresentationCondFailed,
                    "a = L(x^-" + std::to_string(shift) + ") vanishes; no representation of this form");
    FunctionalSolve fs{mt, shift, a, {}};
    fs.s.reserve(static_cast<std::size_t>(2 * shift + 1));
    for (int k = 0; k <= 2 * shift; ++k) fs.s.push_back(k == 0 ? Complex(1.0) : mt.at(k - shift) / a);
    return fs;
}

WideComplex AtomicMeasure::moment(std::size_t k) const {
    WideComplex acc(0.0L);
    for (const auto& atom : atoms) {
        WideComplex power(1.0L);
        for (std::size_t i = 0; i < k; ++i) power *= atom.location;
        acc += atom.weight * power;
    }
    return acc;
}

long double AtomicMeasure::absolute_moment(std::size_t k) const {
    long double acc = 0.0L;
    for (const auto& atom : atoms) acc += atom.weight * std::pow(std::abs(atom.location), static_cast<long double>(k));
    return acc;
}

long double AtomicMeasure::min_weight() const {
    long double m = std::numeric_limits<long double>::infinity();
    for (const auto& atom : atoms) m = std::min(m, atom.weight);
    return m;
}

AtomicMeasure circle_measure(std::span<const Complex> s, Complex center, double radius) {
    return measure_on_circle(s, widen(center), static_cast<long double>(radius));
}

AtomicMeasure build_atomic_measure(std::span<const Complex> s) {
    if (s.empty() || s[0] != Complex(1.0)) throw Error(ErrorCode::InvalidParams, "moment sequence must start with s_0 = 1");
    const WideComplex center = s.size() > 1 ? widen(s[1]) : WideComplex(0.0L);
    const auto t = central_moments(s, center);
    return measure_on_circle(s, center, minimal_radius(t));
}

std::vector<double> moment_residuals(const AtomicMeasure& am, std::span<const Complex> s) {
    std::vector<double> out;
    out.reserve(s.size());
    for (std::size_t k = 0; k < s.size(); ++k)
        out.push_back(static_cast<double>(std::abs(am.moment(k) - widen(s[k]))));
    return out;
}

Complex represent_functional(const FunctionalSolve& fs, const AtomicMeasure& am, const LaurentPoly& Q) {
    if (fs.a == Complex(0.0)) throw Error(ErrorCode::RepresentationCondFailed, "a = 0");
    if (Q.empty()) return 0.0;
    if (Q.min_exponent() < -fs.shift || Q.max_exponent() > fs.shift)
        throw Error(ErrorCode::WindowExceeded, "polynomial support exceeds [-" + std::to_string(fs.shift) + ", " +
                                                   std::to_string(fs.shift) + "]");
    // Q(z) z^shift is an ordinary polynomial of degree <= 2 shift.
    const int degree = 2 * fs.shift;
    std::vector<WideComplex> coeffs(static_cast<std::size_t>(degree + 1));
    for (const auto& [e, c] : Q.terms()) coeffs[static_cast<std::size_t>(e + fs.shift)] = widen(c);

    WideComplex acc(0.0L);
    for (const auto& atom : am.atoms) {
        WideComplex value(0.0L);
        for (int e = degree; e >= 0; --e) value = value * atom.location + coeffs[static_cast<std::size_t>(e)];
        acc += atom.weight * value;
    }
    return narrow(acc * widen(fs.a));
}

FiniteSolution solve_finite_system(const FiniteSystemSpec& spec) {
    auto Q = build_Q(spec);
    const auto n = static_cast<int>(spec.n_cap);
    MomentTable mu = solve_moments(Q, 2 * spec.n_cap);
    FunctionalSolve base = make_functional_solve(mu, n);
    AtomicMeasure base_measure = build_atomic_measure(base.s);
    FunctionalSolve enlarged = make_functional_solve(mu, 2 * n);
    AtomicMeasure enlarged_measure = build_atomic_measure(enlarged.s);

    const std::size_t size = 2 * spec.n_cap + 1;
    ComplexMatrix gram(size, size);
    for (std::size_t k = 0; k < size; ++k)
        for (std::size_t m = k; m < size; ++m) {
            const Complex v = represent_functional(enlarged, enlarged_measure, laurent_mul(Q[k], Q[m]));
            gram(k, m) = v;
            gram(m, k) = v;
        }
    return {std::move(Q), std::move(mu), std::move(base), std::move(base_measure), std::move(enlarged),
            std::move(enlarged_measure), std::move(gram)};
}

}  // namespace olp
