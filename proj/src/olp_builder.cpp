#include "olp/olp_builder.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace olp {

namespace {

void require_source(const TruncatedPowerSeries& source, std::size_t K) {
    if (source.order() < K)
        throw Error(ErrorCode::InsufficientOrder, "source has order " + std::to_string(source.order()) +
                                                      ", need at least " + std::to_string(K));
    if (source[0] != Complex(1.0)) throw Error(ErrorCode::ZeroCoefficient, "d_0 must equal 1");
    for (std::size_t k = 1; k <= K; ++k)
        if (source[k] == Complex(0.0)) throw Error(ErrorCode::ZeroCoefficient, "d_" + std::to_string(k) + " is zero");
}

int shift_of(std::size_t n) { return static_cast<int>((n + 1) / 2); }

}  // namespace

LaurentPoly OLPSystem::F(std::size_t n) const { return laurent_scale(partials.at(n), 1.0 / source[n]); }

OLPSystem build_system(const TruncatedPowerSeries& source, std::size_t K) {
    require_source(source, K);
    OLPSystem sys{source, {}, {}, K};
    sys.R.reserve(K + 1);
    sys.partials.reserve(K + 1);
    LaurentPoly partial;
    for (std::size_t n = 0; n <= K; ++n) {
        partial.set(static_cast<int>(n), source[n]);
        sys.partials.push_back(partial);
        const int shift = shift_of(n);
        LaurentPoly r;
        for (const auto& [e, c] : partial.terms()) r.set(e - shift, c);
        sys.R.push_back(std::move(r));
    }
    return sys;
}

RecurrenceData recurrence_data(const TruncatedPowerSeries& source, std::size_t K) {
    require_source(source, K);
    RecurrenceData rd;
    rd.c.assign(K + 1, Complex(1.0));
    rd.recur_lambda.assign(K + 1, Complex(1.0));
    rd.xi.assign(K + 1, Complex(1.0));
    rd.g.assign(K + 1, Complex(0.0));
    rd.f_rec.assign(K + 1, Complex(0.0));

    for (std::size_t n = 1; n <= K; ++n) rd.c[n] = -source[n - 1] / source[n];
    for (std::size_t n = 2; n <= K; ++n) rd.recur_lambda[n] = source[n - 2] / source[n - 1];

    Complex product(1.0);
    for (std::size_t k = 0; k <= K; ++k) {
        product *= rd.c[k];
        rd.xi[k] = (k % 2 == 0) ? product : -product;
    }
    for (std::size_t k = 1; k <= K; ++k) {
        rd.g[k] = -1.0 / rd.c[k];
        const Complex xi_km2 = k >= 2 ? rd.xi[k - 2] : Complex(1.0);
        rd.f_rec[k] = -rd.recur_lambda[k] * xi_km2 / rd.xi[k];
    }
    return rd;
}

std::vector<LaurentPoly> run_laurent_recurrence(const std::vector<Complex>& g, const std::vector<Complex>& f_rec,
                                                std::size_t K) {
    if (g.size() < K + 1 || f_rec.size() < K + 1)
        throw Error(ErrorCode::MissingCoefficients, "recurrence coefficients available up to index " +
                                                        std::to_string(std::min(g.size(), f_rec.size())) +
                                                        ", need " + std::to_string(K));
    // Dense long double rows indexed by exponent + offset; Q_k spans [-(k+1)/2, k/2].
    const int offset = static_cast<int>(K / 2) + 1;
    const std::size_t width = 2 * static_cast<std::size_t>(offset) + 1;
    auto wide = [](Complex c) { return WideComplex(c.real(), c.imag()); };
    std::vector<std::vector<WideComplex>> rows(K + 1, std::vector<WideComplex>(width, WideComplex(0.0L)));
    rows[0][static_cast<std::size_t>(offset)] = 1.0L;
    for (std::size_t k = 1; k <= K; ++k) {
        const auto& prev = rows[k - 1];
        auto& cur = rows[k];
        const WideComplex gk = wide(g[k]);
        const bool odd = k % 2 == 1;
        for (std::size_t i = 0; i < width; ++i) {
            if (prev[i] == WideComplex(0.0L)) continue;
            cur[odd ? i - 1 : i] += prev[i];
            cur[odd ? i : i + 1] += gk * prev[i];
        }
        if (k >= 2) {
            const WideComplex fk = wide(f_rec[k]);
            for (std::size_t i = 0; i < width; ++i) cur[i] += fk * rows[k - 2][i];
        }
    }

    std::vector<LaurentPoly> Q(K + 1);
    for (std::size_t k = 0; k <= K; ++k)
        for (std::size_t i = 0; i < width; ++i)
            Q[k].set(static_cast<int>(i) - offset,
                     Complex(static_cast<double>(rows[k][i].real()), static_cast<double>(rows[k][i].imag())));
    return Q;
}

std::vector<LaurentPoly> build_by_recurrence(const RecurrenceData& rd, std::size_t K) {
    return run_laurent_recurrence(rd.g, rd.f_rec, K);
}

NormalizationReport check_normalization(const OLPSystem& sys, const RecurrenceData& rd) {
    const std::size_t K = std::min(sys.K, rd.size() - 1);
    const auto Q = build_by_recurrence(rd, K);
    NormalizationReport report;
    report.deviation.resize(K + 1, 0.0);
    for (std::size_t n = 0; n <= K; ++n) {
        const Complex scale = rd.xi[n] * sys.source[n];
        const LaurentPoly rescaled = laurent_scale(Q[n], scale);
        double worst = 0.0;
        for (const auto& [e, c] : sys.R[n].terms())
            worst = std::max(worst, std::abs(rescaled.coeff(e) - c) / std::abs(c));
        // Terms of the recurrence output outside the support of R_n.
        for (const auto& [e, c] : rescaled.terms())
            if (sys.R[n].coeff(e) == Complex(0.0)) worst = std::max(worst, std::abs(c) / sys.R[n].max_abs_coeff());
        report.deviation[n] = worst;
        report.max_deviation = std::max(report.max_deviation, worst);
    }
    return report;
}

double recurrence_residual(const OLPSystem& sys, const RecurrenceData& rd) {
    const std::size_t K = std::min(sys.K, rd.size() - 1);
    std::vector<LaurentPoly> Q;
    Q.reserve(K + 1);
    for (std::size_t n = 0; n <= K; ++n) Q.push_back(laurent_scale(sys.R[n], 1.0 / (rd.xi[n] * sys.source[n])));

    double worst = 0.0;
    for (std::size_t k = 1; k <= K; ++k) {
        const LaurentPoly multiplier = (k % 2 == 1) ? LaurentPoly{{-1, 1.0}, {0, rd.g[k]}}
                                                    : LaurentPoly{{0, 1.0}, {1, rd.g[k]}};
        LaurentPoly first = laurent_mul(multiplier, Q[k - 1]);
        LaurentPoly second = k >= 2 ? laurent_scale(Q[k - 2], rd.f_rec[k]) : LaurentPoly{};
        const double scale = std::max({Q[k].max_abs_coeff(), first.max_abs_coeff(), second.max_abs_coeff()});
        const LaurentPoly residual = first + second - Q[k];
        worst = std::max(worst, residual.max_abs_coeff() / scale);
    }
    return worst;
}

bool has_expected_shape(const OLPSystem& sys, std::size_t n) {
    const LaurentPoly& r = sys.R.at(n);
    if (r.empty()) return false;
    const int m = static_cast<int>(n / 2);
    if (n % 2 == 0)
        return r.min_exponent() >= -m && r.max_exponent() == m && r.coeff(m) == sys.source[n];
    return r.min_exponent() == -m - 1 && r.max_exponent() <= m && r.coeff(-m - 1) == Complex(1.0);
}

}  // namespace olp
