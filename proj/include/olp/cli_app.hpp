#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "olp/family_library.hpp"
#include "olp/finite_moment.hpp"
#include "olp/functional_engine.hpp"

namespace olp::cli {

inline constexpr const char* kVersion = "0.1.0";

enum class ReportFormat { Json, Csv };

struct GenfunPoint {
    Complex x;
    Complex param;  // t for the partial-sum identity, z for the Laurent one
    int branch = 1;
};

struct FiniteConfig {
    std::size_t n_cap = 2;
    std::vector<Complex> g;
    std::vector<Complex> f_rec;
};

/// Resolved settings for one run. Mirrors the JSON config document.
struct RunConfig {
    FamilySpec family = FamilySpec::exponential();
    std::size_t K = 10;
    std::optional<ContourSpec> contour;
    std::string output;  // empty: stdout
    ReportFormat format = ReportFormat::Json;
    std::uint64_t seed = 0;
    /// 0 picks a family-dependent default large enough for contour and
    /// generating-function evaluation.
    std::size_t series_order = 0;
    std::optional<std::size_t> window;
    std::size_t samples = 20;
    std::size_t terms = 80;
    std::vector<GenfunPoint> partial_sum_points;
    std::vector<GenfunPoint> laurent_points;
    FiniteConfig finite;
};

enum ExitCode : int { kOk = 0, kConfigError = 2, kNumericFailure = 3, kRepresentationFailure = 4 };

int exit_code_for(ErrorCode code) noexcept;

/// Throws Error(ConfigError) naming the offending field.
FamilySpec parse_family(const nlohmann::ordered_json& j);
RunConfig parse_config(const nlohmann::ordered_json& j);
/// Parses JSON text; syntax errors carry line and column.
nlohmann::ordered_json parse_json_text(const std::string& text, const std::string& origin);

nlohmann::ordered_json to_json(const FamilySpec& spec);
nlohmann::ordered_json to_json(const RunConfig& config);

std::size_t resolved_series_order(const RunConfig& config, std::size_t minimum);

struct Report {
    nlohmann::ordered_json json;
    /// Table rows for --format csv (header line first, no comment lines).
    std::vector<std::string> csv_rows;
    /// kOk, or kNumericFailure when a verification in the report did not pass.
    int exit_code = kOk;

    std::string render(ReportFormat format) const;
};

Report cmd_build(const RunConfig& config);
Report cmd_ortho(const RunConfig& config);
Report cmd_moments(const RunConfig& config);
Report cmd_genfun(const RunConfig& config);
Report cmd_finite(const RunConfig& config);

/// Dispatches by subcommand name: build, ortho, moments, genfun-check, finite.
Report run_command(const std::string& command, const RunConfig& config);

/// "re+imi" with round-trip precision.
std::string format_complex(Complex c);

}  // namespace olp::cli
