#include "olp/cli_app.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "olp/genfun_checker.hpp"
#include "olp/olp_builder.hpp"

namespace olp::cli {

using nlohmann::ordered_json;

namespace {

[[noreturn]] void config_error(const std::string& field, const std::string& what) {
    throw Error(ErrorCode::ConfigError, "field '" + field + "': " + what);
}

Complex parse_complex(const ordered_json& j, const std::string& field) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    config_error(field, "expected a number or a [re, im] pair");
}

std::vector<Complex> parse_complex_list(const ordered_json& j, const std::string& field) {
    if (!j.is_array()) config_error(field, "expected an array");
    std::vector<Complex> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_complex(j[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

double parse_number(const ordered_json& j, const std::string& field) {
    if (!j.is_number()) config_error(field, "expected a number");
    return j.get<double>();
}

std::size_t parse_count(const ordered_json& j, const std::string& field) {
    if (!j.is_number_integer() || j.get<long long>() < 0) config_error(field, "expected a non-negative integer");
    return j.get<std::size_t>();
}

ordered_json complex_json(Complex c) { return ordered_json::array({c.real(), c.imag()}); }

ordered_json complex_list_json(const std::vector<Complex>& v) {
    ordered_json out = ordered_json::array();
    for (const auto& c : v) out.push_back(complex_json(c));
    return out;
}

ordered_json laurent_json(const LaurentPoly& p) {
    ordered_json out = ordered_json::object();
    for (const auto& [e, c] : p.terms()) out[std::to_string(e)] = complex_json(c);
    return out;
}

ordered_json matrix_json(const ComplexMatrix& m) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < m.rows; ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < m.cols; ++j) row.push_back(complex_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ordered_json header(const std::string& command, const RunConfig& config) {
    ordered_json j;
    j["tool"] = "olp";
    j["version"] = kVersion;
    j["command"] = command;
    j["config"] = to_json(config);
    return j;
}

std::vector<GenfunPoint> parse_points(const ordered_json& j, const std::string& field, const char* param_key) {
    if (!j.is_array()) config_error(field, "expected an array of sample objects");
    std::vector<GenfunPoint> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string f = field + "[" + std::to_string(i) + "]";
        const auto& item = j[i];
        if (!item.is_object() || !item.contains("x") || !item.contains(param_key))
            config_error(f, std::string("expected {\"x\": ..., \"") + param_key + "\": ...}");
        GenfunPoint p{parse_complex(item["x"], f + ".x"), parse_complex(item[param_key], f + "." + param_key), 1};
        if (item.contains("branch")) {
            if (!item["branch"].is_number_integer()) config_error(f + ".branch", "expected +1 or -1");
            p.branch = item["branch"].get<int>() >= 0 ? 1 : -1;
        }
        out.push_back(p);
    }
    return out;
}

constexpr std::size_t kRouteCheckIndex = 12;

// Largest absolute difference relative to 1 + |reference|.
double route_disagreement(const ComplexMatrix& reference, const ComplexMatrix& other) {
    double worst = 0.0;
    for (std::size_t i = 0; i < other.rows; ++i)
        for (std::size_t j = 0; j < other.cols; ++j)
            worst = std::max(worst, std::abs(other(i, j) - reference(i, j)) / (1.0 + std::abs(reference(i, j))));
    return worst;
}

ordered_json measure_json(const AtomicMeasure& am) {
    ordered_json atoms = ordered_json::array();
    for (const auto& a : am.atoms)
        atoms.push_back({static_cast<double>(a.location.real()), static_cast<double>(a.location.imag()),
                         static_cast<double>(a.weight)});
    return {{"moment_window", am.moment_window},
            {"center", complex_json({static_cast<double>(am.center.real()), static_cast<double>(am.center.imag())})},
            {"radius", static_cast<double>(am.radius)},
            {"atoms", std::move(atoms)}};
}

}  // namespace

int exit_code_for(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::ConfigError:
        case ErrorCode::InvalidParams:
        case ErrorCode::NonzeroCoefficientViolated:
        case ErrorCode::UnsupportedFamily:
        case ErrorCode::InsufficientOrder:
        case ErrorCode::MissingCoefficients:
            return kConfigError;
        case ErrorCode::RepresentationCondFailed:
            return kRepresentationFailure;
        default:
            return kNumericFailure;
    }
}

std::string format_complex(Complex c) {
    const double im = c.imag();
    const bool negative = std::signbit(im);
    return format_double(c.real()) + (negative ? "-" : "+") + format_double(std::abs(im)) + "i";
}

ordered_json parse_json_text(const std::string& text, const std::string& origin) {
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::ConfigError, origin + ": " + e.what());
    }
}

FamilySpec parse_family(const ordered_json& j) {
    if (j.is_string()) {
        const auto kind = j.get<std::string>();
        if (kind == "geometric") return FamilySpec::geometric();
        if (kind == "exponential") return FamilySpec::exponential();
        config_error("family", "unknown family name '" + kind + "'");
    }
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        config_error("family", "expected an object with a string 'kind'");
    const auto kind = j["kind"].get<std::string>();
    FamilySpec spec;
    if (kind == "geometric") {
        spec = FamilySpec::geometric();
    } else if (kind == "exponential") {
        spec = FamilySpec::exponential();
    } else if (kind == "exp-binomial") {
        const double b = j.contains("b") ? parse_number(j["b"], "family.b") : 0.0;
        if (!j.contains("factors") || !j["factors"].is_array())
            config_error("family.factors", "exp-binomial needs an array of {\"a\", \"lambda\"} factors");
        std::vector<BinomialFactor> factors;
        for (std::size_t i = 0; i < j["factors"].size(); ++i) {
            const auto& f = j["factors"][i];
            const std::string field = "family.factors[" + std::to_string(i) + "]";
            if (!f.is_object() || !f.contains("a") || !f.contains("lambda"))
                config_error(field, "expected {\"a\": ..., \"lambda\": ...}");
            factors.push_back({parse_number(f["a"], field + ".a"), parse_number(f["lambda"], field + ".lambda")});
        }
        spec = FamilySpec::exp_binomial(b, std::move(factors));
    } else if (kind == "explicit-list") {
        if (!j.contains("coeffs")) config_error("family.coeffs", "explicit-list needs coefficients");
        if (!j.contains("radius")) config_error("family.radius", "explicit-list needs a radius of convergence");
        spec = FamilySpec::explicit_list(parse_complex_list(j["coeffs"], "family.coeffs"),
                                         parse_number(j["radius"], "family.radius"));
    } else {
        config_error("family.kind", "unknown family kind '" + kind + "'");
    }
    spec.validate();
    return spec;
}

RunConfig parse_config(const ordered_json& j) {
    if (!j.is_object()) config_error("<root>", "config must be a JSON object");
    RunConfig c;
    for (const auto& [key, value] : j.items()) {
        if (key == "family") {
            c.family = parse_family(value);
        } else if (key == "K") {
            c.K = parse_count(value, "K");
        } else if (key == "contour") {
            if (value.is_null()) continue;
            if (!value.is_object() || !value.contains("radius"))
                config_error("contour", "expected {\"radius\": c, \"nodes\": N}");
            ContourSpec spec;
            spec.radius = parse_number(value["radius"], "contour.radius");
            if (value.contains("nodes")) spec.nodes = parse_count(value["nodes"], "contour.nodes");
            c.contour = spec;
        } else if (key == "output") {
            if (!value.is_object()) config_error("output", "expected {\"path\": ..., \"format\": ...}");
            if (value.contains("path")) {
                if (!value["path"].is_string()) config_error("output.path", "expected a string");
                c.output = value["path"].get<std::string>();
            }
            if (value.contains("format")) {
                const auto f = value["format"].is_string() ? value["format"].get<std::string>() : "";
                if (f == "json")
                    c.format = ReportFormat::Json;
                else if (f == "csv")
                    c.format = ReportFormat::Csv;
                else
                    config_error("output.format", "expected \"json\" or \"csv\"");
            }
        } else if (key == "seed") {
            c.seed = parse_count(value, "seed");
        } else if (key == "series_order") {
            c.series_order = parse_count(value, "series_order");
        } else if (key == "window") {
            if (!value.is_null()) c.window = parse_count(value, "window");
        } else if (key == "samples") {
            c.samples = parse_count(value, "samples");
        } else if (key == "terms") {
            c.terms = parse_count(value, "terms");
        } else if (key == "partial_sum_samples") {
            c.partial_sum_points = parse_points(value, key, "t");
        } else if (key == "laurent_samples") {
            c.laurent_points = parse_points(value, key, "z");
        } else if (key == "finite") {
            if (!value.is_object()) config_error("finite", "expected an object");
            if (value.contains("n_cap")) c.finite.n_cap = parse_count(value["n_cap"], "finite.n_cap");
            if (value.contains("g")) c.finite.g = parse_complex_list(value["g"], "finite.g");
            if (value.contains("f")) c.finite.f_rec = parse_complex_list(value["f"], "finite.f");
        } else if (key == "tool" || key == "version" || key == "command") {
            // Reports embed these next to the config; tolerate them on re-read.
        } else {
            config_error(key, "unknown field");
        }
    }
    return c;
}

ordered_json to_json(const FamilySpec& spec) {
    ordered_json j;
    j["kind"] = to_string(spec.kind);
    switch (spec.kind) {
        case FamilyKind::ExpBinomial: {
            j["b"] = spec.b;
            ordered_json factors = ordered_json::array();
            for (const auto& f : spec.factors) factors.push_back({{"a", f.a}, {"lambda", f.family_lambda}});
            j["factors"] = std::move(factors);
            break;
        }
        case FamilyKind::ExplicitList:
            j["coeffs"] = complex_list_json(spec.coeffs);
            j["radius"] = spec.radius;
            break;
        default:
            break;
    }
    return j;
}

ordered_json to_json(const RunConfig& c) {
    ordered_json j;
    j["family"] = to_json(c.family);
    j["K"] = c.K;
    j["contour"] = c.contour ? ordered_json{{"radius", c.contour->radius}, {"nodes", c.contour->nodes}}
                             : ordered_json(nullptr);
    j["output"] = {{"path", c.output}, {"format", c.format == ReportFormat::Json ? "json" : "csv"}};
    j["seed"] = c.seed;
    j["series_order"] = c.series_order;
    j["window"] = c.window ? ordered_json(*c.window) : ordered_json(nullptr);
    j["samples"] = c.samples;
    j["terms"] = c.terms;
    ordered_json ps = ordered_json::array();
    for (const auto& p : c.partial_sum_points)
        ps.push_back({{"x", complex_json(p.x)}, {"t", complex_json(p.param)}});
    j["partial_sum_samples"] = std::move(ps);
    ordered_json ls = ordered_json::array();
    for (const auto& p : c.laurent_points)
        ls.push_back({{"x", complex_json(p.x)}, {"z", complex_json(p.param)}, {"branch", p.branch}});
    j["laurent_samples"] = std::move(ls);
    j["finite"] = {{"n_cap", c.finite.n_cap},
                   {"g", complex_list_json(c.finite.g)},
                   {"f", complex_list_json(c.finite.f_rec)}};
    return j;
}

std::size_t resolved_series_order(const RunConfig& config, std::size_t minimum) {
    if (config.series_order != 0) return std::max(config.series_order, minimum);
    switch (config.family.kind) {
        // 1/k! stays a normal double up to k = 170.
        case FamilyKind::Exponential: return std::max<std::size_t>(minimum, 150);
        case FamilyKind::Geometric:
        case FamilyKind::ExpBinomial: return std::max<std::size_t>(minimum, 600);
        case FamilyKind::ExplicitList: return std::max(minimum, config.family.coeffs.size() - 1);
    }
    return minimum;
}

std::string Report::render(ReportFormat format) const {
    if (format == ReportFormat::Json) return json.dump(2) + "\n";
    std::ostringstream out;
    out << "# tool: olp\n# version: " << kVersion << "\n# command: " << json.value("command", "") << "\n";
    out << "# config: " << json["config"].dump() << "\n";
    for (const auto& row : csv_rows) out << row << "\n";
    return out.str();
}

Report cmd_build(const RunConfig& config) {
    const auto source = realize(config.family, resolved_series_order(config, config.K));
    const auto sys = build_system(source, config.K);
    const auto rd = recurrence_data(source, config.K);
    const auto norm = check_normalization(sys, rd);
    const double residual = recurrence_residual(sys, rd);

    Report r;
    r.json = header("build", config);
    ordered_json polys = ordered_json::array();
    r.csv_rows.push_back("n,exponent,coefficient");
    for (std::size_t n = 0; n <= sys.K; ++n) {
        polys.push_back({{"n", n}, {"coefficients", laurent_json(sys.R[n])}});
        for (const auto& [e, c] : sys.R[n].terms())
            r.csv_rows.push_back(std::to_string(n) + "," + std::to_string(e) + "," + format_complex(c));
    }
    r.json["R"] = std::move(polys);
    r.json["recurrence"] = {{"c", complex_list_json(rd.c)},
                            {"lambda", complex_list_json(rd.recur_lambda)},
                            {"xi", complex_list_json(rd.xi)},
                            {"g", complex_list_json(rd.g)},
                            {"f", complex_list_json(rd.f_rec)},
                            {"conventions", "c[0] = 1; lambda[0] = lambda[1] = 1; xi_{-1} = 1; g[0] = f[0] = 0 unused"}};
    const bool ok = norm.passed(1e-11) && residual <= 1e-12;
    r.json["normalization"] = {{"deviation", norm.deviation},
                               {"max_deviation", norm.max_deviation},
                               {"recurrence_residual", residual},
                               {"passed", ok}};
    r.exit_code = ok ? kOk : kNumericFailure;
    return r;
}

Report cmd_ortho(const RunConfig& config) {
    const std::size_t window = 2 * ((config.K + 1) / 2);
    const auto source = realize(config.family, resolved_series_order(config, std::max(config.K, window)));
    const auto sys = build_system(source, config.K);
    const auto mt = exact_moments(source, window);
    const auto gram = gram_matrix(sys, mt);

    Report r;
    r.json = header("ortho", config);
    r.json["route"] = "exact-moments";
    r.json["gram"] = matrix_json(gram);
    r.json["max_off_diagonal"] = gram.max_off_diagonal();
    r.json["min_diagonal"] = gram.min_diagonal();
    bool ok = gram.max_off_diagonal() <= 1e-10 && gram.min_diagonal() >= 1e-8;

    std::optional<ComplexMatrix> contour_gram;
    if (config.contour) {
        const ContourFunctional functional(source, *config.contour);
        contour_gram = gram_matrix(sys, functional, config.K);
        // Agreement is verified for n, m <= kRouteCheckIndex; beyond that the
        // contour products grow like c^(-2n) and lose digits to rounding.
        const std::size_t block = std::min(config.K, kRouteCheckIndex) + 1;
        double checked = 0.0;
        for (std::size_t i = 0; i < block; ++i)
            for (std::size_t j = 0; j < block; ++j)
                checked = std::max(checked, std::abs((*contour_gram)(i, j) - gram(i, j)) / (1.0 + std::abs(gram(i, j))));
        r.json["contour"] = {{"radius", config.contour->radius},
                             {"nodes", config.contour->nodes},
                             {"min_abs_denominator", functional.min_abs_denominator()},
                             {"gram", matrix_json(*contour_gram)},
                             {"checked_max_index", block - 1},
                             {"max_route_disagreement", checked},
                             {"max_route_disagreement_all", route_disagreement(gram, *contour_gram)}};
        ok = ok && checked <= 1e-9;
    }
    r.json["passed"] = ok;
    r.exit_code = ok ? kOk : kNumericFailure;

    r.csv_rows.push_back(contour_gram ? "n,m,exact,contour" : "n,m,exact");
    for (std::size_t i = 0; i < gram.rows; ++i)
        for (std::size_t j = 0; j < gram.cols; ++j) {
            std::string row = std::to_string(i) + "," + std::to_string(j) + "," + format_complex(gram(i, j));
            if (contour_gram) row += "," + format_complex((*contour_gram)(i, j));
            r.csv_rows.push_back(std::move(row));
        }
    return r;
}

Report cmd_moments(const RunConfig& config) {
    const std::size_t window = config.window.value_or(config.K);
    const auto source = realize(config.family, resolved_series_order(config, window));
    const auto mt = exact_moments(source, window);
    std::optional<ContourFunctional> functional;
    if (config.contour) functional.emplace(source, *config.contour);

    Report r;
    r.json = header("moments", config);
    r.json["ordering"] = "ascending exponent m from -window to window";
    r.json["window"] = window;
    ordered_json rows = ordered_json::array();
    r.csv_rows.push_back(functional ? "m,value,contour" : "m,value");
    const int w = static_cast<int>(window);
    for (int m = -w; m <= w; ++m) {
        ordered_json row{{"m", m}, {"value", complex_json(mt.at(m))}};
        std::string csv = std::to_string(m) + "," + format_complex(mt.at(m));
        if (functional) {
            const Complex v = (*functional)(LaurentPoly::monomial(m));
            row["contour"] = complex_json(v);
            csv += "," + format_complex(v);
        }
        rows.push_back(std::move(row));
        r.csv_rows.push_back(std::move(csv));
    }
    r.json["moments"] = std::move(rows);
    return r;
}

Report cmd_genfun(const RunConfig& config) {
    const std::size_t terms = config.terms;
    const std::size_t K = std::max(terms, config.K);
    const auto source = realize(config.family, resolved_series_order(config, K));
    const auto sys = build_system(source, K);
    const double rho = config.family.convergence_radius();

    std::vector<PartialSumSample> partial;
    for (const auto& p : config.partial_sum_points) partial.push_back({p.x, p.param, terms});
    for (const auto& s : admissible_partial_sum_samples(rho, config.samples, terms, config.seed)) partial.push_back(s);
    std::vector<LaurentSample> laurent;
    for (const auto& p : config.laurent_points) laurent.push_back(LaurentSample::with_branch(p.x, p.param, p.branch, terms));
    for (const auto& s : admissible_laurent_samples(rho, config.samples, terms, config.seed + 1)) laurent.push_back(s);

    Report r;
    r.json = header("genfun-check", config);
    r.csv_rows.push_back("identity,x,param,sqrt_x,terms,residual,tail_bound,floor,within_bound");
    bool ok = true;
    ordered_json rows = ordered_json::array();
    auto record = [&](const char* identity, Complex x, Complex param, std::optional<Complex> root,
                      const GenfunResult& g) {
        ok = ok && g.within_bound();
        ordered_json row{{"identity", identity}, {"x", complex_json(x)}, {"param", complex_json(param)}};
        row["sqrt_x"] = root ? complex_json(*root) : ordered_json(nullptr);
        row["terms"] = terms;
        row["residual"] = g.residual;
        row["tail_bound"] = g.tail_bound;
        row["floor"] = g.floor;
        row["within_bound"] = g.within_bound();
        rows.push_back(std::move(row));
        r.csv_rows.push_back(std::string(identity) + "," + format_complex(x) + "," + format_complex(param) + "," +
                             (root ? format_complex(*root) : std::string()) + "," + std::to_string(terms) + "," +
                             format_double(g.residual) + "," + format_double(g.tail_bound) + "," +
                             format_double(g.floor) + "," + (g.within_bound() ? "true" : "false"));
    };
    for (const auto& s : partial) record("partial-sum", s.x, s.t, std::nullopt, check_partial_sum_genfun(sys, s));
    for (const auto& s : laurent) record("laurent", s.x, s.z, s.sqrt_x, check_laurent_genfun(sys, s));
    r.json["samples"] = std::move(rows);

    // R_n(x) through the contour formula against direct evaluation.
    double worst = 0.0;
    const std::size_t n_max = std::min<std::size_t>(config.K, 20);
    for (const Complex x : admissible_points(rho, config.samples, config.seed + 2))
        for (std::size_t n = 0; n <= n_max; ++n) {
            const Complex direct = laurent_eval(sys.R[n], x);
            worst = std::max(worst, std::abs(rn_by_contour(source, n, x) - direct) / (1.0 + std::abs(direct)));
        }
    r.json["rn_contour"] = {{"max_index", n_max}, {"max_relative_deviation", worst}};
    ok = ok && worst <= 1e-8;
    r.json["passed"] = ok;
    r.exit_code = ok ? kOk : kNumericFailure;
    return r;
}

Report cmd_finite(const RunConfig& config) {
    const std::size_t n_cap = config.finite.n_cap;
    if (n_cap < 1) config_error("finite.n_cap", "must be >= 1");
    FiniteSystemSpec spec;
    if (config.finite.g.empty() && config.finite.f_rec.empty()) {
        const std::size_t L = 4 * n_cap;
        const auto source = realize(config.family, resolved_series_order(config, L));
        spec = FiniteSystemSpec::from_recurrence(recurrence_data(source, L), n_cap);
    } else {
        spec = FiniteSystemSpec::with_default_extension(n_cap, config.finite.g, config.finite.f_rec);
    }
    const auto sol = solve_finite_system(spec);

    Report r;
    r.json = header("finite", config);
    r.json["spec"] = {{"n_cap", spec.n_cap}, {"g", complex_list_json(spec.g)}, {"f", complex_list_json(spec.f_rec)}};
    ordered_json moments = ordered_json::array();
    for (int m = -sol.mu_table.window(); m <= sol.mu_table.window(); ++m)
        moments.push_back({{"m", m}, {"value", complex_json(sol.mu_table.at(m))}});
    r.json["moments"] = std::move(moments);

    const auto residuals = moment_residuals(sol.base_measure, sol.base.s);
    const double M = static_cast<double>(sol.base_measure.atoms.size());
    const double min_weight = static_cast<double>(sol.base_measure.min_weight());
    const double worst_residual = *std::max_element(residuals.begin(), residuals.end());
    r.json["a"] = complex_json(sol.base.a);
    r.json["s"] = complex_list_json(sol.base.s);
    r.json["measure"] = measure_json(sol.base_measure);
    r.json["min_weight_times_2M"] = min_weight * 2.0 * M;
    r.json["moment_residuals"] = residuals;

    const double off = sol.gram.max_off_diagonal();
    r.json["enlarged"] = {{"a", complex_json(sol.enlarged.a)},
                          {"measure", measure_json(sol.enlarged_measure)},
                          {"gram", matrix_json(sol.gram)},
                          {"max_off_diagonal", off},
                          {"min_diagonal", sol.gram.min_diagonal()}};
    const bool ok = min_weight * 2.0 * M >= 1.0 - 1e-12 && worst_residual <= 1e-10 && off <= 1e-9;
    r.json["passed"] = ok;
    r.exit_code = ok ? kOk : kNumericFailure;

    r.csv_rows.push_back("index,location,weight");
    for (std::size_t j = 0; j < sol.base_measure.atoms.size(); ++j) {
        const auto& a = sol.base_measure.atoms[j];
        r.csv_rows.push_back(std::to_string(j) + "," +
                             format_complex({static_cast<double>(a.location.real()),
                                             static_cast<double>(a.location.imag())}) +
                             "," + format_double(static_cast<double>(a.weight)));
    }
    return r;
}

Report run_command(const std::string& command, const RunConfig& config) {
    if (command == "build") return cmd_build(config);
    if (command == "ortho") return cmd_ortho(config);
    if (command == "moments") return cmd_moments(config);
    if (command == "genfun-check") return cmd_genfun(config);
    if (command == "finite") return cmd_finite(config);
    throw Error(ErrorCode::ConfigError, "unknown subcommand '" + command + "'");
}

}  // namespace olp::cli
