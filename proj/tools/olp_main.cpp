#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "olp/cli_app.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw olp::Error(olp::ErrorCode::ConfigError, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// --family accepts a JSON file, inline JSON, or a bare family name.
nlohmann::ordered_json family_argument(const std::string& arg) {
    if (!arg.empty() && (arg.front() == '{' || arg.front() == '"')) return olp::cli::parse_json_text(arg, "--family");
    std::error_code ec;
    if (std::filesystem::is_regular_file(arg, ec)) return olp::cli::parse_json_text(read_file(arg), arg);
    return nlohmann::ordered_json(arg);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Laurent orthogonal polynomials from partial sums of power series"};
    app.set_version_flag("--version", olp::cli::kVersion);
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, family_arg, out_path, format_arg;
    std::optional<std::size_t> order, nodes, window, samples, terms, series_order, n_cap;
    std::optional<double> radius;
    std::optional<std::uint64_t> seed;
    std::vector<double> g_values, f_values;

    app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
    app.add_option("--family", family_arg, "family: JSON file, inline JSON, or geometric|exponential");
    app.add_option("--order,-K", order, "largest index K");
    app.add_option("--radius", radius, "contour radius c");
    app.add_option("--nodes", nodes, "quadrature nodes N");
    app.add_option("--out", out_path, "output file (default stdout)");
    app.add_option("--format", format_arg, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--seed", seed, "sampling seed");
    app.add_option("--window", window, "moment window for 'moments'");
    app.add_option("--samples", samples, "random samples per identity for 'genfun-check'");
    app.add_option("--terms", terms, "truncation length for 'genfun-check'");
    app.add_option("--series-order", series_order, "source series order (0 = automatic)");
    app.add_option("--n-cap", n_cap, "finite system size n for 'finite'");
    app.add_option("--g", g_values, "real g_1..g_{4n} for 'finite'");
    app.add_option("--f", f_values, "real f_1..f_{4n} for 'finite'");

    for (const char* name : {"build", "ortho", "moments", "genfun-check", "finite"})
        app.add_subcommand(name, std::string("run ") + name);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : olp::cli::kConfigError;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        nlohmann::ordered_json doc = nlohmann::ordered_json::object();
        if (!config_path.empty()) doc = olp::cli::parse_json_text(read_file(config_path), config_path);
        if (!doc.is_object()) throw olp::Error(olp::ErrorCode::ConfigError, "config must be a JSON object");
        if (!family_arg.empty()) doc["family"] = family_argument(family_arg);
        if (order) doc["K"] = *order;
        if (radius || nodes) {
            auto& c = doc["contour"];
            if (!c.is_object()) c = nlohmann::ordered_json::object();
            if (radius) c["radius"] = *radius;
            if (nodes) c["nodes"] = *nodes;
            if (!c.contains("radius")) c["radius"] = olp::ContourSpec{}.radius;
        }
        if (!out_path.empty()) doc["output"]["path"] = out_path;
        if (!format_arg.empty()) doc["output"]["format"] = format_arg;
        if (seed) doc["seed"] = *seed;
        if (window) doc["window"] = *window;
        if (samples) doc["samples"] = *samples;
        if (terms) doc["terms"] = *terms;
        if (series_order) doc["series_order"] = *series_order;
        if (n_cap) doc["finite"]["n_cap"] = *n_cap;
        if (!g_values.empty()) doc["finite"]["g"] = g_values;
        if (!f_values.empty()) doc["finite"]["f"] = f_values;

        const auto config = olp::cli::parse_config(doc);
        const auto report = olp::cli::run_command(command, config);
        const std::string text = report.render(config.format);
        if (config.output.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(config.output);
            if (!out) throw olp::Error(olp::ErrorCode::ConfigError, "cannot write '" + config.output + "'");
            out << text;
        }
        if (report.exit_code != olp::cli::kOk) std::cerr << "olp: verification failed, see report\n";
        return report.exit_code;
    } catch (const olp::Error& e) {
        std::cerr << "olp: " << e.what() << "\n";
        return olp::cli::exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "olp: " << e.what() << "\n";
        return olp::cli::kNumericFailure;
    }
}
