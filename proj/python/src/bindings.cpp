#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "olp/cli_app.hpp"
#include "olp/family_library.hpp"
#include "olp/finite_moment.hpp"
#include "olp/functional_engine.hpp"
#include "olp/genfun_checker.hpp"
#include "olp/olp_builder.hpp"

namespace py = pybind11;
using namespace olp;

namespace {

std::map<int, Complex> terms_of(const LaurentPoly& p) { return {p.terms().begin(), p.terms().end()}; }

LaurentPoly poly_from(const std::map<int, Complex>& terms) {
    LaurentPoly p;
    for (const auto& [e, c] : terms) p.set(e, c);
    return p;
}

std::vector<std::vector<Complex>> rows_of(const ComplexMatrix& m) {
    std::vector<std::vector<Complex>> out(m.rows, std::vector<Complex>(m.cols));
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) out[i][j] = m(i, j);
    return out;
}

std::size_t default_order(const FamilySpec& spec, std::size_t minimum) {
    cli::RunConfig c;
    c.family = spec;
    return cli::resolved_series_order(c, minimum);
}

py::dict genfun_dict(const GenfunResult& r) {
    py::dict d;
    d["lhs"] = r.lhs;
    d["rhs"] = r.rhs;
    d["residual"] = r.residual;
    d["tail_bound"] = r.tail_bound;
    d["floor"] = r.floor;
    d["within_bound"] = r.within_bound();
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Laurent orthogonal polynomials built from partial sums of power series";
    m.attr("__version__") = cli::kVersion;

    static py::exception<Error> olp_error(m, "OlpError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object err = olp_error;
            py::object exc = err(e.what());
            exc.attr("code") = std::string(to_string(e.code()));
            PyErr_SetObject(olp_error.ptr(), exc.ptr());
        }
    });

    py::class_<FamilySpec>(m, "FamilySpec")
        .def_static("geometric", &FamilySpec::geometric)
        .def_static("exponential", &FamilySpec::exponential)
        .def_static(
            "exp_binomial",
            [](double b, const std::vector<std::pair<double, double>>& factors) {
                std::vector<BinomialFactor> fs;
                for (const auto& [a, lambda] : factors) fs.push_back({a, lambda});
                auto spec = FamilySpec::exp_binomial(b, std::move(fs));
                spec.validate();
                return spec;
            },
            py::arg("b"), py::arg("factors"), "factors: list of (a, lambda) pairs")
        .def_static("explicit_list", &FamilySpec::explicit_list, py::arg("coeffs"), py::arg("radius"))
        .def_property_readonly("kind", [](const FamilySpec& s) { return to_string(s.kind); })
        .def_property_readonly("convergence_radius", &FamilySpec::convergence_radius)
        .def("__repr__", [](const FamilySpec& s) { return "FamilySpec(" + cli::to_json(s).dump() + ")"; });

    m.def(
        "realize", [](const FamilySpec& spec, std::size_t order) { return realize(spec, order).coeffs(); },
        py::arg("spec"), py::arg("order"), "Maclaurin coefficients d_0..d_order");
    m.def(
        "reciprocal", [](const FamilySpec& spec, std::size_t order) { return reciprocal_closed_form(spec, order).coeffs(); },
        py::arg("spec"), py::arg("order"), "Maclaurin coefficients of 1/f from the closed form");

    m.def(
        "build_system",
        [](const FamilySpec& spec, std::size_t K) {
            const auto sys = build_system(realize(spec, K), K);
            std::vector<std::map<int, Complex>> out;
            for (const auto& r : sys.R) out.push_back(terms_of(r));
            return out;
        },
        py::arg("spec"), py::arg("K"), "R_0..R_K as {exponent: coefficient} dicts");

    m.def(
        "recurrence_data",
        [](const FamilySpec& spec, std::size_t K) {
            const auto rd = recurrence_data(realize(spec, K), K);
            py::dict d;
            d["c"] = rd.c;
            d["lambda"] = rd.recur_lambda;
            d["xi"] = rd.xi;
            d["g"] = rd.g;
            d["f"] = rd.f_rec;
            return d;
        },
        py::arg("spec"), py::arg("K"));

    m.def(
        "build_by_recurrence",
        [](const std::vector<Complex>& g, const std::vector<Complex>& f, std::size_t K) {
            std::vector<std::map<int, Complex>> out;
            for (const auto& q : run_laurent_recurrence(g, f, K)) out.push_back(terms_of(q));
            return out;
        },
        py::arg("g"), py::arg("f"), py::arg("K"), "Q_0..Q_K; entry 0 of g and f is ignored");

    m.def(
        "exact_moments",
        [](const FamilySpec& spec, std::size_t N) {
            const auto mt = exact_moments(realize(spec, N), N);
            std::map<int, Complex> out;
            for (int k = -mt.window(); k <= mt.window(); ++k) out[k] = mt.at(k);
            return out;
        },
        py::arg("spec"), py::arg("N"), "L(x^m) for -N <= m <= N");

    m.def(
        "apply_L",
        [](const std::map<int, Complex>& p, const FamilySpec& spec) {
            const auto q = poly_from(p);
            int N = 0;
            if (!q.empty()) N = std::max(-q.min_exponent(), q.max_exponent());
            const auto n = static_cast<std::size_t>(std::max(N, 0));
            return apply_L(q, exact_moments(realize(spec, n), n));
        },
        py::arg("p"), py::arg("spec"), "functional value from exact moments");

    m.def(
        "contour_L",
        [](const std::map<int, Complex>& p, const FamilySpec& spec, double radius, std::size_t nodes,
           std::size_t order) {
            const auto src = realize(spec, order ? order : default_order(spec, 0));
            return contour_L(poly_from(p), src, {radius, nodes});
        },
        py::arg("p"), py::arg("spec"), py::arg("radius"), py::arg("nodes") = 512, py::arg("order") = 0,
        "trapezoidal rule on |y| = radius");

    m.def(
        "specialized_L",
        [](const std::map<int, Complex>& p, const FamilySpec& spec, std::size_t nodes) {
            return specialized_L_expbinomial(poly_from(p), spec, nodes);
        },
        py::arg("p"), py::arg("spec"), py::arg("nodes") = 512, "exp-binomial closed-form weight on the unit circle");

    m.def(
        "gram_matrix",
        [](const FamilySpec& spec, std::size_t K) {
            const std::size_t window = 2 * ((K + 1) / 2);
            const auto src = realize(spec, std::max(K, window));
            return rows_of(gram_matrix(build_system(src, K), exact_moments(src, window)));
        },
        py::arg("spec"), py::arg("K"));

    m.def(
        "check_partial_sum_genfun",
        [](const FamilySpec& spec, Complex x, Complex t, std::size_t terms) {
            const auto sys = build_system(realize(spec, default_order(spec, terms)), terms);
            return genfun_dict(check_partial_sum_genfun(sys, {x, t, terms}));
        },
        py::arg("spec"), py::arg("x"), py::arg("t"), py::arg("terms") = 80);

    m.def(
        "check_laurent_genfun",
        [](const FamilySpec& spec, Complex x, Complex z, int branch, std::size_t terms) {
            const auto sys = build_system(realize(spec, default_order(spec, terms)), terms);
            return genfun_dict(check_laurent_genfun(sys, LaurentSample::with_branch(x, z, branch, terms)));
        },
        py::arg("spec"), py::arg("x"), py::arg("z"), py::arg("branch") = 1, py::arg("terms") = 80);

    m.def(
        "rn_by_contour",
        [](const FamilySpec& spec, std::size_t n, Complex x, std::size_t nodes) {
            return rn_by_contour(realize(spec, default_order(spec, n)), n, x, nodes);
        },
        py::arg("spec"), py::arg("n"), py::arg("x"), py::arg("nodes") = 512);

    m.def(
        "solve_finite_system",
        [](std::size_t n_cap, const std::vector<Complex>& g, const std::vector<Complex>& f) {
            const auto sol = solve_finite_system(FiniteSystemSpec::with_default_extension(n_cap, g, f));
            std::vector<std::tuple<double, double, double>> atoms;
            for (const auto& a : sol.base_measure.atoms)
                atoms.emplace_back(static_cast<double>(a.location.real()), static_cast<double>(a.location.imag()),
                                   static_cast<double>(a.weight));
            py::dict d;
            d["a"] = sol.base.a;
            d["s"] = sol.base.s;
            d["atoms"] = atoms;
            d["moment_residuals"] = moment_residuals(sol.base_measure, sol.base.s);
            d["gram"] = rows_of(sol.gram);
            return d;
        },
        py::arg("n_cap"), py::arg("g") = std::vector<Complex>{}, py::arg("f") = std::vector<Complex>{},
        "g_1.., f_1..; missing entries default to g = 1, f = -1");

    m.def(
        "run_command",
        [](const std::string& command, const std::string& config_json) {
            const auto config = cli::parse_config(cli::parse_json_text(config_json, "config"));
            const auto report = cli::run_command(command, config);
            return std::make_pair(report.json.dump(), report.exit_code);
        },
        py::arg("command"), py::arg("config_json") = "{}", "CLI subcommand; returns (report JSON, exit code)");
}
