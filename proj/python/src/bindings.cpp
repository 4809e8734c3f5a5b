#include <sstream>
#include <vector>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nehari/config.hpp"
#include "nehari/multiplicity.hpp"
#include "nehari/run.hpp"

namespace py = pybind11;
using namespace nehari;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<py::ssize_t> grid_shape(const DomainSpec& d) { return {d.shape().begin(), d.shape().end()}; }

Array to_array(const GridFunction& f) {
    Array out(grid_shape(f.domain()));
    std::copy(f.values().begin(), f.values().end(), out.mutable_data());
    return out;
}

GridFunction from_array(const DomainPtr& domain, const Array& a) {
    if (static_cast<std::size_t>(a.size()) != domain->size()) {
        throw py::value_error("array size does not match the grid");
    }
    GridFunction f(domain);
    std::copy(a.data(), a.data() + a.size(), f.mutable_values().begin());
    return f;
}

State make_state(const ProblemSpec& p, const Array& u, const Array& v) {
    return {from_array(p.domain, u), from_array(p.domain, v)};
}

py::dict report_dict(const SolveReport& r) {
    py::dict d;
    d["energy"] = r.energy;
    d["grad_residual"] = r.grad_residual;
    d["xi_residual"] = r.xi_residual;
    d["iterations"] = r.iterations;
    d["start_index"] = r.start_index;
    d["norm"] = r.norm;
    d["rho_estimate"] = r.rho_estimate;
    d["status"] = to_string(r.status);
    return d;
}

py::dict solution_dict(const SolveReport& r, const State& s) {
    py::dict d = report_dict(r);
    d["u"] = to_array(s.u);
    d["v"] = to_array(s.v);
    return d;
}

ProblemSpec problem_from_config(const std::string& text) {
    ProblemSpec spec = parse_config(text).problem.build();
    validate_problem(spec);
    return spec;
}

SolveConfig solve_from_config(const std::string& text) { return parse_config(text).solve; }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Nehari-manifold solver for coupled Schrodinger systems";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<SolverStall>(m, "SolverStall", PyExc_RuntimeError);

    py::class_<ProblemSpec>(m, "Problem")
        .def_static("from_config", &problem_from_config, py::arg("text"),
                    "Parse a config text, sample the fields and validate the hypotheses.")
        .def_property_readonly("shape", [](const ProblemSpec& p) { return grid_shape(*p.domain); })
        .def_property_readonly("periodic", [](const ProblemSpec& p) { return p.domain->periodic(); })
        .def_property_readonly("cell_volume", [](const ProblemSpec& p) { return p.domain->cell_volume(); })
        .def_property_readonly("delta", [](const ProblemSpec& p) { return p.delta; })
        .def_property_readonly("q", [](const ProblemSpec& p) { return p.q; })
        .def_property_readonly("V1", [](const ProblemSpec& p) { return to_array(p.V1); })
        .def_property_readonly("V2", [](const ProblemSpec& p) { return to_array(p.V2); })
        .def_property_readonly("coupling", [](const ProblemSpec& p) { return to_array(p.lambda); });

    m.def("default_config", [](bool periodic) { return emit_config(periodic ? default_periodic() : default_bounded()); },
          py::arg("periodic") = false);

    m.def(
        "validate",
        [](const std::string& text) {
            ProblemSpec spec = parse_config(text).problem.build();
            try {
                return py::make_tuple(true, validate_problem(spec).to_text());
            } catch (const ValidationError& e) {
                return py::make_tuple(false, e.report().to_text());
            }
        },
        py::arg("text"), "Returns (passed, report text).");

    m.def(
        "energy",
        [](const ProblemSpec& p, const Array& u, const Array& v) {
            const EnergyBreakdown e = energy(p, make_state(p, u, v));
            py::dict d;
            d["quad"] = e.quad;
            d["cross"] = e.cross;
            d["fpart"] = e.fpart;
            d["qpart"] = e.qpart;
            d["total"] = e.total;
            return d;
        },
        py::arg("problem"), py::arg("u"), py::arg("v"));
    m.def(
        "norm", [](const ProblemSpec& p, const Array& u, const Array& v) { return norm(p, make_state(p, u, v)); },
        py::arg("problem"), py::arg("u"), py::arg("v"));
    m.def(
        "nehari_xi",
        [](const ProblemSpec& p, const Array& u, const Array& v) { return nehari_xi(p, make_state(p, u, v)); },
        py::arg("problem"), py::arg("u"), py::arg("v"));
    m.def(
        "grad_l2",
        [](const ProblemSpec& p, const Array& u, const Array& v) {
            const State g = grad_l2(p, make_state(p, u, v));
            return py::make_tuple(to_array(g.u), to_array(g.v));
        },
        py::arg("problem"), py::arg("u"), py::arg("v"));
    m.def(
        "fibering_project",
        [](const ProblemSpec& p, const Array& u, const Array& v) {
            auto [rep, s] = fibering_project(p, make_state(p, u, v));
            return py::make_tuple(rep.t_star, to_array(s.u), to_array(s.v));
        },
        py::arg("problem"), py::arg("u"), py::arg("v"), "Returns (t_star, u, v) on the Nehari manifold.");

    m.def(
        "ground_state",
        [](const ProblemSpec& p, const std::string& config_text) {
            const GroundStateResult g = find_ground_state(p, solve_from_config(config_text));
            py::dict d = solution_dict(g.report, g.state);
            py::list starts;
            for (const auto& r : g.starts) {
                starts.append(report_dict(r));
            }
            d["starts"] = starts;
            return d;
        },
        py::arg("problem"), py::arg("config_text") = "");

    m.def(
        "multiple_solutions",
        [](const ProblemSpec& p, int target_count, int collapse_budget, const std::string& config_text) {
            const MultiplicityResult res =
                find_multiple(p, solve_from_config(config_text), target_count, collapse_budget);
            py::list entries;
            for (const auto& e : res.set.entries) {
                entries.append(solution_dict(e.report, e.state));
            }
            py::dict d;
            d["entries"] = entries;
            d["pairwise_distances"] = res.set.pairwise_distances;
            d["degenerate"] = res.set.degenerate.size();
            d["collapsed"] = res.collapsed;
            d["log"] = res.log;
            return d;
        },
        py::arg("problem"), py::arg("target_count") = 3, py::arg("collapse_budget") = 8,
        py::arg("config_text") = "");

    m.def(
        "orbit_distance",
        [](const ProblemSpec& p, const Array& u1, const Array& v1, const Array& u2, const Array& v2) {
            return orbit_distance(p, make_state(p, u1, v1), make_state(p, u2, v2));
        },
        py::arg("problem"), py::arg("u1"), py::arg("v1"), py::arg("u2"), py::arg("v2"));

    m.def(
        "eigenbasis",
        [](const ProblemSpec& p, int k) {
            py::list out;
            for (const auto& e : eigenbasis(p, k)) {
                out.append(py::make_tuple(e.value, to_array(e.vector.u), to_array(e.vector.v)));
            }
            return out;
        },
        py::arg("problem"), py::arg("k"));

    m.def(
        "fountain",
        [](const ProblemSpec& p, int k_max, std::uint64_t seed) {
            const FountainReport f = fountain_diagnostics(p, k_max, seed);
            py::dict d;
            d["beta"] = f.beta;
            d["r"] = f.r;
            d["b_lower"] = f.b_lower;
            d["a_check"] = f.a_check;
            d["p"] = f.p;
            d["c_tilde"] = f.c_tilde;
            return d;
        },
        py::arg("problem"), py::arg("k_max") = 30, py::arg("seed") = 1);

    m.def(
        "decay_fit",
        [](const ProblemSpec& p, const Array& u, const Array& v) {
            const Recentered rc = recenter(make_state(p, u, v));
            const DecayFit f = decay_fit(rc.state);
            py::dict d;
            d["C"] = f.C;
            d["alpha"] = f.alpha;
            d["r_squared"] = f.r_squared;
            d["samples"] = f.samples;
            return d;
        },
        py::arg("problem"), py::arg("u"), py::arg("v"), "Recenters the state and fits exponential decay.");

    m.def(
        "run",
        [](const std::string& command, const std::string& config_text, const std::string& out_dir,
           const std::string& label) {
            RunConfig c = parse_config(config_text);
            c.command = command;
            c.output_dir = out_dir;
            if (!label.empty()) {
                c.label = label;
            }
            std::ostringstream out;
            std::ostringstream err;
            const int code = run(c, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("command"), py::arg("config_text"), py::arg("out_dir"), py::arg("label") = "",
        "Runs a CLI command in-process; returns (exit code, stdout, stderr).");

#ifdef NEHARI_VERSION
    m.attr("__version__") = NEHARI_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
