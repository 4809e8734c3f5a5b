#include "nehari/run.hpp"

#include <cmath>
#include <filesystem>

#include <fmt/format.h>

#include "nehari/expr.hpp"
#include "nehari/io.hpp"
#include "nehari/multiplicity.hpp"

namespace nehari {

namespace fs = std::filesystem;

namespace {

std::string f17(double x) { return format_float(x); }

class Artifacts {
public:
    explicit Artifacts(const RunConfig& c) : dir_(c.output_dir), label_(c.label) {}
    fs::path path(const std::string& suffix) const { return dir_ / (label_ + suffix); }

private:
    fs::path dir_;
    std::string label_;
};

std::string breakdown_text(const EnergyBreakdown& e) {
    return fmt::format("quad = {}\ncross = {}\nfpart = {}\nqpart = {}\ntotal = {}\n", f17(e.quad), f17(e.cross),
                       f17(e.fpart), f17(e.qpart), f17(e.total));
}

void write_state(const Artifacts& a, const std::string& stem, const State& s) {
    write_grid(a.path(stem + ".u.grid"), s.u);
    write_grid(a.path(stem + ".v.grid"), s.v);
    write_grid_csv(a.path(stem + ".u.csv"), s.u);
    write_grid_csv(a.path(stem + ".v.csv"), s.v);
}

State ray_direction(const RunConfig& c, const ProblemSpec& spec) {
    const auto& p = c.problem;
    if (p.u0.empty() && p.v0.empty()) {
        return initial_state(spec.domain, c.solve.seed, 0, 1);
    }
    const std::string& eu = p.u0.empty() ? p.v0 : p.u0;
    const std::string& ev = p.v0.empty() ? p.u0 : p.v0;
    return {sample_expr(parse_expr(eu), spec.domain), sample_expr(parse_expr(ev), spec.domain)};
}

int cmd_validate(const RunConfig& c, ProblemSpec& spec, std::ostream& out, std::ostream& err) {
    ValidationReport rep;
    std::string failure;
    try {
        rep = validate_problem(spec);
    } catch (const ValidationError& e) {
        rep = e.report();
        failure = e.what();
    }
    const std::string text = rep.to_text();
    write_text(Artifacts(c).path(".validation.txt"), text);
    out << text;
    if (!failure.empty()) {
        err << "validation failed: " << failure << '\n';
        return exit_validation;
    }
    return exit_ok;
}

int cmd_ground(const RunConfig& c, const ProblemSpec& spec, std::ostream& out) {
    const Artifacts a(c);
    const GroundStateResult g = find_ground_state(spec, c.solve);
    const std::string stem = fmt::format(".start{}", g.report.start_index);
    write_state(a, stem, g.state);

    std::string text = fmt::format("[ground]\nlabel = {}\nbest_start = {}\n", c.label, g.report.start_index);
    text += report_text(g.report);
    text += "\n[energy]\n" + breakdown_text(energy(spec, g.state));
    text += fmt::format("\n[bounds]\nlower_bound = {}\n",
                        f17((0.5 - 1.0 / spec.q) * (1.0 - spec.delta) * g.report.norm * g.report.norm));
    std::vector<std::vector<double>> trace;
    for (const auto& r : g.starts) {
        text += fmt::format("\n[start {}]\n", r.start_index) + report_text(r);
        for (std::size_t i = 0; i < r.accepted_energies.size(); ++i) {
            trace.push_back({static_cast<double>(r.start_index), static_cast<double>(i), r.accepted_energies[i]});
        }
    }
    write_text(a.path(".ground.txt"), text);
    write_csv(a.path(".energies.csv"), {"start", "step", "energy"}, trace);
    out << fmt::format("ground state energy {} (start {}, residual {:.3e})\n", f17(g.report.energy),
                       g.report.start_index, g.report.grad_residual);
    return exit_ok;
}

int cmd_multiplicity(const RunConfig& c, const ProblemSpec& spec, std::ostream& out, std::ostream& err) {
    const Artifacts a(c);
    const MultiplicityResult m = find_multiple(spec, c.solve, c.target_count, c.collapse_budget, c.sigma);
    std::string text = fmt::format("[multiplicity]\nlabel = {}\ntarget_count = {}\nfound = {}\ndegenerate = {}\n"
                                   "attempts = {}\ncollapsed = {}\n",
                                   c.label, c.target_count, m.set.entries.size(), m.set.degenerate.size(), m.attempts,
                                   m.collapsed);
    for (std::size_t j = 0; j < m.set.entries.size(); ++j) {
        const auto& e = m.set.entries[j];
        const std::string stem = fmt::format(".sol{}", j);
        write_state(a, stem, e.state);
        text += fmt::format("\n[solution {}]\nu_file = {}\nv_file = {}\n", j, c.label + stem + ".u.grid",
                            c.label + stem + ".v.grid");
        text += report_text(e.report);
    }
    for (std::size_t j = 0; j < m.set.degenerate.size(); ++j) {
        const auto& e = m.set.degenerate[j];
        const std::string stem = fmt::format(".deg{}", j);
        write_state(a, stem, e.state);
        text += fmt::format("\n[degenerate {}]\nu_file = {}\nv_file = {}\n", j, c.label + stem + ".u.grid",
                            c.label + stem + ".v.grid");
        text += report_text(e.report);
    }
    text += "\n[orbit distances]\n";
    for (const auto& row : m.set.pairwise_distances) {
        std::vector<std::string> cells;
        for (double d : row) {
            cells.push_back(f17(d));
        }
        text += fmt::format("{}\n", fmt::join(cells, ", "));
    }
    text += "\n[log]\n";
    for (const auto& l : m.log) {
        text += l + '\n';
    }
    write_text(a.path(".manifest.txt"), text);
    out << fmt::format("{} distinct levels found ({} degenerate partners, {} collapsed searches)\n",
                       m.set.entries.size(), m.set.degenerate.size(), m.collapsed);
    if (static_cast<int>(m.set.entries.size()) < c.target_count) {
        err << fmt::format("multiplicity: collapse budget exhausted after {} levels\n", m.set.entries.size());
        return exit_stall;
    }
    return exit_ok;
}

int cmd_fountain(const RunConfig& c, const ProblemSpec& spec, std::ostream& out) {
    const Artifacts a(c);
    const FountainReport f = fountain_diagnostics(spec, c.k_max, c.solve.seed);
    std::vector<std::vector<double>> rows;
    for (int k = 0; k < f.k_max; ++k) {
        const auto i = static_cast<std::size_t>(k);
        rows.push_back({static_cast<double>(k + 1), f.beta[i], f.r[i], f.b_lower[i], f.a_check[i].first,
                        f.a_check[i].second});
    }
    write_csv(a.path(".fountain.csv"), {"k", "beta", "r", "b_lower", "rho", "a_max"}, rows);
    const double ratio = f.beta.back() / f.beta.front();
    const std::string text =
        fmt::format("[fountain]\nk_max = {}\np = {}\nc_tilde = {}\nbeta_first = {}\nbeta_last = {}\nratio = {}\n"
                    "beta_nonincreasing = {}\na_nonpositive = {}\n",
                    f.k_max, f17(f.p), f17(f.c_tilde), f17(f.beta.front()), f17(f.beta.back()), f17(ratio),
                    f.beta_nonincreasing(), f.a_nonpositive());
    write_text(a.path(".fountain.txt"), text);
    out << text;
    return exit_ok;
}

int cmd_fibering(const RunConfig& c, const ProblemSpec& spec, std::ostream& out) {
    const Artifacts a(c);
    const State s = ray_direction(c, spec);
    const FiberingReport fr = fibering_root(RayProfile(spec, s));
    const int n = std::max(c.fibering_samples, 2);
    std::vector<std::vector<double>> rows;
    int sign_changes = 0;
    double prev = 0.0;
    for (int i = 1; i <= n; ++i) {
        const double t = 2.5 * fr.t_star * i / n;
        const double d = fibering_slope(spec, s, t);
        if (i > 1 && ((prev > 0.0 && d < 0.0) || (prev < 0.0 && d > 0.0))) {
            ++sign_changes;
        }
        prev = d;
        rows.push_back({t, fibering_value(spec, s, t), d});
    }
    write_csv(a.path(".fibering.csv"), {"t", "phi", "dphi"}, rows);
    const std::string text =
        fmt::format("[fibering]\nt_star = {}\nphi_at_t_star = {}\nslope_residual = {}\niterations = {}\n"
                    "samples = {}\nsign_changes = {}\n",
                    f17(fr.t_star), f17(fr.phi_at_t), f17(fr.slope_residual), fr.iterations, n, sign_changes);
    write_text(a.path(".fibering.txt"), text);
    out << text;
    return exit_ok;
}

int cmd_decay(const RunConfig& c, const ProblemSpec& spec, std::ostream& out, std::ostream& err) {
    if (!spec.domain->periodic()) {
        err << "decay: requires a periodic domain\n";
        return exit_error;
    }
    const Artifacts a(c);
    const GroundStateResult g = find_ground_state(spec, c.solve);
    const Recentered rc = recenter(g.state);
    const DecayFit fit = decay_fit(rc.state);
    write_state(a, ".recentered", rc.state);

    const DomainSpec& d = *spec.domain;
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < d.size(); ++i) {
        rows.push_back({node_distance(d, d.unravel(i), fit.center), std::abs(rc.state.u[i]) + std::abs(rc.state.v[i])});
    }
    write_csv(a.path(".decay.csv"), {"distance", "amplitude"}, rows);
    std::string text = fmt::format(
        "[decay]\nC = {}\nalpha = {}\nr_squared = {}\nwindow_lower = {}\nwindow_upper = {}\nsamples = {}\n"
        "shift = {}, {}, {}\n",
        f17(fit.C), f17(fit.alpha), f17(fit.r_squared), f17(fit.lower), f17(fit.upper), fit.samples, rc.shift[0],
        rc.shift[1], rc.shift[2]);
    text += "\n[ground]\n" + report_text(g.report);
    write_text(a.path(".decay.txt"), text);
    out << text;
    return exit_ok;
}

}  // namespace

std::string report_text(const SolveReport& r, const std::string& prefix) {
    return fmt::format("{0}energy = {1}\n{0}grad_residual = {2}\n{0}xi_residual = {3}\n{0}iterations = {4}\n"
                       "{0}start_index = {5}\n{0}norm = {6}\n{0}rho_estimate = {7}\n{0}status = {8}\n"
                       "{0}diagnostics = {9}\n",
                       prefix, f17(r.energy), f17(r.grad_residual), f17(r.xi_residual), r.iterations, r.start_index,
                       f17(r.norm), f17(r.rho_estimate), to_string(r.status), r.diagnostics);
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        ProblemSpec spec;
        try {
            spec = config.problem.build();
        } catch (const EvalError& e) {
            if (std::string_view(e.what()).find("1-periodic") != std::string_view::npos) {
                err << "validation failed: (V3) " << e.what() << '\n';
                return exit_validation;
            }
            throw;
        }
        if (config.command == "validate") {
            return cmd_validate(config, spec, out, err);
        }
        validate_problem(spec);
        if (config.command == "ground") {
            return cmd_ground(config, spec, out);
        }
        if (config.command == "multiplicity") {
            return cmd_multiplicity(config, spec, out, err);
        }
        if (config.command == "fountain") {
            return cmd_fountain(config, spec, out);
        }
        if (config.command == "fibering") {
            return cmd_fibering(config, spec, out);
        }
        if (config.command == "decay") {
            return cmd_decay(config, spec, out, err);
        }
        err << "unknown command '" << config.command << "'\n";
        return exit_error;
    } catch (const ValidationError& e) {
        err << "validation failed: " << e.what() << '\n';
        return exit_validation;
    } catch (const SolverStall& e) {
        err << "solver stall: " << e.what() << '\n';
        return exit_stall;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_error;
    }
}

}  // namespace nehari
