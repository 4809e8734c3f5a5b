#include "nehari/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include <fmt/format.h>

namespace nehari {

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::converged:
            return "converged";
        case SolveStatus::max_iters:
            return "max_iters";
        case SolveStatus::stalled:
            return "stalled";
    }
    return "unknown";
}

namespace {

// |x + d|^e - |x|^e without cancellation when |d| << |x|.
double pow_difference(double x, double d, double e) {
    const double y = x + d;
    if (x == 0.0) {
        return abs_pow(y, e);
    }
    const double r = d / x;
    if (r > -0.5) {
        return abs_pow(x, e) * std::expm1(e * std::log1p(r));
    }
    return abs_pow(y, e) - abs_pow(x, e);
}

double nonlinear_difference(const Nonlinearity& nl, double q, double x, double d) {
    double out = pow_difference(x, d, q) / q;
    for (const auto& t : nl.terms) {
        out -= t.coefficient / t.exponent * pow_difference(x, d, t.exponent);
    }
    return out;
}

}  // namespace

double energy_difference(const ProblemSpec& spec, const State& s, const State& d) {
    s.require_same_grid(d, "energy_difference");
    const double h = s.domain().cell_volume();
    // 1/2 ||s + d||^2 - 1/2 ||s||^2 = <s, d> + 1/2 ||d||^2
    const double quad = inner_e(spec, s, d) + 0.5 * norm_sq(spec, d);
    double cross = 0.0;
    double nonlin = 0.0;
    const auto u = s.u.values();
    const auto v = s.v.values();
    const auto du = d.u.values();
    const auto dv = d.v.values();
    const auto lam = spec.lambda.values();
    for (std::size_t i = 0; i < u.size(); ++i) {
        cross += lam[i] * (u[i] * dv[i] + du[i] * v[i] + du[i] * dv[i]);
        nonlin += nonlinear_difference(spec.f1, spec.q, u[i], du[i]) + nonlinear_difference(spec.f2, spec.q, v[i], dv[i]);
    }
    return quad - h * cross + h * nonlin;
}

std::pair<SolveReport, State> minimize_on_nehari(const ProblemSpec& spec, const SolveConfig& config,
                                                 const State& init) {
    const Preconditioner precond(spec);
    return minimize_on_nehari(spec, config, init, precond);
}

std::pair<SolveReport, State> minimize_on_nehari(const ProblemSpec& spec, const SolveConfig& config,
                                                 const State& init, const Preconditioner& precond) {
    if (init.is_zero()) {
        throw FiberingError("minimize_on_nehari: initial state is zero");
    }
    SolveReport rep;
    State s = fibering_project(spec, init).second;
    double J = energy(spec, s).total;
    double s_norm = norm(spec, s);
    rep.rho_estimate = s_norm;
    rep.accepted_energies.push_back(J);
    const bool periodic = s.domain().periodic();

    rep.status = SolveStatus::max_iters;
    int it = 0;
    for (;; ++it) {
        const State g2 = grad_l2(spec, s);
        rep.grad_residual = std::sqrt(inner_l2(g2, g2)) / s_norm;
        if (rep.grad_residual <= config.grad_tol) {
            rep.status = SolveStatus::converged;
            break;
        }
        if (it >= config.max_iters) {
            break;
        }
        const State g = precond.apply(g2);
        const double slope = inner_l2(g2, g);

        double step = config.initial_step;
        bool accepted = false;
        double last_dJ = 0.0;
        for (int bt = 0; bt <= config.max_backtracks; ++bt) {
            State trial = s;
            trial.axpy(-step, g);
            if (!trial.is_zero()) {
                State projected = fibering_project(spec, trial).second;
                const double dJ = energy_difference(spec, s, projected - s);
                last_dJ = dJ;
                if (dJ <= -config.armijo_c1 * step * slope) {
                    s = std::move(projected);
                    J += dJ;
                    accepted = true;
                    break;
                }
            }
            step *= config.backtrack;
        }
        if (!accepted) {
            rep.status = SolveStatus::stalled;
            rep.diagnostics = fmt::format("line search failed after {} backtracks at iteration {} "
                                          "(residual {:.3e}, slope {:.3e}, last dJ {:.3e})",
                                          config.max_backtracks, it, rep.grad_residual, slope, last_dJ);
            break;
        }
        rep.accepted_energies.push_back(J);
        s_norm = norm(spec, s);
        rep.rho_estimate = std::min(rep.rho_estimate, s_norm);
        if (periodic && config.recenter_every > 0 && (it + 1) % config.recenter_every == 0) {
            s = recenter(s).state;
        }
    }
    rep.iterations = it;
    rep.energy = energy(spec, s).total;
    rep.norm = norm(spec, s);
    rep.xi_residual = std::abs(nehari_xi(spec, s));
    return {std::move(rep), std::move(s)};
}

// ---------------------------------------------------------------------------

namespace {

double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

GridFunction gaussian_bump(const DomainPtr& domain, const std::array<double, 3>& centre, double width,
                           double amplitude) {
    const DomainSpec& d = *domain;
    GridFunction out(domain, 0.0);
    for (std::size_t flat = 0; flat < d.size(); ++flat) {
        const auto idx = d.unravel(flat);
        double r2 = 0.0;
        for (int a = 0; a < d.dimension(); ++a) {
            const auto ai = static_cast<std::size_t>(a);
            double dx = d.coordinate(a, idx[ai]) - centre[ai];
            if (d.periodic()) {
                const double L = d.lengths()[ai];
                dx -= L * std::round(dx / L);
            }
            r2 += dx * dx;
        }
        out[flat] = amplitude * std::exp(-0.5 * r2 / (width * width));
    }
    return out;
}

std::array<double, 3> random_centre(const DomainSpec& d, std::mt19937_64& rng) {
    std::array<double, 3> c{0.0, 0.0, 0.0};
    for (int a = 0; a < d.dimension(); ++a) {
        const double L = d.lengths()[static_cast<std::size_t>(a)];
        // Keep Dirichlet bumps away from the walls.
        c[static_cast<std::size_t>(a)] = d.periodic() ? L * unit_uniform(rng) : L * (0.2 + 0.6 * unit_uniform(rng));
    }
    return c;
}

}  // namespace

State initial_state(const DomainPtr& domain, std::uint64_t seed, int index, int starts) {
    const DomainSpec& d = *domain;
    std::mt19937_64 rng(seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(index + 1));
    double diameter = 0.0;
    for (double L : d.lengths()) {
        diameter += L * L;
    }
    diameter = std::sqrt(diameter);
    const double width = diameter / 8.0;

    const bool sign_free = starts > 1 && index == starts - 1;
    if (!sign_free) {
        return {gaussian_bump(domain, random_centre(d, rng), width, 1.0),
                gaussian_bump(domain, random_centre(d, rng), width, 1.0)};
    }
    State s = State::zeros(domain);
    for (int k = 0; k < 4; ++k) {
        const double su = unit_uniform(rng) < 0.5 ? -1.0 : 1.0;
        const double sv = unit_uniform(rng) < 0.5 ? -1.0 : 1.0;
        s.u.axpy(su, gaussian_bump(domain, random_centre(d, rng), width, 1.0));
        s.v.axpy(sv, gaussian_bump(domain, random_centre(d, rng), width, 1.0));
    }
    return s;
}

namespace {

State absolute(const State& s) {
    State out = s;
    for (double& x : out.u.mutable_values()) {
        x = std::abs(x);
    }
    for (double& x : out.v.mutable_values()) {
        x = std::abs(x);
    }
    return out;
}

double min_value(const State& s) {
    double m = std::numeric_limits<double>::infinity();
    for (double x : s.u.values()) {
        m = std::min(m, x);
    }
    for (double x : s.v.values()) {
        m = std::min(m, x);
    }
    return m;
}

}  // namespace

GroundStateResult find_ground_state(const ProblemSpec& spec, const SolveConfig& config) {
    if (config.starts < 1) {
        throw std::invalid_argument("find_ground_state: need at least one start");
    }
    const Preconditioner precond(spec);
    const bool bounded = !spec.domain->periodic();
    GroundStateResult result;
    bool have = false;
    std::ostringstream failures;
    for (int k = 0; k < config.starts; ++k) {
        State init = initial_state(spec.domain, config.seed, k, config.starts);
        if (bounded) {
            init = absolute(init);
        }
        auto [rep, s] = minimize_on_nehari(spec, config, init, precond);
        if (bounded && min_value(s) < -1e-10 * max_abs(s)) {
            // Replacing (u, v) by (|u|, |v|) does not increase J; restart from there.
            const int before = rep.iterations;
            std::tie(rep, s) = minimize_on_nehari(spec, config, absolute(s), precond);
            rep.iterations += before;
        }
        rep.start_index = k;
        result.starts.push_back(rep);
        if (!rep.converged()) {
            failures << fmt::format("start {}: {} after {} iterations, residual {:.3e}. {}\n", k, to_string(rep.status),
                                    rep.iterations, rep.grad_residual, rep.diagnostics);
            continue;
        }
        if (!have || rep.energy < result.report.energy) {
            result.report = rep;
            result.state = std::move(s);
            have = true;
        }
    }
    if (!have) {
        throw SolverStall("find_ground_state: no start converged\n" + failures.str());
    }
    return result;
}

// ---------------------------------------------------------------------------

Recentered recenter(const State& s) {
    const DomainSpec& d = s.domain();
    if (!d.periodic()) {
        throw DomainError("recenter: only defined on periodic domains");
    }
    const double radius = 1.0 + std::sqrt(static_cast<double>(d.dimension()));
    const LocalMass lm = local_mass_sup(s.u, s.v, radius);
    const int m = d.points_per_cell();
    Recentered out;
    std::vector<int> z(static_cast<std::size_t>(d.dimension()));
    for (int a = 0; a < d.dimension(); ++a) {
        const auto ai = static_cast<std::size_t>(a);
        const int mid = d.extent(a) / 2;
        const int cells = static_cast<int>(std::floor(static_cast<double>(mid) / m)) -
                          static_cast<int>(std::floor(static_cast<double>(lm.center[ai]) / m));
        z[ai] = cells;
        out.shift[ai] = cells;
    }
    out.state = shift(s, z);
    return out;
}

State m_map(const ProblemSpec& spec, const State& w) {
    if (w.is_zero()) {
        throw DomainError("m_map: zero input");
    }
    const double n = norm(spec, w);
    if (std::abs(n - 1.0) > 1e-8) {
        throw DomainError(fmt::format("m_map: input must have unit norm (got {})", n));
    }
    return fibering_project(spec, w).second;
}

State m_inverse(const ProblemSpec& spec, const State& s) {
    if (s.is_zero()) {
        throw DomainError("m_inverse: zero input");
    }
    const double n2 = norm_sq(spec, s);
    const double xi = nehari_xi(spec, s);
    if (std::abs(xi) > 1e-8 * n2) {
        throw DomainError(fmt::format("m_inverse: state is not on the Nehari manifold (xi = {:.3e})", xi));
    }
    State w = s.scaled(1.0 / std::sqrt(n2));
    return w.scaled(1.0 / norm(spec, w));
}

DecayFit decay_fit(const State& s) {
    const DomainSpec& d = s.domain();
    if (!d.periodic()) {
        throw DomainError("decay_fit: only defined on periodic domains");
    }
    std::vector<double> amp(d.size());
    double peak = 0.0;
    std::size_t peak_at = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        amp[i] = std::abs(s.u[i]) + std::abs(s.v[i]);
        if (amp[i] > peak) {
            peak = amp[i];
            peak_at = i;
        }
    }
    DecayFit fit;
    fit.lower = 1e-12 * peak;
    fit.upper = 1e-3 * peak;
    fit.center = d.unravel(peak_at);

    double n = 0.0;
    double sx = 0.0;
    double sy = 0.0;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (amp[i] < fit.lower || amp[i] > fit.upper) {
            continue;
        }
        const double x = node_distance(d, d.unravel(i), fit.center);
        const double y = std::log(amp[i]);
        n += 1.0;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
    }
    fit.samples = static_cast<int>(n);
    if (fit.samples < 30) {
        throw DomainError(fmt::format("decay_fit: insufficient decay window ({} admissible nodes)", fit.samples));
    }
    const double cov = sxy - sx * sy / n;
    const double varx = sxx - sx * sx / n;
    const double vary = syy - sy * sy / n;
    const double slope = cov / varx;
    const double intercept = (sy - slope * sx) / n;
    fit.alpha = -slope;
    fit.C = std::exp(intercept);
    fit.r_squared = vary > 0.0 ? (cov * cov) / (varx * vary) : 1.0;
    return fit;
}

}  // namespace nehari
