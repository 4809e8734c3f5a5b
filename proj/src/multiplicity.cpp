#include "nehari/multiplicity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Dense>
#include <Eigen/SparseLU>
#include <fmt/format.h>

namespace nehari {

namespace {

constexpr std::size_t kMaxDenseUnknowns = 10000;

// Triplets of the nodal matrix (-Delta_h + V).
std::vector<Eigen::Triplet<double>> operator_triplets(const GridFunction& potential, std::size_t offset) {
    const DomainSpec& d = potential.domain();
    const auto strides = d.strides();
    std::vector<Eigen::Triplet<double>> out;
    out.reserve(d.size() * static_cast<std::size_t>(2 * d.dimension() + 1));
    for (std::size_t flat = 0; flat < d.size(); ++flat) {
        const auto idx = d.unravel(flat);
        double diag = potential[flat];
        for (int a = 0; a < d.dimension(); ++a) {
            const auto ai = static_cast<std::size_t>(a);
            const double w = 1.0 / (d.spacing(a) * d.spacing(a));
            diag += 2.0 * w;
            const int n = d.extent(a);
            for (int step : {-1, 1}) {
                int j = idx[ai] + step;
                if (j < 0 || j >= n) {
                    if (!d.periodic()) {
                        continue;
                    }
                    j = (j + n) % n;
                }
                const auto nb = static_cast<std::size_t>(static_cast<long>(flat) +
                                                         static_cast<long>(j - idx[ai]) * static_cast<long>(strides[ai]));
                out.emplace_back(static_cast<int>(offset + flat), static_cast<int>(offset + nb), -w);
            }
        }
        out.emplace_back(static_cast<int>(offset + flat), static_cast<int>(offset + flat), diag);
    }
    return out;
}

Eigen::MatrixXd dense_operator(const GridFunction& potential) {
    const auto n = static_cast<Eigen::Index>(potential.size());
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    for (const auto& t : operator_triplets(potential, 0)) {
        A(t.row(), t.col()) += t.value();
    }
    return A;
}

double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double unit_normal(std::mt19937_64& rng) {
    const double a = 1.0 - unit_uniform(rng);
    const double b = unit_uniform(rng);
    return std::sqrt(-2.0 * std::log(a)) * std::cos(2.0 * 3.141592653589793 * b);
}

}  // namespace

std::vector<EigenPair> eigenbasis(const ProblemSpec& spec, int k) {
    const std::size_t n = spec.domain->size();
    if (k < 1 || static_cast<std::size_t>(k) > 2 * n) {
        throw DomainError(fmt::format("eigenbasis: k = {} outside 1..{}", k, 2 * n));
    }
    if (n > kMaxDenseUnknowns) {
        throw DomainError(fmt::format("eigenbasis: {} unknowns per component exceeds the dense limit {}", n,
                                      kMaxDenseUnknowns));
    }
    const double h = spec.domain->cell_volume();
    std::vector<EigenPair> pairs;
    for (int c = 0; c < 2; ++c) {
        const GridFunction& V = c == 0 ? spec.V1 : spec.V2;
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_operator(V));
        if (es.info() != Eigen::Success) {
            throw ConvergenceError("eigenbasis: dense eigensolver failed");
        }
        const int take = std::min<int>(k, static_cast<int>(n));
        for (int j = 0; j < take; ++j) {
            EigenPair p;
            p.value = es.eigenvalues()(j);
            p.component = c;
            p.vector = State::zeros(spec.domain);
            GridFunction& w = c == 0 ? p.vector.u : p.vector.v;
            // Fix the sign so the first significant entry is positive.
            const auto col = es.eigenvectors().col(j);
            Eigen::Index lead = 0;
            col.cwiseAbs().maxCoeff(&lead);
            const double sign = col(lead) < 0.0 ? -1.0 : 1.0;
            const double scale = sign / std::sqrt(h * p.value);
            for (std::size_t i = 0; i < n; ++i) {
                w[i] = scale * col(static_cast<Eigen::Index>(i));
            }
            pairs.push_back(std::move(p));
        }
    }
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const EigenPair& a, const EigenPair& b) { return a.value < b.value; });
    pairs.resize(static_cast<std::size_t>(k));
    return pairs;
}

// ---------------------------------------------------------------------------

OrbitMatch orbit_match(const ProblemSpec& spec, const State& s1, const State& s2) {
    s1.require_same_grid(s2, "orbit_distance");
    const DomainSpec& d = s1.domain();
    OrbitMatch best;
    if (!d.periodic()) {
        const double plus = norm(spec, s1 - s2);
        const double minus = norm(spec, s1 + s2);
        best.distance = std::min(plus, minus);
        best.sign = minus < plus ? -1 : 1;
        return best;
    }
    // ||s1 -+ tau s2||^2 = ||s1||^2 + ||s2||^2 -+ 2 <A s1, tau s2>; screen every
    // shift with the pairing, then evaluate the winner directly.
    State Aw{laplacian_apply(s1.u), laplacian_apply(s1.v)};
    {
        auto a = Aw.u.mutable_values();
        auto b = Aw.v.mutable_values();
        for (std::size_t i = 0; i < a.size(); ++i) {
            a[i] += spec.V1[i] * s1.u[i];
            b[i] += spec.V2[i] * s1.v[i];
        }
    }
    const int dim = d.dimension();
    std::array<int, 3> periods{1, 1, 1};
    for (int a = 0; a < dim; ++a) {
        periods[static_cast<std::size_t>(a)] = d.period(a);
    }
    double best_pair = -std::numeric_limits<double>::infinity();
    std::array<int, 3> z{0, 0, 0};
    for (z[0] = 0; z[0] < periods[0]; ++z[0]) {
        for (z[1] = 0; z[1] < periods[1]; ++z[1]) {
            for (z[2] = 0; z[2] < periods[2]; ++z[2]) {
                const State t = shift(s2, std::span<const int>(z.data(), static_cast<std::size_t>(dim)));
                const double pairing = inner_l2(Aw, t);
                if (std::abs(pairing) > best_pair) {
                    best_pair = std::abs(pairing);
                    best.shift = z;
                    best.sign = pairing < 0.0 ? -1 : 1;
                }
            }
        }
    }
    State t = shift(s2, std::span<const int>(best.shift.data(), static_cast<std::size_t>(dim)));
    best.distance = best.sign > 0 ? norm(spec, s1 - t) : norm(spec, s1 + t);
    return best;
}

double orbit_distance(const ProblemSpec& spec, const State& s1, const State& s2) {
    return orbit_match(spec, s1, s2).distance;
}

double distinct_threshold(const ProblemSpec& spec, const State& s1, const State& s2) {
    return 1e-4 * std::max(norm(spec, s1), norm(spec, s2));
}

void SolutionSet::sort_and_measure(const ProblemSpec& spec) {
    std::stable_sort(entries.begin(), entries.end(),
                     [](const SolutionEntry& a, const SolutionEntry& b) { return a.report.energy < b.report.energy; });
    const std::size_t n = entries.size();
    pairwise_distances.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dij = orbit_distance(spec, entries[i].state, entries[j].state);
            pairwise_distances[i][j] = dij;
            pairwise_distances[j][i] = dij;
        }
    }
}

const char* to_string(SearchOutcome o) {
    switch (o) {
        case SearchOutcome::found:
            return "found";
        case SearchOutcome::collapsed:
            return "collapsed";
        case SearchOutcome::failed:
            return "failed";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------

namespace {

struct Deflation {
    double factor = 1.0;
    // factor-weighted d(factor)/d(d_k^2) and the matched representatives
    std::vector<double> weights;
    std::vector<State> reps;
};

Deflation deflate(const ProblemSpec& spec, const State& s, const std::vector<const State*>& known, double sigma) {
    Deflation out;
    for (const State* k : known) {
        const OrbitMatch m = orbit_match(spec, s, *k);
        const double n2 = norm_sq(spec, *k);
        const double d2 = m.distance * m.distance;
        const double term = 1.0 + sigma * n2 / d2;
        out.factor *= term;
        out.weights.push_back(-sigma * n2 / (d2 * d2) / term);
        const int dim = s.domain().dimension();
        State rep = s.domain().periodic() ? shift(*k, std::span<const int>(m.shift.data(), static_cast<std::size_t>(dim)))
                                          : *k;
        if (m.sign < 0) {
            rep *= -1.0;
        }
        out.reps.push_back(std::move(rep));
    }
    for (double& w : out.weights) {
        w *= out.factor;
    }
    return out;
}

Eigen::SparseMatrix<double> hessian(const ProblemSpec& spec, const State& s) {
    const std::size_t n = s.domain().size();
    auto trip = operator_triplets(spec.V1, 0);
    auto second = operator_triplets(spec.V2, n);
    trip.insert(trip.end(), second.begin(), second.end());
    const double qm2 = spec.q - 2.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto iu = static_cast<int>(i);
        const auto iv = static_cast<int>(n + i);
        trip.emplace_back(iu, iu, -spec.f1.f_prime(s.u[i]) + (spec.q - 1.0) * abs_pow(s.u[i], qm2));
        trip.emplace_back(iv, iv, -spec.f2.f_prime(s.v[i]) + (spec.q - 1.0) * abs_pow(s.v[i], qm2));
        trip.emplace_back(iu, iv, -spec.lambda[i]);
        trip.emplace_back(iv, iu, -spec.lambda[i]);
    }
    Eigen::SparseMatrix<double> H(static_cast<Eigen::Index>(2 * n), static_cast<Eigen::Index>(2 * n));
    H.setFromTriplets(trip.begin(), trip.end());
    H.makeCompressed();
    return H;
}

}  // namespace

double deflation_factor(const ProblemSpec& spec, const State& s, const std::vector<const State*>& known,
                        double sigma) {
    return deflate(spec, s, known, sigma).factor;
}

std::pair<SolveReport, State> newton_polish(const ProblemSpec& spec, const SolveConfig& config, const State& init,
                                            int max_iters) {
    SolveReport rep;
    State s = init;
    const std::size_t n = s.domain().size();
    rep.status = SolveStatus::max_iters;
    rep.rho_estimate = norm(spec, s);
    int it = 0;
    for (;; ++it) {
        const State g = grad_l2(spec, s);
        const double gnorm = std::sqrt(inner_l2(g, g));
        const double snorm = norm(spec, s);
        rep.grad_residual = snorm > 0.0 ? gnorm / snorm : std::numeric_limits<double>::infinity();
        if (rep.grad_residual <= config.grad_tol) {
            rep.status = SolveStatus::converged;
            break;
        }
        if (it >= max_iters || snorm == 0.0) {
            break;
        }
        Eigen::VectorXd rhs(static_cast<Eigen::Index>(2 * n));
        for (std::size_t i = 0; i < n; ++i) {
            rhs(static_cast<Eigen::Index>(i)) = -g.u[i];
            rhs(static_cast<Eigen::Index>(n + i)) = -g.v[i];
        }
        Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
        lu.compute(hessian(spec, s));
        if (lu.info() != Eigen::Success) {
            rep.status = SolveStatus::stalled;
            rep.diagnostics = fmt::format("singular Hessian at Newton iteration {}", it);
            break;
        }
        const Eigen::VectorXd dx = lu.solve(rhs);
        State step = State::zeros(s.domain_ptr());
        for (std::size_t i = 0; i < n; ++i) {
            step.u[i] = dx(static_cast<Eigen::Index>(i));
            step.v[i] = dx(static_cast<Eigen::Index>(n + i));
        }
        // Damped step on the residual norm.
        double alpha = 1.0;
        bool accepted = false;
        for (int bt = 0; bt < 30; ++bt) {
            State trial = s;
            trial.axpy(alpha, step);
            const State gt = grad_l2(spec, trial);
            if (trial.all_finite() && std::sqrt(inner_l2(gt, gt)) < (1.0 - 1e-4 * alpha) * gnorm) {
                s = std::move(trial);
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted) {
            rep.status = SolveStatus::stalled;
            rep.diagnostics = fmt::format("Newton damping failed at iteration {} (residual {:.3e})", it,
                                          rep.grad_residual);
            break;
        }
        rep.rho_estimate = std::min(rep.rho_estimate, norm(spec, s));
    }
    rep.iterations = it;
    rep.energy = energy(spec, s).total;
    rep.norm = norm(spec, s);
    rep.xi_residual = std::abs(nehari_xi(spec, s));
    rep.accepted_energies.push_back(rep.energy);
    return {std::move(rep), std::move(s)};
}

SearchResult deflated_search(const ProblemSpec& spec, const SolveConfig& config, const SolutionSet& known,
                             const DeflationConfig& deflation) {
    std::vector<const State*> refs;
    for (const auto& e : known.entries) {
        refs.push_back(&e.state);
    }
    for (const auto& e : known.degenerate) {
        refs.push_back(&e.state);
    }
    SearchResult out;
    if (refs.empty()) {
        const GroundStateResult g = find_ground_state(spec, config);
        out.outcome = SearchOutcome::found;
        out.report = g.report;
        out.state = g.state;
        out.deflated_energy = g.report.energy;
        return out;
    }

    const Preconditioner precond(spec);
    const State init = initial_state(spec.domain, config.seed + static_cast<std::uint64_t>(deflation.attempt),
                                     deflation.attempt % 2, 2);
    State s = fibering_project(spec, init).second;
    double J = energy(spec, s).total;
    Deflation df = deflate(spec, s, refs, deflation.sigma);
    double D = J * df.factor;
    int it = 0;
    for (; it < deflation.deflated_iters; ++it) {
        const State g2 = grad_l2(spec, s);
        State G = precond.apply(g2);
        G *= df.factor;
        for (std::size_t k = 0; k < refs.size(); ++k) {
            G.axpy(2.0 * J * df.weights[k], s - df.reps[k]);
        }
        // Drop the radial part; the projection undoes it.
        G.axpy(-inner_e(spec, G, s) / norm_sq(spec, s), s);
        const double slope = norm_sq(spec, G);
        if (std::sqrt(slope) <= 1e-7 * D) {
            break;
        }
        double step = config.initial_step;
        bool accepted = false;
        for (int bt = 0; bt <= config.max_backtracks; ++bt) {
            State trial = s;
            trial.axpy(-step, G);
            if (!trial.is_zero()) {
                State projected = fibering_project(spec, trial).second;
                const double Jt = energy(spec, projected).total;
                Deflation dt = deflate(spec, projected, refs, deflation.sigma);
                const double Dt = Jt * dt.factor;
                if (Dt <= D - config.armijo_c1 * step * slope) {
                    s = std::move(projected);
                    J = Jt;
                    D = Dt;
                    df = std::move(dt);
                    accepted = true;
                    break;
                }
            }
            step *= config.backtrack;
        }
        if (!accepted) {
            break;
        }
    }
    out.deflated_energy = D;

    auto [rep, polished] = newton_polish(spec, config, s, deflation.newton_iters);
    rep.iterations += it;
    rep.start_index = deflation.attempt;
    out.report = rep;
    out.state = std::move(polished);
    if (!rep.converged()) {
        out.outcome = SearchOutcome::failed;
        out.diagnostics = fmt::format("polish did not converge after {} deflated steps: {}", it, rep.diagnostics);
        return out;
    }
    if (rep.norm < 0.5 * rep.rho_estimate || out.state.is_zero()) {
        out.outcome = SearchOutcome::collapsed;
        out.diagnostics = "polish converged to the trivial solution";
        return out;
    }
    for (std::size_t k = 0; k < refs.size(); ++k) {
        const double dk = orbit_distance(spec, out.state, *refs[k]);
        if (dk <= distinct_threshold(spec, out.state, *refs[k])) {
            out.outcome = SearchOutcome::collapsed;
            out.diagnostics = fmt::format("polish returned to known solution {} (orbit distance {:.3e})", k, dk);
            return out;
        }
    }
    out.outcome = SearchOutcome::found;
    out.diagnostics = fmt::format("{} deflated steps, deflated energy {:.10g}", it, D);
    return out;
}

MultiplicityResult find_multiple(const ProblemSpec& spec, const SolveConfig& config, int target_count,
                                 int collapse_budget, double sigma) {
    MultiplicityResult res;
    const GroundStateResult g = find_ground_state(spec, config);
    res.set.entries.push_back({g.state, g.report});
    res.log.push_back(fmt::format("ground state: energy {:.15g}, residual {:.3e}", g.report.energy,
                                  g.report.grad_residual));
    const double level_gap = 1e-6 * std::abs(g.report.energy);
    int failures = 0;
    while (static_cast<int>(res.set.entries.size()) < target_count && res.collapsed + failures < collapse_budget) {
        DeflationConfig dc;
        dc.sigma = sigma;
        dc.attempt = res.attempts;
        ++res.attempts;
        SearchResult r = deflated_search(spec, config, res.set, dc);
        std::string line = fmt::format("attempt {}: {} energy {:.15g} residual {:.3e}; {}", dc.attempt,
                                       to_string(r.outcome), r.report.energy, r.report.grad_residual, r.diagnostics);
        if (r.outcome == SearchOutcome::collapsed) {
            ++res.collapsed;
        } else if (r.outcome == SearchOutcome::failed) {
            ++failures;
        } else {
            const bool same_level =
                std::any_of(res.set.entries.begin(), res.set.entries.end(), [&](const SolutionEntry& e) {
                    return std::abs(e.report.energy - r.report.energy) <= level_gap;
                });
            if (same_level) {
                res.set.degenerate.push_back({std::move(r.state), r.report});
                line += " (degenerate level)";
            } else {
                res.set.entries.push_back({std::move(r.state), r.report});
            }
            res.set.sort_and_measure(spec);
        }
        res.log.push_back(std::move(line));
    }
    res.set.sort_and_measure(spec);
    return res;
}

// ---------------------------------------------------------------------------

namespace {

// |u|_p + |v|_p of sum_j c_j e_j and its coefficient gradient.
struct LpObjective {
    const std::vector<EigenPair>* basis;
    std::size_t first;
    double p;

    State combine(const Eigen::VectorXd& c) const {
        State w = State::zeros((*basis)[first].vector.domain_ptr());
        for (Eigen::Index j = 0; j < c.size(); ++j) {
            w.axpy(c(j), (*basis)[first + static_cast<std::size_t>(j)].vector);
        }
        return w;
    }

    double value(const State& w) const { return lp_norm(w.u, p) + lp_norm(w.v, p); }

    Eigen::VectorXd gradient(const State& w) const {
        State field = State::zeros(w.domain_ptr());
        const auto fill = [&](const GridFunction& x, GridFunction& out) {
            const double n = lp_norm(x, p);
            if (n == 0.0) {
                return;
            }
            const double scale = std::pow(n, 1.0 - p);
            for (std::size_t i = 0; i < x.size(); ++i) {
                out[i] = scale * abs_pow(x[i], p - 2.0) * x[i];
            }
        };
        fill(w.u, field.u);
        fill(w.v, field.v);
        const std::size_t dim = basis->size() - first;
        Eigen::VectorXd g(static_cast<Eigen::Index>(dim));
        for (std::size_t j = 0; j < dim; ++j) {
            g(static_cast<Eigen::Index>(j)) = inner_l2(field, (*basis)[first + j].vector);
        }
        return g;
    }
};

// Projected gradient ascent on the unit coefficient sphere.
std::pair<double, Eigen::VectorXd> ascend(const LpObjective& obj, Eigen::VectorXd c) {
    c.normalize();
    State w = obj.combine(c);
    double val = obj.value(w);
    double eta = 1.0;
    for (int it = 0; it < 300; ++it) {
        Eigen::VectorXd g = obj.gradient(w);
        g -= g.dot(c) * c;
        if (g.norm() <= 1e-12 * val) {
            break;
        }
        bool improved = false;
        for (int bt = 0; bt < 40; ++bt) {
            Eigen::VectorXd trial = (c + eta * g).normalized();
            State wt = obj.combine(trial);
            const double vt = obj.value(wt);
            if (vt > val) {
                const double gain = vt - val;
                c = std::move(trial);
                w = std::move(wt);
                val = vt;
                improved = true;
                eta *= 2.0;
                if (gain <= 1e-13 * val) {
                    return {val, c};
                }
                break;
            }
            eta *= 0.5;
        }
        if (!improved) {
            break;
        }
    }
    return {val, c};
}

}  // namespace

bool FountainReport::beta_nonincreasing() const {
    for (std::size_t k = 1; k < beta.size(); ++k) {
        if (beta[k] > beta[k - 1]) {
            return false;
        }
    }
    return true;
}

bool FountainReport::a_nonpositive() const {
    return std::all_of(a_check.begin(), a_check.end(), [](const auto& a) { return a.second <= 0.0; });
}

FountainReport fountain_diagnostics(const ProblemSpec& spec, int k_max, std::uint64_t seed, int buffer,
                                    int restarts) {
    if (k_max < 1) {
        throw std::invalid_argument("fountain_diagnostics: k_max must be positive");
    }
    const int total = k_max + buffer;
    const std::vector<EigenPair> basis = eigenbasis(spec, total);
    FountainReport rep;
    rep.k_max = k_max;
    rep.p = std::max(spec.f1.growth_exponent(), spec.f2.growth_exponent());
    rep.c_tilde = std::max(growth_constant(spec.f1), growth_constant(spec.f2));
    const double p = rep.p;
    const double one_minus_delta = 1.0 - spec.delta;
    const double measure = spec.domain->measure();

    std::mt19937_64 rng(seed);
    rep.beta.assign(static_cast<std::size_t>(k_max), 0.0);
    Eigen::VectorXd carried;
    for (int k = k_max; k >= 1; --k) {
        const auto first = static_cast<std::size_t>(k - 1);
        const LpObjective obj{&basis, first, p};
        const auto dim = static_cast<Eigen::Index>(basis.size() - first);
        double best = -1.0;
        Eigen::VectorXd best_c;
        for (int r = 0; r <= restarts; ++r) {
            Eigen::VectorXd c(dim);
            if (r == restarts) {
                if (carried.size() == 0) {
                    continue;
                }
                // Z_{k+1} is a subspace of Z_k: start from its maximiser.
                c.setZero();
                c.tail(carried.size()) = carried;
            } else {
                for (Eigen::Index j = 0; j < dim; ++j) {
                    c(j) = unit_normal(rng);
                }
            }
            auto [val, cc] = ascend(obj, c);
            if (val > best) {
                best = val;
                best_c = std::move(cc);
            }
        }
        rep.beta[first] = best;
        carried = best_c;
    }

    for (int k = 1; k <= k_max; ++k) {
        const double beta = rep.beta[static_cast<std::size_t>(k - 1)];
        const double base = 2.0 * rep.c_tilde * p / one_minus_delta * std::pow(beta, p);
        const double r = std::pow(base, 1.0 / (2.0 - p));
        rep.r.push_back(r);
        rep.b_lower.push_back(one_minus_delta * (0.5 - 1.0 / p) * std::pow(base, 2.0 / (2.0 - p)) -
                              2.0 * rep.c_tilde * measure);

        // Sampled directions on the unit sphere of Y_k = span(e_1..e_k).
        std::vector<RayProfile> rays;
        for (int j = 0; j < k; ++j) {
            rays.emplace_back(spec, basis[static_cast<std::size_t>(j)].vector);
        }
        for (int sample = 0; sample < 32; ++sample) {
            State w = State::zeros(spec.domain);
            double n2 = 0.0;
            for (int j = 0; j < k; ++j) {
                const double c = unit_normal(rng);
                n2 += c * c;
                w.axpy(c, basis[static_cast<std::size_t>(j)].vector);
            }
            w *= 1.0 / std::sqrt(n2);
            rays.emplace_back(spec, w);
        }
        double rho = 2.0 * r;
        double worst = 0.0;
        for (;;) {
            worst = -std::numeric_limits<double>::infinity();
            for (const auto& ray : rays) {
                worst = std::max(worst, ray.value(rho));
            }
            if (worst <= 0.0) {
                break;
            }
            rho *= 2.0;
            if (rho > 0x1.0p40) {
                throw ConvergenceError(
                    fmt::format("fountain_diagnostics: no radius below 2^40 makes J nonpositive on Y_{}", k));
            }
        }
        rep.a_check.emplace_back(rho, worst);
    }
    return rep;
}

}  // namespace nehari
