#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nehari/energy.hpp"

namespace nehari {

struct SolveConfig {
    int max_iters = 3000;
    double grad_tol = 1e-8;
    double armijo_c1 = 1e-4;
    double backtrack = 0.5;
    double initial_step = 1.0;
    int max_backtracks = 60;
    int starts = 5;
    std::uint64_t seed = 1;
    /// Periodic domains only; 0 disables recentering during the descent.
    int recenter_every = 25;
};

enum class SolveStatus { converged, max_iters, stalled };
const char* to_string(SolveStatus s);

struct SolveReport {
    double energy = 0.0;
    double grad_residual = 0.0;  ///< ||grad_l2||_{L2} / ||s||
    double xi_residual = 0.0;    ///< |xi(s)|
    int iterations = 0;
    int start_index = 0;
    double norm = 0.0;
    /// Smallest ||.|| among the manifold iterates.
    double rho_estimate = 0.0;
    SolveStatus status = SolveStatus::converged;
    std::string diagnostics;
    /// Energy after every accepted step, accumulated from stably computed
    /// differences (exactly nonincreasing).
    std::vector<double> accepted_energies;

    bool converged() const { return status == SolveStatus::converged; }
};

class SolverStall : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// J(s + d) - J(s) evaluated without cancellation between the two energies.
double energy_difference(const ProblemSpec& spec, const State& s, const State& d);

/// Preconditioned Armijo descent on the Nehari manifold with the fibering
/// projection as retraction. Stops on the full-gradient residual.
std::pair<SolveReport, State> minimize_on_nehari(const ProblemSpec& spec, const SolveConfig& config,
                                                 const State& init);
/// Variant that reuses an existing preconditioner.
std::pair<SolveReport, State> minimize_on_nehari(const ProblemSpec& spec, const SolveConfig& config,
                                                 const State& init, const Preconditioner& precond);

struct GroundStateResult {
    SolveReport report;
    State state;
    std::vector<SolveReport> starts;
};

/// Deterministic initial states for start `index` (Gaussian bumps; the last
/// start of several is a sign-changing superposition).
State initial_state(const DomainPtr& domain, std::uint64_t seed, int index, int starts);

/// Multi-start minimisation; returns the lowest energy (ties by start index).
GroundStateResult find_ground_state(const ProblemSpec& spec, const SolveConfig& config);

struct Recentered {
    State state;
    std::array<int, 3> shift{0, 0, 0};
};

/// Integer shift moving the densest ball of radius 1 + sqrt(N) into the
/// unit cell containing the torus midpoint.
Recentered recenter(const State& s);

/// Unit sphere -> manifold: w -> t_w w.
State m_map(const ProblemSpec& spec, const State& w);
/// Manifold -> unit sphere: s -> s / ||s||.
State m_inverse(const ProblemSpec& spec, const State& s);

struct DecayFit {
    double C = 0.0;
    double alpha = 0.0;
    double r_squared = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    int samples = 0;
    std::array<int, 3> center{0, 0, 0};
};

/// Least-squares fit of log(|u| + |v|) against the distance to the peak over
/// nodes with amplitude in [1e-12, 1e-3] * max.
DecayFit decay_fit(const State& s);

}  // namespace nehari
