#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nehari/solver.hpp"

namespace nehari {

struct EigenPair {
    double value = 0.0;
    State vector;    ///< unit ||.||-norm
    int component = 0;  ///< 0: u-block, 1: v-block
};

/// First k eigenpairs of (-Delta_h + V1) (+) (-Delta_h + V2), ascending,
/// orthonormal in the ||.|| inner product. Dense solve; limited to
/// 10000 unknowns per component.
std::vector<EigenPair> eigenbasis(const ProblemSpec& spec, int k);

struct OrbitMatch {
    double distance = 0.0;
    std::array<int, 3> shift{0, 0, 0};
    int sign = 1;
};

/// min over integer torus shifts z and signs of ||s1 - (+-)tau_z s2||.
/// On Dirichlet domains only the sign quotient applies.
OrbitMatch orbit_match(const ProblemSpec& spec, const State& s1, const State& s2);
double orbit_distance(const ProblemSpec& spec, const State& s1, const State& s2);

struct SolutionEntry {
    State state;
    SolveReport report;
};

struct SolutionSet {
    std::vector<SolutionEntry> entries;
    /// Distinct solutions whose energy coincides with an entry's level
    /// (e.g. images under a symmetry of the data that is not a translation).
    std::vector<SolutionEntry> degenerate;
    std::vector<std::vector<double>> pairwise_distances;

    /// Keeps entries sorted by energy and refreshes the distance matrix.
    void sort_and_measure(const ProblemSpec& spec);
};

/// Distinctness threshold 1e-4 * max(||s1||, ||s2||).
double distinct_threshold(const ProblemSpec& spec, const State& s1, const State& s2);

struct DeflationConfig {
    double sigma = 1.0;
    int deflated_iters = 400;
    int newton_iters = 60;
    int attempt = 0;  ///< selects the initial state
};

enum class SearchOutcome { found, collapsed, failed };
const char* to_string(SearchOutcome o);

struct SearchResult {
    SearchOutcome outcome = SearchOutcome::failed;
    SolveReport report;
    State state;
    std::string diagnostics;
    double deflated_energy = 0.0;
};

/// Deflated factor prod_k (1 + sigma / (d_k / ||s_k||)^2).
double deflation_factor(const ProblemSpec& spec, const State& s, const std::vector<const State*>& known,
                        double sigma);

/// Newton iteration on grad_l2 = 0 (converges to critical points of any
/// index). Report status is converged when ||grad_l2|| / ||s|| <= grad_tol.
std::pair<SolveReport, State> newton_polish(const ProblemSpec& spec, const SolveConfig& config, const State& init,
                                            int max_iters = 60);

/// Minimises the deflated energy on the Nehari manifold, then polishes on J.
SearchResult deflated_search(const ProblemSpec& spec, const SolveConfig& config, const SolutionSet& known,
                             const DeflationConfig& deflation = {});

struct MultiplicityResult {
    SolutionSet set;
    int attempts = 0;
    int collapsed = 0;
    std::vector<std::string> log;
};

/// Ground state followed by deflated searches until `target_count` distinct
/// critical levels are found or `collapse_budget` searches collapse.
MultiplicityResult find_multiple(const ProblemSpec& spec, const SolveConfig& config, int target_count,
                                 int collapse_budget, double sigma = 1.0);

struct FountainReport {
    int k_max = 0;
    double p = 0.0;
    double c_tilde = 0.0;
    std::vector<double> beta;
    std::vector<double> r;
    std::vector<double> b_lower;
    std::vector<std::pair<double, double>> a_check;  ///< (rho_k, max sampled J on the rho_k-sphere of Y_k)

    bool beta_nonincreasing() const;
    bool a_nonpositive() const;
};

/// beta_k, r_k, the b_k lower bound and the (rho_k, a_k) check on the
/// eigenbasis span. Z_k = span(e_k .. e_{k_max + buffer}).
FountainReport fountain_diagnostics(const ProblemSpec& spec, int k_max, std::uint64_t seed = 1, int buffer = 30,
                                    int restarts = 20);

}  // namespace nehari
