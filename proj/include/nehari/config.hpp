#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nehari/solver.hpp"

namespace nehari {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unsampled problem description as written in a config file.
struct ProblemSource {
    BoundaryKind kind = BoundaryKind::dirichlet;
    std::vector<double> lengths{1.0};  ///< Dirichlet box edge lengths
    std::vector<int> points{256};      ///< Dirichlet interior nodes per axis
    std::vector<int> periods{16, 16};  ///< periodic torus
    int points_per_cell = 16;
    double q = 3.0;
    std::vector<PowerTerm> f1{{1.0, 4.0}};
    std::vector<PowerTerm> f2{{1.0, 4.0}};
    std::string V1 = "1";
    std::string V2 = "1";
    std::string lambda = "0.3";
    double delta = 0.0;
    /// Optional ray direction for the fibering command.
    std::string u0;
    std::string v0;

    DomainSpec domain() const;
    /// Samples the fields; does not run the hypothesis checks.
    ProblemSpec build() const;
};

struct RunConfig {
    std::string command = "ground";
    ProblemSource problem;
    SolveConfig solve;
    int target_count = 3;
    int collapse_budget = 8;
    double sigma = 1.0;
    int k_max = 30;
    int fibering_samples = 200;
    std::string output_dir = "out";
    std::string label = "run";
};

/// The bounded 1D and periodic 2D default problems.
RunConfig default_bounded();
RunConfig default_periodic();

std::vector<PowerTerm> parse_terms(std::string_view text);
std::string format_terms(const std::vector<PowerTerm>& terms);

/// `key = value` lines, optional top-level `command`, sections [problem],
/// [solve], [output]; '#' and ';' start comment lines; expressions quoted.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);
std::string emit_config(const RunConfig& config);

const std::vector<std::string>& command_names();

}  // namespace nehari
