#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nehari/run.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Ground states and multiple solutions of coupled Schrodinger systems on the Nehari manifold"};
    std::string command;
    std::string config_path;
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> label;
    app.add_option("command", command, "validate | ground | multiplicity | fountain | fibering | decay")
        ->required()
        ->check(CLI::IsMember(nehari::command_names()));
    app.add_option("--config", config_path, "run configuration file")->required()->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "output directory (overrides [output] dir)");
    app.add_option("--seed", seed, "random seed (overrides [solve] seed)");
    app.add_option("--label", label, "file prefix (overrides [output] label)");
    CLI11_PARSE(app, argc, argv);

    nehari::RunConfig config;
    try {
        config = nehari::load_config(config_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return nehari::exit_error;
    }
    config.command = command;
    if (out_dir) {
        config.output_dir = *out_dir;
    }
    if (seed) {
        config.solve.seed = *seed;
    }
    if (label) {
        config.label = *label;
    }
    return nehari::run(config, std::cout, std::cerr);
}
