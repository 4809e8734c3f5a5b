#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "helpers.hpp"
#include "nehari/io.hpp"
#include "nehari/run.hpp"

using namespace nehari;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("nehari_cli_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run_captured(const RunConfig& c) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(c, out, err);
    return {code, out.str(), err.str()};
}

RunConfig small_bounded(const std::string& command, const fs::path& dir) {
    RunConfig c = default_bounded();
    c.command = command;
    c.problem.points = {64};
    c.solve.starts = 2;
    c.output_dir = dir.string();
    c.label = command;
    return c;
}

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("config round trip") {
        RunConfig c = default_periodic();
        c.command = "decay";
        c.problem.f1 = {{1.0, 3.5}, {0.5, 4.5}};
        c.problem.V1 = "1 + 0.5*cos(6.283185307179586*x1)";
        c.problem.u0 = "exp(-x1*x1)";
        c.problem.delta = 0.125;
        c.solve.seed = 99;
        c.solve.grad_tol = 3e-9;
        c.k_max = 12;
        c.label = "rt";
        const std::string text = emit_config(c);
        const RunConfig back = parse_config(text);
        CHECK(emit_config(back) == text);
        CHECK(back.problem.f1.size() == 2);
        CHECK(back.problem.f1[1].exponent == 4.5);
        CHECK(back.solve.grad_tol == 3e-9);
        CHECK(back.solve.seed == 99);
        CHECK(back.problem.periods == std::vector<int>{16, 16});
        CHECK(emit_config(parse_config(emit_config(default_bounded()))) == emit_config(default_bounded()));
    }

    TEST_CASE("config errors") {
        CHECK_THROWS_AS(parse_config("[problem]\nbogus = 1\n"), ConfigError);
        CHECK_THROWS_AS(parse_config("[extra]\nx = 1\n"), ConfigError);
        CHECK_THROWS_AS(parse_config("command = launch\n"), ConfigError);
        CHECK_THROWS_AS(parse_config("[problem]\nq = three\n"), ConfigError);
        CHECK_THROWS_AS(parse_config("[problem]\nV1 = \"1 + \"\n"), ConfigError);
        CHECK_THROWS_AS(parse_config("[problem]\nf1 = \"1\"\n"), ConfigError);
        CHECK_THROWS_AS(parse_config("[solve]\nstarts = 0\n"), ConfigError);
        CHECK_THROWS_AS(parse_config("[solve]\ngrad_tol = -1\n"), ConfigError);
        CHECK_THROWS_AS(load_config("/nonexistent/nehari.ini"), ConfigError);
        const RunConfig c = parse_config("# comment\n; other\ncommand = fountain\n[problem]\nlambda = \"0.1*x1\"\n");
        CHECK(c.command == "fountain");
        CHECK(c.problem.lambda == "0.1*x1");
    }

    TEST_CASE("grid and csv round trip") {
        const fs::path dir = scratch("io");
        std::mt19937_64 rng(51);
        for (const DomainPtr& d : {make_domain(DomainSpec::dirichlet_box({1.0, 2.5}, {5, 7})),
                                   make_domain(DomainSpec::periodic_torus({3, 2, 2}, 3))}) {
            const GridFunction f = testing::random_field(d, rng, 1e3);
            write_grid(dir / "f.grid", f);
            const GridFunction g = read_grid(dir / "f.grid");
            CHECK(g.domain() == f.domain());
            CHECK(g == f);
        }
        const std::vector<std::vector<double>> rows{{0.1, 1.0 / 3.0}, {-2e-300, 6.02214076e23}};
        write_csv(dir / "t.csv", {"a", "b"}, rows);
        std::vector<std::string> header;
        CHECK(read_csv(dir / "t.csv", &header) == rows);
        CHECK(header == std::vector<std::string>{"a", "b"});
        CHECK(slurp(dir / "t.csv").find('\r') == std::string::npos);
        CHECK(format_float(0.1) == "0.10000000000000001");

        write_text(dir / "bad.grid", "not a grid\n");
        CHECK_THROWS_AS(read_grid(dir / "bad.grid"), IoError);
        const DomainPtr d = make_domain(DomainSpec::dirichlet_box({1.0}, {8}));
        write_grid(dir / "cut.grid", GridFunction(d, 1.0));
        const std::string full = slurp(dir / "cut.grid");
        write_text(dir / "cut.grid", full.substr(0, full.size() - 3));
        CHECK_THROWS_AS(read_grid(dir / "cut.grid"), IoError);
    }

    TEST_CASE("validate exit codes") {
        const fs::path dir = scratch("validate");
        RunConfig c = small_bounded("validate", dir);
        const Outcome ok = run_captured(c);
        CHECK(ok.code == exit_ok);
        CHECK(fs::exists(dir / "validate.validation.txt"));

        c.problem.lambda = "1.2";
        const Outcome bad = run_captured(c);
        CHECK(bad.code == exit_validation);
        CHECK(bad.err.find("(V2)") != std::string::npos);

        c.problem.lambda = "0.3";
        c.problem.f1 = {{1.0, 2.5}};
        const Outcome low = run_captured(c);
        CHECK(low.code == exit_validation);
        CHECK(low.err.find("(F4)") != std::string::npos);

        RunConfig p = default_periodic();
        p.command = "validate";
        p.problem.periods = {4, 4};
        p.problem.points_per_cell = 4;
        p.problem.V1 = "1 + 0.1*x1";
        p.output_dir = dir.string();
        const Outcome aperiodic = run_captured(p);
        CHECK(aperiodic.code == exit_validation);
        CHECK(aperiodic.err.find("(V3)") != std::string::npos);
    }

    TEST_CASE("fibering along the sine mode") {
        const fs::path dir = scratch("fibering");
        RunConfig c = small_bounded("fibering", dir);
        c.problem.points = {512};
        c.problem.lambda = "0";
        c.problem.u0 = "sin(3.141592653589793*x1)";
        c.problem.v0 = "0";
        REQUIRE(run_captured(c).code == exit_ok);
        std::vector<std::string> header;
        const auto rows = read_csv(dir / "fibering.fibering.csv", &header);
        CHECK(header == std::vector<std::string>{"t", "phi", "dphi"});
        int changes = 0;
        for (std::size_t i = 1; i < rows.size(); ++i) {
            changes += std::signbit(rows[i][2]) != std::signbit(rows[i - 1][2]);
        }
        CHECK(changes == 1);
        CHECK(slurp(dir / "fibering.fibering.txt").find("sign_changes = 1") != std::string::npos);
    }

    TEST_CASE("ground is reproducible byte for byte") {
        const fs::path a = scratch("ground_a");
        const fs::path b = scratch("ground_b");
        RunConfig c = small_bounded("ground", a);
        REQUIRE(run_captured(c).code == exit_ok);
        c.output_dir = b.string();
        REQUIRE(run_captured(c).code == exit_ok);
        int files = 0;
        for (const auto& entry : fs::directory_iterator(a)) {
            const fs::path other = b / entry.path().filename();
            REQUIRE(fs::exists(other));
            CHECK(slurp(entry.path()) == slurp(other));
            ++files;
        }
        CHECK(files >= 6);
        const std::string report = slurp(a / "ground.ground.txt");
        CHECK(report.find("total = ") != std::string::npos);
        CHECK(report.find("lower_bound = ") != std::string::npos);
    }

    TEST_CASE("other commands") {
        const fs::path dir = scratch("other");
        RunConfig m = small_bounded("multiplicity", dir);
        m.target_count = 2;
        CHECK(run_captured(m).code == exit_ok);
        CHECK(fs::exists(dir / "multiplicity.manifest.txt"));
        CHECK(fs::exists(dir / "multiplicity.sol1.u.grid"));

        RunConfig f = small_bounded("fountain", dir);
        f.k_max = 4;
        CHECK(run_captured(f).code == exit_ok);
        CHECK(read_csv(dir / "fountain.fountain.csv").size() == 4);

        RunConfig d = small_bounded("decay", dir);
        const Outcome bounded_decay = run_captured(d);
        CHECK(bounded_decay.code == exit_error);
        CHECK(bounded_decay.err.find("periodic") != std::string::npos);

        RunConfig s = small_bounded("ground", dir);
        s.solve.max_iters = 1;
        CHECK(run_captured(s).code == exit_stall);
    }
}
