#include <cmath>

#include <doctest.h>
#include <fmt/format.h>

#include "helpers.hpp"

using namespace nehari;

namespace {

Nonlinearity power(std::vector<PowerTerm> terms) { return Nonlinearity{std::move(terms)}; }

ProblemSpec constant_spec(double V1, double V2, double lambda) {
    ProblemSource src;
    src.points = {32};
    src.V1 = fmt::format("{}", V1);
    src.V2 = fmt::format("{}", V2);
    src.lambda = fmt::format("{}", lambda);
    return src.build();
}

}  // namespace

TEST_SUITE("model") {
    TEST_CASE("power evaluation") {
        const Nonlinearity nl = power({{1.0, 4.0}});
        CHECK(nl.f(2.0) == 8.0);
        CHECK(nl.F(2.0) == 4.0);
        CHECK(nl.f_prime(2.0) == 12.0);
        CHECK(nl.growth_exponent() == 4.0);
        CHECK(critical_exponent(3) == 6.0);
        CHECK(std::isinf(critical_exponent(2)));
    }

    TEST_CASE("odd f, even F, and F' = f") {
        const Nonlinearity nl = power({{1.0, 3.5}, {0.5, 4.5}, {2.0, 5.25}});
        for (double s : {1e-3, 0.1, 0.7, 1.0, 2.5, 13.0}) {
            CHECK(nl.f(-s) == -nl.f(s));
            CHECK(nl.F(-s) == nl.F(s));
            const double h = 1e-5 * s;
            const double fd = (nl.F(s + h) - nl.F(s - h)) / (2.0 * h);
            CHECK(fd == doctest::Approx(nl.f(s)).epsilon(1e-8));
            const double fd2 = (nl.f(s + h) - nl.f(s - h)) / (2.0 * h);
            CHECK(fd2 == doctest::Approx(nl.f_prime(s)).epsilon(1e-8));
        }
    }

    TEST_CASE("nonlinearity validation") {
        const auto ok = validate_nonlinearity(power({{1.0, 4.0}}), 3.0);
        CHECK(ok.passed());
        for (const auto& c : ok.checks) {
            CHECK_MESSAGE(c.worst_margin > 0.0, c.name);
        }
        // (CVX) at s: 3 s^4 - s^4 - s^4 = s^4, relative margin 1
        CHECK(ok.find("(CVX)")->worst_margin == doctest::Approx(1.0).epsilon(1e-12));

        const auto low = validate_nonlinearity(power({{1.0, 2.5}}), 3.0);
        CHECK_FALSE(low.passed());
        CHECK(low.first_failure() == "(F4)");

        const auto neg = validate_nonlinearity(power({{-1.0, 4.0}}), 3.0);
        CHECK_FALSE(neg.passed());
        CHECK(neg.first_failure() == "(F3)");

        CHECK(validate_nonlinearity(power({{1.0, 3.5}, {0.5, 4.5}}), 3.0).passed());
        // (F1): supercritical in 3D
        const auto crit = validate_nonlinearity(power({{1.0, 7.0}}), 3.0, 3);
        CHECK_FALSE(crit.passed());
        CHECK(crit.first_failure() == "(F1)");
        CHECK(validate_nonlinearity(power({{1.0, 7.0}}), 3.0, 2).passed());
    }

    TEST_CASE("AR and the convexity bound hold with positive margin on sampled exponents") {
        for (double q : {2.2, 2.5, 3.0, 3.7}) {
            for (double p : {q + 0.05, q + 0.5, q + 2.0}) {
                const auto rep = validate_nonlinearity(power({{0.7, p}, {1.3, p + 0.3}}), q);
                CHECK(rep.passed());
                CHECK(rep.find("(AR)")->worst_margin > 0.0);
                CHECK(rep.find("(CVX)")->worst_margin > 0.0);
            }
        }
    }

    TEST_CASE("potential validation and delta") {
        {
            ProblemSpec s = constant_spec(1.0, 1.0, 0.5);
            const auto rep = validate_potentials(s);
            CHECK(rep.passed());
            CHECK(rep.delta_min == doctest::Approx(0.5));
        }
        {
            ProblemSpec s = constant_spec(1.0, 1.0, 1.2);
            const auto rep = validate_potentials(s);
            CHECK_FALSE(rep.passed());
            CHECK(rep.first_failure() == "(V2)");
            CHECK_THROWS_AS(validate_problem(s), ValidationError);
            try {
                validate_problem(s);
            } catch (const ValidationError& e) {
                CHECK(std::string(e.what()).find("(V2)") != std::string::npos);
            }
        }
        {
            ProblemSpec s = constant_spec(4.0, 1.0, 1.0);
            CHECK(validate_potentials(s).delta_min == doctest::Approx(0.5));
            validate_problem(s);
            CHECK(s.delta == doctest::Approx(0.5));
        }
        {
            ProblemSpec s = constant_spec(1.0, 1.0, 0.3);
            s.delta = 0.6;
            validate_problem(s);
            CHECK(s.delta == 0.6);
        }
        {
            ProblemSpec s = constant_spec(0.0, 1.0, 0.0);
            CHECK(validate_potentials(s).first_failure() == "(V1)");
        }
        {
            ProblemSpec s = constant_spec(1.0, 1.0, -0.1);
            CHECK(validate_potentials(s).first_failure() == "(V2)");
        }
    }

    TEST_CASE("periodicity of torus data") {
        ProblemSpec s = testing::varied_torus();
        CHECK(validate_potentials(s).find("(V3)")->passed);
        // Break the unit-cell repetition by one ulp.
        s.V1[5] = std::nextafter(s.V1[5], 10.0);
        const auto rep = validate_potentials(s);
        CHECK_FALSE(rep.passed());
        CHECK(rep.first_failure() == "(V3)");
    }

    TEST_CASE("radius R oracles") {
        CHECK(radius_R(power({{1.0, 4.0}}), 3.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
        CHECK(radius_R(power({{1.0, 4.0}}), 2.5) == doctest::Approx(std::pow(1.6, 2.0 / 3.0)).epsilon(1e-12));
        CHECK(radius_R(power({{10.0, 4.0}}), 3.0) == doctest::Approx(2.0 / 15.0).epsilon(1e-12));
    }

    TEST_CASE("report text names every check") {
        ProblemSpec s = testing::bounded_1d(32);
        const auto text = validate_problem(s).to_text();
        for (const char* name : {"(F1)", "(F2)", "(F3)", "(F4)", "(F5)", "(AR)", "(CVX)", "(V1)", "(V2)"}) {
            CHECK(text.find(name) != std::string::npos);
        }
    }
}
