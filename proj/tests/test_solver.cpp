#include <algorithm>
#include <cmath>
#include <random>

#include <doctest.h>

#include "helpers.hpp"

using namespace nehari;

namespace {

ProblemSpec bounded_with_lambda(double lambda, int points = 64) {
    ProblemSource src;
    src.points = {points};
    src.lambda = std::to_string(lambda);
    return testing::build(src);
}

SolveConfig quick(int starts = 2) {
    SolveConfig c;
    c.starts = starts;
    return c;
}

GridFunction radial(const DomainPtr& d, double rate) {
    GridFunction f(d);
    const std::array<int, 3> origin{0, 0, 0};
    for (std::size_t i = 0; i < f.size(); ++i) {
        f[i] = std::exp(-rate * node_distance(*d, d->unravel(i), origin));
    }
    return f;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_SUITE("solver") {
    TEST_CASE("bounded ground state") {
        const ProblemSpec spec = testing::bounded_1d(64);
        const GroundStateResult g = find_ground_state(spec, quick(3));
        const SolveReport& r = g.report;
        CHECK(r.converged());
        CHECK(r.grad_residual <= 1e-8);
        CHECK(r.xi_residual <= 1e-10 * r.norm * r.norm);
        CHECK(r.energy == doctest::Approx(energy(spec, g.state).total).epsilon(1e-12));
        CHECK(r.energy >= (0.5 - 1.0 / spec.q) * (1.0 - spec.delta) * r.norm * r.norm);
        CHECK(r.rho_estimate > 0.0);
        CHECK(r.rho_estimate <= r.norm * (1.0 + 1e-12));
        const double amp = max_abs(g.state);
        for (std::size_t i = 0; i < g.state.u.size(); ++i) {
            CHECK(g.state.u[i] >= -1e-10 * amp);
            CHECK(g.state.v[i] >= -1e-10 * amp);
        }
        for (const auto& s : g.starts) {
            CHECK(std::is_sorted(s.accepted_energies.rbegin(), s.accepted_energies.rend()));
            CHECK(r.energy <= s.energy);
        }
    }

    TEST_CASE("decoupled ground state beats the sine ray") {
        const ProblemSpec spec = bounded_with_lambda(0.0, 256);
        const GroundStateResult g = find_ground_state(spec, quick(2));
        CHECK(g.report.converged());
        CHECK(g.report.energy < 29.522919654153813);
    }

    TEST_CASE("critical point is a fixed point") {
        const ProblemSpec spec = testing::bounded_1d(64);
        const GroundStateResult g = find_ground_state(spec, quick(1));
        const auto [r, s] = minimize_on_nehari(spec, quick(1), g.state);
        CHECK(r.iterations == 0);
        CHECK(r.grad_residual <= 1e-8);
    }

    TEST_CASE("determinism") {
        const ProblemSpec spec = testing::bounded_1d(64);
        const GroundStateResult a = find_ground_state(spec, quick(3));
        const GroundStateResult b = find_ground_state(spec, quick(3));
        CHECK(a.report.energy == b.report.energy);
        CHECK(a.report.iterations == b.report.iterations);
        CHECK(a.report.start_index == b.report.start_index);
        CHECK(a.state == b.state);
        CHECK(initial_state(spec.domain, 7, 1, 3) == initial_state(spec.domain, 7, 1, 3));
        CHECK_FALSE(initial_state(spec.domain, 7, 1, 3) == initial_state(spec.domain, 8, 1, 3));
    }

    TEST_CASE("swap symmetry of the ground level") {
        const ProblemSpec spec = testing::bounded_1d(64);
        const State init = initial_state(spec.domain, 1, 0, 1);
        State lopsided = init;
        lopsided.v *= 0.3;
        const auto a = minimize_on_nehari(spec, quick(), lopsided).first;
        const auto b = minimize_on_nehari(spec, quick(), State(lopsided.v, lopsided.u)).first;
        CHECK(a.converged());
        CHECK(b.converged());
        CHECK(rel(a.energy, b.energy) <= 1e-8);
    }

    TEST_CASE("coupling lowers the ground level") {
        double prev = std::numeric_limits<double>::infinity();
        for (double lambda : {0.0, 0.2, 0.4}) {
            const double e = find_ground_state(bounded_with_lambda(lambda), quick(2)).report.energy;
            CHECK(e <= prev);
            prev = e;
        }
    }

    TEST_CASE("all starts failing raises") {
        const ProblemSpec spec = testing::bounded_1d(64);
        SolveConfig c = quick(1);
        c.max_iters = 1;
        CHECK_THROWS_AS(find_ground_state(spec, c), SolverStall);
        CHECK_THROWS_AS(minimize_on_nehari(spec, c, State::zeros(spec.domain)), FiberingError);
    }

    TEST_CASE("periodic pipeline is shift invariant") {
        const ProblemSpec spec = testing::periodic_2d(6, 8);
        const State init = initial_state(spec.domain, 3, 0, 1);
        const auto [a, sa] = minimize_on_nehari(spec, quick(), init);
        const std::array<int, 2> z{2, -1};
        const auto [b, sb] = minimize_on_nehari(spec, quick(), shift(init, z));
        CHECK(a.converged());
        CHECK(b.converged());
        CHECK(rel(a.energy, b.energy) <= 1e-9);
        CHECK(orbit_distance(spec, sa, sb) <= 1e-6 * a.norm);
    }

    TEST_CASE("rho estimate is stable across seeds") {
        const ProblemSpec spec = testing::bounded_1d(64);
        std::vector<double> rhos;
        for (std::uint64_t seed : {1, 2, 3, 4}) {
            SolveConfig c = quick(2);
            c.seed = seed;
            rhos.push_back(find_ground_state(spec, c).report.rho_estimate);
        }
        CHECK(*std::max_element(rhos.begin(), rhos.end()) <= 2.0 * *std::min_element(rhos.begin(), rhos.end()));
    }

    TEST_CASE("recenter") {
        const DomainPtr d = make_domain(DomainSpec::periodic_torus({8, 6}, 4));
        State bump{radial(d, 2.0), radial(d, 3.0)};
        const Recentered base = recenter(bump);
        SUBCASE("centered input stays put") {
            const Recentered again = recenter(base.state);
            CHECK(again.shift == std::array<int, 3>{0, 0, 0});
            CHECK(again.state == base.state);
        }
        SUBCASE("shifted copy returns the inverse shift") {
            const std::array<int, 2> z{3, -2};
            const Recentered moved = recenter(shift(base.state, z));
            CHECK(moved.shift[0] == -3);
            CHECK(moved.shift[1] == 2);
            CHECK(moved.state == base.state);
        }
        SUBCASE("energy is unchanged") {
            const ProblemSpec spec = testing::periodic_2d(6, 4);
            std::mt19937_64 rng(4);
            const State s = testing::random_state(spec.domain, rng);
            const double e = energy(spec, s).total;
            CHECK(std::abs(energy(spec, recenter(s).state).total - e) <= 1e-12 * std::abs(e));
        }
        SUBCASE("Dirichlet input is rejected") {
            const ProblemSpec spec = testing::bounded_1d(16);
            CHECK_THROWS_AS(recenter(State::zeros(spec.domain)), DomainError);
        }
    }

    TEST_CASE("sphere and manifold maps") {
        std::mt19937_64 rng(31);
        for (const auto& spec : {testing::bounded_1d(64), testing::varied_2d(), testing::varied_torus()}) {
            for (int trial = 0; trial < 10; ++trial) {
                State w = testing::random_state(spec.domain, rng);
                w *= 1.0 / norm(spec, w);
                const State m = m_map(spec, w);
                CHECK(std::abs(nehari_xi(spec, m)) <= 1e-10 * norm_sq(spec, m));
                const State back = m_inverse(spec, m);
                CHECK(norm(spec, back - w) <= 1e-10);
                CHECK(norm(spec, back) == doctest::Approx(1.0).epsilon(1e-14));

                const State a = m;
                const State b = fibering_project(spec, testing::random_state(spec.domain, rng)).second;
                const double lhs = norm(spec, m_inverse(spec, a) - m_inverse(spec, b));
                CHECK(lhs <= 2.0 * norm(spec, a - b) / norm(spec, a));
            }
            CHECK_THROWS_AS(m_map(spec, State::zeros(spec.domain)), DomainError);
            CHECK_THROWS_AS(m_inverse(spec, State::zeros(spec.domain)), DomainError);
            State off = testing::random_state(spec.domain, rng);
            CHECK_THROWS_AS(m_map(spec, off.scaled(3.0 / norm(spec, off))), DomainError);
        }
    }

    TEST_CASE("decay fit on synthetic profiles") {
        const DomainPtr d = make_domain(DomainSpec::periodic_torus({64}, 8));
        for (double rate : {1.0, 2.0}) {
            const State s{radial(d, rate), GridFunction(d)};
            const DecayFit fit = decay_fit(s);
            CHECK(fit.alpha == doctest::Approx(rate).epsilon(0.02));
            CHECK(fit.r_squared >= 0.999);
            CHECK(fit.C == doctest::Approx(1.0).epsilon(1e-6));
            CHECK(fit.samples >= 30);
        }
        const DomainPtr d2 = make_domain(DomainSpec::periodic_torus({40, 40}, 2));
        const DecayFit fit2 = decay_fit({radial(d2, 1.0), GridFunction(d2)});
        CHECK(fit2.alpha == doctest::Approx(1.0).epsilon(0.02));
        CHECK(fit2.r_squared >= 0.999);

        const DomainPtr tiny = make_domain(DomainSpec::periodic_torus({4}, 2));
        CHECK_THROWS_AS(decay_fit({radial(tiny, 1.0), GridFunction(tiny)}), DomainError);
    }
}
