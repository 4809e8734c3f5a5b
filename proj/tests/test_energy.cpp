#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "helpers.hpp"

using namespace nehari;

namespace {

// Continuum values for u = t sin(pi x), v = 0 on (0,1), V = 1, f = s^3, q = 3:
// phi(t) = A t^2/2 - B t^4/4 + C t^3/3, A = (pi^2 + 1)/2, B = 3/8, C = 4/(3 pi).
constexpr double kSinTStar = 4.4146542850638708;
constexpr double kSinPhi = 29.522919654153813;

ProblemSpec sin_spec(int points) {
    ProblemSource src;
    src.points = {points};
    src.lambda = "0";
    return testing::build(src);
}

State sin_state(const ProblemSpec& spec) {
    State s = State::zeros(spec.domain);
    for (std::size_t i = 0; i < s.u.size(); ++i) {
        s.u[i] = std::sin(std::numbers::pi * spec.domain->coordinate(0, static_cast<int>(i)));
    }
    return s;
}

std::vector<ProblemSpec> assorted_specs() {
    return {testing::bounded_1d(64), testing::varied_2d(), testing::varied_torus()};
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_SUITE("energy") {
    TEST_CASE("zero state") {
        for (const auto& spec : assorted_specs()) {
            const State z = State::zeros(spec.domain);
            CHECK(energy(spec, z).total == 0.0);
            CHECK(nehari_xi(spec, z) == 0.0);
            CHECK(grad_l2(spec, z).is_zero());
            CHECK(grad_precond(spec, z).is_zero());
            CHECK(fibering_value(spec, z, 2.0) == 0.0);
            CHECK_THROWS_AS(fibering_project(spec, z), FiberingError);
        }
    }

    TEST_CASE("breakdown parts add up") {
        std::mt19937_64 rng(3);
        for (const auto& spec : assorted_specs()) {
            const State s = testing::random_state(spec.domain, rng);
            const EnergyBreakdown e = energy(spec, s);
            CHECK(e.total == doctest::Approx(e.quad - e.cross - e.fpart + e.qpart).epsilon(1e-14));
            CHECK(e.quad == doctest::Approx(0.5 * norm_sq(spec, s)).epsilon(1e-14));
            CHECK(coercive_form(spec, s) == doctest::Approx(2.0 * (e.quad - e.cross)).epsilon(1e-12));
        }
    }

    TEST_CASE("mismatched grids are rejected") {
        const ProblemSpec spec = testing::bounded_1d(64);
        const ProblemSpec other = testing::bounded_1d(32);
        const State s{GridFunction(spec.domain, 1.0), GridFunction(spec.domain, 1.0)};
        const State t{GridFunction(other.domain, 1.0), GridFunction(other.domain, 1.0)};
        CHECK_THROWS_AS(energy(other, s), DomainError);
        CHECK_THROWS_AS(inner_e(spec, s, t), DomainError);
    }

    TEST_CASE("central differences match grad_l2") {
        std::mt19937_64 rng(11);
        for (const auto& spec : assorted_specs()) {
            for (int trial = 0; trial < 6; ++trial) {
                const State s = testing::random_state(spec.domain, rng);
                const State d = testing::random_state(spec.domain, rng);
                const double eps = 1e-5 * std::sqrt(inner_l2(s, s) / inner_l2(d, d));
                const double jp = energy(spec, State(s).axpy(eps, d)).total;
                const double jm = energy(spec, State(s).axpy(-eps, d)).total;
                const double fd = (jp - jm) / (2.0 * eps);
                const double an = inner_l2(grad_l2(spec, s), d);
                CHECK(rel(fd, an) < 1e-6);
            }
        }
    }

    TEST_CASE("xi equals <grad_l2(s), s>") {
        std::mt19937_64 rng(12);
        for (const auto& spec : assorted_specs()) {
            for (int trial = 0; trial < 20; ++trial) {
                const State s = testing::random_state(spec.domain, rng);
                CHECK(rel(nehari_xi(spec, s), inner_l2(grad_l2(spec, s), s)) < 1e-12);
            }
        }
    }

    TEST_CASE("decoupled v-gradient vanishes") {
        ProblemSource src;
        src.points = {48};
        src.lambda = "0";
        const ProblemSpec spec = testing::build(src);
        std::mt19937_64 rng(5);
        State s{testing::random_field(spec.domain, rng), GridFunction(spec.domain)};
        const State g = grad_l2(spec, s);
        for (std::size_t i = 0; i < g.v.size(); ++i) {
            CHECK(g.v[i] == 0.0);
        }
    }

    TEST_CASE("coercive bound") {
        std::mt19937_64 rng(13);
        for (const auto& spec : assorted_specs()) {
            for (int trial = 0; trial < 200; ++trial) {
                const State s = testing::random_state(spec.domain, rng);
                const double n2 = norm_sq(spec, s);
                CHECK(coercive_form(spec, s) >= (1.0 - spec.delta) * n2 - 1e-9 * n2);
            }
        }
        SUBCASE("lambda = 0 gives the norm exactly") {
            ProblemSource src;
            src.points = {40};
            src.lambda = "0";
            const ProblemSpec spec = testing::build(src);
            const State s = testing::random_state(spec.domain, rng);
            CHECK(coercive_form(spec, s) == norm_sq(spec, s));
        }
        SUBCASE("equality configuration u = v, lambda = delta V") {
            ProblemSource src;
            src.points = {40};
            src.V1 = "2";
            src.V2 = "2";
            src.lambda = "1.5";
            const ProblemSpec spec = testing::build(src);
            REQUIRE(spec.delta == doctest::Approx(0.75));
            const GridFunction u = testing::random_field(spec.domain, rng);
            const State s{u, u};
            const double grad = gradient_energy(u);
            const double expected = 2.0 * grad + 2.0 * (1.0 - spec.delta) * (weighted_sq(u, spec.V1) - grad);
            CHECK(coercive_form(spec, s) == doctest::Approx(expected).epsilon(1e-12));
            CHECK(coercive_form(spec, s) >= (1.0 - spec.delta) * norm_sq(spec, s));
        }
    }

    TEST_CASE("even and swap symmetry") {
        std::mt19937_64 rng(14);
        for (const auto& spec : assorted_specs()) {
            const State s = testing::random_state(spec.domain, rng);
            CHECK(energy(spec, s.scaled(-1.0)).total == energy(spec, s).total);
        }
        const ProblemSpec spec = testing::bounded_1d(64);
        const State s = testing::random_state(spec.domain, rng);
        CHECK(energy(spec, State(s.v, s.u)).total == doctest::Approx(energy(spec, s).total).epsilon(1e-14));
    }

    TEST_CASE("fibering basics") {
        std::mt19937_64 rng(15);
        for (const auto& spec : assorted_specs()) {
            const State s = testing::random_state(spec.domain, rng);
            CHECK(fibering_value(spec, s, 0.0) == 0.0);
            const RayProfile ray(spec, s);
            const FiberingReport fr = fibering_root(ray);
            CHECK(fr.t_lo < fr.t_star);
            CHECK(fr.t_star < fr.t_hi);
            CHECK(fr.slope_residual < 1e-10);
            // positivity on (0, t*/100]
            for (int i = 1; i <= 20; ++i) {
                CHECK(fibering_value(spec, s, fr.t_star * i / 2000.0) > 0.0);
            }
            // closed-form profile agrees with evaluation from scratch
            for (double t : {0.3 * fr.t_star, fr.t_star, 2.0 * fr.t_star}) {
                CHECK(ray.value(t) == doctest::Approx(fibering_value(spec, s, t)).epsilon(1e-10));
                const double scale = t * ray.quadratic();
                CHECK(std::abs(ray.slope(t) - fibering_slope(spec, s, t)) < 1e-10 * scale);
            }
        }
    }

    TEST_CASE("projection is idempotent and homogeneous") {
        std::mt19937_64 rng(16);
        for (const auto& spec : assorted_specs()) {
            for (int trial = 0; trial < 10; ++trial) {
                const State s = testing::random_state(spec.domain, rng);
                const auto [fr, p] = fibering_project(spec, s);
                CHECK(std::abs(nehari_xi(spec, p)) <= 1e-10 * norm_sq(spec, p));
                CHECK(std::abs(fibering_project(spec, p).first.t_star - 1.0) < 1e-10);
                for (double c : {0.01, 0.5, 7.0, 300.0}) {
                    const double tc = fibering_project(spec, s.scaled(c)).first.t_star;
                    CHECK(rel(tc, fr.t_star / c) < 1e-10);
                }
            }
        }
    }

    TEST_CASE("phi' changes sign once") {
        std::mt19937_64 rng(17);
        for (const auto& spec : assorted_specs()) {
            for (int trial = 0; trial < 10; ++trial) {
                const State s = testing::random_state(spec.domain, rng);
                const RayProfile ray(spec, s);
                const double ts = fibering_root(ray).t_star;
                int changes = 0;
                double prev = 0.0;
                const int n = 10000;
                for (int i = 0; i < n; ++i) {
                    const double t = 4.0 * ts * std::pow(1e-6, 1.0 - static_cast<double>(i) / (n - 1));
                    const double d = ray.slope(t);
                    if (i > 0 && std::signbit(d) != std::signbit(prev)) {
                        ++changes;
                    }
                    prev = d;
                }
                CHECK(changes == 1);
            }
        }
    }

    TEST_CASE("rearranged slope on the manifold") {
        std::mt19937_64 rng(18);
        for (const auto& spec : assorted_specs()) {
            const State p = fibering_project(spec, testing::random_state(spec.domain, rng)).second;
            for (double t : {0.2, 0.9, 1.0, 1.7, 4.0}) {
                const double scale = t * norm_sq(spec, p);
                CHECK(std::abs(fibering_slope_on_manifold(spec, p, t) - fibering_slope(spec, p, t)) < 1e-9 * scale);
            }
        }
    }

    TEST_CASE("xi slope") {
        std::mt19937_64 rng(19);
        for (const auto& spec : assorted_specs()) {
            for (int trial = 0; trial < 10; ++trial) {
                const State p = fibering_project(spec, testing::random_state(spec.domain, rng)).second;
                const double slope = nehari_xi_slope(spec, p);
                CHECK(slope < 0.0);
                const double eps = 1e-5;
                const double fd = (nehari_xi(spec, p.scaled(1.0 + eps)) - nehari_xi(spec, p.scaled(1.0 - eps))) /
                                  (2.0 * eps);
                CHECK(rel(fd, slope) < 1e-6);
            }
        }
    }

    TEST_CASE("manifold inequalities") {
        std::mt19937_64 rng(20);
        for (const auto& spec : assorted_specs()) {
            for (int trial = 0; trial < 50; ++trial) {
                const State p = fibering_project(spec, testing::random_state(spec.domain, rng)).second;
                const double n2 = norm_sq(spec, p);
                const double lower = (0.5 - 1.0 / spec.q) * (1.0 - spec.delta) * n2;
                CHECK(energy(spec, p).total >= lower - 1e-9 * n2);
                double fu = 0.0;
                for (std::size_t i = 0; i < p.u.size(); ++i) {
                    fu += spec.f1.f(p.u[i]) * p.u[i] + spec.f2.f(p.v[i]) * p.v[i];
                }
                fu *= spec.domain->cell_volume();
                const double qmom = lp_power(p.u, spec.q) + lp_power(p.v, spec.q);
                CHECK(qmom < fu);
            }
        }
    }

    TEST_CASE("sin-mode oracle") {
        const ProblemSpec spec = sin_spec(4096);
        const State s = sin_state(spec);
        const auto [fr, p] = fibering_project(spec, s);
        CHECK(rel(fr.t_star, kSinTStar) < 1e-5);
        CHECK(rel(fr.phi_at_t, kSinPhi) < 1e-5);
        CHECK(std::abs(nehari_xi(spec, p)) <= 1e-10 * norm_sq(spec, p));
        const double A = (std::numbers::pi * std::numbers::pi + 1.0) / 2.0;
        const double B = 3.0 / 8.0;
        const double C = 4.0 / (3.0 * std::numbers::pi);
        for (double t : {1.0, 3.0, kSinTStar, 6.0}) {
            const double closed = A * t - B * t * t * t + C * t * t;
            CHECK(std::abs(fibering_slope(spec, s, t) - closed) < 1e-5 * (A * t + B * t * t * t));
        }
        const double t = kSinTStar;
        const double slope = 2 * A * t * t - 4 * B * t * t * t * t + 3 * C * t * t * t;
        CHECK(slope < 0.0);
        CHECK(rel(nehari_xi_slope(spec, p), slope) < 1e-4);
    }

    TEST_CASE("preconditioner") {
        SUBCASE("sine eigenfunction with V = 1") {
            const ProblemSpec spec = sin_spec(63);
            const double h = spec.domain->spacing(0);
            for (int j : {1, 2, 5, 17}) {
                State e = State::zeros(spec.domain);
                for (std::size_t i = 0; i < e.u.size(); ++i) {
                    e.u[i] = std::sin(j * std::numbers::pi * spec.domain->coordinate(0, static_cast<int>(i)));
                }
                e.v = e.u;
                const double mu = 4.0 / (h * h) * std::pow(std::sin(j * std::numbers::pi * h / 2.0), 2) + 1.0;
                const State g = Preconditioner(spec).apply(e);
                for (std::size_t i = 0; i < e.u.size(); ++i) {
                    CHECK(g.u[i] == doctest::Approx(e.u[i] / mu).epsilon(1e-9).scale(1.0 / mu));
                    CHECK(g.v[i] == doctest::Approx(e.v[i] / mu).epsilon(1e-9).scale(1.0 / mu));
                }
            }
        }
        SUBCASE("positive pairing with the gradient") {
            std::mt19937_64 rng(21);
            for (const auto& spec : assorted_specs()) {
                const State s = testing::random_state(spec.domain, rng);
                CHECK(inner_l2(grad_precond(spec, s), grad_l2(spec, s)) > 0.0);
            }
        }
        SUBCASE("variable potential solve") {
            const ProblemSpec spec = testing::varied_2d();
            std::mt19937_64 rng(22);
            const State r{testing::random_field(spec.domain, rng), testing::random_field(spec.domain, rng)};
            const Preconditioner pc(spec);
            const State g = pc.apply(r);
            const State back{pc.block(0).apply(g.u), pc.block(1).apply(g.v)};
            const State diff = back - r;
            CHECK(std::sqrt(inner_l2(diff, diff)) < 1e-9 * std::sqrt(inner_l2(r, r)));
        }
    }
}
