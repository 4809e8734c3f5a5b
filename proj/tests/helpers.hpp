#pragma once

#include <cmath>
#include <random>

#include "nehari/config.hpp"
#include "nehari/expr.hpp"
#include "nehari/multiplicity.hpp"

namespace testing {

inline nehari::ProblemSpec build(const nehari::ProblemSource& src) {
    nehari::ProblemSpec spec = src.build();
    nehari::validate_problem(spec);
    return spec;
}

inline nehari::ProblemSpec bounded_1d(int points = 256) {
    nehari::ProblemSource src = nehari::default_bounded().problem;
    src.points = {points};
    return build(src);
}

inline nehari::ProblemSpec periodic_2d(int period = 16, int m = 16) {
    nehari::ProblemSource src = nehari::default_periodic().problem;
    src.periods = {period, period};
    src.points_per_cell = m;
    return build(src);
}

/// Variable coefficients, two-term nonlinearity, 2D box.
inline nehari::ProblemSpec varied_2d() {
    nehari::ProblemSource src;
    src.lengths = {1.0, 1.5};
    src.points = {24, 32};
    src.f1 = {{1.0, 4.0}, {0.5, 4.5}};
    src.f2 = {{2.0, 3.5}};
    src.q = 3.0;
    src.V1 = "1 + 0.5*sin(3*x1)*cos(2*x2)";
    src.V2 = "2 + x1*x2";
    src.lambda = "0.4 + 0.2*cos(x1 + x2)";
    return build(src);
}

/// Periodic data with a non-constant periodic potential.
inline nehari::ProblemSpec varied_torus() {
    nehari::ProblemSource src;
    src.kind = nehari::BoundaryKind::periodic;
    src.periods = {4, 3};
    src.points_per_cell = 6;
    src.q = 2.5;
    src.f1 = {{1.0, 3.0}};
    src.f2 = {{1.0, 3.0}, {0.25, 5.0}};
    src.V1 = "1.5 + 0.5*cos(6.283185307179586*x1)";
    src.V2 = "1 + 0.25*sin(6.283185307179586*x2)";
    src.lambda = "0.3";
    return build(src);
}

inline double uniform(std::mt19937_64& rng, double a, double b) {
    return a + (b - a) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline nehari::GridFunction random_field(const nehari::DomainPtr& d, std::mt19937_64& rng, double scale = 1.0) {
    nehari::GridFunction f(d);
    for (std::size_t i = 0; i < f.size(); ++i) {
        f[i] = scale * uniform(rng, -1.0, 1.0);
    }
    return f;
}

/// Random smooth-ish state: low modes plus noise, random amplitude.
inline nehari::State random_state(const nehari::DomainPtr& d, std::mt19937_64& rng) {
    const double amp = std::exp(uniform(rng, -3.0, 3.0));
    nehari::State s{random_field(d, rng, amp), random_field(d, rng, amp)};
    return s;
}

}  // namespace testing
