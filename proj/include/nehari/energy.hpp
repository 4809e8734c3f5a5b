#pragma once

#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nehari/model.hpp"
#include "nehari/operator.hpp"
#include "nehari/state.hpp"

namespace nehari {

struct EnergyBreakdown {
    double quad = 0.0;   ///< 1/2 ||(u,v)||^2
    double cross = 0.0;  ///< int lambda u v
    double fpart = 0.0;  ///< int F1(u) + F2(v)
    double qpart = 0.0;  ///< 1/q int |u|^q + |v|^q
    double total = 0.0;  ///< quad - cross - fpart + qpart
};

/// ||(u,v)||^2 = ||u||_1^2 + ||v||_2^2 (no coupling term).
double norm_sq(const ProblemSpec& spec, const State& s);
double norm(const ProblemSpec& spec, const State& s);
/// <a, b> in the same inner product.
double inner_e(const ProblemSpec& spec, const State& a, const State& b);

EnergyBreakdown energy(const ProblemSpec& spec, const State& s);
/// ||(u,v)||^2 - 2 int lambda u v; bounded below by (1 - delta) ||(u,v)||^2.
double coercive_form(const ProblemSpec& spec, const State& s);

/// L2 representative of J'(s): <grad_l2(s), d>_{L2_h} = J'(s) d.
State grad_l2(const ProblemSpec& spec, const State& s);

/// Block-diagonal inverse of (-Delta_h + V_i), reused across iterations.
class Preconditioner {
public:
    explicit Preconditioner(const ProblemSpec& spec);
    /// Solves (-Delta_h + V_i) g_i = r_i to relative residual 1e-10.
    State apply(const State& residual) const;
    const ShiftedLaplacianSolver& block(int i) const { return i == 0 ? first_ : second_; }

private:
    ShiftedLaplacianSolver first_;
    ShiftedLaplacianSolver second_;
};

/// Gradient representative in the ||.|| inner product.
State grad_precond(const ProblemSpec& spec, const State& s);

/// xi(s) = J'(s) s
double nehari_xi(const ProblemSpec& spec, const State& s);
/// xi'(s) s; strictly negative on the Nehari manifold.
double nehari_xi_slope(const ProblemSpec& spec, const State& s);

/// phi(t) = J(t s), evaluated from scratch.
double fibering_value(const ProblemSpec& spec, const State& s, double t);
/// phi'(t) = J'(t s) s, evaluated from scratch.
double fibering_slope(const ProblemSpec& spec, const State& s, double t);
/// phi'(t) in the rearranged form valid for s on the manifold:
/// int f1(u) t u - f1(t u) u + f2(v) t v - f2(t v) v + (t^(q-1) - t) int |u|^q + |v|^q.
double fibering_slope_on_manifold(const ProblemSpec& spec, const State& s, double t);

/**
 * phi along a fixed ray in closed form. For the power family every term of
 * J(t s) is a monomial in t, so after one pass over the grid the fibering
 * map and its derivative cost O(#terms).
 */
class RayProfile {
public:
    RayProfile(const ProblemSpec& spec, const State& s);
    double value(double t) const;
    double slope(double t) const;
    /// Coercive form of the base state.
    double quadratic() const { return quadratic_; }

private:
    double q_ = 3.0;
    double quadratic_ = 0.0;
    double q_moment_ = 0.0;
    std::vector<std::pair<double, double>> terms_;  // (a_j/p_j int |w|^p_j, p_j)
};

class FiberingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct FiberingReport {
    double t_star = 1.0;
    double phi_at_t = 0.0;
    double t_lo = 0.0;  ///< bracket end with phi' > 0
    double t_hi = 0.0;  ///< bracket end with phi' < 0
    int iterations = 0;
    /// |phi'(t*)| relative to t* times the coercive form.
    double slope_residual = 0.0;
};

/// Unique maximiser t* of t -> J(t s) and the scaled state t* s.
std::pair<FiberingReport, State> fibering_project(const ProblemSpec& spec, const State& s);
FiberingReport fibering_root(const RayProfile& ray);

}  // namespace nehari
