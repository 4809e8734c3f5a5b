#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "nehari/grid.hpp"

namespace nehari {

class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Solver for (-Delta_h + V) x = b.
 *
 * Conjugate gradients preconditioned by the exact inverse of
 * (-Delta_h + mean(V)), applied in the sine (Dirichlet) or Hartley
 * (periodic) eigenbasis of the stencil. For constant V the first iterate is
 * already the solution.
 */
class ShiftedLaplacianSolver {
public:
    explicit ShiftedLaplacianSolver(GridFunction potential);
    ~ShiftedLaplacianSolver();
    ShiftedLaplacianSolver(const ShiftedLaplacianSolver&) = delete;
    ShiftedLaplacianSolver& operator=(const ShiftedLaplacianSolver&) = delete;
    ShiftedLaplacianSolver(ShiftedLaplacianSolver&&) noexcept;
    ShiftedLaplacianSolver& operator=(ShiftedLaplacianSolver&&) noexcept;

    /// Relative residual target in the discrete L2 norm. Throws
    /// ConvergenceError after 10 sqrt(n) iterations (the operator is SPD, so
    /// this indicates a defect rather than a hard problem).
    GridFunction solve(const GridFunction& rhs, double rel_tol = 1e-10) const;
    /// (-Delta_h + V) x
    GridFunction apply(const GridFunction& x) const;
    /// Exact inverse of the constant-coefficient operator.
    GridFunction apply_preconditioner(const GridFunction& r) const;

    const GridFunction& potential() const { return potential_; }
    int last_iterations() const { return last_iterations_; }

    /// Stencil eigenvalue of -Delta_h for the 1D mode index k (0-based) on an axis of n nodes.
    static double stencil_eigenvalue(const DomainSpec& d, int axis, int k);

private:
    struct Plan;
    GridFunction potential_;
    double mean_potential_ = 0.0;
    std::vector<double> inverse_symbol_;
    std::unique_ptr<Plan> plan_;
    mutable int last_iterations_ = 0;
};

}  // namespace nehari
