#include "nehari/operator.hpp"

#include <cmath>
#include <mutex>
#include <numbers>

#include <fftw3.h>
#include <fmt/format.h>

namespace nehari {

namespace {

// FFTW planning is not thread-safe; execution with the new-array interface is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

struct ShiftedLaplacianSolver::Plan {
    fftw_plan forward = nullptr;
    double scale = 1.0;

    ~Plan() {
        if (forward != nullptr) {
            std::lock_guard lock(planner_mutex());
            fftw_destroy_plan(forward);
        }
    }
};

double ShiftedLaplacianSolver::stencil_eigenvalue(const DomainSpec& d, int axis, int k) {
    const int n = d.extent(axis);
    const double h = d.spacing(axis);
    const double arg = d.periodic() ? std::numbers::pi * k / n : std::numbers::pi * (k + 1) / (2.0 * (n + 1));
    const double s = std::sin(arg);
    return 4.0 / (h * h) * s * s;
}

ShiftedLaplacianSolver::ShiftedLaplacianSolver(GridFunction potential)
    : potential_(std::move(potential)), plan_(std::make_unique<Plan>()) {
    const DomainSpec& d = potential_.domain();
    double sum = 0.0;
    for (double x : potential_.values()) {
        sum += x;
    }
    mean_potential_ = sum / static_cast<double>(d.size());

    // Symbol of (-Delta_h + mean V) on the tensor eigenbasis, row-major.
    inverse_symbol_.assign(d.size(), 0.0);
    std::vector<std::vector<double>> axis_eigs(static_cast<std::size_t>(d.dimension()));
    for (int a = 0; a < d.dimension(); ++a) {
        auto& e = axis_eigs[static_cast<std::size_t>(a)];
        e.resize(static_cast<std::size_t>(d.extent(a)));
        for (int k = 0; k < d.extent(a); ++k) {
            e[static_cast<std::size_t>(k)] = stencil_eigenvalue(d, a, k);
        }
    }
    for (std::size_t flat = 0; flat < d.size(); ++flat) {
        const auto idx = d.unravel(flat);
        double lam = mean_potential_;
        for (int a = 0; a < d.dimension(); ++a) {
            lam += axis_eigs[static_cast<std::size_t>(a)][static_cast<std::size_t>(idx[static_cast<std::size_t>(a)])];
        }
        inverse_symbol_[flat] = lam > 0.0 ? 1.0 / lam : 0.0;
    }

    std::vector<int> n(static_cast<std::size_t>(d.dimension()));
    std::vector<fftw_r2r_kind> kinds(n.size());
    double scale = 1.0;
    for (int a = 0; a < d.dimension(); ++a) {
        const auto ai = static_cast<std::size_t>(a);
        n[ai] = d.extent(a);
        if (d.periodic()) {
            kinds[ai] = FFTW_DHT;
            scale *= n[ai];
        } else {
            kinds[ai] = FFTW_RODFT00;
            scale *= 2.0 * (n[ai] + 1);
        }
    }
    plan_->scale = scale;
    std::vector<double> in(d.size()), out(d.size());
    std::lock_guard lock(planner_mutex());
    plan_->forward = fftw_plan_r2r(d.dimension(), n.data(), in.data(), out.data(), kinds.data(),
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan_->forward == nullptr) {
        throw std::runtime_error("ShiftedLaplacianSolver: FFTW planning failed");
    }
}

ShiftedLaplacianSolver::~ShiftedLaplacianSolver() = default;
ShiftedLaplacianSolver::ShiftedLaplacianSolver(ShiftedLaplacianSolver&&) noexcept = default;
ShiftedLaplacianSolver& ShiftedLaplacianSolver::operator=(ShiftedLaplacianSolver&&) noexcept = default;

GridFunction ShiftedLaplacianSolver::apply(const GridFunction& x) const {
    GridFunction out = laplacian_apply(x);
    auto o = out.mutable_values();
    const auto xv = x.values();
    const auto w = potential_.values();
    for (std::size_t i = 0; i < o.size(); ++i) {
        o[i] += w[i] * xv[i];
    }
    return out;
}

GridFunction ShiftedLaplacianSolver::apply_preconditioner(const GridFunction& r) const {
    const std::size_t n = r.size();
    std::vector<double> in(r.values().begin(), r.values().end());
    std::vector<double> spec(n);
    fftw_execute_r2r(plan_->forward, in.data(), spec.data());
    for (std::size_t i = 0; i < n; ++i) {
        spec[i] *= inverse_symbol_[i];
    }
    fftw_execute_r2r(plan_->forward, spec.data(), in.data());
    const double inv_scale = 1.0 / plan_->scale;
    for (double& x : in) {
        x *= inv_scale;
    }
    return GridFunction(r.domain_ptr(), std::move(in));
}

GridFunction ShiftedLaplacianSolver::solve(const GridFunction& rhs, double rel_tol) const {
    rhs.require_same_grid(potential_, "ShiftedLaplacianSolver::solve");
    const double bnorm = std::sqrt(inner_l2(rhs, rhs));
    GridFunction x(rhs.domain_ptr(), 0.0);
    last_iterations_ = 0;
    if (bnorm == 0.0) {
        return x;
    }
    const auto max_iter =
        static_cast<int>(std::ceil(10.0 * std::sqrt(static_cast<double>(rhs.size())))) + 10;

    GridFunction r = rhs;
    GridFunction z = apply_preconditioner(r);
    GridFunction p = z;
    double rz = inner_l2(r, z);
    for (int it = 1; it <= max_iter; ++it) {
        const GridFunction Ap = apply(p);
        const double pAp = inner_l2(p, Ap);
        const double alpha = rz / pAp;
        x.axpy(alpha, p);
        r.axpy(-alpha, Ap);
        last_iterations_ = it;
        if (std::sqrt(inner_l2(r, r)) <= rel_tol * bnorm) {
            return x;
        }
        z = apply_preconditioner(r);
        const double rz_new = inner_l2(r, z);
        const double beta = rz_new / rz;
        rz = rz_new;
        p *= beta;
        p += z;
    }
    throw ConvergenceError(fmt::format("conjugate gradients did not reach relative residual {} in {} iterations",
                                       rel_tol, max_iter));
}

}  // namespace nehari
