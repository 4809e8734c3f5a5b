#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nehari {

/// Raised when two fields live on different grids or an operation is not
/// defined for the grid kind (e.g. shifting a Dirichlet field).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class BoundaryKind { dirichlet, periodic };

/**
 * DomainSpec: structured tensor grid in 1, 2 or 3 dimensions.
 *
 * Dirichlet boxes store interior nodes only: axis a has n_a unknowns at
 * x = (i + 1) h_a with h_a = L_a / (n_a + 1); boundary values are zero.
 *
 * Periodic tori have an integer number of unit periods per axis and a fixed
 * number of nodes per unit cell m, so h = 1/m and x = i h. Integer
 * translations are exact index shifts by m.
 */
class DomainSpec {
public:
    static DomainSpec dirichlet_box(std::vector<double> lengths, std::vector<int> interior_points);
    static DomainSpec periodic_torus(std::vector<int> periods, int points_per_cell);

    int dimension() const { return dim_; }
    BoundaryKind kind() const { return kind_; }
    bool periodic() const { return kind_ == BoundaryKind::periodic; }

    int extent(int axis) const { return shape_[static_cast<std::size_t>(axis)]; }
    std::span<const int> shape() const { return {shape_.data(), static_cast<std::size_t>(dim_)}; }
    std::span<const double> lengths() const { return {lengths_.data(), static_cast<std::size_t>(dim_)}; }
    double spacing(int axis) const { return spacing_[static_cast<std::size_t>(axis)]; }
    /// Quadrature weight h_1 * ... * h_N of every node.
    double cell_volume() const { return cell_volume_; }
    /// Lebesgue measure of the domain.
    double measure() const;
    std::size_t size() const { return size_; }

    /// Periodic only.
    int points_per_cell() const;
    int period(int axis) const;

    /// Physical coordinate of node `index` along `axis`.
    double coordinate(int axis, int index) const;
    /// Row-major strides (last axis fastest), padded to 3 axes.
    std::array<std::size_t, 3> strides() const;
    std::array<int, 3> unravel(std::size_t flat) const;
    std::size_t ravel(const std::array<int, 3>& idx) const;

    bool operator==(const DomainSpec& other) const;

private:
    DomainSpec() = default;
    void finish();

    int dim_ = 1;
    BoundaryKind kind_ = BoundaryKind::dirichlet;
    std::array<int, 3> shape_{1, 1, 1};
    std::array<double, 3> lengths_{1.0, 1.0, 1.0};
    std::array<double, 3> spacing_{1.0, 1.0, 1.0};
    int points_per_cell_ = 0;
    double cell_volume_ = 1.0;
    std::size_t size_ = 1;
};

using DomainPtr = std::shared_ptr<const DomainSpec>;

inline DomainPtr make_domain(DomainSpec d) { return std::make_shared<const DomainSpec>(std::move(d)); }

/// Scalar field sampled on the nodes of a DomainSpec.
class GridFunction {
public:
    GridFunction() = default;
    explicit GridFunction(DomainPtr domain, double fill = 0.0);
    GridFunction(DomainPtr domain, std::vector<double> values);

    const DomainSpec& domain() const { return *domain_; }
    const DomainPtr& domain_ptr() const { return domain_; }
    std::size_t size() const { return values_.size(); }

    std::span<const double> values() const { return values_; }
    std::span<double> mutable_values() { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }

    bool same_grid(const GridFunction& other) const;
    void require_same_grid(const GridFunction& other, const char* what) const;
    bool all_finite() const;

    GridFunction& operator+=(const GridFunction& other);
    GridFunction& operator-=(const GridFunction& other);
    GridFunction& operator*=(double s);
    /// this += a * x
    GridFunction& axpy(double a, const GridFunction& x);

    bool operator==(const GridFunction& other) const;

private:
    DomainPtr domain_;
    std::vector<double> values_;
};

GridFunction operator+(GridFunction a, const GridFunction& b);
GridFunction operator-(GridFunction a, const GridFunction& b);
GridFunction operator*(double s, GridFunction a);

/// -Delta_h f with the 3/5/7-point stencil; zero ghosts (Dirichlet) or wrap-around (periodic).
GridFunction laplacian_apply(const GridFunction& f);

/// Discrete L2 inner product sum(f g) h^N.
double inner_l2(const GridFunction& f, const GridFunction& g);
/// Forward-difference Dirichlet energy sum over edges |D^+ f|^2 h^N.
double gradient_energy(const GridFunction& f);
/// ||f||_V^2 = gradient_energy(f) + sum V f^2 h^N. Rejects negative V.
double h_norm_sq(const GridFunction& f, const GridFunction& potential);
/// Variant used when the potential is already known to be admissible.
double weighted_sq(const GridFunction& f, const GridFunction& potential);
/// sum |f|^p h^N
double lp_power(const GridFunction& f, double p);
/// (sum |f|^p h^N)^(1/p)
double lp_norm(const GridFunction& f, double p);

/// Exact circular shift by whole unit cells: result(x) = f(x - z).
GridFunction shift(const GridFunction& f, std::span<const int> z);

struct LocalMass {
    double mass = 0.0;
    std::array<int, 3> center{0, 0, 0};
};

/// max over node centres y of sum_{|x-y| <= r} (u^2 + v^2) h^N using periodic distance.
LocalMass local_mass_sup(const GridFunction& u, const GridFunction& v, double radius);

/// Periodic (minimum image) or plain Euclidean distance between two nodes.
double node_distance(const DomainSpec& d, const std::array<int, 3>& a, const std::array<int, 3>& b);

}  // namespace nehari
