#include "nehari/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nehari {

DomainSpec DomainSpec::dirichlet_box(std::vector<double> lengths, std::vector<int> interior_points) {
    if (lengths.empty() || lengths.size() > 3 || lengths.size() != interior_points.size()) {
        throw DomainError("dirichlet_box: need 1-3 axes with matching lengths and resolutions");
    }
    DomainSpec d;
    d.dim_ = static_cast<int>(lengths.size());
    d.kind_ = BoundaryKind::dirichlet;
    for (std::size_t a = 0; a < lengths.size(); ++a) {
        if (!(lengths[a] > 0.0) || !std::isfinite(lengths[a])) {
            throw DomainError("dirichlet_box: side lengths must be positive");
        }
        if (interior_points[a] < 1) {
            throw DomainError("dirichlet_box: need at least one interior node per axis");
        }
        d.lengths_[a] = lengths[a];
        d.shape_[a] = interior_points[a];
        d.spacing_[a] = lengths[a] / static_cast<double>(interior_points[a] + 1);
    }
    d.finish();
    return d;
}

DomainSpec DomainSpec::periodic_torus(std::vector<int> periods, int points_per_cell) {
    if (periods.empty() || periods.size() > 3) {
        throw DomainError("periodic_torus: need 1-3 axes");
    }
    if (points_per_cell < 2) {
        throw DomainError("periodic_torus: need at least 2 nodes per unit cell");
    }
    DomainSpec d;
    d.dim_ = static_cast<int>(periods.size());
    d.kind_ = BoundaryKind::periodic;
    d.points_per_cell_ = points_per_cell;
    for (std::size_t a = 0; a < periods.size(); ++a) {
        if (periods[a] < 1) {
            throw DomainError("periodic_torus: periods must be positive integers");
        }
        d.lengths_[a] = static_cast<double>(periods[a]);
        d.shape_[a] = periods[a] * points_per_cell;
        d.spacing_[a] = 1.0 / static_cast<double>(points_per_cell);
    }
    d.finish();
    return d;
}

void DomainSpec::finish() {
    cell_volume_ = 1.0;
    size_ = 1;
    for (int a = 0; a < dim_; ++a) {
        cell_volume_ *= spacing_[static_cast<std::size_t>(a)];
        size_ *= static_cast<std::size_t>(shape_[static_cast<std::size_t>(a)]);
    }
}

double DomainSpec::measure() const {
    double m = 1.0;
    for (int a = 0; a < dim_; ++a) {
        m *= lengths_[static_cast<std::size_t>(a)];
    }
    return m;
}

int DomainSpec::points_per_cell() const {
    if (!periodic()) {
        throw DomainError("points_per_cell: domain is not periodic");
    }
    return points_per_cell_;
}

int DomainSpec::period(int axis) const { return extent(axis) / points_per_cell(); }

double DomainSpec::coordinate(int axis, int index) const {
    const double h = spacing(axis);
    return periodic() ? h * index : h * (index + 1);
}

std::array<std::size_t, 3> DomainSpec::strides() const {
    std::array<std::size_t, 3> s{1, 1, 1};
    std::size_t acc = 1;
    for (int a = dim_ - 1; a >= 0; --a) {
        s[static_cast<std::size_t>(a)] = acc;
        acc *= static_cast<std::size_t>(shape_[static_cast<std::size_t>(a)]);
    }
    return s;
}

std::array<int, 3> DomainSpec::unravel(std::size_t flat) const {
    std::array<int, 3> idx{0, 0, 0};
    for (int a = dim_ - 1; a >= 0; --a) {
        const auto n = static_cast<std::size_t>(shape_[static_cast<std::size_t>(a)]);
        idx[static_cast<std::size_t>(a)] = static_cast<int>(flat % n);
        flat /= n;
    }
    return idx;
}

std::size_t DomainSpec::ravel(const std::array<int, 3>& idx) const {
    std::size_t flat = 0;
    for (int a = 0; a < dim_; ++a) {
        flat = flat * static_cast<std::size_t>(shape_[static_cast<std::size_t>(a)]) +
               static_cast<std::size_t>(idx[static_cast<std::size_t>(a)]);
    }
    return flat;
}

bool DomainSpec::operator==(const DomainSpec& o) const {
    if (dim_ != o.dim_ || kind_ != o.kind_ || points_per_cell_ != o.points_per_cell_) {
        return false;
    }
    for (int a = 0; a < dim_; ++a) {
        const auto i = static_cast<std::size_t>(a);
        if (shape_[i] != o.shape_[i] || lengths_[i] != o.lengths_[i]) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------

GridFunction::GridFunction(DomainPtr domain, double fill)
    : domain_(std::move(domain)), values_(domain_->size(), fill) {}

GridFunction::GridFunction(DomainPtr domain, std::vector<double> values)
    : domain_(std::move(domain)), values_(std::move(values)) {
    if (values_.size() != domain_->size()) {
        throw DomainError("GridFunction: value count does not match the grid");
    }
}

bool GridFunction::same_grid(const GridFunction& other) const {
    if (!domain_ || !other.domain_) {
        return false;
    }
    return domain_ == other.domain_ || *domain_ == *other.domain_;
}

void GridFunction::require_same_grid(const GridFunction& other, const char* what) const {
    if (!same_grid(other)) {
        throw DomainError(std::string(what) + ": grid functions live on different domains");
    }
}

bool GridFunction::all_finite() const {
    return std::all_of(values_.begin(), values_.end(), [](double x) { return std::isfinite(x); });
}

GridFunction& GridFunction::operator+=(const GridFunction& other) {
    require_same_grid(other, "operator+=");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        values_[i] += other.values_[i];
    }
    return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
    require_same_grid(other, "operator-=");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        values_[i] -= other.values_[i];
    }
    return *this;
}

GridFunction& GridFunction::operator*=(double s) {
    for (double& x : values_) {
        x *= s;
    }
    return *this;
}

GridFunction& GridFunction::axpy(double a, const GridFunction& x) {
    require_same_grid(x, "axpy");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        values_[i] += a * x.values_[i];
    }
    return *this;
}

bool GridFunction::operator==(const GridFunction& other) const {
    return same_grid(other) && values_ == other.values_;
}

GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
GridFunction operator*(double s, GridFunction a) { return a *= s; }

// ---------------------------------------------------------------------------

namespace {

// Visits every grid line along `axis`: fn(base, stride, n) where the line's
// nodes are base + i * stride for i in [0, n).
template <typename Fn>
void for_each_line(const DomainSpec& d, int axis, Fn&& fn) {
    const std::size_t stride = d.strides()[static_cast<std::size_t>(axis)];
    const auto n = static_cast<std::size_t>(d.extent(axis));
    const std::size_t outer = d.size() / (n * stride);
    for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t inner = 0; inner < stride; ++inner) {
            fn(o * n * stride + inner, stride, n);
        }
    }
}

}  // namespace

GridFunction laplacian_apply(const GridFunction& f) {
    const DomainSpec& d = f.domain();
    GridFunction out(f.domain_ptr(), 0.0);
    const auto in = f.values();
    auto res = out.mutable_values();
    const bool periodic = d.periodic();
    for (int axis = 0; axis < d.dimension(); ++axis) {
        const double inv_h2 = 1.0 / (d.spacing(axis) * d.spacing(axis));
        for_each_line(d, axis, [&](std::size_t base, std::size_t stride, std::size_t n) {
            for (std::size_t i = 0; i < n; ++i) {
                const std::size_t at = base + i * stride;
                double left = 0.0;
                double right = 0.0;
                if (i > 0) {
                    left = in[at - stride];
                } else if (periodic) {
                    left = in[base + (n - 1) * stride];
                }
                if (i + 1 < n) {
                    right = in[at + stride];
                } else if (periodic) {
                    right = in[base];
                }
                res[at] += (2.0 * in[at] - left - right) * inv_h2;
            }
        });
    }
    return out;
}

double inner_l2(const GridFunction& f, const GridFunction& g) {
    f.require_same_grid(g, "inner_l2");
    const auto a = f.values();
    const auto b = g.values();
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s * f.domain().cell_volume();
}

double gradient_energy(const GridFunction& f) {
    const DomainSpec& d = f.domain();
    const auto in = f.values();
    const bool periodic = d.periodic();
    double total = 0.0;
    for (int axis = 0; axis < d.dimension(); ++axis) {
        const double inv_h = 1.0 / d.spacing(axis);
        double s = 0.0;
        for_each_line(d, axis, [&](std::size_t base, std::size_t stride, std::size_t n) {
            // forward edges i -> i+1; Dirichlet adds the ghost edge on the left
            if (!periodic) {
                const double e = in[base] * inv_h;
                s += e * e;
            }
            for (std::size_t i = 0; i < n; ++i) {
                const double here = in[base + i * stride];
                double next = 0.0;
                if (i + 1 < n) {
                    next = in[base + (i + 1) * stride];
                } else if (periodic) {
                    next = in[base];
                }
                const double e = (next - here) * inv_h;
                s += e * e;
            }
        });
        total += s;
    }
    return total * d.cell_volume();
}

double weighted_sq(const GridFunction& f, const GridFunction& potential) {
    f.require_same_grid(potential, "h_norm_sq");
    const auto a = f.values();
    const auto w = potential.values();
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += w[i] * a[i] * a[i];
    }
    return gradient_energy(f) + s * f.domain().cell_volume();
}

double h_norm_sq(const GridFunction& f, const GridFunction& potential) {
    const auto w = potential.values();
    if (std::any_of(w.begin(), w.end(), [](double x) { return x < 0.0; })) {
        throw DomainError("h_norm_sq: potential has negative entries");
    }
    return weighted_sq(f, potential);
}

double lp_power(const GridFunction& f, double p) {
    if (!(p >= 1.0)) {
        throw DomainError("lp_norm: exponent must be >= 1");
    }
    double s = 0.0;
    for (double x : f.values()) {
        s += std::pow(std::abs(x), p);
    }
    return s * f.domain().cell_volume();
}

double lp_norm(const GridFunction& f, double p) { return std::pow(lp_power(f, p), 1.0 / p); }

GridFunction shift(const GridFunction& f, std::span<const int> z) {
    const DomainSpec& d = f.domain();
    if (!d.periodic()) {
        throw DomainError("shift: only defined on periodic domains");
    }
    if (z.size() != static_cast<std::size_t>(d.dimension())) {
        throw DomainError("shift: shift vector has wrong dimension");
    }
    const int m = d.points_per_cell();
    std::array<int, 3> offs{0, 0, 0};
    for (int a = 0; a < d.dimension(); ++a) {
        const int n = d.extent(a);
        offs[static_cast<std::size_t>(a)] = ((z[static_cast<std::size_t>(a)] * m) % n + n) % n;
    }
    GridFunction out(f.domain_ptr(), 0.0);
    auto dst = out.mutable_values();
    const auto src = f.values();
    for (std::size_t flat = 0; flat < d.size(); ++flat) {
        auto idx = d.unravel(flat);
        for (int a = 0; a < d.dimension(); ++a) {
            const auto i = static_cast<std::size_t>(a);
            idx[i] = (idx[i] + offs[i]) % d.extent(a);
        }
        dst[d.ravel(idx)] = src[flat];
    }
    return out;
}

double node_distance(const DomainSpec& d, const std::array<int, 3>& a, const std::array<int, 3>& b) {
    double r2 = 0.0;
    for (int ax = 0; ax < d.dimension(); ++ax) {
        const auto i = static_cast<std::size_t>(ax);
        int diff = std::abs(a[i] - b[i]);
        if (d.periodic()) {
            diff = std::min(diff, d.extent(ax) - diff);
        }
        const double dx = diff * d.spacing(ax);
        r2 += dx * dx;
    }
    return std::sqrt(r2);
}

LocalMass local_mass_sup(const GridFunction& u, const GridFunction& v, double radius) {
    u.require_same_grid(v, "local_mass_sup");
    const DomainSpec& d = u.domain();
    if (!d.periodic()) {
        throw DomainError("local_mass_sup: only defined on periodic domains");
    }
    if (!(radius > 0.0)) {
        throw DomainError("local_mass_sup: radius must be positive");
    }
    for (int a = 0; a < d.dimension(); ++a) {
        if (radius > 0.5 * d.lengths()[static_cast<std::size_t>(a)]) {
            throw DomainError("local_mass_sup: radius exceeds half the torus");
        }
    }

    std::vector<double> density(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        density[i] = u[i] * u[i] + v[i] * v[i];
    }

    // The ball is a union of contiguous segments along the last axis, one per
    // offset of the leading axes. Rows are padded with their periodic wrap so
    // every segment sum runs over contiguous memory in a fixed order relative
    // to the centre (exactly shift-invariant).
    const int last = d.dimension() - 1;
    std::array<int, 3> reach{0, 0, 0};
    for (int a = 0; a < d.dimension(); ++a) {
        reach[static_cast<std::size_t>(a)] = static_cast<int>(std::floor(radius / d.spacing(a) + 1e-9));
    }
    struct Segment {
        std::array<int, 2> lead;
        int half_width;
    };
    std::vector<Segment> segments;
    const double r2 = radius * radius * (1.0 + 1e-12);
    const int reach0 = last >= 1 ? reach[0] : 0;
    const int reach1 = last >= 2 ? reach[1] : 0;
    for (int i = -reach0; i <= reach0; ++i) {
        for (int j = -reach1; j <= reach1; ++j) {
            double lead2 = 0.0;
            if (last >= 1) {
                lead2 += (i * d.spacing(0)) * (i * d.spacing(0));
            }
            if (last >= 2) {
                lead2 += (j * d.spacing(1)) * (j * d.spacing(1));
            }
            if (lead2 > r2) {
                continue;
            }
            const double hl = d.spacing(last);
            int w = 0;
            while (lead2 + ((w + 1) * hl) * ((w + 1) * hl) <= r2) {
                ++w;
            }
            segments.push_back({{i, j}, w});
        }
    }

    const int n_last = d.extent(last);
    const int pad = reach[static_cast<std::size_t>(last)];
    const std::size_t rows = d.size() / static_cast<std::size_t>(n_last);
    std::vector<double> padded(rows * static_cast<std::size_t>(n_last + 2 * pad));
    const std::size_t prow = static_cast<std::size_t>(n_last + 2 * pad);
    for (std::size_t r = 0; r < rows; ++r) {
        for (int x = -pad; x < n_last + pad; ++x) {
            const int wrapped = ((x % n_last) + n_last) % n_last;
            padded[r * prow + static_cast<std::size_t>(x + pad)] =
                density[r * static_cast<std::size_t>(n_last) + static_cast<std::size_t>(wrapped)];
        }
    }
    const int n0 = last >= 1 ? d.extent(0) : 1;
    const int n1 = last >= 2 ? d.extent(1) : 1;
    const auto row_of = [&](int a, int b) {
        const int aa = ((a % n0) + n0) % n0;
        const int bb = ((b % n1) + n1) % n1;
        return static_cast<std::size_t>(aa) * static_cast<std::size_t>(n1) + static_cast<std::size_t>(bb);
    };

    LocalMass best;
    best.mass = -1.0;
    std::vector<double> sums(static_cast<std::size_t>(n_last));
    for (int a = 0; a < n0; ++a) {
        for (int b = 0; b < n1; ++b) {
            std::fill(sums.begin(), sums.end(), 0.0);
            for (const auto& seg : segments) {
                const double* row = padded.data() + row_of(a + seg.lead[0], b + seg.lead[1]) * prow + pad;
                for (int x = 0; x < n_last; ++x) {
                    double s = 0.0;
                    for (int dx = -seg.half_width; dx <= seg.half_width; ++dx) {
                        s += row[x + dx];
                    }
                    sums[static_cast<std::size_t>(x)] += s;
                }
            }
            for (int x = 0; x < n_last; ++x) {
                if (sums[static_cast<std::size_t>(x)] > best.mass) {
                    best.mass = sums[static_cast<std::size_t>(x)];
                    std::array<int, 3> c{0, 0, 0};
                    if (last == 0) {
                        c[0] = x;
                    } else if (last == 1) {
                        c = {a, x, 0};
                    } else {
                        c = {a, b, x};
                    }
                    best.center = c;
                }
            }
        }
    }
    best.mass *= d.cell_volume();
    return best;
}

}  // namespace nehari
