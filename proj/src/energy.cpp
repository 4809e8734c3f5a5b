#include "nehari/energy.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace nehari {

bool State::is_zero() const {
    const auto zero = [](double x) { return x == 0.0; };
    return std::all_of(u.values().begin(), u.values().end(), zero) &&
           std::all_of(v.values().begin(), v.values().end(), zero);
}

double inner_l2(const State& a, const State& b) { return inner_l2(a.u, b.u) + inner_l2(a.v, b.v); }

double max_abs(const State& s) {
    double m = 0.0;
    for (double x : s.u.values()) {
        m = std::max(m, std::abs(x));
    }
    for (double x : s.v.values()) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

State shift(const State& s, std::span<const int> z) { return {shift(s.u, z), shift(s.v, z)}; }

namespace {

void check_grid(const ProblemSpec& spec, const State& s) {
    s.u.require_same_grid(spec.V1, "energy");
    s.v.require_same_grid(spec.V1, "energy");
}

double cross_term(const ProblemSpec& spec, const State& s) {
    const auto u = s.u.values();
    const auto v = s.v.values();
    const auto lam = spec.lambda.values();
    double acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        acc += lam[i] * u[i] * v[i];
    }
    return acc * s.domain().cell_volume();
}

// sum over nodes of g(u_i) h^N
template <typename Fn>
double integrate(const GridFunction& w, Fn&& g) {
    double acc = 0.0;
    for (double x : w.values()) {
        acc += g(x);
    }
    return acc * w.domain().cell_volume();
}

GridFunction apply_operator(const GridFunction& w, const GridFunction& potential) {
    GridFunction out = laplacian_apply(w);
    auto o = out.mutable_values();
    const auto x = w.values();
    const auto V = potential.values();
    for (std::size_t i = 0; i < o.size(); ++i) {
        o[i] += V[i] * x[i];
    }
    return out;
}

}  // namespace

double norm_sq(const ProblemSpec& spec, const State& s) {
    check_grid(spec, s);
    return weighted_sq(s.u, spec.V1) + weighted_sq(s.v, spec.V2);
}

double norm(const ProblemSpec& spec, const State& s) { return std::sqrt(norm_sq(spec, s)); }

double inner_e(const ProblemSpec& spec, const State& a, const State& b) {
    check_grid(spec, a);
    check_grid(spec, b);
    return inner_l2(apply_operator(a.u, spec.V1), b.u) + inner_l2(apply_operator(a.v, spec.V2), b.v);
}

EnergyBreakdown energy(const ProblemSpec& spec, const State& s) {
    check_grid(spec, s);
    EnergyBreakdown e;
    e.quad = 0.5 * norm_sq(spec, s);
    e.cross = cross_term(spec, s);
    e.fpart = integrate(s.u, [&](double x) { return spec.f1.F(x); }) +
              integrate(s.v, [&](double x) { return spec.f2.F(x); });
    e.qpart = (integrate(s.u, [&](double x) { return abs_pow(x, spec.q); }) +
               integrate(s.v, [&](double x) { return abs_pow(x, spec.q); })) /
              spec.q;
    e.total = e.quad - e.cross - e.fpart + e.qpart;
    return e;
}

double coercive_form(const ProblemSpec& spec, const State& s) {
    return norm_sq(spec, s) - 2.0 * cross_term(spec, s);
}

State grad_l2(const ProblemSpec& spec, const State& s) {
    check_grid(spec, s);
    GridFunction gu = apply_operator(s.u, spec.V1);
    GridFunction gv = apply_operator(s.v, spec.V2);
    auto a = gu.mutable_values();
    auto b = gv.mutable_values();
    const auto u = s.u.values();
    const auto v = s.v.values();
    const auto lam = spec.lambda.values();
    const double qm2 = spec.q - 2.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] += -lam[i] * v[i] - spec.f1.f(u[i]) + abs_pow(u[i], qm2) * u[i];
        b[i] += -lam[i] * u[i] - spec.f2.f(v[i]) + abs_pow(v[i], qm2) * v[i];
    }
    return {std::move(gu), std::move(gv)};
}

Preconditioner::Preconditioner(const ProblemSpec& spec) : first_(spec.V1), second_(spec.V2) {}

State Preconditioner::apply(const State& r) const { return {first_.solve(r.u, 1e-10), second_.solve(r.v, 1e-10)}; }

State grad_precond(const ProblemSpec& spec, const State& s) { return Preconditioner(spec).apply(grad_l2(spec, s)); }

double nehari_xi(const ProblemSpec& spec, const State& s) {
    check_grid(spec, s);
    const double fu = integrate(s.u, [&](double x) { return spec.f1.f(x) * x; });
    const double fv = integrate(s.v, [&](double x) { return spec.f2.f(x) * x; });
    const double qq = integrate(s.u, [&](double x) { return abs_pow(x, spec.q); }) +
                      integrate(s.v, [&](double x) { return abs_pow(x, spec.q); });
    return coercive_form(spec, s) - fu - fv + qq;
}

double nehari_xi_slope(const ProblemSpec& spec, const State& s) {
    check_grid(spec, s);
    const double fu = integrate(s.u, [&](double x) { return spec.f1.f(x) * x + spec.f1.f_prime(x) * x * x; });
    const double fv = integrate(s.v, [&](double x) { return spec.f2.f(x) * x + spec.f2.f_prime(x) * x * x; });
    const double qq = integrate(s.u, [&](double x) { return abs_pow(x, spec.q); }) +
                      integrate(s.v, [&](double x) { return abs_pow(x, spec.q); });
    return 2.0 * coercive_form(spec, s) - fu - fv + spec.q * qq;
}

double fibering_value(const ProblemSpec& spec, const State& s, double t) { return energy(spec, s.scaled(t)).total; }

double fibering_slope(const ProblemSpec& spec, const State& s, double t) {
    return inner_l2(grad_l2(spec, s.scaled(t)), s);
}

double fibering_slope_on_manifold(const ProblemSpec& spec, const State& s, double t) {
    check_grid(spec, s);
    const double a = integrate(s.u, [&](double x) { return spec.f1.f(x) * t * x - spec.f1.f(t * x) * x; });
    const double b = integrate(s.v, [&](double x) { return spec.f2.f(x) * t * x - spec.f2.f(t * x) * x; });
    const double qq = integrate(s.u, [&](double x) { return abs_pow(x, spec.q); }) +
                      integrate(s.v, [&](double x) { return abs_pow(x, spec.q); });
    return a + b + (std::pow(t, spec.q - 1.0) - t) * qq;
}

// ---------------------------------------------------------------------------

RayProfile::RayProfile(const ProblemSpec& spec, const State& s) : q_(spec.q) {
    quadratic_ = coercive_form(spec, s);
    q_moment_ = integrate(s.u, [&](double x) { return abs_pow(x, spec.q); }) +
                integrate(s.v, [&](double x) { return abs_pow(x, spec.q); });
    for (const auto& t : spec.f1.terms) {
        const double m = integrate(s.u, [&](double x) { return abs_pow(x, t.exponent); });
        terms_.emplace_back(t.coefficient / t.exponent * m, t.exponent);
    }
    for (const auto& t : spec.f2.terms) {
        const double m = integrate(s.v, [&](double x) { return abs_pow(x, t.exponent); });
        terms_.emplace_back(t.coefficient / t.exponent * m, t.exponent);
    }
}

double RayProfile::value(double t) const {
    double out = 0.5 * quadratic_ * t * t + q_moment_ * std::pow(t, q_) / q_;
    for (const auto& [c, p] : terms_) {
        out -= c * std::pow(t, p);
    }
    return out;
}

double RayProfile::slope(double t) const {
    double out = quadratic_ * t + q_moment_ * std::pow(t, q_ - 1.0);
    for (const auto& [c, p] : terms_) {
        out -= c * p * std::pow(t, p - 1.0);
    }
    return out;
}

FiberingReport fibering_root(const RayProfile& ray) {
    FiberingReport rep;
    constexpr double limit = 1152921504606846976.0;  // 2^60
    const double s1 = ray.slope(1.0);
    double lo = 1.0;
    double hi = 1.0;
    if (s1 == 0.0) {
        rep.t_star = 1.0;
        rep.t_lo = 0.5;
        rep.t_hi = 2.0;
    } else if (s1 > 0.0) {
        hi = 2.0;
        while (ray.slope(hi) > 0.0) {
            lo = hi;
            hi *= 2.0;
            if (hi > limit) {
                throw FiberingError("fibering bracket failure: phi' stays positive up to 2^60");
            }
        }
    } else {
        lo = 0.5;
        while (ray.slope(lo) < 0.0) {
            hi = lo;
            lo *= 0.5;
            if (lo < 1.0 / limit) {
                throw FiberingError("fibering bracket failure: phi' stays negative down to 2^-60");
            }
        }
    }
    if (s1 != 0.0) {
        rep.t_lo = lo;
        rep.t_hi = hi;
        // Safeguarded Newton on phi' with a central-difference second derivative.
        double t = (s1 > 0.0) ? lo : hi;
        for (int it = 0; it < 200; ++it) {
            rep.iterations = it + 1;
            const double d = ray.slope(t);
            if (d == 0.0) {
                break;
            }
            (d > 0.0 ? lo : hi) = t;
            const double h = 1e-6 * t;
            const double dd = (ray.slope(t + h) - ray.slope(t - h)) / (2.0 * h);
            double next = t - d / dd;
            if (!(dd < 0.0) || !(next > lo && next < hi)) {
                next = 0.5 * (lo + hi);
            }
            const bool done = std::abs(next - t) <= 1e-12 * t || hi - lo <= 1e-12 * t;
            t = next;
            if (done) {
                break;
            }
        }
        rep.t_star = t;
    }
    rep.phi_at_t = ray.value(rep.t_star);
    const double scale = std::abs(ray.quadratic()) * rep.t_star;
    rep.slope_residual = scale > 0.0 ? std::abs(ray.slope(rep.t_star)) / scale : std::abs(ray.slope(rep.t_star));
    const double ends = std::max(ray.value(rep.t_lo), ray.value(rep.t_hi));
    if (rep.phi_at_t < ends - 1e-12 * std::abs(rep.phi_at_t)) {
        throw FiberingError(fmt::format("fibering projection did not find the maximum (phi(t*) = {}, ends = {})",
                                        rep.phi_at_t, ends));
    }
    return rep;
}

std::pair<FiberingReport, State> fibering_project(const ProblemSpec& spec, const State& s) {
    check_grid(spec, s);
    if (s.is_zero()) {
        throw FiberingError("fibering_project: the zero state has no projection");
    }
    const RayProfile ray(spec, s);
    FiberingReport rep = fibering_root(ray);
    return {rep, s.scaled(rep.t_star)};
}

}  // namespace nehari
