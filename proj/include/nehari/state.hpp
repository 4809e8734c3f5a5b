#pragma once

#include "nehari/grid.hpp"

namespace nehari {

/// The unknown (u, v) of the coupled system.
struct State {
    GridFunction u;
    GridFunction v;

    State() = default;
    State(GridFunction u_, GridFunction v_) : u(std::move(u_)), v(std::move(v_)) {
        u.require_same_grid(v, "State");
    }
    static State zeros(const DomainPtr& domain) { return {GridFunction(domain), GridFunction(domain)}; }

    const DomainSpec& domain() const { return u.domain(); }
    const DomainPtr& domain_ptr() const { return u.domain_ptr(); }

    State scaled(double t) const { return {t * u, t * v}; }
    State& operator*=(double t) {
        u *= t;
        v *= t;
        return *this;
    }
    State& axpy(double a, const State& x) {
        u.axpy(a, x.u);
        v.axpy(a, x.v);
        return *this;
    }
    bool is_zero() const;
    bool all_finite() const { return u.all_finite() && v.all_finite(); }
    void require_same_grid(const State& other, const char* what) const { u.require_same_grid(other.u, what); }

    bool operator==(const State& other) const { return u == other.u && v == other.v; }
};

inline State operator-(const State& a, const State& b) { return {a.u - b.u, a.v - b.v}; }
inline State operator+(const State& a, const State& b) { return {a.u + b.u, a.v + b.v}; }

/// sum over both components of the discrete L2 pairing.
double inner_l2(const State& a, const State& b);
double max_abs(const State& s);

/// Integer unit-cell translation of both components.
State shift(const State& s, std::span<const int> z);

}  // namespace nehari
