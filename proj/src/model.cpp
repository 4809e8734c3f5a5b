#include "nehari/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <fmt/format.h>

namespace nehari {

double abs_pow(double s, double e) {
    const double a = std::abs(s);
    if (e == 1.0) {
        return a;
    }
    if (e == 2.0) {
        return a * a;
    }
    if (e == 3.0) {
        return a * a * a;
    }
    if (e == 4.0) {
        const double a2 = a * a;
        return a2 * a2;
    }
    if (e == 0.0) {
        return 1.0;
    }
    return std::pow(a, e);
}

double Nonlinearity::f(double s) const {
    double out = 0.0;
    for (const auto& t : terms) {
        out += t.coefficient * abs_pow(s, t.exponent - 2.0) * s;
    }
    return out;
}

double Nonlinearity::F(double s) const {
    double out = 0.0;
    for (const auto& t : terms) {
        out += t.coefficient / t.exponent * abs_pow(s, t.exponent);
    }
    return out;
}

double Nonlinearity::f_prime(double s) const {
    double out = 0.0;
    for (const auto& t : terms) {
        out += t.coefficient * (t.exponent - 1.0) * abs_pow(s, t.exponent - 2.0);
    }
    return out;
}

double Nonlinearity::growth_exponent() const {
    double p = 0.0;
    for (const auto& t : terms) {
        p = std::max(p, t.exponent);
    }
    return p;
}

double Nonlinearity::coefficient_sum() const {
    double s = 0.0;
    for (const auto& t : terms) {
        s += t.coefficient;
    }
    return s;
}

double critical_exponent(int dimension) {
    if (dimension <= 2) {
        return std::numeric_limits<double>::infinity();
    }
    return 2.0 * dimension / (dimension - 2.0);
}

// ---------------------------------------------------------------------------

bool ValidationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const HypothesisCheck& c) { return c.passed; });
}

const HypothesisCheck* ValidationReport::find(const std::string& name) const {
    for (const auto& c : checks) {
        if (c.name == name) {
            return &c;
        }
    }
    return nullptr;
}

std::string ValidationReport::first_failure() const {
    for (const auto& c : checks) {
        if (!c.passed) {
            return c.name;
        }
    }
    return {};
}

void ValidationReport::append(const ValidationReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
    delta_min = std::max(delta_min, other.delta_min);
}

std::string ValidationReport::to_text() const {
    std::ostringstream os;
    for (const auto& c : checks) {
        os << fmt::format("{} {} margin={:.17g} witness={:.17g}", c.name, c.passed ? "pass" : "fail",
                          c.worst_margin, c.witness);
        if (!c.detail.empty()) {
            os << " # " << c.detail;
        }
        os << '\n';
    }
    return os.str();
}

namespace {

std::vector<double> log_samples() {
    constexpr int count = 400;
    std::vector<double> s(count);
    for (int i = 0; i < count; ++i) {
        s[static_cast<std::size_t>(i)] = std::pow(10.0, -6.0 + 12.0 * i / (count - 1));
    }
    return s;
}

HypothesisCheck make_check(std::string name) {
    HypothesisCheck c;
    c.name = std::move(name);
    return c;
}

void record(HypothesisCheck& c, double margin, double witness) {
    if (margin < c.worst_margin) {
        c.worst_margin = margin;
        c.witness = witness;
    }
}

}  // namespace

ValidationReport validate_nonlinearity(const Nonlinearity& nl, double q, int dimension, const std::string& label) {
    ValidationReport rep;
    const std::string pre = label.empty() ? "" : label + " ";
    const double crit = critical_exponent(dimension);

    auto f1 = make_check(pre + "(F1)");
    auto f2 = make_check(pre + "(F2)");
    auto f3 = make_check(pre + "(F3)");
    auto f4 = make_check(pre + "(F4)");
    auto f5 = make_check(pre + "(F5)");

    if (nl.terms.empty()) {
        f3.passed = false;
        f3.detail = "no terms";
    }
    if (!(q > 2.0)) {
        f4.passed = false;
        f4.detail = "q must exceed 2";
    }
    for (const auto& t : nl.terms) {
        if (!(t.coefficient > 0.0)) {
            f3.passed = false;
            record(f3, t.coefficient, t.exponent);
            f3.detail = fmt::format("coefficient {} is not positive", t.coefficient);
        }
        if (!(t.exponent > q)) {
            f4.passed = false;
            record(f4, t.exponent - q, t.exponent);
            f4.detail = fmt::format("exponent {} does not exceed q = {}", t.exponent, q);
        }
        if (!(t.exponent < crit)) {
            f1.passed = false;
            record(f1, crit - t.exponent, t.exponent);
            f1.detail = fmt::format("exponent {} is not subcritical", t.exponent);
        } else {
            record(f1, std::isfinite(crit) ? crit - t.exponent : std::numeric_limits<double>::infinity(), t.exponent);
        }
        // f(s)/s -> 0 at the origin
        record(f2, t.exponent - 2.0, t.exponent);
        if (!(t.exponent > 2.0)) {
            f2.passed = false;
            f2.detail = fmt::format("exponent {} does not exceed 2", t.exponent);
        }
        if (t.exponent > q) {
            record(f4, t.exponent - q, t.exponent);
        }
        record(f3, t.coefficient, t.exponent);
    }
    if (!f4.passed || !f3.passed) {
        rep.checks = {f1, f2, f3, f4, f5};
        return rep;
    }

    auto ar = make_check(pre + "(AR)");
    auto convex = make_check(pre + "(CVX)");
    const auto samples = log_samples();
    for (double sign : {1.0, -1.0}) {
        for (double a : samples) {
            const double s = sign * a;
            const double fs = nl.f(s) * s;
            const double F = nl.F(s);
            const double dfs = nl.f_prime(s) * s * s;
            // (F5): oddness
            const double odd = nl.f(-s) + nl.f(s);
            if (odd != 0.0) {
                f5.passed = false;
            }
            record(f5, 1.0 - std::abs(odd) / std::max(std::abs(nl.f(s)), std::numeric_limits<double>::min()), s);
            // 0 <= q F(s) <= f(s) s
            const double ar_margin = std::min(F, fs - q * F);
            if (!(F >= 0.0 && fs - q * F >= 0.0)) {
                ar.passed = false;
            }
            record(ar, ar_margin / std::max(fs, std::numeric_limits<double>::min()), s);
            // f'(s)s^2 - f(s)s > (q-2) f(s)s
            const double cvx_gap = dfs - fs - (q - 2.0) * fs;
            if (!(cvx_gap > 0.0)) {
                convex.passed = false;
            }
            record(convex, cvx_gap / std::max(fs, std::numeric_limits<double>::min()), s);
        }
    }
    f5.detail = "margin = 1 - |f(-s) + f(s)| / |f(s)|";
    rep.checks = {f1, f2, f3, f4, f5, ar, convex};
    return rep;
}

ValidationReport validate_potentials(const ProblemSpec& spec) {
    ValidationReport rep;
    spec.V1.require_same_grid(spec.V2, "validate_potentials");
    spec.V1.require_same_grid(spec.lambda, "validate_potentials");
    const DomainSpec& d = spec.V1.domain();

    auto v1 = make_check("(V1)");
    auto v2 = make_check("(V2)");
    double delta_min = 0.0;
    std::size_t worst_node = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (const GridFunction* V : {&spec.V1, &spec.V2}) {
            const double x = (*V)[i];
            if (!std::isfinite(x) || !(x > 0.0)) {
                v1.passed = false;
            }
            record(v1, std::isfinite(x) ? x : -1.0, static_cast<double>(i));
        }
        const double lam = spec.lambda[i];
        if (!std::isfinite(lam) || lam < 0.0) {
            v2.passed = false;
            v2.detail = "lambda is negative or not finite";
        }
        const double denom = std::sqrt(spec.V1[i] * spec.V2[i]);
        if (denom > 0.0) {
            const double ratio = lam / denom;
            if (ratio > delta_min) {
                delta_min = ratio;
                worst_node = i;
            }
        }
    }
    rep.delta_min = delta_min;
    v2.worst_margin = 1.0 - delta_min;
    v2.witness = static_cast<double>(worst_node);
    if (!(delta_min < 1.0)) {
        v2.passed = false;
        v2.detail = fmt::format("delta_min = {:.17g} >= 1", delta_min);
    } else if (v2.detail.empty()) {
        v2.detail = fmt::format("delta_min = {:.17g}", delta_min);
    }
    rep.checks = {v1, v2};

    if (d.periodic()) {
        auto v3 = make_check("(V3)");
        v3.worst_margin = 0.0;
        const int m = d.points_per_cell();
        const auto strides = d.strides();
        for (std::size_t flat = 0; flat < d.size() && v3.passed; ++flat) {
            const auto idx = d.unravel(flat);
            for (int a = 0; a < d.dimension(); ++a) {
                const auto ai = static_cast<std::size_t>(a);
                if (idx[ai] + m >= d.extent(a)) {
                    continue;
                }
                const std::size_t other = flat + strides[ai] * static_cast<std::size_t>(m);
                for (const GridFunction* V : {&spec.V1, &spec.V2, &spec.lambda}) {
                    if ((*V)[flat] != (*V)[other]) {
                        v3.passed = false;
                        v3.worst_margin = -std::abs((*V)[flat] - (*V)[other]);
                        v3.witness = static_cast<double>(flat);
                        v3.detail = "sampled data is not unit-periodic";
                    }
                }
            }
        }
        rep.checks.push_back(v3);
    }
    return rep;
}

ValidationReport validate_problem(ProblemSpec& spec) {
    if (!spec.domain) {
        spec.domain = spec.V1.domain_ptr();
    }
    ValidationReport rep = validate_nonlinearity(spec.f1, spec.q, spec.domain->dimension(), "f1");
    rep.append(validate_nonlinearity(spec.f2, spec.q, spec.domain->dimension(), "f2"));
    const ValidationReport pot = validate_potentials(spec);
    rep.append(pot);
    if (!rep.passed()) {
        throw ValidationError("hypothesis " + rep.first_failure() + " violated", rep);
    }
    spec.delta = std::max(pot.delta_min, spec.delta);
    if (!(spec.delta < 1.0)) {
        throw ValidationError("coupling bound delta must be < 1", rep);
    }
    return rep;
}

double radius_R(const Nonlinearity& nl, double q) {
    const auto g = [&](double s) { return nl.F(s) - std::pow(s, q) / q; };
    double hi = 1.0;
    while (g(hi) <= 0.0) {
        hi *= 2.0;
        if (hi > 1e300) {
            throw std::runtime_error("radius_R: F never dominates |s|^q/q");
        }
    }
    double lo = hi;
    while (g(lo) > 0.0) {
        lo *= 0.5;
        if (lo < 1e-300) {
            throw std::runtime_error("radius_R: F dominates |s|^q/q near zero");
        }
    }
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? hi : lo) = mid;
    }
    return hi;
}

double growth_constant(const Nonlinearity& nl) {
    double ratio_sum = 0.0;
    for (const auto& t : nl.terms) {
        ratio_sum += t.coefficient / t.exponent;
    }
    return std::max(ratio_sum, nl.coefficient_sum());
}

}  // namespace nehari
