#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "nehari/grid.hpp"

namespace nehari {

/// |s|^e with exact multiplication for small integer exponents.
double abs_pow(double s, double e);

struct PowerTerm {
    double coefficient = 1.0;
    double exponent = 4.0;
};

/**
 * Odd power-sum nonlinearity f(s) = sum_j a_j |s|^(p_j - 2) s with
 * primitive F(s) = sum_j (a_j / p_j) |s|^p_j.
 */
struct Nonlinearity {
    std::vector<PowerTerm> terms;

    double f(double s) const;
    double F(double s) const;
    double f_prime(double s) const;
    /// Largest exponent; the growth exponent p.
    double growth_exponent() const;
    double coefficient_sum() const;
};

/// Upper Sobolev-critical exponent 2N/(N-2); infinite for N <= 2.
double critical_exponent(int dimension);

struct ProblemSpec {
    DomainPtr domain;
    double q = 3.0;
    Nonlinearity f1;
    Nonlinearity f2;
    GridFunction V1;
    GridFunction V2;
    GridFunction lambda;
    /// Effective coupling bound: max(delta_min, user value) after validation.
    double delta = 0.0;
};

struct HypothesisCheck {
    std::string name;
    bool passed = true;
    double worst_margin = std::numeric_limits<double>::infinity();
    double witness = 0.0;
    std::string detail;
};

struct ValidationReport {
    std::vector<HypothesisCheck> checks;
    double delta_min = 0.0;

    bool passed() const;
    const HypothesisCheck* find(const std::string& name) const;
    /// First failing hypothesis name, or empty.
    std::string first_failure() const;
    void append(const ValidationReport& other);
    /// One line per hypothesis: name, pass/fail, worst margin, witness point.
    std::string to_text() const;
};

class ValidationError : public std::runtime_error {
public:
    ValidationError(const std::string& what, ValidationReport report)
        : std::runtime_error(what), report_(std::move(report)) {}
    const ValidationReport& report() const { return report_; }

private:
    ValidationReport report_;
};

/// Checks (F1)-(F5) for the power family plus numerical checks of the
/// Ambrosetti-Rabinowitz-type bound and the strict convexity inequality on
/// 400 log-spaced points per sign in [1e-6, 1e6]. `label` prefixes check names.
ValidationReport validate_nonlinearity(const Nonlinearity& nl, double q, int dimension = 1,
                                       const std::string& label = "");

/// (V1)-(V3): positivity, boundedness, lambda <= delta sqrt(V1 V2) with
/// delta_min < 1, and bit-exact unit-cell periodicity on tori.
ValidationReport validate_potentials(const ProblemSpec& spec);

/// Runs both validations; on success stores delta := max(delta_min, user delta).
/// Throws ValidationError carrying the full report on failure.
ValidationReport validate_problem(ProblemSpec& spec);

/// Smallest R with F(s) > |s|^q / q for all |s| >= R (single crossing).
double radius_R(const Nonlinearity& nl, double q);

/// Constant C with |F(s)| <= C (1 + |s|^p) for the power family.
double growth_constant(const Nonlinearity& nl);

}  // namespace nehari
