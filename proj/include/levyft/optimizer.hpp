#pragma once

#include <vector>

#include "levyft/error_bounds.hpp"

namespace levyft {

struct TraceEntry {
    double alpha, a, delta_omega, bound_total;
};

struct OptimizationReport {
    TransformPlan best_plan;
    BoundReport best_bound;
    long evaluations = 0;
    std::vector<TraceEntry> trace;
    bool converged = false;
};

/// Unique bound-minimizing spacing for fixed (alpha, a, n): the sign change
/// of h(y) = p(y,b) - c(y), y = n dw, b = 2 pi a n,
/// p(y,b) = b Mbar e^{b/y} / ((e^{b/y}-1)^2 y^2), located by geometric
/// bracket expansion and bisection.  Mbar is convention-weighted
/// (pi * conv * m_value) so the root matches the evaluated bound.
double optimal_delta_omega(const Model& model, const DampedPayoff& payoff, double tau, double x,
                           double alpha, double a, int n, double m_value,
                           const TailMajorant& c, Convention convention);

struct OptimizeControl {
    Convention convention = Convention::Theorem;
    std::optional<MMethod> force_m_method;
    std::optional<CMethod> force_c_method;
    double margin = 1e-3;     // relative box shrink away from the strip edges
    double alpha_span = 40.0; // search span when the strip leaves alpha unbounded
    int grid = 32;            // coarse grid resolution per axis
    int max_refine = 500;     // simplex evaluation budget
    bool with_trace = true;
    std::optional<std::pair<double, double>> warm_start;  // (alpha, a-fraction)
};

/// Minimizes the bound over the admissible (alpha, a) box, each candidate
/// evaluated at its own inner-optimal spacing: coarse grid then a
/// deterministic reflect/expand/contract simplex.  Binaries fix alpha = 0
/// and search over a alone.
OptimizationReport optimize_plan(const Model& model, const DampedPayoff& payoff, double tau,
                                 double x, int n, const OptimizeControl& control = {});

/// Doubling scheme: optimize at n = n0, 2 n0, ... until the certified
/// bound is below `tolerance`, warm-starting each level from the previous
/// optimum.  Throws NumericError when n_cap is passed (the failed report
/// is available through choose_n_partial).
OptimizationReport choose_n(const Model& model, const DampedPayoff& payoff, double tau, double x,
                            double tolerance, int n0, const OptimizeControl& control = {},
                            int n_cap = 1 << 20);

/// Exception carrying the best report when choose_n fails to certify.
class ToleranceError : public NumericError {
public:
    ToleranceError(const std::string& what, OptimizationReport best)
        : NumericError(what), best_(std::move(best)) {}
    const OptimizationReport& best() const { return best_; }

private:
    OptimizationReport best_;
};

/// Payoff rebuilt with a different damping (strike and kind preserved).
DampedPayoff with_alpha(const DampedPayoff& payoff, double alpha);

}  // namespace levyft
