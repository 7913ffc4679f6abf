#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "levyft/errors.hpp"

namespace levyft {

/// Result of a numerical quadrature. `error_estimate` is an absolute
/// estimate that in practice bounds the true error for analytic
/// integrands; `value` is always finite.
struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
};

/// Quadrature failure carrying the best estimate obtained so far.
class QuadratureError : public NumericError {
public:
    QuadratureError(const std::string& what, QuadratureResult best)
        : NumericError(what), best_{best} {}
    const QuadratureResult& best() const { return best_; }

private:
    QuadratureResult best_;
};

/// Standard normal CDF, absolute error below 1e-15.
double normal_cdf(double x);

/// Lower incomplete gamma gamma(s,x) = int_0^x t^{s-1} e^{-t} dt for s > 0,
/// x >= 0 (non-regularized). Series for x < s+1, continued fraction
/// otherwise; relative error ~1e-14.
double lower_incomplete_gamma(double s, double x);

/// Upper incomplete gamma Gamma(s,x) = Gamma(s) - gamma(s,x).
double upper_incomplete_gamma(double s, double x);

/// Auxiliary tail quantity I(a,b) = e^{-a} + a^{-1/b} gamma(1/b, a), for
/// a > 0, b in (0,2]. Appears as a closed-form estimate of power-exponential
/// tail integrals; note it is not a uniform upper bound of
/// int_1^inf e^{-a u^b} du (see power_exp_tail for the exact value).
double tail_aux_I(double a, double b);

/// Exact tail integral int_s^inf e^{-A w^b} dw
///   = (1/b) A^{-1/b} Gamma(1/b, A s^b)        (A > 0, b > 0, s >= 0).
double power_exp_tail(double A, double b, double s);

/// How a semi-infinite integrand decays past the integration window.
/// The majorant kinds give a closed-form remainder; MapToUnit integrates
/// through the substitution w = lo + t/(1-t) instead.
struct TailHint {
    enum class Kind { ExpDecay, GaussDecay, PowerDecay, MapToUnit };
    Kind kind = Kind::MapToUnit;
    double coef = 0.0;   // majorant f(w) <= coef * e^{-rate w} / e^{-rate w^2} / w^{-power}
    double rate = 0.0;
    double power = 0.0;

    static TailHint exp_decay(double coef, double rate) { return {Kind::ExpDecay, coef, rate, 0.0}; }
    static TailHint gauss_decay(double coef, double rate) { return {Kind::GaussDecay, coef, rate, 0.0}; }
    static TailHint power_decay(double coef, double power) { return {Kind::PowerDecay, coef, 0.0, power}; }
    static TailHint map_to_unit() { return {Kind::MapToUnit, 0.0, 0.0, 0.0}; }

    double remainder(double omega) const;  // certified bound on int_omega^inf f
};

namespace detail {

// Clenshaw-Curtis nodes/weights on [-1,1] for n+1 points, n a power of two.
// Built once per level and cached.
struct CcLevel {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const CcLevel& cc_level(int n);

}  // namespace detail

/// Adaptive Clenshaw-Curtis on [lo,hi] with doubling node counts
/// 33, 65, ..., 4097. The error estimate is the difference of the last two
/// levels, which for analytic integrands bounds the error of the finer one.
/// Throws QuadratureError (carrying the best estimate) if the budget is
/// exhausted before |I_n - I_{n/2}| <= max(tol, floor).
template <class F>
QuadratureResult integrate_finite(F&& f, double lo, double hi, double tol) {
    if (!(lo < hi)) throw DomainError("integrate_finite: requires lo < hi");
    if (!(tol > 0.0)) throw DomainError("integrate_finite: requires tol > 0");
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    double prev = 0.0;
    long evals = 0;
    QuadratureResult out;
    for (int n = 32; n <= 4096; n *= 2) {
        const auto& lvl = detail::cc_level(n);
        double acc = 0.0;
        for (int j = 0; j <= n; ++j) acc += lvl.weights[j] * f(mid + half * lvl.nodes[j]);
        acc *= half;
        evals += n + 1;
        if (!std::isfinite(acc))
            throw QuadratureError("integrate_finite: non-finite integrand sum", {acc, INFINITY, evals});
        if (n > 32) {
            const double est = std::abs(acc - prev);
            out = {acc, std::max(est, 4e-16 * std::abs(acc)), evals};
            if (est <= std::max(tol, 1e-15 * std::abs(acc))) return out;
        }
        prev = acc;
    }
    throw QuadratureError("integrate_finite: refinement budget exhausted", out);
}

/// Semi-infinite integral int_lo^inf f. With a majorant hint, integrates
/// geometrically widening panels until the certified remainder is below
/// tol/2; the remainder is added to error_estimate, never assumed zero.
/// The majorant is checked against samples of f and must dominate.
/// With MapToUnit, substitutes w = lo + t/(1-t) and integrates on (0,1).
QuadratureResult integrate_semi_infinite(const std::function<double(double)>& f, double lo,
                                         double tol, const TailHint& tail);

}  // namespace levyft
