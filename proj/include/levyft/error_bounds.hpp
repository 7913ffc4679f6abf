#pragma once

#include <optional>

#include "levyft/bound_report.hpp"
#include "levyft/levy_models.hpp"
#include "levyft/payoffs.hpp"
#include "levyft/transform_pricer.hpp"

namespace levyft {

/// Numeric Hardy-norm constant
///   M_{alpha,a}(tau,x) = sum_{beta in {-a,a}} int_R |e^{-i(w+i beta)x} fhat_alpha(tau, w+i beta)| dw,
/// evaluated by adaptive quadrature on each boundary line with a certified
/// tail remainder folded in (the returned value is a slight upper bound of
/// the integral, keeping the quadrature bound rigorous).
double hardy_norm_M(const Model& model, const DampedPayoff& payoff, double tau, double x,
                    double alpha, double a, double rel_tol = 1e-8);

/// Explicit upper bound of M:
///   sum_{c in {-1,1}} e^{c a x} e^{tau Psi(alpha + c a)} N_g(c a) *
///       int_R e^{-tau(sig^2 w^2/2 + C(l)|w|^{2-l} 1_{|w|>1}/4)} dw
/// with N_g the boundary-line sup norm of the damped-payoff transform.
/// Requires sig^2 > 0 or C(lambda) > 0; the integral has a fully closed
/// Gaussian form when sig^2 > 0.
double m_tilde(const Model& model, const DampedPayoff& payoff, double tau, double x,
               double alpha, double a, double lambda);

/// Quadrature part: e^{alpha x} * m_value * conv / (e^{2 pi a/dw} - 1),
/// conv = 1/(2 pi) (Theorem) or 1/pi (Explicit), evaluated in log space.
double quadrature_bound(double m_value, double x, double alpha, double a, double delta_omega,
                        Convention convention);

/// Non-increasing integrable majorant c(w) >= |Re[e^{-iwx} fhat_alpha(tau,w)]|
/// with machine-checked monotonicity/convexity certificates and closed or
/// numeric tail integrals.
class TailMajorant {
public:
    TailMajorant(const Model& model, const DampedPayoff& payoff, double alpha, double tau,
                 double lambda);

    double at(double w) const;
    /// Certified: c non-increasing on [s, inf).
    bool nonincreasing_from(double s) const;
    /// Certified: c convex on [s, inf) (enables the n*dw lower limit).
    bool convex_from(double s) const;

    /// int_s^inf c, by the requested method.  SimplifiedC uses the
    /// tail-norm constant ||ghat||_{[s,inf)} and the closed decay tails;
    /// NumericEnvelope integrates the pointwise envelope with a certified
    /// remainder.
    double tail_integral(double s, CMethod method) const;

    const CharLineEnvelope& envelope() const { return env_; }

private:
    double decay_tail_closed(double s) const;  // int_s^inf e^{-tau(sig^2 w^2/2 + C|w|^{2-l} 1/4)} dw

    const Model* model_;
    DampedPayoff payoff_;
    double alpha_, tau_, lambda_, clam_, sigma2_;
    CharLineEnvelope env_;
    double mono_from_;  // scanned once at construction
};

/// Truncation part (e^{alpha x}/pi) int_s^inf c with s = n dw under the
/// convexity certificate, (n - 1/2) dw under monotonicity alone.
/// Returns the value and the lower limit used.
std::pair<double, double> truncation_bound(const Model& model, const DampedPayoff& payoff,
                                           const TransformPlan& plan, const TailMajorant& c,
                                           double x, CMethod method);

struct BoundOptions {
    Convention convention = Convention::Theorem;
    std::optional<MMethod> force_m_method;
    std::optional<CMethod> force_c_method;
    std::optional<double> lambda;  // small-jump decay order; family default otherwise
    double hardy_rel_tol = 1e-8;
};

/// Assembled bound  Ebar = conv-weighted quadrature part + truncation part.
/// m-method selection: MTildeGaussian when sig^2 > 0, MTilde when
/// C(lambda) > 0, HardyNumeric otherwise (or when the payoff norms are
/// unbounded), overridable through options.
BoundReport total_bound(const Model& model, const DampedPayoff& payoff, const TransformPlan& plan,
                        double x, const BoundOptions& options = {});

/// Bound for the strike-space (k-space) method at log-strike k, spot
/// log-moneyness x: same machinery on the k-space integrand, with the
/// recovery prefactor scale * e^{-alpha k}.
BoundReport total_bound_kspace(const Model& model, double scale, const TransformPlan& plan,
                               double x, double k, const BoundOptions& options = {});

/// Truncation bound of Lee's scheme for a k-space call under Kou:
///   e^{-alpha k} Phi(u) e^{1/2} e^{-sigma omega_max} / (pi sigma),
/// Phi(u) the appendix majorant constant built from the Kou exponent with
/// the denominator alpha^2 (alpha+1)^2.  Requires alpha + 1 < eta1.
double lee_truncation_bound_kou(const Model& model, double tau, double alpha_k, double omega_max,
                                double log_strike);

}  // namespace levyft
