#include "levyft/error_bounds.hpp"

#include <algorithm>
#include <cmath>

#include "levyft/special_math.hpp"

namespace levyft {

namespace {

// Payoff line-modulus tail data: modulus_on_line(w, beta) <= A * w^{m-d}
// for w >= w_min, with m the Greek order and d the base decay.
struct PayoffTailCoef {
    double A;
    double w_min;
};

PayoffTailCoef payoff_tail_coef(const DampedPayoff& p, double beta) {
    const int m = p.greek_order();
    if (p.kind() == PayoffKind::Binary) {
        const double a = std::exp(-beta * p.support_hi());
        const double b = std::exp(-beta * p.support_lo());
        const double A = p.scale() * (a + b) * (m == 2 ? M_SQRT2 : 1.0);
        return {A, std::max(1.0, std::abs(beta))};
    }
    const double c1 = 1.0 - p.alpha() - beta;
    const double c2 = p.alpha() + beta;
    const double A =
        p.scale() * std::exp((1.0 - p.alpha() - beta) * p.log_strike()) * (m == 2 ? M_SQRT2 : 1.0);
    return {A, std::max({1.0, std::abs(c1), std::abs(c2)})};
}

// Certified bound on  int_s^inf payoff_line_modulus(w) * E(w) dw  given the
// envelope's Gaussian/power tail data.  Throws NumericError when the
// combination is not integrable (H3 fails).
double line_tail_remainder(const DampedPayoff& p, double beta, const CharLineEnvelope& env,
                           double s) {
    const auto tc = payoff_tail_coef(p, beta);
    const int m = p.greek_order();
    const double d = p.base_decay();
    const double pw = m - d;  // payoff grows like w^pw past tc.w_min
    if (s < tc.w_min) throw DomainError("line_tail_remainder: s below the envelope onset");
    if (env.gauss_rate() > 0.0) {
        const double q = env.gauss_rate();
        const double coef = std::exp(env.log_at(s) + q * s * s);  // frozen non-Gaussian part
        if (pw <= 0.0) {
            // payoff factor non-increasing: freeze at s
            const double pf = tc.A * std::pow(s, pw);
            return pf * coef * TailHint::gauss_decay(1.0, q).remainder(s);
        }
        // binary Gamma: payoff ~ A w; int_s A w e^{-q w^2} dw = A e^{-q s^2}/(2q)
        return tc.A * coef * std::exp(-q * s * s) / (2.0 * q);
    }
    const double p_tot = env.power_p() - pw;
    if (!(p_tot > 1.0))
        throw NumericError("hardy tail: integrand not integrable (H3 fails for this payoff/model)");
    const double A_tot = tc.A * std::exp(env.power_amp_log());
    return A_tot * std::pow(s, 1.0 - p_tot) / (p_tot - 1.0);
}

// Finite integral with panels graded geometrically toward `lo`, for
// integrands with a sharp (regularized) peak at the left endpoint.
template <class F>
QuadratureResult graded_integrate(F&& f, double lo, double hi, double tol) {
    QuadratureResult out;
    const int levels = 14;
    double right = hi;
    for (int i = 0; i < levels; ++i) {
        const double left = (i + 1 == levels) ? lo : lo + (right - lo) * 0.25;
        auto r = integrate_finite(f, left, right, tol / levels);
        out.value += r.value;
        out.error_estimate += r.error_estimate;
        out.evaluations += r.evaluations;
        right = left;
        if (right <= lo) break;
    }
    return out;
}

// Numeric integral of f over [s, infinity) with the remainder supplied by
// `rem(w)`: geometric panels, each by adaptive Clenshaw-Curtis.
template <class F, class R>
QuadratureResult panel_integrate(F&& f, double s, double rel_tol, R&& rem) {
    QuadratureResult out;
    double left = s;
    double width = std::max(0.5, 0.25 * std::abs(s));
    for (int p = 0; p < 80; ++p) {
        const double right = left + width;
        const double rough = std::abs(f(0.5 * (left + right))) * width;
        const double tol = std::max({1e-14, rel_tol * std::abs(out.value), rel_tol * rough});
        auto r = integrate_finite(f, left, right, tol);
        out.value += r.value;
        out.error_estimate += r.error_estimate;
        out.evaluations += r.evaluations + 1;
        left = right;
        width *= 2.0;
        const double tail = rem(left);
        if (tail <= std::max(1e-300, rel_tol * std::abs(out.value))) {
            out.error_estimate += tail;
            return out;
        }
    }
    throw QuadratureError("panel_integrate: panel budget exhausted", out);
}

}  // namespace

double hardy_norm_M(const Model& model, const DampedPayoff& payoff, double tau, double x,
                    double alpha, double a, double rel_tol) {
    if (!(a > 0.0)) throw DomainError("hardy_norm_M: requires a > 0");
    if (!(a < payoff.strip_halfwidth_max()))
        throw DomainError("hardy_norm_M: H2 fails, a >= payoff strip half-width");
    const auto strip = model.strip();
    if (!(strip.contains(alpha - a) && strip.contains(alpha + a)))
        throw DomainError("hardy_norm_M: H1 fails, alpha +- a outside the model strip");
    if (std::abs(payoff.alpha() - alpha) > 1e-12)
        throw DomainError("hardy_norm_M: alpha disagrees with the payoff damping");

    double total = 0.0;
    for (double beta : {-a, a}) {
        const double c = alpha + beta;
        const auto env = model.line_envelope(c, tau);
        auto f = [&](double w) {
            return std::exp(model.log_cf_mod(c, w, tau)) * payoff.modulus_on_line(w, beta);
        };
        const auto tc = payoff_tail_coef(payoff, beta);
        auto rem = [&](double w) { return line_tail_remainder(payoff, beta, env, w); };
        // start far enough out that the payoff tail coefficient applies
        const double s0 = tc.w_min;
        const double head_tol =
            std::max(1e-13, rel_tol * std::abs(f(0.5 * s0)) * s0);
        auto head = graded_integrate(f, 0.0, s0, head_tol);
        auto tail = panel_integrate(f, s0, rel_tol, rem);
        // integrand is even in w; fold in the numeric safety margins so the
        // result certifiably dominates the true line integral
        total += std::exp(beta * x) * 2.0 *
                 (head.value + head.error_estimate + tail.value + tail.error_estimate);
    }
    return total;
}

double m_tilde(const Model& model, const DampedPayoff& payoff, double tau, double x, double alpha,
               double a, double lambda) {
    const double sig2 = model.sigma2();
    const double clam = model.compute_C_lambda(lambda).value;
    if (!(sig2 > 0.0) && !(clam > 0.0))
        throw NumericError("m_tilde: sigma^2 = 0 and C(lambda) = 0; use hardy_norm_M");
    const auto strip = model.strip();
    if (!(strip.contains(alpha - a) && strip.contains(alpha + a)))
        throw DomainError("m_tilde: alpha +- a outside the model strip");
    if (!(a < payoff.strip_halfwidth_max()))
        throw DomainError("m_tilde: a >= payoff strip half-width");

    double integral;
    if (sig2 > 0.0 && clam <= 0.0) {
        integral = std::sqrt(2.0 * M_PI / (tau * sig2));
    } else if (sig2 <= 0.0) {
        integral = 2.0 * (1.0 + power_exp_tail(0.25 * tau * clam, 2.0 - lambda, 1.0));
    } else {
        // both positive: Gaussian mass on [-1,1] plus the mixed bound b(1)
        const double g = std::sqrt(tau * sig2);
        const double inner = std::sqrt(2.0 * M_PI / (tau * sig2)) * (2.0 * normal_cdf(g) - 1.0);
        const double A = 0.25 * tau * clam, b = 2.0 - lambda;
        const double t1 = std::exp(-0.5 * tau * sig2) * power_exp_tail(A, b, 1.0);
        const double t2 = std::exp(-A) * std::sqrt(2.0 * M_PI / (tau * sig2)) * (1.0 - normal_cdf(g));
        integral = inner + 2.0 * std::min(t1, t2);
    }

    double total = 0.0;
    for (double c : {-1.0, 1.0}) {
        const double beta = c * a;
        total += std::exp(beta * x) * std::exp(tau * model.psi_real(alpha + beta)) *
                 payoff.sup_norm_boundary_line(beta) * integral;
    }
    return total;
}

double quadrature_bound(double m_value, double x, double alpha, double a, double delta_omega,
                        Convention convention) {
    if (!(m_value >= 0.0)) throw DomainError("quadrature_bound: requires m_value >= 0");
    if (!(a > 0.0 && delta_omega > 0.0)) throw DomainError("quadrature_bound: requires a, dw > 0");
    const double t = 2.0 * M_PI * a / delta_omega;
    // 1/(e^t - 1) = e^{-t}/(1 - e^{-t}), stable for all t > 0
    const double inv = std::exp(-t) / (-std::expm1(-t));
    const double conv = (convention == Convention::Theorem) ? 0.5 / M_PI : 1.0 / M_PI;
    return std::exp(alpha * x) * m_value * conv * inv;
}

TailMajorant::TailMajorant(const Model& model, const DampedPayoff& payoff, double alpha,
                           double tau, double lambda)
    : model_(&model),
      payoff_(payoff),
      alpha_(alpha),
      tau_(tau),
      lambda_(lambda),
      clam_(model.compute_C_lambda(lambda).value),
      sigma2_(model.sigma2()),
      env_(model.line_envelope(alpha, tau)) {
    if (std::abs(payoff.alpha() - alpha) > 1e-12)
        throw DomainError("TailMajorant: alpha disagrees with the payoff damping");

    const int m = payoff.greek_order();
    const bool payoff_env_decreasing =
        (payoff.kind() == PayoffKind::Binary) ? (m == 0)
                                              : (m <= 1 || payoff.alpha() > 0.5);
    if (payoff_env_decreasing) {
        mono_from_ = 0.0;
    } else {
        // payoff factor grows (binary Greeks, put Gamma): locate the onset
        // of monotone decrease by a coarse scan, kept conservative
        double onset = 1e-6;
        double last = at(1e-6);
        for (int i = 1; i <= 1000; ++i) {
            const double w = 1e-6 * std::pow(1e12, i / 1000.0);
            const double v = at(w);
            if (v > last) onset = w;
            last = v;
        }
        mono_from_ = onset * 1.02;
    }
}

double TailMajorant::at(double w) const {
    return payoff_.envelope_on_line(w, 0.0) * env_.at(w);
}

bool TailMajorant::nonincreasing_from(double s) const {
    if (s < mono_from_) return false;
    // past the onset the decrease persists: Gaussian envelope factors
    // dominate any polynomial payoff growth; power envelopes need total
    // exponent > 0
    const double pw = payoff_.greek_order() - payoff_.base_decay();
    if (env_.gauss_rate() > 0.0) return true;
    return env_.power_p() - pw > 0.0;
}

bool TailMajorant::convex_from(double s) const {
    if (!nonincreasing_from(s)) return false;
    // Products of nonnegative, non-increasing, convex factors are convex.
    // Each closed factor of the envelope/payoff modulus is convex past an
    // analytic onset; outside these cases no certificate is claimed and
    // the caller falls back to the (n-1/2) dw limit.
    if (s < env_.convex_from()) return false;
    const int m = payoff_.greek_order();
    if (payoff_.kind() == PayoffKind::Binary) {
        if (m != 0) return false;
        // envelope min(const, 2 scale/w): convex past the kink
        const double kink = 2.0 / (payoff_.support_hi() - payoff_.support_lo());
        return s >= kink;
    }
    if (m != 0) return false;
    // (c^2 + w^2)^{-1/2} is convex for w >= |c| / sqrt(2)
    const double c1 = 1.0 - payoff_.alpha();
    const double c2 = payoff_.alpha();
    return s >= std::max(std::abs(c1), std::abs(c2)) * M_SQRT1_2;
}

double TailMajorant::decay_tail_closed(double s) const {
    // int_s^inf exp(-tau(sig^2 w^2/2 + C |w|^{2-l} 1_{|w|>1}/4)) dw
    const double sig2 = sigma2_, clam = clam_;
    const bool has_gauss = sig2 > 0.0, has_jump = clam > 0.0;
    const double A = 0.25 * tau_ * clam, b = 2.0 - lambda_;
    auto gauss_tail = [&](double v) {
        return TailHint::gauss_decay(1.0, 0.5 * tau_ * sig2).remainder(v);
    };
    if (has_gauss && !has_jump) return gauss_tail(s);
    if (!has_gauss && has_jump) {
        if (s >= 1.0) return power_exp_tail(A, b, s);
        return (1.0 - s) + power_exp_tail(A, b, 1.0);
    }
    if (has_gauss && has_jump) {
        auto mixed = [&](double v) {
            const double t1 = std::exp(-0.5 * tau_ * sig2 * v * v) * power_exp_tail(A, b, v);
            const double t2 = std::exp(-A * std::pow(v, b)) * gauss_tail(v);
            return std::min(t1, t2);
        };
        if (s >= 1.0) return mixed(s);
        return (gauss_tail(s) - gauss_tail(1.0)) + mixed(1.0);
    }
    throw NumericError("decay_tail_closed: sigma^2 = 0 and C(lambda) = 0");
}

double TailMajorant::tail_integral(double s, CMethod method) const {
    if (!nonincreasing_from(s))
        throw NumericError("tail_integral: monotonicity certificate fails at the truncation point");
    if (method == CMethod::SimplifiedC) {
        // ||ghat||_{[s,inf)} e^{tau Psi(alpha)} int_s^inf exp(-tau(...)) dw
        const double norm = payoff_.sup_norm_tail(s);
        return norm * std::exp(tau_ * model_->psi_real(alpha_)) * decay_tail_closed(s);
    }
    auto f = [&](double w) { return at(w); };
    auto rem = [&](double w) { return line_tail_remainder(payoff_, 0.0, env_, w); };
    const auto tc = payoff_tail_coef(payoff_, 0.0);
    // split at envelope kinks so each CC panel sees a smooth integrand
    std::vector<double> brk;
    if (payoff_.kind() == PayoffKind::Binary)
        brk.push_back(2.0 / (payoff_.support_hi() - payoff_.support_lo()));
    if (model_->family() == Family::Cgmy) brk.push_back(1.0);
    brk.push_back(tc.w_min);
    std::sort(brk.begin(), brk.end());
    double acc = 0.0, left = s;
    for (double b : brk) {
        if (b > left + 1e-12 * std::max(1.0, left)) {
            auto head = integrate_finite(f, left, b, 1e-13);
            acc += head.value + head.error_estimate;
            left = b;
        }
    }
    const double start = std::max(left, tc.w_min);
    if (start > left) {
        auto head = integrate_finite(f, left, start, 1e-13);
        acc += head.value + head.error_estimate;
    }
    auto tail = panel_integrate(f, start, 1e-9, rem);
    return acc + tail.value + tail.error_estimate;
}

std::pair<double, double> truncation_bound(const Model& model, const DampedPayoff& payoff,
                                           const TransformPlan& plan, const TailMajorant& c,
                                           double x, CMethod method) {
    (void)model;
    (void)payoff;
    const double dw = plan.delta_omega;
    const double half_limit = (plan.n - 0.5) * dw;
    double limit = plan.n * dw;
    if (!c.convex_from(limit)) limit = half_limit;
    if (!c.nonincreasing_from(half_limit) && limit == half_limit)
        throw NumericError("truncation_bound: majorant not certified non-increasing at (n-1/2)dw");
    const double val = std::exp(plan.alpha * x) / M_PI * c.tail_integral(limit, method);
    return {val, limit};
}

BoundReport total_bound(const Model& model, const DampedPayoff& payoff, const TransformPlan& plan,
                        double x, const BoundOptions& options) {
    const double lambda = options.lambda.value_or(model.default_small_jump_decay().first);
    BoundReport rep;
    rep.convention = options.convention;

    MMethod mm;
    if (options.force_m_method) {
        mm = *options.force_m_method;
    } else if (model.sigma2() > 0.0) {
        mm = MMethod::MTildeGaussian;
    } else if (model.compute_C_lambda(lambda).value > 0.0) {
        mm = MMethod::MTilde;
    } else {
        mm = MMethod::HardyNumeric;
    }
    double m_value;
    if (mm == MMethod::HardyNumeric) {
        m_value = hardy_norm_M(model, payoff, plan.tau, x, plan.alpha, plan.a,
                               options.hardy_rel_tol);
    } else {
        try {
            m_value = m_tilde(model, payoff, plan.tau, x, plan.alpha, plan.a, lambda);
        } catch (const NumericError&) {
            // unbounded payoff norms (e.g. binary Gamma): fall back
            mm = MMethod::HardyNumeric;
            m_value = hardy_norm_M(model, payoff, plan.tau, x, plan.alpha, plan.a,
                                   options.hardy_rel_tol);
        }
    }
    rep.m_method = mm;
    rep.m_value = m_value;
    rep.quadrature_part = quadrature_bound(m_value, x, plan.alpha, plan.a, plan.delta_omega,
                                           options.convention);

    CMethod cm = options.force_c_method.value_or(CMethod::NumericEnvelope);
    TailMajorant c(model, payoff, plan.alpha, plan.tau, lambda);
    // SimplifiedC needs sigma^2 > 0 or C(lambda) > 0 for its closed tails
    if (cm == CMethod::SimplifiedC && !(model.sigma2() > 0.0) &&
        !(model.compute_C_lambda(lambda).value > 0.0))
        cm = CMethod::NumericEnvelope;
    auto [tval, limit] = truncation_bound(model, payoff, plan, c, x, cm);
    rep.c_method = cm;
    rep.truncation_part = tval;
    rep.tail_lower_limit = limit;
    rep.total = rep.quadrature_part + rep.truncation_part;
    return rep;
}

double lee_truncation_bound_kou(const Model& model, double tau, double alpha_k, double omega_max,
                                double log_strike) {
    if (model.family() != Family::Kou)
        throw DomainError("lee_truncation_bound_kou: requires a Kou model");
    const auto& k = model.params<KouParams>();
    if (!(alpha_k > 0.0)) throw DomainError("lee_truncation_bound_kou: requires alpha > 0");
    if (!(alpha_k + 1.0 < k.eta1))
        throw DomainError("lee_truncation_bound_kou: requires alpha + 1 < eta1");
    if (!(k.sigma > 0.0)) throw DomainError("lee_truncation_bound_kou: requires sigma > 0");
    const double q = 1.0 - k.p_up;
    const double zeta = k.p_up * k.eta1 / (k.eta1 - 1.0) + q * k.eta2 / (k.eta2 + 1.0) - 1.0;
    const double ap1 = alpha_k + 1.0;
    const double s2 = k.sigma * k.sigma;
    const double drift = ap1 * (model.rate() - 0.5 * s2 - k.intensity * zeta) +
                         0.5 * s2 * ap1 * ap1;
    const double jump = k.p_up * k.eta1 * (k.eta1 - ap1) / ((k.eta1 - ap1) * (k.eta1 - ap1)) +
                        q * k.eta2 * (k.eta2 + ap1) / ((k.eta2 + ap1) * (k.eta2 + ap1)) + 1.0;
    const double phi_u = std::exp(tau * drift) * std::exp(tau * k.intensity * jump) /
                         (alpha_k * alpha_k * ap1 * ap1);
    return std::exp(-alpha_k * log_strike) * phi_u * std::exp(0.5) *
           std::exp(-k.sigma * omega_max) / (M_PI * k.sigma);
}

BoundReport total_bound_kspace(const Model& model, double scale, const TransformPlan& plan,
                               double x, double k, const BoundOptions& options) {
    const double alpha = plan.alpha, a = plan.a, tau = plan.tau;
    if (!(alpha > 0.0)) throw DomainError("total_bound_kspace: requires alpha > 0");
    if (!(a > 0.0 && a < alpha))
        throw DomainError("total_bound_kspace: requires 0 < a < alpha (pole at Im w = alpha)");
    const auto strip = model.strip();
    if (!(strip.contains(alpha + 1.0 - a) && strip.contains(alpha + 1.0 + a)))
        throw DomainError("total_bound_kspace: alpha + 1 +- a outside the model strip");

    // payoff-like factor of the k-space integrand on the line Im w = beta
    auto denom_mod = [&](double w, double beta) {
        const double d1 = (alpha - beta) * (alpha - beta) + w * w;
        const double d2 = (alpha + 1.0 - beta) * (alpha + 1.0 - beta) + w * w;
        return scale * std::exp((alpha + 1.0 - beta) * x) / std::sqrt(d1 * d2);
    };

    double m_value = 0.0;
    for (double beta : {-a, a}) {
        const double cline = alpha + 1.0 - beta;
        const auto env = model.line_envelope(cline, tau);
        auto f = [&](double w) {
            return std::exp(model.log_cf_mod(cline, w, tau)) * denom_mod(w, beta);
        };
        const double A = scale * std::exp((alpha + 1.0 - beta) * x);
        const double w_min = std::max({1.0, std::abs(alpha - beta), std::abs(alpha + 1.0 - beta)});
        auto rem = [&](double w) {
            if (env.gauss_rate() > 0.0) {
                const double q = env.gauss_rate();
                const double coef = std::exp(env.log_at(w) + q * w * w);
                return A / (w * w) * coef * TailHint::gauss_decay(1.0, q).remainder(w);
            }
            const double p_tot = env.power_p() + 2.0;
            return A * std::exp(env.power_amp_log()) * std::pow(w, 1.0 - p_tot) / (p_tot - 1.0);
        };
        auto head = integrate_finite(f, 0.0, w_min, 1e-13);
        auto tail = panel_integrate(f, w_min, options.hardy_rel_tol, rem);
        m_value += std::exp(beta * k) * 2.0 *
                   (head.value + head.error_estimate + tail.value + tail.error_estimate);
    }

    BoundReport rep;
    rep.convention = options.convention;
    rep.m_method = MMethod::HardyNumeric;
    rep.m_value = m_value;
    rep.quadrature_part = quadrature_bound(m_value, -k, alpha, a, plan.delta_omega,
                                           options.convention);

    // truncation: pointwise envelope env_{alpha+1}(w) * denom_mod(w, 0)
    const auto env0 = model.line_envelope(alpha + 1.0, tau);
    auto cfun = [&](double w) { return std::exp(env0.log_at(w)) * denom_mod(w, 0.0); };
    const double limit = (plan.n - 0.5) * plan.delta_omega;  // monotone-only certificate
    const double A0 = scale * std::exp((alpha + 1.0) * x);
    const double w_min0 = std::max({1.0, alpha, alpha + 1.0, limit});
    auto rem0 = [&](double w) {
        if (env0.gauss_rate() > 0.0) {
            const double q = env0.gauss_rate();
            const double coef = std::exp(env0.log_at(w) + q * w * w);
            return A0 / (w * w) * coef * TailHint::gauss_decay(1.0, q).remainder(w);
        }
        const double p_tot = env0.power_p() + 2.0;
        return A0 * std::exp(env0.power_amp_log()) * std::pow(w, 1.0 - p_tot) / (p_tot - 1.0);
    };
    double tint = 0.0;
    if (limit < w_min0) {
        auto head = integrate_finite(cfun, limit, w_min0, 1e-13);
        tint += head.value + head.error_estimate;
    }
    auto tail = panel_integrate(cfun, w_min0, 1e-9, rem0);
    tint += tail.value + tail.error_estimate;
    rep.truncation_part = std::exp(-alpha * k) / M_PI * tint;
    rep.tail_lower_limit = limit;
    rep.c_method = CMethod::NumericEnvelope;
    rep.total = rep.quadrature_part + rep.truncation_part;
    return rep;
}

}  // namespace levyft
