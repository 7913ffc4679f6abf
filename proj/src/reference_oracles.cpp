#include "levyft/reference_oracles.hpp"

#include <cmath>

#include "levyft/special_math.hpp"
#include "levyft/transform_pricer.hpp"

namespace levyft {

namespace {

// E[payoff(x + Z)] for Z ~ N(m, s^2), discounted outside.  Uses only
// normal_cdf; never touches the transform path.
double gaussian_payoff_value(const DampedPayoff& p, double x, double m, double s) {
    switch (p.kind()) {
        case PayoffKind::Call: {
            // scale * E[(e^{x+Z} - e^k)^+]
            const double k = p.log_strike();
            const double d2 = (x + m - k) / s;
            const double d1 = d2 + s;
            return p.scale() * (std::exp(x + m + 0.5 * s * s) * normal_cdf(d1) -
                                std::exp(k) * normal_cdf(d2));
        }
        case PayoffKind::Put: {
            const double k = p.log_strike();
            const double d2 = (x + m - k) / s;
            const double d1 = d2 + s;
            return p.scale() * (std::exp(k) * normal_cdf(-d2) -
                                std::exp(x + m + 0.5 * s * s) * normal_cdf(-d1));
        }
        case PayoffKind::Binary: {
            const double lo = (p.support_lo() - x - m) / s;
            const double hi = (p.support_hi() - x - m) / s;
            return p.scale() * (normal_cdf(hi) - normal_cdf(lo));
        }
    }
    throw DomainError("gaussian_payoff_value: unknown payoff kind");
}

}  // namespace

ReferencePrice bs_closed_form(const Model& model, const DampedPayoff& payoff, double tau,
                              double x) {
    if (model.family() != Family::BlackScholes)
        throw DomainError("bs_closed_form: requires a Black-Scholes model");
    if (payoff.greek() != Greek::Price)
        throw DomainError("bs_closed_form: price payoffs only");
    const double s2 = model.sigma2();
    const double m = (model.rate() - 0.5 * s2) * tau;
    const double s = std::sqrt(s2 * tau);
    ReferencePrice out;
    out.method = RefMethod::BlackScholesClosed;
    out.value = std::exp(-model.rate() * tau) * gaussian_payoff_value(payoff, x, m, s);
    out.certified_error = 1e-14 * (std::abs(out.value) + payoff.scale());
    return out;
}

ReferencePrice merton_series(const Model& model, const DampedPayoff& payoff, double tau,
                             double x) {
    if (model.family() != Family::Merton)
        throw DomainError("merton_series: requires a Merton model");
    if (payoff.greek() != Greek::Price)
        throw DomainError("merton_series: price payoffs only");
    const auto& mp = model.params<MertonParams>();
    const double s2 = mp.sigma * mp.sigma;
    const double kbar = std::exp(mp.jump_mean + 0.5 * mp.jump_vol * mp.jump_vol) - 1.0;
    const double lt = mp.intensity * tau;

    // conditioned on j jumps: X ~ N((r - s2/2 - lam kbar) tau + j jump_mean,
    //                              s2 tau + j jump_vol^2)
    double value = 0.0;
    double weight = std::exp(-lt);  // Poisson(0)
    double weight_sum = 0.0;
    int j = 0;
    for (; j < 400; ++j) {
        const double m = (model.rate() - 0.5 * s2 - mp.intensity * kbar) * tau + j * mp.jump_mean;
        const double s = std::sqrt(s2 * tau + j * mp.jump_vol * mp.jump_vol);
        value += weight * gaussian_payoff_value(payoff, x, m, s);
        weight_sum += weight;
        if (1.0 - weight_sum < 1e-12 && j > lt) break;
        weight *= lt / (j + 1);
    }
    // Omitted terms: conditional call values grow like (1+kbar)^j, so the
    // tail is a Poisson tail with tilted rate lt (1+kbar); puts and
    // binaries are bounded by a fixed cash amount.
    double tail_bound;
    if (payoff.kind() == PayoffKind::Call) {
        const double mu1 = lt * (1.0 + kbar);
        const double log_tail = -lt + (j + 1) * std::log(mu1) - std::lgamma(j + 2.0) + mu1;
        tail_bound = payoff.scale() *
                     std::exp(x + (model.rate() - mp.intensity * kbar) * tau) *
                     std::exp(log_tail);
    } else {
        const double cap = payoff.kind() == PayoffKind::Binary
                               ? payoff.scale()
                               : payoff.scale() * std::exp(payoff.log_strike());
        tail_bound = std::max(0.0, 1.0 - weight_sum) * cap;
    }
    ReferencePrice out;
    out.method = RefMethod::MertonSeries;
    out.value = std::exp(-model.rate() * tau) * value;
    out.certified_error = tail_bound + 1e-13 * (std::abs(out.value) + payoff.scale());
    return out;
}

ReferencePrice high_resolution_reference(const Model& model, const DampedPayoff& payoff,
                                         double tau, double x, double tol) {
    OptimizeControl ctl;
    ctl.convention = Convention::Theorem;
    ctl.with_trace = false;
    // keep the damping moderate on unbounded strips: past that the claimed
    // spectral accuracy outruns double precision and only the arithmetic
    // noise term would grow
    ctl.alpha_span = 12.0;
    auto rep = choose_n(model, payoff, tau, x, tol, 64, ctl, 1 << 22);
    auto priced = price_single(model, with_alpha(payoff, rep.best_plan.alpha), rep.best_plan, x);
    ReferencePrice out;
    out.method = RefMethod::HighResolutionFT;
    out.value = priced.value;
    // bound is on the undiscounted value function; discounting shrinks it
    out.certified_error = rep.best_bound.total + priced.roundoff +
                          1e-14 * (std::abs(out.value) + payoff.scale());
    return out;
}

}  // namespace levyft
