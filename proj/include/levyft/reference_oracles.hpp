#pragma once

#include "levyft/optimizer.hpp"
#include "levyft/payoffs.hpp"

namespace levyft {

enum class RefMethod { BlackScholesClosed, MertonSeries, HighResolutionFT };

struct ReferencePrice {
    double value = 0.0;
    RefMethod method = RefMethod::HighResolutionFT;
    double certified_error = 0.0;
};

/// Closed-form Black-Scholes price of the payoff at log-moneyness x
/// (x relative to the payoff's anchor scale).  Binary-interval values come
/// out as the difference of two digital prices.  Independent of the
/// transform pricer by construction.
ReferencePrice bs_closed_form(const Model& model, const DampedPayoff& payoff, double tau,
                              double x);

/// Merton price by conditioning on the Poisson jump count; the series is
/// cut when the Poisson tail drops below 1e-12, which enters the certified
/// error together with the per-term rounding.
ReferencePrice merton_series(const Model& model, const DampedPayoff& payoff, double tau, double x);

/// Transform price at a tolerance-1e-10 optimized plan (n_cap 2^22); the
/// certified error is the attached bound plus an arithmetic noise floor.
ReferencePrice high_resolution_reference(const Model& model, const DampedPayoff& payoff,
                                         double tau, double x, double tol = 1e-10);

}  // namespace levyft
