#pragma once

#include <complex>
#include <utility>

#include "levyft/errors.hpp"
#include "levyft/levy_models.hpp"

namespace levyft {

enum class PayoffKind { Call, Put, Binary };
enum class Greek { Price, Delta, Gamma };

/// Damped payoff with its closed-form Fourier transform and the norm
/// helpers the error bounds need.
///
/// Calls and puts share one transform,
///   ghat_a(w) = scale * e^{(1 - a + i w) k} / ((1 + i w - a)(i w - a)),
/// integrable damping requiring alpha > 1 (call) or alpha < 0 (put).
/// `scale` is the anchor price and `log_strike` the strike location
/// relative to it: (scale=S0, k=ln(K/S0)) prices in spot-relative
/// log-moneyness; (scale=K, k=0) in strike-relative log-moneyness.
/// Binaries are cash-or-nothing on a log-price interval, alpha = 0.
class DampedPayoff {
public:
    static DampedPayoff call(double scale, double log_strike, double alpha,
                             Greek greek = Greek::Price);
    static DampedPayoff put(double scale, double log_strike, double alpha,
                            Greek greek = Greek::Price);
    static DampedPayoff binary(double cash, double lo, double hi, Greek greek = Greek::Price);

    PayoffKind kind() const { return kind_; }
    Greek greek() const { return greek_; }
    int greek_order() const { return greek_ == Greek::Price ? 0 : greek_ == Greek::Delta ? 1 : 2; }
    double alpha() const { return alpha_; }
    double scale() const { return scale_; }
    double log_strike() const { return k_; }
    double support_lo() const { return lo_; }
    double support_hi() const { return hi_; }

    /// ghat_alpha(omega) times the Greek modifier (alpha - i omega)^m.
    Complex transform(Complex omega) const;

    /// Exact |transform(omega + i beta)| for real omega, |beta| inside the
    /// payoff strip.
    double modulus_on_line(double omega, double beta) const;

    /// Certified non-increasing envelope of modulus_on_line(., beta) for
    /// Greek order 0; for higher orders the polynomial factor is kept
    /// explicit via envelope_power below.
    double envelope_on_line(double omega, double beta) const;

    /// Decay exponent d with modulus_on_line(w, beta) <= A w^{m-d} at
    /// large w: d = 2 for call/put, 1 for binary (m = greek order).
    double base_decay() const { return kind_ == PayoffKind::Binary ? 1.0 : 2.0; }

    /// Largest admissible strip half-width for this damping.
    double strip_halfwidth_max() const;

    /// sup over real omega of |transform|; closed form.
    double sup_norm_real_line() const;
    /// sup over [varsigma, inf) of |transform|.
    double sup_norm_tail(double varsigma) const;
    /// sup over the strip A_a; call/put via the critical-point set
    /// {-a, a, real roots of the derivative polynomial}, binary via a
    /// certified envelope.
    double sup_norm_strip(double a) const;
    /// sup over omega of |transform(omega + i beta)| on one boundary line.
    double sup_norm_boundary_line(double beta) const;

private:
    DampedPayoff() = default;
    double modulus_cp(double omega, double beta) const;  // call/put closed modulus

    PayoffKind kind_;
    Greek greek_ = Greek::Price;
    double scale_ = 1.0;
    double k_ = 0.0;
    double lo_ = 0.0, hi_ = 0.0;
    double alpha_ = 0.0;
};

/// Damping range compatible with both the payoff and the model strip:
/// Call (1, strip.hi), Put (strip.lo, 0), Binary the full strip.
/// Throws DomainError when empty (e.g. strip.hi <= 1 for a call).
std::pair<double, double> admissible_alpha_range(PayoffKind kind, const AnalyticityStrip& strip);

}  // namespace levyft
