#pragma once

#include <complex>
#include <variant>

#include "levyft/errors.hpp"

namespace levyft {

using Complex = std::complex<double>;

enum class Family { BlackScholes, Merton, Kou, VarianceGamma, Cgmy };

struct BlackScholesParams {
    double sigma;
};
struct MertonParams {
    double sigma;
    double intensity;  // jump arrival rate
    double jump_mean;  // mean of the Gaussian jump size
    double jump_vol;   // stddev of the Gaussian jump size
};
struct KouParams {
    double sigma;
    double intensity;
    double p_up;  // probability of an upward jump
    double eta1;  // upward decay rate
    double eta2;  // downward decay rate
};
struct VarianceGammaParams {
    double theta;
    double sigma;  // VG diffusion-of-subordinated-BM parameter
    double chi;    // variance rate of the gamma clock
};
struct CgmyParams {
    double sigma;  // optional extra diffusion
    double c, g, m, y;
};

/// Largest open interval (lo, hi) of real z with E[e^{zX_1}] < infinity.
struct AnalyticityStrip {
    double lo;
    double hi;
    bool open = true;
    bool contains(double c, double margin = 0.0) const { return c > lo + margin && c < hi - margin; }
};

struct CLambdaResult {
    double value = 0.0;
    double argmin_kappa = 1.0;
    bool boundary = false;  // still decreasing at kappa_max; value is the boundary value
};

/// Certified pointwise envelope E(w) >= |exp(tau Psi(c - i w))| for real
/// w >= 0, non-increasing in w.  Exact for Kou and VG; for Merton it keeps
/// the jump-Gaussian decay but drops the oscillating cosine; for BS it is
/// exact; for CGMY it is the e^{tau(Psi(c) - sig^2 w^2/2 - C(l)|w|^{2-l}/4)}
/// form.
class Model;
class CharLineEnvelope {
public:
    double log_at(double w) const;
    double at(double w) const;

    /// Certified upper bound of int_s^inf E(w) dw using the closed tail
    /// forms.  Throws NumericError when the envelope alone is not
    /// integrable (pure power decay with exponent <= 1); callers then
    /// combine with the payoff decay.
    double tail_integral(double s) const;
    bool has_integrable_tail() const;

    /// Power-law data: E(w) <= exp(power_amp_log) * w^{-power_p} for all
    /// w > 0 (power_p == 0 means only a constant bound).
    double power_amp_log() const { return power_amp_log_; }
    double power_p() const { return power_p_; }
    /// Gaussian rate q with E(w) <= E(s) * e^{-q(w^2 - s^2)} for w >= s.
    double gauss_rate() const { return gauss_rate_; }

    /// w beyond which E is convex (certificate for the midpoint argument).
    double convex_from() const { return convex_from_; }

private:
    friend class Model;
    enum class Kind { Bs, Merton, Kou, Vg, Cgmy };
    Kind kind_;
    double tau_, c_;
    double drift0_ = 0, s2h_ = 0;                      // drift and sigma^2/2 pieces
    double lam_ = 0, jm_ = 0, jvh_ = 0, kbar_ = 0;     // Merton jump pieces
    double p_ = 0, eta1_ = 0, eta2_ = 0;               // Kou jump pieces
    double mu_ = 0, chi_ = 0, etap_ = 0, etam_ = 0;    // VG pieces
    double psi_c_ = 0;                                 // Psi(c)
    double clam_ = 0, lambda_ = 0;                     // CGMY small-jump decay
    double power_amp_log_ = 0, power_p_ = 0, gauss_rate_ = 0, convex_from_ = 0;
};

/// Risk-neutral exponential Levy model: characteristic exponent on its
/// analyticity strip with the drift fixed by Psi(1) = r.
class Model {
public:
    static Model black_scholes(double r, double sigma);
    static Model merton(double r, double sigma, double intensity, double jump_mean,
                        double jump_vol);
    static Model kou(double r, double sigma, double intensity, double p_up, double eta1,
                     double eta2);
    static Model variance_gamma(double r, double theta, double sigma, double chi);
    /// VG from the exponential-tail parameterization (eta+, eta-, K).
    static Model vg_from_eta(double r, double eta_plus, double eta_minus, double big_k);
    static Model cgmy(double r, double sigma, double c, double g, double m, double y);

    Family family() const { return family_; }
    double rate() const { return r_; }
    double sigma2() const;
    bool finite_activity() const;
    AnalyticityStrip strip() const;

    template <class P>
    const P& params() const { return std::get<P>(p_); }

    /// Characteristic exponent Psi(z), Re z inside the strip.
    Complex char_exponent(Complex z) const;
    /// Characteristic function of X_tau: E e^{i w X_tau} = e^{tau Psi(i w)}.
    Complex char_function(double tau, Complex omega) const;
    /// Psi(c) for real c inside the strip.
    double psi_real(double c) const;
    /// log |e^{tau Psi(c - i w)}| = tau Re Psi(c - i w); exact, any family.
    double log_cf_mod(double c, double w, double tau) const;

    /// Small-jump activity constant C(lambda) = inf_{k>1} k^l J(1/k),
    /// J(e) = int_{|y|<e} y^2 nu(dy).  Exactly zero for finite-activity
    /// families and for VG; positive for CGMY when lambda >= 2 - Y.
    CLambdaResult compute_C_lambda(double lambda) const;

    /// The (lambda, C(lambda)) pair the bounds use by default: (2-Y, C)
    /// for CGMY, (1, 0) otherwise.
    std::pair<double, double> default_small_jump_decay() const;

    /// Certified decay envelope along the line Re = c.
    CharLineEnvelope line_envelope(double c, double tau) const;

    /// VG eta parameterization (throws unless VG).
    double vg_eta_plus() const;
    double vg_eta_minus() const;

private:
    Model() = default;
    void require_in_strip(double c) const;

    Family family_;
    double r_;
    std::variant<BlackScholesParams, MertonParams, KouParams, VarianceGammaParams, CgmyParams> p_;
};

}  // namespace levyft
