#pragma once

#include <optional>
#include <vector>

#include "levyft/bound_report.hpp"
#include "levyft/levy_models.hpp"
#include "levyft/payoffs.hpp"

namespace levyft {

enum class SpaceKind { XSpace, KSpace };

/// Complete numerical configuration of one pricing run: midpoint
/// trapezoidal sum with one-sided term count n and spacing delta_omega,
/// damped by alpha, with strip half-width a used by the bounds.
struct TransformPlan {
    double tau = 0.0;
    double alpha = 0.0;
    double a = 0.0;
    double delta_omega = 0.0;
    int n = 0;
    SpaceKind space = SpaceKind::XSpace;

    double omega_max() const { return n * delta_omega; }
};

struct PriceResult {
    double value = 0.0;  // option price (discounted)
    double roundoff = 0.0;  // certified floating-point summation noise
    TransformPlan plan;
    std::optional<BoundReport> bound;
};

/// Fourier-space solution f_hat_alpha(tau, w) = e^{tau Psi(alpha - i w)} ghat_alpha(w).
Complex fhat_alpha(const Model& model, const DampedPayoff& payoff, double tau, Complex omega);

/// Midpoint trapezoidal price at log-moneyness x:
///   e^{-r tau} e^{alpha x} (dw/pi) sum_{j<n} Re[e^{-i(j+1/2)dw x} f_hat((j+1/2)dw)].
PriceResult price_single(const Model& model, const DampedPayoff& payoff,
                         const TransformPlan& plan, double x);

/// FFT evaluation on the mesh x_j = x0 + j dx, dx = 2 pi/(count dw),
/// count a power of two >= 2n.  Entry j equals price_single at x_j up to
/// the reordering of floating-point sums.
std::vector<PriceResult> price_grid_fft(const Model& model, const DampedPayoff& payoff,
                                        const TransformPlan& plan, double x0, int count);

/// Strike-space dual for calls: price as a function of log-strike k at
/// fixed spot log-moneyness x, damping alpha > 0 acting on k.
PriceResult price_kspace(const Model& model, const DampedPayoff& payoff,
                         const TransformPlan& plan, double x_fixed, double k);

/// k-space transform factor (exposed for the k-space bound and tests):
///   e^{(i w + alpha + 1) x} e^{tau Psi(alpha + 1 + i w)} / ((i w + alpha)(i w + alpha + 1)).
Complex kspace_transform(const Model& model, double tau, double alpha, double x, Complex omega);

namespace detail {
/// In-place radix-2 FFT with the e^{-2 pi i jk/N} convention; n a power of two.
void fft_radix2(std::vector<Complex>& data);
}  // namespace detail

}  // namespace levyft
