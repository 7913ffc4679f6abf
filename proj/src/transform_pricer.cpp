#include "levyft/transform_pricer.hpp"

#include <cmath>

namespace levyft {

namespace {
constexpr Complex kI{0.0, 1.0};

void check_plan(const Model& model, const DampedPayoff& payoff, const TransformPlan& plan) {
    if (!(plan.tau > 0.0)) throw DomainError("plan: requires tau > 0");
    if (!(plan.delta_omega > 0.0)) throw DomainError("plan: requires delta_omega > 0");
    if (plan.n < 1) throw DomainError("plan: requires n >= 1");
    if (plan.alpha != payoff.alpha()) throw DomainError("plan: alpha disagrees with payoff damping");
    const auto s = model.strip();
    if (!s.contains(plan.alpha)) throw DomainError("plan: alpha outside the model strip");
}

}  // namespace

Complex fhat_alpha(const Model& model, const DampedPayoff& payoff, double tau, Complex omega) {
    const Complex arg = payoff.alpha() - kI * omega;
    return std::exp(tau * model.char_exponent(arg)) * payoff.transform(omega);
}

PriceResult price_single(const Model& model, const DampedPayoff& payoff,
                         const TransformPlan& plan, double x) {
    check_plan(model, payoff, plan);
    const double ax = plan.alpha * x;
    if (std::abs(ax) > 700.0) throw DomainError("price_single: e^{alpha x} overflows");
    const double dw = plan.delta_omega;
    double acc = 0.0, mag = 0.0;
    for (int j = 0; j < plan.n; ++j) {
        const double w = (j + 0.5) * dw;
        const Complex term = std::exp(Complex(0.0, -w * x)) * fhat_alpha(model, payoff, plan.tau, w);
        acc += term.real();
        mag += std::abs(term);
    }
    PriceResult out;
    out.plan = plan;
    const double scale = std::exp(-model.rate() * plan.tau) * std::exp(ax) * dw / M_PI;
    out.value = scale * acc;
    // linear-accumulation model: per-term evaluation (~8 eps relative) plus
    // the summation itself; bounds the arithmetic error of the sum
    out.roundoff = (plan.n + 8.0) * 0x1p-52 * std::abs(scale) * mag;
    return out;
}

namespace detail {

void fft_radix2(std::vector<Complex>& a) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0) throw DomainError("fft: size must be a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * M_PI / double(len);
        const Complex wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            Complex w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const Complex u = a[i + j];
                const Complex v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

}  // namespace detail

std::vector<PriceResult> price_grid_fft(const Model& model, const DampedPayoff& payoff,
                                        const TransformPlan& plan, double x0, int count) {
    check_plan(model, payoff, plan);
    if (count < 2 * plan.n || (count & (count - 1)) != 0)
        throw DomainError("price_grid_fft: count must be a power of two >= 2n (aliasing)");
    const double dw = plan.delta_omega;
    const double dx = 2.0 * M_PI / (count * dw);

    // sum_j fhat((j+1/2)dw) e^{-i (j+1/2) dw (x0 + m dx)}
    //   = e^{-i dw (x0 + m dx)/2} * DFT_m[ fhat_j e^{-i j dw x0} ]
    std::vector<Complex> data(count, Complex(0.0, 0.0));
    for (int j = 0; j < plan.n; ++j) {
        const double w = (j + 0.5) * dw;
        data[j] = fhat_alpha(model, payoff, plan.tau, w) * std::exp(Complex(0.0, -j * dw * x0));
    }
    detail::fft_radix2(data);

    double mag = 0.0;
    for (int j = 0; j < plan.n; ++j)
        mag += std::abs(fhat_alpha(model, payoff, plan.tau, (j + 0.5) * dw));
    std::vector<PriceResult> out(count);
    const double disc = std::exp(-model.rate() * plan.tau);
    for (int m = 0; m < count; ++m) {
        const double x = x0 + m * dx;
        const Complex half_step = std::exp(Complex(0.0, -0.5 * dw * x));
        PriceResult r;
        r.plan = plan;
        const double scale = disc * std::exp(plan.alpha * x) * dw / M_PI;
        r.value = scale * (half_step * data[m]).real();
        r.roundoff = (plan.n + 8.0) * 0x1p-52 * std::abs(scale) * mag;
        out[m] = r;
    }
    return out;
}

Complex kspace_transform(const Model& model, double tau, double alpha, double x, Complex omega) {
    const Complex iw = kI * omega;
    const Complex shift = alpha + 1.0 + iw;
    return std::exp(shift * x) * std::exp(tau * model.char_exponent(shift)) /
           ((iw + alpha) * (iw + alpha + 1.0));
}

PriceResult price_kspace(const Model& model, const DampedPayoff& payoff,
                         const TransformPlan& plan, double x_fixed, double k) {
    if (payoff.kind() != PayoffKind::Call)
        throw DomainError("price_kspace: strike-space transform implemented for calls");
    if (!(plan.alpha > 0.0)) throw DomainError("price_kspace: requires alpha > 0");
    if (!(plan.tau > 0.0 && plan.delta_omega > 0.0 && plan.n >= 1))
        throw DomainError("price_kspace: invalid plan");
    const auto s = model.strip();
    if (!s.contains(plan.alpha + 1.0))
        throw DomainError("price_kspace: alpha + 1 outside the model strip");

    const double dw = plan.delta_omega;
    double acc = 0.0, mag = 0.0;
    for (int j = 0; j < plan.n; ++j) {
        const double w = (j + 0.5) * dw;
        const Complex term = std::exp(Complex(0.0, -w * k)) *
                             kspace_transform(model, plan.tau, plan.alpha, x_fixed, w);
        acc += term.real();
        mag += std::abs(term);
    }
    PriceResult out;
    TransformPlan p = plan;
    p.space = SpaceKind::KSpace;
    out.plan = p;
    // Normalized value E[(e^{x+X}-e^k)^+]; multiply by the payoff scale.
    const double scale = std::exp(-model.rate() * plan.tau) * payoff.scale() *
                         std::exp(-plan.alpha * k) * dw / M_PI;
    out.value = scale * acc;
    out.roundoff = (plan.n + 8.0) * 0x1p-52 * std::abs(scale) * mag;
    return out;
}

}  // namespace levyft
