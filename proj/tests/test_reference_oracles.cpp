#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>

#include "levyft/reference_oracles.hpp"
#include "levyft/special_math.hpp"

using namespace levyft;

namespace {
const Model kBs = Model::black_scholes(0.05, 0.2);
const Model kMerton = Model::merton(0.05, 0.1765, 0.089, -0.8898, 0.4505);

// test-local lognormal-density integration oracle (independent of both the
// closed form and the transform path)
double lognormal_quadrature(const DampedPayoff& p, double r, double sigma, double tau, double x) {
    const double m = (r - 0.5 * sigma * sigma) * tau;
    const double s = sigma * std::sqrt(tau);
    auto payoff = [&](double z) {
        const double xx = x + m + s * z;
        switch (p.kind()) {
            case PayoffKind::Call: return p.scale() * (std::exp(xx) - std::exp(p.log_strike()));
            case PayoffKind::Put: return p.scale() * (std::exp(p.log_strike()) - std::exp(xx));
            default: return p.scale();
        }
    };
    auto f = [&](double z) { return payoff(z) * std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI); };
    // integrate only where the payoff is smooth and nonzero
    double lo = -14.0, hi = 14.0;
    if (p.kind() == PayoffKind::Call) lo = (p.log_strike() - x - m) / s;
    if (p.kind() == PayoffKind::Put) hi = (p.log_strike() - x - m) / s;
    if (p.kind() == PayoffKind::Binary) {
        lo = (p.support_lo() - x - m) / s;
        hi = (p.support_hi() - x - m) / s;
    }
    const auto q = integrate_finite(f, lo, hi, 1e-13);
    return std::exp(-r * tau) * q.value;
}
}  // namespace

TEST_CASE("BS closed form against density quadrature") {
    const auto p = DampedPayoff::call(100.0, 0.0, 2.0);
    const auto ref = bs_closed_form(kBs, p, 0.5, 0.0);
    CHECK(ref.value == doctest::Approx(lognormal_quadrature(p, 0.05, 0.2, 0.5, 0.0)).epsilon(1e-10));
}

TEST_CASE("BS closed form limits and parity") {
    // deep ITM call approaches the forward value S0 - K e^{-r tau} -> S0 as K -> 0
    const auto deep = DampedPayoff::call(100.0, -12.0, 2.0);
    CHECK(bs_closed_form(kBs, deep, 0.5, 0.0).value ==
          doctest::Approx(100.0 - 100.0 * std::exp(-12.0) * std::exp(-0.025)).epsilon(1e-9));
    // put-call parity
    const double k = 0.07;
    const auto c = bs_closed_form(kBs, DampedPayoff::call(100.0, k, 2.0), 0.5, 0.0);
    const auto p = bs_closed_form(kBs, DampedPayoff::put(100.0, k, -1.0), 0.5, 0.0);
    const double fwd = 100.0 - 100.0 * std::exp(k) * std::exp(-0.05 * 0.5);
    CHECK(c.value - p.value == doctest::Approx(fwd).epsilon(1e-14));
}

TEST_CASE("Merton series reduces to BS at zero intensity") {
    const Model m0 = Model::merton(0.05, 0.2, 1e-14, -0.5, 0.3);
    const auto p = DampedPayoff::call(100.0, 0.1, 2.0);
    const auto a = merton_series(m0, p, 0.5, 0.0);
    const auto b = bs_closed_form(kBs, p, 0.5, 0.0);
    CHECK(a.value == doctest::Approx(b.value).epsilon(1e-10));
}

TEST_CASE("Merton series against density quadrature on the binary") {
    const auto b = DampedPayoff::binary(1.0, std::log(0.95), std::log(1.05));
    const auto ref = merton_series(kMerton, b, 0.25, 0.0);
    // independent oracle: mixture of Gaussians integrated numerically
    const auto& mp = kMerton.params<MertonParams>();
    const double kbar = std::exp(mp.jump_mean + 0.5 * mp.jump_vol * mp.jump_vol) - 1.0;
    double acc = 0.0, w = std::exp(-mp.intensity * 0.25);
    for (int j = 0; j < 60; ++j) {
        const double m = (0.05 - 0.5 * mp.sigma * mp.sigma - mp.intensity * kbar) * 0.25 +
                         j * mp.jump_mean;
        const double s = std::sqrt(mp.sigma * mp.sigma * 0.25 + j * mp.jump_vol * mp.jump_vol);
        acc += w * (normal_cdf((std::log(1.05) - m) / s) - normal_cdf((std::log(0.95) - m) / s));
        w *= mp.intensity * 0.25 / (j + 1);
    }
    CHECK(ref.value == doctest::Approx(std::exp(-0.05 * 0.25) * acc).epsilon(1e-10));
    // truncating later changes nothing at the certified scale
    CHECK(ref.certified_error < 1e-7);
}

TEST_CASE("high resolution reference matches the closed forms") {
    const auto p = DampedPayoff::call(100.0, 0.0, 2.0);
    const auto hr = high_resolution_reference(kBs, p, 0.5, 0.0);
    const auto cf = bs_closed_form(kBs, p, 0.5, 0.0);
    CHECK(std::abs(hr.value - cf.value) < 1e-9);
    CHECK(hr.certified_error <= 2e-10 + 1e-10);

    const auto b = DampedPayoff::binary(1.0, std::log(0.95), std::log(1.05));
    const auto hm = high_resolution_reference(kMerton, b, 0.25, 0.0);
    const auto ms = merton_series(kMerton, b, 0.25, 0.0);
    CHECK(std::abs(hm.value - ms.value) < 1e-7);

    // oracle triangle
    CHECK(std::abs(hr.value - cf.value) <= hr.certified_error + cf.certified_error);
    // idempotence
    const auto hr2 = high_resolution_reference(kBs, p, 0.5, 0.0);
    CHECK(hr.value == hr2.value);
}
