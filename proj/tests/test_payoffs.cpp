#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "levyft/payoffs.hpp"
#include "levyft/special_math.hpp"

using namespace levyft;

TEST_CASE("call transform at omega = 0") {
    const auto p = DampedPayoff::call(1.0, 0.0, 2.0);
    CHECK(std::abs(p.transform({0.0, 0.0})) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("binary transform at omega = 0 is the interval length") {
    const auto b = DampedPayoff::binary(1.0, -1.0, 1.0);
    CHECK(b.transform({0.0, 0.0}).real() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(b.transform({0.0, 0.0}).imag()) < 1e-12);
}

TEST_CASE("conjugate symmetry for real payoffs") {
    const auto c = DampedPayoff::call(100.0, 0.1, 1.8);
    const auto b = DampedPayoff::binary(1.0, -0.2, 0.4);
    for (double w : {0.3, 1.7, 9.0, 55.0}) {
        for (const auto* p : {&c, &b}) {
            const Complex plus = p->transform({w, 0.0});
            const Complex minus = p->transform({-w, 0.0});
            CHECK(plus.real() == doctest::Approx(minus.real()).epsilon(1e-12));
            CHECK(plus.imag() == doctest::Approx(-minus.imag()).epsilon(1e-12));
        }
    }
}

TEST_CASE("transform against a brute-force damped-payoff quadrature") {
    // ghat_a(w) = int e^{iwx} e^{-ax} g(x) dx, integrated numerically
    const auto p = DampedPayoff::call(1.0, 0.2, 2.5);
    for (double w : {0.0, 1.0, 4.0}) {
        Complex acc{0.0, 0.0};
        const double k = 0.2, dx = 1e-4;
        for (double x = k; x < k + 25.0; x += dx) {
            const double xm = x + 0.5 * dx;
            acc += std::exp(Complex(0.0, w) * xm) * std::exp(-2.5 * xm) *
                   (std::exp(xm) - std::exp(k)) * dx;
        }
        CHECK(std::abs(p.transform({w, 0.0}) - acc) < 2e-4);
    }
}

TEST_CASE("put reuses the call closed form") {
    const auto put = DampedPayoff::put(1.0, 0.0, -1.5);
    // direct damped integral of (e^k - e^x)^+ e^{-ax}
    for (double w : {0.0, 2.0}) {
        Complex acc{0.0, 0.0};
        const double dx = 1e-4;
        for (double x = -25.0; x < 0.0; x += dx) {
            const double xm = x + 0.5 * dx;
            acc += std::exp(Complex(0.0, w) * xm) * std::exp(1.5 * xm) * (1.0 - std::exp(xm)) * dx;
        }
        CHECK(std::abs(put.transform({w, 0.0}) - acc) < 2e-4);
    }
}

TEST_CASE("sup norm on the real line") {
    CHECK(DampedPayoff::call(100.0, 0.0, 2.0).sup_norm_real_line() ==
          doctest::Approx(50.0).epsilon(1e-13));
    CHECK(DampedPayoff::binary(1.0, -1.0, 1.0).sup_norm_real_line() ==
          doctest::Approx(2.0).epsilon(1e-12));
    // closed form equals a dense-grid max
    const auto p = DampedPayoff::call(100.0, 0.15, 2.6);
    double grid = 0.0;
    for (double w = 0.0; w <= 1000.0; w += 0.01)
        grid = std::max(grid, std::abs(p.transform({w, 0.0})));
    CHECK(p.sup_norm_real_line() == doctest::Approx(grid).epsilon(1e-10));
}

TEST_CASE("tail sup norm") {
    const auto p = DampedPayoff::call(100.0, 0.1, 2.0);
    CHECK(p.sup_norm_tail(0.0) == doctest::Approx(p.sup_norm_real_line()).epsilon(1e-13));
    // |ghat(s)|^2 = S0^2 e^{2(1-a)k} / ((a^2+s^2)((1-a)^2+s^2))
    const double s = 3.0;
    const double expect = 100.0 * std::exp(-1.0 * 0.1) /
                          std::sqrt((4.0 + 9.0) * (1.0 + 9.0));
    CHECK(p.sup_norm_tail(s) == doctest::Approx(expect).epsilon(1e-12));
    double prev = p.sup_norm_tail(0.0);
    for (double v = 0.5; v < 300.0; v *= 2.0) {
        const double cur = p.sup_norm_tail(v);
        CHECK(cur <= prev + 1e-15);
        prev = cur;
    }
    // call tail decays like s^{-2}
    const double r10 = p.sup_norm_tail(10.0), r100 = p.sup_norm_tail(100.0),
                 r1000 = p.sup_norm_tail(1000.0);
    CHECK(r10 / r100 == doctest::Approx(100.0).epsilon(0.05));
    CHECK(r100 / r1000 == doctest::Approx(100.0).epsilon(0.01));

    CHECK(DampedPayoff::binary(1.0, -0.5, 0.5).sup_norm_tail(8.0) ==
          doctest::Approx(std::min(1.0, 2.0 / 8.0)).epsilon(1e-12));
}

TEST_CASE("strip sup norm against a 2-D grid oracle") {
    const auto p = DampedPayoff::call(100.0, 0.1, 3.0);
    const double a = 1.0;
    double grid = 0.0;
    for (double eta = -50.0; eta <= 50.0; eta += 0.05)
        for (double rho = -a; rho <= a; rho += 0.01)
            grid = std::max(grid, p.modulus_on_line(eta, rho));
    CHECK(p.sup_norm_strip(a) == doctest::Approx(grid).epsilon(1e-6));
    // degenerate strip reduces to the line norm
    CHECK(p.sup_norm_strip(1e-9) == doctest::Approx(p.sup_norm_real_line()).epsilon(1e-8));
}

TEST_CASE("strip sup norm handles the k = 0 linear root") {
    const auto p = DampedPayoff::call(100.0, 0.0, 3.0);
    const double a = 1.5;
    double grid = 0.0;
    for (double rho = -a; rho <= a; rho += 1e-4)
        grid = std::max(grid, p.modulus_on_line(0.0, rho));
    CHECK(p.sup_norm_strip(a) == doctest::Approx(grid).epsilon(1e-8));
}

TEST_CASE("strip sup norm is non-decreasing in a") {
    const auto p = DampedPayoff::call(100.0, -0.1, 3.0);
    double prev = 0.0;
    for (double a : {0.2, 0.5, 1.0, 1.5, 1.9}) {
        const double cur = p.sup_norm_strip(a);
        CHECK(cur >= prev - 1e-12);
        prev = cur;
    }
}

TEST_CASE("binary strip norm is a certified envelope") {
    const auto b = DampedPayoff::binary(1.0, -0.3, 0.6);
    const double a = 2.0;
    const double env = b.sup_norm_strip(a);
    for (double eta = -40.0; eta <= 40.0; eta += 0.1)
        for (double rho = -a + 1e-6; rho <= a - 1e-6; rho += 0.05)
            CHECK(b.modulus_on_line(eta, rho) <= env * (1.0 + 1e-9));
}

TEST_CASE("Greek modifiers multiply the modulus") {
    const auto p = DampedPayoff::call(100.0, 0.1, 2.0, Greek::Price);
    const auto d = DampedPayoff::call(100.0, 0.1, 2.0, Greek::Delta);
    const auto g = DampedPayoff::call(100.0, 0.1, 2.0, Greek::Gamma);
    for (double w : {0.5, 3.0, 20.0}) {
        const double mod = std::abs(Complex(2.0, -w));
        CHECK(std::abs(d.transform({w, 0.0})) ==
              doctest::Approx(std::abs(p.transform({w, 0.0})) * mod).epsilon(1e-12));
        CHECK(std::abs(g.transform({w, 0.0})) ==
              doctest::Approx(std::abs(p.transform({w, 0.0})) * mod * mod).epsilon(1e-12));
    }
}

TEST_CASE("damped payoff integrability boundary") {
    // numerically int |e^{-ax} g(x)| dx converges for admissible a and
    // diverges (grows with the window) for a just below 1
    auto mass = [](double alpha, double hi) {
        double acc = 0.0;
        const double dx = 1e-3;
        for (double x = 0.0; x < hi; x += dx)
            acc += std::exp(-alpha * x) * (std::exp(x) - 1.0) * dx;
        return acc;
    };
    const double ok1 = mass(2.0, 30.0), ok2 = mass(2.0, 60.0);
    CHECK(ok2 - ok1 < 1e-6);
    const double bad1 = mass(0.95, 30.0), bad2 = mass(0.95, 60.0);
    CHECK(bad2 > 2.0 * bad1);
}

TEST_CASE("admissible alpha ranges") {
    const AnalyticityStrip vg{-20.2648, 39.7840};
    auto call = admissible_alpha_range(PayoffKind::Call, vg);
    CHECK(call.first == doctest::Approx(1.0));
    CHECK(call.second == doctest::Approx(39.7840));
    const AnalyticityStrip kou{-3.0775, 3.0465};
    auto put = admissible_alpha_range(PayoffKind::Put, kou);
    CHECK(put.first == doctest::Approx(-3.0775));
    CHECK(put.second == doctest::Approx(0.0));
    const AnalyticityStrip bs{-INFINITY, INFINITY};
    auto bc = admissible_alpha_range(PayoffKind::Call, bs);
    CHECK(bc.first == doctest::Approx(1.0));
    CHECK(std::isinf(bc.second));
    // empty range: strip too narrow for a call
    CHECK_THROWS_AS(admissible_alpha_range(PayoffKind::Call, AnalyticityStrip{-2.0, 0.9}),
                    DomainError);
}

TEST_CASE("alpha domain validation") {
    CHECK_THROWS_AS(DampedPayoff::call(100.0, 0.0, 0.5), DomainError);
    CHECK_THROWS_AS(DampedPayoff::put(100.0, 0.0, 0.5), DomainError);
    CHECK_THROWS_AS(DampedPayoff::binary(1.0, 1.0, -1.0), DomainError);
}
