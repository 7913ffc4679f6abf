#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "levyft/levy_models.hpp"
#include "levyft/special_math.hpp"

using namespace levyft;

namespace {

std::vector<Model> reference_models() {
    return {
        Model::black_scholes(0.05, 0.2),
        Model::merton(0.05, 0.1765, 0.089, -0.8898, 0.4505),
        Model::kou(0.05, 0.15, 0.1, 0.3445, 3.0465, 3.0775),
        Model::vg_from_eta(0.0, 39.7840, 20.2648, 5.9311),
        Model::cgmy(0.03, 0.1, 1.0, 5.0, 5.0, 0.5),
    };
}

std::mt19937_64 rng(987654321);

Model random_model() {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    switch (rng() % 5) {
        case 0: return Model::black_scholes(0.1 * U(rng), 0.1 + 0.4 * U(rng));
        case 1:
            return Model::merton(0.1 * U(rng), 0.05 + 0.3 * U(rng), 0.05 + U(rng),
                                 -1.0 + 1.5 * U(rng), 0.1 + 0.5 * U(rng));
        case 2:
            return Model::kou(0.1 * U(rng), 0.05 + 0.3 * U(rng), 0.05 + U(rng), U(rng),
                              1.5 + 4.0 * U(rng), 0.5 + 4.0 * U(rng));
        case 3: {
            const double ep = 1.5 + 40.0 * U(rng);
            const double em = 0.5 + 40.0 * U(rng);
            return Model::vg_from_eta(0.1 * U(rng), ep, em, 0.5 + 8.0 * U(rng));
        }
        default:
            return Model::cgmy(0.1 * U(rng), 0.2 * U(rng), 0.2 + 2.0 * U(rng),
                               1.0 + 8.0 * U(rng), 1.5 + 8.0 * U(rng), 0.2 + 1.5 * U(rng));
    }
}

}  // namespace

TEST_CASE("Psi(0) = 0 and Psi(1) = r across families") {
    for (const auto& m : reference_models()) {
        CHECK(std::abs(m.char_exponent({0.0, 0.0})) < 1e-12);
        CHECK(m.char_exponent({1.0, 0.0}).real() == doctest::Approx(m.rate()).epsilon(1e-10));
        CHECK(std::abs(m.char_exponent({1.0, 0.0}).imag()) < 1e-12);
    }
    for (int i = 0; i < 100; ++i) {
        const Model m = random_model();
        CHECK(std::abs(m.char_exponent({0.0, 0.0})) < 1e-10);
        CHECK(m.char_exponent({1.0, 0.0}).real() == doctest::Approx(m.rate()).epsilon(1e-10));
    }
}

TEST_CASE("BS exponent hand value") {
    const Model m = Model::black_scholes(0.05, 0.2);
    // (r - s^2/2) z + s^2 z^2/2 at z = 2
    CHECK(m.char_exponent({2.0, 0.0}).real() == doctest::Approx(0.14).epsilon(1e-14));
}

TEST_CASE("conjugate symmetry Psi(conj z) = conj Psi(z)") {
    for (const auto& m : reference_models()) {
        for (double re : {-0.3, 0.2, 0.9}) {
            for (double im : {0.5, 2.0, 11.0}) {
                const Complex a = m.char_exponent({re, im});
                const Complex b = m.char_exponent({re, -im});
                CHECK(a.real() == doctest::Approx(b.real()).epsilon(1e-12));
                CHECK(a.imag() == doctest::Approx(-b.imag()).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("characteristic function normalization and boundedness") {
    for (const auto& m : reference_models()) {
        CHECK(std::abs(m.char_function(0.7, {0.0, 0.0}) - 1.0) < 1e-12);
        for (double w = 0.5; w < 60.0; w *= 2.3)
            CHECK(std::abs(m.char_function(0.7, {w, 0.0})) <= 1.0 + 1e-12);
    }
}

TEST_CASE("VG product form matches the exponent form") {
    const Model m = Model::vg_from_eta(0.04, 39.7840, 20.2648, 5.9311);
    const auto& v = m.params<VarianceGammaParams>();
    const double tau = 0.5;
    const double mu = m.rate() + std::log(1.0 - v.theta * v.chi - 0.5 * v.sigma * v.sigma * v.chi) / v.chi;
    for (double w = 0.25; w < 200.0; w *= 2.0) {
        const Complex lhs = m.char_function(tau, {w, 0.0});
        const Complex base =
            1.0 - Complex(0.0, 1.0) * v.theta * v.chi * w + 0.5 * v.sigma * v.sigma * v.chi * w * w;
        const Complex rhs = std::exp(Complex(0.0, 1.0) * mu * tau * w) *
                            std::pow(base, -tau / v.chi);
        CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(rhs) + 1e-14);
    }
}

TEST_CASE("analyticity strips") {
    CHECK(Model::kou(0.05, 0.15, 0.1, 0.3445, 3.0465, 3.0775).strip().lo ==
          doctest::Approx(-3.0775));
    CHECK(Model::kou(0.05, 0.15, 0.1, 0.3445, 3.0465, 3.0775).strip().hi ==
          doctest::Approx(3.0465));
    const auto vg = Model::vg_from_eta(0.0, 39.7840, 20.2648, 5.9311).strip();
    CHECK(vg.lo == doctest::Approx(-20.2648).epsilon(1e-9));
    CHECK(vg.hi == doctest::Approx(39.7840).epsilon(1e-9));
    const auto bs = Model::black_scholes(0.0, 0.2).strip();
    CHECK(std::isinf(bs.lo));
    CHECK(std::isinf(bs.hi));
}

TEST_CASE("strip consistency with char_exponent") {
    const Model m = Model::kou(0.05, 0.15, 0.1, 0.3445, 3.0465, 3.0775);
    CHECK_NOTHROW(m.char_exponent({3.0465 - 1e-4, 0.0}));
    CHECK_THROWS_AS(m.char_exponent({3.0465 + 1e-4, 0.0}), DomainError);
    CHECK_THROWS_AS(m.char_exponent({-3.0775 - 1e-4, 0.0}), DomainError);
}

TEST_CASE("vg_from_eta inverts the eta relations") {
    const Model m = Model::vg_from_eta(0.0, 39.7840, 20.2648, 5.9311);
    const auto& v = m.params<VarianceGammaParams>();
    CHECK(v.theta == doctest::Approx(-0.1436).epsilon(2e-3));
    CHECK(v.sigma == doctest::Approx(0.1213).epsilon(2e-3));
    CHECK(v.chi == doctest::Approx(0.1686).epsilon(2e-3));
    CHECK(m.vg_eta_plus() == doctest::Approx(39.7840).epsilon(1e-10));
    CHECK(m.vg_eta_minus() == doctest::Approx(20.2648).epsilon(1e-10));

    // symmetric case: theta = 0
    const Model s = Model::vg_from_eta(0.0, 7.5, 7.5, 2.0);
    CHECK(std::abs(s.params<VarianceGammaParams>().theta) < 1e-14);

    // round-trip on random admissible triples
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double ep = 1.2 + 50.0 * U(rng), em = 0.3 + 50.0 * U(rng), K = 0.2 + 10.0 * U(rng);
        const Model r = Model::vg_from_eta(0.0, ep, em, K);
        CHECK(r.vg_eta_plus() == doctest::Approx(ep).epsilon(1e-10));
        CHECK(r.vg_eta_minus() == doctest::Approx(em).epsilon(1e-10));
        CHECK(1.0 / r.params<VarianceGammaParams>().chi == doctest::Approx(K).epsilon(1e-10));
    }
}

TEST_CASE("C(lambda) structure") {
    const Model merton = Model::merton(0.05, 0.1765, 0.089, -0.8898, 0.4505);
    for (double l : {0.3, 1.0, 1.7}) CHECK(merton.compute_C_lambda(l).value == 0.0);
    const Model vg = Model::vg_from_eta(0.0, 39.7840, 20.2648, 5.9311);
    CHECK(vg.compute_C_lambda(1.0).value == 0.0);

    // CGMY: C(lambda) = J(1) for lambda >= 2 - Y, and the kappa-scan decays
    // toward zero below that threshold.
    const Model cg = Model::cgmy(0.0, 0.0, 1.0, 5.0, 5.0, 0.5);
    const double s = 1.5;  // 2 - Y
    // brute-force small-jump integral oracle at kappa -> 1:
    // J(1) = C [M^{Y-2} g(2-Y, M) + G^{Y-2} g(2-Y, G)]
    const double j1 = std::pow(5.0, -1.5) * lower_incomplete_gamma(1.5, 5.0) * 2.0;
    const auto at_threshold = cg.compute_C_lambda(s);
    CHECK(!at_threshold.boundary);
    CHECK(at_threshold.value == doctest::Approx(j1).epsilon(1e-5));
    const auto above = cg.compute_C_lambda(1.8);
    CHECK(above.value == doctest::Approx(j1).epsilon(1e-5));
    // lambda = Y < 2 - Y: the infimum vanishes in the kappa -> inf limit;
    // the bounded scan returns the (strictly positive) boundary value and
    // flags it.
    const auto below = cg.compute_C_lambda(0.5);
    CHECK(below.value > 0.0);
    CHECK(below.value < 1e-4);
    CHECK(below.boundary);
}

TEST_CASE("C(lambda) brute-force grid agreement for CGMY") {
    const Model cg = Model::cgmy(0.0, 0.0, 1.0, 5.0, 5.0, 0.5);
    auto small_jump = [&](double eps) {
        return std::pow(5.0, -1.5) *
               (lower_incomplete_gamma(1.5, 5.0 * eps) + lower_incomplete_gamma(1.5, 5.0 * eps));
    };
    double brute = INFINITY;
    for (double kappa = 1.0 + 1e-6; kappa < 1e5; kappa *= 1.17)
        brute = std::min(brute, std::pow(kappa, 1.5) * small_jump(1.0 / kappa));
    CHECK(cg.compute_C_lambda(1.5).value == doctest::Approx(brute).epsilon(1e-3));
}

TEST_CASE("proof-chain bound Re Psi(a+b-iw) <= Psi(a+b) - sig^2 w^2/2") {
    for (const auto& m : reference_models()) {
        const auto strip = m.strip();
        std::uniform_real_distribution<double> U(0.0, 1.0);
        for (int i = 0; i < 40; ++i) {
            double lo = std::max(strip.lo, -8.0), hi = std::min(strip.hi, 8.0);
            const double c = lo + (hi - lo) * U(rng);
            const double w = U(rng);  // |w| <= 1 per the proof step
            const double lhs = m.char_exponent({c, -w}).real();
            const double rhs = m.psi_real(c) - 0.5 * m.sigma2() * w * w;
            CHECK(lhs <= rhs + 1e-10 * std::abs(rhs));
        }
    }
}

TEST_CASE("line envelope dominates the exact modulus") {
    for (const auto& m : reference_models()) {
        const auto strip = m.strip();
        const double c = std::clamp(1.4, strip.lo + 0.3, strip.hi - 0.3);
        const double tau = 0.4;
        const auto env = m.line_envelope(c, tau);
        for (double w = 0.0; w < 300.0; w = 1.3 * (w + 0.1)) {
            CHECK(env.log_at(w) >= m.log_cf_mod(c, w, tau) - 1e-10);
            // non-increasing
            CHECK(env.log_at(w * 1.1 + 1e-3) <= env.log_at(w) + 1e-12);
        }
        if (env.has_integrable_tail()) {
            // tail integral dominates a brute-force window sum
            const double s = 15.0;
            double brute = 0.0;
            for (double w = s; w < s + 4000.0; w += 0.01) brute += env.at(w + 0.005) * 0.01;
            CHECK(env.tail_integral(s) >= brute * (1.0 - 1e-6));
        }
    }
}
