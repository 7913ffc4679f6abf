#include "levyft/levy_models.hpp"

#include <algorithm>
#include <cmath>

#include "levyft/special_math.hpp"

namespace levyft {

namespace {

// Kou compensator zeta = p eta1/(eta1-1) + q eta2/(eta2+1) - 1, the unique
// value making Psi(1) = r.
double kou_zeta(const KouParams& k) {
    const double q = 1.0 - k.p_up;
    return k.p_up * k.eta1 / (k.eta1 - 1.0) + q * k.eta2 / (k.eta2 + 1.0) - 1.0;
}

// VG martingale drift mu = r + (1/chi) ln(1 - theta chi - sigma^2 chi / 2).
double vg_mu(double r, const VarianceGammaParams& v) {
    const double arg = 1.0 - v.theta * v.chi - 0.5 * v.sigma * v.sigma * v.chi;
    return r + std::log(arg) / v.chi;
}

// CGMY jump kernel H(z) (without the C factor); H'' (z) = (M-z)^{-1} + (G+z)^{-1}
// scaled so that Psi's jump part is C (H(z) - H(0) - z (H(1) - H(0))).
Complex cgmy_H(const CgmyParams& c, Complex z) {
    if (std::abs(c.y - 1.0) < 1e-8)
        return (c.m - z) * std::log(c.m - z) + (c.g + z) * std::log(c.g + z);
    return std::tgamma(-c.y) * (std::pow(c.m - z, c.y) + std::pow(c.g + z, c.y));
}

double cgmy_H_real(const CgmyParams& c, double x) {
    if (std::abs(c.y - 1.0) < 1e-8)
        return (c.m - x) * std::log(c.m - x) + (c.g + x) * std::log(c.g + x);
    return std::tgamma(-c.y) * (std::pow(c.m - x, c.y) + std::pow(c.g + x, c.y));
}

}  // namespace

Model Model::black_scholes(double r, double sigma) {
    if (!(sigma > 0.0)) throw DomainError("black_scholes: requires sigma > 0");
    Model m;
    m.family_ = Family::BlackScholes;
    m.r_ = r;
    m.p_ = BlackScholesParams{sigma};
    return m;
}

Model Model::merton(double r, double sigma, double intensity, double jump_mean,
                    double jump_vol) {
    if (!(sigma >= 0.0)) throw DomainError("merton: requires sigma >= 0");
    if (!(intensity > 0.0)) throw DomainError("merton: requires intensity > 0");
    if (!(jump_vol > 0.0)) throw DomainError("merton: requires jump_vol > 0");
    Model m;
    m.family_ = Family::Merton;
    m.r_ = r;
    m.p_ = MertonParams{sigma, intensity, jump_mean, jump_vol};
    return m;
}

Model Model::kou(double r, double sigma, double intensity, double p_up, double eta1,
                 double eta2) {
    if (!(sigma >= 0.0)) throw DomainError("kou: requires sigma >= 0");
    if (!(intensity > 0.0)) throw DomainError("kou: requires intensity > 0");
    if (!(p_up >= 0.0 && p_up <= 1.0)) throw DomainError("kou: requires p in [0,1]");
    if (!(eta1 > 1.0)) throw DomainError("kou: requires eta1 > 1 (exponential moment at 1)");
    if (!(eta2 > 0.0)) throw DomainError("kou: requires eta2 > 0");
    Model m;
    m.family_ = Family::Kou;
    m.r_ = r;
    m.p_ = KouParams{sigma, intensity, p_up, eta1, eta2};
    return m;
}

Model Model::variance_gamma(double r, double theta, double sigma, double chi) {
    if (!(sigma > 0.0)) throw DomainError("variance_gamma: requires sigma > 0");
    if (!(chi > 0.0)) throw DomainError("variance_gamma: requires chi > 0");
    if (!(1.0 - theta * chi - 0.5 * sigma * sigma * chi > 0.0))
        throw DomainError("variance_gamma: exponential moment at 1 fails (eta+ <= 1)");
    Model m;
    m.family_ = Family::VarianceGamma;
    m.r_ = r;
    m.p_ = VarianceGammaParams{theta, sigma, chi};
    return m;
}

Model Model::vg_from_eta(double r, double eta_plus, double eta_minus, double big_k) {
    if (!(eta_plus > 1.0)) throw DomainError("vg_from_eta: requires eta+ > 1");
    if (!(eta_minus > 0.0)) throw DomainError("vg_from_eta: requires eta- > 0");
    if (!(big_k > 0.0)) throw DomainError("vg_from_eta: requires K > 0");
    const double chi = 1.0 / big_k;
    const double theta = big_k * (1.0 / eta_plus - 1.0 / eta_minus);
    const double sigma2 = 2.0 * big_k / (eta_plus * eta_minus);
    return variance_gamma(r, theta, std::sqrt(sigma2), chi);
}

Model Model::cgmy(double r, double sigma, double c, double g, double m, double y) {
    if (!(sigma >= 0.0)) throw DomainError("cgmy: requires sigma >= 0");
    if (!(c > 0.0 && g > 0.0)) throw DomainError("cgmy: requires C, G > 0");
    if (!(m > 1.0)) throw DomainError("cgmy: requires M > 1 (exponential moment at 1)");
    if (!(y > 0.0 && y < 2.0)) throw DomainError("cgmy: requires Y in (0,2)");
    Model mm;
    mm.family_ = Family::Cgmy;
    mm.r_ = r;
    mm.p_ = CgmyParams{sigma, c, g, m, y};
    return mm;
}

double Model::sigma2() const {
    // triplet diffusion coefficient; the VG sigma shapes the jump measure
    // and contributes no diffusion
    if (family_ == Family::VarianceGamma) return 0.0;
    return std::visit([](const auto& p) { return p.sigma * p.sigma; }, p_);
}

bool Model::finite_activity() const {
    return family_ == Family::BlackScholes || family_ == Family::Merton ||
           family_ == Family::Kou;
}

AnalyticityStrip Model::strip() const {
    switch (family_) {
        case Family::BlackScholes:
        case Family::Merton:
            return {-INFINITY, INFINITY};
        case Family::Kou: {
            const auto& k = std::get<KouParams>(p_);
            return {-k.eta2, k.eta1};
        }
        case Family::VarianceGamma:
            return {-vg_eta_minus(), vg_eta_plus()};
        case Family::Cgmy: {
            const auto& c = std::get<CgmyParams>(p_);
            return {-c.g, c.m};
        }
    }
    throw DomainError("strip: unknown family");
}

double Model::vg_eta_plus() const {
    const auto& v = std::get<VarianceGammaParams>(p_);
    const double A = std::sqrt(0.25 * v.theta * v.theta * v.chi * v.chi +
                               0.5 * v.sigma * v.sigma * v.chi);
    return 1.0 / (A + 0.5 * v.theta * v.chi);
}

double Model::vg_eta_minus() const {
    const auto& v = std::get<VarianceGammaParams>(p_);
    const double A = std::sqrt(0.25 * v.theta * v.theta * v.chi * v.chi +
                               0.5 * v.sigma * v.sigma * v.chi);
    return 1.0 / (A - 0.5 * v.theta * v.chi);
}

void Model::require_in_strip(double c) const {
    const auto s = strip();
    if (!(c > s.lo && c < s.hi))
        throw DomainError("char_exponent: Re z outside the analyticity strip");
}

Complex Model::char_exponent(Complex z) const {
    require_in_strip(z.real());
    const double r = r_;
    switch (family_) {
        case Family::BlackScholes: {
            const double s2 = sigma2();
            return (r - 0.5 * s2) * z + 0.5 * s2 * z * z;
        }
        case Family::Merton: {
            const auto& m = std::get<MertonParams>(p_);
            const double s2 = m.sigma * m.sigma;
            const double kbar = std::exp(m.jump_mean + 0.5 * m.jump_vol * m.jump_vol) - 1.0;
            const Complex jump =
                std::exp(z * m.jump_mean + 0.5 * m.jump_vol * m.jump_vol * z * z) - 1.0 -
                z * kbar;
            return (r - 0.5 * s2) * z + 0.5 * s2 * z * z + m.intensity * jump;
        }
        case Family::Kou: {
            const auto& k = std::get<KouParams>(p_);
            const double s2 = k.sigma * k.sigma;
            const double q = 1.0 - k.p_up;
            const Complex jump =
                k.p_up * k.eta1 / (k.eta1 - z) + q * k.eta2 / (k.eta2 + z) - 1.0;
            return z * (r - 0.5 * s2 - k.intensity * kou_zeta(k)) + 0.5 * s2 * z * z +
                   k.intensity * jump;
        }
        case Family::VarianceGamma: {
            const auto& v = std::get<VarianceGammaParams>(p_);
            // Split the log through the factorization
            //   1 - theta chi z - sig^2 chi z^2/2 = (1 - z/eta+)(1 + z/eta-);
            // each factor stays in the right half plane on the strip, so the
            // principal branches sum to the analytic continuation.
            const double ep = vg_eta_plus(), em = vg_eta_minus();
            const Complex lg = std::log(1.0 - z / ep) + std::log(1.0 + z / em);
            return vg_mu(r, v) * z - lg / v.chi;
        }
        case Family::Cgmy: {
            const auto& c = std::get<CgmyParams>(p_);
            const double s2 = c.sigma * c.sigma;
            const double h0 = cgmy_H_real(c, 0.0), h1 = cgmy_H_real(c, 1.0);
            const Complex jump = c.c * (cgmy_H(c, z) - h0 - z * (h1 - h0));
            return (r - 0.5 * s2) * z + 0.5 * s2 * z * z + jump;
        }
    }
    throw DomainError("char_exponent: unknown family");
}

Complex Model::char_function(double tau, Complex omega) const {
    if (!(tau > 0.0)) throw DomainError("char_function: requires tau > 0");
    return std::exp(tau * char_exponent(Complex(0.0, 1.0) * omega));
}

double Model::psi_real(double c) const {
    return char_exponent(Complex(c, 0.0)).real();
}

double Model::log_cf_mod(double c, double w, double tau) const {
    return tau * char_exponent(Complex(c, -w)).real();
}

CLambdaResult Model::compute_C_lambda(double lambda) const {
    if (!(lambda > 0.0 && lambda < 2.0))
        throw DomainError("compute_C_lambda: requires lambda in (0,2)");
    // Finite-activity families: nu is bounded near 0, k^l J(1/k) -> 0.
    if (finite_activity()) return {0.0, INFINITY, false};
    // VG: J(e) ~ K e^2 up to logs, so k^l J(1/k) -> 0 for l < 2.
    if (family_ == Family::VarianceGamma) return {0.0, INFINITY, false};

    const auto& cg = std::get<CgmyParams>(p_);
    auto small_jump = [&](double eps) {
        // int_{|y|<eps} y^2 nu(dy) in closed form via the incomplete gamma.
        const double s = 2.0 - cg.y;
        return cg.c * (std::pow(cg.m, -s) * lower_incomplete_gamma(s, cg.m * eps) +
                       std::pow(cg.g, -s) * lower_incomplete_gamma(s, cg.g * eps));
    };
    auto objective = [&](double kappa) { return std::pow(kappa, lambda) * small_jump(1.0 / kappa); };

    // 512-point log grid on [1+1e-9, 1e6], then golden-section refinement.
    const double klo = 1.0 + 1e-9, khi = 1e6;
    const int ngrid = 512;
    int best_i = 0;
    double best_v = INFINITY;
    std::vector<double> ks(ngrid);
    for (int i = 0; i < ngrid; ++i) {
        ks[i] = klo * std::pow(khi / klo, double(i) / (ngrid - 1));
        const double v = objective(ks[i]);
        if (v < best_v) {
            best_v = v;
            best_i = i;
        }
    }
    const bool boundary = (best_i == ngrid - 1);
    double a = ks[std::max(0, best_i - 1)];
    double b = ks[std::min(ngrid - 1, best_i + 1)];
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = objective(x1), f2 = objective(x2);
    while ((b - a) > 1e-6 * b) {
        if (f1 < f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - gr * (b - a); f1 = objective(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + gr * (b - a); f2 = objective(x2);
        }
    }
    const double xm = 0.5 * (a + b);
    const double vm = objective(xm);
    if (vm < best_v) { best_v = vm; }
    return {best_v, xm, boundary};
}

std::pair<double, double> Model::default_small_jump_decay() const {
    if (family_ == Family::Cgmy) {
        const auto& cg = std::get<CgmyParams>(p_);
        const double lambda = 2.0 - cg.y;
        return {lambda, compute_C_lambda(lambda).value};
    }
    return {1.0, 0.0};
}

CharLineEnvelope Model::line_envelope(double c, double tau) const {
    require_in_strip(c);
    if (!(tau > 0.0)) throw DomainError("line_envelope: requires tau > 0");
    CharLineEnvelope e;
    e.tau_ = tau;
    e.c_ = c;
    e.psi_c_ = psi_real(c);
    const double s2 = sigma2();
    e.s2h_ = 0.5 * s2;
    switch (family_) {
        case Family::BlackScholes: {
            e.kind_ = CharLineEnvelope::Kind::Bs;
            e.gauss_rate_ = tau * e.s2h_;
            e.power_amp_log_ = tau * e.psi_c_;
            e.power_p_ = 0.0;
            e.convex_from_ = 1.0 / std::sqrt(2.0 * e.gauss_rate_);
            break;
        }
        case Family::Merton: {
            const auto& m = std::get<MertonParams>(p_);
            e.kind_ = CharLineEnvelope::Kind::Merton;
            e.lam_ = m.intensity;
            e.jm_ = m.jump_mean;
            e.jvh_ = 0.5 * m.jump_vol * m.jump_vol;
            e.kbar_ = std::exp(m.jump_mean + e.jvh_) - 1.0;
            e.drift0_ = c * (r_ - e.s2h_);
            e.gauss_rate_ = tau * e.s2h_;
            e.power_amp_log_ =
                tau * (e.drift0_ + e.s2h_ * c * c +
                       e.lam_ * (std::exp(c * e.jm_ + e.jvh_ * c * c) - 1.0 - c * e.kbar_));
            e.power_p_ = 0.0;
            // e^{B e^{-q w^2}} is convex past 1/sqrt(2q); combined with the
            // diffusive Gaussian factor the product is convex past the max.
            {
                const double g_on =
                    e.gauss_rate_ > 0.0 ? 1.0 / std::sqrt(2.0 * e.gauss_rate_) : 0.0;
                e.convex_from_ = std::max(g_on, 1.0 / m.jump_vol);
            }
            break;
        }
        case Family::Kou: {
            const auto& k = std::get<KouParams>(p_);
            e.kind_ = CharLineEnvelope::Kind::Kou;
            e.lam_ = k.intensity;
            e.p_ = k.p_up;
            e.eta1_ = k.eta1;
            e.eta2_ = k.eta2;
            e.drift0_ = c * (r_ - e.s2h_ - k.intensity * kou_zeta(k));
            e.gauss_rate_ = tau * e.s2h_;
            const double q = 1.0 - k.p_up;
            const double j0 =
                k.p_up * k.eta1 / (k.eta1 - c) + q * k.eta2 / (k.eta2 + c);
            e.power_amp_log_ =
                tau * (e.drift0_ + e.s2h_ * c * c + e.lam_ * (j0 - 1.0));
            e.power_p_ = 0.0;
            // exp(B/(d^2+w^2)) factors are convex past d/sqrt(3)
            {
                const double g_on =
                    e.gauss_rate_ > 0.0 ? 1.0 / std::sqrt(2.0 * e.gauss_rate_) : 0.0;
                const double j_on = std::max(k.eta1 - c, k.eta2 + c) / std::sqrt(3.0);
                e.convex_from_ = std::max(g_on, j_on);
            }
            break;
        }
        case Family::VarianceGamma: {
            const auto& v = std::get<VarianceGammaParams>(p_);
            e.kind_ = CharLineEnvelope::Kind::Vg;
            e.mu_ = vg_mu(r_, v);
            e.chi_ = v.chi;
            e.etap_ = vg_eta_plus();
            e.etam_ = vg_eta_minus();
            e.gauss_rate_ = 0.0;
            e.power_p_ = 2.0 * tau / v.chi;
            e.power_amp_log_ =
                tau * e.mu_ * c + (tau / v.chi) * std::log(e.etap_ * e.etam_);
            // Each modulus factor (eps^2 + (w/eta)^2)^{-q} is convex past
            // eta*eps/sqrt(2q+1); a product of positive decreasing convex
            // functions is convex.
            e.convex_from_ = std::max(std::abs(e.etap_ - c), std::abs(e.etam_ + c)) /
                             std::sqrt(tau / v.chi + 1.0);
            break;
        }
        case Family::Cgmy: {
            e.kind_ = CharLineEnvelope::Kind::Cgmy;
            auto [lambda, clam] = default_small_jump_decay();
            e.lambda_ = lambda;
            e.clam_ = clam;
            e.gauss_rate_ = tau * e.s2h_;
            e.power_amp_log_ = tau * e.psi_c_;
            e.power_p_ = 0.0;
            // the |w| > 1 indicator puts a concave kink at w = 1; past it
            // the e^{-A w^b} factor is convex for w^b >= (b-1)/(tau A b)
            {
                const double g_on =
                    e.gauss_rate_ > 0.0 ? 1.0 / std::sqrt(2.0 * e.gauss_rate_) : 0.0;
                const double b = 2.0 - lambda;
                const double A = 0.25 * tau * clam;
                double p_on = 0.0;
                if (b > 1.0 && A > 0.0) p_on = std::pow((b - 1.0) / (A * b), 1.0 / b);
                e.convex_from_ = std::max({1.0 + 1e-9, g_on, p_on});
            }
            break;
        }
    }
    return e;
}

double CharLineEnvelope::log_at(double w) const {
    const double tau = tau_, c = c_;
    switch (kind_) {
        case Kind::Bs:
            return tau * (psi_c_ - s2h_ * w * w);
        case Kind::Merton: {
            const double jump =
                std::exp(c * jm_ + jvh_ * (c * c - w * w)) - 1.0 - c * kbar_;
            return tau * (drift0_ + s2h_ * (c * c - w * w) + lam_ * jump);
        }
        case Kind::Kou: {
            const double q = 1.0 - p_;
            const double j = p_ * eta1_ * (eta1_ - c) / ((eta1_ - c) * (eta1_ - c) + w * w) +
                             q * eta2_ * (eta2_ + c) / ((eta2_ + c) * (eta2_ + c) + w * w);
            return tau * (drift0_ + s2h_ * (c * c - w * w) + lam_ * (j - 1.0));
        }
        case Kind::Vg: {
            const double m1 = (1.0 - c / etap_) * (1.0 - c / etap_) + w * w / (etap_ * etap_);
            const double m2 = (1.0 + c / etam_) * (1.0 + c / etam_) + w * w / (etam_ * etam_);
            return tau * mu_ * c - 0.5 * (tau / chi_) * std::log(m1 * m2);
        }
        case Kind::Cgmy: {
            const double sub = (w > 1.0) ? 0.25 * clam_ * std::pow(w, 2.0 - lambda_) : 0.0;
            return tau * (psi_c_ - s2h_ * w * w - sub);
        }
    }
    return -INFINITY;
}

double CharLineEnvelope::at(double w) const { return std::exp(log_at(w)); }

bool CharLineEnvelope::has_integrable_tail() const {
    if (gauss_rate_ > 0.0) return true;
    if (kind_ == Kind::Cgmy && clam_ > 0.0) return true;
    return power_p_ > 1.0;
}

double CharLineEnvelope::tail_integral(double s) const {
    switch (kind_) {
        case Kind::Bs: {
            // coef * int_s^inf e^{-q w^2} dw
            const double coef = std::exp(tau_ * psi_c_);
            return coef * TailHint::gauss_decay(1.0, gauss_rate_).remainder(s);
        }
        case Kind::Merton:
        case Kind::Kou: {
            if (!(gauss_rate_ > 0.0))
                throw NumericError("tail_integral: sigma = 0, no integrable closed tail");
            // Jump contribution frozen at s (it is non-increasing), leaving
            // a pure Gaussian tail.
            const double coef = std::exp(log_at(s) + gauss_rate_ * s * s);
            return coef * TailHint::gauss_decay(1.0, gauss_rate_).remainder(s);
        }
        case Kind::Vg: {
            if (!(power_p_ > 1.0))
                throw NumericError("tail_integral: VG power tail not integrable alone");
            return std::exp(power_amp_log_) * std::pow(s, 1.0 - power_p_) / (power_p_ - 1.0);
        }
        case Kind::Cgmy: {
            const double coef = std::exp(tau_ * psi_c_);
            const bool has_gauss = gauss_rate_ > 0.0;
            const bool has_jump = clam_ > 0.0;
            const double A = 0.25 * tau_ * clam_;
            const double b = 2.0 - lambda_;
            if (has_gauss && !has_jump)
                return coef * TailHint::gauss_decay(1.0, gauss_rate_).remainder(s);
            if (!has_gauss && has_jump) {
                // Piecewise: decay only active beyond w = 1.
                if (s >= 1.0) return coef * power_exp_tail(A, b, s);
                return coef * ((1.0 - s) + power_exp_tail(A, b, 1.0));
            }
            if (has_gauss && has_jump) {
                // min of the two single-factor relaxations (both valid).
                auto gauss_tail = [&](double v) {
                    return TailHint::gauss_decay(1.0, gauss_rate_).remainder(v);
                };
                auto mixed = [&](double v) {
                    const double t1 = std::exp(-gauss_rate_ * v * v) * power_exp_tail(A, b, v);
                    const double t2 = std::exp(-A * std::pow(v, b)) * gauss_tail(v);
                    return std::min(t1, t2);
                };
                if (s >= 1.0) return coef * mixed(s);
                return coef * ((gauss_tail(s) - gauss_tail(1.0)) + mixed(1.0));
            }
            throw NumericError("tail_integral: CGMY with sigma = 0 and C(lambda) = 0");
        }
    }
    throw NumericError("tail_integral: unreachable");
}

}  // namespace levyft
