#include "levyft/special_math.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace levyft {

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x * M_SQRT1_2);
}

namespace {

// gamma(s,x) by its power series, valid and fast for x < s+1.
double lig_series(double s, double x) {
    double term = 1.0 / s;
    double sum = term;
    for (int n = 1; n < 500; ++n) {
        term *= x / (s + n);
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum * std::exp(s * std::log(x) - x);
}

// Gamma(s,x) by modified Lentz continued fraction, for x >= s+1.
double uig_cf(double s, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(s * std::log(x) - x) * h;
}

}  // namespace

double lower_incomplete_gamma(double s, double x) {
    if (!(s > 0.0)) throw DomainError("lower_incomplete_gamma: requires s > 0");
    if (!(x >= 0.0)) throw DomainError("lower_incomplete_gamma: requires x >= 0");
    if (x == 0.0) return 0.0;
    if (x < s + 1.0) return lig_series(s, x);
    return std::tgamma(s) - uig_cf(s, x);
}

double upper_incomplete_gamma(double s, double x) {
    if (!(s > 0.0)) throw DomainError("upper_incomplete_gamma: requires s > 0");
    if (!(x >= 0.0)) throw DomainError("upper_incomplete_gamma: requires x >= 0");
    if (x == 0.0) return std::tgamma(s);
    if (x < s + 1.0) return std::tgamma(s) - lig_series(s, x);
    return uig_cf(s, x);
}

double tail_aux_I(double a, double b) {
    if (!(a > 0.0)) throw DomainError("tail_aux_I: requires a > 0");
    if (!(b > 0.0 && b <= 2.0)) throw DomainError("tail_aux_I: requires b in (0,2]");
    return std::exp(-a) + std::pow(a, -1.0 / b) * lower_incomplete_gamma(1.0 / b, a);
}

double power_exp_tail(double A, double b, double s) {
    if (!(A > 0.0 && b > 0.0)) throw DomainError("power_exp_tail: requires A > 0, b > 0");
    if (!(s >= 0.0)) throw DomainError("power_exp_tail: requires s >= 0");
    const double inv_b = 1.0 / b;
    return inv_b * std::pow(A, -inv_b) * upper_incomplete_gamma(inv_b, A * std::pow(s, b));
}

double TailHint::remainder(double omega) const {
    switch (kind) {
        case Kind::ExpDecay:
            return coef * std::exp(-rate * omega) / rate;
        case Kind::GaussDecay:
            // int_w^inf e^{-q t^2} dt = sqrt(pi/q)/2 * erfc(w sqrt(q))
            return coef * 0.5 * std::sqrt(M_PI / rate) * std::erfc(omega * std::sqrt(rate));
        case Kind::PowerDecay:
            if (!(power > 1.0)) throw DomainError("TailHint: power decay needs exponent > 1");
            return coef * std::pow(omega, 1.0 - power) / (power - 1.0);
        case Kind::MapToUnit:
            return 0.0;
    }
    return 0.0;
}

namespace detail {

namespace {

CcLevel build_cc(int n) {
    CcLevel lvl;
    lvl.nodes.resize(n + 1);
    lvl.weights.resize(n + 1);
    for (int j = 0; j <= n; ++j) lvl.nodes[j] = std::cos(M_PI * j / n);
    // Standard closed-form Clenshaw-Curtis weights.
    for (int j = 0; j <= n; ++j) {
        double sum = 0.0;
        for (int k = 1; k <= n / 2; ++k) {
            const double bk = (k == n / 2) ? 1.0 : 2.0;
            sum += bk * std::cos(2.0 * M_PI * k * j / n) / (4.0 * k * k - 1.0);
        }
        const double cj = (j == 0 || j == n) ? 1.0 : 2.0;
        lvl.weights[j] = cj / n * (1.0 - sum);
    }
    return lvl;
}

}  // namespace

const CcLevel& cc_level(int n) {
    static const std::map<int, CcLevel> levels = [] {
        std::map<int, CcLevel> m;
        for (int k = 32; k <= 4096; k *= 2) m.emplace(k, build_cc(k));
        return m;
    }();
    auto it = levels.find(n);
    if (it == levels.end()) throw DomainError("cc_level: unsupported node count");
    return it->second;
}

}  // namespace detail

QuadratureResult integrate_semi_infinite(const std::function<double(double)>& f, double lo,
                                         double tol, const TailHint& tail) {
    if (!(tol > 0.0)) throw DomainError("integrate_semi_infinite: requires tol > 0");

    if (tail.kind == TailHint::Kind::MapToUnit) {
        // w = lo + t/(1-t), dw = dt/(1-t)^2; f must decay at least like
        // w^{-2} for the transformed integrand to stay bounded at t = 1.
        auto g = [&](double t) {
            const double tc = std::min(t, 1.0 - 1e-13);
            const double u = 1.0 - tc;
            return f(lo + tc / u) / (u * u);
        };
        return integrate_finite(g, 0.0, 1.0, tol);
    }

    // Panels [lo, lo+w0], widths doubling, until the majorant remainder
    // is small.  Each panel at tol/8.
    QuadratureResult out;
    double left = lo;
    double width = std::max(1.0, std::abs(lo) * 0.125);
    const int max_panels = 64;
    for (int p = 0; p < max_panels; ++p) {
        const double right = left + width;
        auto r = integrate_finite(f, left, right, tol / 8.0);
        out.value += r.value;
        out.error_estimate += r.error_estimate;
        out.evaluations += r.evaluations;
        left = right;
        width *= 2.0;
        const double rem = tail.remainder(left);
        if (rem <= 0.5 * tol && p >= 2) {
            // Majorant must actually dominate f where we rely on it.
            double maj_at;
            for (double w : {left, 1.3 * left, 2.0 * left, 3.7 * left}) {
                switch (tail.kind) {
                    case TailHint::Kind::ExpDecay: maj_at = tail.coef * std::exp(-tail.rate * w); break;
                    case TailHint::Kind::GaussDecay: maj_at = tail.coef * std::exp(-tail.rate * w * w); break;
                    default: maj_at = tail.coef * std::pow(w, -tail.power); break;
                }
                if (f(w) > maj_at * (1.0 + 1e-9) + 1e-300)
                    throw NumericError("integrate_semi_infinite: tail majorant does not dominate");
            }
            out.error_estimate += rem;
            return out;
        }
    }
    throw QuadratureError("integrate_semi_infinite: panel budget exhausted", out);
}

}  // namespace levyft
