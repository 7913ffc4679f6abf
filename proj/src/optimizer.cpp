#include "levyft/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace levyft {

DampedPayoff with_alpha(const DampedPayoff& payoff, double alpha) {
    switch (payoff.kind()) {
        case PayoffKind::Call:
            return DampedPayoff::call(payoff.scale(), payoff.log_strike(), alpha, payoff.greek());
        case PayoffKind::Put:
            return DampedPayoff::put(payoff.scale(), payoff.log_strike(), alpha, payoff.greek());
        case PayoffKind::Binary:
            return DampedPayoff::binary(payoff.scale(), payoff.support_lo(), payoff.support_hi(),
                                        payoff.greek());
    }
    throw DomainError("with_alpha: unknown payoff kind");
}

double optimal_delta_omega(const Model& model, const DampedPayoff& payoff, double tau, double x,
                           double alpha, double a, int n, double m_value, const TailMajorant& c,
                           Convention convention) {
    (void)model;
    (void)payoff;
    (void)tau;
    (void)x;
    (void)alpha;
    if (n < 1) throw DomainError("optimal_delta_omega: requires n >= 1");
    if (!(m_value > 0.0)) throw DomainError("optimal_delta_omega: requires m_value > 0");
    const double b = 2.0 * M_PI * a * n;
    const double conv = (convention == Convention::Theorem) ? 0.5 : 1.0;
    const double mbar = conv * m_value;  // both bound terms share a 1/pi
    auto p_fun = [&](double y) {
        // b Mbar e^{b/y} / ((e^{b/y}-1)^2 y^2), stable via e^{-b/y}
        const double t = b / y;
        const double em = std::exp(-t);
        const double den = -std::expm1(-t);  // 1 - e^{-t}
        return b * mbar * em / (den * den * y * y);
    };
    // the truncation lower limit follows the certificate: n dw under
    // convexity, (n-1/2) dw under monotonicity alone; the root equation
    // uses the matching derivative so it lands on the evaluated minimum
    auto h = [&](double y) {
        if (c.convex_from(y)) return p_fun(y) - c.at(y);
        const double q = (n - 0.5) / double(n);
        return p_fun(y) - q * c.at(q * y);
    };

    // h < 0 near 0 (p -> 0 spectrally, c(0+) > 0); the proposition's
    // left-boundary case w0/n is degenerate at w0 = 0.
    double ylo = 1e-3;
    while (h(ylo) > 0.0 && ylo > 1e-12) ylo *= 0.25;
    if (h(ylo) > 0.0)
        throw NumericError("optimal_delta_omega: p - c positive at the left boundary");
    double yhi = ylo;
    bool bracketed = false;
    for (int i = 0; i < 200 && yhi < 1e8; ++i) {
        yhi *= 2.0;
        if (h(yhi) > 0.0) {
            bracketed = true;
            break;
        }
        ylo = yhi;
    }
    if (!bracketed)
        throw NumericError("optimal_delta_omega: no sign change of p - c within y <= 1e8");
    for (int i = 0; i < 200 && (yhi - ylo) > 1e-10 * yhi; ++i) {
        const double ym = 0.5 * (ylo + yhi);
        (h(ym) > 0.0 ? yhi : ylo) = ym;
    }
    double ystar = 0.5 * (ylo + yhi);

    // The tail-limit rule flips from (n-1/2)dw to n dw at the convexity
    // onset, kinking the objective; when the root lands near the flip the
    // sign change need not be the minimum, so polish on the evaluated
    // bound around it.
    const double onset = c.convex_from(ystar) ? ystar : [&] {
        double o = ystar;
        while (o < 4.0 * ystar && !c.convex_from(o)) o *= 1.1;
        return o;
    }();
    const bool near_flip = !(c.convex_from(ystar * 0.25)) && onset < 4.0 * ystar;
    if (near_flip) {
        auto F = [&](double y) {
            const double t = b / y;
            const double quad = mbar * std::exp(-t) / (-std::expm1(-t));
            const double q = c.convex_from(y) ? 1.0 : (n - 0.5) / double(n);
            return quad + c.tail_integral(q * y, CMethod::NumericEnvelope) / 1.0;
        };
        double best_y = ystar, best_f = F(ystar);
        for (double f : {0.6, 0.8, 1.25, 1.6}) {
            const double y = ystar * f;
            const double v = F(y);
            if (v < best_f) {
                best_f = v;
                best_y = y;
            }
        }
        // golden refinement in the winning bracket
        double a0 = best_y * 0.75, b0 = best_y * 1.33;
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = b0 - gr * (b0 - a0), x2 = a0 + gr * (b0 - a0);
        double f1 = F(x1), f2 = F(x2);
        for (int it = 0; it < 24; ++it) {
            if (f1 < f2) {
                b0 = x2; x2 = x1; f2 = f1;
                x1 = b0 - gr * (b0 - a0); f1 = F(x1);
            } else {
                a0 = x1; x1 = x2; f1 = f2;
                x2 = a0 + gr * (b0 - a0); f2 = F(x2);
            }
        }
        const double yg = 0.5 * (a0 + b0);
        if (F(yg) < best_f) best_y = yg;
        ystar = best_y;
    }
    return ystar / n;
}

namespace {

struct CellEval {
    double total = INFINITY;
    TransformPlan plan;
    BoundReport report;
    bool ok = false;
};

// Evaluates the bound at (alpha, a) with the inner-optimal spacing; shares
// the m-value and majorant between the root search and the final report.
class PlanObjective {
public:
    PlanObjective(const Model& model, const DampedPayoff& payoff, double tau, double x, int n,
                  const OptimizeControl& ctl, OptimizationReport& rep)
        : model_(model), payoff_(payoff), tau_(tau), x_(x), n_(n), ctl_(ctl), rep_(rep) {
        lambda_ = model.default_small_jump_decay().first;
        if (ctl.force_m_method) {
            mm_ = *ctl.force_m_method;
        } else if (model.sigma2() > 0.0) {
            mm_ = MMethod::MTildeGaussian;
        } else if (model.compute_C_lambda(lambda_).value > 0.0) {
            mm_ = MMethod::MTilde;
        } else {
            mm_ = MMethod::HardyNumeric;
        }
        cm_ = ctl.force_c_method.value_or(CMethod::NumericEnvelope);
        if (cm_ == CMethod::SimplifiedC && !(model.sigma2() > 0.0) &&
            !(model.compute_C_lambda(lambda_).value > 0.0))
            cm_ = CMethod::NumericEnvelope;
    }

    CellEval at(double alpha, double a) {
        CellEval cell;
        try {
            const DampedPayoff po = with_alpha(payoff_, alpha);
            MMethod mm = mm_;
            double m_value;
            if (mm == MMethod::HardyNumeric) {
                m_value = hardy_norm_M(model_, po, tau_, x_, alpha, a, 1e-8);
            } else {
                try {
                    m_value = m_tilde(model_, po, tau_, x_, alpha, a, lambda_);
                } catch (const NumericError&) {
                    mm = MMethod::HardyNumeric;
                    m_value = hardy_norm_M(model_, po, tau_, x_, alpha, a, 1e-8);
                }
            }
            TailMajorant c(model_, po, alpha, tau_, lambda_);
            const double dw = optimal_delta_omega(model_, po, tau_, x_, alpha, a, n_, m_value, c,
                                                  ctl_.convention);
            TransformPlan plan{tau_, alpha, a, dw, n_, SpaceKind::XSpace};
            BoundReport br;
            br.convention = ctl_.convention;
            br.m_method = mm;
            br.m_value = m_value;
            br.quadrature_part =
                quadrature_bound(m_value, x_, alpha, a, dw, ctl_.convention);
            auto [tval, limit] = truncation_bound(model_, po, plan, c, x_, cm_);
            br.c_method = cm_;
            br.truncation_part = tval;
            br.tail_lower_limit = limit;
            br.total = br.quadrature_part + br.truncation_part;
            cell.total = br.total;
            cell.plan = plan;
            cell.report = br;
            cell.ok = std::isfinite(br.total);
        } catch (const NumericError&) {
        } catch (const DomainError&) {
        }
        if (cell.ok) {
            rep_.evaluations++;
            if (ctl_.with_trace)
                rep_.trace.push_back({alpha, a, cell.plan.delta_omega, cell.total});
        }
        return cell;
    }

private:
    const Model& model_;
    const DampedPayoff& payoff_;
    double tau_, x_;
    int n_;
    const OptimizeControl& ctl_;
    OptimizationReport& rep_;
    double lambda_;
    MMethod mm_;
    CMethod cm_;
};

// a_max(alpha): H1 strip condition and H2 payoff condition combined.
double a_max_at(const Model& model, const DampedPayoff& payoff, double alpha) {
    const auto strip = model.strip();
    const double h1 = std::min(strip.hi - alpha, alpha - strip.lo);
    const double h2 = with_alpha(payoff, alpha).strip_halfwidth_max();
    return std::min(h1, h2);
}

constexpr double kLogALo = 0.05, kLogAHi = 400.0;

// a(s): linear fraction of a_max when finite, log-interpolated on
// [0.05, 400] when the strip and payoff leave a unbounded.
double a_from_s(const Model& model, const DampedPayoff& payoff, double alpha, double s) {
    const double amax = a_max_at(model, payoff, alpha);
    if (std::isfinite(amax)) return s * amax;
    return kLogALo * std::pow(kLogAHi / kLogALo, s);
}

double s_from_a(const Model& model, const DampedPayoff& payoff, double alpha, double a) {
    const double amax = a_max_at(model, payoff, alpha);
    if (std::isfinite(amax)) return a / amax;
    return std::log(a / kLogALo) / std::log(kLogAHi / kLogALo);
}

}  // namespace

OptimizationReport optimize_plan(const Model& model, const DampedPayoff& payoff, double tau,
                                 double x, int n, const OptimizeControl& control) {
    if (!(tau > 0.0)) throw DomainError("optimize_plan: requires tau > 0");
    if (n < 1) throw DomainError("optimize_plan: requires n >= 1");

    double alpha_lo = 0.0, alpha_hi = 0.0;
    const bool alpha_fixed = payoff.kind() == PayoffKind::Binary;
    if (!alpha_fixed) {
        auto [lo, hi] = admissible_alpha_range(payoff.kind(), model.strip());
        if (std::isinf(hi)) hi = lo + control.alpha_span;
        if (std::isinf(lo)) lo = hi - control.alpha_span;
        const double width = hi - lo;
        alpha_lo = lo + control.margin * width;
        alpha_hi = hi - control.margin * width;
        if (!(alpha_lo < alpha_hi))
            throw DomainError("optimize_plan: empty admissible alpha region");
    }

    OptimizationReport rep;
    rep.best_bound.total = INFINITY;
    PlanObjective obj(model, payoff, tau, x, n, control, rep);

    const double slo = control.margin, shi = 1.0 - control.margin;
    auto clamped_eval = [&](double alpha, double s) {
        alpha = alpha_fixed ? 0.0 : std::clamp(alpha, alpha_lo, alpha_hi);
        s = std::clamp(s, slo, shi);
        return obj.at(alpha, a_from_s(model, payoff, alpha, s));
    };

    CellEval best;
    double best_alpha = alpha_fixed ? 0.0 : alpha_lo, best_s = 0.5;
    auto consider = [&](const CellEval& cell, double alpha, double s) {
        if (cell.ok && cell.total < best.total) {
            best = cell;
            best_alpha = alpha;
            best_s = s;
        }
    };

    if (control.warm_start) {
        const auto [wa, ws] = *control.warm_start;
        const double da = alpha_fixed ? 0.0 : 0.05 * (alpha_hi - alpha_lo);
        for (int i = -2; i <= 2; ++i) {
            if (alpha_fixed && i != 0) continue;
            for (int j = -2; j <= 2; ++j) {
                const double alpha = alpha_fixed ? 0.0 : std::clamp(wa + i * da, alpha_lo, alpha_hi);
                const double s = std::clamp(ws + j * 0.05, slo, shi);
                consider(clamped_eval(alpha, s), alpha, s);
            }
        }
    } else {
        const int ng = control.grid;
        const int na = alpha_fixed ? 1 : ng;
        for (int i = 0; i < na; ++i) {
            const double alpha =
                alpha_fixed ? 0.0 : alpha_lo + (alpha_hi - alpha_lo) * (i + 0.5) / ng;
            for (int j = 0; j < ng; ++j) {
                const double s = slo + (shi - slo) * (j + 0.5) / ng;
                consider(clamped_eval(alpha, s), alpha, s);
            }
        }
    }
    if (!best.ok) throw NumericError("optimize_plan: no admissible configuration evaluated");

    if (alpha_fixed) {
        // golden-section refinement on s around the best grid cell
        const double step = (shi - slo) / std::max(control.grid, 4);
        double a0 = std::max(slo, best_s - step), b0 = std::min(shi, best_s + step);
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = b0 - gr * (b0 - a0), x2 = a0 + gr * (b0 - a0);
        auto fs = [&](double s) {
            auto cell = clamped_eval(0.0, s);
            consider(cell, 0.0, s);
            return cell.ok ? cell.total : INFINITY;
        };
        double f1 = fs(x1), f2 = fs(x2);
        for (int it = 0; it < 60 && (b0 - a0) > 1e-7; ++it) {
            if (f1 < f2) {
                b0 = x2; x2 = x1; f2 = f1;
                x1 = b0 - gr * (b0 - a0); f1 = fs(x1);
            } else {
                a0 = x1; x1 = x2; f1 = f2;
                x2 = a0 + gr * (b0 - a0); f2 = fs(x2);
            }
        }
    } else {
        // deterministic reflect/expand/contract simplex in (alpha, s)
        struct Vertex {
            double al, s, f;
        };
        const double ascale = 0.02 * (alpha_hi - alpha_lo);
        auto fv = [&](double al, double s) {
            auto cell = clamped_eval(al, s);
            consider(cell, std::clamp(al, alpha_lo, alpha_hi), std::clamp(s, slo, shi));
            return cell.ok ? cell.total : INFINITY;
        };
        std::array<Vertex, 3> sx{{{best_alpha, best_s, best.total},
                                  {best_alpha + ascale, best_s, fv(best_alpha + ascale, best_s)},
                                  {best_alpha, best_s + 0.02, fv(best_alpha, best_s + 0.02)}}};
        long budget = control.max_refine;
        int stale = 0;
        double last_best = best.total;
        while (budget > 0 && stale < 12) {
            std::sort(sx.begin(), sx.end(), [](const Vertex& u, const Vertex& v) { return u.f < v.f; });
            const double diam = std::abs(sx[0].al - sx[2].al) / std::max(1.0, alpha_hi - alpha_lo) +
                                std::abs(sx[0].s - sx[2].s);
            if (diam < 1e-6) break;
            const double ca = 0.5 * (sx[0].al + sx[1].al), cs = 0.5 * (sx[0].s + sx[1].s);
            Vertex& worst = sx[2];
            const double ra = ca + (ca - worst.al), rs = cs + (cs - worst.s);
            const double fr = fv(ra, rs);
            budget--;
            if (fr < sx[0].f) {
                const double ea = ca + 2.0 * (ca - worst.al), es = cs + 2.0 * (cs - worst.s);
                const double fe = fv(ea, es);
                budget--;
                worst = (fe < fr) ? Vertex{ea, es, fe} : Vertex{ra, rs, fr};
            } else if (fr < sx[1].f) {
                worst = {ra, rs, fr};
            } else {
                const double ka = ca + 0.5 * (worst.al - ca), ks = cs + 0.5 * (worst.s - cs);
                const double fk = fv(ka, ks);
                budget--;
                if (fk < worst.f) {
                    worst = {ka, ks, fk};
                } else {
                    for (int i = 1; i < 3; ++i) {
                        sx[i].al = sx[0].al + 0.5 * (sx[i].al - sx[0].al);
                        sx[i].s = sx[0].s + 0.5 * (sx[i].s - sx[0].s);
                        sx[i].f = fv(sx[i].al, sx[i].s);
                        budget--;
                    }
                }
            }
            if (best.total < last_best - 1e-12 * std::abs(last_best)) {
                stale = 0;
                last_best = best.total;
            } else {
                stale++;
            }
        }
    }

    rep.best_plan = best.plan;
    rep.best_bound = best.report;
    rep.converged = true;
    return rep;
}

OptimizationReport choose_n(const Model& model, const DampedPayoff& payoff, double tau, double x,
                            double tolerance, int n0, const OptimizeControl& control, int n_cap) {
    if (!(tolerance > 0.0)) throw DomainError("choose_n: requires tolerance > 0");
    if (n0 < 4) throw DomainError("choose_n: requires n0 >= 4");
    OptimizeControl ctl = control;
    OptimizationReport acc;  // accumulated trace/evaluations across levels
    acc.best_bound.total = INFINITY;
    for (long n = n0; n <= n_cap; n *= 2) {
        OptimizationReport r = optimize_plan(model, payoff, tau, x, int(n), ctl);
        acc.evaluations += r.evaluations;
        if (control.with_trace)
            acc.trace.insert(acc.trace.end(), r.trace.begin(), r.trace.end());
        if (r.best_bound.total <= acc.best_bound.total) {
            acc.best_plan = r.best_plan;
            acc.best_bound = r.best_bound;
        }
        if (acc.best_bound.total < tolerance) {
            acc.converged = true;
            return acc;
        }
        ctl.warm_start = {{r.best_plan.alpha,
                           s_from_a(model, payoff, r.best_plan.alpha, r.best_plan.a)}};
    }
    acc.converged = false;
    throw ToleranceError("choose_n: n_cap reached before certifying the tolerance", acc);
}

}  // namespace levyft
