#include "run_config.hpp"

#include <cmath>
#include <fstream>

namespace levyft::cli {

namespace {

double need(const json& j, const std::string& key, const std::string& ctx) {
    if (!j.contains(key))
        throw DomainError(ctx + ": missing field '" + key + "'");
    if (!j[key].is_number())
        throw DomainError(ctx + ": field '" + key + "' must be a number");
    return j[key].get<double>();
}

double get_or(const json& j, const std::string& key, double dflt) {
    return j.contains(key) ? j[key].get<double>() : dflt;
}

Greek parse_greek(const json& j) {
    const std::string g = j.value("greek", "price");
    if (g == "price") return Greek::Price;
    if (g == "delta") return Greek::Delta;
    if (g == "gamma") return Greek::Gamma;
    throw DomainError("payoff.greek: expected price|delta|gamma, got '" + g + "'");
}

}  // namespace

Model parse_model(const json& j) {
    if (!j.contains("family")) throw DomainError("model: missing field 'family'");
    const std::string fam = j["family"].get<std::string>();
    const double r = need(j, "r", "model");
    if (fam == "bs" || fam == "black_scholes")
        return Model::black_scholes(r, need(j, "sigma", "model(bs)"));
    if (fam == "merton")
        return Model::merton(r, need(j, "sigma", "model(merton)"),
                             need(j, "intensity", "model(merton)"),
                             need(j, "jump_mean", "model(merton)"),
                             need(j, "jump_vol", "model(merton)"));
    if (fam == "kou")
        return Model::kou(r, need(j, "sigma", "model(kou)"), need(j, "intensity", "model(kou)"),
                          need(j, "p_up", "model(kou)"), need(j, "eta1", "model(kou)"),
                          need(j, "eta2", "model(kou)"));
    if (fam == "vg" || fam == "variance_gamma") {
        if (j.contains("eta_plus"))
            return Model::vg_from_eta(r, need(j, "eta_plus", "model(vg)"),
                                      need(j, "eta_minus", "model(vg)"),
                                      need(j, "K", "model(vg)"));
        return Model::variance_gamma(r, need(j, "theta", "model(vg)"),
                                     need(j, "sigma", "model(vg)"), need(j, "chi", "model(vg)"));
    }
    if (fam == "cgmy")
        return Model::cgmy(r, get_or(j, "sigma", 0.0), need(j, "c", "model(cgmy)"),
                           need(j, "g", "model(cgmy)"), need(j, "m", "model(cgmy)"),
                           need(j, "y", "model(cgmy)"));
    throw DomainError("model.family: unknown family '" + fam + "'");
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("config: cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw DomainError(std::string("config: JSON parse error: ") + e.what());
    }

    RunConfig cfg;
    if (!j.contains("model")) throw DomainError("config: missing 'model' block");
    cfg.model = parse_model(j["model"]);
    cfg.tau = need(j, "maturity", "config");
    if (!(cfg.tau > 0.0)) throw DomainError("maturity: must be positive");

    if (!j.contains("payoff") && !j.contains("table"))
        throw DomainError("config: missing 'payoff' block");
    const json pj = j.value("payoff", json::object());
    const std::string kind = pj.value("kind", "call");
    cfg.spot = get_or(pj, "spot", 100.0);
    const Greek greek = parse_greek(pj);
    const double x_extra = get_or(j, "x", 0.0);

    // damping: explicit plans carry it in the plan block; otherwise a
    // placeholder admissible value is used and the optimizer replaces it
    double alpha_hint = 0.0;
    if (j.contains("plan") && j["plan"].contains("alpha"))
        alpha_hint = j["plan"]["alpha"].get<double>();

    auto push_vanilla = [&](double strike) {
        const std::string anchor = pj.value("anchor", "strike");
        double scale, log_strike, x0;
        if (anchor == "strike") {
            scale = strike;
            log_strike = 0.0;
            x0 = std::log(cfg.spot / strike);
        } else if (anchor == "spot") {
            scale = cfg.spot;
            log_strike = std::log(strike / cfg.spot);
            x0 = 0.0;
        } else {
            throw DomainError("payoff.anchor: expected strike|spot, got '" + anchor + "'");
        }
        double alpha = alpha_hint;
        if (kind == "call" && !(alpha > 1.0)) alpha = 2.0;
        if (kind == "put" && !(alpha < 0.0)) alpha = -2.0;
        Contract c;
        c.payoff = (kind == "call") ? DampedPayoff::call(scale, log_strike, alpha, greek)
                                    : DampedPayoff::put(scale, log_strike, alpha, greek);
        c.x = x0 + x_extra;
        c.label = "K=" + std::to_string(strike);
        cfg.contracts.push_back(c);
    };

    if (pj.empty()) {
        // table-only configuration; contracts come from the table block
    } else if (kind == "call" || kind == "put") {
        if (pj.contains("strikes"))
            for (const auto& k : pj["strikes"]) push_vanilla(k.get<double>());
        else
            push_vanilla(need(pj, "strike", "payoff"));
    } else if (kind == "binary") {
        double lo, hi;
        if (pj.contains("support_prices")) {
            lo = std::log(pj["support_prices"][0].get<double>() / cfg.spot);
            hi = std::log(pj["support_prices"][1].get<double>() / cfg.spot);
        } else if (pj.contains("support")) {
            lo = pj["support"][0].get<double>();
            hi = pj["support"][1].get<double>();
        } else {
            throw DomainError("payoff(binary): needs 'support' or 'support_prices'");
        }
        Contract c;
        c.payoff = DampedPayoff::binary(get_or(pj, "cash", 1.0), lo, hi, greek);
        c.x = x_extra;
        c.label = "binary";
        cfg.contracts.push_back(c);
    } else {
        throw DomainError("payoff.kind: expected call|put|binary, got '" + kind + "'");
    }

    if (j.contains("plan")) {
        const json& pl = j["plan"];
        const bool has_explicit = pl.contains("alpha") || pl.contains("delta_omega");
        const bool has_opt = pl.value("optimize", false);
        const bool has_tol = pl.contains("tolerance");
        if (int(has_explicit) + int(has_opt) + int(has_tol) != 1)
            throw DomainError("plan: exactly one of explicit {alpha,a,delta_omega,n} / "
                              "{optimize,n} / {tolerance,n0} must be present");
        if (has_explicit) {
            cfg.plan.mode = PlanMode::Explicit;
            cfg.plan.alpha = need(pl, "alpha", "plan");
            cfg.plan.a = need(pl, "a", "plan");
            cfg.plan.delta_omega = need(pl, "delta_omega", "plan");
            cfg.plan.n = int(need(pl, "n", "plan"));
            // re-anchor payoff damping to the explicit alpha; admissibility
            // surfaces here with a field-level diagnostic
            for (auto& c : cfg.contracts) {
                try {
                    if (c.payoff.kind() == PayoffKind::Call)
                        c.payoff = DampedPayoff::call(c.payoff.scale(), c.payoff.log_strike(),
                                                      cfg.plan.alpha, c.payoff.greek());
                    else if (c.payoff.kind() == PayoffKind::Put)
                        c.payoff = DampedPayoff::put(c.payoff.scale(), c.payoff.log_strike(),
                                                     cfg.plan.alpha, c.payoff.greek());
                    else if (cfg.plan.alpha != 0.0)
                        throw DomainError("binary payoffs use alpha = 0");
                } catch (const DomainError& e) {
                    throw DomainError(std::string("plan.alpha: ") + e.what());
                }
            }
        } else if (has_opt) {
            cfg.plan.mode = PlanMode::Optimize;
            cfg.plan.n = int(get_or(pl, "n", 32));
        } else {
            cfg.plan.mode = PlanMode::Tolerance;
            cfg.plan.tolerance = need(pl, "tolerance", "plan");
            cfg.plan.n0 = int(get_or(pl, "n0", 8));
        }
    }

    if (j.contains("sweep")) {
        SweepConfig s;
        for (const auto& n : j["sweep"]["n_values"]) s.n_values.push_back(n.get<int>());
        s.alpha_grid = int(get_or(j["sweep"], "alpha_grid", 12));
        if (j["sweep"].contains("dw_grid")) {
            s.dw_lo = j["sweep"]["dw_grid"][0].get<double>();
            s.dw_hi = j["sweep"]["dw_grid"][1].get<double>();
            s.dw_grid = j["sweep"]["dw_grid"][2].get<int>();
        }
        cfg.sweep = s;
    }

    if (j.contains("table")) {
        TableConfig t;
        const json& tj = j["table"];
        t.name = tj.value("name", "vg");
        if (t.name == "vg") {
            for (const auto& cj : tj["cells"]) {
                TableCell c;
                c.strike = need(cj, "strike", "table.cell");
                c.tau = need(cj, "tau", "table.cell");
                c.n = int(need(cj, "n", "table.cell"));
                c.alpha = need(cj, "alpha", "table.cell");
                c.a = need(cj, "a", "table.cell");
                c.omega_max = need(cj, "omega_max", "table.cell");
                c.reference_bound = get_or(cj, "reference_bound", 0.0);
                t.cells.push_back(c);
            }
        } else if (t.name == "kou") {
            for (const auto& k : tj["strikes"]) t.strikes.push_back(k.get<double>());
            t.n = int(get_or(tj, "n", 32));
            t.lee_alpha = get_or(tj, "lee_alpha", 0.57);
            if (tj.contains("lee_omega_max"))
                for (const auto& v : tj["lee_omega_max"]) t.lee_omega_max.push_back(v.get<double>());
            if (tj.contains("lee_reference"))
                for (const auto& v : tj["lee_reference"]) t.lee_reference.push_back(v.get<double>());
            if (tj.contains("reference_bound"))
                for (const auto& v : tj["reference_bound"])
                    t.reference_bound.push_back(v.get<double>());
            if (tj.contains("reference_dagger"))
                for (const auto& v : tj["reference_dagger"])
                    t.reference_dagger.push_back(v.get<double>());
        } else {
            throw DomainError("table.name: expected vg|kou");
        }
        cfg.table = t;
    }

    if (j.contains("output") && j["output"].contains("csv"))
        cfg.csv_path = j["output"]["csv"].get<std::string>();

    cfg.echo = j;
    return cfg;
}

}  // namespace levyft::cli
