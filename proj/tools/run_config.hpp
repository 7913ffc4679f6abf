#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "levyft/levy_models.hpp"
#include "levyft/payoffs.hpp"

namespace levyft::cli {

using nlohmann::json;

/// One concrete contract to price: payoff plus its evaluation point.
struct Contract {
    DampedPayoff payoff = DampedPayoff::call(1.0, 0.0, 2.0);
    double x = 0.0;          // evaluation log-moneyness (anchor-relative)
    std::string label;       // e.g. "K=100"
};

enum class PlanMode { Explicit, Optimize, Tolerance };

struct PlanConfig {
    PlanMode mode = PlanMode::Optimize;
    double alpha = 0.0, a = 0.0, delta_omega = 0.0;  // explicit mode
    int n = 32;
    double tolerance = 1e-6;  // tolerance mode
    int n0 = 8;
};

struct SweepConfig {
    std::vector<int> n_values;
    int alpha_grid = 12;
    double dw_lo = 0.05, dw_hi = 50.0;
    int dw_grid = 48;
};

struct TableCell {
    double strike = 0.0;
    double tau = 0.0;
    int n = 0;
    double alpha = 0.0, a = 0.0, omega_max = 0.0;
    double reference_bound = 0.0;  // published value, echoed for comparison
};

struct TableConfig {
    std::string name;  // "vg" or "kou"
    std::vector<TableCell> cells;           // vg mode
    std::vector<double> strikes;            // kou mode
    int n = 32;
    double lee_alpha = 0.57;                // kou: k-space damping for the Lee column
    std::vector<double> lee_omega_max;      // kou: per-strike cutoff for the Lee column
    std::vector<double> lee_reference;      // published Lee bounds, echoed
    std::vector<double> reference_bound;    // published main bounds, echoed
    std::vector<double> reference_dagger;   // published numeric-tail bounds, echoed
};

struct RunConfig {
    Model model = Model::black_scholes(0.0, 0.1);
    double spot = 100.0;
    double tau = 0.0;
    std::vector<Contract> contracts;
    PlanConfig plan;
    std::optional<SweepConfig> sweep;
    std::optional<TableConfig> table;
    std::string csv_path;  // empty: stdout only
    json echo;             // effective configuration, written into headers
};

/// Parses and validates a configuration file.  Throws DomainError with a
/// field-level message on malformed input.
RunConfig load_config(const std::string& path);

Model parse_model(const json& j);

}  // namespace levyft::cli
