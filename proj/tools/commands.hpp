#pragma once

#include <string>

#include "run_config.hpp"

namespace levyft::cli {

struct GlobalOptions {
    std::string out_dir;       // optional CSV output directory
    std::string convention = "theorem";
    unsigned long long seed = 0;
};

int cmd_price(const RunConfig& cfg, const GlobalOptions& opt);
int cmd_bound(const RunConfig& cfg, const GlobalOptions& opt);
int cmd_optimize(const RunConfig& cfg, const GlobalOptions& opt);
int cmd_sweep(const RunConfig& cfg, const GlobalOptions& opt);
int cmd_table(const RunConfig& cfg, const GlobalOptions& opt);

}  // namespace levyft::cli
