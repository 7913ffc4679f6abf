#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"
#include "levyft/special_math.hpp"

int main(int argc, char** argv) {
    using namespace levyft;
    using namespace levyft::cli;

    CLI::App app{"levyft - Fourier pricing for exponential Levy models with certified error bounds"};
    app.require_subcommand(1);

    std::string config_path;
    GlobalOptions opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON configuration file")->required();
        sub->add_option("--out", opt.out_dir, "output directory for CSV files");
        sub->add_option("--convention", opt.convention, "theorem|explicit (default theorem)");
        sub->add_option("--seed", opt.seed, "seed echoed into output headers");
    };

    auto* price = app.add_subcommand("price", "price contracts with an attached error bound");
    auto* bound = app.add_subcommand("bound", "evaluate the error bound without pricing");
    auto* optimize = app.add_subcommand("optimize", "minimize the bound over (alpha, a, dw)");
    auto* sweep = app.add_subcommand("sweep", "error-vs-n curves (bound, true errors)");
    auto* table = app.add_subcommand("table", "reproduce the published bound tables");
    for (auto* sub : {price, bound, optimize, sweep, table}) add_common(sub);

    CLI11_PARSE(app, argc, argv);

    try {
        const RunConfig cfg = load_config(config_path);
        if (price->parsed()) return cmd_price(cfg, opt);
        if (bound->parsed()) return cmd_bound(cfg, opt);
        if (optimize->parsed()) return cmd_optimize(cfg, opt);
        if (sweep->parsed()) return cmd_sweep(cfg, opt);
        if (table->parsed()) return cmd_table(cfg, opt);
    } catch (const DomainError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
