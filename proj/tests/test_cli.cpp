// Drives the installed CLI binary end to end: exit codes, CSV
// re-parseability, and the smoke-config price against the closed form.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "levyft/reference_oracles.hpp"

namespace {

std::string g_binary, g_configs;

int run(const std::string& args, const std::string& out_file) {
    const std::string cmd = g_binary + " " + args + " > " + out_file + " 2> " + out_file + ".err";
    return std::system(cmd.c_str()) / 256;
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

Table read_csv(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    Table t;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (t.columns.empty())
            t.columns = cells;
        else
            t.rows.push_back(cells);
    }
    return t;
}

double cell_num(const Table& t, std::size_t row, const std::string& col) {
    for (std::size_t c = 0; c < t.columns.size(); ++c)
        if (t.columns[c] == col) {
            const double v = std::stod(t.rows[row][c]);
            REQUIRE(std::isfinite(v));
            return v;
        }
    FAIL("column not found: ", col);
    return 0.0;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: test_cli <levyft-binary> <configs-dir>\n");
        return 2;
    }
    g_binary = argv[1];
    g_configs = argv[2];
    doctest::Context ctx;
    return ctx.run();
}

TEST_CASE("price: BS smoke config matches the closed form") {
    REQUIRE(run("price --config " + g_configs + "/bs_smoke.json", "/tmp/levyft_price.csv") == 0);
    const auto t = read_csv("/tmp/levyft_price.csv");
    REQUIRE(t.rows.size() == 1);
    const double price = cell_num(t, 0, "price");
    using namespace levyft;
    const Model bs = Model::black_scholes(0.05, 0.2);
    const auto ref = bs_closed_form(bs, DampedPayoff::call(100.0, 0.0, 2.0), 0.5, 0.0);
    CHECK(std::abs(price - ref.value) < 1e-8);
    CHECK(cell_num(t, 0, "bound_total") < 1e-8);
}

TEST_CASE("price: malformed config exits 2 naming the condition") {
    const int rc = run("price --config " + g_configs + "/bad_alpha.json", "/tmp/levyft_bad.csv");
    CHECK(rc == 2);
    std::ifstream err("/tmp/levyft_bad.csv.err");
    std::string text((std::istreambuf_iterator<char>(err)), std::istreambuf_iterator<char>());
    CHECK(text.find("alpha > 1") != std::string::npos);
}

TEST_CASE("bound: emits timing and the convention factor two") {
    REQUIRE(run("bound --config " + g_configs + "/vg_atm.json", "/tmp/levyft_bound.csv") == 0);
    const auto t = read_csv("/tmp/levyft_bound.csv");
    REQUIRE(t.rows.size() == 1);
    const double thm = cell_num(t, 0, "total_theorem");
    const double exp = cell_num(t, 0, "total_explicit");
    const double q = cell_num(t, 0, "quadrature_part");
    const double f = cell_num(t, 0, "truncation_part");
    CHECK(thm == doctest::Approx(q + f).epsilon(1e-12));
    // explicit doubles only the quadrature term
    CHECK(exp == doctest::Approx(2.0 * q + f).epsilon(1e-9));
    CHECK(cell_num(t, 0, "wall_seconds") < 0.5);
}

TEST_CASE("optimize: deterministic across runs") {
    REQUIRE(run("optimize --config " + g_configs + "/merton_binary.json",
                "/tmp/levyft_opt1.csv") == 0);
    REQUIRE(run("optimize --config " + g_configs + "/merton_binary.json",
                "/tmp/levyft_opt2.csv") == 0);
    const auto t1 = read_csv("/tmp/levyft_opt1.csv");
    const auto t2 = read_csv("/tmp/levyft_opt2.csv");
    REQUIRE(t1.rows.size() == t2.rows.size());
    CHECK(t1.rows == t2.rows);
}

TEST_CASE("sweep: ordering holds and every number is finite") {
    REQUIRE(run("sweep --config " + g_configs + "/sweep_merton.json", "/tmp/levyft_sweep.csv") ==
            0);
    const auto t = read_csv("/tmp/levyft_sweep.csv");
    REQUIRE(t.rows.size() >= 3);
    double prev_n = 0.0;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const double n = cell_num(t, i, "n");
        CHECK(n > prev_n);  // strictly increasing in n
        prev_n = n;
        const double e = cell_num(t, i, "e_bound");
        const double e1 = cell_num(t, i, "e1_true_at_bound_plan");
        const double e2 = cell_num(t, i, "e2_true_grid_min");
        CHECK(e >= e1 * (1.0 - 1e-9));
        CHECK(e1 >= e2 * (1.0 - 1e-9));
    }
}

TEST_CASE("unreachable tolerance exits 3 with a numerical-failure message") {
    const int rc = run("price --config " + g_configs + "/vg_rough_unreachable.json",
                       "/tmp/levyft_exit3.csv");
    CHECK(rc == 3);
    std::ifstream err("/tmp/levyft_exit3.csv.err");
    std::string text((std::istreambuf_iterator<char>(err)), std::istreambuf_iterator<char>());
    CHECK(text.find("numerical failure") != std::string::npos);
}

TEST_CASE("table: Kou reproduction emits the Lee and closed-tail columns") {
    REQUIRE(run("table --config " + g_configs + "/table2_kou.json", "/tmp/levyft_table.csv") == 0);
    const auto t = read_csv("/tmp/levyft_table.csv");
    REQUIRE(t.rows.size() == 5);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        CHECK(cell_num(t, i, "e_bound") < cell_num(t, i, "e_lee"));  // beats the Lee scheme
        CHECK(cell_num(t, i, "dominates") == 1.0);
    }
    // published row reproduced within a factor of two
    CHECK(cell_num(t, 2, "e_bound") / 4.43e-4 < 2.0);
    CHECK(cell_num(t, 2, "e_bound") / 4.43e-4 > 0.5);
}
