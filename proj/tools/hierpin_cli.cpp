// hierpin: sweeps, Monte Carlo estimates and critical-point certificates for
// the site-disordered hierarchical pinning model.
//
// Subcommands: annealed, variance, mc, certify, bracket, green, lemma22, fit.
// Most take a JSON config (--config) describing the model, grids and
// controls; fit post-processes a CSV produced by an earlier run.
//
// Exit codes: 0 success, 2 validation error, 3 budget exhausted,
// 4 soundness alarm.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hierpin/hierpin.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitBudget = 3;
constexpr int kExitAlarm = 4;

struct Common {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    int threads = 1;
    bool strict = false;
};

void add_common(CLI::App* cmd, Common& c, bool config_required = true) {
    auto* opt = cmd->add_option("--config", c.config, "JSON sweep configuration");
    if (config_required) opt->required();
    cmd->add_option("--out", c.out, "output CSV path (default <task>.csv)");
    cmd->add_option("--seed", c.seed, "override the config seed");
    cmd->add_option("--threads", c.threads, "worker threads for grid points")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--strict-certificates", c.strict,
                  "re-verify certified inequalities in extended precision");
}

int run_task(const Common& c, hierpin::Task expected,
             const std::string& checkpoint_path, const std::string& restore_path) {
    hierpin::SweepSpec spec;
    try {
        spec = hierpin::load_config(c.config);
        if (spec.task != expected)
            throw std::invalid_argument(std::string("config task is '") +
                                        hierpin::to_string(spec.task) +
                                        "' but the subcommand expects '" +
                                        hierpin::to_string(expected) + "'");
        if (c.seed) {
            spec.seed = *c.seed;
            spec.seed_set = true;
        }
        if (spec.task == hierpin::Task::mc && !spec.seed_set)
            throw std::invalid_argument("invalid sweep spec:\n  - seed: mandatory for mc tasks");
        if (c.strict) spec.cert.strict = true;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }

    try {
        if (!restore_path.empty()) {
            // continue a checkpointed pool to the configured level, then report
            hierpin::Pool pool = hierpin::restore_pool(restore_path);
            while (pool.level < spec.mc.level) pool = hierpin::pool_step(pool);
            std::printf("restored pool: level=%d size=%zu seed=%llu replica=%llu\n",
                        pool.level, pool.log_samples.size(),
                        (unsigned long long)pool.lineage.seed,
                        (unsigned long long)pool.lineage.replica);
            if (!checkpoint_path.empty()) hierpin::checkpoint_pool(pool, checkpoint_path);
            return kExitOk;
        }

        hierpin::RunRecord rec = hierpin::run_sweep(spec, c.threads);
        const std::string out = c.out.empty()
                                    ? std::string(hierpin::to_string(spec.task)) + ".csv"
                                    : c.out;
        hierpin::emit_csv(rec, out);
        std::printf("%s: %zu rows -> %s  [spec %s, %.2fs]\n", hierpin::to_string(spec.task),
                    rec.rows.size(), out.c_str(), rec.spec_hash.c_str(), rec.wall_seconds);

        if (!checkpoint_path.empty()) {
            // persist replica 0 of the first grid point for later restarts
            const std::uint64_t pt_seed =
                hierpin::CounterRng::from_seed(spec.seed, 0x73776565ULL).bits(0, 0, 0, 0);
            hierpin::ModelParams p{spec.s, spec.b,
                                   spec.beta_grid.empty() ? 0.0 : spec.beta_grid.front(),
                                   spec.h_grid.empty() ? 0.0 : spec.h_grid.front()};
            hierpin::Pool pool = hierpin::pool_at_level(p, spec.disorder, spec.mc.pool_size,
                                                        spec.mc.level,
                                                        hierpin::RngLineage{pt_seed, 0});
            hierpin::checkpoint_pool(pool, checkpoint_path);
            std::printf("checkpoint -> %s\n", checkpoint_path.c_str());
        }

        if (rec.alarm_count > 0) {
            std::cerr << "soundness alarm: " << rec.alarm_count << " violation(s)\n";
            return kExitAlarm;
        }
        if (rec.budget_exhausted) {
            std::cerr << "warning: search budget exhausted, results are partial\n";
            return kExitBudget;
        }
        return kExitOk;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

std::vector<double> csv_column(const std::string& path, const std::string& col) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("fit: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("fit: empty CSV " + path);
    std::vector<std::string> header;
    std::stringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) header.push_back(cell);
    std::size_t idx = header.size();
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == col) idx = i;
    if (idx == header.size())
        throw std::invalid_argument("fit: column '" + col + "' not found in " + path);
    std::vector<double> out;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        std::stringstream ls(line);
        std::vector<std::string> cells;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (cells.size() != header.size())
            throw std::invalid_argument("fit: " + path + ":" + std::to_string(lineno) +
                                        ": expected " + std::to_string(header.size()) +
                                        " fields, got " + std::to_string(cells.size()));
        try {
            out.push_back(std::stod(cells[idx]));
        } catch (...) {
            throw std::invalid_argument("fit: " + path + ":" + std::to_string(lineno) +
                                        ": field '" + cells[idx] + "' is not a number");
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hierarchical pinning model: recursions, Monte Carlo and certificates"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("hierpin ") + hierpin::kVersion);

    Common annealed_c, variance_c, mc_c, certify_c, bracket_c, lemma_c;
    std::string mc_checkpoint, mc_restore;
    std::string certify_kind = "deloc";

    add_common(app.add_subcommand("annealed", "annealed recursion / free energy table"),
               annealed_c);
    add_common(app.add_subcommand("variance", "exact (log r_n, v_n) traces"), variance_c);
    auto* mc_cmd = app.add_subcommand("mc", "pool-dynamics free energy estimates");
    add_common(mc_cmd, mc_c);
    mc_cmd->add_option("--checkpoint", mc_checkpoint, "write a pool checkpoint (replica 0)");
    mc_cmd->add_option("--restore", mc_restore, "restore a pool checkpoint and continue");
    auto* certify_cmd = app.add_subcommand("certify", "per-point certificates");
    add_common(certify_cmd, certify_c);
    certify_cmd->add_option("--kind", certify_kind, "deloc or loc")
        ->check(CLI::IsMember({"deloc", "loc"}));
    add_common(app.add_subcommand("bracket", "bracket h_c(beta) with both certificates"),
               bracket_c);
    add_common(app.add_subcommand("lemma22", "variance-at-n1 existence check"), lemma_c);

    auto* green_cmd = app.add_subcommand("green", "lattice geometry table");
    int green_s = 2, green_n = 8;
    double green_b = 2.0;
    std::string green_out;
    green_cmd->add_option("--s", green_s, "edges per branch")->required();
    green_cmd->add_option("--b", green_b, "branching number")->required();
    green_cmd->add_option("--n", green_n, "lattice rank")->required();
    green_cmd->add_option("--out", green_out, "output CSV path");

    auto* fit_cmd = app.add_subcommand("fit", "power-law / double-log fits of a CSV column");
    std::string fit_in, fit_x, fit_y, fit_kind = "power";
    fit_cmd->add_option("--in", fit_in, "input CSV")->required();
    fit_cmd->add_option("--x", fit_x, "x column name")->required();
    fit_cmd->add_option("--y", fit_y, "y column name")->required();
    fit_cmd->add_option("--kind", fit_kind, "power (y ~ c x^k) or doublelog (log(-log y) vs log x)")
        ->check(CLI::IsMember({"power", "doublelog"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("annealed"))
            return run_task(annealed_c, hierpin::Task::annealed, "", "");
        if (app.got_subcommand("variance"))
            return run_task(variance_c, hierpin::Task::variance, "", "");
        if (app.got_subcommand("mc"))
            return run_task(mc_c, hierpin::Task::mc, mc_checkpoint, mc_restore);
        if (app.got_subcommand("certify"))
            return run_task(certify_c,
                            certify_kind == "deloc" ? hierpin::Task::certify_deloc
                                                    : hierpin::Task::certify_loc,
                            "", "");
        if (app.got_subcommand("bracket"))
            return run_task(bracket_c, hierpin::Task::bracket, "", "");
        if (app.got_subcommand("lemma22"))
            return run_task(lemma_c, hierpin::Task::lemma22, "", "");

        if (app.got_subcommand("green")) {
            hierpin::SweepSpec spec;
            spec.task = hierpin::Task::green;
            spec.s = green_s;
            spec.b = green_b;
            spec.levels = green_n;
            spec.raw = nlohmann::json{{"task", "green"}, {"s", green_s}, {"b", green_b},
                                      {"n", green_n}};
            auto bad = hierpin::validate(hierpin::ModelParams{green_s, green_b, 0.0, 0.0});
            if (!bad.empty() || green_n < 1) {
                std::cerr << "error: invalid green parameters\n";
                return kExitValidation;
            }
            hierpin::RunRecord rec = hierpin::run_sweep(spec, 1);
            const std::string out = green_out.empty() ? "green.csv" : green_out;
            hierpin::emit_csv(rec, out);
            std::printf("green: %zu rows -> %s\n", rec.rows.size(), out.c_str());
            return kExitOk;
        }

        if (app.got_subcommand("fit")) {
            const std::vector<double> xs = csv_column(fit_in, fit_x);
            const std::vector<double> ys = csv_column(fit_in, fit_y);
            if (fit_kind == "power") {
                const hierpin::PowerLawFit f = hierpin::fit_power_law(xs, ys);
                std::printf("kind,exponent,prefactor,r_squared\n");
                std::printf("power,%s,%s,%s\n", hierpin::fmt17(f.exponent).c_str(),
                            hierpin::fmt17(f.prefactor).c_str(),
                            hierpin::fmt17(f.r_squared).c_str());
            } else {
                const hierpin::DoubleLogFit f = hierpin::fit_double_log(xs, ys);
                std::printf("kind,slope,intercept,r_squared\n");
                std::printf("doublelog,%s,%s,%s\n", hierpin::fmt17(f.slope).c_str(),
                            hierpin::fmt17(f.intercept).c_str(),
                            hierpin::fmt17(f.r_squared).c_str());
            }
            return kExitOk;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
