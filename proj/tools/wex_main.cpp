// Command-line driver: run a single experiment, sweep a scaling grid, or run
// the built-in verification suites.

#include <cstdio>
#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wex/experiment.hpp"
#include "wex/verify.hpp"
#include "wex/version.hpp"

namespace {

struct CliOptions {
    std::string engine = "thermal-quasistatic";
    std::string strategy = "adaptive";
    std::string psi = "haar";
    std::vector<long> n_list;
    std::vector<double> alpha_grid = {0.01, 0.03, 0.1, 0.3};
    wex::ExperimentConfig cfg;
};

void add_common_flags(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--engine", opt.engine,
                    "Engine: thermal-quasistatic | thermal-finite-m | jc");
    cmd->add_option("--strategy", opt.strategy, "Strategy: adaptive | twophase | oracle");
    cmd->add_option("--n", opt.cfg.n, "Rounds per trial");
    cmd->add_option("--trials", opt.cfg.trials, "Independent trials");
    cmd->add_option("--delta", opt.cfg.delta, "Failure probability budget");
    cmd->add_option("--c-const", opt.cfg.c, "Accuracy schedule constant C");
    cmd->add_option("--zeta", opt.cfg.zeta, "Bandit variance constant zeta");
    cmd->add_flag("--zeta-paper", opt.cfg.zeta_paper,
                  "Use the concentration-grade zeta instead of --zeta");
    cmd->add_option("--lambda0", opt.cfg.lambda0, "Initial design matrix scale");
    cmd->add_option("--beta", opt.cfg.beta, "Inverse temperature");
    cmd->add_option("--omega", opt.cfg.omega, "Level splitting (jc engine)");
    cmd->add_option("--m-reps", opt.cfg.m_reps, "Swap repetitions (finite-M engine)");
    cmd->add_option("--alpha", opt.cfg.alpha, "Two-phase learning fraction");
    cmd->add_option("--c-tp", opt.cfg.c_tp, "Two-phase accuracy constant");
    cmd->add_option("--seed", opt.cfg.base_seed, "Base seed");
    cmd->add_option("--psi", opt.psi, "True state: 'haar' or fixed 'x,y,z'");
    cmd->add_option("--out", opt.cfg.out_dir, "Output directory");
    cmd->add_option("--threads", opt.cfg.threads, "Worker threads (0 = auto)");
    cmd->set_config("--config", "", "Config file with key=value lines (flags override)");
}

void finalize(CliOptions& opt) {
    opt.cfg.engine = wex::engine_from_string(opt.engine);
    opt.cfg.strategy = wex::strategy_from_string(opt.strategy);
    if (opt.psi == "haar") {
        opt.cfg.psi_mode = wex::PsiMode::Haar;
    } else {
        opt.cfg.psi_mode = wex::PsiMode::Fixed;
        wex::BlochVector v;
        char c1, c2;
        std::istringstream is(opt.psi);
        if (!(is >> v.x >> c1 >> v.y >> c2 >> v.z) || c1 != ',' || c2 != ',')
            throw CLI::ValidationError("--psi must be 'haar' or 'x,y,z'");
        opt.cfg.psi_fixed = v;
    }
    opt.cfg.validate();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(wex::kVersion) +
                 " - state-agnostic work extraction simulator"};
    app.require_subcommand(1);

    CliOptions run_opt;
    CLI::App* run_cmd = app.add_subcommand("run", "Run one experiment");
    add_common_flags(run_cmd, run_opt);

    CliOptions sweep_opt;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "Run a scaling sweep over N");
    add_common_flags(sweep_cmd, sweep_opt);
    sweep_cmd->add_option("--n-list", sweep_opt.n_list, "Ascending N grid (>= 3 values)")
        ->delimiter(',');
    sweep_cmd
        ->add_option("--alpha-grid", sweep_opt.alpha_grid,
                     "Alpha grid for the two-phase baseline")
        ->delimiter(',');

    CLI::App* verify_cmd = app.add_subcommand("verify", "Run built-in verification suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (run_cmd->parsed()) {
            finalize(run_opt);
            const wex::ExperimentResult r = wex::run_experiment(run_opt.cfg);
            std::cout << "config_hash fnv1a64:" << std::hex << run_opt.cfg.hash()
                      << std::dec << "\n";
            std::cout << "median final dissipation: " << r.median_final_diss() << "\n";
            std::cout << "median final regret:      " << r.median_final_regret() << "\n";
            std::cout << "median final erasure:     " << r.median_final_landauer() << "\n";
            if (!r.csv_path.empty()) std::cout << "rounds:  " << r.csv_path << "\n";
            if (!r.summary_path.empty()) std::cout << "summary: " << r.summary_path << "\n";
            return 0;
        }
        if (sweep_cmd->parsed()) {
            finalize(sweep_opt);
            if (sweep_opt.n_list.empty())
                throw CLI::ValidationError("sweep requires --n-list");
            const wex::SweepResult r =
                wex::run_sweep(sweep_opt.cfg, sweep_opt.n_list, sweep_opt.alpha_grid);
            for (const auto& e : r.best_per_n)
                std::cout << "N=" << e.n << " median dissipation " << e.median_diss
                          << "\n";
            std::cout << "polylog fit b=" << r.fit.polylog_b
                      << " resid=" << r.fit.polylog_resid << "\n";
            std::cout << "sqrt fit    b=" << r.fit.sqrt_b << " resid=" << r.fit.sqrt_resid
                      << "\n";
            if (!r.summary_path.empty()) std::cout << "summary: " << r.summary_path << "\n";
            return 0;
        }
        if (verify_cmd->parsed()) {
            return wex::run_verify(std::cout);
        }
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
