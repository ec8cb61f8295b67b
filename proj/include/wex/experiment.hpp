#ifndef WEX_EXPERIMENT_HPP
#define WEX_EXPERIMENT_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wex/accounting.hpp"
#include "wex/bloch.hpp"
#include "wex/strategies.hpp"

namespace wex {

enum class EngineKind { ThermalQuasistatic, ThermalFiniteM, Jc };
enum class StrategyKind { Adaptive, TwoPhase, Oracle, ScriptedHalf };
enum class PsiMode { Fixed, Haar };

std::string to_string(EngineKind e);
std::string to_string(StrategyKind s);
EngineKind engine_from_string(const std::string& s);
StrategyKind strategy_from_string(const std::string& s);

/// Paper-grade concentration constant for the bandit variance weights;
/// selected by the zeta_paper switch. Desk-scale runs default to zeta = 1.
double zeta_paper_constant();

/// Full parameterization of one experiment. The canonical serialization
/// (sorted key=value lines) feeds the config hash recorded in every output.
struct ExperimentConfig {
    EngineKind engine = EngineKind::ThermalQuasistatic;
    StrategyKind strategy = StrategyKind::Adaptive;
    long n = 4096;
    double delta = 0.05;
    double c = 1.0;
    double zeta = 1.0;
    bool zeta_paper = false;
    double lambda0 = 1.0;
    double beta = 1.0;
    double omega = 1.0;
    long m_reps = 1000;
    double alpha = 0.1;
    double c_tp = 24.0;
    long trials = 20;
    std::uint64_t base_seed = 1;
    PsiMode psi_mode = PsiMode::Haar;
    BlochVector psi_fixed{0.0, 0.0, 1.0};
    std::string out_dir = "out";
    int threads = 0; // 0 = hardware concurrency
    bool write_csv = true;

    void validate() const;
    double effective_zeta() const { return zeta_paper ? zeta_paper_constant() : zeta; }
    std::string canonical_string() const;
    std::uint64_t hash() const; // FNV-1a 64 over the canonical string
};

/// One CSV row worth of per-round data not already held by the Ledger.
struct ProbeRecord {
    long stage;
    int group;
    int slot;
    BlochVector a;
    int reward;
    double delta_w;
};

struct TrialResult {
    std::uint64_t seed = 0;
    BlochVector psi;
    Ledger ledger;
    std::vector<ProbeRecord> probes;
    double battery_mu = 0.0;
};

struct QuantileTriple {
    double q25, q50, q75;
};

struct CheckpointSummary {
    long k;
    QuantileTriple diss_cum;
    QuantileTriple regret_cum;
    QuantileTriple landauer_cum;
};

struct ExperimentResult {
    std::vector<TrialResult> trials;
    std::vector<CheckpointSummary> checkpoints;
    std::string summary_json;
    std::string csv_path;    // empty when CSV writing is disabled
    std::string summary_path;

    double median_final_diss() const;
    double median_final_regret() const;
    double median_final_landauer() const;
};

/// Run all trials of one experiment; writes <out>/rounds.csv and
/// <out>/summary.json unless disabled. Deterministic for a fixed config.
ExperimentResult run_experiment(const ExperimentConfig& config);

struct SweepEntry {
    long n;
    double alpha; // NaN for strategies without an alpha
    double median_diss;
    double median_regret;
    double median_landauer;
};

struct SweepResult {
    std::vector<SweepEntry> entries;     // all runs
    std::vector<SweepEntry> best_per_n;  // per N: lowest median dissipation
    FitReport fit;
    std::string summary_json;
    std::string summary_path;
};

/// Run the configured strategy across an ascending N grid (and an alpha grid
/// for the two-phase baseline), aggregate medians and fit both scaling laws.
SweepResult run_sweep(const ExperimentConfig& base, const std::vector<long>& n_list,
                      const std::vector<double>& alpha_grid);

/// Linear interpolation quantile of an unsorted sample.
double quantile(std::vector<double> values, double q);

/// Checkpoint grid: powers of two up to n, plus n itself.
std::vector<long> checkpoint_rounds(long n);

std::uint64_t fnv1a64(const std::string& bytes);

} // namespace wex

#endif // WEX_EXPERIMENT_HPP
