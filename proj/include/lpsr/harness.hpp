#ifndef LPSR_HARNESS_HPP
#define LPSR_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "lpsr/bounds.hpp"
#include "lpsr/solver.hpp"

namespace lpsr::harness {

enum class PRule { fixed, pbar_fraction };
enum class DeltaSource { exact, user, sampled };
enum class ReportFormat { tsv, jsonl };

struct ExperimentConfig {
  int m = 8;
  int n = 12;
  int k = 2;
  PRule p_rule = PRule::pbar_fraction;
  double p_fixed = 0.5;  // used when p_rule == fixed
  double alpha = 1.0;    // p = alpha * p_bar(delta) when pbar_fraction
  double epsilon = 0.0;
  solver::Ensemble ensemble = solver::Ensemble::gaussian;
  int trials = 100;
  std::uint64_t seed = 1;
  DeltaSource delta_source = DeltaSource::exact;
  double delta_user = 0.0;
  bool fresh_matrix = false;  // one matrix per trial instead of per config
  int sampled_trials = 200;   // subsets per sampled RIC estimate
  std::uint64_t ric_cap = 1'000'000;

  void validate() const;  // throws std::invalid_argument
};

enum class TrialStatus { pass, hypotheses_unmet, violation };

std::string to_string(TrialStatus s);

struct TrialRecord {
  int trial = 0;
  std::uint64_t seed_offset = 0;
  double delta_used = 0.0;
  double p_used = 0.0;
  bool feasible = false;
  bool certificate = false;  // objective dominates reference
  double error_p_pow = 0.0;  // ||x - x_hat||_p^p
  double error_2 = 0.0;      // ||x - x_hat||_2
  double bound_rhs_pnorm = std::numeric_limits<double>::quiet_NaN();
  double bound_rhs_2norm = std::numeric_limits<double>::quiet_NaN();
  double bound_rhs_pnorm_bar = std::numeric_limits<double>::quiet_NaN();
  double bound_rhs_2norm_bar = std::numeric_limits<double>::quiet_NaN();
  double min_slack = std::numeric_limits<double>::infinity();
  TrialStatus status = TrialStatus::hypotheses_unmet;
};

struct Summary {
  int trials = 0;
  int passes = 0;
  int hypotheses_unmet = 0;
  int violations = 0;
  double min_slack = std::numeric_limits<double>::infinity();
};

struct MonteCarloResult {
  std::vector<TrialRecord> records;
  Summary summary;
};

/// Deterministic per (config, seed): generate instances, estimate delta_2k,
/// pick p, solve, evaluate the theorem bounds, classify each trial.
MonteCarloResult run_montecarlo(const ExperimentConfig& cfg);

void emit_report(const std::vector<TrialRecord>& records, std::ostream& out,
                 ReportFormat fmt);
void emit_report(const std::vector<TrialRecord>& records,
                 const std::string& path, ReportFormat fmt);

struct LemmaStats {
  int trials = 0;
  int passes = 0;
  double min_slack = std::numeric_limits<double>::infinity();
};

/// Randomized sweep of the vector-inequality lemmas (cone, tail energy,
/// reverse Hoelder, shift + corollary, reverse block sum, the omega
/// power-sum inequality) on synthetic inputs meeting each precondition.
std::map<std::string, LemmaStats> run_lemma_sweep(
    int trials, std::uint64_t seed, const std::vector<double>& p_grid, int n,
    int k);

/// Parse a flat key=value config (keys mirror ExperimentConfig fields).
ExperimentConfig config_from_kv(
    const std::map<std::string, std::string>& kv);

/// CLI entry: subcommands bounds | ric | recover | gen | verify-lemmas |
/// montecarlo. Exit 0 on success, 1 on usage error, 2 on verification
/// violation.
int cli_dispatch(int argc, const char* const* argv);

}  // namespace lpsr::harness

#endif  // LPSR_HARNESS_HPP
