#include "lpsr/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "lpsr/io.hpp"
#include "lpsr/lemmas.hpp"
#include "lpsr/ric.hpp"
#include "lpsr/rng.hpp"

namespace lpsr::harness {

namespace {

constexpr double kSqrt2Over2 = 0.70710678118654752440;

using nlohmann::json;

json to_json(const bounds::BoundSet& b) {
  return json{{"p", b.p},
              {"delta", b.delta},
              {"regime", bounds::to_string(b.regime)},
              {"valid", b.valid},
              {"general_valid", b.general_valid},
              {"special_valid", b.special_valid},
              {"c_p", b.c_p},
              {"c0", b.c0},
              {"c1", b.c1},
              {"d_p", b.d_p},
              {"d0", b.d0},
              {"d1", b.d1},
              {"c_bar", b.c_bar},
              {"c0_bar", b.c0_bar},
              {"c1_bar", b.c1_bar},
              {"d_bar", b.d_bar},
              {"d0_bar", b.d0_bar},
              {"d1_bar", b.d1_bar}};
}

json to_json(const ric::RicEstimate& est) {
  return json{{"delta", est.delta},
              {"order", est.order},
              {"kind", ric::to_string(est.kind)},
              {"rip_fails", est.rip_fails},
              {"argmax_subset", est.argmax_subset}};
}

json to_json(const solver::RecoveryOutcome& out) {
  std::vector<double> x(out.x_hat.data(), out.x_hat.data() + out.x_hat.size());
  return json{{"x_hat", x},
              {"residual", out.residual},
              {"objective_p", out.objective_p},
              {"feasible", out.feasible},
              {"has_reference", out.has_reference},
              {"objective_dominates_reference",
               out.objective_dominates_reference},
              {"converged", out.converged},
              {"iterations", out.iterations},
              {"final_smoothing", out.final_smoothing}};
}

json to_json(const TrialRecord& r) {
  return json{{"trial", r.trial},
              {"seed_offset", r.seed_offset},
              {"delta_used", r.delta_used},
              {"p_used", r.p_used},
              {"feasible", r.feasible},
              {"certificate", r.certificate},
              {"error_p_pow", r.error_p_pow},
              {"error_2", r.error_2},
              {"bound_rhs_pnorm", r.bound_rhs_pnorm},
              {"bound_rhs_2norm", r.bound_rhs_2norm},
              {"bound_rhs_pnorm_bar", r.bound_rhs_pnorm_bar},
              {"bound_rhs_2norm_bar", r.bound_rhs_2norm_bar},
              {"min_slack", r.min_slack},
              {"status", to_string(r.status)}};
}

ric::RicEstimate estimate_delta(const ExperimentConfig& cfg,
                                const Eigen::MatrixXd& A,
                                std::uint64_t seed) {
  switch (cfg.delta_source) {
    case DeltaSource::exact:
      return ric::exact_ric(A, 2 * cfg.k, {cfg.ric_cap});
    case DeltaSource::sampled:
      return ric::sampled_ric_lower_bound(A, 2 * cfg.k, cfg.sampled_trials,
                                          seed);
    default:
      return ric::user_ric(cfg.delta_user, 2 * cfg.k);
  }
}

}  // namespace

std::string to_string(TrialStatus s) {
  switch (s) {
    case TrialStatus::pass: return "pass";
    case TrialStatus::hypotheses_unmet: return "hypotheses_unmet";
    default: return "violation";
  }
}

void ExperimentConfig::validate() const {
  if (!(k >= 1 && k <= m && m <= n)) {
    throw std::invalid_argument("config: need 1 <= k <= m <= n");
  }
  if (trials < 1) throw std::invalid_argument("config: trials >= 1");
  if (epsilon < 0.0) throw std::invalid_argument("config: epsilon >= 0");
  if (p_rule == PRule::fixed && !(p_fixed > 0.0 && p_fixed < 1.0)) {
    throw std::invalid_argument("config: fixed p must be in (0,1)");
  }
  if (p_rule == PRule::pbar_fraction && !(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("config: alpha must be in (0,1]");
  }
  if (delta_source == DeltaSource::user &&
      !(delta_user >= 0.0 && delta_user < 1.0)) {
    throw std::invalid_argument("config: user delta must be in [0,1)");
  }
  if (sampled_trials < 1) throw std::invalid_argument("config: sampled_trials");
}

MonteCarloResult run_montecarlo(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.delta_source == DeltaSource::exact) {
    std::uint64_t count = ric::subset_count(cfg.n, 2 * cfg.k);
    if (count > cfg.ric_cap) {
      throw std::runtime_error("config: exact delta needs " +
                               std::to_string(count) +
                               " subsets, above cap " +
                               std::to_string(cfg.ric_cap));
    }
  }

  MonteCarloResult res;
  res.records.reserve(cfg.trials);

  // One matrix (and one delta) per config unless fresh_matrix is set.
  Eigen::MatrixXd shared_A;
  ric::RicEstimate shared_delta;
  if (!cfg.fresh_matrix) {
    shared_A = solver::make_matrix(cfg.m, cfg.n, cfg.ensemble,
                                   derive_seed(cfg.seed, 0));
    shared_delta = estimate_delta(cfg, shared_A, derive_seed(cfg.seed, 1));
  }

  for (int i = 0; i < cfg.trials; ++i) {
    std::uint64_t tseed = derive_seed(cfg.seed, 1000 + i);
    TrialRecord rec;
    rec.trial = i;
    rec.seed_offset = tseed;

    solver::SensingProblem prob;
    ric::RicEstimate delta;
    if (cfg.fresh_matrix) {
      prob.A = solver::make_matrix(cfg.m, cfg.n, cfg.ensemble,
                                   derive_seed(tseed, 0));
      delta = estimate_delta(cfg, prob.A, derive_seed(tseed, 3));
    } else {
      prob.A = shared_A;
      delta = shared_delta;
    }
    prob.epsilon = cfg.epsilon;
    prob.k = cfg.k;
    prob.x_ref = solver::make_sparse_signal(cfg.n, cfg.k, derive_seed(tseed, 1));
    prob.y = prob.A * (*prob.x_ref) +
             solver::make_noise(cfg.m, cfg.epsilon, derive_seed(tseed, 2));

    rec.delta_used = delta.delta;

    double p;
    if (cfg.p_rule == PRule::fixed) {
      p = cfg.p_fixed;
    } else if (delta.delta >= kSqrt2Over2 && delta.delta < 1.0) {
      p = cfg.alpha * bounds::p_bar(delta.delta);
    } else {
      // p-bar has no value here; the theorem hypotheses cannot be set up.
      rec.status = TrialStatus::hypotheses_unmet;
      res.records.push_back(rec);
      continue;
    }
    rec.p_used = p;

    auto outcome = solver::irls_recover(prob, p);
    rec.feasible = outcome.feasible;
    rec.certificate = outcome.objective_dominates_reference;
    Eigen::VectorXd h = *prob.x_ref - outcome.x_hat;
    rec.error_p_pow = solver::lp_norm_pth_power(h, p);
    rec.error_2 = h.norm();

    if (delta.rip_fails ||
        delta.kind == ric::RicKind::sampled_lower_bound) {
      // A lower bound cannot certify the RIP hypothesis.
      rec.status = TrialStatus::hypotheses_unmet;
      res.records.push_back(rec);
      continue;
    }

    auto bset = bounds::bound_set(p, delta.delta, bounds::Regime::general);
    auto reports = lemmas::check_theorem_bounds(prob, *prob.x_ref,
                                                outcome.x_hat, bset, p);
    int considered = 0;
    bool all_ok = true;
    for (const auto& r : reports) {
      if (r.name == "theorem_pnorm") rec.bound_rhs_pnorm = r.rhs;
      if (r.name == "theorem_2norm") rec.bound_rhs_2norm = r.rhs;
      if (r.name == "theorem_pnorm_bar") rec.bound_rhs_pnorm_bar = r.rhs;
      if (r.name == "theorem_2norm_bar") rec.bound_rhs_2norm_bar = r.rhs;
      if (!r.hypotheses_met) continue;
      ++considered;
      all_ok = all_ok && r.satisfied;
      rec.min_slack = std::min(rec.min_slack, r.slack);
    }
    rec.status = considered == 0 ? TrialStatus::hypotheses_unmet
                 : all_ok        ? TrialStatus::pass
                                 : TrialStatus::violation;
    res.records.push_back(rec);
  }

  res.summary.trials = cfg.trials;
  for (const auto& r : res.records) {
    switch (r.status) {
      case TrialStatus::pass: ++res.summary.passes; break;
      case TrialStatus::hypotheses_unmet: ++res.summary.hypotheses_unmet; break;
      default: ++res.summary.violations;
    }
    res.summary.min_slack = std::min(res.summary.min_slack, r.min_slack);
  }
  return res;
}

void emit_report(const std::vector<TrialRecord>& records, std::ostream& out,
                 ReportFormat fmt) {
  if (records.empty()) {
    throw std::invalid_argument("emit_report: no records");
  }
  if (fmt == ReportFormat::jsonl) {
    for (const auto& r : records) out << to_json(r).dump() << '\n';
    return;
  }
  out << "trial\tseed_offset\tdelta_used\tp_used\tfeasible\tcertificate\t"
         "error_p_pow\terror_2\tbound_rhs_pnorm\tbound_rhs_2norm\t"
         "bound_rhs_pnorm_bar\tbound_rhs_2norm_bar\tmin_slack\tstatus\n";
  auto d = [](double v) { return io::format_double(v); };
  for (const auto& r : records) {
    out << r.trial << '\t' << r.seed_offset << '\t' << d(r.delta_used) << '\t'
        << d(r.p_used) << '\t' << r.feasible << '\t' << r.certificate << '\t'
        << d(r.error_p_pow) << '\t' << d(r.error_2) << '\t'
        << d(r.bound_rhs_pnorm) << '\t' << d(r.bound_rhs_2norm) << '\t'
        << d(r.bound_rhs_pnorm_bar) << '\t' << d(r.bound_rhs_2norm_bar) << '\t'
        << d(r.min_slack) << '\t' << to_string(r.status) << '\n';
  }
}

void emit_report(const std::vector<TrialRecord>& records,
                 const std::string& path, ReportFormat fmt) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  emit_report(records, out, fmt);
}

std::map<std::string, LemmaStats> run_lemma_sweep(
    int trials, std::uint64_t seed, const std::vector<double>& p_grid, int n,
    int k) {
  if (trials < 1 || p_grid.empty() || k < 1 || n < 3 * k) {
    throw std::invalid_argument("run_lemma_sweep: bad arguments");
  }
  std::map<std::string, LemmaStats> stats;
  auto tally = [&](const lemmas::CheckReport& r) {
    auto& s = stats[r.name];
    ++s.trials;
    if (r.satisfied) ++s.passes;
    s.min_slack = std::min(s.min_slack, r.slack);
  };

  for (int i = 0; i < trials; ++i) {
    double p = p_grid[i % p_grid.size()];
    Rng rng(derive_seed(seed, i));

    // Random error-style vector, heavier tails every other trial.
    Eigen::VectorXd x(n), d(n);
    for (int j = 0; j < n; ++j) {
      x(j) = rng.normal();
      d(j) = rng.normal();
      if (i % 2 == 0 && rng.uniform() < 0.5) x(j) = 0.0;  // sparsify
    }

    // Certified pair: shrink the perturbation until the objective does not
    // increase.  Perturbing a zero entry always raises the objective, so when
    // shrinking cannot certify (sparsified x), fall back to an entrywise
    // contraction |x_hat_i| <= |x_i|, certified by construction.
    double s = 1.0;
    double x_obj = solver::lp_norm_pth_power(x, p);
    Eigen::VectorXd x_hat = x - d;
    while (solver::lp_norm_pth_power(x_hat, p) > x_obj && s > 1e-12) {
      s *= 0.5;
      x_hat = x - s * d;
    }
    if (solver::lp_norm_pth_power(x_hat, p) > x_obj) {
      for (int j = 0; j < n; ++j) {
        x_hat(j) = x(j) * (1.0 - 2.0 * rng.uniform());  // factor in [-1,1]
      }
    }
    tally(lemmas::check_cone(x, x_hat, k, p));

    auto pe = lemmas::partition_error(x, d, k, p);  // h = x - d, arbitrary
    tally(lemmas::check_tail_energy(pe, p));
    tally(lemmas::check_reverse_block_sum(pe, p));

    Eigen::VectorXd u(k);
    for (int j = 0; j < k; ++j) u(j) = rng.normal();
    tally(lemmas::check_reverse_holder(u, p));

    Eigen::VectorXd sorted(3 * k);
    for (int j = 0; j < 3 * k; ++j) sorted(j) = std::abs(rng.normal());
    std::sort(sorted.data(), sorted.data() + 3 * k, std::greater<double>());
    tally(lemmas::check_shift(sorted, k, 2 * k, p));
    tally(lemmas::check_shift_corollary(sorted, k, p));

    // omega: sum w_j <= (sum w_j^p)^{1/p} for nonnegative w.
    Eigen::VectorXd w(n);
    for (int j = 0; j < n; ++j) w(j) = std::abs(rng.normal());
    tally(lemmas::make_report("omega", w.sum(), solver::lp_norm(w, p)));
  }
  return stats;
}

ExperimentConfig config_from_kv(
    const std::map<std::string, std::string>& kv) {
  ExperimentConfig cfg;
  for (const auto& [key, value] : kv) {
    if (key == "m") cfg.m = std::stoi(value);
    else if (key == "n") cfg.n = std::stoi(value);
    else if (key == "k") cfg.k = std::stoi(value);
    else if (key == "p") { cfg.p_rule = PRule::fixed; cfg.p_fixed = std::stod(value); }
    else if (key == "alpha") { cfg.p_rule = PRule::pbar_fraction; cfg.alpha = std::stod(value); }
    else if (key == "epsilon") cfg.epsilon = std::stod(value);
    else if (key == "ensemble") cfg.ensemble = solver::ensemble_from_string(value);
    else if (key == "trials") cfg.trials = std::stoi(value);
    else if (key == "seed") cfg.seed = std::stoull(value);
    else if (key == "delta_source") {
      if (value == "exact") cfg.delta_source = DeltaSource::exact;
      else if (value == "user") cfg.delta_source = DeltaSource::user;
      else if (value == "sampled") cfg.delta_source = DeltaSource::sampled;
      else throw std::invalid_argument("config: delta_source " + value);
    }
    else if (key == "delta") { cfg.delta_source = DeltaSource::user; cfg.delta_user = std::stod(value); }
    else if (key == "fresh_matrix") cfg.fresh_matrix = (value == "1" || value == "true");
    else if (key == "sampled_trials") cfg.sampled_trials = std::stoi(value);
    else if (key == "ric_cap") cfg.ric_cap = std::stoull(value);
    else throw std::invalid_argument("config: unknown key " + key);
  }
  return cfg;
}

namespace {

int cmd_bounds(double p, double delta, const std::string& regime,
               bool as_json) {
  auto b = bounds::bound_set(p, delta, bounds::regime_from_string(regime));
  if (as_json) {
    std::cout << to_json(b).dump(2) << '\n';
    return 0;
  }
  auto row = [](const char* name, double v) {
    std::cout << name << "\t" << io::format_double(v) << '\n';
  };
  std::cout << "regime\t" << bounds::to_string(b.regime) << '\n';
  std::cout << "valid\t" << (b.valid ? "true" : "false") << '\n';
  row("p", b.p);
  row("delta", b.delta);
  row("c_p", b.c_p);
  row("c0", b.c0);
  row("c1", b.c1);
  row("d_p", b.d_p);
  row("d0", b.d0);
  row("d1", b.d1);
  row("c_bar", b.c_bar);
  row("c0_bar", b.c0_bar);
  row("c1_bar", b.c1_bar);
  row("d_bar", b.d_bar);
  row("d0_bar", b.d0_bar);
  row("d1_bar", b.d1_bar);
  if (!b.valid) std::cout << "note\tcondition violated: C(p) >= 1\n";
  return 0;
}

std::vector<double> parse_grid(const std::string& csv) {
  std::vector<double> grid;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) grid.push_back(std::stod(tok));
  }
  return grid;
}

}  // namespace

int cli_dispatch(int argc, const char* const* argv) {
  CLI::App app{"lp-minimization sparse recovery toolkit"};
  app.require_subcommand(1);

  // bounds
  auto* sb = app.add_subcommand("bounds", "print the recovery constants");
  double b_p = 0.5, b_delta = 0.5;
  std::string b_regime = "general";
  bool b_json = false;
  sb->add_option("--p", b_p, "exponent p in (0,1)")->required();
  sb->add_option("--delta", b_delta, "RIC delta_2k in [0,1)")->required();
  sb->add_option("--regime", b_regime, "general | special");
  sb->add_flag("--json", b_json, "JSON output");

  // ric
  auto* sr = app.add_subcommand("ric", "restricted isometry constant");
  std::string r_matrix, r_mode = "exact";
  int r_k = 1, r_trials = 200;
  std::uint64_t r_seed = 1, r_cap = 1'000'000;
  sr->add_option("--matrix", r_matrix, "matrix file")->required();
  sr->add_option("--k", r_k, "order k")->required();
  sr->add_option("--mode", r_mode, "exact | sampled");
  sr->add_option("--trials", r_trials, "sampled subsets");
  sr->add_option("--seed", r_seed, "sampling seed");
  sr->add_option("--cap", r_cap, "exact enumeration cap");

  // gen
  auto* sg = app.add_subcommand("gen", "generate a random instance");
  int g_m = 8, g_n = 12, g_k = 2;
  double g_eps = 0.0;
  std::uint64_t g_seed = 1;
  std::string g_ensemble = "gaussian";
  std::string g_matrix = "A.txt", g_y = "y.txt", g_x = "x.txt";
  sg->add_option("--m", g_m)->required();
  sg->add_option("--n", g_n)->required();
  sg->add_option("--k", g_k)->required();
  sg->add_option("--epsilon", g_eps, "noise budget");
  sg->add_option("--seed", g_seed);
  sg->add_option("--ensemble", g_ensemble, "gaussian | bernoulli | partial_orthogonal");
  sg->add_option("--matrix-out", g_matrix, "matrix output file");
  sg->add_option("--y-out", g_y, "observation output file");
  sg->add_option("--x-out", g_x, "reference signal output file");

  // recover
  auto* sv = app.add_subcommand("recover", "solve the lp problem");
  std::string v_matrix, v_y, v_xref, v_out;
  double v_p = 0.5, v_eps = 0.0;
  sv->add_option("--matrix", v_matrix)->required();
  sv->add_option("--y", v_y)->required();
  sv->add_option("--p", v_p)->required();
  sv->add_option("--epsilon", v_eps);
  sv->add_option("--x-ref", v_xref, "reference signal for certificates");
  sv->add_option("--out", v_out, "write outcome JSON here (default stdout)");

  // verify-lemmas
  auto* sl = app.add_subcommand("verify-lemmas",
                                "randomized lemma verification");
  int l_trials = 10000, l_n = 24, l_k = 3;
  std::uint64_t l_seed = 1;
  std::string l_grid = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9";
  sl->add_option("--trials", l_trials);
  sl->add_option("--seed", l_seed);
  sl->add_option("--p-grid", l_grid, "comma-separated p values");
  sl->add_option("--n", l_n, "vector length");
  sl->add_option("--k", l_k, "block size");

  // montecarlo
  auto* sm = app.add_subcommand("montecarlo", "theorem-bound experiment");
  std::string m_config, m_out, m_format = "tsv";
  ExperimentConfig mc;
  double m_p = -1.0, m_alpha = -1.0, m_delta = -1.0;
  std::string m_ensemble, m_delta_source;
  sm->add_option("--config", m_config, "key=value config file");
  sm->add_option("--m", mc.m);
  sm->add_option("--n", mc.n);
  sm->add_option("--k", mc.k);
  sm->add_option("--p", m_p, "fixed p");
  sm->add_option("--alpha", m_alpha, "p = alpha * p_bar(delta)");
  sm->add_option("--epsilon", mc.epsilon);
  sm->add_option("--ensemble", m_ensemble, "gaussian | bernoulli | partial_orthogonal");
  sm->add_option("--trials", mc.trials);
  sm->add_option("--seed", mc.seed);
  sm->add_option("--delta-source", m_delta_source, "exact | user | sampled");
  sm->add_option("--delta", m_delta, "user-supplied delta_2k");
  bool m_fresh = false;
  sm->add_flag("--fresh-matrix", m_fresh, "new matrix per trial");
  sm->add_option("--out", m_out, "report file (default stdout)");
  sm->add_option("--format", m_format, "tsv | jsonl");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (sb->parsed()) return cmd_bounds(b_p, b_delta, b_regime, b_json);

    if (sr->parsed()) {
      auto A = io::read_matrix(r_matrix);
      ric::RicEstimate est;
      if (r_mode == "exact") {
        est = ric::exact_ric(A, r_k, {r_cap});
      } else if (r_mode == "sampled") {
        est = ric::sampled_ric_lower_bound(A, r_k, r_trials, r_seed);
      } else {
        std::cerr << "unknown mode: " << r_mode << '\n';
        return 1;
      }
      std::cout << to_json(est).dump(2) << '\n';
      return 0;
    }

    if (sg->parsed()) {
      auto prob = solver::make_instance(g_m, g_n, g_k, g_eps, g_seed,
                                        solver::ensemble_from_string(g_ensemble));
      io::write_matrix(g_matrix, prob.A);
      io::write_vector(g_y, prob.y);
      io::write_vector(g_x, *prob.x_ref);
      std::cout << "wrote " << g_matrix << ", " << g_y << ", " << g_x << '\n';
      return 0;
    }

    if (sv->parsed()) {
      solver::SensingProblem prob;
      prob.A = io::read_matrix(v_matrix);
      prob.y = io::read_vector(v_y);
      prob.epsilon = v_eps;
      if (!v_xref.empty()) prob.x_ref = io::read_vector(v_xref);
      auto outcome = solver::irls_recover(prob, v_p);
      json j = to_json(outcome);
      if (v_out.empty()) {
        std::cout << j.dump(2) << '\n';
      } else {
        std::ofstream out(v_out);
        if (!out) throw std::runtime_error("cannot write " + v_out);
        out << j.dump(2) << '\n';
      }
      return 0;
    }

    if (sl->parsed()) {
      auto stats = run_lemma_sweep(l_trials, l_seed, parse_grid(l_grid), l_n,
                                   l_k);
      json j;
      bool violation = false;
      for (const auto& [name, s] : stats) {
        j[name] = {{"trials", s.trials},
                   {"passes", s.passes},
                   {"min_slack", s.min_slack}};
        violation = violation || s.passes != s.trials;
      }
      std::cout << j.dump(2) << '\n';
      return violation ? 2 : 0;
    }

    if (sm->parsed()) {
      if (!m_config.empty()) mc = config_from_kv(io::read_key_values(m_config));
      // CLI flags override the config file.
      for (const auto* opt : sm->get_options()) {
        if (opt->count() == 0) continue;
        const auto& name = opt->get_name();
        if (name == "--m") mc.m = std::stoi(opt->results()[0]);
        else if (name == "--n") mc.n = std::stoi(opt->results()[0]);
        else if (name == "--k") mc.k = std::stoi(opt->results()[0]);
        else if (name == "--epsilon") mc.epsilon = std::stod(opt->results()[0]);
        else if (name == "--trials") mc.trials = std::stoi(opt->results()[0]);
        else if (name == "--seed") mc.seed = std::stoull(opt->results()[0]);
      }
      if (m_p > 0.0) { mc.p_rule = PRule::fixed; mc.p_fixed = m_p; }
      if (m_alpha > 0.0) { mc.p_rule = PRule::pbar_fraction; mc.alpha = m_alpha; }
      if (!m_ensemble.empty()) mc.ensemble = solver::ensemble_from_string(m_ensemble);
      if (!m_delta_source.empty()) {
        if (m_delta_source == "exact") mc.delta_source = DeltaSource::exact;
        else if (m_delta_source == "user") mc.delta_source = DeltaSource::user;
        else if (m_delta_source == "sampled") mc.delta_source = DeltaSource::sampled;
        else throw std::invalid_argument("delta-source: " + m_delta_source);
      }
      if (m_delta >= 0.0) { mc.delta_source = DeltaSource::user; mc.delta_user = m_delta; }
      if (m_fresh) mc.fresh_matrix = true;

      auto res = run_montecarlo(mc);
      ReportFormat fmt = m_format == "jsonl" ? ReportFormat::jsonl
                                             : ReportFormat::tsv;
      if (m_out.empty()) {
        emit_report(res.records, std::cout, fmt);
      } else {
        emit_report(res.records, m_out, fmt);
      }
      std::cerr << "trials=" << res.summary.trials
                << " pass=" << res.summary.passes
                << " hypotheses_unmet=" << res.summary.hypotheses_unmet
                << " violation=" << res.summary.violations << '\n';
      return res.summary.violations > 0 ? 2 : 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace lpsr::harness
