// SPDX-License-Identifier: Apache-2.0
//
// qnt -- command-line front end of the star-network tomography toolkit.
//
// Subcommands: simulate, estimate, qcrb, sweep, mse, oracle-check.
// Exit codes: 0 success, 2 configuration error, 3 simulation error,
// 4 estimation error.  Failures print one machine-readable JSON object
// {"error": code, "message": text} to standard error.
// QNT_SEED provides the default seed; --seed flags override it.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qnt/qnt.hpp"

namespace {

int exit_code_for(qnt::Errc code) {
  switch (code) {
    case qnt::Errc::invalid_argument:
    case qnt::Errc::dimension_too_large:
      return 2;
    case qnt::Errc::singular_distribution:
    case qnt::Errc::singular_fim:
    case qnt::Errc::dimension_mismatch:
      return 3;
    case qnt::Errc::invalid_candidate:
    case qnt::Errc::degenerate_moments:
    case qnt::Errc::negative_square:
    case qnt::Errc::no_valid_candidate:
    case qnt::Errc::no_root_in_range:
    case qnt::Errc::empty_database:
    case qnt::Errc::mixed_circuits:
      return 4;
  }
  return 3;
}

void print_error(const std::string& code, const std::string& message) {
  qnt::json err;
  err["error"] = code;
  err["message"] = message;
  std::cerr << err.dump() << "\n";
}

std::uint64_t env_default_seed() {
  const char* text = std::getenv("QNT_SEED");
  if (text == nullptr || *text == '\0') return 0;
  try {
    std::size_t used = 0;
    const unsigned long long value = std::stoull(text, &used, 10);
    if (text[used] != '\0') throw std::invalid_argument(text);
    return static_cast<std::uint64_t>(value);
  } catch (const std::exception&) {
    qnt::fail(qnt::Errc::invalid_argument,
              std::string("QNT_SEED is not an unsigned integer: ") + text);
  }
}

qnt::Variant parse_circuit(const std::string& name) {
  if (name == "z") return qnt::Variant::Z;
  if (name == "ghz") return qnt::Variant::GHZ;
  qnt::fail(qnt::Errc::invalid_argument,
            "--circuit must be 'z' or 'ghz', got '" + name + "'");
}

qnt::OutcomeDistribution circuit_distribution(const qnt::StarNetwork& star,
                                              qnt::Variant variant) {
  return variant == qnt::Variant::GHZ ? qnt::ghz_distribution(star)
                                      : qnt::z_distribution(star);
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty())
    std::cout << text;
  else
    qnt::write_text_file(out_path, text);
}

// --- subcommand bodies -------------------------------------------------------

void run_simulate(const std::string& star_path, const std::string& circuit,
                  std::uint64_t shots, std::uint64_t seed,
                  const std::string& out_path) {
  const qnt::StarNetwork star = qnt::read_star_config(star_path);
  const qnt::Variant variant = parse_circuit(circuit);
  const qnt::OutcomeDistribution dist = circuit_distribution(star, variant);
  if (shots == 0) {
    // Documented sentinel: print the exact table instead of sampling.
    std::cout << qnt::distribution_table_string(dist);
    return;
  }
  const qnt::MeasurementDatabase db = qnt::sample(dist, shots, seed);
  emit(out_path, qnt::database_to_jsonl(db));
}

void run_estimate(const std::string& data_path, const std::string& model,
                  const std::string& policy_name,
                  const std::string& out_path) {
  const qnt::MeasurementDatabase db = qnt::read_database(data_path);
  const qnt::MomentStatistics moments = qnt::empirical_moments(db);
  qnt::EstimatorPolicy policy;
  if (policy_name == "strict")
    policy = qnt::EstimatorPolicy::Strict;
  else if (policy_name == "clamped")
    policy = qnt::EstimatorPolicy::Clamped;
  else
    qnt::fail(qnt::Errc::invalid_argument,
              "--policy must be 'strict' or 'clamped'");

  qnt::EstimateSet set;
  if (model == "flip") {
    set = qnt::estimate_flip_star(moments, moments.n, policy);
  } else if (model == "depol") {
    set = moments.variant == qnt::Variant::GHZ
              ? qnt::estimate_depolarizing_ghz(moments, moments.n, policy)
              : qnt::estimate_depolarizing_z(moments, moments.n, policy);
  } else {
    qnt::fail(qnt::Errc::invalid_argument,
              "--model must be 'flip' or 'depol', got '" + model + "'");
  }
  emit(out_path, qnt::estimate_to_json(set).dump(2) + "\n");
}

void run_qcrb(const std::string& star_path, const std::string& circuit) {
  const qnt::StarNetwork star = qnt::read_star_config(star_path);
  const qnt::Variant variant = parse_circuit(circuit);
  const qnt::FisherMatrix fim = qnt::classical_fim(star, variant);

  qnt::json out;
  try {
    out["qcrb"] = qnt::qcrb(fim);
    out["singular"] = false;
  } catch (const qnt::Error& e) {
    if (e.code() != qnt::Errc::singular_fim) throw;
    out["qcrb"] = nullptr;
    out["singular"] = true;
  }
  std::vector<std::vector<double>> entries(
      static_cast<std::size_t>(fim.entries.rows()));
  for (Eigen::Index r = 0; r < fim.entries.rows(); ++r)
    for (Eigen::Index c = 0; c < fim.entries.cols(); ++c)
      entries[static_cast<std::size_t>(r)].push_back(fim.entries(r, c));
  out["fim"] = entries;
  std::cout << out.dump(2) << "\n";
}

void run_experiment(const std::string& config_path, qnt::ExperimentKind kind,
                    std::uint64_t default_seed, bool seed_overridden,
                    std::uint64_t seed_override,
                    const std::string& out_override) {
  qnt::ExperimentConfig cfg =
      qnt::read_experiment_config(config_path, default_seed);
  if (seed_overridden) cfg.seed = seed_override;
  if (!out_override.empty()) cfg.output_path = out_override;
  if (cfg.kind != kind)
    qnt::fail(qnt::Errc::invalid_argument,
              "config kind does not match the subcommand");
  if (cfg.output_path.empty())
    qnt::fail(qnt::Errc::invalid_argument,
              "no output path (config key 'output' or --out)");

  const auto start = std::chrono::steady_clock::now();
  const std::vector<qnt::ResultRow> rows = kind == qnt::ExperimentKind::QcrbSweep
                                               ? qnt::run_qcrb_sweep(cfg)
                                               : qnt::run_mse_curve(cfg);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  qnt::write_text_file(cfg.output_path, qnt::csv_string(rows));
  qnt::write_text_file(cfg.output_path + ".meta.json",
                       qnt::experiment_metadata(cfg, rows.size(), wall).dump(2) +
                           "\n");
  std::cout << "wrote " << rows.size() << " rows to " << cfg.output_path
            << "\n";
}

int run_oracle_check(int n, int samples, std::uint64_t seed) {
  if (n < 3)
    qnt::fail(qnt::Errc::invalid_argument, "oracle-check needs n >= 3");
  if (n > 8)
    qnt::fail(qnt::Errc::dimension_too_large,
              "oracle-check supports n <= 8 (density-matrix bound)");
  if (samples < 1)
    qnt::fail(qnt::Errc::invalid_argument, "--samples must be >= 1");

  constexpr double dist_tol = 1e-9;
  constexpr double fim_tol = 1e-5;
  double worst_dist = 0.0;
  double worst_fim = 0.0;

  std::cout << "oracle-check n=" << n << " samples=" << samples
            << " seed=" << seed << "\n";
  for (int k = 0; k < samples; ++k) {
    qnt::Rng rng(qnt::derive_seed(seed, static_cast<std::uint64_t>(k)));
    std::vector<qnt::LinkChannel> links;
    for (int l = 0; l < n; ++l)
      links.push_back(qnt::LinkChannel::depolarizing(rng.uniform(0.02, 0.7)));
    const qnt::StarNetwork star{std::move(links)};

    double dist_dev = 0.0;
    {
      const qnt::OutcomeDistribution fast = qnt::z_distribution(star);
      const qnt::OutcomeDistribution slow = qnt::measure_distribution(
          qnt::build_state(star, qnt::Init::SingleZero), qnt::z_basis(n - 1));
      for (std::size_t i = 0; i < fast.p.size(); ++i)
        dist_dev = std::max(dist_dev, std::abs(fast.p[i] - slow.p[i]));
    }
    {
      const qnt::OutcomeDistribution fast = qnt::ghz_distribution(star);
      const qnt::OutcomeDistribution slow = qnt::measure_distribution(
          qnt::build_state(star, qnt::Init::BellPair), qnt::ghz_basis(n));
      for (std::size_t i = 0; i < fast.p.size(); ++i)
        dist_dev = std::max(dist_dev, std::abs(fast.p[i] - slow.p[i]));
    }
    worst_dist = std::max(worst_dist, dist_dev);

    double fim_dev = 0.0;
    if (n <= 7) {
      const auto check = [&](qnt::Variant variant, qnt::Init init) {
        const qnt::FisherMatrix fast = qnt::classical_fim(star, variant);
        const qnt::FisherMatrix slow = qnt::qfim_general(star, init);
        fim_dev = std::max(
            fim_dev, (fast.entries - slow.entries).cwiseAbs().maxCoeff());
      };
      check(qnt::Variant::Z, qnt::Init::SingleZero);
      check(qnt::Variant::GHZ, qnt::Init::BellPair);
    }
    worst_fim = std::max(worst_fim, fim_dev);

    std::cout << "sample " << k << ": dist_dev=" << qnt::format_double(dist_dev);
    if (n <= 7) std::cout << " fim_dev=" << qnt::format_double(fim_dev);
    std::cout << "\n";
  }

  const bool ok = worst_dist <= dist_tol && (n > 7 || worst_fim <= fim_tol);
  std::cout << (ok ? "PASS" : "FAIL")
            << " max_dist_dev=" << qnt::format_double(worst_dist);
  if (n <= 7) std::cout << " max_fim_dev=" << qnt::format_double(worst_fim);
  std::cout << " (tolerances " << qnt::format_double(dist_tol) << " / "
            << qnt::format_double(fim_tol) << ")\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum network tomography toolkit for star networks"};
  app.set_version_flag("--version", qnt::kVersion);
  app.require_subcommand(1);

  // simulate
  auto* simulate = app.add_subcommand(
      "simulate", "Sample Multicast measurement records (or print the exact "
                  "distribution with --shots 0)");
  std::string sim_star, sim_circuit, sim_out;
  std::uint64_t sim_shots = 0, sim_seed = 0;
  bool sim_seed_set = false;
  simulate->add_option("--star", sim_star, "star config JSON")->required();
  simulate->add_option("--circuit", sim_circuit, "z or ghz")->required();
  simulate->add_option("--shots", sim_shots, "number of records (0 = exact table)")
      ->required();
  simulate->add_option("--seed", sim_seed, "RNG seed")
      ->each([&](const std::string&) { sim_seed_set = true; });
  simulate->add_option("--out", sim_out, "output JSON-lines path");

  // estimate
  auto* estimate = app.add_subcommand(
      "estimate", "Estimate link parameters from a measurement database");
  std::string est_data, est_model, est_policy = "strict", est_out;
  estimate->add_option("--data", est_data, "JSON-lines database")->required();
  estimate->add_option("--model", est_model, "flip or depol")->required();
  estimate->add_option("--policy", est_policy, "strict or clamped");
  estimate->add_option("--out", est_out, "output JSON path");

  // qcrb
  auto* qcrb_cmd = app.add_subcommand(
      "qcrb", "Fisher information and Cramer-Rao bound of a star");
  std::string qcrb_star, qcrb_circuit;
  qcrb_cmd->add_option("--star", qcrb_star, "star config JSON")->required();
  qcrb_cmd->add_option("--circuit", qcrb_circuit, "z or ghz")->required();

  // sweep / mse
  auto* sweep = app.add_subcommand("sweep", "QCRB sweep experiment (CSV)");
  auto* mse = app.add_subcommand("mse", "Monte-Carlo MSE experiment (CSV)");
  std::string sweep_config, sweep_out, mse_config, mse_out;
  std::uint64_t sweep_seed = 0, mse_seed = 0;
  bool sweep_seed_set = false, mse_seed_set = false;
  sweep->add_option("--config", sweep_config, "experiment config JSON")
      ->required();
  sweep->add_option("--seed", sweep_seed, "override config seed")
      ->each([&](const std::string&) { sweep_seed_set = true; });
  sweep->add_option("--out", sweep_out, "override config output path");
  mse->add_option("--config", mse_config, "experiment config JSON")->required();
  mse->add_option("--seed", mse_seed, "override config seed")
      ->each([&](const std::string&) { mse_seed_set = true; });
  mse->add_option("--out", mse_out, "override config output path");

  // oracle-check
  auto* oracle = app.add_subcommand(
      "oracle-check",
      "Validate the symbolic tables and FIM against the density-matrix oracle");
  int oracle_n = 4, oracle_samples = 5;
  std::uint64_t oracle_seed = 0;
  bool oracle_seed_set = false;
  oracle->add_option("--n", oracle_n, "network size");
  oracle->add_option("--samples", oracle_samples, "random parameter vectors");
  oracle->add_option("--seed", oracle_seed, "RNG seed")
      ->each([&](const std::string&) { oracle_seed_set = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    print_error("invalid_argument", e.what());
    return 2;
  }

  try {
    const std::uint64_t default_seed = env_default_seed();
    if (app.got_subcommand(simulate)) {
      run_simulate(sim_star, sim_circuit, sim_shots,
                   sim_seed_set ? sim_seed : default_seed, sim_out);
    } else if (app.got_subcommand(estimate)) {
      run_estimate(est_data, est_model, est_policy, est_out);
    } else if (app.got_subcommand(qcrb_cmd)) {
      run_qcrb(qcrb_star, qcrb_circuit);
    } else if (app.got_subcommand(sweep)) {
      run_experiment(sweep_config, qnt::ExperimentKind::QcrbSweep,
                     default_seed, sweep_seed_set, sweep_seed, sweep_out);
    } else if (app.got_subcommand(mse)) {
      run_experiment(mse_config, qnt::ExperimentKind::MseCurve, default_seed,
                     mse_seed_set, mse_seed, mse_out);
    } else if (app.got_subcommand(oracle)) {
      return run_oracle_check(oracle_n, oracle_samples,
                              oracle_seed_set ? oracle_seed : default_seed);
    }
  } catch (const qnt::Error& e) {
    print_error(e.code_name(), e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    print_error("internal", e.what());
    return 3;
  }
  return 0;
}
