// SPDX-License-Identifier: Apache-2.0
//
// Config-driven experiment runs: QCRB sweeps over the uniform link
// parameter and network size, and Monte-Carlo MSE-vs-sample-count curves.
// Runs are deterministic given the config seed; every trial derives its own
// RNG stream from (seed, n, variant, sample count, trial index), so results
// do not depend on execution order or worker count.
#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "qnt/database.hpp"
#include "qnt/distribution.hpp"
#include "qnt/error.hpp"
#include "qnt/estimators.hpp"
#include "qnt/fisher.hpp"
#include "qnt/format.hpp"
#include "qnt/moments.hpp"
#include "qnt/network.hpp"
#include "qnt/rng.hpp"

namespace qnt {

enum class ExperimentKind { QcrbSweep, MseCurve };

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::QcrbSweep;
  std::vector<int> sizes{4, 5, 6, 7};
  std::vector<Variant> variants{Variant::Z, Variant::GHZ};
  std::vector<double> theta_grid;             // QcrbSweep x-axis
  double theta_star = 0.1;                    // MseCurve noise level
  std::vector<std::uint64_t> sample_points;   // MseCurve x-axis
  std::uint64_t trials = 200;
  std::uint64_t seed = 0;
  std::string output_path;
  bool include_singular = false;  // admit the singular theta = 0.75 point
  int threads = 1;                // upper bound on workers; results invariant

  void validate() const {
    if (sizes.empty()) fail(Errc::invalid_argument, "config: sizes empty");
    for (int n : sizes)
      if (n < 3 || n > 8)
        fail(Errc::invalid_argument, "config: sizes must lie in 3..8");
    if (variants.empty())
      fail(Errc::invalid_argument, "config: variants empty");
    if (trials < 1) fail(Errc::invalid_argument, "config: trials must be >= 1");
    if (threads < 1) fail(Errc::invalid_argument, "config: threads must be >= 1");
    if (kind == ExperimentKind::QcrbSweep) {
      if (theta_grid.empty())
        fail(Errc::invalid_argument, "config: theta_grid empty");
      for (double t : theta_grid) {
        if (!(t > 0.0 && t <= 0.75))
          fail(Errc::invalid_argument,
               "config: sweep theta values must lie in (0, 0.75]");
        if (t > 0.74 && !include_singular)
          fail(Errc::invalid_argument,
               "config: theta > 0.74 hits the singular point; set "
               "include_singular to emit singular markers");
      }
    } else {
      if (!(theta_star >= 0.0 && theta_star <= 0.75))
        fail(Errc::invalid_argument,
             "config: theta_star must lie in [0, 0.75]");
      if (sample_points.empty())
        fail(Errc::invalid_argument, "config: sample_points empty");
      for (std::size_t i = 0; i < sample_points.size(); ++i) {
        if (sample_points[i] < 1)
          fail(Errc::invalid_argument, "config: sample points must be >= 1");
        if (i > 0 && sample_points[i] <= sample_points[i - 1])
          fail(Errc::invalid_argument,
               "config: sample_points must be strictly ascending");
      }
    }
  }
};

inline std::vector<double> default_theta_grid() {
  std::vector<double> grid;
  for (int k = 1; k <= 14; ++k) grid.push_back(0.05 * k);
  return grid;
}

inline std::vector<std::uint64_t> default_sample_points() {
  return {100, 200, 500, 1000, 2000, 5000, 10000};
}

struct ResultRow {
  std::string kind;  // "qcrb" or "mse"
  int n = 0;
  Variant variant = Variant::Z;
  double theta_star = 0.0;
  double x = 0.0;       // theta (qcrb) or sample count (mse)
  double value = 0.0;   // qcrb or mse; meaningless when singular
  bool singular = false;
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  std::uint64_t seed = 0;
};

// Stream tag for one Monte-Carlo trial; mixing the coordinates keeps trials
// independent while letting any of them be recomputed in isolation.
inline std::uint64_t trial_seed(std::uint64_t seed, int n, Variant variant,
                                std::uint64_t samples, std::uint64_t trial) {
  return seed ^ hash_words({static_cast<std::uint64_t>(n),
                            variant == Variant::GHZ ? 1ull : 0ull, samples,
                            trial});
}

namespace detail {

inline void sort_rows(std::vector<ResultRow>& rows) {
  std::sort(rows.begin(), rows.end(),
            [](const ResultRow& a, const ResultRow& b) {
              return std::tuple(a.kind, a.n, static_cast<int>(a.variant),
                                a.theta_star, a.x) <
                     std::tuple(b.kind, b.n, static_cast<int>(b.variant),
                                b.theta_star, b.x);
            });
}

}  // namespace detail

// QCRB of the uniform depolarizing star across sizes, variants and theta.
// Singularity (theta = 0.75 or an ill-conditioned FIM) marks the row
// instead of aborting the sweep.
inline std::vector<ResultRow> run_qcrb_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.kind != ExperimentKind::QcrbSweep)
    fail(Errc::invalid_argument, "config kind is not qcrb_sweep");
  std::vector<ResultRow> rows;
  for (int n : cfg.sizes)
    for (Variant variant : cfg.variants)
      for (double theta : cfg.theta_grid) {
        ResultRow row;
        row.kind = "qcrb";
        row.n = n;
        row.variant = variant;
        row.theta_star = theta;
        row.x = theta;
        row.trials = 0;
        row.failures = 0;
        row.seed = cfg.seed;
        try {
          const StarNetwork star = StarNetwork::uniform_depolarizing(n, theta);
          row.value = qcrb(classical_fim(star, variant));
        } catch (const Error& e) {
          if (e.code() != Errc::singular_fim &&
              e.code() != Errc::singular_distribution)
            throw;
          row.singular = true;
          row.value = 0.0;
        }
        rows.push_back(std::move(row));
      }
  detail::sort_rows(rows);
  return rows;
}

// Monte-Carlo mean squared error of the matching estimator (Z data ->
// moment estimator with depolarizing conversion; GHZ data -> sign-equation
// estimator) against the true uniform theta_star.  Per-trial squared errors
// average over links; rows average over trials.  A trial counts as a
// failure when the clamped estimator recorded any fallback flag.
inline std::vector<ResultRow> run_mse_curve(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.kind != ExperimentKind::MseCurve)
    fail(Errc::invalid_argument, "config kind is not mse_curve");
  std::vector<ResultRow> rows;
  for (int n : cfg.sizes) {
    const StarNetwork star =
        StarNetwork::uniform_depolarizing(n, cfg.theta_star);
    for (Variant variant : cfg.variants) {
      const OutcomeDistribution dist =
          variant == Variant::GHZ ? ghz_distribution(star)
                                  : z_distribution(star);
      const detail::Sampler sampler(dist);
      for (std::uint64_t samples : cfg.sample_points) {
        double mse_sum = 0.0;
        std::uint64_t failures = 0;
        for (std::uint64_t trial = 0; trial < cfg.trials; ++trial) {
          const std::uint64_t tseed =
              trial_seed(cfg.seed, n, variant, samples, trial);
          const std::vector<std::uint64_t> counts =
              sample_counts(sampler, dist.size(), samples, tseed);
          const MomentStatistics moments =
              moments_from_counts(counts, variant, n);
          const EstimateSet est =
              variant == Variant::GHZ
                  ? estimate_depolarizing_ghz(moments, n,
                                              EstimatorPolicy::Clamped)
                  : estimate_depolarizing_z(moments, n,
                                            EstimatorPolicy::Clamped);
          if (!est.flags.empty()) ++failures;
          const std::size_t pick = select_candidate(
              est, counts, variant, n, ChannelKind::Depolarizing);
          const std::vector<double>& theta = est.candidates[pick];
          double err = 0.0;
          for (double t : theta) {
            const double d = t - cfg.theta_star;
            err += d * d;
          }
          mse_sum += err / static_cast<double>(theta.size());
        }
        ResultRow row;
        row.kind = "mse";
        row.n = n;
        row.variant = variant;
        row.theta_star = cfg.theta_star;
        row.x = static_cast<double>(samples);
        row.value = mse_sum / static_cast<double>(cfg.trials);
        row.trials = cfg.trials;
        row.failures = failures;
        row.seed = cfg.seed;
        rows.push_back(std::move(row));
      }
    }
  }
  detail::sort_rows(rows);
  return rows;
}

// ---------------------------------------------------------------------------
// CSV output

inline std::string csv_header() {
  return "kind,n,variant,theta_star,x,value,trials,failures,seed";
}

inline std::string csv_string(const std::vector<ResultRow>& rows) {
  std::string out = csv_header() + "\n";
  for (const ResultRow& row : rows) {
    out += row.kind;
    out += ',';
    out += std::to_string(row.n);
    out += ',';
    out += variant_name(row.variant);
    out += ',';
    out += format_double(row.theta_star);
    out += ',';
    out += format_double(row.x);
    out += ',';
    out += row.singular ? "singular" : format_double(row.value);
    out += ',';
    out += std::to_string(row.trials);
    out += ',';
    out += std::to_string(row.failures);
    out += ',';
    out += std::to_string(row.seed);
    out += '\n';
  }
  return out;
}

}  // namespace qnt
