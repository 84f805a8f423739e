// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance harness.  Each numbered check prints one
// [PASS]/[FAIL] line with the measured margin; the process exit code is the
// number of failed checks, so `ctest` treats any regression as a failure.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "qnt/qnt.hpp"

using namespace qnt;

namespace {

int g_failures = 0;

void report(int index, const std::string& name, bool ok,
            const std::string& detail) {
  std::printf("[%s] %d. %s (%s)\n", ok ? "PASS" : "FAIL", index, name.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

StarNetwork random_star(int n, std::uint64_t seed, double lo, double hi) {
  Rng rng(seed);
  std::vector<LinkChannel> links;
  for (int l = 0; l < n; ++l)
    links.push_back(LinkChannel::depolarizing(rng.uniform(lo, hi)));
  return StarNetwork(std::move(links));
}

double table_gap(const std::vector<double>& a, const std::vector<double>& b) {
  double gap = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    gap = std::max(gap, std::abs(a[i] - b[i]));
  return gap;
}

// 1. Exact multicast distributions match the density-matrix oracle.
void check_oracle_equivalence() {
  double worst = 0.0;
  for (int n : {3, 4, 5, 6})
    for (std::uint64_t rep = 0; rep < 20; ++rep) {
      const StarNetwork star = random_star(
          n, derive_seed(101, static_cast<std::uint64_t>(n) * 100 + rep), 0.02,
          0.7);
      const OutcomeDistribution z_direct = z_distribution(star);
      const OutcomeDistribution z_oracle = measure_distribution(
          build_state(star, Init::SingleZero), z_basis(n - 1));
      worst = std::max(worst, table_gap(z_direct.p, z_oracle.p));

      const OutcomeDistribution g_direct = ghz_distribution(star);
      const OutcomeDistribution g_oracle =
          measure_distribution(build_state(star, Init::BellPair), ghz_basis(n));
      worst = std::max(worst, table_gap(g_direct.p, g_oracle.p));
    }
  report(1, "oracle equivalence of exact distributions", worst < 1e-9,
         "max entry gap " + format_double(worst));
}

// 2. The general QFIM collapses to the classical FIM of the diagonal.
void check_qfim_reduction() {
  double worst = 0.0;
  for (int n : {4, 5})
    for (std::uint64_t rep = 0; rep < 20; ++rep) {
      const StarNetwork star = random_star(
          n, derive_seed(202, static_cast<std::uint64_t>(n) * 100 + rep), 0.02,
          0.7);
      for (auto [variant, init] : {std::pair{Variant::Z, Init::SingleZero},
                                   std::pair{Variant::GHZ, Init::BellPair}}) {
        const FisherMatrix classical = classical_fim(star, variant);
        const FisherMatrix quantum = qfim_general(star, init);
        worst = std::max(
            worst,
            (classical.entries - quantum.entries).cwiseAbs().maxCoeff());
      }
    }
  report(2, "QFIM reduces to the classical FIM", worst < 1e-5,
         "max entry gap " + format_double(worst));
}

// 3. Estimators invert exact moments, and the Z-path degeneracy flag fires
//    exactly on the two-candidate interval.
void check_round_trip() {
  double worst = 0.0;
  bool flags_ok = true;
  for (int n = 3; n <= 7; ++n)
    for (std::uint64_t rep = 0; rep < 10; ++rep) {
      Rng rng(derive_seed(303, static_cast<std::uint64_t>(n) * 100 + rep));
      std::vector<double> truth;
      for (int l = 0; l < n; ++l) truth.push_back(rng.uniform(0.0, 0.7));
      const StarNetwork star = [&] {
        std::vector<LinkChannel> links;
        for (double t : truth) links.push_back(LinkChannel::depolarizing(t));
        return StarNetwork(std::move(links));
      }();

      const EstimateSet z_set =
          estimate_depolarizing_z(exact_moments(z_distribution(star)), n);
      double z_best = 1.0;
      for (const std::vector<double>& cand : z_set.candidates) {
        double err = 0.0;
        for (int l = 0; l < n; ++l)
          err = std::max(err,
                         std::abs(cand[static_cast<std::size_t>(l)] -
                                  truth[static_cast<std::size_t>(l)]));
        z_best = std::min(z_best, err);
      }
      worst = std::max(worst, z_best);

      const EstimateSet g_set =
          estimate_depolarizing_ghz(exact_moments(ghz_distribution(star)), n);
      for (int l = 0; l < n; ++l)
        worst = std::max(
            worst, std::abs(g_set.candidates[0][static_cast<std::size_t>(l)] -
                            truth[static_cast<std::size_t>(l)]));
    }

  // Degeneracy flag, probed >= 0.01 away from the flip-space boundary
  // (theta_f in [1/3, 2/3] <=> theta in [0.5, 1]).
  for (int n : {3, 5, 7})
    for (std::uint64_t rep = 0; rep < 10; ++rep) {
      Rng inside_rng(derive_seed(313, static_cast<std::uint64_t>(n) * 100 + rep));
      std::vector<LinkChannel> inside;
      for (int l = 0; l < n; ++l)
        inside.push_back(
            LinkChannel::depolarizing(inside_rng.uniform(0.52, 0.98)));
      const EstimateSet in_set = estimate_depolarizing_z(
          exact_moments(z_distribution(StarNetwork(std::move(inside)))), n);
      if (!in_set.degenerate) flags_ok = false;

      Rng outside_rng(
          derive_seed(323, static_cast<std::uint64_t>(n) * 100 + rep));
      std::vector<LinkChannel> outside;
      for (int l = 0; l < n; ++l)
        outside.push_back(
            LinkChannel::depolarizing(outside_rng.uniform(0.52, 0.98)));
      const int low_link = static_cast<int>(outside_rng.next_u64() %
                                            static_cast<std::uint64_t>(n));
      outside[static_cast<std::size_t>(low_link)] =
          LinkChannel::depolarizing(outside_rng.uniform(0.0, 0.48));
      const EstimateSet out_set = estimate_depolarizing_z(
          exact_moments(z_distribution(StarNetwork(std::move(outside)))), n);
      if (out_set.degenerate) flags_ok = false;
    }

  report(3, "exact-moment round trip and degeneracy flag",
         worst < 1e-9 && flags_ok,
         "max link error " + format_double(worst) +
             (flags_ok ? ", flags exact" : ", flags WRONG"));
}

struct MseSummary {
  std::vector<ResultRow> rows;
  std::string csv;
};

MseSummary run_reference_mse() {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::MseCurve;
  cfg.sizes = {4, 5, 6, 7};
  cfg.theta_star = 0.1;
  cfg.sample_points = {1000, 10000};
  cfg.trials = 200;
  cfg.seed = 20260814;
  MseSummary summary;
  summary.rows = run_mse_curve(cfg);
  summary.csv = csv_string(summary.rows);
  return summary;
}

const ResultRow* find_row(const std::vector<ResultRow>& rows, int n,
                          Variant variant, double x) {
  for (const ResultRow& row : rows)
    if (row.n == n && row.variant == variant && std::abs(row.x - x) < 1e-9)
      return &row;
  return nullptr;
}

// 4. 10^4 samples and 200 trials push every configuration's MSE below 1e-2.
void check_mse_threshold(const MseSummary& mse) {
  double worst = 0.0;
  bool complete = true;
  for (int n : {4, 5, 6, 7})
    for (Variant variant : {Variant::Z, Variant::GHZ}) {
      const ResultRow* row = find_row(mse.rows, n, variant, 10000.0);
      if (row == nullptr) {
        complete = false;
        continue;
      }
      worst = std::max(worst, row->value);
    }
  report(4, "MSE < 1e-2 at 1e4 samples for n in 4..7", complete && worst < 1e-2,
         "worst MSE " + format_double(worst));
}

struct SweepSummary {
  std::vector<ResultRow> rows;
  std::string csv;
};

SweepSummary run_reference_sweep() {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::QcrbSweep;
  cfg.sizes = {4, 5, 6, 7};
  for (int k = 1; k <= 14; ++k) cfg.theta_grid.push_back(0.05 * k);
  cfg.theta_grid.push_back(0.74);
  cfg.theta_grid.push_back(0.75);
  cfg.include_singular = true;
  cfg.seed = 20260814;
  SweepSummary summary;
  summary.rows = run_qcrb_sweep(cfg);
  summary.csv = csv_string(summary.rows);
  return summary;
}

// 5. Sweep behavior: finite bounds until 0.74, singular marker at 0.75, and
//    the published size/variant orderings.
void check_sweep(const SweepSummary& sweep) {
  bool finite_ok = true;
  bool singular_ok = true;
  for (const ResultRow& row : sweep.rows) {
    if (row.x > 0.745) {
      if (!row.singular) singular_ok = false;
    } else if (row.singular || !(row.value > 0.0) ||
               !std::isfinite(row.value)) {
      finite_ok = false;
    }
  }

  bool order_ok = true;
  for (Variant variant : {Variant::Z, Variant::GHZ}) {
    const ResultRow* low4 = find_row(sweep.rows, 4, variant, 0.1);
    const ResultRow* high4 = find_row(sweep.rows, 4, variant, 0.6);
    for (int n : {5, 6, 7}) {
      const ResultRow* low = find_row(sweep.rows, n, variant, 0.1);
      const ResultRow* high = find_row(sweep.rows, n, variant, 0.6);
      if (low == nullptr || high == nullptr || low4 == nullptr ||
          high4 == nullptr) {
        order_ok = false;
        continue;
      }
      if (!(low4->value < low->value)) order_ok = false;
      if (!(high4->value > high->value)) order_ok = false;
    }
  }

  bool ghz_ok = true;
  for (double theta : {0.05, 0.1})
    for (int n : {4, 5, 6, 7}) {
      const ResultRow* z = find_row(sweep.rows, n, Variant::Z, theta);
      const ResultRow* g = find_row(sweep.rows, n, Variant::GHZ, theta);
      if (z == nullptr || g == nullptr || !(g->value <= z->value + 1e-12))
        ghz_ok = false;
    }

  report(5, "QCRB sweep: finite range, singular point, orderings",
         finite_ok && singular_ok && order_ok && ghz_ok,
         std::string("finite ") + (finite_ok ? "ok" : "BAD") + ", singular " +
             (singular_ok ? "ok" : "BAD") + ", size order " +
             (order_ok ? "ok" : "BAD") + ", ghz<=z " + (ghz_ok ? "ok" : "BAD"));
}

// 6. GHZ readout converges no faster than Z readout at theta* = 0.1.
void check_convergence_order(const MseSummary& mse) {
  bool ok = true;
  double min_margin = 1.0;
  for (int n : {4, 5, 6, 7})
    for (double s : {1000.0, 10000.0}) {
      const ResultRow* z = find_row(mse.rows, n, Variant::Z, s);
      const ResultRow* g = find_row(mse.rows, n, Variant::GHZ, s);
      if (z == nullptr || g == nullptr) {
        ok = false;
        continue;
      }
      if (!(g->value >= z->value)) ok = false;
      min_margin = std::min(min_margin, g->value - z->value);
    }
  report(6, "GHZ-readout MSE >= Z-readout MSE", ok,
         "min margin " + format_double(min_margin));
}

// 7. The experiment CSVs are byte-identical across repeated runs.
void check_determinism(const MseSummary& mse, const SweepSummary& sweep) {
  const MseSummary mse2 = run_reference_mse();
  const SweepSummary sweep2 = run_reference_sweep();
  const bool ok = mse.csv == mse2.csv && sweep.csv == sweep2.csv;
  report(7, "experiment CSVs are byte-identical across runs", ok,
         ok ? "both artifacts stable" : "artifacts differ");
}

}  // namespace

int main() {
  check_oracle_equivalence();
  check_qfim_reduction();
  check_round_trip();
  const MseSummary mse = run_reference_mse();
  check_mse_threshold(mse);
  const SweepSummary sweep = run_reference_sweep();
  check_sweep(sweep);
  check_convergence_order(mse);
  check_determinism(mse, sweep);
  std::printf("%d of 7 checks failed\n", g_failures);
  return g_failures;
}
