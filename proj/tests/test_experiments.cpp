// SPDX-License-Identifier: Apache-2.0

#include <map>
#include <set>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "qnt/experiments.hpp"
#include "test_util.hpp"

using namespace qnt;
using qnt_test::ErrorCodeIs;
using Catch::Matchers::WithinAbs;

namespace {

ExperimentConfig sweep_config(std::vector<int> sizes,
                              std::vector<double> grid) {
  ExperimentConfig config;
  config.kind = ExperimentKind::QcrbSweep;
  config.sizes = std::move(sizes);
  config.theta_grid = std::move(grid);
  config.seed = 42;
  return config;
}

ExperimentConfig mse_config(std::vector<int> sizes, double theta_star,
                            std::vector<std::uint64_t> points, int trials) {
  ExperimentConfig config;
  config.kind = ExperimentKind::MseCurve;
  config.sizes = std::move(sizes);
  config.theta_star = theta_star;
  config.sample_points = std::move(points);
  config.trials = trials;
  config.seed = 42;
  return config;
}

const ResultRow& find_row(const std::vector<ResultRow>& rows, int n,
                          Variant variant, double x) {
  for (const ResultRow& row : rows)
    if (row.n == n && row.variant == variant && std::abs(row.x - x) < 1e-12)
      return row;
  FAIL("row not found");
  return rows.front();
}

}  // namespace

TEST_CASE("experiment config validation", "[experiments]") {
  CHECK_NOTHROW(sweep_config({4, 5}, {0.1, 0.2}).validate());

  CHECK_THROWS_MATCHES(sweep_config({2}, {0.1}).validate(), Error,
                       ErrorCodeIs(Errc::invalid_argument));
  CHECK_THROWS_MATCHES(sweep_config({9}, {0.1}).validate(), Error,
                       ErrorCodeIs(Errc::invalid_argument));
  CHECK_THROWS_MATCHES(sweep_config({4}, {}).validate(), Error,
                       ErrorCodeIs(Errc::invalid_argument));
  CHECK_THROWS_MATCHES(sweep_config({4}, {0.0}).validate(), Error,
                       ErrorCodeIs(Errc::invalid_argument));
  CHECK_THROWS_MATCHES(sweep_config({4}, {0.8}).validate(), Error,
                       ErrorCodeIs(Errc::invalid_argument));

  // Points beyond 0.74 are opt-in: they hit the singular fixed point.
  ExperimentConfig singular = sweep_config({4}, {0.75});
  CHECK_THROWS_MATCHES(singular.validate(), Error,
                       ErrorCodeIs(Errc::invalid_argument));
  singular.include_singular = true;
  CHECK_NOTHROW(singular.validate());

  CHECK_NOTHROW(mse_config({4}, 0.1, {100, 200}, 5).validate());
  CHECK_NOTHROW(mse_config({4}, 0.0, {100}, 5).validate());
  CHECK_THROWS_MATCHES(mse_config({4}, 0.8, {100}, 5).validate(), Error,
                       ErrorCodeIs(Errc::invalid_argument));
  CHECK_THROWS_MATCHES(mse_config({4}, 0.1, {}, 5).validate(), Error,
                       ErrorCodeIs(Errc::invalid_argument));
  CHECK_THROWS_MATCHES(mse_config({4}, 0.1, {200, 100}, 5).validate(), Error,
                       ErrorCodeIs(Errc::invalid_argument));
  CHECK_THROWS_MATCHES(mse_config({4}, 0.1, {100, 100}, 5).validate(), Error,
                       ErrorCodeIs(Errc::invalid_argument));
  CHECK_THROWS_MATCHES(mse_config({4}, 0.1, {0}, 5).validate(), Error,
                       ErrorCodeIs(Errc::invalid_argument));
  CHECK_THROWS_MATCHES(mse_config({4}, 0.1, {100}, 0).validate(), Error,
                       ErrorCodeIs(Errc::invalid_argument));
}

TEST_CASE("default grids", "[experiments]") {
  const std::vector<double> grid = default_theta_grid();
  REQUIRE(grid.size() == 14);
  CHECK_THAT(grid.front(), WithinAbs(0.05, 1e-12));
  CHECK_THAT(grid.back(), WithinAbs(0.70, 1e-12));
  const std::vector<std::uint64_t> points = default_sample_points();
  REQUIRE(points.size() == 7);
  CHECK(points.front() == 100);
  CHECK(points.back() == 10000);
}

TEST_CASE("sweep produces the full row grid", "[experiments]") {
  ExperimentConfig config = sweep_config({4, 5, 6, 7}, default_theta_grid());
  const std::vector<ResultRow> rows = run_qcrb_sweep(config);
  REQUIRE(rows.size() == 2 * 4 * 14);

  std::set<std::tuple<int, int, double>> keys;
  for (const ResultRow& row : rows) {
    CHECK(row.kind == "qcrb");
    CHECK_FALSE(row.singular);
    CHECK(row.value > 0.0);
    CHECK(std::isfinite(row.value));
    CHECK(row.trials == 0);
    CHECK(row.failures == 0);
    keys.insert({row.n, row.variant == Variant::GHZ ? 1 : 0, row.x});
  }
  CHECK(keys.size() == rows.size());

  // Rows arrive sorted by (n, variant, x).
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto key = [](const ResultRow& r) {
      return std::make_tuple(r.n, r.variant == Variant::GHZ ? 1 : 0, r.x);
    };
    CHECK(key(rows[i - 1]) < key(rows[i]));
  }
}

TEST_CASE("sweep marks the fixed point as singular", "[experiments]") {
  ExperimentConfig config = sweep_config({4}, {0.7, 0.75});
  config.include_singular = true;
  const std::vector<ResultRow> rows = run_qcrb_sweep(config);
  REQUIRE(rows.size() == 4);
  int singular_count = 0;
  for (const ResultRow& row : rows) {
    if (std::abs(row.x - 0.75) < 1e-12) {
      CHECK(row.singular);
      ++singular_count;
    } else {
      CHECK_FALSE(row.singular);
      CHECK(std::isfinite(row.value));
    }
  }
  CHECK(singular_count == 2);
}

TEST_CASE("sweep orderings across network size", "[experiments]") {
  const std::vector<ResultRow> rows =
      run_qcrb_sweep(sweep_config({4, 5, 6, 7}, {0.1, 0.6}));
  for (Variant variant : {Variant::Z, Variant::GHZ}) {
    // Weak noise: the smallest network has the least to estimate and the
    // tightest bound.  Strong noise inverts the ranking: extra leaves add
    // cross-checks that outweigh the extra parameters.
    for (int n : {5, 6, 7}) {
      CHECK(find_row(rows, 4, variant, 0.1).value <
            find_row(rows, n, variant, 0.1).value);
      CHECK(find_row(rows, 4, variant, 0.6).value >
            find_row(rows, n, variant, 0.6).value);
    }
  }
}

TEST_CASE("MSE curve shrinks with sample size", "[experiments]") {
  const std::vector<ResultRow> rows =
      run_mse_curve(mse_config({4}, 0.1, {100, 1000}, 20));
  REQUIRE(rows.size() == 4);
  for (const ResultRow& row : rows) {
    CHECK(row.kind == "mse");
    CHECK(row.trials == 20);
    CHECK(row.value >= 0.0);
    CHECK_THAT(row.theta_star, WithinAbs(0.1, 1e-12));
  }
  for (Variant variant : {Variant::Z, Variant::GHZ})
    CHECK(find_row(rows, 4, variant, 1000).value <
          find_row(rows, 4, variant, 100).value);
}

TEST_CASE("MSE curve on a noiseless network", "[experiments]") {
  const std::vector<ResultRow> rows =
      run_mse_curve(mse_config({4}, 0.0, {100}, 10));
  for (const ResultRow& row : rows) {
    CHECK_THAT(row.value, WithinAbs(0.0, 1e-12));
    CHECK(row.failures == 0);
  }
}

TEST_CASE("experiments are deterministic", "[experiments]") {
  ExperimentConfig config = mse_config({4, 5}, 0.1, {100, 500}, 10);
  const std::string first = csv_string(run_mse_curve(config));
  const std::string second = csv_string(run_mse_curve(config));
  CHECK(first == second);

  config.seed = 43;
  const std::string reseeded = csv_string(run_mse_curve(config));
  CHECK(first != reseeded);

  const std::string sweep_a = csv_string(run_qcrb_sweep(sweep_config({4}, {0.1})));
  const std::string sweep_b = csv_string(run_qcrb_sweep(sweep_config({4}, {0.1})));
  CHECK(sweep_a == sweep_b);
}

TEST_CASE("trial seeds never collide across the experiment grid",
          "[experiments]") {
  std::set<std::uint64_t> seen;
  std::size_t total = 0;
  for (int n : {4, 5, 6, 7})
    for (Variant variant : {Variant::Z, Variant::GHZ})
      for (std::uint64_t s : {100ull, 1000ull, 10000ull})
        for (std::uint64_t trial = 0; trial < 50; ++trial) {
          seen.insert(trial_seed(42, n, variant, s, trial));
          ++total;
        }
  CHECK(seen.size() == total);
}

TEST_CASE("CSV shape is frozen", "[experiments]") {
  CHECK(csv_header() ==
        "kind,n,variant,theta_star,x,value,trials,failures,seed");

  ResultRow row;
  row.kind = "qcrb";
  row.n = 4;
  row.variant = Variant::GHZ;
  row.theta_star = 0.1;
  row.x = 0.1;
  row.value = 2.5;
  row.singular = false;
  row.trials = 0;
  row.failures = 0;
  row.seed = 42;
  ResultRow singular = row;
  singular.x = 0.75;
  singular.theta_star = 0.75;
  singular.value = 0.0;
  singular.singular = true;
  const std::string text = csv_string({row, singular});
  CHECK(text ==
        "kind,n,variant,theta_star,x,value,trials,failures,seed\n"
        "qcrb,4,GHZ,0.1,0.1,2.5,0,0,42\n"
        "qcrb,4,GHZ,0.75,0.75,singular,0,0,42\n");
}
