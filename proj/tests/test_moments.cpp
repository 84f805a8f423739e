// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <catch2/catch_amalgamated.hpp>

#include "qnt/database.hpp"
#include "qnt/moments.hpp"
#include "test_util.hpp"

using namespace qnt;
using qnt_test::ErrorCodeIs;
using Catch::Matchers::WithinAbs;

namespace {

MeasurementDatabase make_db(Variant variant, int n,
                            std::vector<std::uint32_t> outcomes) {
  MeasurementDatabase db;
  for (std::uint32_t o : outcomes)
    db.records.push_back(MeasurementRecord{variant, n, o});
  return db;
}

}  // namespace

TEST_CASE("hand-countable parities", "[moments]") {
  // n=3, records x in {00, 00, 11, 11}: each leaf is half 0 half 1, the
  // pair parity is always even.
  const MeasurementDatabase db = make_db(Variant::Z, 3, {0b00, 0b00, 0b11, 0b11});
  const MomentStatistics stats = empirical_moments(db);
  CHECK(stats.sample_count == 4);
  CHECK_THAT(stats.m_i[0], WithinAbs(0.0, 1e-15));
  CHECK_THAT(stats.m_i[1], WithinAbs(0.0, 1e-15));
  CHECK_THAT(stats.pair(1, 2), WithinAbs(1.0, 1e-15));
  CHECK_FALSE(stats.has_g);
}

TEST_CASE("noiseless records give unit moments", "[moments]") {
  const MeasurementDatabase db = make_db(Variant::Z, 4, {0, 0, 0, 0, 0});
  const MomentStatistics stats = empirical_moments(db);
  for (double m : stats.m_i) CHECK(m == 1.0);
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) CHECK(stats.pair(i, j) == 1.0);
}

TEST_CASE("GHZ records feed both s-parities and the sign moment",
          "[moments]") {
  // n=3 (m=2): outcomes (b,s) = (0,00), (1,00), (1,11), (0,11).
  const MeasurementDatabase db =
      make_db(Variant::GHZ, 3, {0b000, 0b100, 0b111, 0b011});
  const MomentStatistics stats = empirical_moments(db);
  REQUIRE(stats.has_g);
  CHECK_THAT(stats.g, WithinAbs(0.0, 1e-15));
  CHECK_THAT(stats.m_i[0], WithinAbs(0.0, 1e-15));
  CHECK_THAT(stats.pair(1, 2), WithinAbs(1.0, 1e-15));
}

TEST_CASE("exact moments of the uniform theta=0.1 star", "[moments]") {
  const double c = 13.0 / 15.0;  // 1 - 4 theta / 3
  const StarNetwork star = StarNetwork::uniform_depolarizing(4, 0.1);

  const MomentStatistics z = exact_moments(z_distribution(star));
  for (double m : z.m_i) CHECK_THAT(m, WithinAbs(c * c, 1e-14));
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j)
      if (i != j) CHECK_THAT(z.pair(i, j), WithinAbs(c * c, 1e-14));

  const MomentStatistics g = exact_moments(ghz_distribution(star));
  REQUIRE(g.has_g);
  CHECK_THAT(g.g, WithinAbs(std::pow(c, 4), 1e-14));
  for (double m : g.m_i) CHECK_THAT(m, WithinAbs(c * c, 1e-14));
}

TEST_CASE("exact moments obey the correlation identities",
          "[moments][property]") {
  // m_i = c_0 c_i and m_ij = c_i c_j with c_l = 1 - 2 q_l; the GHZ sign
  // moment is the product of per-link phase factors.
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const StarNetwork star = qnt_test::random_pauli_star(5, 2000 + seed);
    std::vector<double> c;
    for (const LinkChannel& link : star.links())
      c.push_back(1.0 - 2.0 * flip_probability(link));

    const MomentStatistics z = exact_moments(z_distribution(star));
    for (int i = 1; i <= 4; ++i) {
      CHECK_THAT(z.m_i[static_cast<std::size_t>(i - 1)],
                 WithinAbs(c[0] * c[static_cast<std::size_t>(i)], 1e-12));
      for (int j = i + 1; j <= 4; ++j)
        CHECK_THAT(z.pair(i, j),
                   WithinAbs(c[static_cast<std::size_t>(i)] *
                                 c[static_cast<std::size_t>(j)],
                             1e-12));
    }

    const MomentStatistics ghz = exact_moments(ghz_distribution(star));
    double prod = 1.0;
    for (const LinkChannel& link : star.links())
      prod *= 1.0 - 2.0 * phase_flip_probability(link);
    CHECK_THAT(ghz.g, WithinAbs(prod, 1e-12));
  }
}

TEST_CASE("sampled moments concentrate", "[moments][slow]") {
  // One million draws at n=4, theta=0.1: every single-leaf moment lands
  // within 0.005 of the exact value c^2 = (13/15)^2.
  const StarNetwork star = StarNetwork::uniform_depolarizing(4, 0.1);
  const OutcomeDistribution dist = z_distribution(star);
  const detail::Sampler sampler(dist);
  const std::vector<std::uint64_t> counts =
      sample_counts(sampler, dist.size(), 1000000, 31337);
  const MomentStatistics stats = moments_from_counts(counts, Variant::Z, 4);
  const double expected = (13.0 / 15.0) * (13.0 / 15.0);
  for (double m : stats.m_i) CHECK_THAT(m, WithinAbs(expected, 0.005));
}

TEST_CASE("moments error handling", "[moments]") {
  CHECK_THROWS_MATCHES(empirical_moments(MeasurementDatabase{}), Error,
                       ErrorCodeIs(Errc::empty_database));

  MeasurementDatabase mixed = make_db(Variant::Z, 3, {0, 0});
  mixed.records.push_back(MeasurementRecord{Variant::GHZ, 3, 0});
  CHECK_THROWS_MATCHES(empirical_moments(mixed), Error,
                       ErrorCodeIs(Errc::mixed_circuits));

  MeasurementDatabase wrong_n = make_db(Variant::Z, 3, {0});
  wrong_n.records.push_back(MeasurementRecord{Variant::Z, 4, 0});
  CHECK_THROWS_MATCHES(empirical_moments(wrong_n), Error,
                       ErrorCodeIs(Errc::mixed_circuits));
}

TEST_CASE("tally path and record path agree", "[moments]") {
  const StarNetwork star = StarNetwork::uniform_depolarizing(4, 0.25);
  const OutcomeDistribution dist = ghz_distribution(star);
  const MeasurementDatabase db = sample(dist, 3000, 8);
  const MomentStatistics a = empirical_moments(db);

  std::vector<std::uint32_t> outcomes;
  for (const MeasurementRecord& r : db.records) outcomes.push_back(r.outcome);
  const MomentStatistics b =
      moments_from_counts(outcome_counts(dist, outcomes), Variant::GHZ, 4);

  CHECK(a.g == b.g);
  for (std::size_t i = 0; i < a.m_i.size(); ++i) CHECK(a.m_i[i] == b.m_i[i]);
  CHECK(a.sample_count == b.sample_count);
}
