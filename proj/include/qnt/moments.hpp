// SPDX-License-Identifier: Apache-2.0
//
// Parity moments of measurement data: the single-leaf means E[(-1)^x_i],
// the pairwise means E[(-1)^(x_i XOR x_j)], and (for GHZ records) the sign
// mean E[(-1)^b].  These marginals are all the estimators consume.
#pragma once

#include <cstdint>
#include <vector>

#include "qnt/database.hpp"
#include "qnt/distribution.hpp"
#include "qnt/error.hpp"

namespace qnt {

struct MomentStatistics {
  int n = 0;                 // network size the data came from
  Variant variant = Variant::Z;
  std::vector<double> m_i;   // [i-1] = E[(-1)^x_i], i = 1..n-1
  std::vector<std::vector<double>> m_ij;  // symmetric, same 0-based indexing
  bool has_g = false;
  double g = 0.0;            // E[(-1)^b], GHZ only
  std::uint64_t sample_count = 0;

  double pair(int i, int j) const {  // 1-based leaf indices
    return m_ij[static_cast<std::size_t>(i - 1)]
               [static_cast<std::size_t>(j - 1)];
  }
};

namespace detail {

// Shared core: moments of an outcome-indexed weight vector.  Weights are
// probabilities (exact moments) or count fractions (empirical moments);
// the index order is fixed, so the reduction is deterministic.
inline MomentStatistics moments_from_weights(const std::vector<double>& w,
                                             Variant variant, int n,
                                             std::uint64_t sample_count) {
  const int m = n - 1;
  MomentStatistics stats;
  stats.n = n;
  stats.variant = variant;
  stats.sample_count = sample_count;
  stats.m_i.assign(static_cast<std::size_t>(m), 0.0);
  stats.m_ij.assign(static_cast<std::size_t>(m),
                    std::vector<double>(static_cast<std::size_t>(m), 0.0));
  stats.has_g = variant == Variant::GHZ;

  const std::uint32_t s_mask = (std::uint32_t{1} << m) - 1;
  for (std::size_t idx = 0; idx < w.size(); ++idx) {
    if (w[idx] == 0.0) continue;
    const auto u = static_cast<std::uint32_t>(idx);
    const std::uint32_t s = u & s_mask;
    if (stats.has_g) {
      const int b = static_cast<int>(u >> m) & 1;
      stats.g += b ? -w[idx] : w[idx];
    }
    for (int i = 1; i <= m; ++i) {
      const int xi = leaf_bit(s, i, m);
      stats.m_i[static_cast<std::size_t>(i - 1)] += xi ? -w[idx] : w[idx];
      for (int j = i; j <= m; ++j) {
        const int parity = xi ^ leaf_bit(s, j, m);
        stats.m_ij[static_cast<std::size_t>(i - 1)]
                  [static_cast<std::size_t>(j - 1)] +=
            parity ? -w[idx] : w[idx];
      }
    }
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < i; ++j)
      stats.m_ij[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          stats.m_ij[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
  return stats;
}

}  // namespace detail

// Exact moments of a distribution (the estimators' round-trip input).
inline MomentStatistics exact_moments(const OutcomeDistribution& dist) {
  return detail::moments_from_weights(dist.p, dist.variant, dist.n, 1);
}

// Empirical moments from an outcome tally.
inline MomentStatistics moments_from_counts(
    const std::vector<std::uint64_t>& counts, Variant variant, int n) {
  std::uint64_t total = 0;
  for (std::uint64_t c : counts) total += c;
  if (total == 0) fail(Errc::empty_database, "no measurement records");
  std::vector<double> w(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i)
    w[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
  return detail::moments_from_weights(w, variant, n, total);
}

// Empirical moments of a record database.  The records must carry one
// homogeneous (circuit, n) tag.
inline MomentStatistics empirical_moments(const MeasurementDatabase& db) {
  if (db.empty()) fail(Errc::empty_database, "no measurement records");
  const Variant variant = db.records.front().variant;
  const int n = db.records.front().n;
  for (const MeasurementRecord& r : db.records)
    if (r.variant != variant || r.n != n)
      fail(Errc::mixed_circuits,
           "database mixes circuit tags; moments need homogeneous records");

  const int m = n - 1;
  const std::size_t table =
      std::size_t{1} << (variant == Variant::GHZ ? n : m);
  std::vector<std::uint64_t> counts(table, 0);
  for (const MeasurementRecord& r : db.records) {
    if (r.outcome >= table)
      fail(Errc::invalid_argument, "outcome index out of range for n");
    ++counts[r.outcome];
  }
  return moments_from_counts(counts, variant, n);
}

}  // namespace qnt
