// SPDX-License-Identifier: Apache-2.0
//
// Measurement databases: tagged records of sampled circuit outcomes, plus
// the seeded sampler that produces them from an exact distribution.
#pragma once

#include <cstdint>
#include <vector>

#include "qnt/distribution.hpp"
#include "qnt/error.hpp"
#include "qnt/rng.hpp"

namespace qnt {

// One sampled shot.  `outcome` uses the OutcomeDistribution index encoding
// (leaf bits for Z; (b << (n-1)) | s for GHZ).
struct MeasurementRecord {
  Variant variant = Variant::Z;
  int n = 0;
  std::uint32_t outcome = 0;
};

struct MeasurementDatabase {
  std::vector<MeasurementRecord> records;
  std::uint64_t seed = 0;  // seed of the generating stream, for provenance

  std::size_t size() const { return records.size(); }
  bool empty() const { return records.empty(); }
};

namespace detail {

// Inverse-CDF lookup table; cumulative sums are done once in index order so
// sampling is deterministic and O(log outcomes) per draw.
class Sampler {
 public:
  explicit Sampler(const OutcomeDistribution& dist)
      : cdf_(dist.p.size()) {
    double acc = 0.0;
    for (std::size_t i = 0; i < dist.p.size(); ++i) {
      acc += dist.p[i];
      cdf_[i] = acc;
    }
    // Guard the top against rounding so uniform() < 1 always lands.
    if (!cdf_.empty()) cdf_.back() = 1.0;
  }

  std::uint32_t draw(Rng& rng) const {
    const double u = rng.uniform();
    std::size_t lo = 0, hi = cdf_.size() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (u < cdf_[mid])
        hi = mid;
      else
        lo = mid + 1;
    }
    return static_cast<std::uint32_t>(lo);
  }

 private:
  std::vector<double> cdf_;
};

}  // namespace detail

// Count table over outcome indices; the moment and likelihood computations
// run off tallies so their reduction order is fixed regardless of how the
// records were produced.
inline std::vector<std::uint64_t> outcome_counts(
    const OutcomeDistribution& dist_shape, const std::vector<std::uint32_t>& outcomes) {
  std::vector<std::uint64_t> counts(dist_shape.size(), 0);
  for (std::uint32_t o : outcomes) ++counts[o];
  return counts;
}

// i.i.d. draws from an exact distribution.  Deterministic given
// (dist, count, seed): one mt19937_64 stream consumed in record order.
inline MeasurementDatabase sample(const OutcomeDistribution& dist,
                                  std::uint64_t count, std::uint64_t seed) {
  if (count < 1) fail(Errc::invalid_argument, "sample count must be >= 1");
  detail::Sampler sampler(dist);
  Rng rng(seed);
  MeasurementDatabase db;
  db.seed = seed;
  db.records.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i)
    db.records.push_back(MeasurementRecord{dist.variant, dist.n, sampler.draw(rng)});
  return db;
}

// Fast path for the Monte-Carlo experiments: tally draws directly without
// materializing records.
inline std::vector<std::uint64_t> sample_counts(const detail::Sampler& sampler,
                                                std::size_t table_size,
                                                std::uint64_t count,
                                                std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::uint64_t> counts(table_size, 0);
  for (std::uint64_t i = 0; i < count; ++i) ++counts[sampler.draw(rng)];
  return counts;
}

}  // namespace qnt
