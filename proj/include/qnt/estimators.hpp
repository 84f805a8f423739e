// SPDX-License-Identifier: Apache-2.0
//
// Link-parameter estimators built on parity moments.
//
// The Z-diagonal output of the Multicast circuit obeys, in correlation
// coordinates c_l = 1 - 2 q_l (q_l = the link's flip probability),
//
//   m_i  = E[(-1)^x_i]          = c_0 c_i
//   m_ij = E[(-1)^(x_i XOR x_j)] = c_i c_j
//
// so m_i m_j / m_ij = c_0^2 for every leaf pair, and the sign of c_0 is not
// identifiable from the data -- the familiar two-fold (p, 1-p) degeneracy.
// The GHZ sign bit adds g = E[(-1)^b] = prod_l (1 - 2 r_l) (r_l = the link's
// phase-flip probability), which breaks the degeneracy for depolarizing
// links where bit- and phase-flip probabilities coincide (both 2 theta/3,
// c_l = 1 - 4 theta_l / 3): substituting c_i = m_i / c_0 turns the sign
// equation into g c_0^(n-2) = prod_i m_i, solved directly for c_0.
//
// Estimators run in one of two policies:
//   Strict  -- raise on non-identifiable or out-of-range data (unit tests,
//              round trips, CLI default).
//   Clamped -- always return a usable estimate, with every fallback recorded
//              in the flags; keeps Monte-Carlo sweeps total without hiding
//              how often the guards fired.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "qnt/distribution.hpp"
#include "qnt/error.hpp"
#include "qnt/moments.hpp"
#include "qnt/network.hpp"

namespace qnt {

enum class EstimatorPolicy { Strict, Clamped };

// Guard for moment denominators; well below sampling noise at the largest
// sample counts we run (1e4..1e6), so it never masks real signal.
inline constexpr double kEpsDiv = 1e-6;

struct EstimateSet {
  // Candidate link-parameter vectors, length n each; semantics follow the
  // estimator that produced them (bit-flip p_l or depolarizing theta_l).
  std::vector<std::vector<double>> candidates;
  bool degenerate = false;
  std::vector<std::string> flags;  // per-link validity / fallback diagnostics
};

namespace detail {

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t k = v.size() / 2;
  return v.size() % 2 ? v[k] : 0.5 * (v[k - 1] + v[k]);
}

inline void flag_range(EstimateSet& set, std::size_t cand, int link,
                       EstimatorPolicy policy) {
  double& value = set.candidates[cand][static_cast<std::size_t>(link)];
  if (value >= 0.0 && value <= 1.0) return;
  if (policy == EstimatorPolicy::Clamped) {
    value = std::clamp(value, 0.0, 1.0);
    set.flags.push_back("clamp:cand" + std::to_string(cand) + ":link" +
                        std::to_string(link));
  } else {
    set.flags.push_back("range:cand" + std::to_string(cand) + ":link" +
                        std::to_string(link));
  }
}

}  // namespace detail

// Marginal-moment estimator for a flip star: returns the two sign
// candidates (p_l) and (1 - p_l).  Works on multicast_z moments or on the
// s-part of multicast_ghz moments.
inline EstimateSet estimate_flip_star(
    const MomentStatistics& moments, int n,
    EstimatorPolicy policy = EstimatorPolicy::Strict) {
  if (n < 3) fail(Errc::invalid_argument, "flip-star estimator needs n >= 3");
  const int m = n - 1;
  if (static_cast<int>(moments.m_i.size()) != m)
    fail(Errc::invalid_argument, "moments do not match n");

  EstimateSet set;

  // c_0^2 as a robust aggregate over leaf pairs.
  std::vector<double> ratios;
  for (int i = 1; i <= m; ++i)
    for (int j = i + 1; j <= m; ++j) {
      const double mij = moments.pair(i, j);
      if (std::abs(mij) < kEpsDiv) {
        if (policy == EstimatorPolicy::Strict)
          fail(Errc::degenerate_moments,
               "pairwise moment m_" + std::to_string(i) + std::to_string(j) +
                   " is below the identifiability guard (a link at p = 1/2?)");
        set.flags.push_back("pair_skipped:" + std::to_string(i) + "," +
                            std::to_string(j));
        continue;
      }
      ratios.push_back(moments.m_i[static_cast<std::size_t>(i - 1)] *
                       moments.m_i[static_cast<std::size_t>(j - 1)] / mij);
    }

  double c0_sq;
  if (ratios.empty()) {
    set.flags.emplace_back("degenerate_moments");
    c0_sq = kEpsDiv;  // Clamped only; Strict raised above
  } else {
    c0_sq = detail::median(ratios);
  }
  if (c0_sq <= 0.0) {
    if (policy == EstimatorPolicy::Strict)
      fail(Errc::negative_square,
           "aggregated c_0^2 <= 0; moments are inconsistent with the model");
    set.flags.emplace_back("negative_square");
    c0_sq = kEpsDiv;
  }

  const double c0 = std::sqrt(c0_sq);
  std::vector<double> plus(static_cast<std::size_t>(n));
  std::vector<double> minus(static_cast<std::size_t>(n));
  plus[0] = (1.0 - c0) / 2.0;
  minus[0] = (1.0 + c0) / 2.0;
  for (int i = 1; i <= m; ++i) {
    const double ci = moments.m_i[static_cast<std::size_t>(i - 1)] / c0;
    plus[static_cast<std::size_t>(i)] = (1.0 - ci) / 2.0;
    minus[static_cast<std::size_t>(i)] = (1.0 + ci) / 2.0;
  }
  set.candidates.push_back(std::move(plus));
  set.candidates.push_back(std::move(minus));
  set.degenerate = true;  // sign of c_0 is never identifiable from Z data
  for (std::size_t k = 0; k < set.candidates.size(); ++k)
    for (int l = 0; l < n; ++l) detail::flag_range(set, k, l, policy);
  return set;
}

// Depolarizing estimation from Z-diagonal data: convert each flip-star
// candidate through theta_f = 1 - p, theta = 3(1 - theta_f)/2 and keep only
// candidates whose every theta_f admits a depolarizing channel
// (theta_f >= 1/3).  Degenerate exactly when both survive, i.e. all
// theta_f in [1/3, 2/3].
inline EstimateSet estimate_depolarizing_z(
    const MomentStatistics& moments, int n,
    EstimatorPolicy policy = EstimatorPolicy::Strict) {
  const EstimateSet flips = estimate_flip_star(moments, n, policy);

  EstimateSet set;
  set.flags = flips.flags;
  std::vector<double> violations;  // total theta_f shortfall per candidate
  std::vector<std::vector<double>> converted;
  for (const std::vector<double>& cand : flips.candidates) {
    std::vector<double> thetas(cand.size());
    double violation = 0.0;
    for (std::size_t l = 0; l < cand.size(); ++l) {
      const double theta_f = 1.0 - cand[l];
      violation += std::max(0.0, 1.0 / 3.0 - theta_f);
      thetas[l] = 3.0 * (1.0 - theta_f) / 2.0;
    }
    converted.push_back(std::move(thetas));
    violations.push_back(violation);
  }

  for (std::size_t k = 0; k < converted.size(); ++k)
    if (violations[k] == 0.0) set.candidates.push_back(converted[k]);
  set.degenerate = set.candidates.size() == 2;

  if (set.candidates.empty()) {
    if (policy == EstimatorPolicy::Strict)
      fail(Errc::no_valid_candidate,
           "both flip candidates violate theta_f >= 1/3");
    // Keep the least-violating candidate so sweeps stay total.
    const std::size_t best = violations[0] <= violations[1] ? 0 : 1;
    set.candidates.push_back(converted[best]);
    set.flags.emplace_back("no_valid_candidate");
  }
  for (std::size_t k = 0; k < set.candidates.size(); ++k)
    for (std::size_t l = 0; l < set.candidates[k].size(); ++l)
      detail::flag_range(set, k, static_cast<int>(l), policy);
  return set;
}

// Depolarizing estimation from GHZ-diagonal data.  The sign equation
// g c_0^(n-2) = prod_i m_i pins c_0 in [0, 1] (supported regime
// theta_0 in [0, 0.75]); the leaf parameters follow from c_i = m_i / c_0.
// Returns a single candidate.
inline EstimateSet estimate_depolarizing_ghz(
    const MomentStatistics& moments, int n,
    EstimatorPolicy policy = EstimatorPolicy::Strict) {
  if (n < 3) fail(Errc::invalid_argument, "GHZ estimator needs n >= 3");
  if (!moments.has_g)
    fail(Errc::invalid_argument,
         "GHZ estimator needs the sign moment g (multicast_ghz data)");
  const int m = n - 1;
  if (static_cast<int>(moments.m_i.size()) != m)
    fail(Errc::invalid_argument, "moments do not match n");

  EstimateSet set;
  double g = moments.g;
  if (std::abs(g) < kEpsDiv) {
    if (policy == EstimatorPolicy::Strict)
      fail(Errc::degenerate_moments,
           "sign moment g is below the identifiability guard");
    set.flags.emplace_back("degenerate_moments");
    g = g < 0.0 ? -kEpsDiv : kEpsDiv;
  }

  double prod = 1.0;
  for (double mi : moments.m_i) prod *= mi;
  double ratio = prod / g;  // = c_0^(n-2)
  if (ratio <= 0.0 || ratio > 1.0) {
    if (policy == EstimatorPolicy::Strict)
      fail(Errc::no_root_in_range,
           "sign equation has no root with c_0 in (0, 1]");
    if (ratio > 1.0) {
      set.flags.emplace_back("root_clamped_high");
      ratio = 1.0;
    } else {
      set.flags.emplace_back("root_clamped_low");
      ratio = kEpsDiv;
    }
  }

  const double c0 = std::pow(ratio, 1.0 / static_cast<double>(n - 2));
  std::vector<double> thetas(static_cast<std::size_t>(n));
  thetas[0] = 3.0 * (1.0 - c0) / 4.0;
  for (int i = 1; i <= m; ++i)
    thetas[static_cast<std::size_t>(i)] =
        3.0 * (1.0 - moments.m_i[static_cast<std::size_t>(i - 1)] / c0) / 4.0;
  set.candidates.push_back(std::move(thetas));
  set.degenerate = false;
  for (std::size_t l = 0; l < set.candidates[0].size(); ++l)
    detail::flag_range(set, 0, static_cast<int>(l), policy);
  return set;
}

// ---------------------------------------------------------------------------
// Candidate selection for scoring

// When two candidates survive, score the one that explains the observed
// tally better (higher log-likelihood under its implied outcome table);
// ties break toward the lower total parameter.  Returns the candidate index.
inline std::size_t select_candidate(const EstimateSet& set,
                                    const std::vector<std::uint64_t>& counts,
                                    Variant variant, int n,
                                    ChannelKind model) {
  if (set.candidates.size() < 2) return 0;

  auto log_likelihood = [&](const std::vector<double>& params) {
    std::vector<LinkChannel> links;
    links.reserve(params.size());
    for (double value : params) {
      const double safe = std::clamp(value, 0.0, 1.0);
      links.push_back(model == ChannelKind::BitFlip
                          ? LinkChannel::bit_flip(safe)
                          : LinkChannel::depolarizing(safe));
    }
    const StarNetwork star{std::move(links)};
    const OutcomeDistribution dist =
        variant == Variant::GHZ ? ghz_distribution(star) : z_distribution(star);
    double ll = 0.0;
    for (std::size_t x = 0; x < counts.size(); ++x)
      if (counts[x] > 0)
        ll += static_cast<double>(counts[x]) *
              std::log(std::max(dist.p[x], 1e-300));
    return ll;
  };

  const double l0 = log_likelihood(set.candidates[0]);
  const double l1 = log_likelihood(set.candidates[1]);
  const double tol = 1e-9 * (std::abs(l0) + std::abs(l1) + 1.0);
  if (std::abs(l0 - l1) <= tol) {
    double t0 = 0.0, t1 = 0.0;
    for (double v : set.candidates[0]) t0 += v;
    for (double v : set.candidates[1]) t1 += v;
    return t0 <= t1 ? 0 : 1;
  }
  return l0 > l1 ? 0 : 1;
}

}  // namespace qnt
