// SPDX-License-Identifier: Apache-2.0
//
// Star-network topology and per-link single-qubit Pauli noise.
//
// A star has n end-nodes: the root v_0 and n-1 leaves, all attached to a
// central hub v_n.  Link 0 is the root<->hub link; link i (1 <= i <= n-1) is
// the hub<->leaf_i link.  Every link carries one single-qubit Pauli channel
//
//   rho -> p_I rho + p_X X rho X + p_Y Y rho Y + p_Z Z rho Z.
//
// The depolarizing channel is the symmetric special case
// (1-theta) rho + theta/3 (X rho X + Y rho Y + Z rho Z); a bit-flip channel
// has only an X component.
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "qnt/error.hpp"

namespace qnt {

// ---------------------------------------------------------------------------
// Pauli weights

struct PauliProbs {
  double p_I = 1.0;
  double p_X = 0.0;
  double p_Y = 0.0;
  double p_Z = 0.0;

  // Probabilities must be nonnegative and sum to 1 (tolerance 1e-12); fail
  // fast at the data boundary instead of deep inside a distribution build.
  void validate() const {
    const double sum = p_I + p_X + p_Y + p_Z;
    if (!(std::abs(sum - 1.0) <= 1e-12))
      fail(Errc::invalid_argument,
           "Pauli weights must sum to 1, got " + std::to_string(sum));
    for (double p : {p_I, p_X, p_Y, p_Z})
      if (!(p >= -1e-15) || !(p <= 1.0 + 1e-12))
        fail(Errc::invalid_argument, "Pauli weight out of [0,1]");
  }
};

// ---------------------------------------------------------------------------
// Link channels

enum class ChannelKind { BitFlip, Depolarizing, GeneralPauli };

inline const char* channel_kind_name(ChannelKind k) {
  switch (k) {
    case ChannelKind::BitFlip: return "bit_flip";
    case ChannelKind::Depolarizing: return "depolarizing";
    case ChannelKind::GeneralPauli: return "general_pauli";
  }
  return "?";
}

class LinkChannel {
 public:
  static LinkChannel bit_flip(double p) {
    require_probability(p, "bit-flip p");
    LinkChannel c;
    c.kind_ = ChannelKind::BitFlip;
    c.param_ = p;
    c.probs_ = PauliProbs{1.0 - p, p, 0.0, 0.0};
    return c;
  }

  static LinkChannel depolarizing(double theta) {
    require_probability(theta, "depolarizing theta");
    LinkChannel c;
    c.kind_ = ChannelKind::Depolarizing;
    c.param_ = theta;
    c.probs_ = PauliProbs{1.0 - theta, theta / 3.0, theta / 3.0, theta / 3.0};
    return c;
  }

  static LinkChannel general_pauli(const PauliProbs& probs) {
    probs.validate();
    LinkChannel c;
    c.kind_ = ChannelKind::GeneralPauli;
    c.param_ = 0.0;
    c.probs_ = probs;
    return c;
  }

  ChannelKind kind() const { return kind_; }

  // Scalar channel parameter (p for bit-flip, theta for depolarizing).
  // GeneralPauli has no scalar parameterization.
  double parameter() const {
    if (kind_ == ChannelKind::GeneralPauli)
      fail(Errc::invalid_argument,
           "general Pauli channel has no scalar parameter");
    return param_;
  }

  // Same channel family with the scalar parameter replaced; used by
  // finite-difference derivatives and parameter sweeps.
  LinkChannel with_parameter(double value) const {
    switch (kind_) {
      case ChannelKind::BitFlip: return bit_flip(value);
      case ChannelKind::Depolarizing: return depolarizing(value);
      case ChannelKind::GeneralPauli: break;
    }
    fail(Errc::invalid_argument,
         "general Pauli channel has no scalar parameter");
  }

  const PauliProbs& probs() const { return probs_; }

 private:
  static void require_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0))
      fail(Errc::invalid_argument,
           std::string(what) + " must lie in [0,1], got " + std::to_string(p));
  }

  ChannelKind kind_ = ChannelKind::Depolarizing;
  double param_ = 0.0;
  PauliProbs probs_{};
};

// Pauli expansion of a channel: BitFlip(p) -> (1-p, p, 0, 0),
// Depolarizing(theta) -> (1-theta, theta/3, theta/3, theta/3),
// GeneralPauli passes through.
inline PauliProbs pauli_probs(const LinkChannel& channel) {
  return channel.probs();
}

// Probability that the transmitted qubit's Z-basis value flips: p_X + p_Y.
// For depolarizing(theta) this is 2*theta/3.
inline double flip_probability(const LinkChannel& channel) {
  const PauliProbs& w = channel.probs();
  return w.p_X + w.p_Y;
}

// Probability that the transmitted qubit's phase (GHZ sign bit) flips:
// p_Y + p_Z.  Equals flip_probability for depolarizing links by symmetry.
inline double phase_flip_probability(const LinkChannel& channel) {
  const PauliProbs& w = channel.probs();
  return w.p_Y + w.p_Z;
}

// d/dtheta of the Pauli weight vector for scalar channel families; lets the
// Fisher-information code differentiate outcome tables analytically (the
// tables are multilinear in each link's weight vector).
inline std::array<double, 4> pauli_weight_derivs(const LinkChannel& channel) {
  switch (channel.kind()) {
    case ChannelKind::BitFlip: return {-1.0, 1.0, 0.0, 0.0};
    case ChannelKind::Depolarizing:
      return {-1.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    case ChannelKind::GeneralPauli: break;
  }
  fail(Errc::invalid_argument,
       "general Pauli channel has no scalar parameter derivative");
}

// Reparameterization between the depolarizing parameter theta and the
// equivalent bit-flip description theta_f = 1 - 2*theta/3 (the no-flip
// weight seen by a |0> probe).
inline double depolarizing_to_flip(double theta) {
  if (!(theta >= 0.0 && theta <= 1.0))
    fail(Errc::invalid_argument, "theta must lie in [0,1]");
  return 1.0 - 2.0 * theta / 3.0;
}

// Inverse map; only theta_f >= 1/3 corresponds to a valid depolarizing
// probability, anything below is rejected as an invalid candidate.
inline double flip_to_depolarizing(double theta_f) {
  if (!(theta_f >= 1.0 / 3.0 && theta_f <= 1.0))
    fail(Errc::invalid_candidate,
         "a valid depolarizing probability requires theta_f in [1/3, 1]");
  return 3.0 * (1.0 - theta_f) / 2.0;
}

// ---------------------------------------------------------------------------
// Star networks

class StarNetwork {
 public:
  explicit StarNetwork(std::vector<LinkChannel> links)
      : links_(std::move(links)) {
    if (links_.size() < 3)
      fail(Errc::invalid_argument,
           "star network needs n >= 3 links (pairwise leaf statistics "
           "require at least two leaves)");
  }

  static StarNetwork uniform(int n, const LinkChannel& channel) {
    if (n < 3) fail(Errc::invalid_argument, "star network needs n >= 3");
    return StarNetwork(
        std::vector<LinkChannel>(static_cast<std::size_t>(n), channel));
  }

  static StarNetwork uniform_depolarizing(int n, double theta) {
    return uniform(n, LinkChannel::depolarizing(theta));
  }

  // Number of end-nodes (root + n-1 leaves); also the number of links.
  int n() const { return static_cast<int>(links_.size()); }

  // Link 0 is root<->hub; link i (i >= 1) is hub<->leaf_i.
  const LinkChannel& link(int l) const {
    if (l < 0 || l >= n()) fail(Errc::invalid_argument, "link index");
    return links_[static_cast<std::size_t>(l)];
  }

  const std::vector<LinkChannel>& links() const { return links_; }

  StarNetwork with_link(int l, const LinkChannel& channel) const {
    if (l < 0 || l >= n()) fail(Errc::invalid_argument, "link index");
    std::vector<LinkChannel> links = links_;
    links[static_cast<std::size_t>(l)] = channel;
    return StarNetwork(std::move(links));
  }

 private:
  std::vector<LinkChannel> links_;
};

}  // namespace qnt
