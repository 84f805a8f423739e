// SPDX-License-Identifier: Apache-2.0
//
// Exact outcome distributions of the Multicast circuit.
//
// The circuit sends a qubit (or one half of a Bell pair) through the root
// link to the hub, fans it out with n-2 CNOTs onto fresh |0> qubits, and
// forwards the n-1 resulting qubits through the leaf links.  Because every
// link applies a Pauli channel and the ideal output is diagonal in a fixed
// basis (computational for the single-qubit probe, GHZ for the Bell probe),
// each link's action reduces to a classical error event pair
//
//   (beta, phi) in {0,1}^2  with  P(0,0)=p_I, P(1,0)=p_X, P(1,1)=p_Y,
//                                 P(0,1)=p_Z,
//
// where beta is the X component (bit flip) and phi the Z component (phase
// flip).  Propagation through the CNOT fan-out gives, per shot:
//
//   leaf bit (relative to the probe)   x_i = beta_0 XOR beta_i
//   GHZ sign bit                       b   = XOR over all links of phi_l
//
// -- a root-link bit flip copies to every leaf through the fan-out, while
// any link's phase flip toggles the GHZ sign exactly once.  The outcome
// distribution is the pushforward of the independent per-link events.  For
// the sign bit we evaluate the XOR convolution in its Fourier form: with
//
//   f_l(beta, z) = sum_phi (-1)^(z*phi) P_l(beta, phi)        z in {0,1}
//   T_z(s)       = sum_beta0 f_0(beta0, z) prod_i f_i(s_i XOR beta0, z)
//
// the joint law is P(b, s) = (T_0(s) + (-1)^b T_1(s)) / 2.  Setting z = 0
// recovers the plain bit-flip statistics, which is all the Z variant needs.
//
// Both table builders are multilinear in each link's 4-weight vector; the
// Fisher-information code exploits this by re-running them with one link's
// weights replaced by derivative weights.
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qnt/error.hpp"
#include "qnt/network.hpp"

namespace qnt {

enum class Variant { Z, GHZ };

inline const char* variant_name(Variant v) {
  return v == Variant::Z ? "Z" : "GHZ";
}

// Exact probability table over measurement outcomes.
//
// Index encoding (fixed across the toolkit and the file formats):
//   Z   variant: index = the n-1 leaf bits, leaf 1 in the most significant
//                position; table size 2^(n-1).
//   GHZ variant: index = (b << (n-1)) | s with s_1 in the most significant
//                position of s; table size 2^n.
struct OutcomeDistribution {
  Variant variant = Variant::Z;
  int n = 0;              // network size (number of links / end-nodes)
  std::vector<double> p;  // probability per outcome index

  std::size_t size() const { return p.size(); }
};

namespace detail {

using Weights = std::array<double, 4>;  // (w_I, w_X, w_Y, w_Z)

// sum_beta0 f_0(beta0) prod_i f_i(x_i XOR beta0) for generic per-link
// two-point factors f_l(0), f_l(1).  Multilinear in every factor pair.
inline std::vector<double> fanout_table(
    const std::vector<std::array<double, 2>>& factors) {
  const int m = static_cast<int>(factors.size()) - 1;  // leaves
  std::vector<double> table(std::size_t{1} << m, 0.0);
  for (int beta0 = 0; beta0 < 2; ++beta0) {
    for (std::size_t x = 0; x < table.size(); ++x) {
      double prod = factors[0][static_cast<std::size_t>(beta0)];
      for (int i = 1; i <= m; ++i) {
        const int bit = static_cast<int>(x >> (m - i)) & 1;
        prod *= factors[static_cast<std::size_t>(i)]
                       [static_cast<std::size_t>(bit ^ beta0)];
      }
      table[x] += prod;
    }
  }
  return table;
}

// Z-variant table from raw per-link weight vectors (not necessarily
// normalized; derivative weights are fine).
inline std::vector<double> z_table(const std::vector<Weights>& w) {
  std::vector<std::array<double, 2>> factors(w.size());
  for (std::size_t l = 0; l < w.size(); ++l)
    factors[l] = {w[l][0] + w[l][3], w[l][1] + w[l][2]};  // no-flip, flip
  return fanout_table(factors);
}

// GHZ-variant table from raw per-link weight vectors.
inline std::vector<double> ghz_table(const std::vector<Weights>& w) {
  const int m = static_cast<int>(w.size()) - 1;
  const std::size_t s_count = std::size_t{1} << m;
  std::vector<double> table(s_count << 1, 0.0);
  for (int z = 0; z < 2; ++z) {
    std::vector<std::array<double, 2>> factors(w.size());
    for (std::size_t l = 0; l < w.size(); ++l) {
      if (z == 0)
        factors[l] = {w[l][0] + w[l][3], w[l][1] + w[l][2]};
      else
        factors[l] = {w[l][0] - w[l][3], w[l][1] - w[l][2]};
    }
    const std::vector<double> t = fanout_table(factors);
    for (std::size_t s = 0; s < s_count; ++s) {
      table[s] += 0.5 * t[s];                              // b = 0
      table[s_count + s] += (z == 0 ? 0.5 : -0.5) * t[s];  // b = 1
    }
  }
  // The signed Fourier sum can leave -0.0 or rounding dust at exact zeros.
  for (double& v : table)
    if (v < 0.0) v = (v > -1e-12) ? 0.0 : v;
  return table;
}

inline std::vector<Weights> link_weights(const StarNetwork& star) {
  std::vector<Weights> w(static_cast<std::size_t>(star.n()));
  for (int l = 0; l < star.n(); ++l) {
    const PauliProbs& q = pauli_probs(star.link(l));
    w[static_cast<std::size_t>(l)] = {q.p_I, q.p_X, q.p_Y, q.p_Z};
  }
  return w;
}

}  // namespace detail

// Distribution of the n-1 leaf Z-measurement bits.
inline OutcomeDistribution z_distribution(const StarNetwork& star) {
  OutcomeDistribution dist;
  dist.variant = Variant::Z;
  dist.n = star.n();
  dist.p = detail::z_table(detail::link_weights(star));
  return dist;
}

// Joint distribution of the GHZ-basis outcome (b, s).
inline OutcomeDistribution ghz_distribution(const StarNetwork& star) {
  OutcomeDistribution dist;
  dist.variant = Variant::GHZ;
  dist.n = star.n();
  dist.p = detail::ghz_table(detail::link_weights(star));
  return dist;
}

// --- outcome index helpers -------------------------------------------------

// Number of leaf bits carried by one outcome.
inline int leaf_bit_count(const OutcomeDistribution& dist) {
  return dist.n - 1;
}

// Bit of leaf i (1-based) inside the s/bits part of an outcome index.
inline int leaf_bit(std::uint32_t s_part, int i, int m) {
  return static_cast<int>(s_part >> (m - i)) & 1;
}

// Split a GHZ outcome index into (b, s).
inline std::pair<int, std::uint32_t> ghz_split(std::uint32_t index, int m) {
  return {static_cast<int>(index >> m),
          index & ((std::uint32_t{1} << m) - 1)};
}

}  // namespace qnt
