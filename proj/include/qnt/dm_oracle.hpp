// SPDX-License-Identifier: Apache-2.0
//
// Brute-force density-matrix simulation of the Multicast circuit.
//
// This is the ground-truth oracle for the symbolic outcome tables, the
// estimators, and the general QFIM.  Everything is dense complex algebra on
// at most 2^8 x 2^8 matrices; clarity beats speed here on purpose.
//
// Qubit ordering convention: qubit 0 is the most significant bit of the
// basis-state index, and the qubits are (root qubit if present, leaf 1, ...,
// leaf n-1).  The hub's transit qubit ends up at leaf 1.
#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "qnt/distribution.hpp"
#include "qnt/error.hpp"
#include "qnt/network.hpp"

namespace qnt {

using DensityMatrix = Eigen::MatrixXcd;

enum class Init { SingleZero, BellPair };

namespace dm {

inline int bit_shift(int qubit, int qubit_count) {
  return qubit_count - 1 - qubit;
}

// X on `qubit`: permutes basis indices on both sides.
inline DensityMatrix apply_x(const DensityMatrix& rho, int qubit,
                             int qubit_count) {
  const Eigen::Index dim = rho.rows();
  const Eigen::Index mask = Eigen::Index{1} << bit_shift(qubit, qubit_count);
  DensityMatrix out(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) out(r, c) = rho(r ^ mask, c ^ mask);
  return out;
}

// Z on `qubit`: flips the sign of coherences between differing bit values.
inline DensityMatrix apply_z(const DensityMatrix& rho, int qubit,
                             int qubit_count) {
  const Eigen::Index dim = rho.rows();
  const int shift = bit_shift(qubit, qubit_count);
  DensityMatrix out(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) {
      const bool flip = (((r >> shift) ^ (c >> shift)) & 1) != 0;
      out(r, c) = flip ? -rho(r, c) : rho(r, c);
    }
  return out;
}

// Pauli mixture p_I rho + p_X XrhoX + p_Y YrhoY + p_Z ZrhoZ on one qubit.
// Y rho Y = X(Z rho Z)X up to the cancelled global phase of Y = iXZ.
inline DensityMatrix apply_pauli_channel(const DensityMatrix& rho,
                                         const PauliProbs& w, int qubit,
                                         int qubit_count) {
  const DensityMatrix z = apply_z(rho, qubit, qubit_count);
  DensityMatrix out = w.p_I * rho + w.p_Z * z;
  if (w.p_X != 0.0) out += w.p_X * apply_x(rho, qubit, qubit_count);
  if (w.p_Y != 0.0) out += w.p_Y * apply_x(z, qubit, qubit_count);
  return out;
}

// CNOT as a basis permutation: flip the target bit where the control is 1.
inline DensityMatrix apply_cnot(const DensityMatrix& rho, int control,
                                int target, int qubit_count) {
  const Eigen::Index dim = rho.rows();
  const int cshift = bit_shift(control, qubit_count);
  const Eigen::Index tmask = Eigen::Index{1}
                             << bit_shift(target, qubit_count);
  auto perm = [&](Eigen::Index i) {
    return ((i >> cshift) & 1) ? (i ^ tmask) : i;
  };
  DensityMatrix out(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) out(perm(r), perm(c)) = rho(r, c);
  return out;
}

// Tensor `count` fresh |0> qubits onto the low-order side (appends them to
// the end of the qubit order).
inline DensityMatrix extend_with_zeros(const DensityMatrix& rho, int count) {
  const Eigen::Index dim = rho.rows();
  const Eigen::Index ext = dim << count;
  DensityMatrix out = DensityMatrix::Zero(ext, ext);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c)
      out(r << count, c << count) = rho(r, c);
  return out;
}

}  // namespace dm

// Runs the Multicast circuit exactly: root-link channel on the transit
// qubit, the hub's CNOT fan-out onto fresh |0> targets, then each leaf-link
// channel on its outbound qubit.  Output has n-1 qubits for SingleZero and
// n qubits (root qubit first) for BellPair.
inline DensityMatrix build_state(const StarNetwork& star, Init init) {
  const int n = star.n();
  if (n > 8)
    fail(Errc::dimension_too_large, "density-matrix oracle supports n <= 8");

  DensityMatrix rho;
  int qubits = 0;   // current register width
  int transit = 0;  // index of the hub's control qubit
  if (init == Init::SingleZero) {
    rho = DensityMatrix::Zero(2, 2);
    rho(0, 0) = 1.0;
    qubits = 1;
    transit = 0;
  } else {
    rho = DensityMatrix::Zero(4, 4);
    rho(0, 0) = rho(0, 3) = rho(3, 0) = rho(3, 3) = 0.5;  // (|00>+|11>)/sqrt2
    qubits = 2;
    transit = 1;
  }

  // Root link carries the transit qubit to the hub.
  rho = dm::apply_pauli_channel(rho, pauli_probs(star.link(0)), transit,
                                qubits);

  // Hub: n-2 CNOTs from the transit qubit onto fresh targets.
  rho = dm::extend_with_zeros(rho, n - 2);
  qubits += n - 2;
  for (int t = transit + 1; t < qubits; ++t)
    rho = dm::apply_cnot(rho, transit, t, qubits);

  // Leaf links: leaf i's qubit sits at register position transit + i - 1.
  for (int i = 1; i < n; ++i)
    rho = dm::apply_pauli_channel(rho, pauli_probs(star.link(i)),
                                  transit + i - 1, qubits);
  return rho;
}

// ---------------------------------------------------------------------------
// Measurement bases

struct MeasurementBasis {
  std::string label;        // "Z" or "GHZ"
  Eigen::MatrixXcd vectors; // column v = basis vector of outcome index v
};

// Computational basis on m qubits.
inline MeasurementBasis z_basis(int m) {
  if (m < 1 || m > 8)
    fail(Errc::dimension_too_large, "z_basis supports 1 <= m <= 8");
  MeasurementBasis basis;
  basis.label = "Z";
  basis.vectors =
      Eigen::MatrixXcd::Identity(Eigen::Index{1} << m, Eigen::Index{1} << m);
  return basis;
}

// GHZ basis on m qubits: column (b << (m-1)) | s holds
// (|0, s> + (-1)^b |1, ~s>) / sqrt(2).
inline MeasurementBasis ghz_basis(int m) {
  if (m < 2 || m > 8)
    fail(Errc::dimension_too_large, "ghz_basis supports 2 <= m <= 8");
  const Eigen::Index dim = Eigen::Index{1} << m;
  const Eigen::Index half = dim >> 1;
  MeasurementBasis basis;
  basis.label = "GHZ";
  basis.vectors = Eigen::MatrixXcd::Zero(dim, dim);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (Eigen::Index b = 0; b < 2; ++b)
    for (Eigen::Index s = 0; s < half; ++s) {
      const Eigen::Index col = (b << (m - 1)) | s;
      basis.vectors(s, col) = inv_sqrt2;                       // |0, s>
      basis.vectors(half + (s ^ (half - 1)), col) =            // |1, ~s>
          (b ? -inv_sqrt2 : inv_sqrt2);
    }
  return basis;
}

// Born-rule outcome table: P(v) = <v|rho|v>, with sub-1e-12 negative noise
// clipped and the table renormalized.
inline OutcomeDistribution measure_distribution(const DensityMatrix& rho,
                                                const MeasurementBasis& basis) {
  if (rho.rows() != basis.vectors.rows() || rho.rows() != rho.cols())
    fail(Errc::dimension_mismatch, "state and basis dimensions differ");
  const Eigen::VectorXd raw =
      (basis.vectors.adjoint() * rho * basis.vectors).diagonal().real();

  OutcomeDistribution dist;
  const int m = static_cast<int>(std::countr_zero(
      static_cast<std::uint64_t>(rho.rows())));
  if (basis.label == "GHZ") {
    dist.variant = Variant::GHZ;
    dist.n = m;
  } else {
    dist.variant = Variant::Z;
    dist.n = m + 1;
  }
  dist.p.resize(static_cast<std::size_t>(raw.size()));
  double total = 0.0;
  for (Eigen::Index i = 0; i < raw.size(); ++i) {
    const double v = raw[i] < 0.0 ? 0.0 : raw[i];
    dist.p[static_cast<std::size_t>(i)] = v;
    total += v;
  }
  for (double& v : dist.p) v /= total;
  return dist;
}

}  // namespace qnt
