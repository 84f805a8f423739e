// SPDX-License-Identifier: Apache-2.0
//
// Fisher information of the Multicast outcome statistics.
//
// classical_fim differentiates the exact outcome tables analytically: the
// tables are multilinear in each link's Pauli weight vector and the weights
// are affine in the link's scalar parameter, so dP/dtheta_l is the same
// table built with link l's weights replaced by their derivative vector.
//
// qfim_general computes the full quantum Fisher information of the
// distributed state from its spectral decomposition,
//
//   F_jk = sum_{i,m : lambda_i + lambda_m > cut}
//            2 Re( <e_i|d_j rho|e_m> <e_m|d_k rho|e_i> ) / (lambda_i +
//            lambda_m),
//
// with d_j rho from central finite differences.  For Multicast states the
// eigenbasis is parameter-independent (computational / GHZ basis), which is
// why the cheap classical path equals the QFIM -- the agreement of the two
// implementations is a core correctness check, not an assumption.
#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "qnt/distribution.hpp"
#include "qnt/dm_oracle.hpp"
#include "qnt/error.hpp"
#include "qnt/network.hpp"

namespace qnt {

struct FisherMatrix {
  Eigen::MatrixXd entries;  // symmetric, indexed by theta_0..theta_{n-1}
};

// Classical FIM of the exact outcome distribution:
// F_jk = sum_x dP_j(x) dP_k(x) / P(x).
inline FisherMatrix classical_fim(const StarNetwork& star, Variant variant) {
  const int n = star.n();
  const std::vector<detail::Weights> weights = detail::link_weights(star);
  auto table = [&](const std::vector<detail::Weights>& w) {
    return variant == Variant::GHZ ? detail::ghz_table(w)
                                   : detail::z_table(w);
  };

  const std::vector<double> p = table(weights);
  std::vector<std::vector<double>> grad(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    std::vector<detail::Weights> w = weights;
    w[static_cast<std::size_t>(j)] = pauli_weight_derivs(star.link(j));
    grad[static_cast<std::size_t>(j)] = table(w);
  }

  FisherMatrix fim;
  fim.entries = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (p[x] < 1e-14) {
      // Outcomes with vanishing probability but live gradient make the FIM
      // diverge (parameter boundaries such as theta_l = 0).
      for (int j = 0; j < n; ++j)
        if (std::abs(grad[static_cast<std::size_t>(j)][x]) > 1e-12)
          fail(Errc::singular_distribution,
               "outcome with zero probability and nonzero sensitivity");
      continue;
    }
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k)
        fim.entries(j, k) += grad[static_cast<std::size_t>(j)][x] *
                             grad[static_cast<std::size_t>(k)][x] / p[x];
  }
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < j; ++k) fim.entries(j, k) = fim.entries(k, j);
  return fim;
}

// Quantum FIM via the spectral (SLD) formula on the dm-oracle state.
inline FisherMatrix qfim_general(const StarNetwork& star, Init init) {
  const int n = star.n();
  if (n > 7)
    fail(Errc::dimension_too_large, "general QFIM supports n <= 7");

  const double h = 1e-5;
  const DensityMatrix rho = build_state(star, init);
  std::vector<DensityMatrix> drho;
  drho.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const LinkChannel& link = star.link(j);
    const double theta = link.parameter();
    const DensityMatrix hi =
        build_state(star.with_link(j, link.with_parameter(theta + h)), init);
    const DensityMatrix lo =
        build_state(star.with_link(j, link.with_parameter(theta - h)), init);
    drho.push_back((hi - lo) / (2.0 * h));
  }

  Eigen::SelfAdjointEigenSolver<DensityMatrix> es(rho);
  const Eigen::VectorXd lambda = es.eigenvalues();
  const Eigen::MatrixXcd& v = es.eigenvectors();
  std::vector<Eigen::MatrixXcd> a;
  a.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    a.push_back(v.adjoint() * drho[static_cast<std::size_t>(j)] * v);

  constexpr double lambda_cut = 1e-10;
  const Eigen::Index dim = rho.rows();
  FisherMatrix fim;
  fim.entries = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = j; k < n; ++k) {
      double sum = 0.0;
      for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index m = 0; m < dim; ++m) {
          const double denom = lambda[i] + lambda[m];
          if (denom <= lambda_cut) continue;
          sum += 2.0 *
                 (a[static_cast<std::size_t>(j)](i, m) *
                  a[static_cast<std::size_t>(k)](m, i))
                     .real() /
                 denom;
        }
      fim.entries(j, k) = sum;
      fim.entries(k, j) = sum;
    }
  return fim;
}

// Cramer-Rao bound: trace of the FIM inverse, computed from the spectrum so
// near-singular matrices are detected rather than inverted blindly.
inline double qcrb(const FisherMatrix& fim) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(fim.entries);
  const Eigen::VectorXd lambda = es.eigenvalues();  // ascending
  const double lo = lambda[0];
  const double hi = lambda[lambda.size() - 1];
  if (!(lo > 0.0) || hi / lo >= 1e12)
    fail(Errc::singular_fim,
         "Fisher matrix is singular or numerically ill-conditioned");
  double trace_inv = 0.0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) trace_inv += 1.0 / lambda[i];
  return trace_inv;
}

}  // namespace qnt
