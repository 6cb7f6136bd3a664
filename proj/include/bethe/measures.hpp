#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "bethe/wavefunction.hpp"

namespace bethe {

/// Shannon/von Neumann entropy -sum p ln p in nats, with 0 ln 0 = 0.
/// Entries may dip to -1e-14 and the sum may deviate from 1 by up to 1e-8;
/// inputs are clipped and renormalized within those slacks.
double von_neumann(const Eigen::VectorXd& p);

struct TwoBodyEntropy {
  double as_written = 0.0;  ///< -sum alpha ln alpha (the headline value)
  double variant = 0.0;     ///< -sum alpha^2 ln alpha^2
};

/// Many-bodyness measure from the paired-mode coefficients. alpha_j >= 0,
/// sum alpha^2 = 1. Zero iff the state is a single-pair (free-fermion-like)
/// state. Both the amplitude-weighted reading and the probability-weighted
/// variant are reported.
TwoBodyEntropy two_body_entropy(const Eigen::VectorXd& alphas);

/// Seeded Haar-random orthogonal matrix (QR of a Gaussian matrix with the
/// R-diagonal sign fix).
Eigen::MatrixXd random_orthogonal(int n, std::uint64_t seed);

/// Max elementwise deviation of the alpha spectrum under `trials` random
/// single-body rotations A -> V A V^T. The spectrum is invariant; deviations
/// are numerical only (contract: <= 1e-9).
double single_body_invariance_check(const AntisymMatrix& A, int trials, std::uint64_t seed);

/// Aggregate entanglement report of one state.
struct EntropyReport {
  std::vector<double> block_profile;       ///< S_L, L = 1..N-1 (nats)
  double half_chain = 0.0;                 ///< S at L = (N-1)/2
  double two_body = 0.0;                   ///< -sum alpha ln alpha
  double two_body_variant = 0.0;           ///< -sum alpha^2 ln alpha^2
  std::vector<Eigen::VectorXd> schmidt_spectra;  ///< per cut, descending
};

}  // namespace bethe
