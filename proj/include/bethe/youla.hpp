#pragma once

#include <Eigen/Dense>
#include <vector>

#include "bethe/wavefunction.hpp"

namespace bethe {

/// Canonical paired form of a real antisymmetric matrix: A = Q Lambda Q^T
/// with Q orthogonal and Lambda built from 2x2 blocks [[0, a_j], [-a_j, 0]],
/// a_j >= 0 sorted descending; column pair (2j, 2j+1) of Q belongs to a_j
/// (0-based). For odd N the unpaired kernel column sits last.
struct YoulaFactors {
  Eigen::MatrixXd Q;
  Eigen::VectorXd alphas;           ///< length floor(N/2), descending, >= 0
  std::vector<int> kernel_columns;  ///< 0-based indices of unpaired columns

  int N() const { return static_cast<int>(Q.rows()); }
};

/// Factor A = Q Lambda Q^T. Orthogonal tridiagonalization (Householder)
/// followed by the odd/even fold of the skew tridiagonal into a bidiagonal
/// SVD. Validates antisymmetry on entry and orthogonality/reconstruction on
/// exit (NumericalError with residuals on failure).
YoulaFactors youla(const AntisymMatrix& A);

/// Coefficients a_j only (no Q accumulation, no validation passes); same
/// values as youla(A).alphas. Used by large parameter scans.
Eigen::VectorXd youla_alphas(const AntisymMatrix& A);

/// The block matrix Lambda of the factorization.
Eigen::MatrixXd lambda_matrix(const YoulaFactors& f);

/// Mode matrix in the row-major arrangement f^+ = Q^T c^+: row j holds the
/// site coefficients of mode j, so the paired state sum_j a_j f^+_{2j} f^+_{2j+1} |0>
/// reproduces A = Q Lambda Q^T.
Eigen::MatrixXd paired_modes(const YoulaFactors& f);

}  // namespace bethe
