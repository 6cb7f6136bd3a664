#pragma once

#include <Eigen/Dense>

#include "bethe/types.hpp"

namespace bethe {

/// Strictly upper-triangular real amplitude table a(m1, m2), m1 < m2,
/// normalized so that sum a^2 = 1. Site labels are 1-based.
struct UpperAmplitudes {
  int N = 0;
  Eigen::MatrixXd a;  // (N x N), only the strict upper triangle is populated

  double operator()(int m1, int m2) const {
    if (m1 < 1 || m2 < 1 || m1 > N || m2 > N || m1 >= m2) return 0.0;
    return a(m1 - 1, m2 - 1);
  }
};

/// Real antisymmetric coefficient matrix A(m, n) = a(m, n) - a(n, m) with
/// A = -A^T exact by construction and (1/2) ||A||_F^2 = 1 for unit states.
struct AntisymMatrix {
  Eigen::MatrixXd A;

  int N() const { return static_cast<int>(A.rows()); }
};

/// Complex Fock amplitudes of a Bethe solution over the two-particle basis
/// (lexicographic, see basis.hpp), unit norm. Works for every SolutionKind;
/// the bridge used by eigen-residual checks and by amplitudes() below.
Eigen::VectorXcd sector_vector_complex(const BetheSolution& sol, const ChainParams& params);

/// Real amplitude table of a (non-degenerate) eigenstate: rotates the complex
/// amplitudes by the global phase that minimizes the total imaginary weight,
/// checks the residual imaginary part is <= 1e-9 of the largest amplitude,
/// fixes the overall sign so the first nonzero amplitude in lexicographic
/// order is positive, and renormalizes.
///
/// Throws NumericalError when the state has no real form (degenerate or
/// complex-momentum-class input, typical for even-N excited states).
UpperAmplitudes amplitudes(const BetheSolution& sol, const ChainParams& params);

AntisymMatrix antisymmetrize(const UpperAmplitudes& a);

/// Dense state vector over the two-particle basis; entries equal a(m1, m2).
/// Capacity-limited to keep oracle costs bounded.
Eigen::VectorXd state_vector(const UpperAmplitudes& a, int dense_limit = 64);

/// Inverse bridge: amplitude table from any unit vector over the pair basis
/// (used by diagonalization-based pipelines).
UpperAmplitudes amplitudes_from_vector(const Eigen::VectorXd& v, int N);

}  // namespace bethe
