#pragma once

#include <Eigen/Dense>

#include "bethe/types.hpp"
#include "bethe/wavefunction.hpp"

namespace bethe::oracle {

/// y = H x over the two-particle basis, matrix-free. Hopping moves one
/// particle to an adjacent site (periodic wrap, fermionic signs from the
/// ordered-pair convention); the interaction term is diagonal and counts
/// nearest-neighbor adjacency.
void apply_hamiltonian(const ChainParams& params, const Eigen::VectorXd& x, Eigen::VectorXd& y);

/// Dense H over the two-particle basis. Real symmetric. N <= 64.
Eigen::MatrixXd dense_hamiltonian(const ChainParams& params);

/// ||H v - E v|| for a complex sector vector (residual checks).
double eigen_residual(const ChainParams& params, const Eigen::VectorXcd& v, double E);

enum class EigenMethod { Auto, Dense, Sparse };

struct GroundResult {
  double E0 = 0.0;
  double E1 = 0.0;
  Eigen::VectorXd vector;  ///< ground eigenvector over the pair basis
};

/// Two lowest eigenvalues and the ground vector. Dense diagonalization up to
/// N = 64; thick-restart Lanczos with a seeded start vector beyond (N <= 2000).
GroundResult exact_ground(const ChainParams& params, EigenMethod method = EigenMethod::Auto,
                          std::uint64_t seed = 12345);

/// Schmidt spectrum of a two-fermion state across the cut [1..L | L+1..N],
/// assembled from the antisymmetric amplitude matrix: singular values of the
/// L x (N-L) cross block (one particle on each side) plus the Frobenius
/// weights of the both-left / both-right blocks.
struct SectorSpectrum {
  int L = 0;
  Eigen::VectorXd sv_11;  ///< cross-block singular values, descending
  double w_20 = 0.0;      ///< both particles left of the cut
  double w_02 = 0.0;      ///< both particles right of the cut
  Eigen::VectorXd schmidt;  ///< merged values, descending
};

SectorSpectrum sector_schmidt(const AntisymMatrix& A, int L);

/// Von Neumann entropy (nats) of the squared Schmidt values.
double sector_entropy(const SectorSpectrum& s);

/// Brute-force reduced density matrix of sites [1..L] built from a dense
/// sector vector; returns the eigen-spectrum (descending) and entropy (nats).
/// Supports L = N (pure state, entropy 0). Capacity-limited to N <= 64.
struct PartialTraceResult {
  Eigen::VectorXd spectrum;
  double entropy = 0.0;
};

PartialTraceResult partial_trace_entropy(const Eigen::VectorXd& v, int L, int N);

}  // namespace bethe::oracle
