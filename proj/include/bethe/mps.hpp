#pragma once

#include <Eigen/Dense>
#include <array>
#include <iosfwd>
#include <vector>

#include "bethe/circuits.hpp"
#include "bethe/types.hpp"

namespace bethe {

/// Canonical (Gamma-lambda) matrix product state of a length-N fermion chain,
/// physical dimension 2 per site.
///
/// lambdas[b], b = 0..N are the bond Schmidt vectors (boundary bonds have
/// dimension 1), each sorted descending with sum of squares 1. gammas[s][k],
/// s = 0..N-1, k in {0,1} is the site tensor block of shape
/// chi(b=s) x chi(b=s+1). Site s carries lambda_s on its left and
/// lambda_{s+1} on its right; amplitudes contract as
/// Gamma_1[k1] diag(lambda_1) Gamma_2[k2] ... diag(lambda_{N-1}) Gamma_N[kN].
struct CanonicalMps {
  int N = 0;
  double trunc_tol = 1e-12;
  int chi_max = 0;
  std::vector<Eigen::VectorXd> lambdas;                  // N+1 bonds
  std::vector<std::array<Eigen::MatrixXd, 2>> gammas;    // N sites
  double norm_drift = 0.0;  ///< accumulated |norm - 1| over gate updates

  int chi(int bond) const { return static_cast<int>(lambdas[bond].size()); }
};

/// Raw ladder-state tensors following the periodic even/odd pattern with
/// unnormalized bond vectors (the left boundary carries lambda^1 = (alpha_1, 1),
/// Gamma^1_{11} = Gamma^0_{12} = 1). Represents sum_j alphas_j |..0 11 0..>
/// exactly but does not satisfy the canonical invariants.
CanonicalMps ladder_pattern_mps(const Eigen::VectorXd& alphas, int N);

/// Full canonicalization sweep (SVD left-to-right, then right-to-left),
/// dropping singular values below max(trunc_tol, 1e-14 * sigma_max).
void canonicalize(CanonicalMps& mps);

/// Canonical MPS of the reduced paired state sum_j alphas_j |..0 11 0..>
/// (pair at sites 2j-1, 2j), N odd, sum alphas^2 = 1 (signs allowed).
CanonicalMps reduced_state_mps(const Eigen::VectorXd& alphas, int N,
                               double trunc_tol = 1e-12, int chi_max = 0);

/// Max orthonormality violation of the Gamma-lambda form over all sites
/// (left and right conditions, explicit contraction).
double canonical_residual(const CanonicalMps& mps);

/// Real 4x4 unitary on the occupation basis {|00>, |01>, |10>, |11>} of two
/// adjacent sites, index b = 2 n_left + n_right.
struct TwoSiteGate {
  Eigen::Matrix4d u;
};

/// Number-conserving two-site unitary of a mode rotation: identity on |00>
/// and |11>, the half-angle rotation on span{|01>, |10>} matching the
/// creation-operator update of the folding protocol.
TwoSiteGate gate_from_givens(const GivensGate& g);

/// Apply a two-site gate at sites (j, j+1), 1-based j. Re-canonicalizes the
/// affected bond by SVD; singular values below trunc_tol are discarded;
/// throws CapacityError if the required bond dimension exceeds chi_max.
void apply_two_site(CanonicalMps& mps, int j, const TwoSiteGate& gate);

/// Apply a four-nearest-neighbor pair rotation (sites 2l-1 .. 2l+2) by
/// merging the two site pairs into dimension-4 blocks, applying the 16x16
/// unitary as a next-neighbor gate, and unblocking via SVD.
void apply_four_site(CanonicalMps& mps, const PairRotation& r);

/// The 16x16 window unitary of a pair rotation (window basis n1 n2 n3 n4,
/// index 8 n1 + 4 n2 + 2 n3 + n4).
Eigen::MatrixXd pair_rotation_unitary(double phi);

/// Sequentially apply an unfolding schedule (reverse-ordered inverse Givens
/// gates) to the reduced-state MPS, producing the eigenstate network.
void unfold_to_eigenstate(CanonicalMps& mps, const GivensSchedule& s);

/// Block entropies S_L = -sum_k p_k ln p_k with p_k = (lambda_k^L)^2, in
/// nats, for L = 1..N-1. Refuses non-canonical states (residual > 1e-8).
std::vector<double> block_entropy_profile(const CanonicalMps& mps);

/// Full Fock-space vector (dimension 2^N), index bit s-1 (1-based site s)
/// = occupation, amplitude convention of site-ascending creation order.
Eigen::VectorXd contract_to_vector(const CanonicalMps& mps, int dense_limit = 20);

/// <n_s> for 1-based site s (canonical form required).
double site_density(const CanonicalMps& mps, int site);

/// sum_s <n_s>; 2 for every state in this artifact's pipelines.
double total_particle_number(const CanonicalMps& mps);

/// Overlap <a|b> of two states via dense contraction (small N only).
double dense_overlap(const CanonicalMps& a, const CanonicalMps& b);

// --- snapshot serialization: self-describing text, exact round-trip --------

void save_mps(std::ostream& os, const CanonicalMps& mps);
CanonicalMps load_mps(std::istream& is);

}  // namespace bethe
