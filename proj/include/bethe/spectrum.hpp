#pragma once

#include <optional>
#include <vector>

#include "bethe/polyroots.hpp"
#include "bethe/types.hpp"

namespace bethe {

/// Coefficients (descending) of the class polynomial
///   (1 + alpha_n) z^N - gamma z^{N-1} + gamma alpha_n z - (1 + alpha_n),
/// whose roots z = e^{-i k1} parameterize the class-n eigenstates. For the
/// half-momentum class (2n = N, alpha_n = -1) the order drops and the reduced
/// polynomial z^{N-2} + 1 is returned instead.
Polynomial bethe_polynomial(const ChainParams& params, const MomentumClass& cls);

/// Build the eigenstate for one polynomial root: k1 from the principal
/// logarithm of z, k2 = 2 pi n/N - k1 (no re-wrapping), q2 = -q1 e^{i k2 N},
/// (q1, q2) scaled to unit norm. Refuses equal momenta and U = 0 input.
BetheSolution assemble_solution(Complex z, const MomentumClass& cls, const ChainParams& params);

/// U = 0 protocol: plane-wave pairs k = 2 pi j / N, 1 <= j1 < j2 <= N.
/// Exactly N(N-1)/2 mutually orthogonal solutions.
std::vector<BetheSolution> free_spectrum(const ChainParams& params);

/// The even-N adjacent-pair state (k = pi, E = U). Present iff N is even and
/// U != 0; an absent result is a valid return.
std::optional<BetheSolution> paired_even_state(const ChainParams& params);

/// The complete two-particle spectrum: exactly N(N-1)/2 states after
/// swap-deduplication, null-root removal, U = 0 routing, the reduced
/// half-momentum class, the paired-even state, and the confluent (multiple
/// root) states at threshold couplings. Throws StructuralError with per-class
/// diagnostics if the count comes out wrong.
std::vector<BetheSolution> enumerate_spectrum(const ChainParams& params);

enum class GroundSearch {
  FullScan,   ///< scan every momentum class (default)
  Heuristic,  ///< restrict to classes that won at a smaller odd N
};

/// Minimum-energy solution. Odd N only (real, non-degenerate ground state).
BetheSolution ground_state(const ChainParams& params,
                           GroundSearch search = GroundSearch::FullScan);

/// 2 J (cos k1 + cos k2); the imaginary part must vanish to 1e-10 relative.
double energy(Complex k1, Complex k2, double J);

/// E1 - E0 over the two-particle sector. Odd N.
double energy_gap(const ChainParams& params);

}  // namespace bethe
