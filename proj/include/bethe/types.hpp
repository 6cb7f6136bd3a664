#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bethe {

using Complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

// ---------------------------------------------------------------------------
// Error taxonomy. Everything thrown by the library derives from Error so the
// CLI can map failures onto exit codes uniformly.
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A caller violated a documented precondition (bad N, wrong parity, ...).
struct PreconditionError : Error {
  using Error::Error;
};

/// An iterative kernel failed to converge or a residual check tripped.
struct NumericalError : Error {
  using Error::Error;
};

/// Input exceeds a hard capacity limit (dense-basis size, bond dimension).
struct CapacityError : Error {
  using Error::Error;
};

/// An internal consistency check failed (solution count, contract violation).
struct StructuralError : Error {
  using Error::Error;
};

/// A requested unique state is degenerate within tolerance.
struct DegeneracyError : Error {
  using Error::Error;
};

/// Signal: the generic Bethe machinery does not apply at U = 0; the caller
/// must switch to the free-fermion protocol.
struct UseFreeProtocol : Error {
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

/// Chain definition: N sites on a ring, hopping J, nearest-neighbor
/// interaction U. Site labels are 1-based and periodic (site N+1 == site 1).
struct ChainParams {
  int N = 0;
  double J = 1.0;
  double U = 0.0;

  ChainParams() = default;
  ChainParams(int n_sites, double hopping, double interaction)
      : N(n_sites), J(hopping), U(interaction) {
    validate();
  }

  void validate() const {
    if (N < 3) throw PreconditionError("ChainParams: N must be >= 3, got " + std::to_string(N));
  }

  /// U/J. Only defined for J != 0.
  double gamma() const {
    if (J == 0.0) throw PreconditionError("ChainParams: gamma undefined for J = 0");
    return U / J;
  }
};

/// Total-momentum sector k1 + k2 = 2*pi*n/N.
struct MomentumClass {
  int n = 0;
  int N = 0;

  MomentumClass(int n_, int N_) : n(n_), N(N_) {
    if (N < 3 || n < 0 || n >= N)
      throw PreconditionError("MomentumClass: need 0 <= n < N, N >= 3");
  }

  /// alpha_n = exp(2*pi*i*n/N), unit modulus by construction.
  Complex alpha() const { return std::polar(1.0, 2.0 * pi * n / N); }

  double total_momentum() const { return 2.0 * pi * n / N; }
};

enum class SolutionKind {
  Generic,     ///< distinct wavenumbers from the class polynomial
  Free,        ///< U = 0 plane-wave pair
  PairedEven,  ///< even-N adjacent-pair state with E = U
  Bound,       ///< complex-conjugate wavenumbers (incl. the real threshold limit)
  Confluent,   ///< derivative state at a multiple polynomial root (even N)
};

inline const char* to_string(SolutionKind k) {
  switch (k) {
    case SolutionKind::Generic: return "generic";
    case SolutionKind::Free: return "free";
    case SolutionKind::PairedEven: return "paired-even";
    case SolutionKind::Bound: return "bound";
    case SolutionKind::Confluent: return "confluent";
  }
  return "?";
}

/// One two-fermion eigenstate in Bethe form.
///
/// For Generic/Free/Bound solutions the Fock amplitudes are
///   a(m1,m2) = q1 e^{i k1 m1 + i k2 m2} + q2 e^{i k2 m1 + i k1 m2},  m1 < m2,
/// with (q1, q2) scaled so the state has unit norm. PairedEven and Confluent
/// states carry their own closed forms (see wavefunction::amplitudes).
struct BetheSolution {
  Complex k1{}, k2{};
  Complex q1{}, q2{};
  double E = 0.0;
  SolutionKind kind = SolutionKind::Generic;
  int momentum_class = 0;  ///< class index n, k1 + k2 = 2*pi*n/N (mod 2*pi)
};

}  // namespace bethe
