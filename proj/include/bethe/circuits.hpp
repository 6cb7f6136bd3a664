#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

#include "bethe/types.hpp"

namespace bethe {

/// One next-neighbor mode rotation, acting on modes (j, j+1), 1-based.
/// stage is the row index of the folding pass that produced it.
struct GivensGate {
  int stage = 0;
  int j = 0;
  double theta = 0.0;
};

enum class ScheduleDirection { Folding, Unfolding };

struct GivensSchedule {
  std::vector<GivensGate> gates;  ///< application order, first entry first
  ScheduleDirection direction = ScheduleDirection::Folding;
};

/// Elimination angle: tan(theta/2) = u_hi / u_lo resolved by atan2 and
/// normalized into (-pi, pi]. Rotating the pair (u_lo, u_hi) by theta/2
/// zeroes the u_hi slot. A doubly-degenerate pivot gives theta = 0.
double givens_angle(double u_lo, double u_hi);

/// Rotate rows (g.j, g.j+1) of M by g.theta/2:
///   row_j'   =  cos(t/2) row_j + sin(t/2) row_{j+1}
///   row_j+1' = -sin(t/2) row_j + cos(t/2) row_{j+1}
/// This is the action of the mode rotation on the site coefficients.
void apply_gate_rows(Eigen::MatrixXd& M, const GivensGate& g);

void apply_schedule_rows(Eigen::MatrixXd& M, const GivensSchedule& s);

struct FoldResult {
  GivensSchedule schedule;    ///< N(N-1)/2 gates, stage-major, j descending
  Eigen::VectorXd diagonal;   ///< residual diagonal, entries +-1
};

/// Compile an orthogonal Q into next-neighbor rotations. Stage k eliminates
/// column k of Q bottom-up (rows N-1..k); entries eliminated at one stage
/// stay eliminated at all later stages. Applying the schedule to Q's rows
/// leaves a diagonal matrix of signs.
FoldResult fold_schedule(const Eigen::MatrixXd& Q);

/// Exact reversal: reversed gate order, negated angles. Composing the fold
/// and the unfold acts as the identity.
GivensSchedule unfold_sequence(const GivensSchedule& s);

/// Rotation in the plane of adjacent pair-occupation patterns
/// omega_l = |..0 11 0..> (pair at sites 2l-1, 2l) and omega_{l+1};
/// supported on the four nearest-neighbor sites 2l-1 .. 2l+2.
struct PairRotation {
  int l = 0;
  double phi = 0.0;
};

/// Cascade of pair rotations mapping the ladder state sum_j alphas_j omega_j
/// onto its last occupied Fock pattern: step l zeroes the omega_l coefficient
/// by rotating the accumulated amplitude into omega_{l+1},
/// tan(phi_l/2) = accumulated / alphas_{l+1}. Signed alphas are allowed
/// (folding signs); trailing magnitudes <= 1e-12 are trimmed, so a
/// single-pair state compiles to an empty cascade.
std::vector<PairRotation> pair_cascade(const Eigen::VectorXd& alphas);

// --- serialization: line-oriented text, one gate per line ------------------
// Givens lines are "stage j theta", pair rotations "l phi"; angles printed
// with 17 significant digits (exact double round-trip).

void save_schedule(std::ostream& os, const GivensSchedule& s);
GivensSchedule load_schedule(std::istream& is, ScheduleDirection direction);
void save_cascade(std::ostream& os, const std::vector<PairRotation>& c);
std::vector<PairRotation> load_cascade(std::istream& is);

}  // namespace bethe
