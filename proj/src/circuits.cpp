#include "bethe/circuits.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace bethe {

namespace {

double wrap_angle(double t) {
  if (t > pi) t -= 2.0 * pi;
  if (t <= -pi) t += 2.0 * pi;
  return t;
}

void format_angle(std::ostream& os, double a) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", a);
  os << buf;
}

}  // namespace

double givens_angle(double u_lo, double u_hi) {
  if (std::abs(u_lo) < 1e-300 && std::abs(u_hi) < 1e-300) return 0.0;
  return wrap_angle(2.0 * std::atan2(u_hi, u_lo));
}

void apply_gate_rows(Eigen::MatrixXd& M, const GivensGate& g) {
  const double c = std::cos(0.5 * g.theta), s = std::sin(0.5 * g.theta);
  const int r = g.j - 1;
  Eigen::RowVectorXd top = M.row(r);
  M.row(r) = c * top + s * M.row(r + 1);
  M.row(r + 1) = -s * top + c * M.row(r + 1);
}

void apply_schedule_rows(Eigen::MatrixXd& M, const GivensSchedule& s) {
  for (const GivensGate& g : s.gates) apply_gate_rows(M, g);
}

FoldResult fold_schedule(const Eigen::MatrixXd& Q) {
  const int N = static_cast<int>(Q.rows());
  if (Q.cols() != N) throw PreconditionError("fold_schedule: square matrix required");
  const double orth =
      (Q.transpose() * Q - Eigen::MatrixXd::Identity(N, N)).cwiseAbs().maxCoeff();
  if (orth > 1e-10)
    throw PreconditionError("fold_schedule: input not orthogonal (residual " +
                            std::to_string(orth) + ")");

  FoldResult out;
  out.schedule.direction = ScheduleDirection::Folding;
  out.schedule.gates.reserve(static_cast<std::size_t>(N) * (N - 1) / 2);
  Eigen::MatrixXd M = Q;
  for (int k = 1; k <= N - 1; ++k) {
    for (int j = N - 1; j >= k; --j) {
      GivensGate g{k, j, givens_angle(M(j - 1, k - 1), M(j, k - 1))};
      apply_gate_rows(M, g);
      out.schedule.gates.push_back(g);
    }
  }

  double worst = 0.0;
  int wr = 0, wc = 0;
  for (int r = 0; r < N; ++r)
    for (int c = 0; c < N; ++c)
      if (r != c && std::abs(M(r, c)) > worst) {
        worst = std::abs(M(r, c));
        wr = r;
        wc = c;
      }
  if (worst > 1e-10)
    throw NumericalError("fold_schedule: off-diagonal residual " + std::to_string(worst) +
                         " at (" + std::to_string(wr + 1) + "," + std::to_string(wc + 1) + ")");
  out.diagonal = M.diagonal();
  return out;
}

GivensSchedule unfold_sequence(const GivensSchedule& s) {
  if (s.direction != ScheduleDirection::Folding)
    throw PreconditionError("unfold_sequence: input must be a folding schedule");
  GivensSchedule out;
  out.direction = ScheduleDirection::Unfolding;
  out.gates.reserve(s.gates.size());
  for (auto it = s.gates.rbegin(); it != s.gates.rend(); ++it)
    out.gates.push_back({it->stage, it->j, -it->theta});
  return out;
}

std::vector<PairRotation> pair_cascade(const Eigen::VectorXd& alphas) {
  const double norm2 = alphas.squaredNorm();
  if (std::abs(norm2 - 1.0) > 1e-10)
    throw PreconditionError("pair_cascade: alphas not normalized (sum sq = " +
                            std::to_string(norm2) + ")");
  int last = static_cast<int>(alphas.size()) - 1;
  while (last >= 0 && std::abs(alphas[last]) <= 1e-12) --last;
  if (last < 0) throw PreconditionError("pair_cascade: all-zero alphas");

  std::vector<PairRotation> out;
  double running = alphas[0];  // coefficient sitting at omega_l before step l
  for (int l = 0; l < last; ++l) {
    const double beta = alphas[l + 1];
    const double phi = (std::abs(running) < 1e-300 && std::abs(beta) < 1e-300)
                           ? 0.0
                           : wrap_angle(2.0 * std::atan2(running, beta));
    const double c = std::cos(0.5 * phi), s = std::sin(0.5 * phi);
    // elimination invariant: the omega_l coefficient vanishes
    if (std::abs(c * running - s * beta) > 1e-12)
      throw NumericalError("pair_cascade: elimination failed at step " + std::to_string(l + 1));
    running = s * running + c * beta;
    out.push_back({l + 1, phi});
  }
  return out;
}

void save_schedule(std::ostream& os, const GivensSchedule& s) {
  for (const GivensGate& g : s.gates) {
    os << g.stage << ' ' << g.j << ' ';
    format_angle(os, g.theta);
    os << '\n';
  }
}

GivensSchedule load_schedule(std::istream& is, ScheduleDirection direction) {
  GivensSchedule out;
  out.direction = direction;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    GivensGate g;
    if (!(ls >> g.stage >> g.j >> g.theta))
      throw PreconditionError("load_schedule: malformed line '" + line + "'");
    out.gates.push_back(g);
  }
  return out;
}

void save_cascade(std::ostream& os, const std::vector<PairRotation>& c) {
  for (const PairRotation& r : c) {
    os << r.l << ' ';
    format_angle(os, r.phi);
    os << '\n';
  }
}

std::vector<PairRotation> load_cascade(std::istream& is) {
  std::vector<PairRotation> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    PairRotation r;
    if (!(ls >> r.l >> r.phi))
      throw PreconditionError("load_cascade: malformed line '" + line + "'");
    out.push_back(r);
  }
  return out;
}

}  // namespace bethe
