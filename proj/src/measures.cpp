#include "bethe/measures.hpp"

#include <cmath>
#include <random>

#include "bethe/youla.hpp"

namespace bethe {

double von_neumann(const Eigen::VectorXd& p) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p[i] < -1e-14)
      throw PreconditionError("von_neumann: negative probability " + std::to_string(p[i]));
    sum += std::max(p[i], 0.0);
  }
  if (std::abs(sum - 1.0) > 1e-8)
    throw PreconditionError("von_neumann: probabilities sum to " + std::to_string(sum));
  double S = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const double q = std::max(p[i], 0.0) / sum;
    if (q > 0.0) S -= q * std::log(q);
  }
  return S;
}

TwoBodyEntropy two_body_entropy(const Eigen::VectorXd& alphas) {
  double n2 = 0.0;
  for (Eigen::Index i = 0; i < alphas.size(); ++i) {
    if (alphas[i] < 0.0)
      throw PreconditionError("two_body_entropy: negative alpha " + std::to_string(alphas[i]));
    n2 += alphas[i] * alphas[i];
  }
  if (std::abs(n2 - 1.0) > 1e-10)
    throw PreconditionError("two_body_entropy: sum alpha^2 = " + std::to_string(n2));
  TwoBodyEntropy out;
  for (Eigen::Index i = 0; i < alphas.size(); ++i) {
    const double a = alphas[i];
    if (a > 0.0) {
      out.as_written -= a * std::log(a);
      out.variant -= a * a * std::log(a * a);
    }
  }
  return out;
}

Eigen::MatrixXd random_orthogonal(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd G(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) G(i, j) = gauss(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
  Eigen::MatrixXd Q = qr.householderQ();
  const Eigen::MatrixXd R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (R(j, j) < 0.0) Q.col(j) *= -1.0;
  return Q;
}

double single_body_invariance_check(const AntisymMatrix& A, int trials, std::uint64_t seed) {
  const Eigen::VectorXd ref = youla_alphas(A);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Eigen::MatrixXd V = random_orthogonal(A.N(), seed + static_cast<std::uint64_t>(t));
    AntisymMatrix rotated;
    rotated.A = V * A.A * V.transpose();
    // symmetrize away the fp skew drift so the youla contract holds exactly
    rotated.A = 0.5 * (rotated.A - rotated.A.transpose()).eval();
    const Eigen::VectorXd a = youla_alphas(rotated);
    worst = std::max(worst, (a - ref).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace bethe
