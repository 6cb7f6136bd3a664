#include "bethe/youla.hpp"

#include <cmath>

namespace bethe {

namespace {

void check_antisymmetric(const Eigen::MatrixXd& A) {
  const double scale = A.cwiseAbs().maxCoeff();
  const double dev = (A + A.transpose()).cwiseAbs().maxCoeff();
  if (dev > 1e-13 * std::max(1.0, scale))
    throw PreconditionError("youla: input not antisymmetric (max |A + A^T| = " +
                            std::to_string(dev) + ")");
}

// Householder similarity reduction of a skew-symmetric matrix to tridiagonal
// form, T = P^T A P. The two-sided update collapses to a rank-2 correction
// because v^T A v = 0 for skew A.
void skew_tridiagonalize(Eigen::MatrixXd& A, Eigen::MatrixXd* P) {
  const int N = static_cast<int>(A.rows());
  if (P) *P = Eigen::MatrixXd::Identity(N, N);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(N), u(N), pv;
  for (int k = 0; k + 2 < N; ++k) {
    const int len = N - k - 1;
    Eigen::VectorXd x = A.col(k).segment(k + 1, len);
    const double xnorm = x.norm();
    if (xnorm < 1e-300) continue;
    double a0 = x[0];
    const double sign = (a0 >= 0.0) ? 1.0 : -1.0;
    x[0] += sign * xnorm;
    const double vnorm2 = x.squaredNorm();
    if (vnorm2 < 1e-300) continue;
    const double tau = 2.0 / vnorm2;

    v.setZero();
    v.segment(k + 1, len) = x;
    u.noalias() = tau * (A * v);
    A.noalias() += v * u.transpose();
    A.noalias() -= u * v.transpose();
    if (P) {
      pv.noalias() = (*P) * v;
      P->noalias() -= tau * pv * v.transpose();
    }
  }
}

struct Bidiag {
  Eigen::MatrixXd B;  // ceil(N/2) x floor(N/2), lower bidiagonal
  int m, k;
};

// Odd/even permutation folds the skew tridiagonal T (superdiagonal b_i) into
// [[0, B], [-B^T, 0]] with B(i, i) = b_{2i}, B(i+1, i) = -b_{2i+1}.
Bidiag fold_tridiagonal(const Eigen::MatrixXd& T) {
  const int N = static_cast<int>(T.rows());
  Bidiag out;
  out.m = (N + 1) / 2;
  out.k = N / 2;
  out.B = Eigen::MatrixXd::Zero(out.m, out.k);
  for (int i = 0; i + 1 < N; ++i) {
    const double b = 0.5 * (T(i, i + 1) - T(i + 1, i));
    if (i % 2 == 0)
      out.B(i / 2, i / 2) = b;
    else
      out.B(i / 2 + 1, (i - 1) / 2) = -b;
  }
  return out;
}

}  // namespace

Eigen::VectorXd youla_alphas(const AntisymMatrix& Am) {
  check_antisymmetric(Am.A);
  Eigen::MatrixXd A = Am.A;
  skew_tridiagonalize(A, nullptr);
  const Bidiag bd = fold_tridiagonal(A);
  if (bd.k == 0) return Eigen::VectorXd();
  Eigen::BDCSVD<Eigen::MatrixXd> svd(bd.B);
  return svd.singularValues();
}

YoulaFactors youla(const AntisymMatrix& Am) {
  check_antisymmetric(Am.A);
  const int N = Am.N();
  Eigen::MatrixXd T = Am.A, P;
  skew_tridiagonalize(T, &P);
  const Bidiag bd = fold_tridiagonal(T);
  const int m = bd.m, k = bd.k;

  Eigen::MatrixXd U = Eigen::MatrixXd::Identity(m, m);
  Eigen::MatrixXd V = Eigen::MatrixXd::Identity(k, k);
  Eigen::VectorXd sv = Eigen::VectorXd::Zero(k);
  if (k > 0) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(bd.B, Eigen::ComputeFullU | Eigen::ComputeFullV);
    U = svd.matrixU();
    V = svd.matrixV();
    sv = svd.singularValues();
  }

  // columns in permuted (odd-first) coordinates: pair j -> (u_j | 0), (0 | v_j)
  Eigen::MatrixXd Qp = Eigen::MatrixXd::Zero(N, N);
  for (int j = 0; j < k; ++j) {
    Qp.block(0, 2 * j, m, 1) = U.col(j);
    Qp.block(m, 2 * j + 1, k, 1) = V.col(j);
  }
  YoulaFactors f;
  f.kernel_columns.clear();
  for (int j = k; j < m; ++j) {
    const int col = 2 * k + (j - k);
    Qp.block(0, col, m, 1) = U.col(j);
    f.kernel_columns.push_back(col);
  }

  // undo the odd/even permutation, then the Householder basis
  Eigen::MatrixXd S(N, N);
  for (int i = 0; i < m; ++i) S.row(2 * i) = Qp.row(i);
  for (int j = 0; j < k; ++j) S.row(2 * j + 1) = Qp.row(m + j);
  f.Q = P * S;
  f.alphas = sv;

  // deterministic signs: first significant entry of each pair's left column
  // (and of each kernel column) is made positive; pair columns flip together
  for (int j = 0; j < k; ++j) {
    const double colmax = f.Q.col(2 * j).cwiseAbs().maxCoeff();
    for (int r = 0; r < N; ++r) {
      if (std::abs(f.Q(r, 2 * j)) > 1e-10 * std::max(1.0, colmax)) {
        if (f.Q(r, 2 * j) < 0.0) {
          f.Q.col(2 * j) *= -1.0;
          f.Q.col(2 * j + 1) *= -1.0;
        }
        break;
      }
    }
  }
  for (int c : f.kernel_columns) {
    const double colmax = f.Q.col(c).cwiseAbs().maxCoeff();
    for (int r = 0; r < N; ++r) {
      if (std::abs(f.Q(r, c)) > 1e-10 * std::max(1.0, colmax)) {
        if (f.Q(r, c) < 0.0) f.Q.col(c) *= -1.0;
        break;
      }
    }
  }

  // exit contracts
  const double orth = (f.Q.transpose() * f.Q - Eigen::MatrixXd::Identity(N, N))
                          .cwiseAbs()
                          .maxCoeff();
  if (orth > 1e-12)
    throw NumericalError("youla: orthogonality residual " + std::to_string(orth));
  const double anorm = Am.A.norm();
  const double rec = (f.Q * lambda_matrix(f) * f.Q.transpose() - Am.A).norm();
  if (rec > 1e-10 * std::max(1.0, anorm))
    throw NumericalError("youla: reconstruction residual " + std::to_string(rec) +
                         " (||A||_F = " + std::to_string(anorm) + ")");
  return f;
}

Eigen::MatrixXd lambda_matrix(const YoulaFactors& f) {
  const int N = f.N();
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(N, N);
  for (int j = 0; j < f.alphas.size(); ++j) {
    L(2 * j, 2 * j + 1) = f.alphas[j];
    L(2 * j + 1, 2 * j) = -f.alphas[j];
  }
  return L;
}

Eigen::MatrixXd paired_modes(const YoulaFactors& f) { return f.Q.transpose(); }

}  // namespace bethe
