#include "bethe/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "bethe/basis.hpp"

namespace bethe::oracle {

namespace {

inline int wrap_site(int s, int N) {
  if (s > N) return s - N;
  if (s < 1) return s + N;
  return s;
}

inline bool adjacent_on_ring(int m1, int m2, int N) {
  return (m2 - m1 == 1) || (m1 == 1 && m2 == N);
}

// Hop one particle from occupied site b to empty site a in the ordered pair
// (m1, m2); returns the target pair and the fermionic sign.
struct Hop {
  std::int64_t index;
  double sign;
};

inline Hop hop_target(int N, int m1, int m2, int b, int a) {
  const int r = (b == m1) ? m2 : m1;             // spectator particle
  const double sign_b = (b == m2) ? -1.0 : 1.0;  // particles below b
  const double sign_a = (a > r) ? -1.0 : 1.0;
  const int n1 = std::min(a, r), n2 = std::max(a, r);
  return {pair_index(N, n1, n2), sign_b * sign_a};
}

}  // namespace

void apply_hamiltonian(const ChainParams& params, const Eigen::VectorXd& x, Eigen::VectorXd& y) {
  const int N = params.N;
  const auto dim = pair_count(N);
  if (x.size() != dim) throw PreconditionError("apply_hamiltonian: dimension mismatch");
  y.setZero(dim);

  std::int64_t idx = 0;
  for (int m1 = 1; m1 < N; ++m1) {
    for (int m2 = m1 + 1; m2 <= N; ++m2, ++idx) {
      const double amp = x[idx];
      if (amp != 0.0) {
        if (params.U != 0.0 && adjacent_on_ring(m1, m2, N))
          y[idx] += params.U * amp;
        for (const int b : {m1, m2}) {
          for (const int step : {1, -1}) {
            const int a = wrap_site(b + step, N);
            if (a == m1 || a == m2) continue;
            const Hop h = hop_target(N, m1, m2, b, a);
            y[h.index] += params.J * h.sign * amp;
          }
        }
      }
    }
  }
}

Eigen::MatrixXd dense_hamiltonian(const ChainParams& params) {
  const int N = params.N;
  if (N > 64) throw CapacityError("dense_hamiltonian: N > 64");
  const auto dim = pair_count(N);
  Eigen::MatrixXd H(dim, dim);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(dim), col(dim);
  for (std::int64_t j = 0; j < dim; ++j) {
    e[j] = 1.0;
    apply_hamiltonian(params, e, col);
    H.col(j) = col;
    e[j] = 0.0;
  }
  return H;
}

double eigen_residual(const ChainParams& params, const Eigen::VectorXcd& v, double E) {
  Eigen::VectorXd xr = v.real(), xi = v.imag(), yr, yi;
  apply_hamiltonian(params, xr, yr);
  apply_hamiltonian(params, xi, yi);
  yr -= E * xr;
  yi -= E * xi;
  return std::sqrt(yr.squaredNorm() + yi.squaredNorm());
}

namespace {

GroundResult dense_ground(const ChainParams& params) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_hamiltonian(params));
  GroundResult out;
  out.E0 = es.eigenvalues()[0];
  out.E1 = es.eigenvalues()[1];
  out.vector = es.eigenvectors().col(0);
  return out;
}

// Thick-restart Lanczos for the two lowest eigenpairs. The projected matrix
// is rebuilt from the Gram-Schmidt coefficients each step, which keeps the
// restart bookkeeping trivial and the basis orthonormal to machine precision.
GroundResult sparse_ground(const ChainParams& params, std::uint64_t seed) {
  const auto dim = pair_count(params.N);
  const int m_max = static_cast<int>(std::min<std::int64_t>(dim, 48));
  const int k_keep = std::min(12, m_max - 4 > 2 ? m_max - 4 : 2);
  const double tol = 1e-10;
  const int max_cycles = 400;

  Eigen::MatrixXd V(dim, m_max);
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m_max, m_max);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd v(dim);
  for (std::int64_t i = 0; i < dim; ++i) v[i] = gauss(rng);
  v.normalize();
  V.col(0) = v;

  int j = 0;  // active column
  Eigen::VectorXd w(dim), h, h2;
  GroundResult out;

  for (int cycle = 0; cycle < max_cycles; ++cycle) {
    // Lanczos steps until the basis is full
    while (j < m_max) {
      apply_hamiltonian(params, V.col(j), w);
      auto Vj = V.leftCols(j + 1);
      h = Vj.transpose() * w;
      w.noalias() -= Vj * h;
      h2 = Vj.transpose() * w;  // second Gram-Schmidt pass
      w.noalias() -= Vj * h2;
      h += h2;
      T.col(j).head(j + 1) = h;
      T.row(j).head(j + 1) = h.transpose();
      const double beta = w.norm();
      if (j + 1 < m_max) {
        if (beta < 1e-14) {
          // invariant subspace; fill with a fresh random direction
          for (std::int64_t i = 0; i < dim; ++i) w[i] = gauss(rng);
          auto Vb = V.leftCols(j + 1);
          w.noalias() -= Vb * (Vb.transpose() * w).eval();
          w.normalize();
          V.col(j + 1) = w;
        } else {
          V.col(j + 1) = w / beta;
          T(j + 1, j) = T(j, j + 1) = beta;
        }
      }
      ++j;
    }

    // Rayleigh-Ritz on the filled basis
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T.topLeftCorner(j, j));
    const auto& theta = es.eigenvalues();
    const auto& Y = es.eigenvectors();

    const int nk = std::min(k_keep, j);
    Eigen::MatrixXd W = V.leftCols(j) * Y.leftCols(nk);

    // explicit residuals for the two lowest Ritz pairs
    Eigen::VectorXd r0(dim), r1(dim);
    apply_hamiltonian(params, W.col(0), r0);
    r0 -= theta[0] * W.col(0);
    apply_hamiltonian(params, W.col(1), r1);
    r1 -= theta[1] * W.col(1);
    if (r0.norm() <= tol && r1.norm() <= tol) {
      out.E0 = theta[0];
      out.E1 = theta[1];
      out.vector = W.col(0);
      return out;
    }

    // thick restart: keep nk Ritz vectors, continue with a fresh direction
    V.leftCols(nk) = W;
    T.setZero();
    T.topLeftCorner(nk, nk) = theta.head(nk).asDiagonal();
    // seed the next Lanczos direction with the dominant residual
    w = (r0.norm() >= r1.norm()) ? r0 : r1;
    auto Vk = V.leftCols(nk);
    w.noalias() -= Vk * (Vk.transpose() * w).eval();
    w.noalias() -= Vk * (Vk.transpose() * w).eval();
    const double beta = w.norm();
    if (beta < 1e-14) {
      for (std::int64_t i = 0; i < dim; ++i) w[i] = gauss(rng);
      w.noalias() -= Vk * (Vk.transpose() * w).eval();
      w.normalize();
      V.col(nk) = w;
    } else {
      V.col(nk) = w / beta;
    }
    j = nk;
  }
  throw NumericalError("exact_ground: Lanczos failed to reach residual 1e-10");
}

}  // namespace

GroundResult exact_ground(const ChainParams& params, EigenMethod method, std::uint64_t seed) {
  params.validate();
  if (params.N > 2000) throw CapacityError("exact_ground: N > 2000");
  const bool dense_ok = params.N <= 64;
  switch (method) {
    case EigenMethod::Dense:
      if (!dense_ok) throw CapacityError("exact_ground: dense limited to N <= 64");
      return dense_ground(params);
    case EigenMethod::Sparse:
      return sparse_ground(params, seed);
    case EigenMethod::Auto:
    default:
      return dense_ok ? dense_ground(params) : sparse_ground(params, seed);
  }
}

SectorSpectrum sector_schmidt(const AntisymMatrix& Am, int L) {
  const int N = Am.N();
  if (L < 1 || L > N - 1) throw PreconditionError("sector_schmidt: cut must satisfy 1 <= L <= N-1");
  const auto& A = Am.A;
  const int R = N - L;

  SectorSpectrum out;
  out.L = L;

  // both-left / both-right weights: upper triangles of the diagonal blocks
  double w20sq = 0.0, w02sq = 0.0;
  for (int m = 0; m < L; ++m)
    for (int n = m + 1; n < L; ++n) w20sq += A(m, n) * A(m, n);
  for (int m = L; m < N; ++m)
    for (int n = m + 1; n < N; ++n) w02sq += A(m, n) * A(m, n);
  out.w_20 = std::sqrt(w20sq);
  out.w_02 = std::sqrt(w02sq);

  // cross block: one particle each side; singular values from the Gram matrix
  // on the smaller side (values only, squaring is safe at these tolerances)
  Eigen::MatrixXd C = A.block(0, L, L, R);
  Eigen::MatrixXd G = (L <= R) ? Eigen::MatrixXd(C * C.transpose())
                               : Eigen::MatrixXd(C.transpose() * C);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G, Eigen::EigenvaluesOnly);
  const int ns = static_cast<int>(G.rows());
  out.sv_11.resize(ns);
  for (int i = 0; i < ns; ++i)
    out.sv_11[i] = std::sqrt(std::max(0.0, es.eigenvalues()[ns - 1 - i]));

  out.schmidt.resize(ns + 2);
  out.schmidt.head(ns) = out.sv_11;
  out.schmidt[ns] = out.w_20;
  out.schmidt[ns + 1] = out.w_02;
  std::sort(out.schmidt.data(), out.schmidt.data() + out.schmidt.size(), std::greater<double>());
  return out;
}

double sector_entropy(const SectorSpectrum& s) {
  double S = 0.0;
  for (Eigen::Index i = 0; i < s.schmidt.size(); ++i) {
    const double p = s.schmidt[i] * s.schmidt[i];
    if (p > 0.0) S -= p * std::log(p);
  }
  return S;
}

PartialTraceResult partial_trace_entropy(const Eigen::VectorXd& v, int L, int N) {
  if (N > 64) throw CapacityError("partial_trace_entropy: N > 64");
  if (L < 1 || L > N) throw PreconditionError("partial_trace_entropy: need 1 <= L <= N");
  if (v.size() != pair_count(N)) throw PreconditionError("partial_trace_entropy: size mismatch");

  // Left-block configurations with <= 2 particles: vacuum, singles, pairs.
  const int n_single = L;
  const auto n_pair = pair_count(L);
  const auto dim_l = 1 + n_single + n_pair;
  auto left_single = [&](int x) { return 1 + (x - 1); };
  auto left_pair = [&](int x1, int x2) { return 1 + n_single + pair_index(L, x1, x2); };

  Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(dim_l, dim_l);

  // rho(l, l') = sum_r psi[l (x) r] psi[l' (x) r]; the ordered-pair basis
  // factorizes with +1 signs because left operators precede right operators.
  // vacuum-right: both particles left
  for (int x1 = 1; x1 < L; ++x1)
    for (int x2 = x1 + 1; x2 <= L; ++x2)
      for (int y1 = 1; y1 < L; ++y1)
        for (int y2 = y1 + 1; y2 <= L; ++y2)
          rho(left_pair(x1, x2), left_pair(y1, y2)) +=
              v[pair_index(N, x1, x2)] * v[pair_index(N, y1, y2)];
  // single-right r: one particle each side
  for (int r = L + 1; r <= N; ++r)
    for (int x = 1; x <= L; ++x)
      for (int y = 1; y <= L; ++y)
        rho(left_single(x), left_single(y)) += v[pair_index(N, x, r)] * v[pair_index(N, y, r)];
  // pair-right: both particles right
  double vac = 0.0;
  for (int r1 = L + 1; r1 < N; ++r1)
    for (int r2 = r1 + 1; r2 <= N; ++r2) vac += v[pair_index(N, r1, r2)] * v[pair_index(N, r1, r2)];
  rho(0, 0) = vac;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rho, Eigen::EigenvaluesOnly);
  PartialTraceResult out;
  out.spectrum.resize(dim_l);
  for (Eigen::Index i = 0; i < dim_l; ++i) out.spectrum[i] = es.eigenvalues()[dim_l - 1 - i];
  for (Eigen::Index i = 0; i < dim_l; ++i) {
    const double p = out.spectrum[i];
    if (p > 1e-15) out.entropy -= p * std::log(p);
  }
  return out;
}

}  // namespace bethe::oracle
