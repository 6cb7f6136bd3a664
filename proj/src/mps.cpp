#include "bethe/mps.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace bethe {

namespace {

Eigen::VectorXd safe_inverse(const Eigen::VectorXd& lam) {
  Eigen::VectorXd inv(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    inv[i] = (lam[i] > 1e-14) ? 1.0 / lam[i] : 0.0;
  return inv;
}

int effective_rank(const Eigen::VectorXd& sv, double trunc_tol) {
  if (sv.size() == 0) return 0;
  const double floor = std::max(trunc_tol, 1e-14 * sv[0]);
  int r = 0;
  while (r < sv.size() && sv[r] > floor) ++r;
  return std::max(r, 1);
}

void check_chi(int required, int chi_max) {
  if (chi_max > 0 && required > chi_max)
    throw CapacityError("bond dimension overflow: required chi = " + std::to_string(required) +
                        " exceeds chi_max = " + std::to_string(chi_max));
}

int default_chi_max(int N) { return 2 + (N + 1) / 2; }

}  // namespace

// ---------------------------------------------------------------------------
// Ladder pattern construction
// ---------------------------------------------------------------------------

namespace {

// Bond channels of the ladder pattern. Reading the chain left to right, a
// configuration is either still waiting for its pair (W; split into W3/W4 on
// even bonds by whether the pair starts at the very next site), inside the
// straddling pair (I, carries the alpha weight), just completed at the even
// site (C), or done (D).
enum class Ch { D, I, W, C, W3, W4 };

struct BondSpec {
  std::vector<Ch> ch;
  Eigen::VectorXd lam;
  int find(Ch c) const {
    for (std::size_t i = 0; i < ch.size(); ++i)
      if (ch[i] == c) return static_cast<int>(i);
    return -1;
  }
};

}  // namespace

CanonicalMps ladder_pattern_mps(const Eigen::VectorXd& alphas, int N) {
  if (N < 3 || N % 2 == 0) throw PreconditionError("ladder_pattern_mps: odd N >= 3 required");
  const int L = (N - 1) / 2;
  if (alphas.size() != L)
    throw PreconditionError("ladder_pattern_mps: need floor(N/2) = " + std::to_string(L) +
                            " alphas");

  std::vector<BondSpec> bonds(N + 1);
  bonds[0].ch = {Ch::D};  // placeholder single channel
  bonds[0].lam = Eigen::VectorXd::Ones(1);
  bonds[N] = bonds[0];
  for (int b = 1; b < N; ++b) {
    BondSpec& s = bonds[b];
    std::vector<double> lam;
    if (b % 2 == 1) {
      const int t = (b + 1) / 2;  // straddling pair index
      if (t >= 2) { s.ch.push_back(Ch::D); lam.push_back(1.0); }
      s.ch.push_back(Ch::I);
      lam.push_back(alphas[t - 1]);
      if (t <= L - 1) { s.ch.push_back(Ch::W); lam.push_back(1.0); }
    } else {
      const int t = b / 2;  // pair completed at site 2t
      s.ch.push_back(Ch::D);
      lam.push_back(1.0);
      s.ch.push_back(Ch::C);
      lam.push_back(1.0);
      if (t <= L - 1) { s.ch.push_back(Ch::W3); lam.push_back(1.0); }
      if (t <= L - 2) { s.ch.push_back(Ch::W4); lam.push_back(1.0); }
    }
    s.lam = Eigen::Map<Eigen::VectorXd>(lam.data(), lam.size());
  }

  CanonicalMps mps;
  mps.N = N;
  mps.chi_max = 0;
  mps.lambdas.resize(N + 1);
  mps.gammas.resize(N);
  for (int b = 0; b <= N; ++b) mps.lambdas[b] = bonds[b].lam;

  for (int s = 1; s <= N; ++s) {
    const BondSpec& in = bonds[s - 1];
    const BondSpec& out = bonds[s];
    Eigen::MatrixXd g0 = Eigen::MatrixXd::Zero(in.ch.size(), out.ch.size());
    Eigen::MatrixXd g1 = g0;
    if (s == 1) {
      g1(0, out.find(Ch::I)) = 1.0;
      if (out.find(Ch::W) >= 0) g0(0, out.find(Ch::W)) = 1.0;
    } else if (s == N) {
      g0(in.find(Ch::D), 0) = 1.0;
      g0(in.find(Ch::C), 0) = 1.0;
    } else if (s % 2 == 0) {
      if (in.find(Ch::D) >= 0) g0(in.find(Ch::D), out.find(Ch::D)) = 1.0;
      if (in.find(Ch::W) >= 0 && out.find(Ch::W3) >= 0)
        g0(in.find(Ch::W), out.find(Ch::W3)) = 1.0;
      if (in.find(Ch::W) >= 0 && out.find(Ch::W4) >= 0)
        g0(in.find(Ch::W), out.find(Ch::W4)) = 1.0;
      g1(in.find(Ch::I), out.find(Ch::C)) = 1.0;
    } else {
      g0(in.find(Ch::D), out.find(Ch::D)) = 1.0;
      g0(in.find(Ch::C), out.find(Ch::D)) = 1.0;
      if (in.find(Ch::W4) >= 0 && out.find(Ch::W) >= 0)
        g0(in.find(Ch::W4), out.find(Ch::W)) = 1.0;
      if (in.find(Ch::W3) >= 0) g1(in.find(Ch::W3), out.find(Ch::I)) = 1.0;
    }
    mps.gammas[s - 1] = {g0, g1};
  }
  return mps;
}

// ---------------------------------------------------------------------------
// Canonicalization
// ---------------------------------------------------------------------------

void canonicalize(CanonicalMps& mps) {
  const int N = mps.N;

  // absorb bond vectors into site matrices
  std::vector<std::array<Eigen::MatrixXd, 2>> M(N);
  for (int s = 0; s < N; ++s)
    for (int k = 0; k < 2; ++k)
      M[s][k] = mps.gammas[s][k] * mps.lambdas[s + 1].asDiagonal();

  // left-to-right: orthonormal A-form
  std::vector<std::array<Eigen::MatrixXd, 2>> A(N);
  Eigen::MatrixXd C = Eigen::MatrixXd::Constant(1, 1, mps.lambdas[0](0));
  for (int s = 0; s < N; ++s) {
    const int rl = static_cast<int>(C.rows());
    const int rc = static_cast<int>(M[s][0].cols());
    Eigen::MatrixXd T(2 * rl, rc);
    for (int k = 0; k < 2; ++k) T.block(k * rl, 0, rl, rc) = C * M[s][k];
    Eigen::BDCSVD<Eigen::MatrixXd> svd(T, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const int r = effective_rank(svd.singularValues(), mps.trunc_tol);
    check_chi(r, mps.chi_max);
    for (int k = 0; k < 2; ++k) A[s][k] = svd.matrixU().block(k * rl, 0, rl, r);
    C = svd.singularValues().head(r).asDiagonal() * svd.matrixV().leftCols(r).transpose();
  }
  if (!(C.cwiseAbs().maxCoeff() > 0.0))
    throw NumericalError("canonicalize: null state");

  // right-to-left: extract Schmidt vectors, then Gamma = B / lambda_right
  Eigen::MatrixXd D = C;  // 1x1 carry holding the norm (and overall sign)
  mps.lambdas[N] = Eigen::VectorXd::Ones(1);
  for (int s = N - 1; s >= 0; --s) {
    const int rl = static_cast<int>(A[s][0].rows());
    const int rd = static_cast<int>(D.cols());
    Eigen::MatrixXd T(rl, 2 * rd);
    for (int k = 0; k < 2; ++k) T.block(0, k * rd, rl, rd) = A[s][k] * D;
    Eigen::BDCSVD<Eigen::MatrixXd> svd(T, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const int r = effective_rank(svd.singularValues(), mps.trunc_tol);
    check_chi(r, mps.chi_max);
    const double eta = svd.singularValues().head(r).norm();
    mps.lambdas[s] = svd.singularValues().head(r) / eta;

    const Eigen::VectorXd inv_r = safe_inverse(mps.lambdas[s + 1]);
    Eigen::MatrixXd Vt = svd.matrixV().leftCols(r).transpose();  // r x (2 rd)
    for (int k = 0; k < 2; ++k) {
      // carry the norm factor eta with the rightmost remaining site
      const double scale = (s == N - 1) ? eta : 1.0;
      mps.gammas[s][k] = scale * Vt.block(0, k * rd, r, rd) * inv_r.asDiagonal();
    }
    D = svd.matrixU().leftCols(r) * (svd.singularValues().head(r) / eta).asDiagonal();
  }
  // D is now 1x1 with |D| = 1; fold the sign into the first site
  mps.gammas[0][0] *= D(0, 0);
  mps.gammas[0][1] *= D(0, 0);
}

CanonicalMps reduced_state_mps(const Eigen::VectorXd& alphas, int N, double trunc_tol,
                               int chi_max) {
  const double n2 = alphas.squaredNorm();
  if (std::abs(n2 - 1.0) > 1e-10)
    throw PreconditionError("reduced_state_mps: alphas not normalized (sum sq = " +
                            std::to_string(n2) + ")");
  CanonicalMps mps = ladder_pattern_mps(alphas, N);
  mps.trunc_tol = trunc_tol;
  mps.chi_max = chi_max > 0 ? chi_max : default_chi_max(N);
  canonicalize(mps);
  return mps;
}

double canonical_residual(const CanonicalMps& mps) {
  double worst = 0.0;
  for (int s = 0; s < mps.N; ++s) {
    const auto& lamL = mps.lambdas[s];
    const auto& lamR = mps.lambdas[s + 1];
    const int cl = static_cast<int>(lamL.size()), cr = static_cast<int>(lamR.size());
    Eigen::MatrixXd left = Eigen::MatrixXd::Zero(cr, cr);
    Eigen::MatrixXd right = Eigen::MatrixXd::Zero(cl, cl);
    for (int k = 0; k < 2; ++k) {
      const Eigen::MatrixXd AL = lamL.asDiagonal() * mps.gammas[s][k];
      const Eigen::MatrixXd BR = mps.gammas[s][k] * lamR.asDiagonal();
      left.noalias() += AL.transpose() * AL;
      right.noalias() += BR * BR.transpose();
    }
    worst = std::max(worst,
                     (left - Eigen::MatrixXd::Identity(cr, cr)).cwiseAbs().maxCoeff());
    worst = std::max(worst,
                     (right - Eigen::MatrixXd::Identity(cl, cl)).cwiseAbs().maxCoeff());
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Gates
// ---------------------------------------------------------------------------

TwoSiteGate gate_from_givens(const GivensGate& g) {
  const double c = std::cos(0.5 * g.theta), s = std::sin(0.5 * g.theta);
  TwoSiteGate out;
  out.u.setIdentity();
  // basis {|00>, |01>, |10>, |11>}, b = 2 n_left + n_right;
  // coefficients transform like the site coefficients of the mode update:
  // a_j' = c a_j + s a_{j+1}, a_{j+1}' = -s a_j + c a_{j+1}
  out.u(1, 1) = c;
  out.u(1, 2) = -s;
  out.u(2, 1) = s;
  out.u(2, 2) = c;
  return out;
}

void apply_two_site(CanonicalMps& mps, int j, const TwoSiteGate& gate) {
  if (j < 1 || j + 1 > mps.N) throw PreconditionError("apply_two_site: bad site index");
  const int sl = j - 1, sr = j;
  const auto& lamL = mps.lambdas[sl];
  const auto& lamC = mps.lambdas[sl + 1];
  const auto& lamR = mps.lambdas[sl + 2];
  const int cl = static_cast<int>(lamL.size()), cr = static_cast<int>(lamR.size());

  std::array<Eigen::MatrixXd, 4> theta;
  for (int k1 = 0; k1 < 2; ++k1)
    for (int k2 = 0; k2 < 2; ++k2)
      theta[2 * k1 + k2] = lamL.asDiagonal() * mps.gammas[sl][k1] * lamC.asDiagonal() *
                           mps.gammas[sr][k2] * lamR.asDiagonal();

  std::array<Eigen::MatrixXd, 4> tp;
  for (int b = 0; b < 4; ++b) {
    tp[b] = Eigen::MatrixXd::Zero(cl, cr);
    for (int q = 0; q < 4; ++q)
      if (gate.u(b, q) != 0.0) tp[b] += gate.u(b, q) * theta[q];
  }

  Eigen::MatrixXd Mm(2 * cl, 2 * cr);
  for (int k1 = 0; k1 < 2; ++k1)
    for (int k2 = 0; k2 < 2; ++k2)
      Mm.block(k1 * cl, k2 * cr, cl, cr) = tp[2 * k1 + k2];

  Eigen::BDCSVD<Eigen::MatrixXd> svd(Mm, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const int r = effective_rank(svd.singularValues(), mps.trunc_tol);
  check_chi(r, mps.chi_max);
  const double eta = svd.singularValues().head(r).norm();
  mps.norm_drift += std::abs(eta - 1.0);
  mps.lambdas[sl + 1] = svd.singularValues().head(r) / eta;

  const Eigen::VectorXd invL = safe_inverse(lamL);
  const Eigen::VectorXd invR = safe_inverse(lamR);
  for (int k1 = 0; k1 < 2; ++k1)
    mps.gammas[sl][k1] = invL.asDiagonal() * svd.matrixU().block(k1 * cl, 0, cl, r);
  Eigen::MatrixXd Vt = svd.matrixV().leftCols(r).transpose();
  for (int k2 = 0; k2 < 2; ++k2)
    mps.gammas[sr][k2] = eta * Vt.block(0, k2 * cr, r, cr) * invR.asDiagonal();
}

Eigen::MatrixXd pair_rotation_unitary(double phi) {
  const double c = std::cos(0.5 * phi), s = std::sin(0.5 * phi);
  Eigen::MatrixXd u = Eigen::MatrixXd::Identity(16, 16);
  const int wl = 0b1100, wr = 0b0011;  // omega_l and omega_{l+1} window patterns
  u(wl, wl) = c;
  u(wl, wr) = -s;
  u(wr, wl) = s;
  u(wr, wr) = c;
  return u;
}

void apply_four_site(CanonicalMps& mps, const PairRotation& r) {
  const int s1 = 2 * r.l - 1;  // 1-based leftmost site
  if (r.l < 1 || s1 + 3 > mps.N)
    throw PreconditionError("apply_four_site: support 2l-1..2l+2 outside chain");
  const Eigen::MatrixXd u = pair_rotation_unitary(r.phi);

  const int b0 = s1 - 1;  // 0-based bond indices b0..b4
  const int c0 = mps.chi(b0), c4 = mps.chi(b0 + 4);

  // window tensor W_p (c0 x c4), p = 8 n1 + 4 n2 + 2 n3 + n4
  std::vector<Eigen::MatrixXd> W(16);
  for (int p = 0; p < 16; ++p) {
    Eigen::MatrixXd acc =
        mps.lambdas[b0].asDiagonal() * mps.gammas[s1 - 1][(p >> 3) & 1];
    acc = acc * mps.lambdas[b0 + 1].asDiagonal() * mps.gammas[s1][(p >> 2) & 1];
    acc = acc * mps.lambdas[b0 + 2].asDiagonal() * mps.gammas[s1 + 1][(p >> 1) & 1];
    acc = acc * mps.lambdas[b0 + 3].asDiagonal() * mps.gammas[s1 + 2][p & 1];
    W[p] = acc * mps.lambdas[b0 + 4].asDiagonal();
  }
  std::vector<Eigen::MatrixXd> Wp(16, Eigen::MatrixXd::Zero(c0, c4));
  for (int p = 0; p < 16; ++p)
    for (int q = 0; q < 16; ++q)
      if (u(p, q) != 0.0) Wp[p] += u(p, q) * W[q];

  // carrier K(a, q * c4 + nu) over remaining physical bits q; split site by site
  Eigen::MatrixXd K(c0, 16 * c4);
  for (int p = 0; p < 16; ++p) K.middleCols(p * c4, c4) = Wp[p];

  Eigen::VectorXd lam_left = mps.lambdas[b0];
  int rest_bits = 4;
  for (int t = 0; t < 3; ++t) {
    const int ca = static_cast<int>(K.rows());
    const int rest = 1 << (rest_bits - 1);
    Eigen::MatrixXd Mt(2 * ca, rest * c4);
    for (int k = 0; k < 2; ++k)
      Mt.block(k * ca, 0, ca, rest * c4) = K.middleCols(k * rest * c4, rest * c4);
    Eigen::BDCSVD<Eigen::MatrixXd> svd(Mt, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const int rr = effective_rank(svd.singularValues(), mps.trunc_tol);
    check_chi(rr, mps.chi_max);
    const Eigen::VectorXd invL = safe_inverse(lam_left);
    for (int k = 0; k < 2; ++k)
      mps.gammas[s1 - 1 + t][k] = invL.asDiagonal() * svd.matrixU().block(k * ca, 0, ca, rr);
    const double eta = svd.singularValues().head(rr).norm();
    mps.lambdas[b0 + 1 + t] = svd.singularValues().head(rr) / eta;
    if (t == 2) mps.norm_drift += std::abs(eta - 1.0);
    K = svd.singularValues().head(rr).asDiagonal() *
        svd.matrixV().leftCols(rr).transpose();
    lam_left = mps.lambdas[b0 + 1 + t];
    --rest_bits;
  }
  // K = lambda_b3(raw) * Gamma_4 * lambda_b4
  const Eigen::VectorXd invC = safe_inverse(mps.lambdas[b0 + 3]);
  const Eigen::VectorXd invR = safe_inverse(mps.lambdas[b0 + 4]);
  for (int k = 0; k < 2; ++k)
    mps.gammas[s1 + 2][k] =
        invC.asDiagonal() * K.middleCols(k * c4, c4) * invR.asDiagonal();
}

void unfold_to_eigenstate(CanonicalMps& mps, const GivensSchedule& s) {
  if (s.direction != ScheduleDirection::Unfolding)
    throw PreconditionError("unfold_to_eigenstate: schedule must be unfolding");
  for (const GivensGate& g : s.gates) apply_two_site(mps, g.j, gate_from_givens(g));
}

std::vector<double> block_entropy_profile(const CanonicalMps& mps) {
  const double res = canonical_residual(mps);
  if (res > 1e-8)
    throw NumericalError("block_entropy_profile: state not canonical (residual " +
                         std::to_string(res) + ")");
  std::vector<double> out;
  out.reserve(mps.N - 1);
  for (int b = 1; b < mps.N; ++b) {
    double S = 0.0;
    for (Eigen::Index i = 0; i < mps.lambdas[b].size(); ++i) {
      const double p = mps.lambdas[b][i] * mps.lambdas[b][i];
      if (p > 0.0) S -= p * std::log(p);
    }
    out.push_back(S);
  }
  return out;
}

Eigen::VectorXd contract_to_vector(const CanonicalMps& mps, int dense_limit) {
  if (mps.N > dense_limit)
    throw CapacityError("contract_to_vector: N = " + std::to_string(mps.N) +
                        " exceeds dense limit " + std::to_string(dense_limit));
  Eigen::MatrixXd amp = Eigen::MatrixXd::Constant(1, 1, mps.lambdas[0](0));
  for (int s = 0; s < mps.N; ++s) {
    const Eigen::MatrixXd G0 = mps.gammas[s][0] * mps.lambdas[s + 1].asDiagonal();
    const Eigen::MatrixXd G1 = mps.gammas[s][1] * mps.lambdas[s + 1].asDiagonal();
    Eigen::MatrixXd next(2 * amp.rows(), G0.cols());
    next.topRows(amp.rows()) = amp * G0;
    next.bottomRows(amp.rows()) = amp * G1;
    amp.swap(next);
  }
  return Eigen::VectorXd(amp.col(0));
}

double site_density(const CanonicalMps& mps, int site) {
  if (site < 1 || site > mps.N) throw PreconditionError("site_density: bad site");
  const Eigen::MatrixXd X = mps.lambdas[site - 1].asDiagonal() * mps.gammas[site - 1][1] *
                            mps.lambdas[site].asDiagonal();
  return X.squaredNorm();
}

double total_particle_number(const CanonicalMps& mps) {
  double n = 0.0;
  for (int s = 1; s <= mps.N; ++s) n += site_density(mps, s);
  return n;
}

double dense_overlap(const CanonicalMps& a, const CanonicalMps& b) {
  if (a.N != b.N) throw PreconditionError("dense_overlap: size mismatch");
  return contract_to_vector(a).dot(contract_to_vector(b));
}

// ---------------------------------------------------------------------------
// Serialization (hexfloat text; exact round-trip)
// ---------------------------------------------------------------------------

namespace {

void put_hex(std::ostream& os, double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%a", x);
  os << buf;
}

double get_hex(std::istream& is) {
  std::string tok;
  if (!(is >> tok)) throw PreconditionError("load_mps: truncated stream");
  return std::strtod(tok.c_str(), nullptr);
}

}  // namespace

void save_mps(std::ostream& os, const CanonicalMps& mps) {
  os << "MPS1 " << mps.N << ' ' << mps.chi_max << ' ';
  put_hex(os, mps.trunc_tol);
  os << ' ';
  put_hex(os, mps.norm_drift);
  os << '\n';
  for (int b = 0; b <= mps.N; ++b) {
    os << "bond " << b << ' ' << mps.lambdas[b].size();
    for (Eigen::Index i = 0; i < mps.lambdas[b].size(); ++i) {
      os << ' ';
      put_hex(os, mps.lambdas[b][i]);
    }
    os << '\n';
  }
  for (int s = 0; s < mps.N; ++s)
    for (int k = 0; k < 2; ++k) {
      const auto& G = mps.gammas[s][k];
      os << "site " << s << ' ' << k << ' ' << G.rows() << ' ' << G.cols();
      for (Eigen::Index i = 0; i < G.rows(); ++i)
        for (Eigen::Index j = 0; j < G.cols(); ++j) {
          os << ' ';
          put_hex(os, G(i, j));
        }
      os << '\n';
    }
}

CanonicalMps load_mps(std::istream& is) {
  std::string tag;
  CanonicalMps mps;
  if (!(is >> tag) || tag != "MPS1") throw PreconditionError("load_mps: bad header");
  if (!(is >> mps.N >> mps.chi_max)) throw PreconditionError("load_mps: bad header fields");
  mps.trunc_tol = get_hex(is);
  mps.norm_drift = get_hex(is);
  mps.lambdas.resize(mps.N + 1);
  mps.gammas.resize(mps.N);
  for (int b = 0; b <= mps.N; ++b) {
    int idx = 0;
    Eigen::Index dim = 0;
    if (!(is >> tag >> idx >> dim) || tag != "bond" || idx != b)
      throw PreconditionError("load_mps: bad bond record");
    mps.lambdas[b].resize(dim);
    for (Eigen::Index i = 0; i < dim; ++i) mps.lambdas[b][i] = get_hex(is);
  }
  for (int s = 0; s < mps.N; ++s)
    for (int k = 0; k < 2; ++k) {
      int si = 0, ki = 0;
      Eigen::Index rows = 0, cols = 0;
      if (!(is >> tag >> si >> ki >> rows >> cols) || tag != "site" || si != s || ki != k)
        throw PreconditionError("load_mps: bad site record");
      mps.gammas[s][k].resize(rows, cols);
      for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) mps.gammas[s][k](i, j) = get_hex(is);
    }
  return mps;
}

}  // namespace bethe
