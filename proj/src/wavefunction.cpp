#include "bethe/wavefunction.hpp"

#include <cmath>

#include "bethe/basis.hpp"

namespace bethe {

namespace {

// a(m1,m2) = q1 e^{i k1 m1 + i k2 m2} + q2 e^{i k2 m1 + i k1 m2}, evaluated as
// exp(log q + i(...)) so that large imaginary wavenumbers (bound states) never
// overflow: for normalized q's the exponent's real part stays bounded.
Complex plane_wave_amplitude(const BetheSolution& s, int m1, int m2) {
  const Complex i(0.0, 1.0);
  Complex t1(0.0), t2(0.0);
  if (s.q1 != Complex(0.0))
    t1 = std::exp(std::log(s.q1) + i * (s.k1 * double(m1) + s.k2 * double(m2)));
  if (s.q2 != Complex(0.0))
    t2 = std::exp(std::log(s.q2) + i * (s.k2 * double(m1) + s.k1 * double(m2)));
  return t1 + t2;
}

}  // namespace

Eigen::VectorXcd sector_vector_complex(const BetheSolution& sol, const ChainParams& params) {
  const int N = params.N;
  const auto dim = pair_count(N);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);

  switch (sol.kind) {
    case SolutionKind::Generic:
    case SolutionKind::Free:
    case SolutionKind::Bound: {
      for (int m1 = 1; m1 < N; ++m1)
        for (int m2 = m1 + 1; m2 <= N; ++m2)
          v[pair_index(N, m1, m2)] = plane_wave_amplitude(sol, m1, m2);
      break;
    }
    case SolutionKind::PairedEven: {
      // q sum_m e^{i pi m} c^+_m c^+_{m+1} |0>; the wrap term (m = N) lands on
      // the ordered pair (1, N) with a fermionic minus sign.
      for (int m = 1; m < N; ++m)
        v[pair_index(N, m, m + 1)] = std::polar(1.0, pi * m);
      v[pair_index(N, 1, N)] = -std::polar(1.0, pi * N);
      break;
    }
    case SolutionKind::Confluent: {
      // Derivative state at a multiple root z0 = e^{-i k0} with e^{i k0 N} = 1:
      // d/deps [e^{i k0 (m1+m2)} (e^{-i eps d} - e^{i k0 N} e^{i eps (d - N)})]
      // with d = m2 - m1, which is -i e^{i k0 (m1+m2)} (2 d - N).
      const Complex i(0.0, 1.0);
      for (int m1 = 1; m1 < N; ++m1)
        for (int m2 = m1 + 1; m2 <= N; ++m2) {
          const double d = m2 - m1;
          v[pair_index(N, m1, m2)] =
              -i * std::exp(i * sol.k1 * double(m1 + m2)) * (2.0 * d - N);
        }
      break;
    }
  }

  const double nrm = v.norm();
  if (!(nrm > 0.0) || !std::isfinite(nrm))
    throw NumericalError("sector_vector_complex: null or non-finite state");
  v /= nrm;
  return v;
}

UpperAmplitudes amplitudes(const BetheSolution& sol, const ChainParams& params) {
  const int N = params.N;
  Eigen::VectorXcd v = sector_vector_complex(sol, params);

  // Global phase fix: minimize sum Im(e^{i phi} v)^2. With
  // f(phi) = (Qr + Qi)/2 - (Qr - Qi)/2 cos(2 phi) + P sin(2 phi),
  // the stationary points are at tan(2 phi) = 2 P / (Qr - Qi).
  double Qr = 0.0, Qi = 0.0, P = 0.0;
  for (Eigen::Index t = 0; t < v.size(); ++t) {
    Qr += v[t].real() * v[t].real();
    Qi += v[t].imag() * v[t].imag();
    P += v[t].real() * v[t].imag();
  }
  double phi = 0.5 * std::atan2(-2.0 * P, Qr - Qi);
  auto im_weight = [&](double ang) {
    const double c = std::cos(ang), s = std::sin(ang);
    return Qi * c * c + Qr * s * s + 2.0 * P * s * c;
  };
  if (im_weight(phi + 0.5 * pi) < im_weight(phi)) phi += 0.5 * pi;
  v *= std::polar(1.0, phi);

  double max_abs = 0.0, max_im = 0.0;
  for (Eigen::Index t = 0; t < v.size(); ++t) {
    max_abs = std::max(max_abs, std::abs(v[t]));
    max_im = std::max(max_im, std::abs(v[t].imag()));
  }
  if (max_im > 1e-9 * max_abs)
    throw NumericalError("amplitudes: irreducible imaginary part " + std::to_string(max_im) +
                         " (complex eigenstate; real form requires odd N ground states)");

  Eigen::VectorXd re = v.real();
  // Sign convention: first nonzero amplitude in lexicographic order positive.
  for (Eigen::Index t = 0; t < re.size(); ++t) {
    if (std::abs(re[t]) > 1e-12 * max_abs) {
      if (re[t] < 0.0) re = -re;
      break;
    }
  }
  re /= re.norm();
  return amplitudes_from_vector(re, N);
}

AntisymMatrix antisymmetrize(const UpperAmplitudes& a) {
  const int N = a.N;
  AntisymMatrix out;
  out.A = Eigen::MatrixXd::Zero(N, N);
  for (int m = 0; m < N; ++m)
    for (int n = m + 1; n < N; ++n) {
      out.A(m, n) = a.a(m, n);
      out.A(n, m) = -a.a(m, n);
    }
  return out;
}

Eigen::VectorXd state_vector(const UpperAmplitudes& a, int dense_limit) {
  if (a.N > dense_limit)
    throw CapacityError("state_vector: N = " + std::to_string(a.N) + " exceeds dense limit " +
                        std::to_string(dense_limit));
  Eigen::VectorXd v(pair_count(a.N));
  for (int m1 = 1; m1 < a.N; ++m1)
    for (int m2 = m1 + 1; m2 <= a.N; ++m2)
      v[pair_index(a.N, m1, m2)] = a(m1, m2);
  return v;
}

UpperAmplitudes amplitudes_from_vector(const Eigen::VectorXd& v, int N) {
  if (v.size() != pair_count(N))
    throw PreconditionError("amplitudes_from_vector: size mismatch");
  UpperAmplitudes out;
  out.N = N;
  out.a = Eigen::MatrixXd::Zero(N, N);
  for (int m1 = 1; m1 < N; ++m1)
    for (int m2 = m1 + 1; m2 <= N; ++m2)
      out.a(m1 - 1, m2 - 1) = v[pair_index(N, m1, m2)];
  return out;
}

}  // namespace bethe
