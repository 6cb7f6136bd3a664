#include <doctest.h>

#include "bethe/oracle.hpp"
#include "bethe/spectrum.hpp"
#include "bethe/wavefunction.hpp"

using namespace bethe;

TEST_CASE("amplitudes vanish for m1 >= m2") {
  const ChainParams params(5, 1.0, 0.0);
  auto a = amplitudes(ground_state(params), params);
  for (int m1 = 1; m1 <= 5; ++m1)
    for (int m2 = 1; m2 <= m1; ++m2) CHECK(a(m1, m2) == 0.0);
}

TEST_CASE("free ground-state amplitudes match the dense eigenvector") {
  const ChainParams params(5, 1.0, 0.0);
  auto a = amplitudes(ground_state(params), params);
  auto v = state_vector(a);
  auto g = oracle::exact_ground(params);
  Eigen::VectorXd ref = g.vector;
  if (ref.dot(v) < 0.0) ref = -ref;
  CHECK((v - ref).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("amplitudes are normalized") {
  const ChainParams params(7, 1.0, -2.0);
  auto a = amplitudes(ground_state(params), params);
  double norm2 = 0.0;
  for (int m1 = 1; m1 < 7; ++m1)
    for (int m2 = m1 + 1; m2 <= 7; ++m2) norm2 += a(m1, m2) * a(m1, m2);
  CHECK(norm2 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("global phase fixing is idempotent and sign-canonical") {
  const ChainParams params(7, 1.0, -3.0);
  auto sol = ground_state(params);
  auto a1 = amplitudes(sol, params);
  auto a2 = amplitudes(sol, params);
  CHECK((a1.a - a2.a).cwiseAbs().maxCoeff() == 0.0);
  // first nonzero amplitude in lexicographic order is positive
  bool found = false;
  for (int m1 = 1; m1 <= 7 && !found; ++m1)
    for (int m2 = m1 + 1; m2 <= 7 && !found; ++m2)
      if (std::abs(a1(m1, m2)) > 1e-12) {
        CHECK(a1(m1, m2) > 0.0);
        found = true;
      }
  CHECK(found);
}

TEST_CASE("antisymmetrize: zero input, single entry, exact antisymmetry") {
  UpperAmplitudes z;
  z.N = 3;
  z.a = Eigen::MatrixXd::Zero(3, 3);
  CHECK(antisymmetrize(z).A.cwiseAbs().maxCoeff() == 0.0);

  UpperAmplitudes one;
  one.N = 2;
  one.a = Eigen::MatrixXd::Zero(2, 2);
  one.a(0, 1) = 1.0;
  auto A = antisymmetrize(one);
  CHECK(A.A(0, 1) == 1.0);
  CHECK(A.A(1, 0) == -1.0);
  CHECK(A.A(0, 0) == 0.0);

  const ChainParams params(5, 1.0, -2.0);
  auto Ag = antisymmetrize(amplitudes(ground_state(params), params));
  CHECK((Ag.A + Ag.A.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(0.5 * Ag.A.squaredNorm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("state_vector: ordering, capacity, round-trip norm") {
  UpperAmplitudes a;
  a.N = 3;
  a.a = Eigen::MatrixXd::Zero(3, 3);
  a.a(0, 1) = 1.0;  // pair (1,2) is the first lexicographic slot
  auto v = state_vector(a);
  CHECK(v[0] == 1.0);
  CHECK(v[1] == 0.0);
  CHECK(v[2] == 0.0);
  CHECK_THROWS_AS((void)state_vector(a, 2), CapacityError);

  const ChainParams params(9, 1.0, -2.0);
  auto g = amplitudes(ground_state(params), params);
  CHECK(state_vector(g).norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("U=0 assembled amplitudes equal the explicit free product form") {
  const ChainParams params(7, 1.0, 0.0);
  for (const auto& sol : free_spectrum(params)) {
    auto v = sector_vector_complex(sol, params);
    // explicit product form, normalized
    Eigen::VectorXcd ref(v.size());
    const Complex I(0, 1);
    Eigen::Index t = 0;
    for (int m1 = 1; m1 < 7; ++m1)
      for (int m2 = m1 + 1; m2 <= 7; ++m2, ++t)
        ref[t] = std::exp(I * (sol.k1 * double(m1) + sol.k2 * double(m2))) -
                 std::exp(I * (sol.k2 * double(m1) + sol.k1 * double(m2)));
    ref /= ref.norm();
    CHECK(std::abs(v.dot(ref)) >= 1.0 - 1e-10);
  }
}

TEST_CASE("complex eigenstates are rejected by the real-amplitude bridge") {
  // even-N excited states are genuinely complex; pick one and check the error
  const ChainParams params(6, 1.0, 1.0);
  bool threw = false;
  for (const auto& s : enumerate_spectrum(params)) {
    if (s.kind != SolutionKind::Generic || std::abs(s.k1.imag()) > 1e-8) continue;
    try {
      (void)amplitudes(s, params);
    } catch (const NumericalError&) {
      threw = true;
      break;
    }
  }
  CHECK(threw);
}
