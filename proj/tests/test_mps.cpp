#include <doctest.h>

#include <random>
#include <sstream>

#include "bethe/mps.hpp"
#include "bethe/oracle.hpp"
#include "bethe/spectrum.hpp"
#include "bethe/wavefunction.hpp"
#include "bethe/youla.hpp"
#include "dense_sim.hpp"

using namespace bethe;

namespace {

Eigen::VectorXd random_alphas(int L, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd a(L);
  for (int i = 0; i < L; ++i) a[i] = gauss(rng);
  a /= a.norm();
  return a;
}

// signed alphas from the full fold pipeline of a ground state
struct Pipeline {
  Eigen::VectorXd signed_alphas;
  GivensSchedule fold;
  Eigen::VectorXd bethe_vector;  // sector basis
};

Pipeline fold_pipeline(const ChainParams& params) {
  auto sol = ground_state(params);
  auto a = amplitudes(sol, params);
  auto f = youla(antisymmetrize(a));
  auto fr = fold_schedule(f.Q);
  Pipeline out;
  out.fold = fr.schedule;
  out.signed_alphas = f.alphas;
  for (int j = 0; j < f.alphas.size(); ++j)
    out.signed_alphas[j] *= fr.diagonal[2 * j] * fr.diagonal[2 * j + 1];
  out.bethe_vector = state_vector(a);
  return out;
}

}  // namespace

TEST_CASE("single-pair ladder contracts to |110>") {
  Eigen::VectorXd alphas(1);
  alphas << 1.0;
  auto mps = reduced_state_mps(alphas, 3);
  auto v = contract_to_vector(mps);
  CHECK(v[0b011] == doctest::Approx(1.0));  // sites 1,2 occupied -> bits 0,1
  CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("two-pair ladder contracts to the exact amplitudes") {
  Eigen::VectorXd alphas(2);
  alphas << 0.6, 0.8;
  auto mps = reduced_state_mps(alphas, 5);
  auto v = contract_to_vector(mps);
  CHECK(v[0b00011] == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(v[0b01100] == doctest::Approx(0.8).epsilon(1e-12));
  double rest = v.squaredNorm() - v[0b00011] * v[0b00011] - v[0b01100] * v[0b01100];
  CHECK(rest <= 1e-24);
}

TEST_CASE("pattern boundary tensors match the explicit construction") {
  Eigen::VectorXd alphas(2);
  alphas << 0.6, 0.8;
  auto raw = ladder_pattern_mps(alphas, 5);
  // left boundary before renormalization: lambda^1 = (alpha_1, 1),
  // Gamma^{k=1}_{1,1} = Gamma^{k=0}_{1,2} = 1
  REQUIRE(raw.lambdas[1].size() == 2);
  CHECK(raw.lambdas[1][0] == doctest::Approx(0.6));
  CHECK(raw.lambdas[1][1] == doctest::Approx(1.0));
  CHECK(raw.gammas[0][1](0, 0) == 1.0);
  CHECK(raw.gammas[0][0](0, 1) == 1.0);
}

TEST_CASE("canonical invariants hold after construction") {
  auto mps = reduced_state_mps(random_alphas(4, 3), 9);
  CHECK(canonical_residual(mps) <= 1e-12);
  for (int b = 0; b <= 9; ++b) {
    const auto& lam = mps.lambdas[b];
    CHECK(lam.squaredNorm() == doctest::Approx(1.0).epsilon(1e-10));
    for (int i = 0; i + 1 < lam.size(); ++i) CHECK(lam[i] >= lam[i + 1]);
    if (lam.size() > 0) CHECK(lam[lam.size() - 1] >= 0.0);
  }
  CHECK(total_particle_number(mps) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("gate_from_givens: identity, swap, and the mode update") {
  CHECK((gate_from_givens({1, 1, 0.0}).u - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() ==
        0.0);
  // theta = pi swaps the modes with a sign
  auto u = gate_from_givens({1, 1, pi}).u;
  CHECK(u(2, 1) == doctest::Approx(1.0));
  CHECK(u(1, 2) == doctest::Approx(-1.0));
  // theta = pi/2 on c^+_{j+1}|0>: cos(pi/4) c^+_{j+1} + sin(pi/4) c^+_j
  auto h = gate_from_givens({1, 1, 0.5 * pi}).u;
  Eigen::Vector4d in(0.0, 1.0, 0.0, 0.0);
  Eigen::Vector4d outv = h * in;
  CHECK(outv[1] == doctest::Approx(std::cos(0.25 * pi)));
  CHECK(outv[2] == doctest::Approx(std::sin(0.25 * pi)));
  // unitarity and number-block structure
  CHECK((h.transpose() * h - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(h(0, 0) == 1.0);
  CHECK(h(3, 3) == 1.0);
}

TEST_CASE("two-site gate action matches the dense simulator") {
  const int N = 7;
  auto alphas = random_alphas(3, 9);
  auto mps = reduced_state_mps(alphas, N);
  Eigen::VectorXd dense = testsim::ladder_vector(alphas, N);

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> uth(-pi, pi);
  std::uniform_int_distribution<int> usite(1, N - 1);
  for (int step = 0; step < 8; ++step) {
    GivensGate g{1, usite(rng), uth(rng)};
    apply_two_site(mps, g.j, gate_from_givens(g));
    testsim::apply_givens_dense(dense, N, g);
  }
  const Eigen::VectorXd full = contract_to_vector(mps);
  const Eigen::VectorXd expect = testsim::sector_to_fock(dense, N);
  CHECK((full - expect).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(canonical_residual(mps) <= 1e-8);
  CHECK(total_particle_number(mps) == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("identity gate leaves the state and spectra unchanged") {
  auto mps = reduced_state_mps(random_alphas(3, 21), 7);
  const Eigen::VectorXd before = mps.lambdas[3];
  apply_two_site(mps, 3, gate_from_givens({1, 3, 0.0}));
  CHECK((mps.lambdas[3] - before).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("gate then inverse gate restores the state") {
  auto alphas = random_alphas(3, 33);
  auto mps = reduced_state_mps(alphas, 7);
  const Eigen::VectorXd ref = contract_to_vector(mps);
  apply_two_site(mps, 4, gate_from_givens({1, 4, 0.77}));
  apply_two_site(mps, 4, gate_from_givens({1, 4, -0.77}));
  CHECK(contract_to_vector(mps).dot(ref) >= 1.0 - 1e-12);
}

TEST_CASE("four-site rotation: identity, coefficient mixing, dense agreement") {
  auto alphas = random_alphas(3, 5);
  auto mps = reduced_state_mps(alphas, 7);
  const Eigen::VectorXd ref = contract_to_vector(mps);
  apply_four_site(mps, {1, 0.0});
  CHECK(contract_to_vector(mps).dot(ref) >= 1.0 - 1e-12);

  // single rotation on a two-pair ladder mixes the coefficients as cos/sin
  Eigen::VectorXd two(2);
  two << 0.6, 0.8;
  auto m5 = reduced_state_mps(two, 5);
  const double phi = 1.1;
  apply_four_site(m5, {1, phi});
  auto v = contract_to_vector(m5);
  const double c = std::cos(0.5 * phi), s = std::sin(0.5 * phi);
  CHECK(v[0b00011] == doctest::Approx(c * 0.6 - s * 0.8).epsilon(1e-12));
  CHECK(v[0b01100] == doctest::Approx(s * 0.6 + c * 0.8).epsilon(1e-12));

  // full cascade against the dense simulator
  auto m7 = reduced_state_mps(alphas, 7);
  Eigen::VectorXd dense = testsim::ladder_vector(alphas, 7);
  for (const auto& r : pair_cascade(alphas)) {
    apply_four_site(m7, r);
    testsim::apply_pair_rotation_dense(dense, 7, r);
  }
  CHECK((contract_to_vector(m7) - testsim::sector_to_fock(dense, 7)).cwiseAbs().maxCoeff() <
        1e-10);
}

TEST_CASE("unfold reproduces the Bethe eigenstate (N=5, U=-2)") {
  const ChainParams params(5, 1.0, -2.0);
  auto pipe = fold_pipeline(params);
  auto mps = reduced_state_mps(pipe.signed_alphas, params.N);
  unfold_to_eigenstate(mps, unfold_sequence(pipe.fold));
  const Eigen::VectorXd got = contract_to_vector(mps);
  const Eigen::VectorXd expect = testsim::sector_to_fock(pipe.bethe_vector, params.N);
  CHECK(std::abs(got.dot(expect)) >= 1.0 - 1e-8);
  CHECK_THROWS_AS(unfold_to_eigenstate(mps, pipe.fold), PreconditionError);
}

TEST_CASE("empty schedule leaves the state untouched") {
  auto mps = reduced_state_mps(random_alphas(2, 77), 5);
  const Eigen::VectorXd ref = contract_to_vector(mps);
  unfold_to_eigenstate(mps, GivensSchedule{{}, ScheduleDirection::Unfolding});
  CHECK((contract_to_vector(mps) - ref).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("block entropy: product state, equal ladder, oracle profile") {
  Eigen::VectorXd one(1);
  one << 1.0;
  auto prod = reduced_state_mps(one, 3);
  for (double s : block_entropy_profile(prod)) CHECK(s == doctest::Approx(0.0).epsilon(1e-12));

  Eigen::VectorXd eq(2);
  eq << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  auto mps = reduced_state_mps(eq, 5);
  auto prof = block_entropy_profile(mps);
  CHECK(prof[1] == doctest::Approx(std::log(2.0)).epsilon(1e-10));
}

TEST_CASE("unfolded MPS entropies match the partial-trace oracle (N=9, U=-2)") {
  const ChainParams params(9, 1.0, -2.0);
  auto pipe = fold_pipeline(params);
  auto mps = reduced_state_mps(pipe.signed_alphas, params.N);
  unfold_to_eigenstate(mps, unfold_sequence(pipe.fold));
  auto prof = block_entropy_profile(mps);
  for (int L = 1; L < params.N; ++L) {
    auto pt = oracle::partial_trace_entropy(pipe.bethe_vector, L, params.N);
    CHECK(prof[L - 1] == doctest::Approx(pt.entropy).epsilon(1e-8));
  }
}

TEST_CASE("bond dimensions never exceed the two-particle rank bound") {
  const ChainParams params(11, 1.0, -2.5);
  auto pipe = fold_pipeline(params);
  auto mps = reduced_state_mps(pipe.signed_alphas, params.N);
  unfold_to_eigenstate(mps, unfold_sequence(pipe.fold));
  for (int b = 1; b < params.N; ++b)
    CHECK(mps.chi(b) <= 2 + std::min(b, params.N - b));
}

TEST_CASE("chi_max overflow raises a capacity error") {
  auto alphas = random_alphas(3, 55);
  auto mps = reduced_state_mps(alphas, 7, 1e-12, 2);
  bool threw = false;
  try {
    for (int j = 1; j < 7; ++j) apply_two_site(mps, j, gate_from_givens({1, j, 1.3}));
  } catch (const CapacityError&) {
    threw = true;
  }
  CHECK(threw);
}

TEST_CASE("snapshot serialization round-trips exactly") {
  auto mps = reduced_state_mps(random_alphas(3, 99), 7);
  apply_two_site(mps, 2, gate_from_givens({1, 2, 0.3}));
  std::stringstream ss;
  save_mps(ss, mps);
  auto loaded = load_mps(ss);
  CHECK(loaded.N == mps.N);
  CHECK(loaded.chi_max == mps.chi_max);
  CHECK(loaded.trunc_tol == mps.trunc_tol);
  for (int b = 0; b <= mps.N; ++b)
    CHECK((loaded.lambdas[b] - mps.lambdas[b]).cwiseAbs().maxCoeff() == 0.0);
  for (int s = 0; s < mps.N; ++s)
    for (int k = 0; k < 2; ++k)
      CHECK((loaded.gammas[s][k] - mps.gammas[s][k]).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("contraction capacity guard") {
  auto mps = reduced_state_mps(random_alphas(2, 1), 5);
  CHECK_THROWS_AS((void)contract_to_vector(mps, 4), CapacityError);
}
