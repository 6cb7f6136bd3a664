#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <random>

#include "bethe/measures.hpp"
#include "bethe/spectrum.hpp"
#include "bethe/wavefunction.hpp"
#include "bethe/youla.hpp"

using namespace bethe;

namespace {

AntisymMatrix random_antisym(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd G(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) G(i, j) = gauss(rng);
  AntisymMatrix A;
  A.A = 0.5 * (G - G.transpose());
  return A;
}

double reconstruction_residual(const YoulaFactors& f, const AntisymMatrix& A) {
  return (f.Q * lambda_matrix(f) * f.Q.transpose() - A.A).norm();
}

}  // namespace

TEST_CASE("2x2 canonical block is already factored") {
  AntisymMatrix A;
  A.A.resize(2, 2);
  A.A << 0.0, 0.7, -0.7, 0.0;
  auto f = youla(A);
  REQUIRE(f.alphas.size() == 1);
  CHECK(f.alphas[0] == doctest::Approx(0.7));
  CHECK((f.Q - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("zero matrix factors with exact reconstruction") {
  AntisymMatrix A;
  A.A = Eigen::MatrixXd::Zero(5, 5);
  auto f = youla(A);
  REQUIRE(f.alphas.size() == 2);
  CHECK(f.alphas.cwiseAbs().maxCoeff() == 0.0);
  CHECK((f.Q.transpose() * f.Q - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(reconstruction_residual(f, A) == 0.0);
}

TEST_CASE("alphas are the collapsed singular values of A") {
  auto A = random_antisym(5, 42);
  auto f = youla(A);
  // oracle: eigenvalues of A^T A come in doubled pairs alpha_j^2
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A.A.transpose() * A.A,
                                                    Eigen::EigenvaluesOnly);
  std::vector<double> sq;
  for (int i = 4; i >= 1; i -= 2) sq.push_back(std::sqrt(std::max(0.0, es.eigenvalues()[i])));
  REQUIRE(f.alphas.size() == 2);
  for (int j = 0; j < 2; ++j)
    CHECK(f.alphas[j] == doctest::Approx(sq[j]).epsilon(1e-10));
}

TEST_CASE("factor contracts over random sizes") {
  for (int n = 3; n <= 14; ++n) {
    auto A = random_antisym(n, 100 + n);
    auto f = youla(A);
    CHECK((f.Q.transpose() * f.Q - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() <=
          1e-12);
    CHECK(reconstruction_residual(f, A) <= 1e-10 * std::max(1.0, A.A.norm()));
    // descending, nonnegative
    for (int j = 0; j + 1 < f.alphas.size(); ++j) CHECK(f.alphas[j] >= f.alphas[j + 1]);
    if (f.alphas.size() > 0) CHECK(f.alphas[f.alphas.size() - 1] >= 0.0);
    // sum alpha^2 = ||A||_F^2 / 2
    CHECK(f.alphas.squaredNorm() == doctest::Approx(0.5 * A.A.squaredNorm()).epsilon(1e-10));
    // kernel column bookkeeping
    if (n % 2 == 1) CHECK(f.kernel_columns == std::vector<int>{n - 1});
    else CHECK(f.kernel_columns.empty());
  }
}

TEST_CASE("normalized states have unit alpha norm") {
  const ChainParams params(7, 1.0, -2.0);
  auto A = antisymmetrize(amplitudes(ground_state(params), params));
  auto f = youla(A);
  CHECK(f.alphas.squaredNorm() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("alphas-only path matches the full factorization") {
  auto A = random_antisym(9, 7);
  auto f = youla(A);
  auto a = youla_alphas(A);
  REQUIRE(a.size() == f.alphas.size());
  CHECK((a - f.alphas).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("non-antisymmetric input is refused") {
  AntisymMatrix bad;
  bad.A = Eigen::MatrixXd::Random(4, 4);
  bad.A(0, 0) = 0.3;
  CHECK_THROWS_AS((void)youla(bad), PreconditionError);
}

TEST_CASE("alpha spectrum is invariant under orthogonal conjugation") {
  auto A = random_antisym(6, 11);
  auto ref = youla_alphas(A);
  for (int t = 0; t < 5; ++t) {
    const Eigen::MatrixXd V = random_orthogonal(6, 900 + t);
    AntisymMatrix rotated;
    rotated.A = V * A.A * V.transpose();
    rotated.A = 0.5 * (rotated.A - rotated.A.transpose()).eval();
    CHECK((youla_alphas(rotated) - ref).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("paired modes: identity factors and state reconstruction") {
  AntisymMatrix A;
  A.A.resize(2, 2);
  A.A << 0.0, 0.4, -0.4, 0.0;
  auto f = youla(A);
  CHECK((paired_modes(f) - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);

  // rebuilding A from the mode pairs: A = sum_j alpha_j (q_{2j} q_{2j+1}^T - q_{2j+1} q_{2j}^T)
  const ChainParams params(5, 1.0, -2.0);
  auto Ag = antisymmetrize(amplitudes(ground_state(params), params));
  auto fg = youla(Ag);
  Eigen::MatrixXd rebuilt = Eigen::MatrixXd::Zero(5, 5);
  for (int j = 0; j < fg.alphas.size(); ++j)
    rebuilt += fg.alphas[j] * (fg.Q.col(2 * j) * fg.Q.col(2 * j + 1).transpose() -
                               fg.Q.col(2 * j + 1) * fg.Q.col(2 * j).transpose());
  CHECK((rebuilt - Ag.A).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("free ground state collapses to a single pair") {
  const ChainParams params(5, 1.0, 0.0);
  auto f = youla(antisymmetrize(amplitudes(ground_state(params), params)));
  REQUIRE(f.alphas.size() == 2);
  CHECK(f.alphas[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(f.alphas[1] <= 1e-10);
}
