#include <gtest/gtest.h>

#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>
#include <numbers>
#include <random>

#include "escs/error.hpp"
#include "escs/interferometer.hpp"

using namespace escs;

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::VectorXcd product_state(const SqueezedCoherentParams& a, const SqueezedCoherentParams& b, int n) {
  const BranchSuperposition s{{{a, b}}, 1.0};
  return flatten(state_vector(s, n));
}

}  // namespace

TEST(Generators, SmallestCutoff) {
  EXPECT_THROW(build_generators(1), DomainError);
  const GeneratorSet g = build_generators(2);
  // basis |00>, |01>, |10>, |11>
  EXPECT_EQ(g.jz(0, 0), Complex(0.0));
  EXPECT_EQ(g.jz(1, 1), Complex(-0.5));
  EXPECT_EQ(g.jz(2, 2), Complex(0.5));
  EXPECT_EQ(g.jz(3, 3), Complex(0.0));
}

TEST(Generators, Hermitian) {
  for (int n = 2; n <= 8; ++n) {
    const GeneratorSet g = build_generators(n);
    EXPECT_LT(hermiticity_residual(g.jx), 1e-12);
    EXPECT_LT(hermiticity_residual(g.jy), 1e-12);
    EXPECT_LT(hermiticity_residual(g.jz), 1e-12);
  }
}

TEST(Generators, AlgebraHoldsBelowTheBoundary) {
  const GeneratorSet g = build_generators(8);
  EXPECT_LT(commutator_residual(g, 6), 1e-10);
  EXPECT_LT(commutator_residual(g, 7), 1e-10);
  // The truncated top sectors are not SU(2) representations.
  EXPECT_GT(commutator_residual(g, 14), 0.1);
}

TEST(Exponential, MatchesDenseMatrixExponential) {
  const GeneratorSet g = build_generators(6);
  for (const auto* h : {&g.jx, &g.jy, &g.jz}) {
    for (double angle : {0.3, 2.0}) {
      const Eigen::MatrixXcd ref = (Complex(0.0, -angle) * *h).exp();
      EXPECT_LT((exp_generator(*h, 6, angle).matrix - ref).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
  EXPECT_THROW(exp_generator(g.jx, 5, 1.0), DomainError);
  EXPECT_THROW(exp_generator(g.jx, 6, INFINITY), DomainError);
}

TEST(BeamSplitter, UnitaryAndNumberConserving) {
  for (int n : {2, 5, 12}) {
    const TwoModeOperator u = bs_unitary(build_generators(n));
    EXPECT_LT(unitarity_residual(u), 1e-10);
    EXPECT_LT(number_conservation_residual(u), 1e-10);
  }
}

TEST(BeamSplitter, VacuumIsFixed) {
  const TwoModeOperator u = bs_unitary(build_generators(6));
  EXPECT_NEAR(std::abs(u.matrix(0, 0)), 1.0, 1e-14);
  EXPECT_LT(u.matrix.col(0).tail(35).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(BeamSplitter, SplitsCoherentState) {
  using P = SqueezedCoherentParams;
  const double alpha = 1.3;
  const std::vector<P> modes{P::real(alpha, 0.0)};
  const int n = auto_cutoff(modes, 1e-14);
  const GeneratorSet g = build_generators(n);
  const Eigen::VectorXcd out = bs_unitary(g).matrix * product_state(P::real(alpha, 0), P::real(0, 0), n);
  const double half = alpha / std::sqrt(2.0);
  EXPECT_GE(fidelity(product_state(P::real(half, 0), P::real(half, 0), n), out), 1.0 - 1e-8);
}

TEST(PhaseShifter, IdentityAndSectorParity) {
  const GeneratorSet g = build_generators(6);
  const TwoModeOperator id = phase_shifter(g, 0.0);
  EXPECT_LT((id.matrix - Eigen::MatrixXcd::Identity(36, 36)).cwiseAbs().maxCoeff(), 1e-14);

  Eigen::MatrixXcd parity = Eigen::MatrixXcd::Zero(36, 36);
  for (int a = 0; a < 6; ++a) {
    for (int b = 0; b < 6; ++b) parity(a * 6 + b, a * 6 + b) = (a + b) % 2 == 0 ? 1.0 : -1.0;
  }
  EXPECT_LT(exact_sector_difference(phase_shifter(g, 2 * kPi), {6, parity}), 1e-10);
  EXPECT_LT(unitarity_residual(phase_shifter(g, kPi / 3)), 1e-10);
}

TEST(Setup, ReducesToRotationAboutZ) {
  const GeneratorSet g = build_generators(10);
  const TwoModeOperator id = compose_setup(g, 0.0);
  EXPECT_LT((id.matrix - Eigen::MatrixXcd::Identity(100, 100)).cwiseAbs().maxCoeff(), 1e-12);
  std::vector<double> phis{kPi / 2};
  for (unsigned seed = 1; seed <= 5; ++seed) {
    std::mt19937_64 rng(seed);
    phis.push_back(std::uniform_real_distribution<double>(0.0, 2 * kPi)(rng));
  }
  for (double phi : phis) {
    const TwoModeOperator c = compose_setup(g, phi);
    EXPECT_LT(exact_sector_difference(c, rotation_z(g, phi)), 1e-8) << phi;
    EXPECT_LT(unitarity_residual(c), 1e-10);
    EXPECT_LT(number_conservation_residual(c), 1e-10);
  }
}

TEST(Setup, IdentityHoldsForLargerCutoffs) {
  for (int n : {8, 14}) {
    const GeneratorSet g = build_generators(n);
    EXPECT_LT(exact_sector_difference(compose_setup(g, 1.7), rotation_z(g, 1.7)), 1e-8);
  }
}

TEST(Generation, VacuumInput) {
  using P = SqueezedCoherentParams;
  const GenerationReport rep = generation_experiment(0.0, 0.0, 0.0, 0.0, 10);
  EXPECT_NEAR(rep.fidelity_squeezed_target, 1.0, 1e-14);
  EXPECT_NEAR(rep.output_norm, 1.0, 1e-14);
  const BranchSuperposition bad{{{P::real(1.0, 0.0), P::real(0.2, 0.0)}}, 1.0};
  EXPECT_THROW(generate_balanced(bad, build_generators(10)), DomainError);
}

TEST(Generation, CoherentBranchesGiveBalancedState) {
  for (const auto& [a0, a1] : {std::pair{1.0, -1.0}, {1.0, 0.5}, {-0.7, 1.4}}) {
    const GenerationReport rep = generation_experiment(a0, a1, 0.0, 0.0, 40);
    EXPECT_GE(rep.fidelity_squeezed_target, 1.0 - 1e-8);
    EXPECT_GE(rep.fidelity_coherent_target, 1.0 - 1e-8);
    EXPECT_NEAR(rep.output_norm, 1.0, 1e-8);
  }
}

TEST(Generation, SqueezedBranchesDoNotFactorize) {
  const GenerationReport rep = generation_experiment(1.0, 0.5, 0.3, 0.3);
  EXPECT_NEAR(rep.output_norm, 1.0, 1e-8);
  EXPECT_LT(rep.fidelity_squeezed_target, 0.99);
  EXPECT_LT(rep.fidelity_coherent_target, rep.fidelity_squeezed_target);
  EXPECT_GT(rep.fidelity_coherent_target, 0.0);
}

TEST(Generation, TruncatedInputIsRejected) {
  using P = SqueezedCoherentParams;
  const BranchSuperposition big{{{P::real(4.0, 0.0), P::real(0.0, 0.0)}}, 1.0};
  EXPECT_THROW(generate_balanced(big, build_generators(6)), CutoffError);
}
