#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>
#include <numbers>
#include <random>

#include "escs/error.hpp"
#include "escs/squeezed_state.hpp"

using namespace escs;

namespace {

constexpr double kPi = std::numbers::pi;

// D(alpha) S(xi) |0> from dense matrix exponentials in an oversized space.
Eigen::VectorXcd dense_state(Complex alpha, double r, double theta, int n) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  const Eigen::MatrixXcd ad = a.adjoint();
  const Complex xi = std::polar(r, theta);
  const Eigen::MatrixXcd s_gen = 0.5 * (std::conj(xi) * a * a - xi * ad * ad);
  const Eigen::MatrixXcd d_gen = alpha * ad - std::conj(alpha) * a;
  Eigen::VectorXcd vac = Eigen::VectorXcd::Zero(n);
  vac(0) = 1.0;
  return d_gen.exp() * (s_gen.exp() * vac);
}

}  // namespace

TEST(SqueezeParam, ValidatesAndWraps) {
  EXPECT_THROW(SqueezeParam(-0.1), DomainError);
  EXPECT_THROW(SqueezeParam(std::nan("")), DomainError);
  EXPECT_NEAR(SqueezeParam(0.3, -kPi / 2).theta(), 1.5 * kPi, 1e-15);
  EXPECT_NEAR(SqueezeParam(0.3, 5 * kPi).theta(), kPi, 1e-12);
  EXPECT_EQ(SqueezeParam(0.3, 2 * kPi).theta(), 0.0);
}

TEST(SqueezedCoherentParams, RejectsNonFiniteAlpha) {
  EXPECT_THROW(SqueezedCoherentParams(Complex(INFINITY, 0.0), SqueezeParam(0.1)), DomainError);
  EXPECT_TRUE(SqueezedCoherentParams::real(0.5, 0.2).is_real());
  EXPECT_FALSE(SqueezedCoherentParams(Complex(0.5, 0.1), SqueezeParam(0.2)).is_real());
}

// Reference values: closed Hermite expression evaluated in 60-digit arithmetic.
TEST(FockExpand, RealLabelReferenceValues) {
  const double ref[] = {0.68587201312825332, 0.66252786092936457, 0.26826350303391148,
                        -0.05592356554930095, -0.11528096918698148, -0.030795618451190286};
  const FockVector v = fock_expand(SqueezedCoherentParams::real(0.7, 0.4), 40);
  for (int n = 0; n < 6; ++n) {
    EXPECT_NEAR(v[n].real(), ref[n], 1e-14) << n;
    EXPECT_EQ(v[n].imag(), 0.0);
  }
}

TEST(FockExpand, ComplexLabelReferenceValues) {
  const Complex ref[] = {{0.43684766857220404, -0.0095153446025384471},
                         {0.56204740949098934, 0.28471715653355769},
                         {0.32196552925268139, 0.44912984752152099},
                         {0.052029677645070134, 0.30644947251129554}};
  const FockVector v = fock_expand(SqueezedCoherentParams({1.0, 0.5}, SqueezeParam(0.3, kPi / 3)), 40);
  for (int n = 0; n < 4; ++n) EXPECT_LT(std::abs(v[n] - ref[n]), 1e-14) << n;
}

TEST(FockExpand, SqueezedVacuum) {
  const FockVector v = fock_expand(SqueezedCoherentParams::real(0.0, 0.5), 60);
  EXPECT_NEAR(v[0].real(), 1.0 / std::sqrt(std::cosh(0.5)), 1e-15);
  EXPECT_NEAR(v[0].real(), 0.94171061583167571, 1e-15);
  EXPECT_EQ(std::abs(v[1]), 0.0);
  EXPECT_NEAR(v[2].real(), -0.30771917645837045, 1e-15);
  for (int n = 1; n < 60; n += 2) EXPECT_EQ(std::abs(v[n]), 0.0);
}

TEST(FockExpand, MatchesMatrixExponential) {
  struct Case {
    Complex alpha;
    double r, theta;
  };
  for (const Case& c : {Case{{0.8, 0.0}, 0.3, 0.0}, Case{{-0.4, 0.9}, 0.6, 1.1},
                        Case{{1.2, -0.3}, 0.0, 0.0}, Case{{0.0, 0.5}, 0.9, 4.0}}) {
    const Eigen::VectorXcd dense = dense_state(c.alpha, c.r, c.theta, 160);
    const FockVector v = fock_expand(SqueezedCoherentParams(c.alpha, SqueezeParam(c.r, c.theta)), 60);
    for (int n = 0; n < 40; ++n) {
      EXPECT_LT(std::abs(v[n] - dense(n)), 1e-10) << "n=" << n << " r=" << c.r;
    }
  }
}

TEST(FockExpand, CoherentLimitIsPoissonian) {
  const double a = 1.3;
  const FockVector v = fock_expand(SqueezedCoherentParams::real(a, 0.0), 50);
  for (int n = 0; n < 50; ++n) {
    const double p = std::exp(-a * a + 2 * n * std::log(a) - log_factorial(n));
    EXPECT_NEAR(std::norm(v[n]), p, 1e-15);
  }
}

TEST(FockExpand, NormPlusTailIsOne) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ua(-2.0, 2.0), ur(0.0, 1.2), ut(0.0, 2 * kPi);
  for (int k = 0; k < 20; ++k) {
    const SqueezedCoherentParams p({ua(rng), ua(rng)}, SqueezeParam(ur(rng), ut(rng)));
    const FockVector v = fock_expand(p, 300);
    EXPECT_NEAR(v.norm_squared(), 1.0, 1e-12);
    EXPECT_LT(v.tail_bound(), 1e-12);
  }
}

TEST(FockExpand, LargeAmplitudeStaysFinite) {
  const SqueezedCoherentParams p = SqueezedCoherentParams::real(20.0, 0.5);
  const std::vector<SqueezedCoherentParams> one{p};
  const int n = auto_cutoff(one, 1e-10);
  const FockVector v = fock_expand(p, n);
  for (int k = 0; k < n; ++k) ASSERT_TRUE(std::isfinite(std::abs(v[k])));
  EXPECT_NEAR(v.norm_squared(), 1.0, 1e-9);
}

TEST(FockExpand, TruncationErrors) {
  const auto p = SqueezedCoherentParams::real(3.0, 0.2);
  EXPECT_THROW(fock_expand(p, 5), CutoffError);
  const FockVector v = fock_expand(p, 5, TailCheck::kSkip);
  EXPECT_GT(v.tail_bound(), kFockTailLimit);
}

TEST(Eta, RoundTrip) {
  for (double theta : {0.0, 0.7, 3.0}) {
    const SqueezeParam xi(0.45, theta);
    const SqueezedCoherentParams p({0.3, -1.1}, xi);
    EXPECT_LT(std::abs(alpha_from_eta(eta(p), xi) - p.alpha()), 1e-14);
  }
  EXPECT_NEAR(eta(SqueezedCoherentParams::real(0.8, 0.3)).real(), 0.8 * std::exp(0.3), 1e-15);
}

TEST(Overlap, ClosedFormReferenceValues) {
  using P = SqueezedCoherentParams;
  EXPECT_NEAR(overlap_analytic_real(P::real(1, 0.8), P::real(1, 0.2)), 0.91845015521900078, 1e-14);
  EXPECT_NEAR(overlap_analytic_real(P::real(-0.5, 0.3), P::real(1.2, 0.9)),
              0.016049778455386295, 1e-15);
  EXPECT_NEAR(overlap_analytic_real(P::real(2, 1.2), P::real(-2, 0)) / 3.1645608976886838e-7, 1.0,
              1e-11);
}

TEST(Overlap, SymmetricBitForBit) {
  using P = SqueezedCoherentParams;
  for (double a0 : {-1.5, 0.2, 1.9}) {
    for (double r1 : {0.0, 0.35, 1.1}) {
      EXPECT_EQ(overlap_analytic_real(P::real(a0, 0.4), P::real(0.7, r1)),
                overlap_analytic_real(P::real(0.7, r1), P::real(a0, 0.4)));
    }
  }
}

TEST(Overlap, EqualSqueezingIsGaussianInEta) {
  using P = SqueezedCoherentParams;
  for (double r : {0.0, 0.3, 0.9}) {
    const double e0 = 1.1 * std::exp(r), e1 = -0.4 * std::exp(r);
    EXPECT_NEAR(overlap_analytic_real(P::real(1.1, r), P::real(-0.4, r)),
                std::exp(-0.5 * (e0 - e1) * (e0 - e1)), 1e-14);
  }
}

TEST(Overlap, NumericAgreesWithClosedForm) {
  using P = SqueezedCoherentParams;
  for (double a0 : {-2.0, -0.5, 1.0}) {
    for (double a1 : {-1.0, 0.0, 2.0}) {
      for (double r0 : {0.0, 0.6, 1.2}) {
        for (double r1 : {0.0, 0.3, 0.9}) {
          const P p0 = P::real(a0, r0), p1 = P::real(a1, r1);
          const std::vector<P> both{p0, p1};
          const int n = auto_cutoff(both, 1e-13);
          EXPECT_LT(std::abs(overlap_numeric(p0, p1, n) - overlap_analytic_real(p0, p1)), 1e-10);
        }
      }
    }
  }
}

TEST(Overlap, ClosedFormNeedsRealLabels) {
  EXPECT_THROW(overlap_analytic_real(SqueezedCoherentParams({0.3, 0.1}, SqueezeParam(0.2)),
                                     SqueezedCoherentParams::real(0.3, 0.2)),
               DomainError);
  EXPECT_THROW(overlap_analytic_real(SqueezedCoherentParams(0.3, SqueezeParam(0.2, 1.0)),
                                     SqueezedCoherentParams::real(0.3, 0.2)),
               DomainError);
}

TEST(AutoCutoff, SmallestAdmissible) {
  using P = SqueezedCoherentParams;
  const std::vector<P> branches{P::real(1.5, 0.4), P::real(-0.7, 0.9)};
  for (double tol : {1e-4, 1e-8, 1e-12}) {
    const int n = auto_cutoff(branches, tol);
    for (const auto& b : branches) EXPECT_LT(fock_expand(b, n, TailCheck::kSkip).tail_bound(), tol);
    bool some_above = false;
    for (const auto& b : branches) {
      some_above = some_above || fock_expand(b, n - 1, TailCheck::kSkip).tail_bound() >= tol;
    }
    EXPECT_TRUE(some_above) << "tol " << tol;
  }
}

TEST(AutoCutoff, Limits) {
  using P = SqueezedCoherentParams;
  const std::vector<P> one{P::real(1.0, 0.1)};
  EXPECT_THROW(auto_cutoff(one, 0.0), DomainError);
  EXPECT_THROW(auto_cutoff(one, 0.1), DomainError);
  const std::vector<P> big{P::real(30.0, 0.0)};
  EXPECT_THROW(auto_cutoff(big, 1e-10, 200), CutoffError);
}
