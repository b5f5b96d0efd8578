#include <gtest/gtest.h>

#include <cmath>

#include "escs/error.hpp"
#include "escs/special_functions.hpp"

using namespace escs;

TEST(Hermite, LowOrdersMatchExplicitPolynomials) {
  const Complex z{0.3, 0.2};
  EXPECT_EQ(hermite(0, z), Complex(1.0, 0.0));
  EXPECT_LT(std::abs(hermite(1, z) - 2.0 * z), 1e-15);
  EXPECT_LT(std::abs(hermite(2, z) - (4.0 * z * z - 2.0)), 1e-15);
  EXPECT_LT(std::abs(hermite(3, z) - (8.0 * z * z * z - 12.0 * z)), 1e-14);
  EXPECT_LT(std::abs(hermite(4, z) - (16.0 * std::pow(z, 4) - 48.0 * z * z + 12.0)), 1e-13);
}

TEST(Hermite, ParityUnderSignFlip) {
  for (int n = 0; n <= 30; ++n) {
    const double x = 1.37;
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    EXPECT_EQ(hermite(n, Complex(-x, 0.0)), sign * hermite(n, Complex(x, 0.0)));
  }
}

TEST(Hermite, OrderOutOfRange) {
  EXPECT_THROW(hermite(-1, 0.5), DomainError);
  EXPECT_THROW(hermite(kMaxHermiteOrder + 1, 0.5), DomainError);
  EXPECT_NO_THROW(hermite(kMaxHermiteOrder, 0.5));
}

TEST(Hermite, OverflowIsReported) {
  EXPECT_THROW(hermite(kMaxHermiteOrder, Complex(1e3, 0.0)), OverflowError);
}

TEST(LogFactorial, ExactAndAsymptoticBranchesAgree) {
  EXPECT_EQ(log_factorial(0), 0.0);
  EXPECT_EQ(log_factorial(1), 0.0);
  EXPECT_NEAR(log_factorial(5), std::log(120.0), 1e-15);
  for (int n = 15; n <= 25; ++n) {
    EXPECT_NEAR(log_factorial(n), std::lgamma(n + 1.0), 1e-12 * std::lgamma(n + 1.0));
  }
}

TEST(Mehler, SingleTermAndZeroParameter) {
  EXPECT_EQ(mehler_sum(0.7, -1.2, 0.4, 1), 1.0);
  EXPECT_EQ(mehler_sum(0.7, -1.2, 0.0, 50), 1.0);
  EXPECT_EQ(mehler_closed_form(0.7, -1.2, 0.0), 1.0);
}

TEST(Mehler, PartialSumsConvergeForModerateParameter) {
  for (double s : {-0.6, -0.3, 0.2, 0.5, 0.7}) {
    for (double x : {-3.0, -1.0, 0.0, 0.5, 2.5}) {
      for (double y : {-2.0, 0.0, 1.5, 3.0}) {
        const double closed = mehler_closed_form(x, y, s);
        EXPECT_NEAR(mehler_sum(x, y, s, 200), closed, 1e-12 * std::max(1.0, closed))
            << "s=" << s << " x=" << x << " y=" << y;
      }
    }
  }
}

TEST(Mehler, ClosedFormSymmetries) {
  for (double s : {-0.8, -0.1, 0.3, 0.9}) {
    EXPECT_EQ(mehler_closed_form(0.4, -1.1, s), mehler_closed_form(-1.1, 0.4, s));
    EXPECT_NEAR(mehler_closed_form(0.4, 1.1, -s), mehler_closed_form(0.4, -1.1, s), 1e-15);
  }
}

// 200 terms at s = 0.9 leave a truncation error far above 1e-10 near |x| = |y| = 3;
// 0.9^200 times the growth of h_n(3)^2 is the floor.
TEST(Mehler, TruncationFloorNearUnitRadius) {
  const double err = std::abs(mehler_sum(3.0, 3.0, 0.9, 200) - mehler_closed_form(3.0, 3.0, 0.9));
  EXPECT_GT(err, 1e-10);
  EXPECT_LT(err, 1e-5);
  const double more = std::abs(mehler_sum(3.0, 3.0, 0.9, 400) - mehler_closed_form(3.0, 3.0, 0.9));
  EXPECT_LT(more, 1e-10);
}

TEST(Mehler, InvalidArguments) {
  EXPECT_THROW(mehler_sum(0.0, 0.0, 1.0, 10), DomainError);
  EXPECT_THROW(mehler_sum(0.0, 0.0, -1.0, 10), DomainError);
  EXPECT_THROW(mehler_sum(0.0, 0.0, 0.5, 0), DomainError);
  EXPECT_THROW(mehler_closed_form(0.0, 0.0, 1.0), DomainError);
}
