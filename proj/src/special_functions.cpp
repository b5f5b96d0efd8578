#include "escs/special_functions.hpp"

#include <cmath>
#include <string>

#include "escs/error.hpp"

namespace escs {

namespace {
constexpr double kOverflowMagnitude = 1e300;
}

Complex hermite(int n, Complex z) {
  if (n < 0 || n > kMaxHermiteOrder) {
    throw DomainError("hermite: order " + std::to_string(n) + " outside [0, " +
                      std::to_string(kMaxHermiteOrder) + "]");
  }
  Complex prev{1.0, 0.0};
  if (n == 0) return prev;
  Complex cur = 2.0 * z;
  for (int k = 1; k < n; ++k) {
    const Complex next = 2.0 * z * cur - 2.0 * static_cast<double>(k) * prev;
    if (!std::isfinite(next.real()) || !std::isfinite(next.imag()) ||
        std::abs(next) > kOverflowMagnitude) {
      throw OverflowError("hermite: H_" + std::to_string(k + 1) +
                          " overflows; use a scaled recurrence");
    }
    prev = cur;
    cur = next;
  }
  return cur;
}

double log_factorial(int n) {
  if (n < 0) throw DomainError("log_factorial: negative argument");
  if (n < 20) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return std::log(f);
  }
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double mehler_sum(double x, double y, double s, int n_terms) {
  if (!(std::abs(s) < 1.0)) throw DomainError("mehler_sum: requires |s| < 1");
  if (n_terms < 1) throw DomainError("mehler_sum: n_terms must be positive");

  double hx_prev = 1.0, hy_prev = 1.0;
  double hx = std::sqrt(2.0) * x, hy = std::sqrt(2.0) * y;
  double sum = 1.0;
  double s_pow = 1.0;
  for (int n = 1; n < n_terms; ++n) {
    s_pow *= s;
    sum += hx * hy * s_pow;
    const double a = std::sqrt(2.0 / (n + 1));
    const double b = std::sqrt(static_cast<double>(n) / (n + 1));
    const double hx_next = x * a * hx - b * hx_prev;
    const double hy_next = y * a * hy - b * hy_prev;
    hx_prev = hx;
    hy_prev = hy;
    hx = hx_next;
    hy = hy_next;
  }
  return sum;
}

double mehler_closed_form(double x, double y, double s) {
  if (!(std::abs(s) < 1.0)) throw DomainError("mehler_closed_form: requires |s| < 1");
  const double one_minus = 1.0 - s * s;
  return std::exp((2.0 * x * y * s - (x * x + y * y) * s * s) / one_minus) /
         std::sqrt(one_minus);
}

}  // namespace escs
