#pragma once

#include <complex>

namespace escs {

using Complex = std::complex<double>;

/// Largest order accepted by hermite(). Beyond it raw H_n is not representable
/// for moderate arguments; use the scaled recurrences instead.
inline constexpr int kMaxHermiteOrder = 150;

/// Physicists' Hermite polynomial H_n(z) by the three-term recurrence.
/// Throws DomainError for n < 0 or n > kMaxHermiteOrder and OverflowError if
/// an intermediate value leaves the double range.
Complex hermite(int n, Complex z);

/// ln(n!). Exact product below 20, lgamma from there on.
double log_factorial(int n);

/// Partial Mehler sum  sum_{n < n_terms} H_n(x) H_n(y) s^n / (2^n n!).
///
/// Evaluated with the normalized functions h_n = H_n / sqrt(2^n n!), which
/// obey h_{n+1} = x sqrt(2/(n+1)) h_n - sqrt(n/(n+1)) h_{n-1} and stay
/// bounded, so the sum never overflows even when H_n itself would.
/// Throws DomainError for |s| >= 1 or n_terms < 1.
double mehler_sum(double x, double y, double s, int n_terms);

/// Closed form of the full Mehler series, (1-s^2)^{-1/2} exp[(2xys - (x^2+y^2)s^2)/(1-s^2)].
double mehler_closed_form(double x, double y, double s);

}  // namespace escs
