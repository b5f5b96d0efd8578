#include "escs/squeezed_state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "escs/error.hpp"

namespace escs {

namespace {

constexpr double kRescaleThreshold = 1e150;

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

double weight_sum(std::span<const Complex> c) {
  // Kahan summation: tails down to ~1e-15 must stay measurable.
  double sum = 0.0, carry = 0.0;
  for (const Complex& z : c) {
    const double y = std::norm(z) - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return sum;
}

std::vector<Complex> coherent_coefficients(Complex alpha, int cutoff) {
  std::vector<Complex> c(static_cast<std::size_t>(cutoff), Complex{});
  const double mag = std::abs(alpha);
  if (mag == 0.0) {
    c[0] = 1.0;
    return c;
  }
  const double log_mag = std::log(mag);
  const double phase = std::arg(alpha);
  const double gauss = -0.5 * mag * mag;
  for (int n = 0; n < cutoff; ++n) {
    const double log_c = gauss + n * log_mag - 0.5 * log_factorial(n);
    c[static_cast<std::size_t>(n)] = std::polar(std::exp(log_c), n * phase);
  }
  return c;
}

std::vector<Complex> squeezed_coefficients(const SqueezedCoherentParams& p, int cutoff) {
  const double r = p.r();
  const double ch = std::cosh(r);
  const Complex rot = std::polar(1.0, p.theta());
  const Complex alpha = p.alpha();
  const Complex drive = eta(p) / ch;
  const Complex damp = rot * std::tanh(r);

  // ln of the Gaussian prefactor; its imaginary part is a phase.
  const Complex log_pref = -0.5 * std::norm(alpha) -
                           0.5 * std::conj(alpha) * std::conj(alpha) * damp -
                           0.5 * std::log(ch);
  double log_scale = 0.0;

  std::vector<Complex> c(static_cast<std::size_t>(cutoff), Complex{});
  Complex g_prev{0.0, 0.0};
  Complex g{1.0, 0.0};
  c[0] = std::exp(log_pref);
  for (int n = 0; n + 1 < cutoff; ++n) {
    Complex g_next = (drive * g - damp * std::sqrt(static_cast<double>(n)) * g_prev) /
                     std::sqrt(static_cast<double>(n + 1));
    if (std::abs(g_next) > kRescaleThreshold) {
      g_next /= kRescaleThreshold;
      g /= kRescaleThreshold;
      log_scale += std::log(kRescaleThreshold);
    }
    g_prev = g;
    g = g_next;
    c[static_cast<std::size_t>(n + 1)] = std::exp(log_pref + log_scale) * g;
  }
  return c;
}

}  // namespace

SqueezeParam::SqueezeParam(double r, double theta) {
  if (!std::isfinite(r) || !std::isfinite(theta)) {
    throw DomainError("SqueezeParam: non-finite component");
  }
  if (r < 0.0) throw DomainError("SqueezeParam: r must be non-negative");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double wrapped = std::fmod(theta, two_pi);
  if (wrapped < 0.0) wrapped += two_pi;
  if (wrapped >= two_pi) wrapped = 0.0;
  r_ = r;
  theta_ = wrapped;
}

SqueezedCoherentParams::SqueezedCoherentParams(Complex alpha, SqueezeParam xi)
    : alpha_(alpha), xi_(xi) {
  if (!finite(alpha)) throw DomainError("SqueezedCoherentParams: non-finite alpha");
}

FockVector::FockVector(std::vector<Complex> coeffs, double tail_bound)
    : coeffs_(std::move(coeffs)), tail_bound_(tail_bound) {
  if (coeffs_.empty()) throw DomainError("FockVector: cutoff must be positive");
  if (!(tail_bound_ >= 0.0)) throw DomainError("FockVector: negative tail bound");
}

double FockVector::norm_squared() const { return weight_sum(coeffs_); }

Complex eta(const SqueezedCoherentParams& p) {
  const double r = p.r();
  return p.alpha() * std::cosh(r) +
         std::conj(p.alpha()) * std::polar(1.0, p.theta()) * std::sinh(r);
}

Complex alpha_from_eta(Complex eta_value, const SqueezeParam& xi) {
  const double r = xi.r();
  return eta_value * std::cosh(r) -
         std::conj(eta_value) * std::polar(1.0, xi.theta()) * std::sinh(r);
}

FockVector fock_expand(const SqueezedCoherentParams& p, int cutoff, TailCheck check) {
  if (cutoff < 1) throw DomainError("fock_expand: cutoff must be >= 1");
  std::vector<Complex> c = p.r() < kMinSqueeze ? coherent_coefficients(p.alpha(), cutoff)
                                               : squeezed_coefficients(p, cutoff);
  const double tail = std::max(0.0, 1.0 - weight_sum(c));
  if (check == TailCheck::kEnforce && tail > kFockTailLimit) {
    throw CutoffError("fock_expand: cutoff " + std::to_string(cutoff) +
                      " loses probability " + std::to_string(tail));
  }
  return FockVector(std::move(c), tail);
}

Complex overlap_numeric(const SqueezedCoherentParams& p0, const SqueezedCoherentParams& p1,
                        int cutoff) {
  const FockVector v0 = fock_expand(p0, cutoff);
  const FockVector v1 = fock_expand(p1, cutoff);
  Complex sum{0.0, 0.0};
  for (int n = 0; n < cutoff; ++n) sum += std::conj(v0[n]) * v1[n];
  return sum;
}

namespace {

// One branch's share of the exponent; the closed form is the sum of the two
// shares plus a symmetric cross term.
double own_exponent(double alpha, double r, double r_other, double cosh_diff) {
  return -0.5 * alpha * alpha * (1.0 + std::tanh(r)) -
         alpha * alpha * std::exp(2.0 * r) * std::sinh(r_other) /
             (2.0 * std::cosh(r) * cosh_diff);
}

}  // namespace

double overlap_analytic_real(const SqueezedCoherentParams& p0,
                             const SqueezedCoherentParams& p1) {
  if (!p0.is_real() || !p1.is_real()) {
    throw DomainError("overlap_analytic_real: requires real alpha and Theta = 0");
  }
  const double a0 = p0.alpha().real(), a1 = p1.alpha().real();
  const double r0 = p0.r(), r1 = p1.r();
  const double cosh_diff = std::cosh(std::abs(r0 - r1));
  const double cross = a0 * a1 * std::exp(r0 + r1) / cosh_diff;
  const double exponent =
      (own_exponent(a0, r0, r1, cosh_diff) + own_exponent(a1, r1, r0, cosh_diff)) + cross;
  return std::exp(exponent) / std::sqrt(cosh_diff);
}

int auto_cutoff(std::span<const SqueezedCoherentParams> branches, double tol, int max_cutoff) {
  if (!(tol > 0.0 && tol <= 1e-2)) throw DomainError("auto_cutoff: tol must lie in (0, 1e-2]");
  if (branches.empty()) throw DomainError("auto_cutoff: no branches");

  double seed = 1.0;
  for (const auto& b : branches) {
    const double m = std::abs(eta(b));
    seed = std::max(seed, std::ceil(m * m + 10.0 * m + 20.0));
  }
  if (seed > max_cutoff) {
    throw CutoffError("auto_cutoff: seed cutoff exceeds the maximum " +
                      std::to_string(max_cutoff));
  }

  int n = static_cast<int>(seed);
  int required = 1;
  while (true) {
    bool ok = true;
    required = 1;
    for (const auto& b : branches) {
      const FockVector v = fock_expand(b, n, TailCheck::kSkip);
      if (!(v.tail_bound() < tol)) {
        ok = false;
        break;
      }
      // Coefficients do not depend on the cutoff, so the smallest admissible
      // truncation is the first prefix whose complement drops below tol.
      double prefix = 0.0, carry = 0.0;
      int k = 0;
      for (; k < n; ++k) {
        const double y = std::norm(v[k]) - carry;
        const double t = prefix + y;
        carry = (t - prefix) - y;
        prefix = t;
        if (1.0 - prefix < tol) break;
      }
      required = std::max(required, std::min(k + 1, n));
    }
    if (ok) return required;
    if (n >= max_cutoff) break;
    n = std::min(2 * n, max_cutoff);
  }
  throw CutoffError("auto_cutoff: tolerance not reached below cutoff " +
                    std::to_string(max_cutoff));
}

}  // namespace escs
