#pragma once

#include <span>
#include <vector>

#include "escs/special_functions.hpp"

namespace escs {

/// Below this squeezing magnitude the coherent-state expansion is used.
inline constexpr double kMinSqueeze = 1e-8;
/// Hard ceiling for automatically chosen Fock cutoffs.
inline constexpr int kMaxCutoff = 4096;
/// fock_expand refuses expansions that lose more probability than this.
inline constexpr double kFockTailLimit = 1e-4;

/// Squeezing parameter xi = r e^{i Theta}; r >= 0, Theta wrapped into [0, 2pi).
class SqueezeParam {
 public:
  SqueezeParam() = default;
  explicit SqueezeParam(double r, double theta = 0.0);

  double r() const { return r_; }
  double theta() const { return theta_; }
  Complex value() const { return std::polar(r_, theta_); }

 private:
  double r_ = 0.0;
  double theta_ = 0.0;
};

/// Label (alpha, xi) of the single-mode state D(alpha) S(xi) |0>.
class SqueezedCoherentParams {
 public:
  SqueezedCoherentParams() = default;
  SqueezedCoherentParams(Complex alpha, SqueezeParam xi);

  /// Real alpha, Theta = 0: the setting of every closed form in this library.
  static SqueezedCoherentParams real(double alpha, double r) {
    return SqueezedCoherentParams(Complex(alpha, 0.0), SqueezeParam(r));
  }

  Complex alpha() const { return alpha_; }
  const SqueezeParam& xi() const { return xi_; }
  double r() const { return xi_.r(); }
  double theta() const { return xi_.theta(); }

  /// True when alpha is real and Theta = 0 exactly.
  bool is_real() const { return alpha_.imag() == 0.0 && xi_.theta() == 0.0; }

 private:
  Complex alpha_{0.0, 0.0};
  SqueezeParam xi_{};
};

/// Truncated occupation-number expansion of a single-mode state.
class FockVector {
 public:
  FockVector(std::vector<Complex> coeffs, double tail_bound);

  int cutoff() const { return static_cast<int>(coeffs_.size()); }
  std::span<const Complex> coeffs() const { return coeffs_; }
  Complex operator[](int n) const { return coeffs_[static_cast<std::size_t>(n)]; }
  /// 1 - sum |c_n|^2, clamped at zero.
  double tail_bound() const { return tail_bound_; }
  double norm_squared() const;

 private:
  std::vector<Complex> coeffs_;
  double tail_bound_;
};

enum class TailCheck { kEnforce, kSkip };

/// Eigenvalue of A = a cosh r + a^dag e^{i Theta} sinh r on |alpha, xi>:
/// eta = alpha cosh r + alpha^* e^{i Theta} sinh r.
Complex eta(const SqueezedCoherentParams& p);

/// Inverse of eta() at fixed xi: alpha = eta cosh r - eta^* e^{i Theta} sinh r.
Complex alpha_from_eta(Complex eta_value, const SqueezeParam& xi);

/// Fock coefficients c_0 .. c_{cutoff-1} of |alpha, xi>.
///
/// The Hermite series is evaluated through the scaled sequence
/// g_n = (e^{i Theta} tanh(r)/2)^{n/2} H_n(z) / sqrt(n!), which satisfies
///   g_{n+1} = (eta/cosh r * g_n - e^{i Theta} tanh r sqrt(n) g_{n-1}) / sqrt(n+1).
/// A shared log-magnitude accumulator absorbs growth, so raw H_n is never
/// formed. For r < kMinSqueeze the exact coherent expansion is used.
/// The result is not renormalized; tail_bound reports the lost weight and
/// kEnforce raises CutoffError when it exceeds kFockTailLimit.
FockVector fock_expand(const SqueezedCoherentParams& p, int cutoff,
                       TailCheck check = TailCheck::kEnforce);

/// <p0|p1> as the truncated sum over the shared cutoff.
Complex overlap_numeric(const SqueezedCoherentParams& p0,
                        const SqueezedCoherentParams& p1, int cutoff);

/// Closed-form overlap of two real squeezed-coherent states (Mehler-summed).
/// Accepts r = 0. Throws DomainError for complex alpha or Theta != 0.
/// Written symmetrically, so swapping the arguments gives the same bits.
double overlap_analytic_real(const SqueezedCoherentParams& p0,
                             const SqueezedCoherentParams& p1);

/// Smallest cutoff N for which every branch has tail_bound < tol.
/// Search starts at ceil(max |eta|^2 + 10|eta| + 20) and doubles until the
/// condition holds; the smallest admissible N is then read off the prefix
/// sums of that expansion. Throws DomainError for tol outside (0, 1e-2] and
/// CutoffError above max_cutoff.
int auto_cutoff(std::span<const SqueezedCoherentParams> branches, double tol,
                int max_cutoff = kMaxCutoff);

}  // namespace escs
