#pragma once

#include <cmath>
#include <span>
#include <string_view>
#include <vector>

#include "escs/squeezed_state.hpp"

namespace escs {

/// Two-mode state families. Two-branch tags carry exactly two branches; the
/// D tags carry d >= 2 branches with cyclic index i+d == i.
enum class StateFamily { kVacuumBranch, kBalanced2, kUnbalanced2, kBalancedD, kUnbalancedD };

std::string_view to_string(StateFamily f);
/// Accepts the to_string() names ("vacuum", "balanced", "unbalanced",
/// "balanced-d", "unbalanced-d"). Throws DomainError otherwise.
StateFamily parse_family(std::string_view name);

/// Branch labels plus the polar angle theta of the SU(2) rotation.
/// All branches are real (alpha real, Theta = 0); theta lies in [0, pi].
class EnsembleParams {
 public:
  EnsembleParams(std::vector<SqueezedCoherentParams> branches, StateFamily family,
                 double theta);

  /// Convenience for the common all-real construction.
  static EnsembleParams real(StateFamily family, std::span<const double> alphas,
                             std::span<const double> rs, double theta);

  int dim() const { return static_cast<int>(branches_.size()); }
  const std::vector<SqueezedCoherentParams>& branches() const { return branches_; }
  const SqueezedCoherentParams& branch(int i) const;  // cyclic index
  StateFamily family() const { return family_; }
  double theta() const { return theta_; }

  double alpha(int i) const { return branch(i).alpha().real(); }
  double r(int i) const { return branch(i).r(); }
  /// eta_i = alpha_i e^{r_i}.
  double eta(int i) const { return alpha(i) * std::exp(r(i)); }
  /// p_ij from the closed-form overlap; p_ii is exactly 1.
  double overlap(int i, int j) const;

 private:
  std::vector<SqueezedCoherentParams> branches_;
  StateFamily family_;
  double theta_;
};

/// A geometric phase in radians (unwrapped) with the family's normalization.
struct GpValue {
  double phase = 0.0;
  double normalization = 1.0;

  /// |phase|, the quantity shown in the comparison and dimension scans.
  double modulus() const { return std::abs(phase); }
};

/// N = 2 + 2 p01, M = 2 + 2 p01^2, sum p_ij^2 or sum p_ij p_{i+1,j+1}.
double norm_factor(const EnsembleParams& e);

/// <Jz> = (eta0^2 + eta1^2 + 2 p01 eta0 eta1) / 2N on the vacuum-branch state.
double jz_expect_vacuum(const EnsembleParams& e);
/// <Jx> on the vacuum-branch state, assembled from branch eigenvalues
/// (mode B's are all zero).
double jx_expect_vacuum(const EnsembleParams& e);
/// True when <Jx> vanishes on the vacuum-branch state.
bool jx_expect_vacuum_is_zero(const EnsembleParams& e);

GpValue gp_vacuum(const EnsembleParams& e);
GpValue gp_balanced(const EnsembleParams& e);
GpValue gp_unbalanced(const EnsembleParams& e);
GpValue gp_balanced_d(const EnsembleParams& e);

/// The d-branch unbalanced phase in two forms.
///
/// `verbatim` uses the weight w_ij = p_ij p_{i+1,j+1} with
///   pi cos(theta)/M sum w_ij (eta_i eta_j - eta_{i+1} eta_{j+1})
///   - pi sin(theta)/M sum w_ij (eta_i eta_{j+1} - eta_j eta_{i+1}).
/// The second sum is antisymmetric in (i, j) under a symmetric weight and
/// vanishes identically. At d = 2 the first one cancels too, so this form
/// cannot reduce to the two-branch result.
///
/// `corrected` carries (eta_i eta_{j+1} + eta_j eta_{i+1}) in the sine sum.
/// That is what the Jz expectation along the rotated eigenvalue vectors
/// gives; it reduces to gp_unbalanced at d = 2 and matches the oracle.
struct UnbalancedDPhase {
  GpValue verbatim;
  GpValue corrected;
  double cos_sum = 0.0;
  double sin_sum_verbatim = 0.0;
  double sin_sum_corrected = 0.0;
};
UnbalancedDPhase gp_unbalanced_d(const EnsembleParams& e);

/// Family dispatch; UnbalancedD returns the corrected value.
GpValue gp_closed_form(const EnsembleParams& e);

}  // namespace escs
