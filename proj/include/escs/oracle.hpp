#pragma once

#include <Eigen/Dense>
#include <vector>

#include "escs/closed_form.hpp"

namespace escs {

/// How a printed evolved-state label |e^{-i phi/2} L, r> is turned into a state.
///
/// kEigenvalue: the rotation acts on the eigenvalue of A = a cosh r + a^dag sinh r,
///   so the mode is the A-eigenstate with eta = e^{-i phi/2} L e^{r}, i.e. the
///   displacement alpha = eta cosh r - eta^* sinh r. This is the reading under
///   which the Jordan-Schwinger rotation is unitary on equal-r branches.
/// kDisplacement: the label is taken as the displacement itself.
/// Both agree wherever the label is real (phi = 0 and phi = 2 pi).
enum class LabelConvention { kEigenvalue, kDisplacement };

/// kStrict requires the path to keep unit norm (1e-6) and raises
/// NormDriftError otherwise; kProjective renormalizes every node, which gives
/// the geometric phase of the ray path even when the printed path is not
/// norm preserving.
enum class PathNormalization { kStrict, kProjective };

struct ModePair {
  SqueezedCoherentParams mode_a;
  SqueezedCoherentParams mode_b;
};

/// prefactor * sum_k (mode_a_k (x) mode_b_k).
struct BranchSuperposition {
  std::vector<ModePair> branches;
  double prefactor = 1.0;
};

/// Grid c(n, m) of a two-mode state; rows index mode A.
using TwoModeGrid = Eigen::MatrixXcd;

/// Evolved state of the family at angle phi, branch parameters as printed:
///   vacuum:      (e^{-i phi/2} a_i c, r_i)            (x) (e^{i phi/2} a_i s, r_i)
///   balanced:    (e^{-i phi/2} a_i (c - s), r_i)      (x) (e^{i phi/2} a_i (c + s), r_i)
///   unbalanced:  (e^{-i phi/2} (a_i c - a_{i+1} s), r_i) (x) (e^{i phi/2} (a_{i+1} c + a_i s), r_{i+1})
/// with c = cos(theta/2), s = sin(theta/2). The prefactor normalizes the
/// phi = 0 state numerically at the given cutoff (0 selects one automatically).
BranchSuperposition evolved_state(const EnsembleParams& e, double phi,
                                  LabelConvention convention = LabelConvention::kEigenvalue,
                                  int cutoff = 0);

/// Dense coefficient grid of the superposition.
TwoModeGrid state_vector(const BranchSuperposition& b, int cutoff);

/// <x|y>, evaluated branch by branch from single-mode Fock overlaps.
Complex inner_product(const BranchSuperposition& x, const BranchSuperposition& y, int cutoff);

/// Cutoff serving every branch of the path for all phi: auto_cutoff over the
/// mode labels sampled at 16 angles including phi = pi, where the eigenvalue
/// is purely imaginary and the displacement largest.
int path_cutoff(const EnsembleParams& e, double tol = 1e-12,
                LabelConvention convention = LabelConvention::kEigenvalue);

struct PathSpec {
  explicit PathSpec(EnsembleParams e) : ensemble(std::move(e)) {}

  EnsembleParams ensemble;
  /// Number of Simpson subintervals over [0, 2 pi] (even); also the number of
  /// steps of the Pancharatnam product.
  int phi_samples = 256;
  /// Central-difference step; capped at 2 pi / (10 phi_samples).
  double fd_step = 1e-4;
  /// 0 selects path_cutoff(ensemble, cutoff_tol).
  int cutoff = 0;
  double cutoff_tol = 1e-12;
  LabelConvention convention = LabelConvention::kEigenvalue;
  PathNormalization normalization = PathNormalization::kStrict;

  /// Throws DomainError on odd/too few samples or a bad step.
  void validate() const;
};

struct OracleDiagnostics {
  int cutoff_used = 0;
  double max_tail_bound = 0.0;
  double quadrature_error_estimate = 0.0;
  double max_norm_deviation = 0.0;
  double max_real_integrand = 0.0;
};

struct GpResult {
  double total_phase = 0.0;
  double dynamical_phase = 0.0;
  double geometric_phase = 0.0;
  OracleDiagnostics diagnostics;
};

/// Principal arg <Psi(0)|Psi(2 pi)> of the normalized path end points.
/// Throws OrthogonalityError when |overlap| < 1e-6.
double total_phase(const EnsembleParams& e, int cutoff = 0,
                   LabelConvention convention = LabelConvention::kEigenvalue);

/// -i int_0^{2pi} <Psi|d_phi Psi> dphi by composite Simpson, with the
/// derivative from five-point central differences of the state. The discarded real part
/// of the integrand must stay below 1e-8 (strict mode).
double dynamical_phase(const PathSpec& p);

/// total_phase - dynamical_phase with diagnostics.
GpResult geometric_phase_numeric(const PathSpec& p);

/// Discrete Bargmann form:
/// arg<Psi_0|Psi_K> - sum_k arg<Psi_k|Psi_{k+1}> over K = phi_samples steps.
/// Requires K >= 64.
double geometric_phase_pancharatnam(const PathSpec& p);

}  // namespace escs
