#pragma once

#include <Eigen/Dense>

#include "escs/oracle.hpp"

namespace escs {

/// Dense operator on two truncated Fock spaces; basis |n> (x) |m> sits at
/// index n * cutoff + m.
struct TwoModeOperator {
  int cutoff = 0;
  Eigen::MatrixXcd matrix;
};

/// Jordan-Schwinger generators from the bare ladder operators of modes a, b.
struct GeneratorSet {
  int cutoff = 0;
  Eigen::MatrixXcd jx, jy, jz;
};

/// Jx = (a^dag b + a b^dag)/2, Jy = (a^dag b - a b^dag)/(2i), Jz = (a^dag a - b^dag b)/2.
/// Throws DomainError for cutoff < 2.
GeneratorSet build_generators(int cutoff);

/// exp(-i angle H) for a generator H that conserves n + m. Each fixed-n+m
/// block is diagonalized separately, so the result is unitary to rounding.
/// Throws NumericalError if a block fails to diagonalize.
TwoModeOperator exp_generator(const Eigen::MatrixXcd& h, int cutoff, double angle);

/// 50:50 splitter exp(-i (pi/2) Jy).
TwoModeOperator bs_unitary(const GeneratorSet& g);
/// exp(-i phi Jx).
TwoModeOperator phase_shifter(const GeneratorSet& g, double phi);
/// exp(-i phi Jz).
TwoModeOperator rotation_z(const GeneratorSet& g, double phi);
/// exp(i (pi/2) Jy) exp(-i phi Jx) exp(-i (pi/2) Jy).
TwoModeOperator compose_setup(const GeneratorSet& g, double phi);

/// max |U^dag U - I|.
double unitarity_residual(const TwoModeOperator& u);
/// max |[U, a^dag a + b^dag b]|.
double number_conservation_residual(const TwoModeOperator& u);
/// max |H - H^dag|.
double hermiticity_residual(const Eigen::MatrixXcd& h);
/// max |[Jx, Jy] - i Jz|, |[Jy, Jz] - i Jx|, |[Jz, Jx] - i Jy| over entries
/// whose row and column both have n + m <= max_total.
double commutator_residual(const GeneratorSet& g, int max_total);
/// max |x - y| over entries whose row and column lie in sectors with
/// n + m <= cutoff - 1, where the truncated generators form exact SU(2)
/// representations.
double exact_sector_difference(const TwoModeOperator& x, const TwoModeOperator& y);

Eigen::VectorXcd flatten(const TwoModeGrid& grid);
TwoModeGrid unflatten(const Eigen::VectorXcd& v, int cutoff);

/// |<x|y>|^2 / (<x|x><y|y>).
double fidelity(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y);

/// Sends (sum_k |alpha_k, xi_k>) (x) |0> through the splitter. Mode B of
/// every input branch must be the vacuum (DomainError otherwise); a mode-A
/// branch whose Fock tail exceeds the cutoff raises CutoffError.
TwoModeGrid generate_balanced(const BranchSuperposition& input, const GeneratorSet& g);

struct GenerationReport {
  double alpha0 = 0.0, alpha1 = 0.0, r0 = 0.0, r1 = 0.0;
  int cutoff = 0;
  double output_norm = 0.0;
  /// Target sum_k |alpha_k/sqrt2, r_k> (x) |alpha_k/sqrt2, r_k>.
  double fidelity_squeezed_target = 0.0;
  /// Target sum_k |eta_k/sqrt2> (x) |eta_k/sqrt2>, eta_k = alpha_k e^{r_k}.
  double fidelity_coherent_target = 0.0;
};

/// Input (|alpha0, r0> + |alpha1, r1>) (x) |0>, normalized; cutoff 0 picks
/// one with tail below 1e-13 for the input and both targets.
GenerationReport generation_experiment(double alpha0, double alpha1, double r0, double r1,
                                       int cutoff = 0);

}  // namespace escs
