#include "escs/interferometer.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "escs/error.hpp"

namespace escs {

namespace {

using Eigen::MatrixXcd;

constexpr double kAutoCutoffTol = 1e-13;

int index(int n, int m, int cutoff) { return n * cutoff + m; }

// Indices of the fixed n + m = k sector, ordered by n.
std::vector<int> sector(int k, int cutoff) {
  std::vector<int> out;
  for (int n = std::max(0, k - cutoff + 1); n <= std::min(k, cutoff - 1); ++n) {
    out.push_back(index(n, k - n, cutoff));
  }
  return out;
}

std::vector<int> photon_totals(int cutoff) {
  std::vector<int> out(static_cast<std::size_t>(cutoff * cutoff));
  for (int n = 0; n < cutoff; ++n) {
    for (int m = 0; m < cutoff; ++m) out[static_cast<std::size_t>(index(n, m, cutoff))] = n + m;
  }
  return out;
}

double max_abs(const MatrixXcd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double restricted_max(const MatrixXcd& m, int cutoff, int max_total) {
  const auto totals = photon_totals(cutoff);
  double out = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (totals[static_cast<std::size_t>(i)] > max_total) continue;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (totals[static_cast<std::size_t>(j)] > max_total) continue;
      out = std::max(out, std::abs(m(i, j)));
    }
  }
  return out;
}

void check_same_space(const TwoModeOperator& x, const TwoModeOperator& y) {
  if (x.cutoff != y.cutoff) throw DomainError("operators act on different cutoffs");
}

}  // namespace

GeneratorSet build_generators(int cutoff) {
  if (cutoff < 2) throw DomainError("build_generators: cutoff must be >= 2");
  const int dim = cutoff * cutoff;
  GeneratorSet g;
  g.cutoff = cutoff;
  MatrixXcd raise = MatrixXcd::Zero(dim, dim);  // a^dag b
  g.jz = MatrixXcd::Zero(dim, dim);
  for (int n = 0; n < cutoff; ++n) {
    for (int m = 0; m < cutoff; ++m) {
      const int col = index(n, m, cutoff);
      g.jz(col, col) = 0.5 * (n - m);
      if (n + 1 < cutoff && m >= 1) {
        raise(index(n + 1, m - 1, cutoff), col) = std::sqrt(static_cast<double>((n + 1) * m));
      }
    }
  }
  const MatrixXcd lower = raise.adjoint();
  g.jx = 0.5 * (raise + lower);
  g.jy = (raise - lower) / Complex(0.0, 2.0);
  return g;
}

TwoModeOperator exp_generator(const MatrixXcd& h, int cutoff, double angle) {
  const int dim = cutoff * cutoff;
  if (h.rows() != dim || h.cols() != dim) throw DomainError("exp_generator: shape mismatch");
  if (!std::isfinite(angle)) throw DomainError("exp_generator: angle must be finite");
  TwoModeOperator u{cutoff, MatrixXcd::Zero(dim, dim)};
  for (int k = 0; k <= 2 * (cutoff - 1); ++k) {
    const auto idx = sector(k, cutoff);
    const auto size = static_cast<Eigen::Index>(idx.size());
    MatrixXcd block(size, size);
    for (Eigen::Index i = 0; i < size; ++i) {
      for (Eigen::Index j = 0; j < size; ++j) block(i, j) = h(idx[i], idx[j]);
    }
    Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(block);
    if (solver.info() != Eigen::Success) {
      throw NumericalError("exp_generator: eigendecomposition failed in sector " +
                           std::to_string(k));
    }
    Eigen::VectorXcd phases(size);
    for (Eigen::Index i = 0; i < size; ++i) {
      phases(i) = std::polar(1.0, -angle * solver.eigenvalues()(i));
    }
    const MatrixXcd& v = solver.eigenvectors();
    const MatrixXcd ub = v * phases.asDiagonal() * v.adjoint();
    for (Eigen::Index i = 0; i < size; ++i) {
      for (Eigen::Index j = 0; j < size; ++j) u.matrix(idx[i], idx[j]) = ub(i, j);
    }
  }
  return u;
}

TwoModeOperator bs_unitary(const GeneratorSet& g) {
  return exp_generator(g.jy, g.cutoff, 0.5 * std::numbers::pi);
}

TwoModeOperator phase_shifter(const GeneratorSet& g, double phi) {
  return exp_generator(g.jx, g.cutoff, phi);
}

TwoModeOperator rotation_z(const GeneratorSet& g, double phi) {
  return exp_generator(g.jz, g.cutoff, phi);
}

TwoModeOperator compose_setup(const GeneratorSet& g, double phi) {
  const TwoModeOperator bs = bs_unitary(g);
  const TwoModeOperator ps = phase_shifter(g, phi);
  return {g.cutoff, bs.matrix.adjoint() * ps.matrix * bs.matrix};
}

double unitarity_residual(const TwoModeOperator& u) {
  const auto dim = u.matrix.rows();
  return max_abs(u.matrix.adjoint() * u.matrix - MatrixXcd::Identity(dim, dim));
}

double number_conservation_residual(const TwoModeOperator& u) {
  const auto totals = photon_totals(u.cutoff);
  double out = 0.0;
  for (Eigen::Index i = 0; i < u.matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < u.matrix.cols(); ++j) {
      const int diff = totals[static_cast<std::size_t>(j)] - totals[static_cast<std::size_t>(i)];
      out = std::max(out, std::abs(u.matrix(i, j)) * std::abs(diff));
    }
  }
  return out;
}

double hermiticity_residual(const MatrixXcd& h) { return max_abs(h - h.adjoint()); }

double commutator_residual(const GeneratorSet& g, int max_total) {
  const Complex i{0.0, 1.0};
  const MatrixXcd xy = g.jx * g.jy - g.jy * g.jx - i * g.jz;
  const MatrixXcd yz = g.jy * g.jz - g.jz * g.jy - i * g.jx;
  const MatrixXcd zx = g.jz * g.jx - g.jx * g.jz - i * g.jy;
  return std::max({restricted_max(xy, g.cutoff, max_total),
                   restricted_max(yz, g.cutoff, max_total),
                   restricted_max(zx, g.cutoff, max_total)});
}

double exact_sector_difference(const TwoModeOperator& x, const TwoModeOperator& y) {
  check_same_space(x, y);
  return restricted_max(x.matrix - y.matrix, x.cutoff, x.cutoff - 1);
}

Eigen::VectorXcd flatten(const TwoModeGrid& grid) {
  const auto n = grid.rows();
  Eigen::VectorXcd v(n * grid.cols());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < grid.cols(); ++j) v(i * grid.cols() + j) = grid(i, j);
  }
  return v;
}

TwoModeGrid unflatten(const Eigen::VectorXcd& v, int cutoff) {
  if (v.size() != static_cast<Eigen::Index>(cutoff) * cutoff) {
    throw DomainError("unflatten: size does not match cutoff");
  }
  TwoModeGrid grid(cutoff, cutoff);
  for (int i = 0; i < cutoff; ++i) {
    for (int j = 0; j < cutoff; ++j) grid(i, j) = v(index(i, j, cutoff));
  }
  return grid;
}

double fidelity(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) {
  const double nx = x.squaredNorm(), ny = y.squaredNorm();
  if (!(nx > 0.0) || !(ny > 0.0)) throw DomainError("fidelity: zero vector");
  return std::norm(x.dot(y)) / (nx * ny);
}

TwoModeGrid generate_balanced(const BranchSuperposition& input, const GeneratorSet& g) {
  for (const auto& br : input.branches) {
    if (br.mode_b.alpha() != Complex(0.0, 0.0) || br.mode_b.r() != 0.0) {
      throw DomainError("generate_balanced: mode B of every input branch must be vacuum");
    }
  }
  const Eigen::VectorXcd in = flatten(state_vector(input, g.cutoff));
  return unflatten(bs_unitary(g).matrix * in, g.cutoff);
}

GenerationReport generation_experiment(double alpha0, double alpha1, double r0, double r1,
                                       int cutoff) {
  using P = SqueezedCoherentParams;
  const double s = 1.0 / std::sqrt(2.0);
  const P vac = P::real(0.0, 0.0);
  const std::vector<P> inputs{P::real(alpha0, r0), P::real(alpha1, r1)};
  const std::vector<P> squeezed{P::real(alpha0 * s, r0), P::real(alpha1 * s, r1)};
  const std::vector<P> coherent{P::real(alpha0 * std::exp(r0) * s, 0.0),
                                P::real(alpha1 * std::exp(r1) * s, 0.0)};

  GenerationReport rep{alpha0, alpha1, r0, r1};
  if (cutoff <= 0) {
    std::vector<P> all = inputs;
    all.insert(all.end(), squeezed.begin(), squeezed.end());
    all.insert(all.end(), coherent.begin(), coherent.end());
    cutoff = auto_cutoff(all, kAutoCutoffTol);
  }
  rep.cutoff = cutoff;

  BranchSuperposition input{{{inputs[0], vac}, {inputs[1], vac}}, 1.0};
  input.prefactor = 1.0 / std::sqrt(inner_product(input, input, cutoff).real());
  const GeneratorSet g = build_generators(cutoff);
  const Eigen::VectorXcd out = flatten(generate_balanced(input, g));
  rep.output_norm = out.norm();

  const auto target = [&](const std::vector<P>& modes) {
    BranchSuperposition t{{{modes[0], modes[0]}, {modes[1], modes[1]}}, 1.0};
    return flatten(state_vector(t, cutoff));
  };
  rep.fidelity_squeezed_target = fidelity(target(squeezed), out);
  rep.fidelity_coherent_target = fidelity(target(coherent), out);
  return rep;
}

}  // namespace escs
