#include "escs/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "escs/error.hpp"

namespace escs {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kNormDriftLimit = 1e-6;
constexpr double kRealIntegrandLimit = 1e-8;
constexpr double kOrthogonalityLimit = 1e-6;
constexpr int kMinPancharatnamSteps = 64;

// Real labels of one branch at phi = 0, before the e^{-+i phi/2} phases.
struct PrintedBranch {
  double label_a, r_a;
  double label_b, r_b;
};

std::vector<PrintedBranch> printed_branches(const EnsembleParams& e) {
  const double c = std::cos(0.5 * e.theta());
  const double s = std::sin(0.5 * e.theta());
  std::vector<PrintedBranch> out;
  out.reserve(static_cast<std::size_t>(e.dim()));
  for (int i = 0; i < e.dim(); ++i) {
    const double a = e.alpha(i), r = e.r(i);
    switch (e.family()) {
      case StateFamily::kVacuumBranch:
        out.push_back({a * c, r, a * s, r});
        break;
      case StateFamily::kBalanced2:
      case StateFamily::kBalancedD:
        out.push_back({a * (c - s), r, a * (c + s), r});
        break;
      case StateFamily::kUnbalanced2:
      case StateFamily::kUnbalancedD: {
        const double a1 = e.alpha(i + 1), r1 = e.r(i + 1);
        out.push_back({a * c - a1 * s, r, a1 * c + a * s, r1});
        break;
      }
    }
  }
  return out;
}

SqueezedCoherentParams mode_state(double label, double r, Complex phase,
                                  LabelConvention convention) {
  const SqueezeParam xi(r);
  if (convention == LabelConvention::kDisplacement) {
    return SqueezedCoherentParams(phase * label, xi);
  }
  const Complex eta_value = phase * (label * std::exp(r));
  return SqueezedCoherentParams(alpha_from_eta(eta_value, xi), xi);
}

std::vector<ModePair> branches_at(const std::vector<PrintedBranch>& printed, double phi,
                                  LabelConvention convention) {
  const Complex down = std::polar(1.0, -0.5 * phi);
  const Complex up = std::conj(down);
  std::vector<ModePair> out;
  out.reserve(printed.size());
  for (const auto& b : printed) {
    out.push_back({mode_state(b.label_a, b.r_a, down, convention),
                   mode_state(b.label_b, b.r_b, up, convention)});
  }
  return out;
}

// Fock vectors of every branch mode at one path point.
struct Sample {
  std::vector<FockVector> a;
  std::vector<FockVector> b;
  double prefactor = 1.0;
  double max_tail = 0.0;
};

Sample sample(const BranchSuperposition& s, int cutoff) {
  Sample out;
  out.prefactor = s.prefactor;
  for (const auto& br : s.branches) {
    out.a.push_back(fock_expand(br.mode_a, cutoff));
    out.b.push_back(fock_expand(br.mode_b, cutoff));
    out.max_tail = std::max({out.max_tail, out.a.back().tail_bound(), out.b.back().tail_bound()});
  }
  return out;
}

Complex dot(const FockVector& x, const FockVector& y) {
  Complex sum{0.0, 0.0};
  for (int n = 0; n < x.cutoff(); ++n) sum += std::conj(x[n]) * y[n];
  return sum;
}

Complex inner(const Sample& x, const Sample& y) {
  Complex sum{0.0, 0.0};
  for (std::size_t i = 0; i < x.a.size(); ++i) {
    for (std::size_t j = 0; j < y.a.size(); ++j) {
      sum += dot(x.a[i], y.a[j]) * dot(x.b[i], y.b[j]);
    }
  }
  return x.prefactor * y.prefactor * sum;
}

double norm_sq(const Sample& s) { return inner(s, s).real(); }

// Evaluates the path at arbitrary phi with a fixed cutoff and prefactor.
class PathSampler {
 public:
  PathSampler(const EnsembleParams& e, LabelConvention convention, int cutoff,
              PathNormalization normalization)
      : printed_(printed_branches(e)),
        convention_(convention),
        cutoff_(cutoff),
        normalization_(normalization) {
    BranchSuperposition origin{branches_at(printed_, 0.0, convention_), 1.0};
    const double n0 = norm_sq(sample(origin, cutoff_));
    if (!(n0 > 0.0)) throw NumericalError("path state at phi = 0 has zero norm");
    prefactor_ = 1.0 / std::sqrt(n0);
  }

  Sample at(double phi) {
    BranchSuperposition s{branches_at(printed_, phi, convention_), prefactor_};
    Sample out = sample(s, cutoff_);
    const double n = norm_sq(out);
    const double dev = std::abs(n - 1.0);
    max_norm_deviation_ = std::max(max_norm_deviation_, dev);
    max_tail_ = std::max(max_tail_, out.max_tail);
    if (normalization_ == PathNormalization::kStrict) {
      if (dev > kNormDriftLimit) {
        throw NormDriftError("path norm deviates from 1 by " + std::to_string(dev) +
                             " at phi = " + std::to_string(phi));
      }
    } else {
      out.prefactor /= std::sqrt(n);
    }
    return out;
  }

  int cutoff() const { return cutoff_; }
  double max_norm_deviation() const { return max_norm_deviation_; }
  double max_tail() const { return max_tail_; }

 private:
  std::vector<PrintedBranch> printed_;
  LabelConvention convention_;
  int cutoff_;
  PathNormalization normalization_;
  double prefactor_ = 1.0;
  double max_norm_deviation_ = 0.0;
  double max_tail_ = 0.0;
};

Complex checked_overlap(const Sample& x, const Sample& y, const char* what) {
  const Complex ov = inner(x, y) / std::sqrt(norm_sq(x) * norm_sq(y));
  if (std::abs(ov) < kOrthogonalityLimit) {
    throw OrthogonalityError(std::string(what) + ": |overlap| = " +
                             std::to_string(std::abs(ov)) + " is below 1e-6");
  }
  return ov;
}

double simpson(const std::vector<double>& f, double h) {
  const std::size_t k = f.size() - 1;
  double sum = f.front() + f.back();
  for (std::size_t i = 1; i < k; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * f[i];
  return sum * h / 3.0;
}

double trapezoid(const std::vector<double>& f, double h) {
  double sum = 0.5 * (f.front() + f.back());
  for (std::size_t i = 1; i + 1 < f.size(); ++i) sum += f[i];
  return sum * h;
}

int resolve_cutoff(const PathSpec& p) {
  return p.cutoff > 0 ? p.cutoff : path_cutoff(p.ensemble, p.cutoff_tol, p.convention);
}

struct DynamicalResult {
  double phase;
  double quadrature_error;
  double max_real;
};

DynamicalResult integrate_connection(const PathSpec& p, PathSampler& path) {
  const int k = p.phi_samples;
  const double node_step = kTwoPi / k;
  const double h = std::min(p.fd_step, kTwoPi / (10.0 * k));

  std::vector<double> f(static_cast<std::size_t>(k) + 1);
  double max_real = 0.0;
  for (int i = 0; i <= k; ++i) {
    const double phi = i * node_step;
    const Sample mid = path.at(phi);
    // Five-point central difference; the three-point rule leaves O(h^2 n^3)
    // errors near 1e-7 on the larger labels.
    const Complex d1 = inner(mid, path.at(phi + h)) - inner(mid, path.at(phi - h));
    const Complex d2 = inner(mid, path.at(phi + 2.0 * h)) - inner(mid, path.at(phi - 2.0 * h));
    const Complex connection = (8.0 * d1 - d2) / (12.0 * h);
    max_real = std::max(max_real, std::abs(connection.real()));
    if (p.normalization == PathNormalization::kStrict &&
        std::abs(connection.real()) > kRealIntegrandLimit) {
      throw NumericalError("connection <Psi|dPsi> has real part " +
                           std::to_string(connection.real()) + " at phi = " +
                           std::to_string(phi));
    }
    // -i <Psi|dPsi> = Im <Psi|dPsi> once the real part is discarded.
    f[static_cast<std::size_t>(i)] = connection.imag();
  }

  const double fine = simpson(f, node_step);
  double coarse;
  if (k % 4 == 0) {
    std::vector<double> half;
    for (std::size_t i = 0; i < f.size(); i += 2) half.push_back(f[i]);
    coarse = simpson(half, 2.0 * node_step);
  } else {
    coarse = trapezoid(f, node_step);
  }
  return {fine, std::abs(fine - coarse), max_real};
}

}  // namespace

BranchSuperposition evolved_state(const EnsembleParams& e, double phi,
                                  LabelConvention convention, int cutoff) {
  const int n = cutoff > 0 ? cutoff : path_cutoff(e, 1e-12, convention);
  const auto printed = printed_branches(e);
  BranchSuperposition out{branches_at(printed, phi, convention), 1.0};
  BranchSuperposition origin{branches_at(printed, 0.0, convention), 1.0};
  out.prefactor = 1.0 / std::sqrt(norm_sq(sample(origin, n)));
  return out;
}

TwoModeGrid state_vector(const BranchSuperposition& b, int cutoff) {
  TwoModeGrid grid = TwoModeGrid::Zero(cutoff, cutoff);
  for (const auto& br : b.branches) {
    const FockVector va = fock_expand(br.mode_a, cutoff);
    const FockVector vb = fock_expand(br.mode_b, cutoff);
    Eigen::VectorXcd a(cutoff), bb(cutoff);
    for (int n = 0; n < cutoff; ++n) {
      a(n) = va[n];
      bb(n) = vb[n];
    }
    grid += a * bb.transpose();
  }
  return b.prefactor * grid;
}

Complex inner_product(const BranchSuperposition& x, const BranchSuperposition& y, int cutoff) {
  return inner(sample(x, cutoff), sample(y, cutoff));
}

int path_cutoff(const EnsembleParams& e, double tol, LabelConvention convention) {
  constexpr int kAngles = 16;
  const auto printed = printed_branches(e);
  std::vector<SqueezedCoherentParams> modes;
  for (int k = 0; k < kAngles; ++k) {
    for (const auto& br : branches_at(printed, kTwoPi * k / kAngles, convention)) {
      modes.push_back(br.mode_a);
      modes.push_back(br.mode_b);
    }
  }
  return auto_cutoff(modes, tol);
}

void PathSpec::validate() const {
  if (phi_samples < 2 || phi_samples % 2 != 0) {
    throw DomainError("PathSpec: phi_samples must be even and >= 2");
  }
  if (!(fd_step > 0.0)) throw DomainError("PathSpec: fd_step must be positive");
  if (cutoff < 0) throw DomainError("PathSpec: negative cutoff");
}

double total_phase(const EnsembleParams& e, int cutoff, LabelConvention convention) {
  const int n = cutoff > 0 ? cutoff : path_cutoff(e, 1e-12, convention);
  PathSampler path(e, convention, n, PathNormalization::kProjective);
  return std::arg(checked_overlap(path.at(0.0), path.at(kTwoPi), "total_phase"));
}

double dynamical_phase(const PathSpec& p) {
  p.validate();
  PathSampler path(p.ensemble, p.convention, resolve_cutoff(p), p.normalization);
  return integrate_connection(p, path).phase;
}

GpResult geometric_phase_numeric(const PathSpec& p) {
  p.validate();
  PathSampler path(p.ensemble, p.convention, resolve_cutoff(p), p.normalization);
  GpResult out;
  out.total_phase = std::arg(checked_overlap(path.at(0.0), path.at(kTwoPi), "total_phase"));
  const DynamicalResult dyn = integrate_connection(p, path);
  out.dynamical_phase = dyn.phase;
  out.geometric_phase = out.total_phase - out.dynamical_phase;
  out.diagnostics.cutoff_used = path.cutoff();
  out.diagnostics.max_tail_bound = path.max_tail();
  out.diagnostics.quadrature_error_estimate = dyn.quadrature_error;
  out.diagnostics.max_norm_deviation = path.max_norm_deviation();
  out.diagnostics.max_real_integrand = dyn.max_real;
  return out;
}

double geometric_phase_pancharatnam(const PathSpec& p) {
  p.validate();
  if (p.phi_samples < kMinPancharatnamSteps) {
    throw DomainError("geometric_phase_pancharatnam: needs at least 64 steps");
  }
  PathSampler path(p.ensemble, p.convention, resolve_cutoff(p), p.normalization);
  const int k = p.phi_samples;
  const Sample first = path.at(0.0);
  Sample prev = first;
  double accumulated = 0.0;
  for (int i = 1; i <= k; ++i) {
    Sample cur = path.at(kTwoPi * i / k);
    accumulated += std::arg(checked_overlap(prev, cur, "pancharatnam step"));
    prev = std::move(cur);
  }
  return std::arg(checked_overlap(first, prev, "total_phase")) - accumulated;
}

}  // namespace escs
