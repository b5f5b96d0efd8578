#include "escs/closed_form.hpp"

#include <numbers>
#include <string>

#include "escs/error.hpp"

namespace escs {

namespace {

constexpr double kPi = std::numbers::pi;

bool two_branch(StateFamily f) {
  return f == StateFamily::kVacuumBranch || f == StateFamily::kBalanced2 ||
         f == StateFamily::kUnbalanced2;
}

void require(const EnsembleParams& e, StateFamily f, const char* who) {
  if (e.family() != f) {
    throw FamilyMismatchError(std::string(who) + ": expected family " +
                              std::string(to_string(f)) + ", got " +
                              std::string(to_string(e.family())));
  }
}

}  // namespace

std::string_view to_string(StateFamily f) {
  switch (f) {
    case StateFamily::kVacuumBranch: return "vacuum";
    case StateFamily::kBalanced2: return "balanced";
    case StateFamily::kUnbalanced2: return "unbalanced";
    case StateFamily::kBalancedD: return "balanced-d";
    case StateFamily::kUnbalancedD: return "unbalanced-d";
  }
  return "unknown";
}

StateFamily parse_family(std::string_view name) {
  for (StateFamily f : {StateFamily::kVacuumBranch, StateFamily::kBalanced2,
                        StateFamily::kUnbalanced2, StateFamily::kBalancedD,
                        StateFamily::kUnbalancedD}) {
    if (to_string(f) == name) return f;
  }
  throw DomainError("unknown state family '" + std::string(name) + "'");
}

EnsembleParams::EnsembleParams(std::vector<SqueezedCoherentParams> branches,
                               StateFamily family, double theta)
    : branches_(std::move(branches)), family_(family), theta_(theta) {
  if (branches_.size() < 2) throw DomainError("EnsembleParams: need at least two branches");
  if (two_branch(family_) && branches_.size() != 2) {
    throw DomainError("EnsembleParams: family " + std::string(to_string(family_)) +
                      " takes exactly two branches");
  }
  for (const auto& b : branches_) {
    if (!b.is_real()) throw DomainError("EnsembleParams: branches must be real (Theta = 0)");
  }
  if (!(theta_ >= 0.0 && theta_ <= kPi)) {
    throw DomainError("EnsembleParams: theta must lie in [0, pi]");
  }
}

EnsembleParams EnsembleParams::real(StateFamily family, std::span<const double> alphas,
                                    std::span<const double> rs, double theta) {
  if (alphas.size() != rs.size()) {
    throw DomainError("EnsembleParams::real: alpha and r lists differ in length");
  }
  std::vector<SqueezedCoherentParams> b;
  b.reserve(alphas.size());
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    b.push_back(SqueezedCoherentParams::real(alphas[i], rs[i]));
  }
  return EnsembleParams(std::move(b), family, theta);
}

const SqueezedCoherentParams& EnsembleParams::branch(int i) const {
  const int d = dim();
  return branches_[static_cast<std::size_t>(((i % d) + d) % d)];
}

double EnsembleParams::overlap(int i, int j) const {
  const int d = dim();
  if (((i - j) % d + d) % d == 0) return 1.0;
  return overlap_analytic_real(branch(i), branch(j));
}

double norm_factor(const EnsembleParams& e) {
  const int d = e.dim();
  switch (e.family()) {
    case StateFamily::kVacuumBranch:
      return 2.0 + 2.0 * e.overlap(0, 1);
    case StateFamily::kBalanced2:
    case StateFamily::kUnbalanced2: {
      const double p = e.overlap(0, 1);
      return 2.0 + 2.0 * p * p;
    }
    case StateFamily::kBalancedD: {
      double off = 0.0;
      for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
          const double p = e.overlap(i, j);
          off += 2.0 * p * p;
        }
      }
      return static_cast<double>(d) + off;
    }
    case StateFamily::kUnbalancedD: {
      double m = 0.0;
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) m += e.overlap(i, j) * e.overlap(i + 1, j + 1);
      }
      return m;
    }
  }
  throw DomainError("norm_factor: unknown family");
}

double jz_expect_vacuum(const EnsembleParams& e) {
  require(e, StateFamily::kVacuumBranch, "jz_expect_vacuum");
  const double n = norm_factor(e);
  const double e0 = e.eta(0), e1 = e.eta(1);
  return (e0 * e0 + e1 * e1 + 2.0 * e.overlap(0, 1) * e0 * e1) / (2.0 * n);
}

double jx_expect_vacuum(const EnsembleParams& e) {
  require(e, StateFamily::kVacuumBranch, "jx_expect_vacuum");
  // <i| A^dag B + A B^dag |j> = p_ij (eta_i^A eta_j^B + eta_i^B eta_j^A);
  // every branch has mode-B eigenvalue 0.
  constexpr double mode_b_eta = 0.0;
  double sum = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      sum += e.overlap(i, j) * (e.eta(i) * mode_b_eta + mode_b_eta * e.eta(j));
    }
  }
  return sum / (2.0 * norm_factor(e));
}

bool jx_expect_vacuum_is_zero(const EnsembleParams& e) { return jx_expect_vacuum(e) == 0.0; }

GpValue gp_vacuum(const EnsembleParams& e) {
  require(e, StateFamily::kVacuumBranch, "gp_vacuum");
  const double n = norm_factor(e);
  const double e0 = e.eta(0), e1 = e.eta(1);
  const double phase =
      kPi * std::cos(e.theta()) / n * (e0 * e0 + e1 * e1 + 2.0 * e.overlap(0, 1) * e0 * e1);
  return {phase, n};
}

GpValue gp_balanced(const EnsembleParams& e) {
  require(e, StateFamily::kBalanced2, "gp_balanced");
  const double m = norm_factor(e);
  const double e0 = e.eta(0), e1 = e.eta(1);
  const double p = e.overlap(0, 1);
  const double phase =
      -2.0 * kPi * std::sin(e.theta()) / m * ((e0 * e0 + e1 * e1) + 2.0 * p * p * e0 * e1);
  return {phase, m};
}

GpValue gp_unbalanced(const EnsembleParams& e) {
  require(e, StateFamily::kUnbalanced2, "gp_unbalanced");
  const double m = norm_factor(e);
  const double e0 = e.eta(0), e1 = e.eta(1);
  const double p = e.overlap(0, 1);
  const double phase =
      -2.0 * kPi * std::sin(e.theta()) / m * ((e0 * e0 + e1 * e1) * p * p + 2.0 * e0 * e1);
  return {phase, m};
}

GpValue gp_balanced_d(const EnsembleParams& e) {
  require(e, StateFamily::kBalancedD, "gp_balanced_d");
  const int d = e.dim();
  const double m = norm_factor(e);
  // Diagonal (p_ii = 1) first, then each unordered pair twice.
  double diag = 0.0;
  for (int i = 0; i < d; ++i) diag += e.eta(i) * e.eta(i);
  double off = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      const double p = e.overlap(i, j);
      off += 2.0 * p * p * e.eta(i) * e.eta(j);
    }
  }
  return {-2.0 * kPi * std::sin(e.theta()) / m * (diag + off), m};
}

UnbalancedDPhase gp_unbalanced_d(const EnsembleParams& e) {
  require(e, StateFamily::kUnbalancedD, "gp_unbalanced_d");
  const int d = e.dim();
  const double m = norm_factor(e);
  UnbalancedDPhase out;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const double w = e.overlap(i, j) * e.overlap(i + 1, j + 1);
      const double ei = e.eta(i), ej = e.eta(j);
      const double ei1 = e.eta(i + 1), ej1 = e.eta(j + 1);
      out.cos_sum += w * (ei * ej - ei1 * ej1);
      out.sin_sum_verbatim += w * (ei * ej1 - ej * ei1);
      out.sin_sum_corrected += w * (ei * ej1 + ej * ei1);
    }
  }
  const double c = kPi * std::cos(e.theta()) / m;
  const double s = kPi * std::sin(e.theta()) / m;
  out.verbatim = {c * out.cos_sum - s * out.sin_sum_verbatim, m};
  out.corrected = {c * out.cos_sum - s * out.sin_sum_corrected, m};
  return out;
}

GpValue gp_closed_form(const EnsembleParams& e) {
  switch (e.family()) {
    case StateFamily::kVacuumBranch: return gp_vacuum(e);
    case StateFamily::kBalanced2: return gp_balanced(e);
    case StateFamily::kUnbalanced2: return gp_unbalanced(e);
    case StateFamily::kBalancedD: return gp_balanced_d(e);
    case StateFamily::kUnbalancedD: return gp_unbalanced_d(e).corrected;
  }
  throw DomainError("gp_closed_form: unknown family");
}

}  // namespace escs
