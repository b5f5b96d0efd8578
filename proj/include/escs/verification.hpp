#pragma once

#include <span>
#include <string>
#include <vector>

#include "escs/closed_form.hpp"
#include "escs/figures.hpp"

namespace escs {

struct VerifyOptions {
  int phi_samples = 256;
  double cutoff_tol = 1e-12;
  /// Where the unbalanced d = 3 reference table, the discrepancy report and
  /// the generation fidelity report go. Empty: computed but not written.
  std::string artifact_dir;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
  ExitCode failure_code = ExitCode::kOracleMismatch;
  double seconds = 0.0;
  std::vector<std::string> warnings;
};

inline constexpr int kCriterionCount = 11;

/// Standard comparison grid: alpha0, alpha1 in {-1, -0.5, 0, 0.5, 1},
/// (r0, r1) in {(0,0), (0.25,0.25), (0.5,0.5)}, theta in {pi/4, pi/3}.
/// The d = 3 families add alpha2 = (alpha0 - alpha1)/2 with r2 = r0.
std::vector<EnsembleParams> standard_grid(StateFamily family);

/// Runs one criterion; exceptions are caught and reported as failures.
CriterionResult run_criterion(int id, const VerifyOptions& options);

/// Runs the listed criteria in order (all when `only` is empty).
std::vector<CriterionResult> run_acceptance(const VerifyOptions& options,
                                            std::span<const int> only = {});

/// One line per criterion.
std::string acceptance_table(const std::vector<CriterionResult>& results);
std::string acceptance_report_json(const std::vector<CriterionResult>& results,
                                   const VerifyOptions& options);

/// kOk when everything passed, else the failure code of the first failure.
ExitCode acceptance_exit_code(const std::vector<CriterionResult>& results);

}  // namespace escs
