#pragma once

#include <array>
#include <iosfwd>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "escs/closed_form.hpp"

namespace escs {

enum class ExitCode : int {
  kOk = 0,
  kIo = 1,
  kOracleMismatch = 2,
  kConvergence = 3,
  kInvalidConfig = 4,
};

enum class OutputFormat { kCsv, kJson };
/// "csv" or "json"; DomainError otherwise.
OutputFormat parse_format(std::string_view name);

/// Evenly spaced samples min..max inclusive.
struct AxisRange {
  double min = -3.0;
  double max = 3.0;
  int steps = 81;

  /// Parses "min:max:steps"; DomainError on malformed text or a bad range.
  static AxisRange parse(std::string_view text);
  void validate() const;
  /// Written so that at(k) == -at(steps - 1 - k) exactly for a symmetric range.
  double at(int k) const;
};

struct GridSpec {
  AxisRange alpha0_range;
  AxisRange alpha1_range;
  double r0 = 0.0;
  double r1 = 0.0;
  double theta = std::numbers::pi / 4.0;
  StateFamily family = StateFamily::kVacuumBranch;

  void validate() const;
  /// Two-branch ensemble at one grid point.
  EnsembleParams at(double alpha0, double alpha1) const;
};

struct RunConfig {
  std::string output_path;
  OutputFormat format = OutputFormat::kCsv;
  bool oracle_check = false;
  int phi_samples = 256;
  double cutoff_tol = 1e-12;

  void validate() const;
  /// Keys as the field names; unknown keys and wrong types raise DomainError.
  static RunConfig from_json(std::string_view text);
  std::string to_json() const;
};

/// "%.12g" with negative zero written as 0.
std::string format_number(double x);

/// (r0, r1) pairs of the contour figures.
inline constexpr std::array<std::pair<double, double>, 9> kContourPairs{{
    {0.0, 0.0}, {0.5, 0.5}, {1.0, 1.0},
    {0.0, 0.4}, {0.0, 0.8}, {0.0, 1.2},
    {0.4, 0.0}, {0.8, 0.0}, {1.2, 0.0},
}};

/// Closed form vs oracle disagreement that fails a contour run.
inline constexpr double kOracleMismatchTol = 1e-5;

struct ContourPoint {
  double alpha0 = 0.0;
  double alpha1 = 0.0;
  double gp = 0.0;
  /// Empty when the oracle is undefined there (ends of the path orthogonal).
  std::optional<double> oracle;
};

struct ContourResult {
  GridSpec spec;
  std::vector<ContourPoint> points;  // alpha0-major
  bool oracle_checked = false;
  /// r0 != r1: the path is not norm preserving and the oracle renormalizes.
  bool projective_oracle = false;
  double max_discrepancy = 0.0;
  int oracle_undefined = 0;

  /// kOracleMismatch above kOracleMismatchTol, else kConvergence when some
  /// oracle point is undefined, else kOk.
  ExitCode status() const;
};

ContourResult evaluate_contour(const GridSpec& spec, const RunConfig& cfg);
void write_contour(std::ostream& os, const ContourResult& result, OutputFormat format);
std::string contour_summary(const ContourResult& result);

/// Comparison of the vacuum-branch and balanced moduli at alpha1 = 0.5, r1 = 0.2.
inline constexpr double kCompareAlpha1 = 0.5;
inline constexpr double kCompareR1 = 0.2;
inline constexpr std::array<double, 4> kCompareR0{0.0, 0.5, 1.0, 1.5};

struct CompareCurve {
  double r0 = 0.0;
  std::vector<double> alpha0;
  std::vector<double> vacuum;    // |gp|
  std::vector<double> balanced;  // |gp|
};

CompareCurve evaluate_compare(double r0, const AxisRange& alpha0, double theta);
void write_compare(std::ostream& os, const CompareCurve& curve, OutputFormat format);

struct InequalityCheck {
  bool holds = true;
  /// min over samples of |balanced| - |vacuum|.
  double worst_margin = 0.0;
  double worst_alpha0 = 0.0;
  double worst_r0 = 0.0;
};

/// |balanced| >= |vacuum| on `samples` points of alpha0 in [1, 2], all kCompareR0.
InequalityCheck check_compare_inequality(double theta, int samples = 101);

/// Branches alpha_i = (i + 1) alpha, r_i = (i + 1) r.
EnsembleParams special_case(StateFamily family, int d, double alpha, double r, double theta);

struct DScanCurve {
  std::string label;
  StateFamily family = StateFamily::kBalancedD;
  int d = 2;
  double r = 0.0;
  std::vector<double> values;  // |gp|
};

struct DScanTable {
  std::vector<double> alpha;
  std::vector<DScanCurve> curves;
};

/// Balanced, d = 2, r in {0, 0.2, 0.4, 0.6}.
DScanTable dscan_squeezing(const AxisRange& alpha, double theta);
/// r = 0.2, d in {2, 3, 4}, balanced and unbalanced.
DScanTable dscan_dimension(const AxisRange& alpha, double theta);
void write_dscan(std::ostream& os, const DScanTable& table, OutputFormat format);

struct OrderingCheck {
  bool even = true;
  bool ordered = true;
  /// max |gp(alpha) - gp(-alpha)| over every curve (0 when exact).
  double evenness_residual = 0.0;
  /// min over samples and families of |gp(d+1)| - |gp(d)|.
  double worst_margin = 0.0;
  /// max relative difference between the balanced and unbalanced moduli.
  double max_balanced_unbalanced_diff = 0.0;
};

/// Evenness on a symmetric alpha grid and the d-ordering on alpha in [0.5, 1.5].
OrderingCheck check_dscan(double theta, int samples = 101);

}  // namespace escs
