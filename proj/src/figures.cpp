#include "escs/figures.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "escs/error.hpp"
#include "escs/oracle.hpp"

namespace escs {

namespace {

using Json = nlohmann::ordered_json;

// JSON number carrying the same 12 significant digits as the CSV output.
Json json_number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::strtod(format_number(x).c_str(), nullptr);
}

double parse_double(std::string_view text, std::string_view what) {
  const std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
    throw DomainError("cannot parse " + std::string(what) + " from '" + s + "'");
  }
  return v;
}

int parse_int(std::string_view text, std::string_view what) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw DomainError("cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
  }
  return v;
}

bool is_pair_family(StateFamily f) {
  return f == StateFamily::kVacuumBranch || f == StateFamily::kBalanced2 ||
         f == StateFamily::kUnbalanced2;
}

std::string curve_label(StateFamily family, int d, double r) {
  return std::string(to_string(family)) + "_d" + std::to_string(d) + "_r" + format_number(r);
}

void write_columns(std::ostream& os, const std::vector<std::string>& names,
                   const std::vector<const std::vector<double>*>& columns, OutputFormat format,
                   Json meta) {
  const std::size_t rows = columns.front()->size();
  if (format == OutputFormat::kCsv) {
    for (std::size_t c = 0; c < names.size(); ++c) os << (c ? "," : "") << names[c];
    os << '\n';
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t c = 0; c < columns.size(); ++c) {
        os << (c ? "," : "") << format_number((*columns[c])[i]);
      }
      os << '\n';
    }
    return;
  }
  Json out = std::move(meta);
  Json table = Json::array();
  for (std::size_t i = 0; i < rows; ++i) {
    Json row = Json::object();
    for (std::size_t c = 0; c < columns.size(); ++c) row[names[c]] = json_number((*columns[c])[i]);
    table.push_back(std::move(row));
  }
  out["rows"] = std::move(table);
  os << out.dump(2) << '\n';
}

}  // namespace

OutputFormat parse_format(std::string_view name) {
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "json") return OutputFormat::kJson;
  throw DomainError("unknown format '" + std::string(name) + "' (expected csv or json)");
}

AxisRange AxisRange::parse(std::string_view text) {
  const auto first = text.find(':');
  const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
  if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos) {
    throw DomainError("grid must look like min:max:steps, got '" + std::string(text) + "'");
  }
  AxisRange out;
  out.min = parse_double(text.substr(0, first), "grid min");
  out.max = parse_double(text.substr(first + 1, second - first - 1), "grid max");
  out.steps = parse_int(text.substr(second + 1), "grid steps");
  out.validate();
  return out;
}

void AxisRange::validate() const {
  if (!std::isfinite(min) || !std::isfinite(max) || !(min < max)) {
    throw DomainError("grid needs finite min < max");
  }
  if (steps < 2) throw DomainError("grid needs at least 2 steps");
}

double AxisRange::at(int k) const {
  const double n = steps - 1;
  return (min * (n - k) + max * k) / n;
}

void GridSpec::validate() const {
  alpha0_range.validate();
  alpha1_range.validate();
  if (!(r0 >= 0.0) || !(r1 >= 0.0) || !std::isfinite(r0) || !std::isfinite(r1)) {
    throw DomainError("squeezing r0, r1 must be finite and >= 0");
  }
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) throw DomainError("theta must lie in [0, pi]");
}

EnsembleParams GridSpec::at(double alpha0, double alpha1) const {
  const std::vector<double> alphas{alpha0, alpha1}, rs{r0, r1};
  return EnsembleParams::real(family, alphas, rs, theta);
}

void RunConfig::validate() const {
  if (phi_samples < 2 || phi_samples % 2 != 0) {
    throw DomainError("phi_samples must be even and >= 2");
  }
  if (!(cutoff_tol > 0.0 && cutoff_tol <= 1e-2)) throw DomainError("cutoff_tol must lie in (0, 1e-2]");
}

RunConfig RunConfig::from_json(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw DomainError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw DomainError("config must be a JSON object");
  RunConfig cfg;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "output_path") {
        cfg.output_path = value.get<std::string>();
      } else if (key == "format") {
        cfg.format = parse_format(value.get<std::string>());
      } else if (key == "oracle_check") {
        cfg.oracle_check = value.get<bool>();
      } else if (key == "phi_samples") {
        if (!value.is_number_integer()) throw DomainError("phi_samples must be an integer");
        cfg.phi_samples = value.get<int>();
      } else if (key == "cutoff_tol") {
        if (!value.is_number()) throw DomainError("cutoff_tol must be a number");
        cfg.cutoff_tol = value.get<double>();
      } else {
        throw DomainError("unknown config key '" + key + "'");
      }
    }
  } catch (const Json::type_error& e) {
    throw DomainError(std::string("config has a wrongly typed value: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

std::string RunConfig::to_json() const {
  Json j;
  j["output_path"] = output_path;
  j["format"] = format == OutputFormat::kCsv ? "csv" : "json";
  j["oracle_check"] = oracle_check;
  j["phi_samples"] = phi_samples;
  j["cutoff_tol"] = cutoff_tol;
  return j.dump(2);
}

std::string format_number(double x) {
  if (x == 0.0) return "0";
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

ExitCode ContourResult::status() const {
  if (oracle_checked && max_discrepancy > kOracleMismatchTol) return ExitCode::kOracleMismatch;
  if (oracle_checked && oracle_undefined > 0) return ExitCode::kConvergence;
  return ExitCode::kOk;
}

ContourResult evaluate_contour(const GridSpec& spec, const RunConfig& cfg) {
  spec.validate();
  cfg.validate();
  if (!is_pair_family(spec.family)) {
    throw DomainError("contour grids are defined for the two-branch families only");
  }
  ContourResult out;
  out.spec = spec;
  out.oracle_checked = cfg.oracle_check;
  out.projective_oracle = cfg.oracle_check && spec.r0 != spec.r1;
  for (int i = 0; i < spec.alpha0_range.steps; ++i) {
    const double a0 = spec.alpha0_range.at(i);
    for (int j = 0; j < spec.alpha1_range.steps; ++j) {
      const double a1 = spec.alpha1_range.at(j);
      const EnsembleParams e = spec.at(a0, a1);
      ContourPoint pt{a0, a1, gp_closed_form(e).phase, std::nullopt};
      if (cfg.oracle_check) {
        PathSpec p(e);
        p.phi_samples = cfg.phi_samples;
        p.cutoff_tol = cfg.cutoff_tol;
        if (out.projective_oracle) p.normalization = PathNormalization::kProjective;
        try {
          pt.oracle = geometric_phase_numeric(p).geometric_phase;
          out.max_discrepancy = std::max(out.max_discrepancy, std::abs(*pt.oracle - pt.gp));
        } catch (const OrthogonalityError&) {
          ++out.oracle_undefined;
        }
      }
      out.points.push_back(pt);
    }
  }
  return out;
}

void write_contour(std::ostream& os, const ContourResult& result, OutputFormat format) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (format == OutputFormat::kCsv) {
    os << "alpha0,alpha1,gp" << (result.oracle_checked ? ",gp_oracle" : "") << '\n';
    for (const auto& p : result.points) {
      os << format_number(p.alpha0) << ',' << format_number(p.alpha1) << ','
         << format_number(p.gp);
      if (result.oracle_checked) os << ',' << format_number(p.oracle.value_or(nan));
      os << '\n';
    }
    return;
  }
  Json out;
  out["family"] = std::string(to_string(result.spec.family));
  out["r0"] = json_number(result.spec.r0);
  out["r1"] = json_number(result.spec.r1);
  out["theta"] = json_number(result.spec.theta);
  if (result.oracle_checked) {
    out["max_discrepancy"] = json_number(result.max_discrepancy);
    out["oracle_undefined"] = result.oracle_undefined;
    out["projective_oracle"] = result.projective_oracle;
  }
  Json rows = Json::array();
  for (const auto& p : result.points) {
    Json row;
    row["alpha0"] = json_number(p.alpha0);
    row["alpha1"] = json_number(p.alpha1);
    row["gp"] = json_number(p.gp);
    if (result.oracle_checked) row["gp_oracle"] = json_number(p.oracle.value_or(nan));
    rows.push_back(std::move(row));
  }
  out["rows"] = std::move(rows);
  os << out.dump(2) << '\n';
}

std::string contour_summary(const ContourResult& result) {
  std::string s = std::string(to_string(result.spec.family)) + " r0=" +
                  format_number(result.spec.r0) + " r1=" + format_number(result.spec.r1) +
                  " points=" + std::to_string(result.points.size());
  if (result.oracle_checked) {
    s += " max_discrepancy=" + format_number(result.max_discrepancy) +
         " oracle_undefined=" + std::to_string(result.oracle_undefined) +
         (result.projective_oracle ? " oracle=projective" : " oracle=strict");
  }
  return s;
}

CompareCurve evaluate_compare(double r0, const AxisRange& alpha0, double theta) {
  alpha0.validate();
  CompareCurve c;
  c.r0 = r0;
  const std::vector<double> rs{r0, kCompareR1};
  for (int k = 0; k < alpha0.steps; ++k) {
    const double a0 = alpha0.at(k);
    const std::vector<double> alphas{a0, kCompareAlpha1};
    c.alpha0.push_back(a0);
    c.vacuum.push_back(
        gp_vacuum(EnsembleParams::real(StateFamily::kVacuumBranch, alphas, rs, theta)).modulus());
    c.balanced.push_back(
        gp_balanced(EnsembleParams::real(StateFamily::kBalanced2, alphas, rs, theta)).modulus());
  }
  return c;
}

void write_compare(std::ostream& os, const CompareCurve& curve, OutputFormat format) {
  Json meta;
  meta["r0"] = json_number(curve.r0);
  meta["alpha1"] = json_number(kCompareAlpha1);
  meta["r1"] = json_number(kCompareR1);
  write_columns(os, {"alpha0", "gp_vacuum", "gp_balanced"},
                {&curve.alpha0, &curve.vacuum, &curve.balanced}, format, std::move(meta));
}

InequalityCheck check_compare_inequality(double theta, int samples) {
  InequalityCheck out;
  out.worst_margin = std::numeric_limits<double>::infinity();
  const AxisRange band{1.0, 2.0, samples};
  for (double r0 : kCompareR0) {
    const CompareCurve c = evaluate_compare(r0, band, theta);
    for (std::size_t k = 0; k < c.alpha0.size(); ++k) {
      const double margin = c.balanced[k] - c.vacuum[k];
      if (margin < out.worst_margin) {
        out.worst_margin = margin;
        out.worst_alpha0 = c.alpha0[k];
        out.worst_r0 = r0;
      }
    }
  }
  out.holds = out.worst_margin >= 0.0;
  return out;
}

EnsembleParams special_case(StateFamily family, int d, double alpha, double r, double theta) {
  std::vector<double> alphas, rs;
  for (int i = 0; i < d; ++i) {
    alphas.push_back((i + 1) * alpha);
    rs.push_back((i + 1) * r);
  }
  return EnsembleParams::real(family, alphas, rs, theta);
}

namespace {

DScanCurve scan_curve(StateFamily family, int d, double r, const std::vector<double>& alpha,
                      double theta) {
  DScanCurve c{curve_label(family, d, r), family, d, r, {}};
  for (double a : alpha) c.values.push_back(gp_closed_form(special_case(family, d, a, r, theta)).modulus());
  return c;
}

std::vector<double> samples_of(const AxisRange& range) {
  range.validate();
  std::vector<double> out;
  for (int k = 0; k < range.steps; ++k) out.push_back(range.at(k));
  return out;
}

}  // namespace

DScanTable dscan_squeezing(const AxisRange& alpha, double theta) {
  DScanTable t{samples_of(alpha), {}};
  for (double r : {0.0, 0.2, 0.4, 0.6}) {
    t.curves.push_back(scan_curve(StateFamily::kBalancedD, 2, r, t.alpha, theta));
  }
  return t;
}

DScanTable dscan_dimension(const AxisRange& alpha, double theta) {
  DScanTable t{samples_of(alpha), {}};
  for (StateFamily f : {StateFamily::kBalancedD, StateFamily::kUnbalancedD}) {
    for (int d : {2, 3, 4}) t.curves.push_back(scan_curve(f, d, 0.2, t.alpha, theta));
  }
  return t;
}

void write_dscan(std::ostream& os, const DScanTable& table, OutputFormat format) {
  std::vector<std::string> names{"alpha"};
  std::vector<const std::vector<double>*> columns{&table.alpha};
  for (const auto& c : table.curves) {
    names.push_back(c.label);
    columns.push_back(&c.values);
  }
  write_columns(os, names, columns, format, Json::object());
}

OrderingCheck check_dscan(double theta, int samples) {
  OrderingCheck out;
  out.worst_margin = std::numeric_limits<double>::infinity();

  const AxisRange symmetric{-1.5, 1.5, 2 * samples + 1};
  for (const DScanTable& t : {dscan_squeezing(symmetric, theta), dscan_dimension(symmetric, theta)}) {
    for (const auto& c : t.curves) {
      const std::size_t n = c.values.size();
      for (std::size_t k = 0; k < n; ++k) {
        out.evenness_residual =
            std::max(out.evenness_residual, std::abs(c.values[k] - c.values[n - 1 - k]));
      }
    }
  }
  out.even = out.evenness_residual == 0.0;

  const DScanTable band = dscan_dimension(AxisRange{0.5, 1.5, samples}, theta);
  // curves: balanced d = 2, 3, 4 then unbalanced d = 2, 3, 4.
  for (std::size_t f = 0; f < 2; ++f) {
    for (std::size_t step = 0; step < 2; ++step) {
      const auto& lo = band.curves[3 * f + step].values;
      const auto& hi = band.curves[3 * f + step + 1].values;
      for (std::size_t k = 0; k < lo.size(); ++k) {
        out.worst_margin = std::min(out.worst_margin, hi[k] - lo[k]);
      }
    }
  }
  for (std::size_t d = 0; d < 3; ++d) {
    const auto& bal = band.curves[d].values;
    const auto& unbal = band.curves[3 + d].values;
    for (std::size_t k = 0; k < bal.size(); ++k) {
      out.max_balanced_unbalanced_diff =
          std::max(out.max_balanced_unbalanced_diff, std::abs(bal[k] - unbal[k]) / bal[k]);
    }
  }
  out.ordered = out.worst_margin >= 0.0;
  return out;
}

}  // namespace escs
