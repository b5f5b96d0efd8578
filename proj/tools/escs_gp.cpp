// Command-line front end: contour grids, comparison and dimension scans,
// the acceptance suite and the interferometer experiments.

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "escs/error.hpp"
#include "escs/figures.hpp"
#include "escs/interferometer.hpp"
#include "escs/verification.hpp"

namespace fs = std::filesystem;
using namespace escs;

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config;
  std::string family = "vacuum";
  double r0 = 0.0;
  double r1 = 0.0;
  double theta = std::numbers::pi / 4.0;
  std::string grid;
  std::string format;
  bool oracle_check = false;
  int phi_samples = 0;
  std::string out;
  double cutoff_tol = 0.0;
  bool all_pairs = false;
  std::vector<int> criteria;
};

int code(ExitCode c) { return static_cast<int>(c); }

std::string extension(OutputFormat f) { return f == OutputFormat::kCsv ? ".csv" : ".json"; }

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  body(out);
  out.flush();
  if (!out) throw IoError("write to " + path.string() + " failed");
}

// Single output: the file named by --out, or stdout.
void emit(const std::string& out, const std::function<void(std::ostream&)>& body) {
  if (out.empty()) {
    body(std::cout);
  } else {
    write_file(out, body);
  }
}

fs::path output_dir(const std::string& out) {
  const fs::path dir = out.empty() ? fs::path(".") : fs::path(out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  return dir;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunConfig resolve_config(const Options& o, const CLI::App& app) {
  RunConfig cfg = o.config.empty() ? RunConfig{} : RunConfig::from_json(read_text(o.config));
  if (app.count("--out")) cfg.output_path = o.out;
  if (app.count("--format")) cfg.format = parse_format(o.format);
  if (app.count("--oracle-check")) cfg.oracle_check = o.oracle_check;
  if (app.count("--phi-samples")) cfg.phi_samples = o.phi_samples;
  if (app.count("--cutoff-tol")) cfg.cutoff_tol = o.cutoff_tol;
  cfg.validate();
  return cfg;
}

AxisRange resolve_grid(const Options& o, AxisRange fallback) {
  return o.grid.empty() ? fallback : AxisRange::parse(o.grid);
}

int cmd_contour(const Options& o, const RunConfig& cfg) {
  GridSpec spec;
  spec.family = parse_family(o.family);
  spec.theta = o.theta;
  spec.alpha0_range = spec.alpha1_range = resolve_grid(o, AxisRange{});

  std::vector<std::pair<double, double>> pairs;
  if (o.all_pairs) {
    pairs.assign(kContourPairs.begin(), kContourPairs.end());
  } else {
    pairs.emplace_back(o.r0, o.r1);
  }

  ExitCode worst = ExitCode::kOk;
  const fs::path dir = o.all_pairs ? output_dir(cfg.output_path) : fs::path();
  for (const auto& [r0, r1] : pairs) {
    spec.r0 = r0;
    spec.r1 = r1;
    const ContourResult res = evaluate_contour(spec, cfg);
    const auto body = [&](std::ostream& os) { write_contour(os, res, cfg.format); };
    if (o.all_pairs) {
      write_file(dir / ("contour_" + std::string(to_string(spec.family)) + "_r0_" +
                        format_number(r0) + "_r1_" + format_number(r1) + extension(cfg.format)),
                 body);
    } else {
      emit(cfg.output_path, body);
    }
    std::cerr << contour_summary(res) << '\n';
    const ExitCode st = res.status();
    if (st == ExitCode::kOracleMismatch || worst == ExitCode::kOk) worst = st;
  }
  return code(worst);
}

int cmd_compare(const Options& o, const RunConfig& cfg) {
  const AxisRange axis = resolve_grid(o, AxisRange{-3.0, 3.0, 121});
  const fs::path dir = output_dir(cfg.output_path);
  for (double r0 : kCompareR0) {
    const CompareCurve c = evaluate_compare(r0, axis, o.theta);
    write_file(dir / ("compare_r0_" + format_number(r0) + extension(cfg.format)),
               [&](std::ostream& os) { write_compare(os, c, cfg.format); });
  }
  const InequalityCheck chk = check_compare_inequality(o.theta);
  std::cout << (chk.holds ? "PASS" : "FAIL")
            << " |balanced| >= |vacuum| on alpha0 in [1,2]: min margin "
            << format_number(chk.worst_margin) << " at alpha0=" << format_number(chk.worst_alpha0)
            << " r0=" << format_number(chk.worst_r0) << '\n';
  return code(chk.holds ? ExitCode::kOk : ExitCode::kOracleMismatch);
}

int cmd_dscan(const Options& o, const RunConfig& cfg) {
  const AxisRange axis = resolve_grid(o, AxisRange{-3.0, 3.0, 121});
  const fs::path dir = output_dir(cfg.output_path);
  const DScanTable squeezing = dscan_squeezing(axis, o.theta);
  const DScanTable dimension = dscan_dimension(axis, o.theta);
  write_file(dir / ("dscan_squeezing" + extension(cfg.format)),
             [&](std::ostream& os) { write_dscan(os, squeezing, cfg.format); });
  write_file(dir / ("dscan_dimension" + extension(cfg.format)),
             [&](std::ostream& os) { write_dscan(os, dimension, cfg.format); });
  const OrderingCheck chk = check_dscan(o.theta);
  std::cout << (chk.even ? "PASS" : "FAIL") << " evenness residual "
            << format_number(chk.evenness_residual) << '\n'
            << (chk.ordered ? "PASS" : "FAIL") << " |gp(d=4)| >= |gp(d=3)| >= |gp(d=2)| on [0.5,1.5]: min margin "
            << format_number(chk.worst_margin) << '\n'
            << "INFO max relative balanced/unbalanced difference "
            << format_number(chk.max_balanced_unbalanced_diff) << '\n';
  return code(chk.even && chk.ordered ? ExitCode::kOk : ExitCode::kOracleMismatch);
}

int cmd_verify(const Options& o, const RunConfig& cfg) {
  VerifyOptions vo;
  vo.phi_samples = cfg.phi_samples;
  vo.cutoff_tol = cfg.cutoff_tol;
  vo.artifact_dir = cfg.output_path;
  const auto results = run_acceptance(vo, o.criteria);
  std::cout << acceptance_table(results);
  if (!cfg.output_path.empty()) {
    write_file(fs::path(cfg.output_path) / "report.json",
               [&](std::ostream& os) { os << acceptance_report_json(results, vo) << '\n'; });
  }
  return code(acceptance_exit_code(results));
}

int cmd_interferometer(const Options&, const RunConfig& cfg) {
  const GeneratorSet g10 = build_generators(10);
  double identity = 0.0;
  for (double phi : {0.0, std::numbers::pi / 2.0, 1.0, 2.5, 4.0}) {
    identity = std::max(identity,
                        exact_sector_difference(compose_setup(g10, phi), rotation_z(g10, phi)));
  }
  std::cerr << "setup identity residual (cutoff 10): " << format_number(identity) << '\n';

  struct Row {
    double a0, a1, r;
    GenerationReport rep;
  };
  std::vector<Row> rows;
  for (const auto& [a0, a1] : {std::pair{0.0, 0.0}, {1.0, -1.0}, {1.0, 0.5}}) {
    for (double r : {0.0, 0.1, 0.3, 0.5}) {
      rows.push_back({a0, a1, r, generation_experiment(a0, a1, r, r, r == 0.0 ? 40 : 0)});
    }
  }
  bool certified = identity < 1e-8;
  for (const auto& row : rows) {
    if (row.r == 0.0 && row.rep.fidelity_squeezed_target < 1.0 - 1e-8) certified = false;
  }

  std::vector<double> a0s, a1s, rs, cuts, fsq, fco;
  for (const auto& row : rows) {
    a0s.push_back(row.a0);
    a1s.push_back(row.a1);
    rs.push_back(row.r);
    cuts.push_back(row.rep.cutoff);
    fsq.push_back(row.rep.fidelity_squeezed_target);
    fco.push_back(row.rep.fidelity_coherent_target);
  }
  emit(cfg.output_path, [&](std::ostream& os) {
    if (cfg.format == OutputFormat::kCsv) {
      os << "alpha0,alpha1,r,cutoff,fidelity_squeezed_target,fidelity_coherent_target\n";
      for (std::size_t i = 0; i < rows.size(); ++i) {
        os << format_number(a0s[i]) << ',' << format_number(a1s[i]) << ',' << format_number(rs[i])
           << ',' << format_number(cuts[i]) << ',' << format_number(fsq[i]) << ','
           << format_number(fco[i]) << '\n';
      }
    } else {
      os << "{\n  \"setup_identity_residual\": " << format_number(identity) << ",\n  \"rows\": [\n";
      for (std::size_t i = 0; i < rows.size(); ++i) {
        os << "    {\"alpha0\": " << format_number(a0s[i]) << ", \"alpha1\": "
           << format_number(a1s[i]) << ", \"r\": " << format_number(rs[i])
           << ", \"cutoff\": " << format_number(cuts[i])
           << ", \"fidelity_squeezed_target\": " << format_number(fsq[i])
           << ", \"fidelity_coherent_target\": " << format_number(fco[i]) << "}"
           << (i + 1 < rows.size() ? "," : "") << '\n';
      }
      os << "  ]\n}\n";
    }
  });
  return code(certified ? ExitCode::kOk : ExitCode::kOracleMismatch);
}

// "--grid -3:3:81" and "--r0 -1" would otherwise be read as unknown flags.
std::vector<std::string> join_negative_values(int argc, char** argv) {
  static const std::array<std::string_view, 5> kValued{"--grid", "--r0", "--r1", "--theta", "--cutoff-tol"};
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) {
    const std::string_view a = argv[i];
    if (i + 1 < argc && argv[i + 1][0] == '-' &&
        std::find(kValued.begin(), kValued.end(), a) != kValued.end()) {
      args.push_back(std::string(a) + "=" + argv[++i]);
    } else {
      args.emplace_back(a);
    }
  }
  std::reverse(args.begin(), args.end());
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometric phases of two-mode entangled squeezed-coherent states"};
  app.require_subcommand(1);
  Options o;

  app.add_option("--config", o.config, "JSON file with output_path, format, oracle_check, phi_samples, cutoff_tol");
  app.add_option("--family", o.family, "vacuum | balanced | unbalanced");
  app.add_option("--r0", o.r0, "squeezing of branch 0");
  app.add_option("--r1", o.r1, "squeezing of branch 1");
  app.add_option("--theta", o.theta, "polar angle of the rotation, in [0, pi]");
  app.add_option("--grid", o.grid, "alpha axis as min:max:steps");
  app.add_option("--format", o.format, "csv | json");
  app.add_flag("--oracle-check", o.oracle_check, "also evaluate the quadrature oracle");
  app.add_option("--phi-samples", o.phi_samples, "Simpson subintervals over [0, 2 pi]");
  app.add_option("--out", o.out, "output file (contour, interferometer) or directory");
  app.add_option("--cutoff-tol", o.cutoff_tol, "Fock tail tolerance for automatic cutoffs");

  app.fallthrough();
  CLI::App* contour = app.add_subcommand("contour", "GP over an (alpha0, alpha1) grid");
  contour->add_flag("--all-pairs", o.all_pairs, "write every figure (r0, r1) pair into --out");
  app.add_subcommand("compare", "vacuum-branch vs balanced moduli along alpha0");
  app.add_subcommand("dscan", "moduli along alpha for several r and d");
  CLI::App* verify = app.add_subcommand("verify", "run the acceptance criteria");
  verify->add_option("--criterion", o.criteria, "restrict to these criterion ids");
  app.add_subcommand("interferometer", "setup identity and generation fidelities");

  try {
    std::vector<std::string> args = join_negative_values(argc, argv);
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return code(ExitCode::kInvalidConfig);
  }

  try {
    const RunConfig cfg = resolve_config(o, app);
    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "contour") return cmd_contour(o, cfg);
    if (cmd == "compare") return cmd_compare(o, cfg);
    if (cmd == "dscan") return cmd_dscan(o, cfg);
    if (cmd == "verify") return cmd_verify(o, cfg);
    return cmd_interferometer(o, cfg);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return code(ExitCode::kIo);
  } catch (const DomainError& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return code(ExitCode::kInvalidConfig);
  } catch (const Error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return code(ExitCode::kConvergence);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return code(ExitCode::kIo);
  }
}
