#include "aar/cli.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "aar/io.hpp"

namespace aar {
namespace {

void write_json_file(const std::string& path, const json& j) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot write " + path);
  f << j.dump(2) << '\n';
}

int exit_for(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return kExitOk;
    case SolveStatus::MaxIterReached: return kExitMaxIter;
    case SolveStatus::DomainError: return kExitDomainError;
  }
  return kExitDomainError;
}

struct SolveOpts {
  std::string config;
  std::string trace;
  std::string out;
};

int cmd_solve(const SolveOpts& o, std::ostream& out) {
  const ProblemDocument doc = load_problem(o.config);
  return std::visit(
      [&](const auto& problem) {
        const auto result = solve(problem, doc.config);
        if (!o.trace.empty()) {
          std::ofstream f(o.trace);
          if (!f) throw InputError("cannot write " + o.trace);
          write_trace_csv(f, result.trace);
        }
        const json j = result_to_json(result);
        if (o.out.empty()) {
          out << j.dump(2) << '\n';
        } else {
          write_json_file(o.out, j);
          out << "status: " << to_string(result.status) << " after " << result.iterations
              << " iterations\n";
        }
        return exit_for(result.status);
      },
      doc.problem);
}

int report_table(const std::vector<Comparison>& rows, const json& report, const std::string& path,
                 std::ostream& out) {
  out << format_table(rows);
  if (!path.empty()) {
    json j = report;
    j["comparison"] = comparisons_to_json(rows);
    write_json_file(path, j);
  }
  for (const Comparison& c : rows)
    if (!c.within) return kExitMismatch;
  return kExitOk;
}

int cmd_rate_bound(const RateBoundQuery& q, const std::string& path, std::ostream& out) {
  const RateBound r = rate_bound(q);
  out << "M=" << r.M << '\n';
  if (r.value) out << "Phi=" << *r.value << '\n';
  else out << "Phi=overflow\n";
  std::ostringstream sci;
  sci << std::setprecision(15) << r.mantissa << "e" << r.exponent;
  out << "Phi~" << sci.str() << " (log10 " << std::setprecision(12) << r.log10_value << ")\n";
  if (!path.empty()) write_json_file(path, report_to_json(r));
  return kExitOk;
}

int cmd_check(const std::string& suite, const CheckOptions& o, const std::string& path,
              std::ostream& out) {
  const std::vector<SuiteReport> reports = run_suite(suite, o);
  std::size_t violations = 0;
  json all = json::array();
  for (const SuiteReport& r : reports) {
    out << format_report(r) << '\n';
    violations += r.violations;
    all.push_back(report_to_json(r));
  }
  out << "total violations: " << violations << '\n';
  if (!path.empty()) write_json_file(path, all);
  return violations == 0 ? kExitOk : kExitViolations;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Averaged alternating reflections in constant-curvature model spaces"};
  app.require_subcommand(1);

  SolveOpts solve_opts;
  auto* solve_cmd = app.add_subcommand("solve", "Run the solver on a problem document");
  solve_cmd->add_option("--config", solve_opts.config, "Problem JSON")->required();
  solve_cmd->add_option("--trace", solve_opts.trace, "Write the iterate trace as CSV");
  solve_cmd->add_option("--out", solve_opts.out, "Write the result JSON here instead of stdout");

  std::string report_path;
  auto* repro = app.add_subcommand("reproduce", "Recompute the reference counterexamples");
  repro->require_subcommand(1);
  double h = kGluingDefaultH;
  double z = gluing_default_z();
  auto* gluing = repro->add_subcommand("gluing", "Gluing of E^2 and H^2 along a line");
  gluing->set_help_flag("--help", "Print this help message and exit");
  gluing->add_option("--h", h, "Height of y above the gluing line");
  gluing->add_option("--z", z, "cosh of the distance from p to the line");
  gluing->add_option("--out", report_path, "Write the report JSON");
  auto* sphere = repro->add_subcommand("sphere", "The averaged map on S^2");
  sphere->add_option("--out", report_path, "Write the report JSON");

  RateBoundQuery query;
  auto* rate = app.add_subcommand("rate-bound", "Evaluate the asymptotic regularity bound");
  rate->add_option("--eps", query.eps)->required();
  rate->add_option("--b", query.b)->required();
  rate->add_option("--K", query.K)->required();
  rate->add_option("--out", report_path, "Write the result JSON");

  std::string suite;
  CheckOptions check_opts;
  auto* check = app.add_subcommand("check", "Run randomized property suites");
  check->add_option("--suite", suite)
      ->required()
      ->check(CLI::IsMember({"nonexpansivity", "projection", "solver", "appendix", "all"}));
  check->add_option("--samples", check_opts.samples, "Samples per suite");
  check->add_option("--seed", check_opts.seed, "Base seed");
  check->add_option("--out", report_path, "Write the reports as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve_opts, out);
    if (*gluing) {
      const auto r = gluing_counterexample(h, z);
      return report_table(compare_gluing(r), report_to_json(r), report_path, out);
    }
    if (*sphere) {
      const auto r = spherical_counterexample();
      return report_table(compare_spherical(r), report_to_json(r), report_path, out);
    }
    if (*rate) return cmd_rate_bound(query, report_path, out);
    if (*check) return cmd_check(suite, check_opts, report_path, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const GeometryError& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  err << app.help();
  return kExitUsage;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"aar"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace aar
