#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "elab/verify.hpp"
#include "json.hpp"

namespace {

using namespace elab;

// exit codes: 0 pass, 1 bound/suite violation, 2 usage or IO error
constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

double env_default_tol() {
  const char* s = std::getenv("ELLIPSOID_LAB_TOL");
  if (!s || !*s) return 1e-9;
  char* end = nullptr;
  const double v = std::strtod(s, &end);
  if (end == s || *end != '\0' || !(v >= 0.0))
    throw OutOfRange(std::string("ELLIPSOID_LAB_TOL is not a tolerance: ") + s);
  return v;
}

int parse_rank(const std::string& s) {
  if (s == "mixed") return 0;
  if (s == "1" || s == "2" || s == "3" || s == "4") return s[0] - '0';
  throw OutOfRange("--rank must be 1|2|3|4|mixed, got: " + s);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open for writing: " + path);
  os << text;
  if (!os) throw IoError("write failed: " + path);
}

struct ScanOptions {
  std::uint64_t samples = 100000;
  std::uint64_t seed = 42;
  std::string rank = "mixed";
  std::string ensemble = "ginibre-mixed";
  std::string out;
  std::string format = "csv";
  double tol = 1e-9;
  bool serial = false;
};

int cmd_scan(const ScanOptions& o) {
  EnsembleSpec spec;
  spec.kind = ensemble_from_name(o.ensemble);
  spec.rank = parse_rank(o.rank);
  spec.seed = o.seed;
  spec.count = o.samples;

  const ScanSummary s =
      run_scan(spec, o.tol, o.serial ? Exec::Serial : Exec::Parallel);

  const std::string out_path =
      o.out.empty() ? (o.format == "json" ? "scan.json" : "scan.csv") : o.out;
  std::ostringstream body;
  if (o.format == "json")
    write_scan_json(body, s);
  else
    write_scan_csv(body, s);
  write_text_file(out_path, body.str());

  std::cout << "scan: " << spec.count << " samples, " << s.singular_skips
            << " singular skips, max beta gap " << fmt17(s.max_beta_gap)
            << ", max fef gap " << fmt17(s.max_fef_gap) << ", violations "
            << s.violations << " -> " << out_path << '\n';

  if (s.violations > 0) {
    const std::string vpath = out_path + ".violations.json";
    write_text_file(vpath, scan_violations_json(s) + "\n");
    std::cout << "scan: bound violations serialized to " << vpath << '\n';
    return kExitViolation;
  }
  return kExitPass;
}

struct SweepOptions {
  int grid = 101;
  std::string out;
  std::string format = "csv";
  double tol = 1e-9;
};

int cmd_sweep(const SweepOptions& o) {
  const SweepSummary s = run_sweep(o.grid, o.tol);

  const std::string out_path =
      o.out.empty() ? (o.format == "json" ? "sweep.json" : "sweep.csv") : o.out;
  std::ostringstream body;
  if (o.format == "json")
    write_sweep_json(body, s);
  else
    write_sweep_csv(body, s);
  write_text_file(out_path, body.str());

  std::cout << "sweep: " << o.grid << " grid points, max mismatch "
            << fmt17(s.max_mismatch) << ", violations " << s.violations
            << " -> " << out_path << '\n';
  return s.violations > 0 ? kExitViolation : kExitPass;
}

struct VerifyOptions {
  std::uint64_t samples = 10000;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  std::string out;
  bool serial = false;
};

int cmd_verify(const VerifyOptions& o) {
  const VerifySummary v = run_verify(o.samples, o.seed, o.tol,
                                     o.serial ? Exec::Serial : Exec::Parallel);
  for (const std::string& w : v.warnings) std::cerr << "warning: " << w << '\n';

  const std::string text = verify_to_json(v);
  if (o.out.empty())
    std::cout << text;
  else
    write_text_file(o.out, text);

  for (const SuiteResult& s : v.suites)
    std::cerr << (s.passed ? "  ok  " : (s.fatal ? " FAIL " : " note "))
              << s.name << " (checked " << s.checked << ", violations "
              << s.violations << ")\n";
  return v.all_passed ? kExitPass : kExitViolation;
}

int cmd_state(const std::string& in_path, const std::string& out_path) {
  const CMat4 raw = read_state_file(in_path);
  const TwoQubitState st = TwoQubitState::validate(raw);
  const CorrelationReport rep = full_report(st);

  nlohmann::json j;
  j["report"]["beta"] = rep.beta;
  j["report"]["fef"] = rep.fef;
  j["report"]["fidelity"] = rep.fidelity;
  j["report"]["concurrence"] = rep.concurrence;
  j["report"]["negativity"] = rep.negativity;
  j["report"]["sym_extendible"] = rep.sym_extendible;
  if (rep.c_norm)
    j["report"]["c_norm"] = *rep.c_norm;
  else
    j["report"]["c_norm"] = nullptr;

  try {
    const SteeringEllipsoid e = ellipsoid_of(st);
    j["ellipsoid"]["center"] = e.center;
    j["ellipsoid"]["semiaxes"] = e.spectrum.s;
    j["ellipsoid"]["chi"] = e.spectrum.chi;
  } catch (const SingularMarginal& ex) {
    j["ellipsoid"] = nullptr;
    j["note"] = std::string("SingularMarginal: ") + ex.what();
  }

  const std::string text = j.dump(2) + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    write_text_file(out_path, text);
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"steering-ellipsoid toolkit for two-qubit states"};
  app.require_subcommand(1);

  ScanOptions scan_o;
  SweepOptions sweep_o;
  VerifyOptions verify_o;
  std::string state_in, state_out;

  CLI::App* scan = app.add_subcommand(
      "scan", "Monte Carlo scan of CHSH and fully-entangled-fraction bounds");
  scan->add_option("--samples", scan_o.samples, "number of random states");
  scan->add_option("--seed", scan_o.seed, "ensemble seed");
  scan->add_option("--rank", scan_o.rank, "1|2|3|4|mixed");
  scan->add_option("--ensemble", scan_o.ensemble,
                   "ginibre-mixed|pure|canonical-filtered");
  scan->add_option("--out", scan_o.out, "output path (default scan.csv)");
  scan->add_option("--format", scan_o.format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  scan->add_option("--tol", scan_o.tol, "bound tolerance");
  scan->add_flag("--serial", scan_o.serial, "disable the parallel kernel");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "closed-form sweep over the maximal-ellipsoid family");
  sweep->add_option("--grid", sweep_o.grid, "grid points on [0, 1]");
  sweep->add_option("--out", sweep_o.out, "output path (default sweep.csv)");
  sweep->add_option("--format", sweep_o.format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--tol", sweep_o.tol, "reference tolerance");

  CLI::App* verify = app.add_subcommand(
      "verify", "run every bound and consistency suite, emit a JSON summary");
  verify->add_option("--samples", verify_o.samples, "samples per suite");
  verify->add_option("--seed", verify_o.seed, "suite seed");
  verify->add_option("--tol", verify_o.tol, "bound tolerance");
  verify->add_option("--out", verify_o.out, "summary path (default stdout)");
  verify->add_flag("--serial", verify_o.serial, "disable the parallel kernel");

  CLI::App* state = app.add_subcommand(
      "state", "report all measures and the ellipsoid of one state file");
  state->add_option("--in", state_in, "state JSON file")->required();
  state->add_option("--out", state_out, "report path (default stdout)");

  try {
    const double tol = env_default_tol();
    scan_o.tol = sweep_o.tol = verify_o.tol = tol;

    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      const int rc = app.exit(e);
      return rc == 0 ? kExitPass : kExitUsage;
    }

    if (scan->parsed()) return cmd_scan(scan_o);
    if (sweep->parsed()) return cmd_sweep(sweep_o);
    if (verify->parsed()) return cmd_verify(verify_o);
    if (state->parsed()) return cmd_state(state_in, state_out);
    return kExitUsage;
  } catch (const elab::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
