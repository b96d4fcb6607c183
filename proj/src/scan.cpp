#include "elab/scan.hpp"

#include <cmath>
#include <limits>
#include <ostream>

namespace elab {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

double chsh_center_bound(double c_norm) {
  return std::max(2.0 * std::sqrt(2.0 * (1.0 - c_norm)), 2.0);
}

double fef_center_bound(double c_norm) { return 1.0 - 0.5 * c_norm; }

std::optional<ScanRecord> scan_sample(const EnsembleSpec& spec,
                                      std::uint64_t index) {
  const DrawnState d = draw_random(spec, index);

  double c_norm;
  try {
    c_norm = ellipsoid_of(d.state).c_norm();
  } catch (const SingularMarginal&) {
    return std::nullopt;
  }

  ScanRecord r;
  r.index = index;
  r.rank = d.rank;
  r.c_norm = c_norm;
  r.beta = chsh_beta(d.state);
  r.fef = fully_entangled_fraction(d.state);
  r.beta_bound = chsh_center_bound(c_norm);
  r.fef_bound = fef_center_bound(c_norm);
  return r;
}

ScanSummary run_scan(const EnsembleSpec& spec, double tol, Exec exec) {
  ScanSummary out;
  out.spec = spec;
  out.tol = tol;
  out.records.resize(spec.count);

  for_each_index(spec.count, exec,
                 [&](std::uint64_t i) { out.records[i] = scan_sample(spec, i); });

  out.max_beta_gap = kNegInf;
  out.max_fef_gap = kNegInf;
  for (const auto& rec : out.records) {
    if (!rec) {
      ++out.singular_skips;
      continue;
    }
    const double bg = rec->beta - rec->beta_bound;
    const double fg = rec->fef - rec->fef_bound;
    out.max_beta_gap = std::max(out.max_beta_gap, bg);
    out.max_fef_gap = std::max(out.max_fef_gap, fg);
    if (bg > tol || fg > tol) ++out.violations;
  }
  return out;
}

SweepSummary run_sweep(int grid_points, double tol) {
  if (grid_points < 2) throw OutOfRange("run_sweep: need at least 2 grid points");

  SweepSummary out;
  out.tol = tol;
  out.records.reserve(static_cast<std::size_t>(grid_points));
  out.max_mismatch = 0.0;

  for (int i = 0; i < grid_points; ++i) {
    const double c = static_cast<double>(i) / (grid_points - 1);
    const TwoQubitState st = max_obese(c);

    SweepRecord r;
    r.c = c;
    r.report = full_report(st);
    r.beta_ref = 2.0 * std::sqrt(2.0 * (1.0 - c));
    const double root = std::sqrt(1.0 - c);
    r.fef_ref = 0.25 * (1.0 + root) * (1.0 + root);
    r.c_ref = root;
    r.n_ref = 1.0 - c;
    r.extendible_ref = c >= 0.5;

    double m = std::abs(r.report.beta - r.beta_ref);
    m = std::max(m, std::abs(r.report.fef - r.fef_ref));
    m = std::max(m, std::abs(r.report.fidelity -
                             teleportation_fidelity(r.fef_ref)));
    m = std::max(m, std::abs(r.report.concurrence - r.c_ref));
    m = std::max(m, std::abs(r.report.negativity - r.n_ref));
    m = std::max(m, std::abs(r.report.concurrence -
                             std::sqrt(r.report.negativity)));
    if (r.report.sym_extendible != r.extendible_ref)
      m = std::numeric_limits<double>::infinity();
    r.mismatch = m;

    out.max_mismatch = std::max(out.max_mismatch, m);
    if (m > tol) ++out.violations;
    out.records.push_back(r);
  }
  return out;
}

void write_scan_csv(std::ostream& os, const ScanSummary& s) {
  os << "index,rank,c_norm,beta,fef,beta_bound,fef_bound\n";
  for (const auto& rec : s.records) {
    if (!rec) continue;
    os << rec->index << ',' << rec->rank << ',' << fmt17(rec->c_norm) << ','
       << fmt17(rec->beta) << ',' << fmt17(rec->fef) << ','
       << fmt17(rec->beta_bound) << ',' << fmt17(rec->fef_bound) << '\n';
  }
}

void write_scan_json(std::ostream& os, const ScanSummary& s) {
  os << "{\"ensemble\":\"" << ensemble_name(s.spec.kind) << "\",\"seed\":"
     << s.spec.seed << ",\"count\":" << s.spec.count
     << ",\"singular_skips\":" << s.singular_skips
     << ",\"violations\":" << s.violations << ",\"records\":[";
  bool first = true;
  for (const auto& rec : s.records) {
    if (!rec) continue;
    if (!first) os << ',';
    first = false;
    os << "{\"index\":" << rec->index << ",\"rank\":" << rec->rank
       << ",\"c_norm\":" << fmt17(rec->c_norm) << ",\"beta\":"
       << fmt17(rec->beta) << ",\"fef\":" << fmt17(rec->fef)
       << ",\"beta_bound\":" << fmt17(rec->beta_bound) << ",\"fef_bound\":"
       << fmt17(rec->fef_bound) << '}';
  }
  os << "]}\n";
}

void write_sweep_csv(std::ostream& os, const SweepSummary& s) {
  os << "c,beta,fef,fidelity,concurrence,negativity,extendible,"
        "beta_ref,fef_ref,c_ref,n_ref\n";
  for (const auto& r : s.records) {
    os << fmt17(r.c) << ',' << fmt17(r.report.beta) << ',' << fmt17(r.report.fef)
       << ',' << fmt17(r.report.fidelity) << ',' << fmt17(r.report.concurrence)
       << ',' << fmt17(r.report.negativity) << ','
       << (r.report.sym_extendible ? 1 : 0) << ',' << fmt17(r.beta_ref) << ','
       << fmt17(r.fef_ref) << ',' << fmt17(r.c_ref) << ',' << fmt17(r.n_ref)
       << '\n';
  }
}

void write_sweep_json(std::ostream& os, const SweepSummary& s) {
  os << "{\"violations\":" << s.violations << ",\"max_mismatch\":"
     << fmt17(s.max_mismatch) << ",\"records\":[";
  bool first = true;
  for (const auto& r : s.records) {
    if (!first) os << ',';
    first = false;
    os << "{\"c\":" << fmt17(r.c) << ",\"beta\":" << fmt17(r.report.beta)
       << ",\"fef\":" << fmt17(r.report.fef) << ",\"fidelity\":"
       << fmt17(r.report.fidelity) << ",\"concurrence\":"
       << fmt17(r.report.concurrence) << ",\"negativity\":"
       << fmt17(r.report.negativity) << ",\"extendible\":"
       << (r.report.sym_extendible ? "true" : "false") << ",\"beta_ref\":"
       << fmt17(r.beta_ref) << ",\"fef_ref\":" << fmt17(r.fef_ref)
       << ",\"c_ref\":" << fmt17(r.c_ref) << ",\"n_ref\":" << fmt17(r.n_ref)
       << '}';
  }
  os << "]}\n";
}

std::string scan_violations_json(const ScanSummary& s) {
  std::string out = "[";
  bool first = true;
  for (const auto& rec : s.records) {
    if (!rec) continue;
    if (rec->beta - rec->beta_bound <= s.tol &&
        rec->fef - rec->fef_bound <= s.tol)
      continue;
    if (!first) out += ',';
    first = false;
    const TwoQubitState st = sample_random(s.spec, rec->index);
    out += "{\"index\":" + std::to_string(rec->index) + ",\"state\":";
    out += state_to_json(st.matrix());
    out += '}';
  }
  out += "]";
  return out;
}

}  // namespace elab
