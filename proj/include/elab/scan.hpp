#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "elab/correlations.hpp"
#include "elab/parallel.hpp"

namespace elab {

// Bounds on CHSH value and fully entangled fraction as functions of the
// ellipsoid-center magnitude; the Monte Carlo scan tries to falsify them.
double chsh_center_bound(double c_norm);  // max(2*sqrt(2(1-c)), 2)
double fef_center_bound(double c_norm);   // 1 - c/2

struct ScanRecord {
  std::uint64_t index;
  int rank;
  double c_norm;
  double beta;
  double fef;
  double beta_bound;
  double fef_bound;
};

struct ScanSummary {
  EnsembleSpec spec{};
  double tol = 0.0;
  std::vector<std::optional<ScanRecord>> records;  // nullopt = singular skip
  std::uint64_t singular_skips = 0;
  std::uint64_t violations = 0;
  double max_beta_gap = 0.0;  // max(beta - beta_bound); -inf when empty
  double max_fef_gap = 0.0;
};

// The per-sample kernel; nullopt when the marginal is singular.
std::optional<ScanRecord> scan_sample(const EnsembleSpec& spec,
                                      std::uint64_t index);

ScanSummary run_scan(const EnsembleSpec& spec, double tol, Exec exec);

struct SweepRecord {
  double c;
  CorrelationReport report;
  double beta_ref;  // 2*sqrt(2(1-c))
  double fef_ref;   // (1 + sqrt(1-c))^2 / 4
  double c_ref;     // sqrt(1-c), concurrence reference
  double n_ref;     // 1-c, negativity reference
  bool extendible_ref;
  double mismatch;  // worst measured-vs-reference deviation, inf on bool mismatch
};

struct SweepSummary {
  double tol = 0.0;
  std::vector<SweepRecord> records;
  std::uint64_t violations = 0;
  double max_mismatch = 0.0;
};

SweepSummary run_sweep(int grid_points, double tol);

void write_scan_csv(std::ostream& os, const ScanSummary& s);
void write_scan_json(std::ostream& os, const ScanSummary& s);
void write_sweep_csv(std::ostream& os, const SweepSummary& s);
void write_sweep_json(std::ostream& os, const SweepSummary& s);

// States behind bound-violating records, serialized for inspection.
std::string scan_violations_json(const ScanSummary& s);

}  // namespace elab
