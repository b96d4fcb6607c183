// Times the Monte Carlo scan kernel serial vs OpenMP-parallel on the same
// ensemble and checks that the two paths emit identical records.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "elab/scan.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace elab;

namespace {

template <typename Fn>
double timed(Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

std::string csv_of(const ScanSummary& s) {
  std::ostringstream os;
  write_scan_csv(os, s);
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  std::uint64_t samples = 20000;
  if (argc > 1) samples = std::strtoull(argv[1], nullptr, 10);

  EnsembleSpec spec;
  spec.kind = EnsembleKind::GinibreMixed;
  spec.rank = 0;
  spec.seed = 42;
  spec.count = samples;

  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif

  // warm up allocators and constant tables
  run_scan({spec.kind, spec.rank, spec.seed, 256}, 1e-9, Exec::Serial);

  ScanSummary serial, parallel;
  const double t_serial =
      timed([&] { serial = run_scan(spec, 1e-9, Exec::Serial); });
  const double t_parallel =
      timed([&] { parallel = run_scan(spec, 1e-9, Exec::Parallel); });

  if (csv_of(serial) != csv_of(parallel)) {
    std::cerr << "FAIL: serial and parallel scans disagree\n";
    return 1;
  }

  std::cout << "scan benchmark, " << samples << " samples, " << threads
            << " thread(s)\n";
  std::cout << "  serial   " << t_serial << " s  ("
            << static_cast<double>(samples) / t_serial << " samples/s)\n";
  std::cout << "  parallel " << t_parallel << " s  ("
            << static_cast<double>(samples) / t_parallel << " samples/s)\n";
  std::cout << "  speedup  " << t_serial / t_parallel << "x\n";
  std::cout << "  outputs  identical\n";
  return 0;
}
