#include "elab/verify.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "elab/rng.hpp"
#include "json.hpp"

namespace elab {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kRoot2 = 1.4142135623730950488;

struct SuiteDef {
  std::string name;
  bool fatal = true;
  double threshold = 0.0;
  std::uint64_t count = 0;
  std::function<double(std::uint64_t)> margin;
  std::function<std::string(std::uint64_t)> state_json;
  std::string note;
};

SuiteResult run_suite(const SuiteDef& def, Exec exec) {
  SuiteResult res;
  res.name = def.name;
  res.fatal = def.fatal;
  res.threshold = def.threshold;
  res.checked = def.count;
  res.note = def.note;
  res.worst_margin = kNegInf;

  if (def.count == 0) {
    res.note = "vacuous: zero samples";
    return res;
  }

  std::vector<double> margins(def.count, kNegInf);
  for_each_index(def.count, exec,
                 [&](std::uint64_t i) { margins[i] = def.margin(i); });

  for (std::uint64_t i = 0; i < def.count; ++i) {
    if (margins[i] > res.worst_margin) {
      res.worst_margin = margins[i];
      res.worst_index = static_cast<std::int64_t>(i);
    }
    if (margins[i] > def.threshold) ++res.violations;
  }
  res.passed = res.violations == 0;
  if (res.worst_index >= 0 && def.state_json)
    res.worst_state_json =
        def.state_json(static_cast<std::uint64_t>(res.worst_index));
  return res;
}

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t suite_id) {
  return SplitMix64::key(seed, suite_id, 0xE11A9501Dull);
}

EnsembleSpec make_spec(EnsembleKind kind, std::uint64_t seed,
                       std::uint64_t suite_id, std::uint64_t count) {
  EnsembleSpec es;
  es.kind = kind;
  es.rank = 0;
  es.seed = sub_seed(seed, suite_id);
  es.count = count;
  return es;
}

// well-conditioned random 2x2 invertible filter (condition number <= 5)
CMat2 random_filter(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 rng(SplitMix64::key(seed, index, 0xF117E4ull));
  for (int attempt = 0; attempt < 100; ++attempt) {
    CMat2 m;
    for (cplx& z : m.e) z = cplx(rng.next_gaussian(), rng.next_gaussian());
    const HermitianEig<2> eg = hermitian_eig(m.adjoint() * m);
    const double smin = std::sqrt(std::max(eg.values[0], 0.0));
    const double smax = std::sqrt(std::max(eg.values[1], 0.0));
    if (smin > 0.2 * smax) return m;
  }
  return CMat2::identity();
}

double grid_c(std::uint64_t i) { return static_cast<double>(i) / 100.0; }

}  // namespace

VerifySummary run_verify(std::uint64_t samples, std::uint64_t seed, double tol,
                         Exec exec) {
  VerifySummary out;
  out.samples = samples;
  out.seed = seed;
  out.tol = tol;
  if (samples == 0)
    out.warnings.push_back(
        "samples = 0: sample-based suites are vacuous and pass trivially");

  const std::uint64_t tenth = samples / 10;
  const std::uint64_t hundredth = samples / 100;
  constexpr std::uint64_t kGrid = 101;

  std::vector<SuiteDef> defs;
  std::uint64_t id = 0;

  // canonical filtering is idempotent
  {
    const EnsembleSpec es =
        make_spec(EnsembleKind::CanonicalFiltered, seed, id++, samples);
    defs.push_back(
        {"canonical-filter-idempotent", true, 1e-12, es.count,
         [es](std::uint64_t i) {
           const TwoQubitState st = sample_random(es, i);
           return max_abs_diff(canonical_filter(st).matrix(), st.matrix());
         },
         [es](std::uint64_t i) {
           return state_to_json(sample_random(es, i).matrix());
         },
         "max |filter(filter(rho)) - filter(rho)| entry"});
  }

  // the ellipsoid does not move under Bob-side filtering
  {
    const EnsembleSpec es =
        make_spec(EnsembleKind::GinibreMixed, seed, id, tenth);
    const std::uint64_t fseed = sub_seed(seed, id++);
    defs.push_back(
        {"bob-filter-invariance", true, 1e-8, es.count,
         [es, fseed](std::uint64_t i) {
           const TwoQubitState st = sample_random(es, i);
           const CMat2 m = random_filter(fseed, i);
           try {
             const SteeringEllipsoid e1 = ellipsoid_of(st);
             const SteeringEllipsoid e2 = ellipsoid_of(filter_bob(st, m));
             double d = e1.spectrum.chi == e2.spectrum.chi ? 0.0 : 1.0;
             for (int k = 0; k < 3; ++k) {
               d = std::max(d, std::abs(e1.center[k] - e2.center[k]));
               d = std::max(d, std::abs(e1.spectrum.s[k] - e2.spectrum.s[k]));
             }
             return d;
           } catch (const SingularMarginal&) {
             return kNegInf;
           }
         },
         [es](std::uint64_t i) {
           return state_to_json(sample_random(es, i).matrix());
         },
         "componentwise center/semiaxes/chirality shift under a random filter"});
  }

  // entangled states are left-handed
  {
    const EnsembleSpec es =
        make_spec(EnsembleKind::GinibreMixed, seed, id++, samples);
    defs.push_back(
        {"entangled-chirality", true, 1e-9, es.count,
         [es](std::uint64_t i) {
           const TwoQubitState st = sample_random(es, i);
           try {
             if (ellipsoid_of(st).spectrum.chi == -1) return kNegInf;
           } catch (const SingularMarginal&) {
             return kNegInf;
           }
           return concurrence(st).first;  // must vanish when chi != -1
         },
         [es](std::uint64_t i) {
           return state_to_json(sample_random(es, i).matrix());
         },
         "concurrence of states with chi != -1"});
  }

  // every physical ellipsoid satisfies the necessary feasibility conditions
  {
    const EnsembleSpec ga =
        make_spec(EnsembleKind::GinibreMixed, seed, id, samples);
    const EnsembleSpec cf =
        make_spec(EnsembleKind::CanonicalFiltered, seed, id++, samples);
    const auto pick = [ga, cf](std::uint64_t i) {
      return i % 2 == 0 ? sample_random(ga, i) : sample_random(cf, i);
    };
    defs.push_back({"ellipsoid-feasibility", true, tol, samples,
                    [pick](std::uint64_t i) {
                      try {
                        const FeasibilityReport r =
                            necessary_conditions(ellipsoid_of(pick(i)));
                        return std::max(r.containment_margin,
                                        r.inequality_margin);
                      } catch (const SingularMarginal&) {
                        return kNegInf;
                      }
                    },
                    [pick](std::uint64_t i) {
                      return state_to_json(pick(i).matrix());
                    },
                    "max(containment margin, chi = -1 inequality margin)"});
  }

  // closed-form CHSH vs direct maximization
  {
    const EnsembleSpec es =
        make_spec(EnsembleKind::GinibreMixed, seed, id, hundredth);
    const std::uint64_t oseed = sub_seed(seed, id++);
    defs.push_back(
        {"chsh-oracle-agreement", true, 1e-6, es.count,
         [es, oseed](std::uint64_t i) {
           const TwoQubitState st = sample_random(es, i);
           const double closed = chsh_beta(st);
           const double found =
               chsh_oracle(st, 32, SplitMix64::key(oseed, i)).value;
           return std::abs(closed - found);
         },
         [es](std::uint64_t i) {
           return state_to_json(sample_random(es, i).matrix());
         },
         "|chsh_beta - chsh_oracle(32 restarts)|"});
  }

  // closed-form fully entangled fraction vs direct maximization
  {
    const EnsembleSpec es =
        make_spec(EnsembleKind::GinibreMixed, seed, id, hundredth);
    const std::uint64_t oseed = sub_seed(seed, id++);
    defs.push_back(
        {"fef-oracle-agreement", true, 1e-4, es.count,
         [es, oseed](std::uint64_t i) {
           const TwoQubitState st = sample_random(es, i);
           const double closed = fully_entangled_fraction(st);
           const double found =
               fef_oracle(st, 10000, SplitMix64::key(oseed, i));
           return std::abs(closed - found);
         },
         [es](std::uint64_t i) {
           return state_to_json(sample_random(es, i).matrix());
         },
         "|fully_entangled_fraction - fef_oracle(1e4 samples)|"});
  }

  // general-state formulas reduce to the semiaxis forms on canonical states
  {
    const EnsembleSpec es =
        make_spec(EnsembleKind::CanonicalFiltered, seed, id++, tenth);
    defs.push_back(
        {"canonical-closed-forms", true, tol, es.count,
         [es](std::uint64_t i) {
           const TwoQubitState st = sample_random(es, i);
           const SteeringEllipsoid e = ellipsoid_of(st);
           const double db =
               std::abs(chsh_beta(st) - chsh_from_semiaxes(e.spectrum));
           const double df = std::abs(fully_entangled_fraction(st) -
                                      fef_from_semiaxes(e.spectrum));
           return std::max(db, df);
         },
         [es](std::uint64_t i) {
           return state_to_json(sample_random(es, i).matrix());
         },
         "semiaxis closed forms vs general-state implementations"});
  }

  // CHSH of a canonical state is bounded by the center magnitude
  {
    const EnsembleSpec es =
        make_spec(EnsembleKind::CanonicalFiltered, seed, id++, samples);
    defs.push_back(
        {"canonical-chsh-bound", true, tol, es.count,
         [es](std::uint64_t i) {
           const TwoQubitState st = sample_random(es, i);
           const double c = ellipsoid_of(st).c_norm();
           return chsh_beta(st) - 2.0 * std::sqrt(2.0 * (1.0 - c));
         },
         [es](std::uint64_t i) {
           return state_to_json(sample_random(es, i).matrix());
         },
         "beta - 2*sqrt(2(1-|c|)) on canonical states"});
  }

  // the obese family saturates the CHSH bound
  defs.push_back({"obese-chsh-extremal", true, tol, kGrid,
                  [](std::uint64_t i) {
                    const double c = grid_c(i);
                    return std::abs(chsh_beta(max_obese(c)) -
                                    2.0 * std::sqrt(2.0 * (1.0 - c)));
                  },
                  [](std::uint64_t i) {
                    return state_to_json(max_obese(grid_c(i)).matrix());
                  },
                  "|beta(obese(c)) - 2*sqrt(2(1-c))| on the c-grid"});

  // obese states are extendible xor CHSH-nonlocal, split at c = 1/2
  defs.push_back(
      {"obese-extendible-partition", true, 0.0, kGrid,
       [tol](std::uint64_t i) {
         const double c = grid_c(i);
         const TwoQubitState st = max_obese(c);
         const bool ext = symmetric_extendible(st);
         const bool nonlocal = chsh_beta(st) > 2.0 + tol;
         const bool ok =
             ext == (c >= 0.5) && nonlocal == (c < 0.5) && (ext != nonlocal);
         return ok ? -1.0 : 1.0;
       },
       [](std::uint64_t i) {
         return state_to_json(max_obese(grid_c(i)).matrix());
       },
       "boolean: -1 consistent, +1 mismatch"});

  // no state is both symmetrically extendible and CHSH-nonlocal
  {
    const EnsembleSpec es =
        make_spec(EnsembleKind::GinibreMixed, seed, id++, samples);
    defs.push_back(
        {"extendible-nonlocal-exclusion", true, tol, es.count,
         [es](std::uint64_t i) {
           const TwoQubitState st = sample_random(es, i);
           if (!symmetric_extendible(st)) return kNegInf;
           return chsh_beta(st) - 2.0;
         },
         [es](std::uint64_t i) {
           return state_to_json(sample_random(es, i).matrix());
         },
         "beta - 2 over symmetrically extendible states"});
  }

  // fully entangled fraction of a canonical state is bounded by the center
  {
    const EnsembleSpec es =
        make_spec(EnsembleKind::CanonicalFiltered, seed, id++, samples);
    defs.push_back(
        {"canonical-fef-bound", true, tol, es.count,
         [es](std::uint64_t i) {
           const TwoQubitState st = sample_random(es, i);
           const double c = ellipsoid_of(st).c_norm();
           const double root = std::sqrt(1.0 - c);
           return fully_entangled_fraction(st) -
                  0.25 * (1.0 + root) * (1.0 + root);
         },
         [es](std::uint64_t i) {
           return state_to_json(sample_random(es, i).matrix());
         },
         "f - (1+sqrt(1-|c|))^2/4 on canonical states"});
  }

  // the obese family saturates the fef bound
  defs.push_back(
      {"obese-fef-extremal", true, tol, kGrid,
       [](std::uint64_t i) {
         const double c = grid_c(i);
         const double root = std::sqrt(1.0 - c);
         return std::abs(fully_entangled_fraction(max_obese(c)) -
                         0.25 * (1.0 + root) * (1.0 + root));
       },
       [](std::uint64_t i) {
         return state_to_json(max_obese(grid_c(i)).matrix());
       },
       "|f(obese(c)) - (1+sqrt(1-c))^2/4| on the c-grid"});

  // concurrence sits under the center bound, the major semiaxis, and beta
  {
    const EnsembleSpec es =
        make_spec(EnsembleKind::CanonicalFiltered, seed, id++, samples);
    defs.push_back(
        {"concurrence-axis-bounds", true, tol, es.count,
         [es](std::uint64_t i) {
           const TwoQubitState st = sample_random(es, i);
           const SteeringEllipsoid e = ellipsoid_of(st);
           const double cval = concurrence(st).first;
           double m = cval - std::sqrt(1.0 - e.c_norm());
           m = std::max(m, cval - e.spectrum.s[0]);
           m = std::max(m, 2.0 * kRoot2 * cval - chsh_beta(st));
           return m;
         },
         [es](std::uint64_t i) {
           return state_to_json(sample_random(es, i).matrix());
         },
         "max(C - sqrt(1-|c|), C - s1, 2*sqrt(2)*C - beta)"});
  }

  // negativity under the minor semiaxis: numerical observation, reported only
  {
    const EnsembleSpec es =
        make_spec(EnsembleKind::CanonicalFiltered, seed, id++, samples);
    defs.push_back(
        {"negativity-minor-axis", false, tol, es.count,
         [es](std::uint64_t i) {
           const TwoQubitState st = sample_random(es, i);
           return negativity(st).first - ellipsoid_of(st).spectrum.s[2];
         },
         [es](std::uint64_t i) {
           return state_to_json(sample_random(es, i).matrix());
         },
         "N - s3 on canonical states (non-fatal; violations are reported)"});
  }

  // quadratic physicality inequality on the entangled subsample
  {
    const EnsembleSpec es =
        make_spec(EnsembleKind::CanonicalFiltered, seed, id++, samples);
    defs.push_back(
        {"canonical-physicality-inequality", true, tol, es.count,
         [es](std::uint64_t i) {
           const SteeringEllipsoid e = ellipsoid_of(sample_random(es, i));
           if (e.spectrum.chi != -1) return kNegInf;
           return necessary_conditions(e).inequality_margin;
         },
         [es](std::uint64_t i) {
           return state_to_json(sample_random(es, i).matrix());
         },
         "s1^2+s2^2 - (1-c^2+2 s1 s2 s3 - s3^2) where chi = -1"});
  }

  // obese states obey C = sqrt(N)
  defs.push_back(
      {"obese-concurrence-negativity", true, tol, kGrid,
       [](std::uint64_t i) {
         const TwoQubitState st = max_obese(grid_c(i));
         return std::abs(concurrence(st).first -
                         std::sqrt(negativity(st).first));
       },
       [](std::uint64_t i) {
         return state_to_json(max_obese(grid_c(i)).matrix());
       },
       "|C - sqrt(N)| on the c-grid"});

  for (const SuiteDef& def : defs) {
    out.suites.push_back(run_suite(def, exec));
    if (out.suites.back().fatal && !out.suites.back().passed)
      out.all_passed = false;
  }
  return out;
}

std::string verify_to_json(const VerifySummary& v) {
  nlohmann::json j;
  j["samples"] = v.samples;
  j["seed"] = v.seed;
  j["tol"] = v.tol;
  j["all_passed"] = v.all_passed;
  j["warnings"] = v.warnings;
  j["suites"] = nlohmann::json::array();
  for (const SuiteResult& s : v.suites) {
    nlohmann::json e;
    e["name"] = s.name;
    e["fatal"] = s.fatal;
    e["passed"] = s.passed;
    e["checked"] = s.checked;
    e["violations"] = s.violations;
    e["threshold"] = s.threshold;
    if (std::isfinite(s.worst_margin))
      e["worst_margin"] = s.worst_margin;
    else
      e["worst_margin"] = nullptr;
    e["worst_index"] = s.worst_index;
    if (!s.worst_state_json.empty())
      e["worst_state"] = nlohmann::json::parse(s.worst_state_json);
    else
      e["worst_state"] = nullptr;
    e["note"] = s.note;
    j["suites"].push_back(e);
  }
  return j.dump(2) + "\n";
}

}  // namespace elab
