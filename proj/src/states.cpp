#include "elab/states.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "elab/rng.hpp"
#include "elab/steering.hpp"
#include "json.hpp"

namespace elab {

namespace {

CMat4 outer(const std::array<cplx, 4>& v) {
  CMat4 m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = v[r] * std::conj(v[c]);
  return m;
}

void require_unit_interval(double x, const char* who) {
  if (!(x >= 0.0 && x <= 1.0))
    throw OutOfRange(std::string(who) + ": parameter outside [0, 1]");
}

// Ginibre draw with k columns; the stream is fully consumed in a fixed order.
CMat4 ginibre(SplitMix64& rng, int k) {
  std::array<std::array<cplx, 4>, 4> g{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < k; ++c)
      g[r][c] = cplx(rng.next_gaussian(), rng.next_gaussian());

  CMat4 rho;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      cplx s = 0.0;
      for (int j = 0; j < k; ++j) s += g[r][j] * std::conj(g[c][j]);
      rho(r, c) = s;
    }
  const double tr = rho.trace().real();
  return (1.0 / tr) * rho;
}

}  // namespace

TwoQubitState TwoQubitState::validate(const CMat4& rho) {
  if (!rho.is_hermitian(tols::hermiticity))
    throw NotHermitian("validate: matrix is not Hermitian within 1e-10");
  if (std::abs(rho.trace() - cplx(1.0)) > tols::unit_trace)
    throw NotUnitTrace("validate: trace differs from 1 beyond 1e-10");
  if (hermitian_eig(rho).values[0] < -tols::psd_clip)
    throw NotPSD("validate: eigenvalue below -1e-10");
  return TwoQubitState(rho);
}

TwoQubitState max_obese(double c) {
  require_unit_interval(c, "max_obese");
  const double n = std::sqrt(2.0 - c);
  std::array<cplx, 4> psi{0.0, 1.0 / n, std::sqrt(1.0 - c) / n, 0.0};
  std::array<cplx, 4> e00{1.0, 0.0, 0.0, 0.0};
  const CMat4 rho = (1.0 - c / 2.0) * outer(psi) + (c / 2.0) * outer(e00);
  return TwoQubitState::validate(rho);
}

TwoQubitState ad_choi(double c) {
  require_unit_interval(c, "ad_choi");
  const double r = 1.0 / std::sqrt(2.0);
  // (1 ⊗ K0)|φ+⟩ and (1 ⊗ K1)|φ+⟩ with K0 = diag(1, √(1-c)), K1 = √c |0⟩⟨1|
  std::array<cplx, 4> w0{r, 0.0, 0.0, r * std::sqrt(1.0 - c)};
  std::array<cplx, 4> w1{0.0, 0.0, r * std::sqrt(c), 0.0};
  return TwoQubitState::validate(outer(w0) + outer(w1));
}

TwoQubitState werner(double p) {
  require_unit_interval(p, "werner");
  const double r = 1.0 / std::sqrt(2.0);
  std::array<cplx, 4> psim{0.0, r, -r, 0.0};
  const CMat4 rho = p * outer(psim) + (0.25 * (1.0 - p)) * id4();
  return TwoQubitState::validate(rho);
}

TwoQubitState product_state(const Vec3& a, const Vec3& b) {
  if (norm(a) > 1.0 + 1e-12 || norm(b) > 1.0 + 1e-12)
    throw OutOfRange("product_state: Bloch vector outside the unit ball");
  const auto qubit = [](const Vec3& v) {
    CMat2 m = id2();
    for (int i = 0; i < 3; ++i) m = m + v[i] * pauli(i);
    return 0.5 * m;
  };
  return TwoQubitState::validate(kron(qubit(a), qubit(b)));
}

DrawnState draw_random(const EnsembleSpec& spec, std::uint64_t index) {
  if (index >= spec.count)
    throw OutOfRange("draw_random: index beyond the ensemble count");
  if (spec.rank < 0 || spec.rank > 4)
    throw OutOfRange("draw_random: rank must be 0 (mixed) or 1..4");

  for (std::uint64_t attempt = 0; attempt < 100; ++attempt) {
    SplitMix64 rng(SplitMix64::key(spec.seed, index, attempt));
    int k = 1;
    if (spec.kind != EnsembleKind::Pure) {
      if (spec.rank >= 1 && spec.rank <= 4)
        k = spec.rank;
      else
        k = 1 + static_cast<int>(rng.next() >> 62);
    }

    const CMat4 rho = ginibre(rng, k);
    if (spec.kind == EnsembleKind::CanonicalFiltered) {
      try {
        return {canonical_filter(TwoQubitState::validate(rho)), k};
      } catch (const SingularMarginal&) {
        continue;  // measure-zero marginal degeneracy; redraw
      }
    }
    return {TwoQubitState::validate(rho), k};
  }
  throw InternalSamplingFailure(
      "draw_random: 100 consecutive draws hit a singular marginal");
}

TwoQubitState sample_random(const EnsembleSpec& spec, std::uint64_t index) {
  return draw_random(spec, index).state;
}

EnsembleKind ensemble_from_name(const std::string& name) {
  if (name == "ginibre-mixed") return EnsembleKind::GinibreMixed;
  if (name == "pure") return EnsembleKind::Pure;
  if (name == "canonical-filtered") return EnsembleKind::CanonicalFiltered;
  throw OutOfRange("unknown ensemble: " + name);
}

std::string ensemble_name(EnsembleKind k) {
  switch (k) {
    case EnsembleKind::GinibreMixed: return "ginibre-mixed";
    case EnsembleKind::Pure: return "pure";
    default: return "canonical-filtered";
  }
}

std::string fmt17(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string state_to_json(const CMat4& rho) {
  std::string out = "{\"matrix\":[";
  for (int i = 0; i < 16; ++i) {
    if (i) out += ',';
    out += '[';
    out += fmt17(rho.e[static_cast<std::size_t>(i)].real());
    out += ',';
    out += fmt17(rho.e[static_cast<std::size_t>(i)].imag());
    out += ']';
  }
  out += "]}";
  return out;
}

CMat4 state_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("state file: ") + e.what());
  }
  if (!j.is_object() || !j.contains("matrix") || !j["matrix"].is_array() ||
      j["matrix"].size() != 16)
    throw ParseError("state file: expected {\"matrix\": [[re, im] x 16]}");

  CMat4 rho;
  for (std::size_t i = 0; i < 16; ++i) {
    const auto& pair = j["matrix"][i];
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
        !pair[1].is_number())
      throw ParseError("state file: entry " + std::to_string(i) +
                       " is not an [re, im] pair");
    rho.e[i] = cplx(pair[0].get<double>(), pair[1].get<double>());
  }
  return rho;
}

void write_state_file(const std::string& path, const CMat4& rho) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open for writing: " + path);
  os << state_to_json(rho) << '\n';
  if (!os) throw IoError("write failed: " + path);
}

CMat4 read_state_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open: " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return state_from_json(ss.str());
}

}  // namespace elab
