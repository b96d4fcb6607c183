#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "elab/correlations.hpp"
#include "elab/rng.hpp"

using namespace elab;

namespace {

constexpr double kRoot2 = 1.4142135623730950488;

TwoQubitState bell_psi_plus() {
  FanoForm f;
  f.T(0, 0) = 1.0;
  f.T(1, 1) = 1.0;
  f.T(2, 2) = -1.0;
  return TwoQubitState::validate(fano_assemble(f));
}

TwoQubitState maximally_mixed() {
  return TwoQubitState::validate(0.25 * id4());
}

}  // namespace

TEST_CASE("chsh on named states") {
  CHECK(std::abs(chsh_beta(bell_psi_plus()) - 2.0 * kRoot2) <= 1e-12);
  CHECK(std::abs(chsh_beta(max_obese(0.5)) - 2.0) <= 1e-12);
  CHECK(std::abs(chsh_beta(max_obese(0.4)) - 2.0 * std::sqrt(1.2)) <= 1e-12);
  CHECK(chsh_beta(maximally_mixed()) <= 1e-12);
}

TEST_CASE("chsh oracle finds the Tsirelson value on a Bell state") {
  const CHSHOracleResult r = chsh_oracle(bell_psi_plus(), 32, 5);
  CHECK(std::abs(r.value - 2.0 * kRoot2) <= 1e-6);
  for (const Vec3* v : {&r.settings.a, &r.settings.a_prime, &r.settings.b,
                        &r.settings.b_prime})
    CHECK(std::abs(norm(*v) - 1.0) <= 1e-12);
}

TEST_CASE("chsh oracle on the maximally mixed state") {
  CHECK(chsh_oracle(maximally_mixed(), 4, 5).value <= 1e-12);
}

TEST_CASE("chsh oracle matches the closed form on random states") {
  EnsembleSpec spec;
  spec.kind = EnsembleKind::GinibreMixed;
  spec.seed = 61;
  spec.count = 100;
  for (std::uint64_t i = 0; i < spec.count; ++i) {
    const TwoQubitState st = sample_random(spec, i);
    const double closed = chsh_beta(st);
    const double found = chsh_oracle(st, 32, i).value;
    CHECK(std::abs(closed - found) <= 1e-6);
    CHECK(found <= closed + 1e-9);  // the oracle never exceeds the maximum
  }
  CHECK_THROWS_AS(chsh_oracle(maximally_mixed(), 0, 1), OutOfRange);
}

TEST_CASE("fully entangled fraction on named states") {
  FanoForm phi_plus;
  phi_plus.T(0, 0) = 1.0;
  phi_plus.T(1, 1) = -1.0;
  phi_plus.T(2, 2) = 1.0;
  const TwoQubitState bell =
      TwoQubitState::validate(fano_assemble(phi_plus));
  CHECK(std::abs(fully_entangled_fraction(bell) - 1.0) <= 1e-12);

  CHECK(std::abs(fully_entangled_fraction(maximally_mixed()) - 0.25) <= 1e-12);

  // (1 + sqrt(1-c))^2 / 4 at c = 0.75 is 0.5625
  CHECK(std::abs(fully_entangled_fraction(max_obese(0.75)) - 0.5625) <= 1e-12);
  CHECK(std::abs(fully_entangled_fraction(max_obese(1.0)) - 0.25) <= 1e-12);
}

TEST_CASE("fef oracle hits exact targets") {
  FanoForm phi_plus;
  phi_plus.T(0, 0) = 1.0;
  phi_plus.T(1, 1) = -1.0;
  phi_plus.T(2, 2) = 1.0;
  const TwoQubitState bell = TwoQubitState::validate(fano_assemble(phi_plus));
  CHECK(std::abs(fef_oracle(bell, 1, 3) - 1.0) <= 1e-9);  // attained at U = 1

  // constant objective: every sample evaluates to 1/4
  CHECK(std::abs(fef_oracle(maximally_mixed(), 100, 3) - 0.25) <= 1e-14);

  CHECK_THROWS_AS(fef_oracle(bell, 0, 3), OutOfRange);
}

TEST_CASE("fef oracle matches the closed form on random states") {
  EnsembleSpec spec;
  spec.kind = EnsembleKind::GinibreMixed;
  spec.seed = 71;
  spec.count = 100;
  for (std::uint64_t i = 0; i < spec.count; ++i) {
    const TwoQubitState st = sample_random(spec, i);
    const double closed = fully_entangled_fraction(st);
    const double found = fef_oracle(st, 10000, i);
    CHECK(std::abs(closed - found) <= 1e-4);
    CHECK(found <= closed + 1e-9);  // lower bound by construction
  }
}

TEST_CASE("teleportation fidelity endpoints") {
  CHECK(teleportation_fidelity(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(teleportation_fidelity(0.5) - 2.0 / 3.0) <= 1e-15);
  CHECK(std::abs(teleportation_fidelity(0.75) - 5.0 / 6.0) <= 1e-15);
  CHECK_THROWS_AS(teleportation_fidelity(1.5), OutOfRange);
  CHECK_THROWS_AS(teleportation_fidelity(-0.1), OutOfRange);
}

TEST_CASE("concurrence on named states") {
  CHECK(std::abs(concurrence(werner(1.0)).first - 1.0) <= 1e-12);  // singlet
  CHECK(concurrence(product_state({0.2, 0.1, 0.5}, {0, 0.3, -0.1})).first <=
        1e-9);
  CHECK(std::abs(concurrence(max_obese(0.75)).first - 0.5) <= 1e-12);

  const auto [c, diag] = concurrence(werner(0.8));
  CHECK(std::abs(c - 0.7) <= 1e-12);
  for (int k = 0; k + 1 < 4; ++k) CHECK(diag.lambda[k] >= diag.lambda[k + 1]);
}

TEST_CASE("negativity on named states") {
  CHECK(std::abs(negativity(bell_psi_plus()).first - 1.0) <= 1e-12);
  const auto [n, diag] = negativity(bell_psi_plus());
  CHECK(std::abs(diag.mu_min + 0.5) <= 1e-12);

  CHECK(negativity(maximally_mixed()).first == 0.0);
  CHECK(std::abs(negativity(max_obese(0.36)).first - 0.64) <= 1e-12);
}

TEST_CASE("symmetric extendibility on named states") {
  CHECK_FALSE(symmetric_extendible(werner(1.0)));  // pure entangled
  CHECK(symmetric_extendible(maximally_mixed()));

  // boundary of the obese family sits exactly at c = 1/2
  CHECK(symmetric_extendible(max_obese(0.5)));
  CHECK(symmetric_extendible(max_obese(0.51)));
  CHECK_FALSE(symmetric_extendible(max_obese(0.49)));
}

TEST_CASE("full report on the obese state at c = 0.4") {
  const CorrelationReport r = full_report(max_obese(0.4));
  CHECK(std::abs(r.beta - 2.0 * std::sqrt(1.2)) <= 1e-12);
  const double root = std::sqrt(0.6);
  CHECK(std::abs(r.fef - 0.25 * (1.0 + root) * (1.0 + root)) <= 1e-12);
  CHECK(std::abs(r.fidelity - (2.0 * r.fef + 1.0) / 3.0) <= 1e-15);
  CHECK(std::abs(r.concurrence - root) <= 1e-12);
  CHECK(std::abs(r.negativity - 0.6) <= 1e-12);
  CHECK_FALSE(r.sym_extendible);
  REQUIRE(r.c_norm.has_value());
  CHECK(std::abs(*r.c_norm - 0.4) <= 1e-12);
}

TEST_CASE("full report on the maximally mixed state") {
  const CorrelationReport r = full_report(maximally_mixed());
  CHECK(r.beta <= 1e-12);
  CHECK(std::abs(r.fef - 0.25) <= 1e-12);
  CHECK(std::abs(r.fidelity - 0.5) <= 1e-12);
  CHECK(r.concurrence == 0.0);
  CHECK(r.negativity == 0.0);
  CHECK(r.sym_extendible);
  REQUIRE(r.c_norm.has_value());
  CHECK(*r.c_norm <= 1e-12);
}

TEST_CASE("full report on werner(0.8)") {
  const CorrelationReport r = full_report(werner(0.8));
  CHECK(std::abs(r.beta - 1.6 * kRoot2) <= 1e-12);
  CHECK(std::abs(r.fef - 0.85) <= 1e-12);
  CHECK(std::abs(r.concurrence - 0.7) <= 1e-12);
  CHECK(std::abs(r.negativity - 0.7) <= 1e-12);
  REQUIRE(r.c_norm.has_value());
  CHECK(*r.c_norm <= 1e-12);
}

TEST_CASE("full report omits the center when the marginal is singular") {
  const CorrelationReport r = full_report(product_state({0, 0, 0}, {0, 0, 1}));
  CHECK_FALSE(r.c_norm.has_value());
  CHECK(r.concurrence == 0.0);
}

TEST_CASE("concurrence dominates negativity on random states") {
  EnsembleSpec spec;
  spec.kind = EnsembleKind::GinibreMixed;
  spec.seed = 81;
  spec.count = 500;
  for (std::uint64_t i = 0; i < spec.count; ++i) {
    const TwoQubitState st = sample_random(spec, i);
    CHECK(concurrence(st).first >= negativity(st).first - 1e-9);
  }
}

TEST_CASE("semiaxis closed forms match on canonical random states") {
  EnsembleSpec spec;
  spec.kind = EnsembleKind::CanonicalFiltered;
  spec.seed = 91;
  spec.count = 300;
  for (std::uint64_t i = 0; i < spec.count; ++i) {
    const TwoQubitState st = sample_random(spec, i);
    const SteeringEllipsoid e = ellipsoid_of(st);
    CHECK(std::abs(chsh_beta(st) - chsh_from_semiaxes(e.spectrum)) <= 1e-9);
    CHECK(std::abs(fully_entangled_fraction(st) -
                   fef_from_semiaxes(e.spectrum)) <= 1e-9);
  }
}

TEST_CASE("measure diagnostics carry the top TtT eigenvalues") {
  const MeasureDiagnostics d = measure_diagnostics(max_obese(0.4));
  CHECK(std::abs(d.chsh_eigs[0] - 0.6) <= 1e-12);
  CHECK(std::abs(d.chsh_eigs[1] - 0.6) <= 1e-12);
  CHECK(d.chsh_eigs[0] >= d.chsh_eigs[1]);
}
