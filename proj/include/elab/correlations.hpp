#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "elab/steering.hpp"

namespace elab {

struct MeasureDiagnostics {
  std::array<double, 4> lambda{};    // sqrt eigenvalues of rho*rho_hat, non-increasing
  double mu_min = 0.0;               // smallest eigenvalue of rho^T_B
  std::array<double, 2> chsh_eigs{}; // two largest eigenvalues of TᵀT, descending
};

// Measurement directions attaining the reported CHSH value.
struct CHSHSettings {
  Vec3 a{}, a_prime{}, b{}, b_prime{};  // unit vectors
};

struct CorrelationReport {
  double beta;
  double fef;
  double fidelity;
  double concurrence;
  double negativity;
  bool sym_extendible;
  std::optional<double> c_norm;  // absent when Bob's marginal is singular
};

// Maximal CHSH expectation 2*sqrt(u1 + u2), u1 >= u2 the top eigenvalues of
// TᵀT. For canonical states this is 2*sqrt(s1^2 + s2^2).
double chsh_beta(const TwoQubitState& rho);

// Direct maximization of |tr(rho B)| over the four measurement directions by
// alternating closed-form best responses from random restarts. A lower bound
// on chsh_beta; agreement is the regression target.
struct CHSHOracleResult {
  double value;
  CHSHSettings settings;
};
CHSHOracleResult chsh_oracle(const TwoQubitState& rho, int restarts,
                             std::uint64_t seed = 0);

// max_phi <phi|rho|phi> over maximally entangled phi: the largest eigenvalue
// of the real part of rho in the magic basis.
double fully_entangled_fraction(const TwoQubitState& rho);

// Monte Carlo + pattern-search ascent over phi = (1 ⊗ U)|φ+⟩, U in SU(2)
// parametrized by an axis-angle 3-vector. A lower bound on the closed form.
double fef_oracle(const TwoQubitState& rho, int samples, std::uint64_t seed = 0);

// Average teleportation fidelity (2f + 1)/3 from a fully entangled fraction.
double teleportation_fidelity(double fef);

// Wootters concurrence max(0, λ1-λ2-λ3-λ4). The λ are computed from the
// symmetrized product √rho rho_hat √rho so the spectrum stays nonnegative.
std::pair<double, MeasureDiagnostics> concurrence(const TwoQubitState& rho);

// Negativity max(0, -2 μ_min) from the partial-transpose spectrum.
std::pair<double, MeasureDiagnostics> negativity(const TwoQubitState& rho);

MeasureDiagnostics measure_diagnostics(const TwoQubitState& rho);

// Spectral test tr(rho_A^2) >= tr(rho_AB^2) - 4*sqrt(det rho_AB) for a
// symmetric extension on Alice's side; ties within 1e-9 count as extendible.
bool symmetric_extendible(const TwoQubitState& rho);

CorrelationReport full_report(const TwoQubitState& rho);

// Closed forms valid in the canonical frame (Bob maximally mixed).
double chsh_from_semiaxes(const SignedSpectrum3& sp);  // 2 sqrt(s1^2 + s2^2)
double fef_from_semiaxes(const SignedSpectrum3& sp);   // (1 + s1 + s2 - chi*s3)/4

}  // namespace elab
