#pragma once

#include <cstdint>
#include <string>

#include "elab/qmat.hpp"

namespace elab {

// A validated two-qubit density matrix: Hermitian within 1e-10, unit trace
// within 1e-10, smallest eigenvalue >= -1e-10. Instances only exist through
// validate(), so holding one certifies the invariants.
class TwoQubitState {
 public:
  static TwoQubitState validate(const CMat4& rho);
  const CMat4& matrix() const { return rho_; }

 private:
  explicit TwoQubitState(const CMat4& rho) : rho_(rho) {}
  CMat4 rho_;
};

enum class EnsembleKind { GinibreMixed, Pure, CanonicalFiltered };

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::GinibreMixed;
  int rank = 0;  // 1..4 fixed; 0 = draw the rank uniformly per sample
  std::uint64_t seed = 0;
  std::uint64_t count = 0;
};

struct DrawnState {
  TwoQubitState state;
  int rank;  // Ginibre factor width used for this draw
};

// rho_max(c) = (1-c/2)|ψ_c⟩⟨ψ_c| + (c/2)|00⟩⟨00|,
// ψ_c = (|01⟩ + √(1-c)|10⟩)/√(2-c). Bob's marginal is maximally mixed; the
// steering ellipsoid has center (0,0,c) and semiaxes (√(1-c), √(1-c), 1-c).
TwoQubitState max_obese(double c);

// Choi state of the amplitude-damping channel with decay probability c,
// (id ⊗ Φ_c)(|φ+⟩⟨φ+|), reference subsystem first, unit-trace normalization.
TwoQubitState ad_choi(double c);

// p|ψ-⟩⟨ψ-| + (1-p) 1/4
TwoQubitState werner(double p);

// (1 + a·σ)/2 ⊗ (1 + b·σ)/2
TwoQubitState product_state(const Vec3& a, const Vec3& b);

// Deterministic in (spec.seed, index): fixed spec gives a fixed stream no
// matter the call order or thread count. Ginibre draws are Hilbert-Schmidt
// induced: rho = GG†/tr(GG†) with G a 4xk complex Gaussian matrix.
DrawnState draw_random(const EnsembleSpec& spec, std::uint64_t index);
TwoQubitState sample_random(const EnsembleSpec& spec, std::uint64_t index);

EnsembleKind ensemble_from_name(const std::string& name);
std::string ensemble_name(EnsembleKind k);

// State file format: {"matrix": [[re, im] x 16 row-major]}, doubles written
// with 17 significant digits.
std::string state_to_json(const CMat4& rho);
CMat4 state_from_json(const std::string& text);
void write_state_file(const std::string& path, const CMat4& rho);
CMat4 read_state_file(const std::string& path);

// %.17g, the shared float-to-text convention for CSV and state files
std::string fmt17(double x);

}  // namespace elab
