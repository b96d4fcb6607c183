#pragma once

#include "elab/states.hpp"

namespace elab {

// The set of Bloch vectors Alice can be steered to by Bob's measurements:
// an ellipsoid with center c and shape matrix Q = T̃T̃ᵀ taken from the
// canonical (Bob maximally mixed) frame.
struct SteeringEllipsoid {
  Vec3 center{};
  RMat3 Q{};
  SignedSpectrum3 spectrum{};  // semiaxes s1 >= s2 >= s3 and chirality chi

  double c_norm() const { return norm(center); }
};

// rho(tilde) = (1 ⊗ (2 rho_B)^{-1/2}) rho (1 ⊗ (2 rho_B)^{-1/2}).
// Throws SingularMarginal when Bob's marginal has an eigenvalue <= 1e-8; the
// ellipsoid degenerates there and no canonical state exists.
TwoQubitState canonical_filter(const TwoQubitState& rho);

SteeringEllipsoid ellipsoid_of(const TwoQubitState& rho);

// Largest-volume physical ellipsoid with center (0, 0, c):
// semiaxes (√(1-c), √(1-c), 1-c), left-handed for c < 1.
SteeringEllipsoid max_volume_ellipsoid(double c);

// Necessary (not sufficient) physicality conditions: the minor semiaxis must
// keep the ellipsoid inside the Bloch ball, and left-handed ellipsoids must
// satisfy s1^2 + s2^2 <= 1 - c^2 + 2 s1 s2 s3 - s3^2. Margins are exposed so
// callers can count which condition binds.
struct FeasibilityReport {
  bool containment_ok;
  bool entangled_inequality_ok;
  double containment_margin;  // s3 - (1 - |c|)
  double inequality_margin;   // lhs - rhs of the chi = -1 inequality, -inf otherwise
};
FeasibilityReport necessary_conditions(const SteeringEllipsoid& e);

// (1 ⊗ m) rho (1 ⊗ m†) / tr(...): Bob-side local filtering.
TwoQubitState filter_bob(const TwoQubitState& rho, const CMat2& m);

}  // namespace elab
