#include "elab/steering.hpp"

#include <limits>

namespace elab {

TwoQubitState canonical_filter(const TwoQubitState& rho) {
  const CMat2 rb = partial_trace(rho.matrix(), Subsystem::B);
  if (hermitian_eig(rb).values[0] <= tols::singular_marginal)
    throw SingularMarginal(
        "canonical_filter: Bob's marginal is singular within 1e-8");

  const CMat2 inv = psd_sqrt_invsqrt(2.0 * rb).second;
  const CMat4 f = kron(id2(), inv);
  return TwoQubitState::validate(f * rho.matrix() * f);
}

SteeringEllipsoid ellipsoid_of(const TwoQubitState& rho) {
  const TwoQubitState canon = canonical_filter(rho);
  const FanoForm fano = fano_decompose(canon.matrix());

  SteeringEllipsoid e;
  e.center = fano.a;
  e.Q = fano.T * fano.T.transposed();
  e.spectrum = signed_svd3(fano.T);
  return e;
}

SteeringEllipsoid max_volume_ellipsoid(double c) {
  if (!(c >= 0.0 && c <= 1.0))
    throw OutOfRange("max_volume_ellipsoid: center outside [0, 1]");

  const double s12 = std::sqrt(1.0 - c);
  const double s3 = 1.0 - c;

  SteeringEllipsoid e;
  e.center = {0.0, 0.0, c};
  e.Q(0, 0) = 1.0 - c;
  e.Q(1, 1) = 1.0 - c;
  e.Q(2, 2) = s3 * s3;
  e.spectrum.s = {s12, s12, s3};
  const double det = -s12 * s12 * s3;  // T = diag(s12, s12, -s3)
  e.spectrum.chi = (std::abs(det) < tols::chirality_det) ? 0 : -1;
  e.spectrum.t = {s12, s12, e.spectrum.chi * s3};
  return e;
}

FeasibilityReport necessary_conditions(const SteeringEllipsoid& e) {
  const double c = e.c_norm();
  const double s1 = e.spectrum.s[0], s2 = e.spectrum.s[1], s3 = e.spectrum.s[2];

  FeasibilityReport r;
  r.containment_margin = s3 - (1.0 - c);
  r.containment_ok = r.containment_margin <= 1e-9;

  if (e.spectrum.chi == -1) {
    r.inequality_margin =
        (s1 * s1 + s2 * s2) - (1.0 - c * c + 2.0 * s1 * s2 * s3 - s3 * s3);
    r.entangled_inequality_ok = r.inequality_margin <= 1e-9;
  } else {
    r.inequality_margin = -std::numeric_limits<double>::infinity();
    r.entangled_inequality_ok = true;
  }
  return r;
}

TwoQubitState filter_bob(const TwoQubitState& rho, const CMat2& m) {
  const CMat4 f = kron(id2(), m);
  CMat4 out = f * rho.matrix() * f.adjoint();
  const double tr = out.trace().real();
  if (!(tr > 0.0))
    throw OutOfRange("filter_bob: filtered state has non-positive trace");
  return TwoQubitState::validate((1.0 / tr) * out);
}

}  // namespace elab
