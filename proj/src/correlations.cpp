#include "elab/correlations.hpp"

#include <algorithm>
#include <cmath>

#include "elab/rng.hpp"

namespace elab {

namespace {

Vec3 scaled(double f, const Vec3& v) { return {f * v[0], f * v[1], f * v[2]}; }

Vec3 plus(const Vec3& a, const Vec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

Vec3 minus(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

// normalized copy, or the fallback when the vector is numerically zero
Vec3 unit_or(const Vec3& v, const Vec3& fallback) {
  const double n = norm(v);
  if (n <= 1e-300) return fallback;
  return scaled(1.0 / n, v);
}

Vec3 random_unit(SplitMix64& rng) {
  for (;;) {
    Vec3 v{rng.next_gaussian(), rng.next_gaussian(), rng.next_gaussian()};
    const double n = norm(v);
    if (n > 1e-6) return scaled(1.0 / n, v);
  }
}

// U = cos(θ/2) 1 - i sin(θ/2) n·σ for w = θ n
CMat2 su2_from_axis_angle(const Vec3& w) {
  const double theta = norm(w);
  CMat2 u = std::cos(0.5 * theta) * id2();
  if (theta > 1e-300) {
    const cplx mi(0.0, -std::sin(0.5 * theta));
    for (int i = 0; i < 3; ++i) u = u + (mi * (w[i] / theta)) * pauli(i);
  }
  return u;
}

// |phi⟩ = (1 ⊗ U)|φ+⟩ and the overlap Re⟨phi|rho|phi⟩
double fef_objective(const CMat4& rho, const CMat2& u) {
  const double r = 1.0 / std::sqrt(2.0);
  // phi[2a + i] = r * U(i, a)
  std::array<cplx, 4> phi{r * u(0, 0), r * u(1, 0), r * u(0, 1), r * u(1, 1)};
  cplx val = 0.0;
  for (int r4 = 0; r4 < 4; ++r4)
    for (int c4 = 0; c4 < 4; ++c4)
      val += std::conj(phi[r4]) * rho(r4, c4) * phi[c4];
  return val.real();
}

}  // namespace

double chsh_beta(const TwoQubitState& rho) {
  const FanoForm f = fano_decompose(rho.matrix());
  const SymEig3 eg = sym_eig3(f.T.transposed() * f.T);
  const double u1 = std::max(eg.values[2], 0.0);
  const double u2 = std::max(eg.values[1], 0.0);
  return 2.0 * std::sqrt(u1 + u2);
}

CHSHOracleResult chsh_oracle(const TwoQubitState& rho, int restarts,
                             std::uint64_t seed) {
  if (restarts < 1) throw OutOfRange("chsh_oracle: restarts must be >= 1");
  const RMat3 t = fano_decompose(rho.matrix()).T;
  const RMat3 tt = t.transposed();

  CHSHOracleResult best;
  best.value = -1.0;

  for (int r = 0; r < restarts; ++r) {
    SplitMix64 rng(SplitMix64::key(seed, static_cast<std::uint64_t>(r),
                                   0x43485348ull));
    CHSHSettings s{random_unit(rng), random_unit(rng), random_unit(rng),
                   random_unit(rng)};
    double value = 0.0;
    for (int iter = 0; iter < 200; ++iter) {
      // best response of Bob's pair given Alice's, then Alice's given Bob's;
      // the objective is αᵀT(β+β') + α'ᵀT(β-β') and each step is an argmax
      s.b = unit_or(tt * plus(s.a, s.a_prime), s.b);
      s.b_prime = unit_or(tt * minus(s.a, s.a_prime), s.b_prime);
      const Vec3 va = t * plus(s.b, s.b_prime);
      const Vec3 va2 = t * minus(s.b, s.b_prime);
      s.a = unit_or(va, s.a);
      s.a_prime = unit_or(va2, s.a_prime);
      const double next = norm(va) + norm(va2);
      if (next - value < 1e-12) {
        value = std::max(value, next);
        break;
      }
      value = next;
    }
    if (value > best.value) {
      best.value = value;
      best.settings = s;
    }
  }
  return best;
}

double fully_entangled_fraction(const TwoQubitState& rho) {
  const CMat4 m = to_magic_basis(rho.matrix());
  CMat4 re;
  for (std::size_t i = 0; i < m.e.size(); ++i) re.e[i] = m.e[i].real();
  return hermitian_eig(re).values[3];
}

double fef_oracle(const TwoQubitState& rho, int samples, std::uint64_t seed) {
  if (samples < 1) throw OutOfRange("fef_oracle: samples must be >= 1");
  const CMat4& m = rho.matrix();

  SplitMix64 rng(SplitMix64::key(seed, 0, 0x464546ull));
  CMat2 best_u = id2();
  double best = fef_objective(m, best_u);
  for (int i = 0; i < samples; ++i) {
    const Vec3 axis = random_unit(rng);
    const double theta = 3.14159265358979323846 * rng.next_unit();
    const CMat2 u = su2_from_axis_angle(scaled(theta, axis));
    const double val = fef_objective(m, u);
    if (val > best) {
      best = val;
      best_u = u;
    }
  }

  // pattern-search ascent: left-compose small rotations, shrink on failure
  double step = 0.4;
  for (int sweep = 0; sweep < 2000 && step > 1e-7; ++sweep) {
    bool improved = false;
    for (int d = 0; d < 3; ++d) {
      for (double sgn : {1.0, -1.0}) {
        Vec3 w{};
        w[d] = sgn * step;
        const CMat2 u = su2_from_axis_angle(w) * best_u;
        const double val = fef_objective(m, u);
        if (val > best + 1e-16) {
          best = val;
          best_u = u;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

double teleportation_fidelity(double fef) {
  if (!(fef >= 0.0 && fef <= 1.0))
    throw OutOfRange("teleportation_fidelity: f outside [0, 1]");
  return (2.0 * fef + 1.0) / 3.0;
}

MeasureDiagnostics measure_diagnostics(const TwoQubitState& rho) {
  const CMat4& r = rho.matrix();
  MeasureDiagnostics d;

  const CMat4 yy = kron(pauli_y(), pauli_y());
  const CMat4 rho_hat = yy * r.conjugate() * yy;
  const CMat4 root = psd_sqrt(r);
  const HermitianEig<4> eg = hermitian_eig(root * rho_hat * root);
  // zero-band clip before the root: boundary-rank states have exact-zero
  // eigenvalues whose 1e-16 noise floor would otherwise surface as 1e-8
  const double scale = std::max(1.0, eg.values[3]);
  for (int k = 0; k < 4; ++k) {
    const double ev = eg.values[3 - k];
    d.lambda[k] = (std::abs(ev) < 1e-14 * scale || ev < 0.0)
                      ? 0.0
                      : std::sqrt(ev);
  }

  d.mu_min = hermitian_eig(partial_transpose(r)).values[0];

  const FanoForm f = fano_decompose(r);
  const SymEig3 teg = sym_eig3(f.T.transposed() * f.T);
  d.chsh_eigs = {teg.values[2], teg.values[1]};
  return d;
}

std::pair<double, MeasureDiagnostics> concurrence(const TwoQubitState& rho) {
  MeasureDiagnostics d = measure_diagnostics(rho);
  const double c =
      std::max(0.0, d.lambda[0] - d.lambda[1] - d.lambda[2] - d.lambda[3]);
  return {c, d};
}

std::pair<double, MeasureDiagnostics> negativity(const TwoQubitState& rho) {
  MeasureDiagnostics d = measure_diagnostics(rho);
  return {std::max(0.0, -2.0 * d.mu_min), d};
}

bool symmetric_extendible(const TwoQubitState& rho) {
  const CMat4& r = rho.matrix();
  const CMat2 ra = partial_trace(r, Subsystem::A);

  double purity_a = 0.0;
  for (const cplx& z : ra.e) purity_a += std::norm(z);
  double purity_ab = 0.0;
  for (const cplx& z : r.e) purity_ab += std::norm(z);

  const HermitianEig<4> eg = hermitian_eig(r);
  double det = eg.values[0] * eg.values[1] * eg.values[2] * eg.values[3];
  if (det < 0.0 && det >= -1e-12) det = 0.0;

  return purity_a >= purity_ab - 4.0 * std::sqrt(std::max(det, 0.0)) - 1e-9;
}

CorrelationReport full_report(const TwoQubitState& rho) {
  CorrelationReport rep;
  rep.beta = chsh_beta(rho);
  rep.fef = fully_entangled_fraction(rho);
  rep.fidelity = teleportation_fidelity(rep.fef);
  rep.concurrence = concurrence(rho).first;
  rep.negativity = negativity(rho).first;
  rep.sym_extendible = symmetric_extendible(rho);
  try {
    rep.c_norm = ellipsoid_of(rho).c_norm();
  } catch (const SingularMarginal&) {
    rep.c_norm = std::nullopt;
  }
  return rep;
}

double chsh_from_semiaxes(const SignedSpectrum3& sp) {
  return 2.0 * std::sqrt(sp.s[0] * sp.s[0] + sp.s[1] * sp.s[1]);
}

double fef_from_semiaxes(const SignedSpectrum3& sp) {
  return 0.25 * (1.0 + sp.s[0] + sp.s[1] - sp.chi * sp.s[2]);
}

}  // namespace elab
