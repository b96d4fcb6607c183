#include "elab/qmat.hpp"

#include <algorithm>
#include <numeric>

namespace elab {

namespace {

CMat2 make2(cplx a, cplx b, cplx c, cplx d) {
  CMat2 m;
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

template <int N>
double off_diag_norm(const CMat<N>& a) {
  double s = 0.0;
  for (int r = 0; r < N; ++r)
    for (int c = 0; c < N; ++c)
      if (r != c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

template <int N>
double frobenius(const CMat<N>& a) {
  double s = 0.0;
  for (const cplx& z : a.e) s += std::norm(z);
  return std::sqrt(s);
}

// One-sided complex Jacobi sweep machinery. Each rotation zeroes A(p,q) by
// conjugating with the unitary that diagonalizes the (p,q) principal block.
template <int N>
HermitianEig<N> jacobi_hermitian(const CMat<N>& m) {
  if (!m.is_hermitian(tols::hermiticity))
    throw NotHermitian("hermitian_eig: input is not Hermitian within 1e-10");

  // work on the symmetrized copy so roundoff in the caller cannot leak in
  CMat<N> a = 0.5 * (m + m.adjoint());
  CMat<N> v = CMat<N>::identity();

  const double scale = std::max(frobenius(a), 1e-300);
  for (int sweep = 0; sweep < 60; ++sweep) {
    if (off_diag_norm(a) <= 1e-15 * scale) break;
    for (int p = 0; p < N - 1; ++p) {
      for (int q = p + 1; q < N; ++q) {
        const cplx apq = a(p, q);
        const double bmag = std::abs(apq);
        if (bmag <= 1e-300) continue;
        const cplx phase = apq / bmag;
        const double alpha = a(p, p).real();
        const double gamma = a(q, q).real();
        const double tau = (gamma - alpha) / (2.0 * bmag);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        CMat<N> j = CMat<N>::identity();
        j(p, p) = c;
        j(p, q) = s;
        j(q, p) = -s * std::conj(phase);
        j(q, q) = c * std::conj(phase);

        a = j.adjoint() * a * j;
        v = v * j;
      }
    }
  }

  std::array<int, N> order{};
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&a](int x, int y) { return a(x, x).real() < a(y, y).real(); });

  HermitianEig<N> out;
  for (int k = 0; k < N; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (int r = 0; r < N; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

// Map an eigendecomposition through fn on the eigenvalues: V diag(fn(λ)) V†.
template <int N, typename Fn>
CMat<N> eig_map(const HermitianEig<N>& eg, Fn fn) {
  CMat<N> out;
  for (int k = 0; k < N; ++k) {
    const double f = fn(eg.values[k]);
    for (int r = 0; r < N; ++r)
      for (int c = 0; c < N; ++c)
        out(r, c) += f * eg.vectors(r, k) * std::conj(eg.vectors(c, k));
  }
  return out;
}

double clip_psd(double x) {
  return (x < 0.0 && x >= -tols::psd_clip) ? 0.0 : x;
}

// Exact-zero eigenvalues of boundary-rank matrices come back as +-1e-16
// noise, which a square root amplifies to 1e-8. Treat anything within
// 1e-14 * scale of zero as an exact zero before rooting.
double clip_zero_band(double x, double scale) {
  return std::abs(x) < 1e-14 * scale ? 0.0 : x;
}

}  // namespace

const CMat2& pauli_x() {
  static const CMat2 m = make2(0, 1, 1, 0);
  return m;
}
const CMat2& pauli_y() {
  static const CMat2 m = make2(0, cplx(0, -1), cplx(0, 1), 0);
  return m;
}
const CMat2& pauli_z() {
  static const CMat2 m = make2(1, 0, 0, -1);
  return m;
}
const CMat2& pauli(int i) {
  switch (i) {
    case 0: return pauli_x();
    case 1: return pauli_y();
    default: return pauli_z();
  }
}
const CMat2& id2() {
  static const CMat2 m = CMat2::identity();
  return m;
}
const CMat4& id4() {
  static const CMat4 m = CMat4::identity();
  return m;
}

const CMat4& magic_basis() {
  static const CMat4 m = [] {
    const double r = 1.0 / std::sqrt(2.0);
    const cplx i(0.0, 1.0);
    CMat4 e;
    // columns: e1, e2, e3, e4 in the |00⟩,|01⟩,|10⟩,|11⟩ basis
    e(0, 0) = r;      e(3, 0) = r;
    e(0, 1) = i * r;  e(3, 1) = -i * r;
    e(1, 2) = i * r;  e(2, 2) = i * r;
    e(1, 3) = r;      e(2, 3) = -r;
    return e;
  }();
  return m;
}

CMat4 kron(const CMat2& a, const CMat2& b) {
  CMat4 m;
  for (int ra = 0; ra < 2; ++ra)
    for (int ca = 0; ca < 2; ++ca)
      for (int rb = 0; rb < 2; ++rb)
        for (int cb = 0; cb < 2; ++cb)
          m(2 * ra + rb, 2 * ca + cb) = a(ra, ca) * b(rb, cb);
  return m;
}

double max_abs_diff(const RMat3& a, const RMat3& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.e.size(); ++i)
    d = std::max(d, std::abs(a.e[i] - b.e[i]));
  return d;
}

HermitianEig<2> hermitian_eig(const CMat2& m) { return jacobi_hermitian<2>(m); }
HermitianEig<4> hermitian_eig(const CMat4& m) { return jacobi_hermitian<4>(m); }

std::pair<CMat2, CMat2> psd_sqrt_invsqrt(const CMat2& m) {
  const HermitianEig<2> eg = hermitian_eig(m);
  if (eg.values[0] < -tols::psd_clip)
    throw NotPSD("psd_sqrt_invsqrt: eigenvalue below -1e-10");
  if (eg.values[0] <= tols::singular_marginal)
    throw SingularMarginal("psd_sqrt_invsqrt: smallest eigenvalue <= 1e-8");
  const CMat2 root = eig_map(eg, [](double x) { return std::sqrt(clip_psd(x)); });
  const CMat2 inv = eig_map(eg, [](double x) { return 1.0 / std::sqrt(x); });
  return {root, inv};
}

CMat4 psd_sqrt(const CMat4& m) {
  const HermitianEig<4> eg = hermitian_eig(m);
  if (eg.values[0] < -tols::psd_clip)
    throw NotPSD("psd_sqrt: eigenvalue below -1e-10");
  const double scale = std::max(1.0, eg.values[3]);
  return eig_map(eg, [scale](double x) {
    return std::sqrt(std::max(clip_zero_band(x, scale), 0.0));
  });
}

CMat2 partial_trace(const CMat4& rho, Subsystem keep) {
  if (std::abs(rho.trace() - cplx(1.0)) > tols::unit_trace)
    throw NotUnitTrace("partial_trace: trace differs from 1 beyond 1e-10");
  CMat2 out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      cplx s = 0.0;
      for (int k = 0; k < 2; ++k)
        s += (keep == Subsystem::A) ? rho(2 * r + k, 2 * c + k)
                                    : rho(2 * k + r, 2 * k + c);
      out(r, c) = s;
    }
  return out;
}

CMat4 partial_transpose(const CMat4& rho) {
  CMat4 out;
  for (int ia = 0; ia < 2; ++ia)
    for (int ja = 0; ja < 2; ++ja)
      for (int ib = 0; ib < 2; ++ib)
        for (int jb = 0; jb < 2; ++jb)
          out(2 * ia + jb, 2 * ja + ib) = rho(2 * ia + ib, 2 * ja + jb);
  return out;
}

FanoForm fano_decompose(const CMat4& rho) {
  if (!rho.is_hermitian(tols::hermiticity))
    throw NotHermitian("fano_decompose: input is not Hermitian within 1e-10");

  const auto component = [&rho](const CMat4& op) {
    cplx t = 0.0;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) t += rho(r, c) * op(c, r);
    if (std::abs(t.imag()) > tols::hermiticity)
      throw NotHermitian("fano_decompose: Pauli component has imaginary residue");
    return t.real();
  };

  FanoForm f;
  for (int i = 0; i < 3; ++i) {
    f.a[i] = component(kron(pauli(i), id2()));
    f.b[i] = component(kron(id2(), pauli(i)));
    for (int j = 0; j < 3; ++j) f.T(i, j) = component(kron(pauli(i), pauli(j)));
  }
  return f;
}

CMat4 fano_assemble(const FanoForm& f) {
  CMat4 m = id4();
  for (int i = 0; i < 3; ++i) {
    m = m + f.a[i] * kron(pauli(i), id2());
    m = m + f.b[i] * kron(id2(), pauli(i));
    for (int j = 0; j < 3; ++j)
      m = m + f.T(i, j) * kron(pauli(i), pauli(j));
  }
  return 0.25 * m;
}

CMat4 to_magic_basis(const CMat4& rho) {
  const CMat4& e = magic_basis();
  return e.adjoint() * rho * e;
}

SymEig3 sym_eig3(const RMat3& m) {
  // real symmetric cyclic Jacobi
  RMat3 a;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) a(r, c) = 0.5 * (m(r, c) + m(c, r));
  RMat3 v = RMat3::identity();

  double scale = 0.0;
  for (double x : a.e) scale += x * x;
  scale = std::max(std::sqrt(scale), 1e-300);

  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = std::sqrt(a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) +
                           a(1, 2) * a(1, 2));
    if (off <= 1e-15 * scale) break;
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (int k = 0; k < 3; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < 3; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < 3; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::array<int, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(),
            [&a](int x, int y) { return a(x, x) < a(y, y); });

  SymEig3 out;
  for (int k = 0; k < 3; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (int r = 0; r < 3; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

SignedSpectrum3 signed_svd3(const RMat3& t) {
  const SymEig3 eg = sym_eig3(t.transposed() * t);
  SignedSpectrum3 out;
  for (int k = 0; k < 3; ++k)
    out.s[k] = std::sqrt(std::max(eg.values[2 - k], 0.0));  // descending

  const double d = t.det();
  out.chi = (std::abs(d) < tols::chirality_det) ? 0 : (d > 0.0 ? 1 : -1);
  out.t = {out.s[0], out.s[1], out.chi * out.s[2]};
  return out;
}

}  // namespace elab
