#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <utility>

#include "elab/errors.hpp"

namespace elab {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

// Shared numeric thresholds. Absolute tolerances; everything here lives on
// unit-scale density matrices, far from double-precision limits.
namespace tols {
inline constexpr double hermiticity = 1e-10;       // max |M - M†| entry
inline constexpr double unit_trace = 1e-10;        // |tr - 1|
inline constexpr double psd_clip = 1e-10;          // eigenvalues in [-clip, 0) -> 0
inline constexpr double singular_marginal = 1e-8;  // smallest marginal eigenvalue
inline constexpr double chirality_det = 1e-12;     // |det T| below -> chi = 0
inline constexpr double canonical_bob = 1e-9;      // |b| below -> canonical
}  // namespace tols

// Dense complex matrix with the dimension fixed at compile time. Row-major.
template <int N>
struct CMat {
  std::array<cplx, static_cast<std::size_t>(N) * N> e{};

  static constexpr int dim = N;

  static CMat identity() {
    CMat m;
    for (int i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  cplx& operator()(int r, int c) { return e[static_cast<std::size_t>(r) * N + c]; }
  const cplx& operator()(int r, int c) const {
    return e[static_cast<std::size_t>(r) * N + c];
  }

  CMat adjoint() const {
    CMat m;
    for (int r = 0; r < N; ++r)
      for (int c = 0; c < N; ++c) m(r, c) = std::conj((*this)(c, r));
    return m;
  }

  CMat conjugate() const {
    CMat m;
    for (std::size_t i = 0; i < e.size(); ++i) m.e[i] = std::conj(e[i]);
    return m;
  }

  cplx trace() const {
    cplx t = 0.0;
    for (int i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (const cplx& z : e) m = std::max(m, std::abs(z));
    return m;
  }

  bool finite() const {
    for (const cplx& z : e)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
  }

  // max entrywise |M - M†|; +inf when any entry is non-finite
  double hermiticity_defect() const {
    if (!finite()) return std::numeric_limits<double>::infinity();
    double d = 0.0;
    for (int r = 0; r < N; ++r)
      for (int c = 0; c < N; ++c)
        d = std::max(d, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    return d;
  }

  bool is_hermitian(double tol) const { return hermiticity_defect() <= tol; }

  friend CMat operator+(CMat a, const CMat& b) {
    for (std::size_t i = 0; i < a.e.size(); ++i) a.e[i] += b.e[i];
    return a;
  }
  friend CMat operator-(CMat a, const CMat& b) {
    for (std::size_t i = 0; i < a.e.size(); ++i) a.e[i] -= b.e[i];
    return a;
  }
  friend CMat operator*(const CMat& a, const CMat& b) {
    CMat m;
    for (int r = 0; r < N; ++r)
      for (int k = 0; k < N; ++k) {
        const cplx ark = a(r, k);
        if (ark == cplx{}) continue;
        for (int c = 0; c < N; ++c) m(r, c) += ark * b(k, c);
      }
    return m;
  }
  friend CMat operator*(cplx s, CMat m) {
    for (cplx& z : m.e) z *= s;
    return m;
  }
  friend CMat operator*(double s, CMat m) {
    for (cplx& z : m.e) z *= s;
    return m;
  }
};

using CMat2 = CMat<2>;
using CMat4 = CMat<4>;

template <int N>
double max_abs_diff(const CMat<N>& a, const CMat<N>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.e.size(); ++i)
    d = std::max(d, std::abs(a.e[i] - b.e[i]));
  return d;
}

CMat4 kron(const CMat2& a, const CMat2& b);

// 3x3 real matrix, row-major.
struct RMat3 {
  std::array<double, 9> e{};

  static RMat3 identity() {
    RMat3 m;
    m.e = {1, 0, 0, 0, 1, 0, 0, 0, 1};
    return m;
  }

  double& operator()(int r, int c) { return e[static_cast<std::size_t>(r) * 3 + c]; }
  double operator()(int r, int c) const {
    return e[static_cast<std::size_t>(r) * 3 + c];
  }

  RMat3 transposed() const {
    RMat3 m;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) m(r, c) = (*this)(c, r);
    return m;
  }

  double det() const {
    const RMat3& m = *this;
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  }

  friend RMat3 operator*(const RMat3& a, const RMat3& b) {
    RMat3 m;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k) s += a(r, k) * b(k, c);
        m(r, c) = s;
      }
    return m;
  }

  friend Vec3 operator*(const RMat3& a, const Vec3& v) {
    Vec3 w{};
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) w[r] += a(r, c) * v[c];
    return w;
  }
};

double max_abs_diff(const RMat3& a, const RMat3& b);

// Pauli expansion rho = (1/4)(1⊗1 + a·σ⊗1 + 1⊗b·σ + Σ T_ij σ_i⊗σ_j).
struct FanoForm {
  Vec3 a{};   // Alice Bloch vector
  Vec3 b{};   // Bob Bloch vector
  RMat3 T{};  // T_ij = tr(rho σ_i⊗σ_j)

  bool canonical() const { return norm(b) <= tols::canonical_bob; }
};

// Descending singular values of a 3x3 real matrix together with the sign of
// its determinant; t carries the sign on the last component only.
struct SignedSpectrum3 {
  std::array<double, 3> s{};  // s[0] >= s[1] >= s[2] >= 0
  int chi = 0;                // sign(det), 0 when |det| < tols::chirality_det
  std::array<double, 3> t{};  // |t_i| = s_i, t[0], t[1] >= 0, t[2] = chi*s[2]
};

template <int N>
struct HermitianEig {
  std::array<double, N> values;  // ascending
  CMat<N> vectors;               // orthonormal columns, column k <-> values[k]
};

struct SymEig3 {
  std::array<double, 3> values;  // ascending
  RMat3 vectors;                 // orthonormal columns
};

// Fixed module-wide constants.
const CMat2& pauli_x();
const CMat2& pauli_y();
const CMat2& pauli_z();
const CMat2& pauli(int i);  // 0, 1, 2 -> x, y, z
const CMat2& id2();
const CMat4& id4();

// Unitary whose columns are the Bell-type "magic" vectors
//   e1 = (|00⟩+|11⟩)/√2,  e2 = i(|00⟩−|11⟩)/√2,
//   e3 = i(|01⟩+|10⟩)/√2, e4 = (|01⟩−|10⟩)/√2.
// In this basis every maximally entangled state has real coordinates up to a
// global phase, which is what makes the fully entangled fraction a real
// symmetric eigenvalue problem.
const CMat4& magic_basis();

enum class Subsystem { A, B };

// Cyclic Jacobi for Hermitian matrices. Unconditionally stable at these sizes;
// reconstruction residual and column orthonormality come out near 1e-15.
HermitianEig<2> hermitian_eig(const CMat2& m);
HermitianEig<4> hermitian_eig(const CMat4& m);

// Square root and inverse square root of a PSD 2x2 matrix. Eigenvalues in
// [-1e-10, 0) are clipped to zero before the root; the inverse branch demands
// the smallest eigenvalue exceed tols::singular_marginal.
std::pair<CMat2, CMat2> psd_sqrt_invsqrt(const CMat2& m);

// PSD square root of a 4x4 Hermitian matrix (same clipping rule).
CMat4 psd_sqrt(const CMat4& m);

CMat2 partial_trace(const CMat4& rho, Subsystem keep);
CMat4 partial_transpose(const CMat4& rho);  // on subsystem B

FanoForm fano_decompose(const CMat4& rho);
CMat4 fano_assemble(const FanoForm& f);

// Change of basis into the magic basis: E† rho E. Spectrum and trace preserved.
CMat4 to_magic_basis(const CMat4& rho);

// Singular values of T via the eigendecomposition of TᵀT, sign from det T.
SignedSpectrum3 signed_svd3(const RMat3& t);

SymEig3 sym_eig3(const RMat3& m);  // for symmetric input

}  // namespace elab
