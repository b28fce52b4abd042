#pragma once

// Two-photon (quadrature) algebra at a single sideband frequency.
//
// Quadrature vectors are (a1, a2) = (amplitude, phase). Covariances are
// normalized so that the vacuum state is the identity; every noise figure
// produced downstream is therefore relative to shot noise.

#include <array>
#include <complex>

namespace sqz {

using cplx = std::complex<double>;

/// Dense 2x2 complex matrix, row-major.
struct Mat2 {
  cplx a11{}, a12{}, a21{}, a22{};

  static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr Mat2 diagonal(cplx d1, cplx d2) { return {d1, 0.0, 0.0, d2}; }

  Mat2 adjoint() const;
  Mat2 operator*(const Mat2& rhs) const;
  Mat2 operator+(const Mat2& rhs) const;
  Mat2 operator-(const Mat2& rhs) const;
  Mat2 operator*(cplx s) const;

  /// Largest absolute entry; used for tolerance checks.
  double max_abs() const;
};

/// Quadrature noise covariance at one sideband frequency.
///
/// Hermitian by construction: only s11, s22 (real) and s12 are stored,
/// s21 = conj(s12).
struct SpectralCovariance {
  double s11 = 1.0;
  double s22 = 1.0;
  cplx s12{};

  static constexpr SpectralCovariance vacuum() { return {}; }
  static constexpr SpectralCovariance diagonal(double a, double b) { return {a, b, 0.0}; }

  /// Hermitian part of m.
  static SpectralCovariance from_matrix(const Mat2& m);

  cplx s21() const { return std::conj(s12); }
  Mat2 matrix() const { return {s11, s12, std::conj(s12), s22}; }

  double trace() const { return s11 + s22; }
  double determinant() const { return s11 * s22 - std::norm(s12); }
  /// Ascending eigenvalues.
  std::array<double, 2> eigenvalues() const;

  /// PSD and uncertainty-respecting (det >= 1 - tol).
  bool is_physical(double tol = 1e-9) const;
};

/// Quadrature transfer of an optical element: out = t·S·t† + vacuum_admixture.
struct QuadratureTransfer {
  Mat2 t = Mat2::identity();
  Mat2 vacuum_admixture{};
};

struct HomodyneSpec {
  double angle = 0.0;  ///< rad; 0 reads the amplitude quadrature
  double quantum_efficiency = 1.0;
};

/// A = (1/sqrt 2)·[[1, 1], [-i, i]], sideband -> quadrature basis change.
const Mat2& sideband_basis();

/// T = A·diag(r_plus, conj(r_minus))·A†.
Mat2 sideband_to_quadrature(cplx r_plus, cplx r_minus);

/// Vacuum term A·diag(1 - |r+|^2, 1 - |r-|^2)·A† that keeps a passive
/// element's transfer vacuum preserving.
Mat2 sideband_vacuum_admixture(cplx r_plus, cplx r_minus);

SpectralCovariance apply_transfer(const SpectralCovariance& s, const QuadratureTransfer& x);

/// eta·S + (1 - eta)·I. Throws std::domain_error for eta outside [0, 1].
SpectralCovariance apply_scalar_loss(const SpectralCovariance& s, double eta);

/// Noise power relative to shot noise seen by a homodyne detector.
double homodyne_noise(const SpectralCovariance& s, const HomodyneSpec& h);

/// 10·log10(ratio). Throws std::domain_error for ratio <= 0.
double to_decibel(double ratio);
double from_decibel(double db);

}  // namespace sqz
