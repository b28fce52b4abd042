#include "sqz/twophoton.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sqz {

Mat2 Mat2::adjoint() const {
  return {std::conj(a11), std::conj(a21), std::conj(a12), std::conj(a22)};
}

Mat2 Mat2::operator*(const Mat2& b) const {
  return {a11 * b.a11 + a12 * b.a21, a11 * b.a12 + a12 * b.a22,
          a21 * b.a11 + a22 * b.a21, a21 * b.a12 + a22 * b.a22};
}

Mat2 Mat2::operator+(const Mat2& b) const {
  return {a11 + b.a11, a12 + b.a12, a21 + b.a21, a22 + b.a22};
}

Mat2 Mat2::operator-(const Mat2& b) const {
  return {a11 - b.a11, a12 - b.a12, a21 - b.a21, a22 - b.a22};
}

Mat2 Mat2::operator*(cplx s) const { return {a11 * s, a12 * s, a21 * s, a22 * s}; }

double Mat2::max_abs() const {
  return std::max({std::abs(a11), std::abs(a12), std::abs(a21), std::abs(a22)});
}

SpectralCovariance SpectralCovariance::from_matrix(const Mat2& m) {
  return {m.a11.real(), m.a22.real(), 0.5 * (m.a12 + std::conj(m.a21))};
}

std::array<double, 2> SpectralCovariance::eigenvalues() const {
  const double mean = 0.5 * (s11 + s22);
  const double half_gap = std::hypot(0.5 * (s11 - s22), std::abs(s12));
  return {mean - half_gap, mean + half_gap};
}

bool SpectralCovariance::is_physical(double tol) const {
  if (!std::isfinite(s11) || !std::isfinite(s22) || !std::isfinite(std::abs(s12))) return false;
  return eigenvalues()[0] >= -tol && determinant() >= 1.0 - tol;
}

const Mat2& sideband_basis() {
  static const Mat2 a = [] {
    const double k = 1.0 / std::sqrt(2.0);
    return Mat2{k, k, cplx(0.0, -k), cplx(0.0, k)};
  }();
  return a;
}

Mat2 sideband_to_quadrature(cplx r_plus, cplx r_minus) {
  const Mat2& a = sideband_basis();
  return a * Mat2::diagonal(r_plus, std::conj(r_minus)) * a.adjoint();
}

Mat2 sideband_vacuum_admixture(cplx r_plus, cplx r_minus) {
  const Mat2& a = sideband_basis();
  return a * Mat2::diagonal(1.0 - std::norm(r_plus), 1.0 - std::norm(r_minus)) * a.adjoint();
}

SpectralCovariance apply_transfer(const SpectralCovariance& s, const QuadratureTransfer& x) {
  return SpectralCovariance::from_matrix(x.t * s.matrix() * x.t.adjoint() + x.vacuum_admixture);
}

SpectralCovariance apply_scalar_loss(const SpectralCovariance& s, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::domain_error("loss efficiency must lie in [0, 1], got " + std::to_string(eta));
  }
  // 1 + eta·(S - 1) keeps the vacuum exactly fixed.
  return {1.0 + eta * (s.s11 - 1.0), 1.0 + eta * (s.s22 - 1.0), eta * s.s12};
}

double homodyne_noise(const SpectralCovariance& s, const HomodyneSpec& h) {
  const SpectralCovariance d = apply_scalar_loss(s, h.quantum_efficiency);
  const double c = std::cos(h.angle);
  const double sn = std::sin(h.angle);
  // Excess over vacuum, so that vacuum reads exactly 1 at any angle.
  return 1.0 + (c * c * (d.s11 - 1.0) + sn * sn * (d.s22 - 1.0) + 2.0 * c * sn * d.s12.real());
}

double to_decibel(double ratio) {
  if (!(ratio > 0.0)) {
    throw std::domain_error("decibel conversion needs a positive ratio, got " + std::to_string(ratio));
  }
  return 10.0 * std::log10(ratio);
}

double from_decibel(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace sqz
