#include "sqz/optics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sqz {

namespace {

bool in_unit_interval(double v) { return v >= 0.0 && v <= 1.0; }

void require(bool ok, const std::string& what) {
  if (!ok) throw std::domain_error(what);
}

}  // namespace

void CavitySpec::validate() const {
  require(std::isfinite(length) && length > 0.0, "cavity length must be positive");
  require(in_unit_interval(r_in), "cavity r_in must lie in [0, 1]");
  require(in_unit_interval(r_end), "cavity r_end must lie in [0, 1]");
  require(in_unit_interval(round_trip_loss), "cavity round-trip loss must lie in [0, 1]");
  require(std::isfinite(detuning), "cavity detuning must be finite");
}

double CavitySpec::r1() const { return std::sqrt(r_in); }
double CavitySpec::r2() const { return std::sqrt(r_end * (1.0 - round_trip_loss)); }
double CavitySpec::t1() const { return std::sqrt(1.0 - r_in); }
double CavitySpec::t2() const { return std::sqrt(1.0 - r_end); }

void OpaSpec::validate() const {
  require(pump_x >= 0.0 && pump_x < 1.0, "OPA pump_x must lie in [0, 1) (below threshold)");
  require(std::isfinite(bandwidth) && bandwidth > 0.0, "OPA bandwidth must be positive");
  require(in_unit_interval(escape_efficiency), "OPA escape efficiency must lie in [0, 1]");
}

void LossSpec::validate() const {
  require(in_unit_interval(eta), "loss efficiency must lie in [0, 1]");
}

double cavity_fsr(double length) {
  require(std::isfinite(length) && length > 0.0, "cavity length must be positive");
  return kSpeedOfLight / (2.0 * length);
}

double detuning_from_sideband_lock(double fsr, double lock_frequency) {
  require(fsr > 0.0, "free spectral range must be positive");
  double r = std::fmod(lock_frequency, fsr);
  if (r > 0.5 * fsr) r -= fsr;
  if (r <= -0.5 * fsr) r += fsr;
  return r;
}

double cavity_finesse(const CavitySpec& spec) {
  const double rho = spec.r1() * spec.r2();
  require(rho < 1.0, "cavity finesse diverges for a lossless round trip (r_in·r_end = 1)");
  return kPi * std::sqrt(rho) / (1.0 - rho);
}

double cavity_linewidth(const CavitySpec& spec) {
  return cavity_fsr(spec.length) / cavity_finesse(spec);
}

double cavity_round_trip_phase(const CavitySpec& spec, double omega) {
  return 4.0 * kPi * spec.length * (omega - spec.detuning) / kSpeedOfLight;
}

cplx cavity_reflection(const CavitySpec& spec, double omega) {
  const double r1 = spec.r1();
  const double r2 = spec.r2();
  const cplx e = std::polar(1.0, cavity_round_trip_phase(spec, omega));
  return (-r1 + r2 * e) / (1.0 - r1 * r2 * e);
}

cplx cavity_transmission(const CavitySpec& spec, double omega) {
  const double phi = cavity_round_trip_phase(spec, omega);
  const cplx e = std::polar(1.0, phi);
  return spec.t1() * spec.t2() * std::polar(1.0, 0.5 * phi) / (1.0 - spec.r1() * spec.r2() * e);
}

QuadratureTransfer cavity_quadrature_transfer(const CavitySpec& spec, double omega) {
  const cplx r_plus = cavity_reflection(spec, omega);
  const cplx r_minus = cavity_reflection(spec, -omega);
  return {sideband_to_quadrature(r_plus, r_minus), sideband_vacuum_admixture(r_plus, r_minus)};
}

double cavity_rotation_angle(const CavitySpec& spec, double omega) {
  return 0.5 * (std::arg(cavity_reflection(spec, omega)) + std::arg(cavity_reflection(spec, -omega)));
}

SpectralCovariance opa_output_covariance(const OpaSpec& spec, double omega) {
  spec.validate();
  const double x = spec.pump_x;
  const double ratio = omega / spec.bandwidth;
  const double w = ratio * ratio;
  const double gain = spec.escape_efficiency * 4.0 * x;
  const double squeezed = 1.0 - gain / ((1.0 + x) * (1.0 + x) + w);
  const double anti = 1.0 + gain / ((1.0 - x) * (1.0 - x) + w);
  return SpectralCovariance::diagonal(squeezed, anti);
}

}  // namespace sqz
