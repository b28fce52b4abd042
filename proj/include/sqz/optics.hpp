#pragma once

// Component models: two-mirror cavities, the below-threshold OPA squeezer
// and scalar loss elements. All frequencies are sideband offsets from the
// carrier in Hz (not angular).

#include <string>

#include "sqz/twophoton.hpp"

namespace sqz {

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s
inline constexpr double kPi = 3.14159265358979323846;

/// Linear two-mirror cavity. Reflectivities and loss are power fractions.
///
/// For the recycling cavities the end mirror is the compound mirror formed
/// by the Michelson end mirrors seen through the beamsplitter on a dark
/// (or bright) fringe.
struct CavitySpec {
  double length = 1.0;           ///< m
  double r_in = 0.0;             ///< coupling mirror power reflectivity
  double r_end = 1.0;            ///< end mirror power reflectivity
  double round_trip_loss = 0.0;  ///< fraction lost per round trip
  double detuning = 0.0;         ///< Hz, resonance offset from the carrier

  /// Throws std::domain_error on an unphysical description.
  void validate() const;

  /// Amplitude coefficients r1 = sqrt(r_in), r2 = sqrt(r_end·(1 - loss)).
  double r1() const;
  double r2() const;
  /// Amplitude transmissions sqrt(1 - r_in), sqrt(1 - r_end).
  double t1() const;
  double t2() const;
};

/// Below-threshold degenerate OPA, amplitude-squeezing configuration.
struct OpaSpec {
  double pump_x = 0.0;             ///< pump amplitude normalized to threshold
  double bandwidth = 1.0;          ///< Hz, HWHM of the OPA cavity
  double escape_efficiency = 1.0;  ///< fraction

  void validate() const;
};

struct LossSpec {
  double eta = 1.0;  ///< transmitted power fraction
  std::string label;

  void validate() const;
};

/// c / (2·length).
double cavity_fsr(double length);

/// Signed residue of lock_frequency modulo fsr in (-fsr/2, fsr/2].
/// Locking to a modulation sideband one FSR plus delta away from the carrier
/// detunes the cavity by delta.
double detuning_from_sideband_lock(double fsr, double lock_frequency);

/// pi·sqrt(rho)/(1 - rho), rho = round-trip amplitude gain.
double cavity_finesse(const CavitySpec& spec);

/// Full width at half maximum, fsr/finesse.
double cavity_linewidth(const CavitySpec& spec);

/// Round-trip phase 4·pi·length·(omega - detuning)/c.
double cavity_round_trip_phase(const CavitySpec& spec, double omega);

/// Field reflection from the coupling-mirror side. The promptly reflected
/// part carries -r1.
cplx cavity_reflection(const CavitySpec& spec, double omega);

/// Field transmission through both mirrors (symmetric in direction).
cplx cavity_transmission(const CavitySpec& spec, double omega);

/// Reflection in the quadrature picture, pairing r(omega) with r(-omega).
QuadratureTransfer cavity_quadrature_transfer(const CavitySpec& spec, double omega);

/// (arg r(omega) + arg r(-omega))/2.
double cavity_rotation_angle(const CavitySpec& spec, double omega);

/// diag(S-, S+) of the OPA output; amplitude quadrature squeezed.
SpectralCovariance opa_output_covariance(const OpaSpec& spec, double omega);

}  // namespace sqz
