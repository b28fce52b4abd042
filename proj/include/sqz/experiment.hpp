#pragma once

// Frequency sweeps over a validated pipeline: noise spectra relative to shot
// noise, single-sideband signal transfer, SNR, pump calibration and loss
// budgets.

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sqz/kernels.hpp"
#include "sqz/pipeline.hpp"

namespace sqz {

/// Requested quantity cannot be reached; bound() is the best achievable value.
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(const std::string& what, double bound) : std::runtime_error(what), bound_(bound) {}
  double bound() const { return bound_; }

 private:
  double bound_;
};

/// Operation needs something the pipeline does not declare.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SweepConfig {
  double f_min = 2e6;  ///< Hz
  double f_max = 16e6;
  int points = 500;

  /// Throws std::invalid_argument unless 0 < f_min < f_max and points >= 2.
  void validate() const;
  /// Linearly spaced, both ends included.
  std::vector<double> frequencies() const;
};

struct SpectrumRecord {
  double frequency = 0.0;  ///< Hz
  double noise_rel_shot_db = 0.0;
  std::optional<double> signal_power;  ///< linear, arbitrary units
  std::optional<double> snr_db;
};

/// SNR with and without the squeezed input at one signal frequency.
struct SnrPoint {
  double frequency = 0.0;
  double noise_rel_shot_db = 0.0;
  double signal_power = 0.0;
  double snr_db = 0.0;
  double snr_vacuum_db = 0.0;
  double improvement_db = 0.0;
};

struct EfficiencyChain {
  std::vector<std::pair<std::string, double>> factors;
};

/// Output covariance at the detector input, stage by stage with the
/// two-photon matrix algebra. Reference route for the batched sweep.
SpectralCovariance propagate(const Pipeline& pipeline, double omega);

/// Homodyne noise relative to shot noise (linear) at one frequency, matrix route.
double detected_noise(const Pipeline& pipeline, double omega);

/// Linear homodyne noise at each frequency through the batched kernels.
std::vector<double> noise_sweep(const Pipeline& pipeline, std::span<const double> frequencies,
                                const kernels::KernelTable& table = kernels::active_table());

std::vector<SpectrumRecord> noise_spectrum(const Pipeline& pipeline, const SweepConfig& sweep);
std::vector<SpectrumRecord> noise_spectrum(const Pipeline& pipeline, std::span<const double> frequencies);

/// Detected power of a single upper sideband injected through the end mirror
/// of the signal node: eta_downstream·|amplitude·t(omega)|^2/2. Throws
/// UsageError when the pipeline declares no signal node.
double signal_transfer(const Pipeline& pipeline, double omega, double amplitude);

/// Batched signal power for the declared injection amplitude.
std::vector<double> signal_sweep(const Pipeline& pipeline, std::span<const double> frequencies,
                                 const kernels::KernelTable& table = kernels::active_table());

std::vector<SnrPoint> snr_points(const Pipeline& pipeline, std::span<const double> frequencies);

/// Records with signal power and SNR filled in.
std::vector<SpectrumRecord> snr_spectrum(const Pipeline& pipeline, std::span<const double> frequencies);

/// Smallest pump x in [0, 1) at which the detected noise at at_frequency
/// equals target_db (within 1e-4 dB), by bisection below the pump of
/// deepest squeezing. Throws InfeasibleError with the achievable bound
/// when the target is out of reach.
double calibrate_pump(const Pipeline& pipeline, double target_db, double at_frequency);

/// Largest tolerable loss fraction so that input_db of squeezing is still
/// detected as target_db. Both positive (magnitudes of noise reduction).
double loss_budget(double input_db, double target_db);

double efficiency_product(const EfficiencyChain& chain);

/// Scalar efficiencies along the squeezed path (OPA escape, loss stages,
/// detector quantum efficiency).
EfficiencyChain efficiency_chain(const Pipeline& pipeline);

/// The individually quoted factors of the reference setup.
EfficiencyChain reference_efficiency_chain();

}  // namespace sqz
