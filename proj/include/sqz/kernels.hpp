#pragma once

// Batched sweep kernels.
//
// Every kernel operates on structure-of-arrays data, one lane per sideband
// frequency. The scalar table is the reference; vector tables must produce
// bit-identical output (no FMA contraction, same operation order), so the
// active table never changes the numbers a sweep reports.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace sqz::kernels {

/// Mutable view of a batch of covariances.
struct CovarianceView {
  std::span<double> s11, s22, s12_re, s12_im;

  std::size_t size() const { return s11.size(); }
};

/// Owning storage for a batch of covariances, vacuum-initialized.
struct CovarianceBatch {
  std::vector<double> s11, s22, s12_re, s12_im;

  explicit CovarianceBatch(std::size_t n = 0) : s11(n, 1.0), s22(n, 1.0), s12_re(n, 0.0), s12_im(n, 0.0) {}

  std::size_t size() const { return s11.size(); }
  CovarianceView view() { return {s11, s22, s12_re, s12_im}; }
};

struct ComplexView {
  std::span<double> re, im;
};

struct ConstComplexView {
  std::span<const double> re, im;
};

struct OpaCoefficients {
  double pump_x;
  double inv_bandwidth;  ///< 1/gamma
  double escape;
};

struct CavityCoefficients {
  double r1, r2;  ///< amplitude reflectivities
  double t1t2;    ///< product of amplitude transmissions
};

struct HomodyneCoefficients {
  double cos_angle, sin_angle;
  double quantum_efficiency;
};

/// One implementation of the sweep kernels.
struct KernelTable {
  std::string_view name;

  /// S-, S+ of the OPA at each frequency.
  void (*opa_spectrum)(const OpaCoefficients& c, std::span<const double> omega, std::span<double> squeezed,
                       std::span<double> anti);

  /// Reflection and transmission of a two-mirror cavity from the half
  /// round-trip phasor e^{i·phi/2} = half_cos + i·half_sin.
  void (*cavity_response)(const CavityCoefficients& c, std::span<const double> half_cos,
                          std::span<const double> half_sin, ComplexView refl, ComplexView trans);

  /// In-place S -> T·S·T† + V for T = A·diag(r+, conj r-)·A†, done in the
  /// sideband basis.
  void (*sideband_transfer)(ConstComplexView r_plus, ConstComplexView r_minus, CovarianceView cov);

  /// In-place S -> 1 + eta·(S - 1).
  void (*scalar_loss)(double eta, CovarianceView cov);

  /// Homodyne noise relative to shot noise (linear).
  void (*homodyne_project)(const HomodyneCoefficients& c, CovarianceView cov, std::span<double> out);
};

const KernelTable& scalar_table();

/// nullptr when the AVX2 variant was not compiled in.
const KernelTable* avx2_table();

/// Runtime check for AVX2 support on the executing CPU.
bool cpu_supports_avx2();

/// Fastest table usable on this CPU. Chosen once.
const KernelTable& active_table();

/// Every table usable on this CPU, scalar first.
std::vector<const KernelTable*> available_tables();

}  // namespace sqz::kernels
