#include "scalar_ops.hpp"

namespace sqz::kernels {

namespace {

using namespace detail;

void opa_spectrum(const OpaCoefficients& c, std::span<const double> omega, std::span<double> squeezed,
                  std::span<double> anti) {
  for (std::size_t i = 0; i < omega.size(); ++i) opa_lane(c, omega[i], squeezed[i], anti[i]);
}

void cavity_response(const CavityCoefficients& c, std::span<const double> half_cos, std::span<const double> half_sin,
                     ComplexView refl, ComplexView trans) {
  for (std::size_t i = 0; i < half_cos.size(); ++i) {
    cavity_lane(c, half_cos[i], half_sin[i], refl.re[i], refl.im[i], trans.re[i], trans.im[i]);
  }
}

void sideband_transfer(ConstComplexView rp, ConstComplexView rm, CovarianceView cov) {
  for (std::size_t i = 0; i < cov.size(); ++i) {
    sideband_lane(rp.re[i], rp.im[i], rm.re[i], rm.im[i], cov.s11[i], cov.s22[i], cov.s12_re[i], cov.s12_im[i]);
  }
}

void scalar_loss(double eta, CovarianceView cov) {
  for (std::size_t i = 0; i < cov.size(); ++i) loss_lane(eta, cov.s11[i], cov.s22[i], cov.s12_re[i], cov.s12_im[i]);
}

void homodyne_project(const HomodyneCoefficients& c, CovarianceView cov, std::span<double> out) {
  for (std::size_t i = 0; i < cov.size(); ++i) out[i] = homodyne_lane(c, cov.s11[i], cov.s22[i], cov.s12_re[i]);
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar", opa_spectrum, cavity_response, sideband_transfer, scalar_loss,
                                 homodyne_project};
  return table;
}

}  // namespace sqz::kernels
