#pragma once

// Per-lane arithmetic shared by the scalar table and the vector tails.
// Operation order here is the contract the vector kernels reproduce.

#include "sqz/kernels.hpp"

namespace sqz::kernels::detail {

inline void opa_lane(const OpaCoefficients& c, double omega, double& squeezed, double& anti) {
  const double x = c.pump_x;
  const double gain = (c.escape * 4.0) * x;
  const double lo = (1.0 + x) * (1.0 + x);
  const double hi = (1.0 - x) * (1.0 - x);
  const double ratio = omega * c.inv_bandwidth;
  const double w = ratio * ratio;
  squeezed = 1.0 - gain / (lo + w);
  anti = 1.0 + gain / (hi + w);
}

inline void cavity_lane(const CavityCoefficients& c, double hc, double hs, double& r_re, double& r_im, double& t_re,
                        double& t_im) {
  const double ec = hc * hc - hs * hs;
  const double es = (hc * hs) + (hc * hs);
  const double g = c.r1 * c.r2;
  const double nr = c.r2 * ec - c.r1;
  const double ni = c.r2 * es;
  const double dr = 1.0 - g * ec;
  const double p = g * es;  // conj(denominator) = dr + i·p
  const double den = dr * dr + p * p;
  r_re = (nr * dr - ni * p) / den;
  r_im = (nr * p + ni * dr) / den;
  t_re = (c.t1t2 * (hc * dr - hs * p)) / den;
  t_im = (c.t1t2 * (hc * p + hs * dr)) / den;
}

inline void sideband_lane(double ar, double ai, double mr, double mi, double& s11, double& s22, double& xr,
                          double& xi) {
  // To the sideband basis: diag (u, w), off-diagonal m + i·n.
  const double sum = s11 + s22;
  const double u = (sum + (xi + xi)) * 0.5;
  const double w = (sum - (xi + xi)) * 0.5;
  const double m = (s11 - s22) * 0.5;
  const double n = xr;
  const double ga = ar * ar + ai * ai;
  const double gb = mr * mr + mi * mi;
  const double u2 = 1.0 + ga * (u - 1.0);
  const double w2 = 1.0 + gb * (w - 1.0);
  // r+ · conj(conj r-) = r+ · r-
  const double gr = ar * mr - ai * mi;
  const double gi = ar * mi + ai * mr;
  const double zr = gr * m - gi * n;
  const double zi = gr * n + gi * m;
  const double mean = (u2 + w2) * 0.5;
  s11 = mean + zr;
  s22 = mean - zr;
  xr = zi;
  xi = (u2 - w2) * 0.5;
}

inline void loss_lane(double eta, double& s11, double& s22, double& xr, double& xi) {
  s11 = 1.0 + eta * (s11 - 1.0);
  s22 = 1.0 + eta * (s22 - 1.0);
  xr = eta * xr;
  xi = eta * xi;
}

inline double homodyne_lane(const HomodyneCoefficients& c, double s11, double s22, double xr) {
  const double cc = c.cos_angle * c.cos_angle;
  const double ss = c.sin_angle * c.sin_angle;
  const double cs = (c.cos_angle * c.sin_angle) * 2.0;
  const double excess = (cc * (s11 - 1.0) + ss * (s22 - 1.0)) + cs * xr;
  return 1.0 + c.quantum_efficiency * excess;
}

}  // namespace sqz::kernels::detail
