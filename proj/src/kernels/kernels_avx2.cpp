// AVX2 variant of the sweep kernels, four double lanes per iteration.
//
// Functions carry target("avx2") individually, so the rest of the binary
// stays baseline x86-64. No FMA: every product and sum is rounded
// separately, exactly as in the scalar table. Remainder lanes go through the
// scalar table.

#include "sqz/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#define SQZ_AVX2 __attribute__((target("avx2")))

namespace sqz::kernels {

namespace {

constexpr std::size_t kLanes = 4;

SQZ_AVX2 inline __m256d load(const double* p) { return _mm256_loadu_pd(p); }
SQZ_AVX2 inline void store(double* p, __m256d v) { _mm256_storeu_pd(p, v); }
SQZ_AVX2 inline __m256d splat(double v) { return _mm256_set1_pd(v); }

std::size_t vector_end(std::size_t n) { return n - n % kLanes; }

SQZ_AVX2 void opa_spectrum(const OpaCoefficients& c, std::span<const double> omega, std::span<double> squeezed,
                  std::span<double> anti) {
  const double x = c.pump_x;
  const __m256d gain = splat((c.escape * 4.0) * x);
  const __m256d lo = splat((1.0 + x) * (1.0 + x));
  const __m256d hi = splat((1.0 - x) * (1.0 - x));
  const __m256d inv_bw = splat(c.inv_bandwidth);
  const __m256d one = splat(1.0);

  const std::size_t n = omega.size();
  const std::size_t end = vector_end(n);
  for (std::size_t i = 0; i < end; i += kLanes) {
    const __m256d ratio = _mm256_mul_pd(load(&omega[i]), inv_bw);
    const __m256d w = _mm256_mul_pd(ratio, ratio);
    store(&squeezed[i], _mm256_sub_pd(one, _mm256_div_pd(gain, _mm256_add_pd(lo, w))));
    store(&anti[i], _mm256_add_pd(one, _mm256_div_pd(gain, _mm256_add_pd(hi, w))));
  }
  scalar_table().opa_spectrum(c, omega.subspan(end), squeezed.subspan(end), anti.subspan(end));
}

SQZ_AVX2 void cavity_response(const CavityCoefficients& c, std::span<const double> half_cos, std::span<const double> half_sin,
                     ComplexView refl, ComplexView trans) {
  const __m256d r1 = splat(c.r1);
  const __m256d r2 = splat(c.r2);
  const __m256d g = splat(c.r1 * c.r2);
  const __m256d t1t2 = splat(c.t1t2);
  const __m256d one = splat(1.0);

  const std::size_t n = half_cos.size();
  const std::size_t end = vector_end(n);
  for (std::size_t i = 0; i < end; i += kLanes) {
    const __m256d hc = load(&half_cos[i]);
    const __m256d hs = load(&half_sin[i]);
    const __m256d ec = _mm256_sub_pd(_mm256_mul_pd(hc, hc), _mm256_mul_pd(hs, hs));
    const __m256d hcs = _mm256_mul_pd(hc, hs);
    const __m256d es = _mm256_add_pd(hcs, hcs);
    const __m256d nr = _mm256_sub_pd(_mm256_mul_pd(r2, ec), r1);
    const __m256d ni = _mm256_mul_pd(r2, es);
    const __m256d dr = _mm256_sub_pd(one, _mm256_mul_pd(g, ec));
    const __m256d p = _mm256_mul_pd(g, es);
    const __m256d den = _mm256_add_pd(_mm256_mul_pd(dr, dr), _mm256_mul_pd(p, p));
    store(&refl.re[i], _mm256_div_pd(_mm256_sub_pd(_mm256_mul_pd(nr, dr), _mm256_mul_pd(ni, p)), den));
    store(&refl.im[i], _mm256_div_pd(_mm256_add_pd(_mm256_mul_pd(nr, p), _mm256_mul_pd(ni, dr)), den));
    const __m256d tr = _mm256_sub_pd(_mm256_mul_pd(hc, dr), _mm256_mul_pd(hs, p));
    const __m256d ti = _mm256_add_pd(_mm256_mul_pd(hc, p), _mm256_mul_pd(hs, dr));
    store(&trans.re[i], _mm256_div_pd(_mm256_mul_pd(t1t2, tr), den));
    store(&trans.im[i], _mm256_div_pd(_mm256_mul_pd(t1t2, ti), den));
  }
  scalar_table().cavity_response(c, half_cos.subspan(end), half_sin.subspan(end),
                                 {refl.re.subspan(end), refl.im.subspan(end)},
                                 {trans.re.subspan(end), trans.im.subspan(end)});
}

SQZ_AVX2 void sideband_transfer(ConstComplexView rp, ConstComplexView rm, CovarianceView cov) {
  const __m256d one = splat(1.0);
  const __m256d half = splat(0.5);

  const std::size_t n = cov.size();
  const std::size_t end = vector_end(n);
  for (std::size_t i = 0; i < end; i += kLanes) {
    const __m256d s11 = load(&cov.s11[i]);
    const __m256d s22 = load(&cov.s22[i]);
    const __m256d xr = load(&cov.s12_re[i]);
    const __m256d xi = load(&cov.s12_im[i]);
    const __m256d ar = load(&rp.re[i]);
    const __m256d ai = load(&rp.im[i]);
    const __m256d mr = load(&rm.re[i]);
    const __m256d mi = load(&rm.im[i]);

    const __m256d sum = _mm256_add_pd(s11, s22);
    const __m256d xi2 = _mm256_add_pd(xi, xi);
    const __m256d u = _mm256_mul_pd(_mm256_add_pd(sum, xi2), half);
    const __m256d w = _mm256_mul_pd(_mm256_sub_pd(sum, xi2), half);
    const __m256d m = _mm256_mul_pd(_mm256_sub_pd(s11, s22), half);

    const __m256d ga = _mm256_add_pd(_mm256_mul_pd(ar, ar), _mm256_mul_pd(ai, ai));
    const __m256d gb = _mm256_add_pd(_mm256_mul_pd(mr, mr), _mm256_mul_pd(mi, mi));
    const __m256d u2 = _mm256_add_pd(one, _mm256_mul_pd(ga, _mm256_sub_pd(u, one)));
    const __m256d w2 = _mm256_add_pd(one, _mm256_mul_pd(gb, _mm256_sub_pd(w, one)));

    const __m256d gr = _mm256_sub_pd(_mm256_mul_pd(ar, mr), _mm256_mul_pd(ai, mi));
    const __m256d gi = _mm256_add_pd(_mm256_mul_pd(ar, mi), _mm256_mul_pd(ai, mr));
    const __m256d zr = _mm256_sub_pd(_mm256_mul_pd(gr, m), _mm256_mul_pd(gi, xr));
    const __m256d zi = _mm256_add_pd(_mm256_mul_pd(gr, xr), _mm256_mul_pd(gi, m));

    const __m256d mean = _mm256_mul_pd(_mm256_add_pd(u2, w2), half);
    store(&cov.s11[i], _mm256_add_pd(mean, zr));
    store(&cov.s22[i], _mm256_sub_pd(mean, zr));
    store(&cov.s12_re[i], zi);
    store(&cov.s12_im[i], _mm256_mul_pd(_mm256_sub_pd(u2, w2), half));
  }
  scalar_table().sideband_transfer({rp.re.subspan(end), rp.im.subspan(end)}, {rm.re.subspan(end), rm.im.subspan(end)},
                                   {cov.s11.subspan(end), cov.s22.subspan(end), cov.s12_re.subspan(end),
                                    cov.s12_im.subspan(end)});
}

SQZ_AVX2 void scalar_loss(double eta, CovarianceView cov) {
  const __m256d e = splat(eta);
  const __m256d one = splat(1.0);
  const std::size_t end = vector_end(cov.size());
  for (std::size_t i = 0; i < end; i += kLanes) {
    store(&cov.s11[i], _mm256_add_pd(one, _mm256_mul_pd(e, _mm256_sub_pd(load(&cov.s11[i]), one))));
    store(&cov.s22[i], _mm256_add_pd(one, _mm256_mul_pd(e, _mm256_sub_pd(load(&cov.s22[i]), one))));
    store(&cov.s12_re[i], _mm256_mul_pd(e, load(&cov.s12_re[i])));
    store(&cov.s12_im[i], _mm256_mul_pd(e, load(&cov.s12_im[i])));
  }
  scalar_table().scalar_loss(eta, {cov.s11.subspan(end), cov.s22.subspan(end), cov.s12_re.subspan(end),
                                   cov.s12_im.subspan(end)});
}

SQZ_AVX2 void homodyne_project(const HomodyneCoefficients& c, CovarianceView cov, std::span<double> out) {
  const __m256d cc = splat(c.cos_angle * c.cos_angle);
  const __m256d ss = splat(c.sin_angle * c.sin_angle);
  const __m256d cs = splat((c.cos_angle * c.sin_angle) * 2.0);
  const __m256d qe = splat(c.quantum_efficiency);
  const __m256d one = splat(1.0);
  const std::size_t end = vector_end(cov.size());
  for (std::size_t i = 0; i < end; i += kLanes) {
    const __m256d a = _mm256_mul_pd(cc, _mm256_sub_pd(load(&cov.s11[i]), one));
    const __m256d b = _mm256_mul_pd(ss, _mm256_sub_pd(load(&cov.s22[i]), one));
    const __m256d excess = _mm256_add_pd(_mm256_add_pd(a, b), _mm256_mul_pd(cs, load(&cov.s12_re[i])));
    store(&out[i], _mm256_add_pd(one, _mm256_mul_pd(qe, excess)));
  }
  scalar_table().homodyne_project(
      c, {cov.s11.subspan(end), cov.s22.subspan(end), cov.s12_re.subspan(end), cov.s12_im.subspan(end)},
      out.subspan(end));
}

}  // namespace

const KernelTable* avx2_table() {
  static const KernelTable table{"avx2", opa_spectrum, cavity_response, sideband_transfer, scalar_loss,
                                 homodyne_project};
  return &table;
}

}  // namespace sqz::kernels

#else

namespace sqz::kernels {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace sqz::kernels

#endif
