// AVX2/FMA variants. Sine and cosine use a two-constant Cody-Waite
// reduction by pi/2 followed by the fdlibm minimax kernels on
// [-pi/4, pi/4]; lanes with |x| > 1e6 fall back to libm.

#include <immintrin.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "bohreq/kernels/kernels.hpp"

namespace bohreq::kernels::avx2 {
namespace {

constexpr double kTwoOverPi = 6.36619772367581382433e-01;
constexpr double kPio2Hi = 1.57079632673412561417e+00;
constexpr double kPio2Lo = 6.07710050630396597660e-11;
constexpr double kReductionLimit = 1e6;

constexpr double S1 = -1.66666666666666324348e-01;
constexpr double S2 = 8.33333333332248946124e-03;
constexpr double S3 = -1.98412698298579493134e-04;
constexpr double S4 = 2.75573137070700676789e-06;
constexpr double S5 = -2.50507602534068634195e-08;
constexpr double S6 = 1.58969099521155010221e-10;

constexpr double C1 = 4.16666666666666019037e-02;
constexpr double C2 = -1.38888888888741095749e-03;
constexpr double C3 = 2.48015872894767294178e-05;
constexpr double C4 = -2.75573143513906633035e-07;
constexpr double C5 = 2.08757232129817482790e-09;
constexpr double C6 = -1.13596475577881948265e-11;

inline __m256d set(double v) { return _mm256_set1_pd(v); }

inline void sincos4(__m256d x, __m256d& s_out, __m256d& c_out) {
  const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  __m256d ax = _mm256_and_pd(x, abs_mask);
  if (_mm256_movemask_pd(_mm256_cmp_pd(ax, set(kReductionLimit), _CMP_GT_OQ)) != 0) {
    alignas(32) double lanes[4], s[4], c[4];
    _mm256_store_pd(lanes, x);
    for (int i = 0; i < 4; ++i) {
      s[i] = std::sin(lanes[i]);
      c[i] = std::cos(lanes[i]);
    }
    s_out = _mm256_load_pd(s);
    c_out = _mm256_load_pd(c);
    return;
  }

  __m256d q = _mm256_round_pd(_mm256_mul_pd(x, set(kTwoOverPi)), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(q, set(kPio2Hi), x);
  r = _mm256_fnmadd_pd(q, set(kPio2Lo), r);

  __m256d z = _mm256_mul_pd(r, r);

  __m256d ps = _mm256_fmadd_pd(z, set(S6), set(S5));
  ps = _mm256_fmadd_pd(z, ps, set(S4));
  ps = _mm256_fmadd_pd(z, ps, set(S3));
  ps = _mm256_fmadd_pd(z, ps, set(S2));
  __m256d v = _mm256_mul_pd(z, r);
  __m256d sin_r = _mm256_fmadd_pd(v, _mm256_fmadd_pd(z, ps, set(S1)), r);

  __m256d pc = _mm256_fmadd_pd(z, set(C6), set(C5));
  pc = _mm256_fmadd_pd(z, pc, set(C4));
  pc = _mm256_fmadd_pd(z, pc, set(C3));
  pc = _mm256_fmadd_pd(z, pc, set(C2));
  pc = _mm256_fmadd_pd(z, pc, set(C1));
  pc = _mm256_mul_pd(z, pc);
  __m256d cos_r = _mm256_sub_pd(set(1.0), _mm256_fmsub_pd(set(0.5), z, _mm256_mul_pd(z, pc)));

  __m128i n = _mm256_cvtpd_epi32(q);
  __m128i one = _mm_set1_epi32(1), two = _mm_set1_epi32(2);
  __m256d swap = _mm256_castsi256_pd(_mm256_cvtepi32_epi64(_mm_cmpeq_epi32(_mm_and_si128(n, one), one)));
  __m256d sin_neg = _mm256_castsi256_pd(_mm256_cvtepi32_epi64(_mm_cmpeq_epi32(_mm_and_si128(n, two), two)));
  __m256d cos_neg = _mm256_castsi256_pd(
      _mm256_cvtepi32_epi64(_mm_cmpeq_epi32(_mm_and_si128(_mm_add_epi32(n, one), two), two)));

  __m256d s = _mm256_blendv_pd(sin_r, cos_r, swap);
  __m256d c = _mm256_blendv_pd(cos_r, sin_r, swap);
  const __m256d sign = set(-0.0);
  s_out = _mm256_xor_pd(s, _mm256_and_pd(sin_neg, sign));
  c_out = _mm256_xor_pd(c, _mm256_and_pd(cos_neg, sign));
}

}  // namespace

void line_sum(const double* c_re, const double* c_im, const double* w, std::size_t terms, const double* t,
              std::size_t points, double* out_re, double* out_im) {
  std::size_t k = 0;
  auto block = [&](__m256d tv, double* re_dst, double* im_dst) {
    __m256d re = _mm256_setzero_pd(), im = _mm256_setzero_pd();
    for (std::size_t j = 0; j < terms; ++j) {
      __m256d s, c;
      sincos4(_mm256_mul_pd(set(w[j]), tv), s, c);
      __m256d cr = set(c_re[j]), ci = set(c_im[j]);
      re = _mm256_add_pd(re, _mm256_fmsub_pd(cr, c, _mm256_mul_pd(ci, s)));
      im = _mm256_add_pd(im, _mm256_fmadd_pd(cr, s, _mm256_mul_pd(ci, c)));
    }
    _mm256_storeu_pd(re_dst, re);
    _mm256_storeu_pd(im_dst, im);
  };
  for (; k + 4 <= points; k += 4) block(_mm256_loadu_pd(t + k), out_re + k, out_im + k);
  if (k < points) {
    double tt[4] = {0, 0, 0, 0}, re[4], im[4];
    for (std::size_t i = k; i < points; ++i) tt[i - k] = t[i];
    block(_mm256_loadu_pd(tt), re, im);
    for (std::size_t i = k; i < points; ++i) {
      out_re[i] = re[i - k];
      out_im[i] = im[i - k];
    }
  }
}

void turn_sum(const double* c_re, const double* c_im, const double* rows, std::size_t terms, std::size_t dim,
              const double* x, std::size_t points, double* out_re, double* out_im) {
  const __m256d two_pi = set(2.0 * std::numbers::pi);
  auto block = [&](std::size_t k, std::size_t valid, double* re_dst, double* im_dst) {
    __m256d xs[8];
    double pad[4];
    for (std::size_t l = 0; l < dim; ++l) {
      if (valid == 4) {
        xs[l] = _mm256_loadu_pd(x + l * points + k);
      } else {
        for (std::size_t i = 0; i < 4; ++i) pad[i] = i < valid ? x[l * points + k + i] : 0.0;
        xs[l] = _mm256_loadu_pd(pad);
      }
    }
    __m256d re = _mm256_setzero_pd(), im = _mm256_setzero_pd();
    for (std::size_t j = 0; j < terms; ++j) {
      __m256d phi = _mm256_setzero_pd();
      for (std::size_t l = 0; l < dim; ++l) phi = _mm256_fmadd_pd(set(rows[j * dim + l]), xs[l], phi);
      phi = _mm256_sub_pd(phi, _mm256_round_pd(phi, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC));
      __m256d s, c;
      sincos4(_mm256_mul_pd(two_pi, phi), s, c);
      __m256d cr = set(c_re[j]), ci = set(c_im[j]);
      re = _mm256_add_pd(re, _mm256_fmsub_pd(cr, c, _mm256_mul_pd(ci, s)));
      im = _mm256_add_pd(im, _mm256_fmadd_pd(cr, s, _mm256_mul_pd(ci, c)));
    }
    _mm256_storeu_pd(re_dst, re);
    _mm256_storeu_pd(im_dst, im);
  };
  if (dim > 8) {
    scalar::turn_sum(c_re, c_im, rows, terms, dim, x, points, out_re, out_im);
    return;
  }
  std::size_t k = 0;
  for (; k + 4 <= points; k += 4) block(k, 4, out_re + k, out_im + k);
  if (k < points) {
    double re[4], im[4];
    block(k, points - k, re, im);
    for (std::size_t i = k; i < points; ++i) {
      out_re[i] = re[i - k];
      out_im[i] = im[i - k];
    }
  }
}

double min_dist2(const double* xs, const double* ys, std::size_t n, double qx, double qy) {
  const double inf = std::numeric_limits<double>::infinity();
  __m256d best = set(inf);
  __m256d vx = set(qx), vy = set(qy);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), vx);
    __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + i), vy);
    best = _mm256_min_pd(best, _mm256_fmadd_pd(dx, dx, _mm256_mul_pd(dy, dy)));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, best);
  double b = std::min(std::min(lanes[0], lanes[1]), std::min(lanes[2], lanes[3]));
  for (; i < n; ++i) {
    double dx = xs[i] - qx, dy = ys[i] - qy;
    b = std::min(b, dx * dx + dy * dy);
  }
  return b;
}

}  // namespace bohreq::kernels::avx2
