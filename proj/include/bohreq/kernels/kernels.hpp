#pragma once

// Batched trigonometric-sum and distance kernels. Each has a scalar
// reference implementation and, on x86-64, an AVX2/FMA variant selected at
// runtime. Setting BOHREQ_KERNEL=scalar in the environment forces the
// reference path.

#include <cstddef>
#include <string_view>

namespace bohreq::kernels {

enum class Backend { scalar, avx2 };

std::string_view backend_name(Backend b);
bool avx2_supported();
Backend active_backend();
/// Throws InvalidArgument when the requested backend is unavailable.
void set_backend(Backend b);

/// out[k] = sum_j c_j * exp(i * w[j] * t[k]).
void line_sum(const double* c_re, const double* c_im, const double* w, std::size_t terms, const double* t,
              std::size_t points, double* out_re, double* out_im);

/// out[k] = sum_j c_j * exp(2 pi i * <rows_j, x_k>), phases in turns.
/// rows is terms x dim row-major; x is dim x points (coordinate-major).
void turn_sum(const double* c_re, const double* c_im, const double* rows, std::size_t terms, std::size_t dim,
              const double* x, std::size_t points, double* out_re, double* out_im);

/// Minimum of (xs[i] - qx)^2 + (ys[i] - qy)^2 over i < n, or +inf when n == 0.
double min_dist2(const double* xs, const double* ys, std::size_t n, double qx, double qy);

namespace scalar {
void line_sum(const double*, const double*, const double*, std::size_t, const double*, std::size_t, double*, double*);
void turn_sum(const double*, const double*, const double*, std::size_t, std::size_t, const double*, std::size_t,
              double*, double*);
double min_dist2(const double*, const double*, std::size_t, double, double);
}  // namespace scalar

namespace avx2 {
void line_sum(const double*, const double*, const double*, std::size_t, const double*, std::size_t, double*, double*);
void turn_sum(const double*, const double*, const double*, std::size_t, std::size_t, const double*, std::size_t,
              double*, double*);
double min_dist2(const double*, const double*, std::size_t, double, double);
}  // namespace avx2

}  // namespace bohreq::kernels
