#include <cmath>
#include <limits>
#include <numbers>

#include "bohreq/kernels/kernels.hpp"

namespace bohreq::kernels::scalar {

void line_sum(const double* c_re, const double* c_im, const double* w, std::size_t terms, const double* t,
              std::size_t points, double* out_re, double* out_im) {
  for (std::size_t k = 0; k < points; ++k) {
    double re = 0.0, im = 0.0;
    for (std::size_t j = 0; j < terms; ++j) {
      double a = w[j] * t[k];
      double s = std::sin(a), c = std::cos(a);
      re += c_re[j] * c - c_im[j] * s;
      im += c_re[j] * s + c_im[j] * c;
    }
    out_re[k] = re;
    out_im[k] = im;
  }
}

void turn_sum(const double* c_re, const double* c_im, const double* rows, std::size_t terms, std::size_t dim,
              const double* x, std::size_t points, double* out_re, double* out_im) {
  for (std::size_t k = 0; k < points; ++k) {
    double re = 0.0, im = 0.0;
    for (std::size_t j = 0; j < terms; ++j) {
      double phi = 0.0;
      for (std::size_t l = 0; l < dim; ++l) phi += rows[j * dim + l] * x[l * points + k];
      double a = 2.0 * std::numbers::pi * (phi - std::nearbyint(phi));
      double s = std::sin(a), c = std::cos(a);
      re += c_re[j] * c - c_im[j] * s;
      im += c_re[j] * s + c_im[j] * c;
    }
    out_re[k] = re;
    out_im[k] = im;
  }
}

double min_dist2(const double* xs, const double* ys, std::size_t n, double qx, double qy) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    double dx = xs[i] - qx, dy = ys[i] - qy;
    double d = dx * dx + dy * dy;
    if (d < best) best = d;
  }
  return best;
}

}  // namespace bohreq::kernels::scalar
