#include <atomic>
#include <cstdlib>
#include <cstring>

#include "bohreq/error.hpp"
#include "bohreq/kernels/kernels.hpp"

namespace bohreq::kernels {
namespace {

Backend detect() {
  if (const char* env = std::getenv("BOHREQ_KERNEL"); env && std::strcmp(env, "scalar") == 0) return Backend::scalar;
  return avx2_supported() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> backend{detect()};
  return backend;
}

}  // namespace

std::string_view backend_name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

bool avx2_supported() {
#if defined(BOHREQ_HAVE_AVX2)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (b == Backend::avx2 && !avx2_supported())
    throw Error(ErrorKind::InvalidArgument, "AVX2 kernels are not available on this machine");
  current().store(b, std::memory_order_relaxed);
}

#if defined(BOHREQ_HAVE_AVX2)
#define BOHREQ_DISPATCH(fn, ...) \
  return active_backend() == Backend::avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__)
#else
#define BOHREQ_DISPATCH(fn, ...) return scalar::fn(__VA_ARGS__)
#endif

void line_sum(const double* c_re, const double* c_im, const double* w, std::size_t terms, const double* t,
              std::size_t points, double* out_re, double* out_im) {
  BOHREQ_DISPATCH(line_sum, c_re, c_im, w, terms, t, points, out_re, out_im);
}

void turn_sum(const double* c_re, const double* c_im, const double* rows, std::size_t terms, std::size_t dim,
              const double* x, std::size_t points, double* out_re, double* out_im) {
  BOHREQ_DISPATCH(turn_sum, c_re, c_im, rows, terms, dim, x, points, out_re, out_im);
}

double min_dist2(const double* xs, const double* ys, std::size_t n, double qx, double qy) {
  BOHREQ_DISPATCH(min_dist2, xs, ys, n, qx, qy);
}

}  // namespace bohreq::kernels
