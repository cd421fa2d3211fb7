#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "bohreq/kernels/kernels.hpp"
#include "bohreq/lcg.hpp"

using namespace bohreq;
namespace k = bohreq::kernels;

namespace {

struct LineCase {
  std::vector<double> c_re, c_im, w, t;
  double weight = 0.0;
};

LineCase random_line_case(Lcg64& rng, std::size_t terms, std::size_t points, double t_span) {
  LineCase c;
  for (std::size_t j = 0; j < terms; ++j) {
    c.c_re.push_back(2 * rng.uniform() - 1);
    c.c_im.push_back(2 * rng.uniform() - 1);
    c.w.push_back(6 * rng.uniform() - 3);
    c.weight += std::hypot(c.c_re.back(), c.c_im.back());
  }
  for (std::size_t i = 0; i < points; ++i) c.t.push_back(t_span * (2 * rng.uniform() - 1));
  return c;
}

}  // namespace

TEST(ScalarKernels, LineSumMatchesPolarOracle) {
  Lcg64 rng(51);
  auto c = random_line_case(rng, 5, 257, 1000);
  std::vector<double> re(c.t.size()), im(c.t.size());
  k::scalar::line_sum(c.c_re.data(), c.c_im.data(), c.w.data(), c.w.size(), c.t.data(), c.t.size(), re.data(),
                      im.data());
  for (std::size_t i = 0; i < c.t.size(); ++i) {
    std::complex<long double> acc = 0;
    for (std::size_t j = 0; j < c.w.size(); ++j)
      acc += std::complex<long double>(c.c_re[j], c.c_im[j]) *
             std::polar(1.0L, static_cast<long double>(c.w[j] * c.t[i]));
    EXPECT_NEAR(re[i], static_cast<double>(acc.real()), 1e-13);
    EXPECT_NEAR(im[i], static_cast<double>(acc.imag()), 1e-13);
  }
}

TEST(ScalarKernels, MinDistEmptyIsInfinite) {
  EXPECT_TRUE(std::isinf(k::scalar::min_dist2(nullptr, nullptr, 0, 0, 0)));
}

class Avx2Kernels : public ::testing::Test {
 protected:
  void SetUp() override {
    if (!k::avx2_supported()) GTEST_SKIP() << "AVX2/FMA not available";
  }
};

TEST_F(Avx2Kernels, LineSumMatchesScalarIncludingTails) {
  Lcg64 rng(52);
  for (std::size_t points : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 1003u}) {
    for (double span : {1.0, 3000.0, 1e5}) {
      auto c = random_line_case(rng, 1 + rng.below(6), points, span);
      std::vector<double> r1(points), i1(points), r2(points), i2(points);
      k::scalar::line_sum(c.c_re.data(), c.c_im.data(), c.w.data(), c.w.size(), c.t.data(), points, r1.data(),
                          i1.data());
      k::avx2::line_sum(c.c_re.data(), c.c_im.data(), c.w.data(), c.w.size(), c.t.data(), points, r2.data(),
                        i2.data());
      for (std::size_t i = 0; i < points; ++i) {
        EXPECT_NEAR(r1[i], r2[i], 1e-13 * c.weight) << "span " << span << " point " << i;
        EXPECT_NEAR(i1[i], i2[i], 1e-13 * c.weight);
      }
    }
  }
}

TEST_F(Avx2Kernels, LineSumFallsBackForHugeArguments) {
  std::vector<double> cr = {1.0}, ci = {0.0}, w = {1.0}, t = {0.5, 3e6, -7e7, 2.0, 1e9};
  std::vector<double> r1(t.size()), i1(t.size()), r2(t.size()), i2(t.size());
  k::scalar::line_sum(cr.data(), ci.data(), w.data(), 1, t.data(), t.size(), r1.data(), i1.data());
  k::avx2::line_sum(cr.data(), ci.data(), w.data(), 1, t.data(), t.size(), r2.data(), i2.data());
  for (std::size_t i = 0; i < t.size(); ++i) {
    EXPECT_EQ(r1[i], r2[i]) << t[i];
    EXPECT_EQ(i1[i], i2[i]) << t[i];
  }
}

TEST_F(Avx2Kernels, TurnSumMatchesScalar) {
  Lcg64 rng(53);
  for (std::size_t dim : {1u, 2u, 3u}) {
    for (std::size_t points : {1u, 4u, 6u, 401u}) {
      const std::size_t terms = 1 + rng.below(5);
      std::vector<double> cr(terms), ci(terms), rows(terms * dim), x(dim * points);
      double weight = 0;
      for (std::size_t j = 0; j < terms; ++j) {
        cr[j] = 2 * rng.uniform() - 1;
        ci[j] = 2 * rng.uniform() - 1;
        weight += std::hypot(cr[j], ci[j]);
      }
      for (auto& r : rows) r = static_cast<double>(static_cast<long>(rng.below(13)) - 6) / (1 + rng.below(4));
      for (auto& v : x) v = rng.uniform();
      std::vector<double> r1(points), i1(points), r2(points), i2(points);
      k::scalar::turn_sum(cr.data(), ci.data(), rows.data(), terms, dim, x.data(), points, r1.data(), i1.data());
      k::avx2::turn_sum(cr.data(), ci.data(), rows.data(), terms, dim, x.data(), points, r2.data(), i2.data());
      for (std::size_t i = 0; i < points; ++i) {
        EXPECT_NEAR(r1[i], r2[i], 1e-13 * weight);
        EXPECT_NEAR(i1[i], i2[i], 1e-13 * weight);
      }
    }
  }
}

TEST_F(Avx2Kernels, MinDistMatchesScalar) {
  Lcg64 rng(54);
  for (std::size_t n : {1u, 3u, 4u, 5u, 17u, 1000u}) {
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
      xs[i] = rng.uniform();
      ys[i] = rng.uniform();
    }
    double qx = rng.uniform(), qy = rng.uniform();
    // Fused multiply-add may round the last bit differently.
    const double s = k::scalar::min_dist2(xs.data(), ys.data(), n, qx, qy);
    EXPECT_NEAR(s, k::avx2::min_dist2(xs.data(), ys.data(), n, qx, qy), 4e-16 * s);
  }
}

TEST(KernelDispatch, BackendCanBeForced) {
  const auto original = k::active_backend();
  k::set_backend(k::Backend::scalar);
  EXPECT_EQ(k::active_backend(), k::Backend::scalar);
  std::vector<double> cr = {1}, ci = {0}, w = {1}, t = {std::numbers::pi / 2};
  double re = 0, im = 0;
  k::line_sum(cr.data(), ci.data(), w.data(), 1, t.data(), 1, &re, &im);
  EXPECT_NEAR(im, 1.0, 1e-15);
  if (k::avx2_supported()) {
    k::set_backend(k::Backend::avx2);
    EXPECT_EQ(k::active_backend(), k::Backend::avx2);
  } else {
    EXPECT_THROW(k::set_backend(k::Backend::avx2), std::exception);
  }
  k::set_backend(original);
}
