#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "bohreq/error.hpp"
#include "fixtures.hpp"

using namespace bohreq;
using namespace fixtures;

TEST(Coefficient, ExactNormalization) {
  auto c = Coefficient::exact(0, Rational(1, 3));
  EXPECT_EQ(c.polar().phase_turns, Rational(0));
  auto d = Coefficient::exact(2, Rational(5, 4));
  EXPECT_EQ(d.polar().phase_turns, Rational(1, 4));
  EXPECT_NEAR(std::abs(d.value() - ComplexPoint(0, 2)), 0.0, 1e-15);
  try {
    Coefficient::exact(-1, 0);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
  }
}

TEST(Coefficient, NumericPhaseInTurns) {
  EXPECT_NEAR(Coefficient::numeric(0, 1).phase_turns(), 0.25, 1e-15);
  EXPECT_NEAR(Coefficient::numeric(0, -1).phase_turns(), 0.75, 1e-15);
  EXPECT_EQ(Coefficient::numeric(-1, 0).phase_turns(), 0.5);
}

TEST(ExponentialSum, ConstructionErrors) {
  auto e = exps(one(), {{"1"}, {"2"}});
  try {
    ExponentialSum(e, {Coefficient::exact(1, 0), Coefficient::numeric(1, 0)});
    ADD_FAILURE();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::MixedCoefficientModes);
  }
  try {
    ExponentialSum(e, {Coefficient::exact(1, 0)});
    ADD_FAILURE();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::DimensionMismatch);
  }
  try {
    ExponentialSum(e, {Coefficient::exact(0, 0), Coefficient::exact(0, 0)});
    ADD_FAILURE();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::InvalidArgument);
  }
  try {
    ExponentialSum(e, {Coefficient::exact(1, 0), Coefficient::exact(1, 0)}, Strip{1.0, 1.0});
    ADD_FAILURE();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::InvalidArgument);
  }
  EXPECT_NO_THROW(ExponentialSum(e, {Coefficient::exact(0, 0), Coefficient::exact(0, 0)}, std::nullopt,
                                 ExponentialSum::ZeroPolicy::allow));
}

TEST(Evaluate, Examples) {
  auto zero = polar_sum(exps(one(), {{"1"}}), {{"0", "0"}});
  EXPECT_EQ(evaluate(zero, 0.3, 1.7), ComplexPoint(0, 0));
  auto single = polar_sum(exps(one(), {{"1"}}), {{"1", "0"}});
  EXPECT_LT(std::abs(evaluate(single, 0.0, std::numbers::pi) - ComplexPoint(-1, 0)), 1e-12);
  auto pair = polar_sum(exps(one_sqrt2(), {{"1", "0"}, {"0", "1"}}), {{"1", "0"}, {"1", "0"}});
  EXPECT_LT(std::abs(evaluate(pair, 0.0, 0.0) - ComplexPoint(2, 0)), 1e-12);
}

TEST(Evaluate, OutsideStrip) {
  auto f = polar_sum(exps(one(), {{"1"}}), {{"1", "0"}}, Strip{-1.0, 0.5});
  EXPECT_NO_THROW(evaluate(f, 0.0, 1.0));
  for (double sigma : {0.5, -1.0, 2.0}) {
    try {
      evaluate(f, sigma, 0.0);
      ADD_FAILURE() << sigma;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::OutsideStrip);
    }
  }
}

TEST(Evaluate, MatchesDirectSummationAndBound) {
  Lcg64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    auto e = random_exponents(rng, 5, 3);
    auto f = random_polar_sum(rng, e);
    for (int s = 0; s < 10; ++s) {
      double sigma = 2.0 * rng.uniform() - 1.0, t = 200.0 * rng.uniform() - 100.0;
      std::complex<long double> direct = 0;
      for (std::size_t j = 0; j < f.size(); ++j) {
        long double lam = e[j].value();
        std::complex<long double> a(f.coefficients()[j].value().real(), f.coefficients()[j].value().imag());
        direct += a * std::exp(lam * sigma) * std::polar(1.0L, lam * static_cast<long double>(t));
      }
      ComplexPoint v = evaluate(f, sigma, t);
      // Phases reach ~10^3 radians, so double rounding of lambda * t alone is
      // ~10^-13 relative to the amplitude sum.
      EXPECT_LT(std::abs(v - ComplexPoint(static_cast<double>(direct.real()), static_cast<double>(direct.imag()))),
                1e-12 * std::max(1.0, f.modulus_bound(sigma)));
      EXPECT_LE(std::abs(v), f.modulus_bound(sigma) * (1 + 1e-12) + 1e-15);
    }
  }
}

TEST(Evaluate, LinearAndAdditive) {
  auto g = one_sqrt2();
  auto e1 = exps(g, {{"1", "0"}, {"0", "1"}});
  auto e2 = exps(g, {{"1/2", "1"}});
  auto e12 = exps(g, {{"1", "0"}, {"0", "1"}, {"1/2", "1"}});
  auto f = numeric_sum(e1, {{1, 2}, {-0.5, 0.25}});
  auto h = numeric_sum(e2, {{0.75, -1}});
  auto fh = numeric_sum(e12, {{1, 2}, {-0.5, 0.25}, {0.75, -1}});
  auto f3 = numeric_sum(e1, {{3, 6}, {-1.5, 0.75}});
  for (double t : {-7.0, 0.0, 0.3, 11.0}) {
    EXPECT_LT(std::abs(evaluate(fh, 0.2, t) - evaluate(f, 0.2, t) - evaluate(h, 0.2, t)), 1e-13);
    EXPECT_LT(std::abs(evaluate(f3, 0.2, t) - 3.0 * evaluate(f, 0.2, t)), 1e-13);
  }
}

TEST(RecoverCoefficient, Examples) {
  auto g = one_sqrt2();
  auto f = polar_sum(exps(g, {{"1", "0"}}), {{"3", "0"}});
  EXPECT_LT(std::abs(recover_coefficient(f, freq(g, {"1", "0"}), 0.0, 1e4, 0.01) - ComplexPoint(3, 0)), 1e-3);
  EXPECT_LT(std::abs(recover_coefficient(f, freq(g, {"0", "1"}), 0.0, 1e4, 0.01)), 1e-3);
  auto zero = polar_sum(exps(g, {{"1", "0"}}), {{"0", "0"}});
  EXPECT_EQ(recover_coefficient(zero, freq(g, {"0", "1"}), 0.0, 1e4, 0.01), ComplexPoint(0, 0));
}

TEST(RecoverCoefficient, OffLineSigmaRescales) {
  auto g = one_sqrt2();
  auto f = polar_sum(exps(g, {{"1", "0"}, {"0", "1"}}), {{"2", "1/8"}, {"1", "1/2"}});
  ComplexPoint a = recover_coefficient(f, freq(g, {"0", "1"}), 0.4, 5e3, 0.01);
  EXPECT_LT(std::abs(a - ComplexPoint(-1, 0)), 2e-3);
}

TEST(RecoverCoefficient, Errors) {
  auto g = one_sqrt2();
  auto f = polar_sum(exps(g, {{"1", "0"}}), {{"3", "0"}}, Strip{-1, 1});
  try {
    recover_coefficient(f, freq(g, {"0", "1"}), 0.0, 10.0, 1.0);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BadDiscretization);
  }
  try {
    recover_coefficient(f, freq(g, {"1", "0"}), 2.0, 10.0, 0.01);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OutsideStrip);
  }
}
