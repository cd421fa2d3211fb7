#include <gtest/gtest.h>

#include <set>

#include "bohreq/congruence.hpp"
#include "bohreq/error.hpp"
#include "bohreq/lcg.hpp"
#include "brute_force.hpp"

using namespace bohreq;

namespace {

Matrix<Rational> column(std::initializer_list<long> entries) {
  Matrix<Rational> a(entries.size(), 1);
  std::size_t i = 0;
  for (long v : entries) a(i++, 0) = v;
  return a;
}

PhaseSystem<Rational> random_system(Lcg64& rng) {
  const std::size_t n = 1 + rng.below(4), m = 1 + rng.below(3);
  PhaseSystem<Rational> s{Matrix<Rational>(n, m), {}, {}};
  static const Rational moduli[] = {Rational(1), Rational(1, 2), Rational(1, 3)};
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < m; ++k) {
      s.a(j, k) = Rational(static_cast<long>(rng.below(5)) - 2, static_cast<long>(rng.below(2)) + 1);
      s.a(j, k).canonicalize();
    }
    long den = static_cast<long>(rng.below(12)) + 1;
    Rational th(static_cast<long>(rng.below(den)), den);
    th.canonicalize();
    s.theta.push_back(th);
    s.moduli.push_back(moduli[rng.below(3)]);
  }
  return s;
}

PhaseSystem<double> as_numeric(const PhaseSystem<Rational>& s) {
  PhaseSystem<double> d{s.a, {}, s.moduli};
  for (const auto& t : s.theta) d.theta.push_back(t.get_d());
  return d;
}

}  // namespace

TEST(SolvePhaseSystem, IndependentRowsAlwaysFeasible) {
  PhaseSystem<Rational> s{Matrix<Rational>::identity(3), {Rational(1, 3), Rational(0), Rational(5, 7)},
                          {1, 1, 1}};
  auto r = solve_phase_system(s, 0.0);
  ASSERT_TRUE(is_feasible(r));
  const auto& f = std::get<Feasible<Rational>>(r);
  EXPECT_EQ(f.y, s.theta);
  EXPECT_EQ(f.k, (std::vector<Integer>{0, 0, 0}));
}

TEST(SolvePhaseSystem, QuarterTurnAgainstDoubleFrequencyIsInfeasible) {
  PhaseSystem<Rational> s{column({1, 2}), {Rational(1, 4), Rational(0)}, {1, 1}};
  auto r = solve_phase_system(s, 0.0);
  ASSERT_FALSE(is_feasible(r));
  EXPECT_EQ(std::get<Infeasible>(r).u, (std::vector<Integer>{2, -1}));
  EXPECT_TRUE(verify_certificate(s, r, 0.0));
  EXPECT_FALSE(brute::feasible(s.a, s.theta, s.moduli));
}

TEST(SolvePhaseSystem, HalfTurnAgainstDoubleFrequencyIsFeasible) {
  PhaseSystem<Rational> s{column({1, 2}), {Rational(1, 2), Rational(0)}, {1, 1}};
  auto r = solve_phase_system(s, 0.0);
  ASSERT_TRUE(is_feasible(r));
  const auto& f = std::get<Feasible<Rational>>(r);
  EXPECT_EQ(f.y, (std::vector<Rational>{Rational(1, 2)}));
  EXPECT_EQ(f.k, (std::vector<Integer>{0, -1}));
  EXPECT_TRUE(verify_certificate(s, r, 0.0));
}

TEST(SolvePhaseSystem, Errors) {
  PhaseSystem<Rational> s{column({1, 2}), {Rational(1, 2), Rational(0)}, {1, 1}};
  try {
    solve_phase_system(s, 1e-9);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ToleranceInExactMode);
  }
  s.moduli.pop_back();
  try {
    solve_phase_system(s, 0.0);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
  }
}

TEST(RowModulus, Examples) {
  std::vector<Rational> integral = {Rational(1), Rational(-3)};
  EXPECT_EQ(row_modulus(integral), Rational(1));
  std::vector<Rational> zero = {Rational(0), Rational(0)};
  EXPECT_EQ(row_modulus(zero), Rational(1));
}

TEST(RowModulus, GeneratesTheReachableSubgroup) {
  Lcg64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Rational> r(2);
    for (auto& x : r) {
      x = Rational(static_cast<long>(rng.below(9)) - 4, static_cast<long>(rng.below(6)) + 1);
      x.canonicalize();
    }
    if (trial == 0) r = {Rational(1, 2), Rational(1, 3)};
    Rational mu = row_modulus(r);
    if (trial == 0) EXPECT_EQ(mu, Rational(1, 6));
    std::set<Rational> reached;
    for (long a = -6; a <= 6; ++a)
      for (long b = -6; b <= 6; ++b) reached.insert(frac(r[0] * a + r[1] * b));
    std::set<Rational> multiples;
    for (Rational x = 0; x < 1; x += mu) multiples.insert(x);
    EXPECT_EQ(reached, multiples);
  }
}

TEST(SolvePhaseSystem, AgreesWithExhaustiveOracle) {
  Lcg64 rng(32);
  int feasible = 0;
  for (int trial = 0; trial < 400; ++trial) {
    auto s = random_system(rng);
    auto r = solve_phase_system(s, 0.0);
    EXPECT_EQ(is_feasible(r), brute::feasible(s.a, s.theta, s.moduli)) << "trial " << trial;
    EXPECT_TRUE(verify_certificate(s, r, 0.0));
    feasible += is_feasible(r);
  }
  EXPECT_GT(feasible, 40);
  EXPECT_LT(feasible, 360);
}

TEST(SolvePhaseSystem, NumericModeMatchesExactMode) {
  Lcg64 rng(33);
  for (int trial = 0; trial < 300; ++trial) {
    auto s = random_system(rng);
    auto d = as_numeric(s);
    auto exact = solve_phase_system(s, 0.0);
    auto numeric = solve_phase_system(d, kDefaultNumericTolerance);
    EXPECT_EQ(is_feasible(exact), is_feasible(numeric)) << "trial " << trial;
    EXPECT_TRUE(verify_certificate(d, numeric, kDefaultNumericTolerance));
  }
}

TEST(SolvePhaseSystem, ScalingARowKeepsTheVerdict) {
  Lcg64 rng(34);
  for (int trial = 0; trial < 200; ++trial) {
    auto s = random_system(rng);
    auto scaled = s;
    std::size_t j = rng.below(s.a.rows());
    Rational c(static_cast<long>(rng.below(5)) + 1, static_cast<long>(rng.below(3)) + 1);
    c.canonicalize();
    for (std::size_t k = 0; k < s.a.cols(); ++k) scaled.a(j, k) *= c;
    scaled.moduli[j] *= c;
    // Reducing the scaled phase by the scaled modulus leaves the congruence
    // unchanged; skip the cases where the result still leaves [0, 1).
    Rational t = s.theta[j] * c;
    Rational reduced = t - Rational(floor(Rational(t / scaled.moduli[j]))) * scaled.moduli[j];
    scaled.theta[j] = frac(reduced);
    if (scaled.theta[j] != reduced) continue;
    EXPECT_EQ(is_feasible(solve_phase_system(s, 0.0)), is_feasible(solve_phase_system(scaled, 0.0)));
  }
}

TEST(SolvePhaseSystem, DeletingRowsNeverBreaksFeasibility) {
  Lcg64 rng(35);
  for (int trial = 0; trial < 200; ++trial) {
    auto s = random_system(rng);
    if (!is_feasible(solve_phase_system(s, 0.0)) || s.a.rows() < 2) continue;
    std::size_t drop = rng.below(s.a.rows());
    PhaseSystem<Rational> t{Matrix<Rational>(s.a.rows() - 1, s.a.cols()), {}, {}};
    for (std::size_t j = 0, i = 0; j < s.a.rows(); ++j) {
      if (j == drop) continue;
      for (std::size_t k = 0; k < s.a.cols(); ++k) t.a(i, k) = s.a(j, k);
      t.theta.push_back(s.theta[j]);
      t.moduli.push_back(s.moduli[j]);
      ++i;
    }
    EXPECT_TRUE(is_feasible(solve_phase_system(t, 0.0)));
  }
}

TEST(SolvePhaseSystem, ReturnedPointUsesZeroFreeVariables) {
  // One equation in two unknowns: the free coordinate stays at zero.
  Matrix<Rational> a(1, 2);
  a(0, 0) = 1;
  a(0, 1) = Rational(1, 3);
  PhaseSystem<Rational> s{a, {Rational(2, 5)}, {1}};
  auto r = solve_phase_system(s, 0.0);
  ASSERT_TRUE(is_feasible(r));
  EXPECT_EQ(std::get<Feasible<Rational>>(r).y, (std::vector<Rational>{Rational(2, 5), Rational(0)}));
}

TEST(LatticeCongruence, MixedIntegerUnknowns) {
  // y + w/2 == 1/4, 2y == 1/2 (mod 1 via w2): feasible with y = 1/4.
  Matrix<Rational> a = column({1, 2});
  Matrix<Rational> g(2, 2);
  g(0, 0) = Rational(1, 2);
  g(1, 1) = 1;
  auto res = solve_lattice_congruence<Rational>(a, g, {Rational(1, 4), Rational(1, 2)}, 0.0);
  ASSERT_TRUE(res.solution.has_value());
  for (std::size_t i = 0; i < 2; ++i) {
    Rational lhs = a(i, 0) * res.solution->y[0];
    for (std::size_t p = 0; p < 2; ++p) lhs += g(i, p) * Rational(res.solution->w[p]);
    EXPECT_EQ(lhs, (i == 0 ? Rational(1, 4) : Rational(1, 2)));
  }
  // With only integer freedom on row 1, 2y == 1/4 forces y == 1/8, which
  // row 0 cannot match modulo 1/2.
  auto bad = solve_lattice_congruence<Rational>(a, g, {Rational(1, 4), Rational(1, 4)}, 0.0);
  ASSERT_FALSE(bad.solution.has_value());
  Rational ca = bad.witness[0] * a(0, 0) + bad.witness[1] * a(1, 0);
  EXPECT_EQ(ca, Rational(0));
  for (std::size_t p = 0; p < 2; ++p) EXPECT_TRUE(is_integer(bad.witness[0] * g(0, p) + bad.witness[1] * g(1, p)));
  EXPECT_FALSE(is_integer(bad.witness[0] * Rational(1, 4) + bad.witness[1] * Rational(1, 4)));
}
