#include <gtest/gtest.h>

#include "bohreq/lattice.hpp"
#include "bohreq/lcg.hpp"

using namespace bohreq;

namespace {

Matrix<Rational> random_rational_matrix(Lcg64& rng, std::size_t r, std::size_t c) {
  Matrix<Rational> m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      if (rng.below(3) == 0) continue;
      m(i, j) = Rational(static_cast<long>(rng.below(7)) - 3, static_cast<long>(rng.below(3)) + 1);
      m(i, j).canonicalize();
    }
  return m;
}

Matrix<Integer> random_integer_matrix(Lcg64& rng, std::size_t r, std::size_t c, int span) {
  Matrix<Integer> m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<long>(rng.below(2 * span + 1)) - span;
  return m;
}

// Determinant by fraction-free cofactor expansion (small sizes only).
Integer determinant(const Matrix<Integer>& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Integer det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    Matrix<Integer> minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0, k = 0; j < n; ++j)
        if (j != c) minor(i - 1, k++) = m(i, j);
    Integer term = m(0, c) * determinant(minor);
    det += (c % 2 == 0) ? term : Integer(-term);
  }
  return det;
}

template <class T>
Matrix<Rational> as_rational(const Matrix<T>& m) {
  Matrix<Rational> r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

}  // namespace

TEST(RowReduce, TransformReproducesReducedForm) {
  Lcg64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = random_rational_matrix(rng, 1 + rng.below(4), 1 + rng.below(4));
    RowEchelon e = row_reduce(a);
    EXPECT_EQ(e.transform * a, e.reduced);
    for (std::size_t r = 0; r < e.rank(); ++r) {
      EXPECT_EQ(e.reduced(r, e.pivot_cols[r]), Rational(1));
      for (std::size_t i = 0; i < a.rows(); ++i)
        if (i != r) EXPECT_EQ(e.reduced(i, e.pivot_cols[r]), Rational(0));
    }
  }
}

TEST(IntegerLeftKernel, RowsAnnihilateAndSpanTheKernel) {
  Lcg64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = random_rational_matrix(rng, 1 + rng.below(5), 1 + rng.below(3));
    Matrix<Integer> u = integer_left_kernel(a);
    EXPECT_EQ(u.rows(), a.rows() - rank(a));
    Matrix<Rational> prod = as_rational(u) * a;
    EXPECT_EQ(prod, Matrix<Rational>(u.rows(), a.cols()));
    EXPECT_EQ(rank(as_rational(u)), u.rows());
    for (std::size_t r = 0; r < u.rows(); ++r) {
      Integer g = 0;
      for (const auto& x : u.row(r)) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
      EXPECT_EQ(g, Integer(1));
    }
  }
}

TEST(IntegerLeftKernel, EmptyColumnSetGivesIdentity) {
  Matrix<Rational> a(3, 0);
  EXPECT_EQ(integer_left_kernel(a), Matrix<Integer>::identity(3));
}

TEST(HermiteForm, UnimodularTransformAndEchelonShape) {
  Lcg64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    auto b = random_integer_matrix(rng, 1 + rng.below(3), 1 + rng.below(4), 4);
    HermiteForm h = column_hermite_form(b);
    EXPECT_EQ(b * h.unimodular, h.hermite);
    Integer det = determinant(h.unimodular);
    EXPECT_TRUE(det == 1 || det == -1);
    for (std::size_t c = 0; c < h.rank(); ++c) {
      std::size_t pr = h.pivot_rows[c];
      EXPECT_GT(h.hermite(pr, c), 0);
      for (std::size_t i = 0; i < pr; ++i) EXPECT_EQ(h.hermite(i, c), 0);
      for (std::size_t left = 0; left < c; ++left) {
        EXPECT_GE(h.hermite(pr, left), 0);
        EXPECT_LT(h.hermite(pr, left), h.hermite(pr, c));
      }
      if (c > 0) {
        EXPECT_GT(pr, h.pivot_rows[c - 1]);
      }
    }
    for (std::size_t c = h.rank(); c < b.cols(); ++c)
      for (std::size_t i = 0; i < b.rows(); ++i) EXPECT_EQ(h.hermite(i, c), 0);
  }
}

// Membership answers carry proofs: a combination hitting the target, or a
// dual vector separating it. A bounded search supplies the other direction.
TEST(LatticeMembership, CertificatesAndBoundedSearchAgree) {
  Lcg64 rng(14);
  for (int trial = 0; trial < 60; ++trial) {
    auto b = random_integer_matrix(rng, 2, 2 + rng.below(2), 3);
    HermiteForm h = column_hermite_form(b);
    for (int tx = -3; tx <= 3; ++tx)
      for (int ty = -3; ty <= 3; ++ty) {
        std::vector<Rational> target = {Rational(tx), Rational(ty)};
        LatticeMembership mem = lattice_membership(h, target);
        bool found = false;
        const int r = 6;
        const std::size_t p = b.cols();
        std::vector<int> z(p, -r);
        while (!found) {
          bool hit = true;
          for (std::size_t i = 0; i < 2 && hit; ++i) {
            Integer acc = 0;
            for (std::size_t c = 0; c < p; ++c) acc += b(i, c) * z[c];
            hit = acc == (i == 0 ? tx : ty);
          }
          found = hit;
          std::size_t c = 0;
          while (c < p && ++z[c] > r) z[c++] = -r;
          if (c == p) break;
        }
        if (mem.combination) {
          for (std::size_t i = 0; i < 2; ++i) {
            Integer acc = 0;
            for (std::size_t c = 0; c < b.cols(); ++c) acc += b(i, c) * (*mem.combination)[c];
            EXPECT_EQ(Rational(acc), target[i]);
          }
        } else {
          EXPECT_FALSE(found) << "bounded search found a combination the solver missed";
          const auto& c = mem.dual_witness;
          for (std::size_t col = 0; col < b.cols(); ++col) {
            Rational acc = c[0] * Rational(b(0, col)) + c[1] * Rational(b(1, col));
            EXPECT_TRUE(is_integer(acc));
          }
          EXPECT_FALSE(is_integer(c[0] * target[0] + c[1] * target[1]));
        }
      }
  }
}
