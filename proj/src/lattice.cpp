#include "bohreq/lattice.hpp"

#include <cmath>
#include <utility>

#include "bohreq/error.hpp"

namespace bohreq {

RowEchelon row_reduce(const Matrix<Rational>& a) {
  RowEchelon out{a, Matrix<Rational>::identity(a.rows()), {}};
  Matrix<Rational>& m = out.reduced;
  Matrix<Rational>& t = out.transform;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && m(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    m.swap_rows(row, pivot);
    t.swap_rows(row, pivot);
    Rational inv = 1 / m(row, col);
    for (std::size_t j = 0; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t j = 0; j < t.cols(); ++j) t(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      Rational f = m(i, col);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
      for (std::size_t j = 0; j < t.cols(); ++j) t(i, j) -= f * t(row, j);
    }
    out.pivot_cols.push_back(col);
    ++row;
  }
  return out;
}

std::size_t rank(const Matrix<Rational>& a) { return row_reduce(a).rank(); }

Matrix<Integer> integer_left_kernel(const Matrix<Rational>& a) {
  // u^T a = 0  <=>  a^T u = 0: null space of the transpose.
  RowEchelon e = row_reduce(a.transposed());
  const std::size_t n = a.rows();
  std::vector<bool> is_pivot(n, false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;

  Matrix<Integer> kernel(n - e.rank(), n);
  std::size_t k = 0;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(n, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < e.rank(); ++r) v[e.pivot_cols[r]] = -e.reduced(r, free);
    auto prim = primitive_integer_vector(v);
    for (std::size_t j = 0; j < n; ++j) kernel(k, j) = prim[j];
    ++k;
  }
  return kernel;
}

namespace {

// Column operation helpers applied to the pair (H, W) in lockstep.
void combine_columns(Matrix<Integer>& m, std::size_t c1, std::size_t c2, const Integer& s, const Integer& t,
                     const Integer& u, const Integer& v) {
  // [c1 c2] <- [c1 c2] * [[s u], [t v]]
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer x = m(i, c1), y = m(i, c2);
    m(i, c1) = s * x + t * y;
    m(i, c2) = u * x + v * y;
  }
}

void negate_column(Matrix<Integer>& m, std::size_t c) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, c) = -m(i, c);
}

void axpy_column(Matrix<Integer>& m, std::size_t dst, std::size_t src, const Integer& q) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) -= q * m(i, src);
}

void swap_columns(Matrix<Integer>& m, std::size_t a, std::size_t b) {
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

}  // namespace

HermiteForm column_hermite_form(const Matrix<Integer>& b) {
  HermiteForm out{b, Matrix<Integer>::identity(b.cols()), {}};
  Matrix<Integer>& h = out.hermite;
  Matrix<Integer>& w = out.unimodular;
  std::size_t r = 0;
  for (std::size_t i = 0; i < h.rows() && r < h.cols(); ++i) {
    for (std::size_t j = r + 1; j < h.cols(); ++j) {
      if (h(i, j) == 0) continue;
      if (h(i, r) == 0) {
        swap_columns(h, r, j);
        swap_columns(w, r, j);
        continue;
      }
      Integer a = h(i, r), c = h(i, j), g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
      Integer u = -c / g, v = a / g;
      combine_columns(h, r, j, s, t, u, v);
      combine_columns(w, r, j, s, t, u, v);
    }
    if (h(i, r) == 0) continue;
    if (h(i, r) < 0) {
      negate_column(h, r);
      negate_column(w, r);
    }
    for (std::size_t c = 0; c < r; ++c) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(i, r).get_mpz_t());
      if (q == 0) continue;
      axpy_column(h, c, r, q);
      axpy_column(w, c, r, q);
    }
    out.pivot_rows.push_back(i);
    ++r;
  }
  return out;
}

namespace {

// Row vector x over the pivot rows with x * H_p == rhs (H_p lower triangular
// square block of pivot rows), solved right to left.
std::vector<Rational> solve_left_pivot_block(const HermiteForm& hnf, const std::vector<Rational>& rhs) {
  const std::size_t r = hnf.rank();
  std::vector<Rational> x(r, Rational(0));
  for (std::size_t c = r; c-- > 0;) {
    Rational acc = rhs[c];
    for (std::size_t k = c + 1; k < r; ++k) acc -= x[k] * hnf.hermite(hnf.pivot_rows[k], c);
    x[c] = acc / Rational(hnf.hermite(hnf.pivot_rows[c], c));
  }
  return x;
}

std::vector<Integer> combine_unimodular(const HermiteForm& hnf, const std::vector<Integer>& z) {
  const Matrix<Integer>& w = hnf.unimodular;
  std::vector<Integer> out(w.rows(), Integer(0));
  for (std::size_t i = 0; i < w.rows(); ++i)
    for (std::size_t c = 0; c < z.size(); ++c) out[i] += w(i, c) * z[c];
  return out;
}

}  // namespace

std::vector<Rational> pivot_dual_row(const HermiteForm& hnf, std::size_t pivot) {
  std::vector<Rational> rhs(hnf.rank(), Rational(0));
  rhs[pivot] = 1;
  auto x = solve_left_pivot_block(hnf, rhs);
  std::vector<Rational> c(hnf.hermite.rows(), Rational(0));
  for (std::size_t k = 0; k < hnf.rank(); ++k) c[hnf.pivot_rows[k]] = x[k];
  return c;
}

LatticeMembership lattice_membership(const HermiteForm& hnf, const std::vector<Rational>& target) {
  const Matrix<Integer>& h = hnf.hermite;
  if (target.size() != h.rows()) throw Error(ErrorKind::DimensionMismatch, "lattice target has wrong length");
  std::vector<Rational> z(hnf.rank(), Rational(0));
  std::size_t next = 0;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    Rational acc = target[i];
    for (std::size_t c = 0; c < next; ++c) acc -= Rational(h(i, c)) * z[c];
    if (next < hnf.rank() && hnf.pivot_rows[next] == i) {
      z[next] = acc / Rational(h(i, next));
      if (!is_integer(z[next])) return {std::nullopt, pivot_dual_row(hnf, next)};
      ++next;
    } else if (acc != 0) {
      // Row i is a rational combination of earlier pivot rows; its residual
      // cannot be absorbed by any lattice vector.
      std::vector<Rational> rhs(hnf.rank(), Rational(0));
      for (std::size_t c = 0; c < hnf.rank(); ++c) rhs[c] = Rational(h(i, c));
      auto x = solve_left_pivot_block(hnf, rhs);
      std::vector<Rational> c(h.rows(), Rational(0));
      c[i] = 1;
      for (std::size_t k = 0; k < hnf.rank(); ++k) c[hnf.pivot_rows[k]] -= x[k];
      Rational scale = 1 / (2 * acc);
      for (auto& v : c) v *= scale;
      return {std::nullopt, std::move(c)};
    }
  }
  std::vector<Integer> zi;
  zi.reserve(z.size());
  for (const auto& q : z) zi.push_back(q.get_num());
  return {combine_unimodular(hnf, zi), {}};
}

ApproxMembership approximate_membership(const HermiteForm& hnf, const std::vector<double>& target) {
  const Matrix<Integer>& h = hnf.hermite;
  if (target.size() != h.rows()) throw Error(ErrorKind::DimensionMismatch, "lattice target has wrong length");
  ApproxMembership out;
  out.coordinates.assign(hnf.rank(), 0.0);
  std::vector<Integer> rounded(hnf.rank(), Integer(0));
  std::size_t next = 0;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    long double acc = target[i];
    for (std::size_t c = 0; c < next; ++c) acc -= static_cast<long double>(h(i, c).get_d()) * out.coordinates[c];
    if (next < hnf.rank() && hnf.pivot_rows[next] == i) {
      double zc = static_cast<double>(acc / static_cast<long double>(h(i, next).get_d()));
      out.coordinates[next] = zc;
      double dist = distance_to_integer(zc);
      if (dist > out.worst_distance) {
        out.worst_distance = dist;
        out.worst_pivot = next;
      }
      rounded[next] = Integer(std::nearbyint(zc));
      ++next;
    } else {
      out.non_pivot_residual = std::max(out.non_pivot_residual, static_cast<double>(std::abs(acc)));
    }
  }
  out.combination = combine_unimodular(hnf, rounded);
  return out;
}

}  // namespace bohreq
