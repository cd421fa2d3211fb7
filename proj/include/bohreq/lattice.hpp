#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "bohreq/matrix.hpp"
#include "bohreq/rational.hpp"

namespace bohreq {

/// Reduced row echelon form with the transform that produced it:
/// transform * input == reduced.
struct RowEchelon {
  Matrix<Rational> reduced;
  Matrix<Rational> transform;
  std::vector<std::size_t> pivot_cols;

  std::size_t rank() const { return pivot_cols.size(); }
};

RowEchelon row_reduce(const Matrix<Rational>& a);

std::size_t rank(const Matrix<Rational>& a);

/// Rows form a basis of {u : u^T a = 0}; every row is a primitive integer
/// vector with positive leading entry.
Matrix<Integer> integer_left_kernel(const Matrix<Rational>& a);

/// Column-style Hermite normal form: input * unimodular == hermite.
///
/// The first `rank` columns of `hermite` are in lower echelon form: column c
/// has its leading (pivot) entry at row pivot_rows[c], positive, with the
/// entries of that row to the left of the pivot reduced into [0, pivot).
/// Remaining columns are zero.
struct HermiteForm {
  Matrix<Integer> hermite;
  Matrix<Integer> unimodular;
  std::vector<std::size_t> pivot_rows;

  std::size_t rank() const { return pivot_rows.size(); }
};

HermiteForm column_hermite_form(const Matrix<Integer>& b);

/// Result of testing whether a target vector lies in the lattice spanned by
/// the columns of a matrix.
struct LatticeMembership {
  /// Integer combination of the columns hitting the target, when it exists.
  std::optional<std::vector<Integer>> combination;
  /// Otherwise a rational row vector c with c * B integral and c * target not
  /// an integer.
  std::vector<Rational> dual_witness;
};

/// Exact membership of `target` in the lattice generated by the columns of b.
LatticeMembership lattice_membership(const HermiteForm& hnf, const std::vector<Rational>& target);

/// Floating variant: the combination is the rounding of the real solution of
/// the pivot system; the caller decides whether its residual is acceptable.
/// `worst_pivot` reports the pivot index whose real coordinate sits farthest
/// from an integer (used to build a witness).
struct ApproxMembership {
  std::vector<Integer> combination;
  std::vector<double> coordinates;
  std::size_t worst_pivot = 0;
  double worst_distance = 0.0;
  double non_pivot_residual = 0.0;
};

ApproxMembership approximate_membership(const HermiteForm& hnf, const std::vector<double>& target);

/// Row vector c (indexed over the rows of the Hermite form) with
/// c * hermite == e_pivot; used to certify a non-integral coordinate.
std::vector<Rational> pivot_dual_row(const HermiteForm& hnf, std::size_t pivot);

}  // namespace bohreq
