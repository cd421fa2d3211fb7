#pragma once

// The *-equivalence decision on sums sharing one exponent set, an
// independent prefix-by-prefix oracle, and generation of class members.
//
// Two sums f1 = sum a_j e^{lambda_j s}, f2 = sum b_j e^{lambda_j s} are
// equivalent when a_j and b_j vanish together, |a_j| = |b_j|, and one real
// vector y (in turns, over the natural basis) satisfies
//     phase(b_j) - phase(a_j) == <r_j, y>   (mod 1)
// for every active row j. Certificates split y into x0 = frac(y) and the
// integer shift n = floor(y); the shift is reported per row as a residue
// k_j = d_j <r_j, n> mod d_j, so the row congruence reads
//     phase(b_j) - phase(a_j) == <r_j, x0> + k_j / d_j   (mod 1).

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bohreq/congruence.hpp"
#include "bohreq/sums.hpp"

namespace bohreq {

struct EquivCertificate {
  /// Present in exact mode.
  std::vector<Rational> x0_exact;
  /// x0 in turns, each entry in [0, 1).
  std::vector<double> x0;
  /// floor(y); residues are derived from it.
  std::vector<Integer> shift;
  /// One per frequency, 0 <= k_j < d_j.
  std::vector<Integer> residues;
};

struct EquivVerdict {
  bool equivalent = false;
  bool exact = true;
  std::optional<EquivCertificate> certificate;
  /// Integer row u over all frequencies (zero on inactive rows) with
  /// u R == 0 and u . theta not an integer. Only for phase failures.
  std::optional<std::vector<Integer>> witness;
  /// Phase differences theta_j in turns (zero on inactive rows).
  std::vector<double> theta;
  std::string reason;
};

/// Throws ExponentSetMismatch, MixedCoefficientModes, InvalidArgument.
/// In exact mode (both sums exact-polar) tol is ignored; otherwise it is the
/// relative modulus tolerance and the absolute congruence tolerance.
EquivVerdict decide_equiv(const ExponentialSum& f1, const ExponentialSum& f2,
                          double tol = kDefaultNumericTolerance);

/// Oracle: every prefix system n = 1..N with unit moduli must be feasible.
EquivVerdict decide_equiv_prop1_all_n(const ExponentialSum& f1, const ExponentialSum& f2,
                                      double tol = kDefaultNumericTolerance);

/// Re-checks a verdict by substitution: the certificate congruences (and
/// consistency of residues with the shift), or the witness.
bool verify_verdict(const ExponentialSum& f1, const ExponentialSum& f2, const EquivVerdict& verdict,
                    double tol = kDefaultNumericTolerance);

/// Residues k_j = d_j <r_j, shift> mod d_j.
std::vector<Integer> residues_from_shift(const BasisData& basis, std::span<const Integer> shift);

/// True when some integer shift produces exactly these residues.
bool residues_realizable(const BasisData& basis, std::span<const Integer> residues);

/// All residue tuples reachable by integer shifts of the rows of `coords`
/// (entries are phase offsets in turns, k_j / d_j). Throws BudgetExceeded
/// when more than `limit` tuples exist.
std::vector<std::vector<Rational>> reachable_offsets(const Matrix<Rational>& coords, std::size_t limit);

/// b_j = a_j exp(2 pi i (<r_j, x> + residues_j / d_j)), exact arithmetic.
/// Throws DimensionMismatch, ResidueOutOfRange, InconsistentResidues,
/// MixedCoefficientModes (numeric f).
ExponentialSum generate_member(const ExponentialSum& f, std::span<const Rational> x_turns,
                               std::span<const Integer> residues);

/// Floating x; exact-polar input yields a numeric sum.
ExponentialSum generate_member(const ExponentialSum& f, std::span<const double> x_turns,
                               std::span<const Integer> residues);

}  // namespace bohreq
