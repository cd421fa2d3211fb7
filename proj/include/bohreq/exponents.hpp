#pragma once

// Frequencies as exact rational vectors over declared ground generators, and
// the basis computations built on them (natural basis, change of basis).

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "bohreq/matrix.hpp"
#include "bohreq/rational.hpp"

namespace bohreq {

inline constexpr unsigned kDefaultPrecisionBits = 64;

/// Real numbers declared Q-linearly independent by the user. Every frequency
/// is a rational vector over these, so Q-dependence among frequencies is
/// decided exactly. Independence itself is an assertion, not checked.
class GroundGeneratorSet {
 public:
  struct Entry {
    std::string symbol;
    std::string decimal;
  };

  explicit GroundGeneratorSet(std::vector<Entry> entries, unsigned precision_bits = kDefaultPrecisionBits);

  std::size_t size() const noexcept { return entries_.size(); }
  const std::vector<Entry>& entries() const noexcept { return entries_; }
  const std::string& symbol(std::size_t i) const { return entries_.at(i).symbol; }
  const mpf_class& value(std::size_t i) const { return values_.at(i); }
  unsigned precision_bits() const noexcept { return precision_bits_; }

  /// Same symbols and same decimal literals, in order. Precision is ignored.
  bool same_generators(const GroundGeneratorSet& other) const;

 private:
  std::vector<Entry> entries_;
  std::vector<mpf_class> values_;
  unsigned precision_bits_;
};

using GeneratorsPtr = std::shared_ptr<const GroundGeneratorSet>;

class Frequency {
 public:
  Frequency(GeneratorsPtr generators, std::vector<Rational> coords);

  const std::vector<Rational>& coords() const noexcept { return coords_; }
  const GeneratorsPtr& generators() const noexcept { return generators_; }
  bool is_zero() const;

  /// Dot product of the coordinates with the generator values, at the
  /// generators' working precision.
  const mpf_class& precise_value() const noexcept { return precise_; }
  double value() const noexcept { return value_; }

  friend bool operator==(const Frequency& a, const Frequency& b);

 private:
  GeneratorsPtr generators_;
  std::vector<Rational> coords_;
  mpf_class precise_;
  double value_ = 0.0;
};

/// Ordered set of pairwise distinct frequencies (distinctness is exact).
class ExponentSet {
 public:
  ExponentSet(GeneratorsPtr generators, std::vector<Frequency> freqs);

  std::size_t size() const noexcept { return freqs_.size(); }
  bool empty() const noexcept { return freqs_.empty(); }
  const Frequency& operator[](std::size_t j) const { return freqs_.at(j); }
  const std::vector<Frequency>& freqs() const noexcept { return freqs_; }
  const GeneratorsPtr& generators() const noexcept { return generators_; }

  auto begin() const { return freqs_.begin(); }
  auto end() const { return freqs_.end(); }

  friend bool operator==(const ExponentSet& a, const ExponentSet& b);

 private:
  GeneratorsPtr generators_;
  std::vector<Frequency> freqs_;
};

struct BasisData {
  /// Indices j (zero-based) whose frequency was selected into the basis.
  std::vector<std::size_t> basis_indices;
  /// Row j holds the coordinates r_j of frequency j over the selected basis.
  Matrix<Rational> coord_matrix;
  /// d_j = lcm of the denominators in row j.
  std::vector<Integer> row_denominators;
  bool integral = true;
  /// The selected frequencies, in basis order.
  std::vector<Frequency> basis;

  std::size_t dimension() const noexcept { return basis_indices.size(); }
  std::vector<double> basis_values() const;
};

/// Greedy left-to-right selection: frequency j joins the basis when it is
/// Q-independent of the ones already chosen. Zero frequencies are skipped and
/// get a zero row. Throws EmptyExponentSet.
BasisData natural_basis(const ExponentSet& exponents);

/// Coordinates of `f` over `basis`, or nullopt when f is outside their span.
/// The basis vectors must be linearly independent.
std::optional<std::vector<Rational>> coordinates_in(const std::vector<Frequency>& basis, const Frequency& f);

/// True when each list is exactly representable over the other.
bool same_span(const std::vector<Frequency>& a, const std::vector<Frequency>& b);

/// T has rows t_k with h_k = <t_k, g> (g the natural basis); the natural
/// coordinates factor as r_j = s_j * T.
struct ChangeOfBasis {
  std::vector<Frequency> other_basis;
  Matrix<Rational> t;
  Matrix<Rational> t_inverse;
  /// Row j holds s_j, the coordinates of frequency j over other_basis.
  Matrix<Rational> other_coords;
};

/// Throws NotABasis when `other_basis` is dependent or spans a different
/// space than the natural basis.
ChangeOfBasis change_of_basis(const BasisData& natural, std::vector<Frequency> other_basis);

Matrix<Rational> inverse(const Matrix<Rational>& m);

}  // namespace bohreq
