#include "bohreq/exponents.hpp"

#include <cmath>
#include <set>
#include <utility>

#include "bohreq/error.hpp"
#include "bohreq/lattice.hpp"

namespace bohreq {

namespace {

mpf_class parse_generator_value(const std::string& text, unsigned precision_bits) {
  if (text.find('/') != std::string::npos) {
    Rational q = parse_rational(text);
    mpf_class v(0, precision_bits);
    v = q;
    return v;
  }
  mpf_class v(0, precision_bits);
  if (text.empty() || v.set_str(text, 10) != 0)
    throw Error(ErrorKind::ParseError, "generator value is not a decimal number: '" + text + "'");
  return v;
}

}  // namespace

GroundGeneratorSet::GroundGeneratorSet(std::vector<Entry> entries, unsigned precision_bits)
    : entries_(std::move(entries)), precision_bits_(precision_bits) {
  if (entries_.empty()) throw Error(ErrorKind::InvalidArgument, "at least one ground generator is required");
  if (precision_bits_ < 16) throw Error(ErrorKind::InvalidArgument, "generator precision below 16 bits");
  std::set<std::string> seen;
  for (const auto& e : entries_) {
    if (e.symbol.empty()) throw Error(ErrorKind::InvalidArgument, "empty generator symbol");
    if (!seen.insert(e.symbol).second)
      throw Error(ErrorKind::InvalidArgument, "duplicate generator symbol '" + e.symbol + "'");
    mpf_class v = parse_generator_value(e.decimal, precision_bits_);
    if (v == 0) throw Error(ErrorKind::InvalidArgument, "generator '" + e.symbol + "' is zero");
    if (!std::isfinite(v.get_d()))
      throw Error(ErrorKind::InvalidArgument, "generator '" + e.symbol + "' is not finite");
    values_.push_back(std::move(v));
  }
}

bool GroundGeneratorSet::same_generators(const GroundGeneratorSet& other) const {
  if (entries_.size() != other.entries_.size()) return false;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].symbol != other.entries_[i].symbol) return false;
    if (entries_[i].decimal != other.entries_[i].decimal) return false;
  }
  return true;
}

Frequency::Frequency(GeneratorsPtr generators, std::vector<Rational> coords)
    : generators_(std::move(generators)), coords_(std::move(coords)) {
  if (!generators_) throw Error(ErrorKind::InvalidArgument, "frequency without generators");
  if (coords_.size() != generators_->size())
    throw Error(ErrorKind::DimensionMismatch, "frequency has " + std::to_string(coords_.size()) +
                                                  " coordinates for " + std::to_string(generators_->size()) +
                                                  " generators");
  for (auto& c : coords_) c.canonicalize();
  precise_ = mpf_class(0, generators_->precision_bits());
  for (std::size_t k = 0; k < coords_.size(); ++k) {
    if (coords_[k] == 0) continue;
    mpf_class term(0, generators_->precision_bits());
    term = coords_[k];
    term *= generators_->value(k);
    precise_ += term;
  }
  value_ = precise_.get_d();
}

bool Frequency::is_zero() const {
  for (const auto& c : coords_)
    if (c != 0) return false;
  return true;
}

bool operator==(const Frequency& a, const Frequency& b) {
  if (a.coords_ != b.coords_) return false;
  return a.generators_ == b.generators_ || a.generators_->same_generators(*b.generators_);
}

ExponentSet::ExponentSet(GeneratorsPtr generators, std::vector<Frequency> freqs)
    : generators_(std::move(generators)), freqs_(std::move(freqs)) {
  if (!generators_) throw Error(ErrorKind::InvalidArgument, "exponent set without generators");
  std::set<std::vector<Rational>> seen;
  for (std::size_t j = 0; j < freqs_.size(); ++j) {
    const auto& f = freqs_[j];
    if (f.generators() != generators_ && !f.generators()->same_generators(*generators_))
      throw Error(ErrorKind::InvalidArgument, "frequency " + std::to_string(j) + " uses different generators");
    if (!seen.insert(f.coords()).second)
      throw Error(ErrorKind::DuplicateFrequency, "frequency " + std::to_string(j) + " repeats an earlier one");
  }
}

bool operator==(const ExponentSet& a, const ExponentSet& b) {
  if (a.freqs_.size() != b.freqs_.size()) return false;
  if (a.generators_ != b.generators_ && !a.generators_->same_generators(*b.generators_)) return false;
  for (std::size_t j = 0; j < a.freqs_.size(); ++j)
    if (a.freqs_[j].coords() != b.freqs_[j].coords()) return false;
  return true;
}

std::vector<double> BasisData::basis_values() const {
  std::vector<double> out;
  out.reserve(basis.size());
  for (const auto& g : basis) out.push_back(g.value());
  return out;
}

std::optional<std::vector<Rational>> coordinates_in(const std::vector<Frequency>& basis, const Frequency& f) {
  const std::size_t q = f.coords().size();
  const std::size_t m = basis.size();
  Matrix<Rational> aug(q, m + 1);
  for (std::size_t k = 0; k < m; ++k) {
    if (basis[k].coords().size() != q) throw Error(ErrorKind::DimensionMismatch, "mixed generator counts");
    for (std::size_t i = 0; i < q; ++i) aug(i, k) = basis[k].coords()[i];
  }
  for (std::size_t i = 0; i < q; ++i) aug(i, m) = f.coords()[i];
  RowEchelon e = row_reduce(aug);
  if (!e.pivot_cols.empty() && e.pivot_cols.back() == m) return std::nullopt;
  if (e.rank() != m) throw Error(ErrorKind::NotABasis, "basis vectors are linearly dependent");
  std::vector<Rational> coords(m);
  for (std::size_t k = 0; k < m; ++k) coords[k] = e.reduced(k, m);
  return coords;
}

bool same_span(const std::vector<Frequency>& a, const std::vector<Frequency>& b) {
  auto independent_part = [](const std::vector<Frequency>& v) {
    std::vector<Frequency> basis;
    for (const auto& f : v) {
      if (f.is_zero()) continue;
      if (!coordinates_in(basis, f)) basis.push_back(f);
    }
    return basis;
  };
  auto ba = independent_part(a);
  auto bb = independent_part(b);
  for (const auto& f : b)
    if (!coordinates_in(ba, f)) return false;
  for (const auto& f : a)
    if (!coordinates_in(bb, f)) return false;
  return true;
}

BasisData natural_basis(const ExponentSet& exponents) {
  if (exponents.empty()) throw Error(ErrorKind::EmptyExponentSet, "natural basis of an empty exponent set");
  const std::size_t n = exponents.size();
  BasisData out;
  std::vector<std::vector<Rational>> rows(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Frequency& f = exponents[j];
    if (f.is_zero()) continue;
    if (auto coords = coordinates_in(out.basis, f)) {
      rows[j] = std::move(*coords);
    } else {
      out.basis_indices.push_back(j);
      out.basis.push_back(f);
      rows[j].assign(out.basis.size(), Rational(0));
      rows[j].back() = 1;
    }
  }
  const std::size_t m = out.basis.size();
  out.coord_matrix = Matrix<Rational>(n, m);
  out.row_denominators.assign(n, Integer(1));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < rows[j].size(); ++k) out.coord_matrix(j, k) = rows[j][k];
    out.row_denominators[j] = denominator_lcm(out.coord_matrix.row(j));
    if (out.row_denominators[j] != 1) out.integral = false;
  }
  return out;
}

Matrix<Rational> inverse(const Matrix<Rational>& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "inverse of a non-square matrix");
  RowEchelon e = row_reduce(m);
  if (e.rank() != m.rows()) throw Error(ErrorKind::NotABasis, "matrix is singular");
  return e.transform;
}

ChangeOfBasis change_of_basis(const BasisData& natural, std::vector<Frequency> other_basis) {
  const std::size_t m = natural.dimension();
  if (other_basis.size() != m)
    throw Error(ErrorKind::NotABasis, "candidate basis has " + std::to_string(other_basis.size()) +
                                          " elements, the space has dimension " + std::to_string(m));
  ChangeOfBasis out;
  out.t = Matrix<Rational>(m, m);
  for (std::size_t k = 0; k < m; ++k) {
    auto coords = coordinates_in(natural.basis, other_basis[k]);
    if (!coords) throw Error(ErrorKind::NotABasis, "candidate element " + std::to_string(k) + " lies outside the span");
    for (std::size_t i = 0; i < m; ++i) out.t(k, i) = (*coords)[i];
  }
  if (rank(out.t) != m) throw Error(ErrorKind::NotABasis, "candidate basis is linearly dependent");
  out.t_inverse = inverse(out.t);
  out.other_coords = natural.coord_matrix * out.t_inverse;
  out.other_basis = std::move(other_basis);
  return out;
}

}  // namespace bohreq
