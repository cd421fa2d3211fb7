#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bohreq/equivalence.hpp"
#include "bohreq/exponents.hpp"
#include "bohreq/lcg.hpp"
#include "bohreq/sums.hpp"

namespace fixtures {

using namespace bohreq;

inline const char* kSqrt2 = "1.4142135623730950488016887242096980785696718753769";
inline const char* kSqrt3 = "1.7320508075688772935274463415058723669428052538104";
inline const char* kSqrt5 = "2.2360679774997896964091989936540775119998893209741";

inline Rational q(const std::string& s) { return parse_rational(s); }

inline GeneratorsPtr generators(std::vector<GroundGeneratorSet::Entry> e, unsigned bits = kDefaultPrecisionBits) {
  return std::make_shared<const GroundGeneratorSet>(std::move(e), bits);
}

inline GeneratorsPtr one() { return generators({{"g1", "1"}}); }
inline GeneratorsPtr one_sqrt2() { return generators({{"g1", "1"}, {"g2", kSqrt2}}); }
inline GeneratorsPtr one_sqrt2_sqrt3() { return generators({{"g1", "1"}, {"g2", kSqrt2}, {"g3", kSqrt3}}); }

inline Frequency freq(const GeneratorsPtr& g, const std::vector<std::string>& coords) {
  std::vector<Rational> c;
  for (const auto& s : coords) c.push_back(q(s));
  return Frequency(g, std::move(c));
}

inline ExponentSet exps(const GeneratorsPtr& g, const std::vector<std::vector<std::string>>& rows) {
  std::vector<Frequency> f;
  for (const auto& r : rows) f.push_back(freq(g, r));
  return ExponentSet(g, std::move(f));
}

/// (modulus, phase_turns) pairs.
inline ExponentialSum polar_sum(const ExponentSet& e, const std::vector<std::pair<std::string, std::string>>& c,
                                std::optional<Strip> strip = std::nullopt) {
  std::vector<Coefficient> coeffs;
  for (const auto& [m, p] : c) coeffs.push_back(Coefficient::exact(q(m), q(p)));
  return ExponentialSum(e, std::move(coeffs), strip, ExponentialSum::ZeroPolicy::allow);
}

inline ExponentialSum numeric_sum(const ExponentSet& e, const std::vector<std::complex<double>>& c) {
  std::vector<Coefficient> coeffs;
  for (auto z : c) coeffs.push_back(Coefficient::numeric(z));
  return ExponentialSum(e, std::move(coeffs), std::nullopt, ExponentialSum::ZeroPolicy::allow);
}

/// Same coefficients as `f` converted to rectangular doubles.
inline ExponentialSum to_numeric(const ExponentialSum& f) {
  std::vector<Coefficient> coeffs;
  for (const auto& c : f.coefficients()) coeffs.push_back(Coefficient::numeric(c.value()));
  return ExponentialSum(f.exponents(), std::move(coeffs), f.strip(), ExponentialSum::ZeroPolicy::allow);
}

inline Rational random_rational(Lcg64& rng, int max_num, int max_den) {
  long num = static_cast<long>(rng.below(2 * max_num + 1)) - max_num;
  long den = static_cast<long>(rng.below(max_den)) + 1;
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational random_phase(Lcg64& rng, int max_den = 12) {
  long den = static_cast<long>(rng.below(max_den)) + 1;
  Rational r(static_cast<long>(rng.below(den)), den);
  r.canonicalize();
  return r;
}

/// Random exponent set: up to `max_terms` distinct nonzero frequencies over
/// 1..max_gens generators, small rational coordinates.
inline ExponentSet random_exponents(Lcg64& rng, std::size_t max_terms, std::size_t max_gens) {
  static const std::vector<GeneratorsPtr> pool = {one(), one_sqrt2(), one_sqrt2_sqrt3()};
  const std::size_t gens = 1 + rng.below(max_gens);
  GeneratorsPtr g = pool[gens - 1];
  const std::size_t n = 1 + rng.below(max_terms);
  std::vector<Frequency> freqs;
  while (freqs.size() < n) {
    std::vector<Rational> c(gens);
    bool nonzero = false;
    for (auto& x : c) {
      x = rng.below(3) == 0 ? Rational(0) : random_rational(rng, 3, 4);
      nonzero = nonzero || x != 0;
    }
    if (!nonzero) continue;
    Frequency f(g, std::move(c));
    bool dup = false;
    for (const auto& h : freqs) dup = dup || h == f;
    if (!dup) freqs.push_back(std::move(f));
  }
  return ExponentSet(g, std::move(freqs));
}

inline ExponentialSum random_polar_sum(Lcg64& rng, const ExponentSet& e, bool allow_zero_terms = true) {
  static const char* moduli[] = {"1", "2", "1/2", "3/2"};
  std::vector<Coefficient> c;
  for (std::size_t j = 0; j < e.size(); ++j) {
    if (allow_zero_terms && rng.below(6) == 0)
      c.push_back(Coefficient::exact(0, 0));
    else
      c.push_back(Coefficient::exact(q(moduli[rng.below(4)]), random_phase(rng)));
  }
  return ExponentialSum(e, std::move(c), std::nullopt, ExponentialSum::ZeroPolicy::allow);
}

inline std::vector<Rational> random_x(Lcg64& rng, std::size_t m, int den = 24) {
  std::vector<Rational> x(m);
  for (auto& v : x) v = random_phase(rng, den);
  return x;
}

inline std::vector<Integer> random_residues(Lcg64& rng, const BasisData& basis) {
  std::vector<Integer> shift(basis.dimension());
  for (auto& s : shift) s = Integer(static_cast<long>(rng.below(24)) - 12);
  return residues_from_shift(basis, shift);
}

/// Same zero pattern and moduli as f, with phases changed: half the time by
/// a class member, otherwise at random.
inline ExponentialSum random_partner(Lcg64& rng, const ExponentialSum& f) {
  if (rng.below(2) == 0) {
    auto x = random_x(rng, f.basis().dimension());
    auto k = random_residues(rng, f.basis());
    return generate_member(f, std::span<const Rational>(x), k);
  }
  std::vector<Coefficient> c;
  for (const auto& a : f.coefficients()) c.push_back(Coefficient::exact(a.polar().modulus, random_phase(rng)));
  return ExponentialSum(f.exponents(), std::move(c), std::nullopt, ExponentialSum::ZeroPolicy::allow);
}

}  // namespace fixtures
