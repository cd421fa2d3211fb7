#pragma once

// Finite exponential sums  f(s) = sum_j a_j exp(lambda_j s).

#include <complex>
#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "bohreq/exponents.hpp"
#include "bohreq/rational.hpp"

namespace bohreq {

using ComplexPoint = std::complex<double>;

/// modulus * exp(2 pi i * phase_turns), both exact.
struct ExactPolar {
  Rational modulus;
  Rational phase_turns;
  friend bool operator==(const ExactPolar&, const ExactPolar&) = default;
};

struct NumericComplex {
  double re = 0.0;
  double im = 0.0;
  friend bool operator==(const NumericComplex&, const NumericComplex&) = default;
};

class Coefficient {
 public:
  /// Rejects negative moduli; reduces the phase into [0, 1) and zeroes it
  /// when the modulus is zero.
  static Coefficient exact(Rational modulus, Rational phase_turns);
  static Coefficient numeric(double re, double im);
  static Coefficient numeric(ComplexPoint z) { return numeric(z.real(), z.imag()); }

  bool is_exact() const noexcept { return std::holds_alternative<ExactPolar>(value_); }
  const ExactPolar& polar() const { return std::get<ExactPolar>(value_); }
  const NumericComplex& rect() const { return std::get<NumericComplex>(value_); }

  bool is_zero() const;
  ComplexPoint value() const;
  double modulus() const;
  /// Principal argument in turns, reduced into [0, 1).
  double phase_turns() const;

  friend bool operator==(const Coefficient&, const Coefficient&) = default;

 private:
  explicit Coefficient(std::variant<ExactPolar, NumericComplex> v) : value_(std::move(v)) {}
  std::variant<ExactPolar, NumericComplex> value_;
};

/// Open vertical strip alpha < Re s < beta.
struct Strip {
  double alpha = -std::numeric_limits<double>::infinity();
  double beta = std::numeric_limits<double>::infinity();

  bool contains(double sigma) const { return alpha < sigma && sigma < beta; }
  friend bool operator==(const Strip&, const Strip&) = default;
};

class ExponentialSum {
 public:
  enum class ZeroPolicy { reject, allow };

  /// Throws DimensionMismatch, MixedCoefficientModes, InvalidArgument (bad
  /// strip, or all coefficients zero under ZeroPolicy::reject).
  ExponentialSum(ExponentSet exponents, std::vector<Coefficient> coeffs, std::optional<Strip> strip = std::nullopt,
                 ZeroPolicy zeros = ZeroPolicy::reject);

  const ExponentSet& exponents() const noexcept { return exponents_; }
  const std::vector<Coefficient>& coefficients() const noexcept { return coeffs_; }
  const std::optional<Strip>& strip() const noexcept { return strip_; }
  const BasisData& basis() const noexcept { return *basis_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  bool is_exact() const noexcept { return exact_; }
  bool is_zero() const;

  std::vector<double> frequency_values() const;
  /// a_j * exp(lambda_j * sigma).
  std::vector<ComplexPoint> amplitudes(double sigma) const;
  /// sum_j |a_j| exp(lambda_j * sigma), an upper bound for |f(sigma + it)|.
  double modulus_bound(double sigma) const;

  /// Throws OutsideStrip.
  void require_in_strip(double sigma) const;

  friend bool operator==(const ExponentialSum& a, const ExponentialSum& b);

 private:
  ExponentSet exponents_;
  std::vector<Coefficient> coeffs_;
  std::optional<Strip> strip_;
  std::shared_ptr<const BasisData> basis_;
  bool exact_ = true;
};

ComplexPoint evaluate(const ExponentialSum& f, double sigma, double t);

/// f(sigma + i t_k) for every t_k.
std::vector<ComplexPoint> evaluate_line(const ExponentialSum& f, double sigma, std::span<const double> t);

/// Trapezoid approximation of the Bohr mean
///   (1/2T) * integral_{-T}^{T} f(sigma + it) exp(-i lambda t) dt * exp(-lambda sigma),
/// which tends to the coefficient of lambda (zero when lambda is not a
/// frequency of f) with error O(1 / (T * gap)).
/// Throws OutsideStrip, BadDiscretization (step >= 1 / max |lambda|),
/// InvalidArgument.
ComplexPoint recover_coefficient(const ExponentialSum& f, const Frequency& lambda, double sigma, double T,
                                 double step);

}  // namespace bohreq
