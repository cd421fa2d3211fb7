#include "bohreq/sums.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bohreq/error.hpp"
#include "bohreq/kernels/kernels.hpp"

namespace bohreq {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double reduce_turns(double x) {
  double r = x - std::floor(x);
  return r >= 1.0 ? 0.0 : r;
}
}  // namespace

Coefficient Coefficient::exact(Rational modulus, Rational phase_turns) {
  if (modulus < 0) throw Error(ErrorKind::InvalidArgument, "coefficient modulus must be nonnegative");
  Rational phase = modulus == 0 ? Rational(0) : frac(phase_turns);
  return Coefficient(ExactPolar{std::move(modulus), std::move(phase)});
}

Coefficient Coefficient::numeric(double re, double im) {
  if (!std::isfinite(re) || !std::isfinite(im)) throw Error(ErrorKind::InvalidArgument, "coefficient must be finite");
  return Coefficient(NumericComplex{re, im});
}

bool Coefficient::is_zero() const {
  if (is_exact()) return polar().modulus == 0;
  return rect().re == 0.0 && rect().im == 0.0;
}

ComplexPoint Coefficient::value() const {
  if (!is_exact()) return {rect().re, rect().im};
  const auto& p = polar();
  double angle = kTwoPi * p.phase_turns.get_d();
  double m = p.modulus.get_d();
  return {m * std::cos(angle), m * std::sin(angle)};
}

double Coefficient::modulus() const {
  if (is_exact()) return polar().modulus.get_d();
  return std::hypot(rect().re, rect().im);
}

double Coefficient::phase_turns() const {
  if (is_exact()) return polar().phase_turns.get_d();
  if (is_zero()) return 0.0;
  return reduce_turns(std::atan2(rect().im, rect().re) / kTwoPi);
}

ExponentialSum::ExponentialSum(ExponentSet exponents, std::vector<Coefficient> coeffs, std::optional<Strip> strip,
                               ZeroPolicy zeros)
    : exponents_(std::move(exponents)), coeffs_(std::move(coeffs)), strip_(strip) {
  if (coeffs_.size() != exponents_.size())
    throw Error(ErrorKind::DimensionMismatch, std::to_string(coeffs_.size()) + " coefficients for " +
                                                  std::to_string(exponents_.size()) + " frequencies");
  if (!coeffs_.empty()) {
    exact_ = coeffs_.front().is_exact();
    for (const auto& c : coeffs_)
      if (c.is_exact() != exact_)
        throw Error(ErrorKind::MixedCoefficientModes, "coefficients mix exact-polar and numeric entries");
  }
  if (strip_ && !(strip_->alpha < strip_->beta))
    throw Error(ErrorKind::InvalidArgument, "strip requires alpha < beta");
  if (zeros == ZeroPolicy::reject && is_zero())
    throw Error(ErrorKind::InvalidArgument, "every coefficient is zero; construct the zero sum explicitly");
  basis_ = std::make_shared<const BasisData>(natural_basis(exponents_));
}

bool ExponentialSum::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Coefficient& c) { return c.is_zero(); });
}

std::vector<double> ExponentialSum::frequency_values() const {
  std::vector<double> w;
  w.reserve(size());
  for (const auto& f : exponents_) w.push_back(f.value());
  return w;
}

std::vector<ComplexPoint> ExponentialSum::amplitudes(double sigma) const {
  std::vector<ComplexPoint> out;
  out.reserve(size());
  for (std::size_t j = 0; j < size(); ++j) out.push_back(coeffs_[j].value() * std::exp(exponents_[j].value() * sigma));
  return out;
}

double ExponentialSum::modulus_bound(double sigma) const {
  double total = 0.0;
  for (std::size_t j = 0; j < size(); ++j) total += coeffs_[j].modulus() * std::exp(exponents_[j].value() * sigma);
  return total;
}

void ExponentialSum::require_in_strip(double sigma) const {
  if (!std::isfinite(sigma)) throw Error(ErrorKind::InvalidArgument, "sigma must be finite");
  if (strip_ && !strip_->contains(sigma)) {
    std::ostringstream msg;
    msg << "sigma = " << sigma << " lies outside the strip (" << strip_->alpha << ", " << strip_->beta << ")";
    throw Error(ErrorKind::OutsideStrip, msg.str());
  }
}

bool operator==(const ExponentialSum& a, const ExponentialSum& b) {
  return a.exponents_ == b.exponents_ && a.coeffs_ == b.coeffs_ && a.strip_ == b.strip_;
}

namespace {

struct SplitAmplitudes {
  std::vector<double> re, im;
};

SplitAmplitudes split(const std::vector<ComplexPoint>& amps) {
  SplitAmplitudes s;
  for (auto z : amps) {
    s.re.push_back(z.real());
    s.im.push_back(z.imag());
  }
  return s;
}

}  // namespace

ComplexPoint evaluate(const ExponentialSum& f, double sigma, double t) {
  double tt[1] = {t};
  return evaluate_line(f, sigma, tt).front();
}

std::vector<ComplexPoint> evaluate_line(const ExponentialSum& f, double sigma, std::span<const double> t) {
  f.require_in_strip(sigma);
  SplitAmplitudes c = split(f.amplitudes(sigma));
  std::vector<double> w = f.frequency_values();
  std::vector<double> re(t.size()), im(t.size());
  kernels::line_sum(c.re.data(), c.im.data(), w.data(), w.size(), t.data(), t.size(), re.data(), im.data());
  std::vector<ComplexPoint> out(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) out[k] = {re[k], im[k]};
  return out;
}

ComplexPoint recover_coefficient(const ExponentialSum& f, const Frequency& lambda, double sigma, double T,
                                 double step) {
  f.require_in_strip(sigma);
  if (!(T > 0.0) || !(step > 0.0) || !std::isfinite(T))
    throw Error(ErrorKind::InvalidArgument, "T and step must be positive");
  if (lambda.generators()->size() != f.exponents().generators()->size() ||
      !lambda.generators()->same_generators(*f.exponents().generators()))
    throw Error(ErrorKind::InvalidArgument, "frequency is expressed over different generators");

  const double lam = lambda.value();
  double max_abs = std::abs(lam);
  for (const auto& fr : f.exponents()) max_abs = std::max(max_abs, std::abs(fr.value()));
  if (max_abs > 0.0 && step >= 1.0 / max_abs) {
    std::ostringstream msg;
    msg << "step " << step << " is not below 1/max|lambda| = " << 1.0 / max_abs;
    throw Error(ErrorKind::BadDiscretization, msg.str());
  }
  if (f.is_zero()) return {0.0, 0.0};

  SplitAmplitudes c = split(f.amplitudes(sigma));
  std::vector<double> w = f.frequency_values();
  for (auto& wj : w) wj -= lam;

  const auto intervals = static_cast<std::size_t>(std::ceil(2.0 * T / step - 1e-9));
  const double h = 2.0 * T / static_cast<double>(intervals);
  constexpr std::size_t kChunk = 1 << 16;
  std::vector<double> t(kChunk), re(kChunk), im(kChunk);
  long double acc_re = 0.0L, acc_im = 0.0L;
  for (std::size_t start = 0; start <= intervals; start += kChunk) {
    std::size_t n = std::min(kChunk, intervals + 1 - start);
    for (std::size_t i = 0; i < n; ++i) t[i] = -T + static_cast<double>(start + i) * h;
    kernels::line_sum(c.re.data(), c.im.data(), w.data(), w.size(), t.data(), n, re.data(), im.data());
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t k = start + i;
      long double weight = (k == 0 || k == intervals) ? 0.5L : 1.0L;
      acc_re += weight * re[i];
      acc_im += weight * im[i];
    }
  }
  ComplexPoint mean(static_cast<double>(acc_re * h / (2.0 * T)), static_cast<double>(acc_im * h / (2.0 * T)));
  return mean * std::exp(-lam * sigma);
}

}  // namespace bohreq
