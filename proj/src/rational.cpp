#include "bohreq/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>

#include "bohreq/error.hpp"

namespace bohreq {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::EmptyExponentSet: return "EmptyExponentSet";
    case ErrorKind::DuplicateFrequency: return "DuplicateFrequency";
    case ErrorKind::NotABasis: return "NotABasis";
    case ErrorKind::ToleranceInExactMode: return "ToleranceInExactMode";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::OutsideStrip: return "OutsideStrip";
    case ErrorKind::BadDiscretization: return "BadDiscretization";
    case ErrorKind::ExponentSetMismatch: return "ExponentSetMismatch";
    case ErrorKind::MixedCoefficientModes: return "MixedCoefficientModes";
    case ErrorKind::ResidueOutOfRange: return "ResidueOutOfRange";
    case ErrorKind::InconsistentResidues: return "InconsistentResidues";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::EmptyCloud: return "EmptyCloud";
    case ErrorKind::NoCertificate: return "NoCertificate";
    case ErrorKind::NotEquivalent: return "NotEquivalent";
    case ErrorKind::OracleDisagreement: return "OracleDisagreement";
  }
  return "Unknown";
}

namespace {

[[noreturn]] void bad_literal(std::string_view text) {
  throw Error(ErrorKind::ParseError, "not a rational literal: '" + std::string(text) + "'");
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  std::string_view digits = s;
  bool negative = false;
  if (!digits.empty() && (digits.front() == '+' || digits.front() == '-')) {
    negative = digits.front() == '-';
    digits.remove_prefix(1);
  }
  if (!all_digits(digits)) bad_literal(whole);
  Integer z(std::string(digits), 10);
  return negative ? Integer(-z) : z;
}

Integer pow10(unsigned long e) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, e);
  return p;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) bad_literal(text);

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash), text);
    std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) bad_literal(text);
    Integer den(std::string(den_text), 10);
    if (den == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  std::string_view mantissa = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    Integer ez = parse_integer(text.substr(e + 1), text);
    if (!ez.fits_slong_p() || std::abs(ez.get_si()) > 4096) bad_literal(text);
    exponent = ez.get_si();
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa.front() == '+' || mantissa.front() == '-')) {
    negative = mantissa.front() == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  long scale = 0;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    std::string_view ip = mantissa.substr(0, dot);
    std::string_view fp = mantissa.substr(dot + 1);
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
      bad_literal(text);
    digits = std::string(ip) + std::string(fp);
    scale = static_cast<long>(fp.size());
  } else {
    if (!all_digits(mantissa)) bad_literal(text);
    digits = std::string(mantissa);
  }
  Integer num(digits, 10);
  if (negative) num = -num;
  long shift = exponent - scale;
  Rational q;
  if (shift >= 0) {
    q = Rational(num * pow10(static_cast<unsigned long>(shift)));
  } else {
    q = Rational(num, pow10(static_cast<unsigned long>(-shift)));
    q.canonicalize();
  }
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rational frac(const Rational& q) {
  Rational f = q - Rational(floor(q));
  f.canonicalize();
  return f;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer denominator_lcm(std::span<const Rational> values) {
  Integer d = 1;
  for (const auto& v : values) d = lcm(d, v.get_den());
  return d;
}

Rational rational_gcd(std::span<const Rational> values) {
  Integer d = denominator_lcm(values);
  Integer g = 0;
  for (const auto& v : values) {
    Integer scaled = v.get_num() * (d / v.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), scaled.get_mpz_t());
  }
  Rational r(g, d);
  r.canonicalize();
  return r;
}

std::vector<Integer> primitive_integer_vector(std::span<const Rational> v) {
  Integer d = denominator_lcm(v);
  std::vector<Integer> out;
  out.reserve(v.size());
  Integer g = 0;
  for (const auto& q : v) {
    out.push_back(q.get_num() * (d / q.get_den()));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
  }
  if (g == 0) return out;
  int sign = 0;
  for (const auto& z : out) {
    if (z != 0) {
      sign = z > 0 ? 1 : -1;
      break;
    }
  }
  for (auto& z : out) z = z / g * sign;
  return out;
}

std::int64_t to_int64(const Integer& z) {
  if (!z.fits_slong_p()) throw Error(ErrorKind::InvalidArgument, "integer does not fit in 64 bits: " + z.get_str());
  return static_cast<std::int64_t>(z.get_si());
}

double distance_to_integer(double x) { return std::abs(x - std::nearbyint(x)); }

}  // namespace bohreq
