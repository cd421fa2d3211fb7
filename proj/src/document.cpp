#include "bohreq/document.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "bohreq/error.hpp"

namespace bohreq {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& pointer, const std::string& what) {
  throw Error(ErrorKind::ParseError, "at " + (pointer.empty() ? std::string("/") : pointer) + ": " + what);
}

const json& member(const json& obj, const std::string& pointer, const char* key) {
  if (!obj.is_object()) fail(pointer, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(pointer, std::string("missing \"") + key + "\"");
  return *it;
}

const json& array_member(const json& obj, const std::string& pointer, const char* key) {
  const json& v = member(obj, pointer, key);
  if (!v.is_array()) fail(pointer + "/" + key, "expected an array");
  return v;
}

std::string scalar_text(const json& v, const std::string& pointer) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return v.dump();
  fail(pointer, "expected a string or number");
}

Rational rational_at(const json& v, const std::string& pointer) {
  std::string text = scalar_text(v, pointer);
  try {
    return parse_rational(text);
  } catch (const Error& e) {
    fail(pointer, e.what());
  }
}

double real_at(const json& v, const std::string& pointer) {
  if (v.is_number()) return v.get<double>();
  if (!v.is_string()) fail(pointer, "expected a number");
  const std::string s = v.get<std::string>();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "+inf" || s == "inf") return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    fail(pointer, "not a number: \"" + s + "\"");
  }
  if (used != s.size() || !std::isfinite(x)) fail(pointer, "not a number: \"" + s + "\"");
  return x;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, "byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

std::vector<Frequency> frequencies_at(const json& list, const std::string& pointer, const GeneratorsPtr& gens) {
  std::vector<Frequency> out;
  for (std::size_t j = 0; j < list.size(); ++j) {
    const std::string p = pointer + "/" + std::to_string(j);
    const json& row = list[j];
    if (!row.is_array()) fail(p, "expected an array of rationals");
    if (row.size() != gens->size())
      fail(p, "expected " + std::to_string(gens->size()) + " coordinates, got " + std::to_string(row.size()));
    std::vector<Rational> coords;
    for (std::size_t k = 0; k < row.size(); ++k) coords.push_back(rational_at(row[k], p + "/" + std::to_string(k)));
    out.emplace_back(gens, std::move(coords));
  }
  return out;
}

json strip_bound(double v) {
  if (std::isinf(v)) return v < 0 ? "-inf" : "+inf";
  return v;
}

}  // namespace

ExponentialSum parse_sum_document(std::string_view text, unsigned precision_bits) {
  json doc = parse_json(text);
  if (!doc.is_object()) fail("", "expected an object");

  const json& gens_json = array_member(doc, "", "generators");
  std::vector<GroundGeneratorSet::Entry> entries;
  for (std::size_t i = 0; i < gens_json.size(); ++i) {
    const std::string p = "/generators/" + std::to_string(i);
    const json& symbol = member(gens_json[i], p, "symbol");
    if (!symbol.is_string()) fail(p + "/symbol", "expected a string");
    entries.push_back({symbol.get<std::string>(), scalar_text(member(gens_json[i], p, "value"), p + "/value")});
  }
  GeneratorsPtr gens;
  try {
    gens = std::make_shared<const GroundGeneratorSet>(std::move(entries), precision_bits);
  } catch (const Error& e) {
    throw Error(e.kind(), std::string("at /generators: ") + e.what());
  }

  auto freqs = frequencies_at(array_member(doc, "", "frequencies"), "/frequencies", gens);

  const json& coeffs_json = array_member(doc, "", "coefficients");
  std::vector<Coefficient> coeffs;
  for (std::size_t j = 0; j < coeffs_json.size(); ++j) {
    const std::string p = "/coefficients/" + std::to_string(j);
    const json& c = coeffs_json[j];
    if (!c.is_object()) fail(p, "expected an object");
    if (c.contains("modulus") || c.contains("phase_turns")) {
      Rational mod = rational_at(member(c, p, "modulus"), p + "/modulus");
      Rational phase = rational_at(member(c, p, "phase_turns"), p + "/phase_turns");
      if (mod < 0) fail(p + "/modulus", "modulus must be nonnegative");
      if (phase < 0 || phase >= 1) fail(p + "/phase_turns", "phase must lie in [0, 1)");
      coeffs.push_back(Coefficient::exact(mod, phase));
    } else {
      double re = real_at(member(c, p, "re"), p + "/re");
      double im = real_at(member(c, p, "im"), p + "/im");
      if (!std::isfinite(re) || !std::isfinite(im)) fail(p, "coefficient must be finite");
      coeffs.push_back(Coefficient::numeric(re, im));
    }
  }

  std::optional<Strip> strip;
  if (auto it = doc.find("strip"); it != doc.end() && !it->is_null()) {
    strip = Strip{real_at(member(*it, "/strip", "alpha"), "/strip/alpha"),
                  real_at(member(*it, "/strip", "beta"), "/strip/beta")};
  }

  try {
    ExponentSet set(gens, std::move(freqs));
    return ExponentialSum(std::move(set), std::move(coeffs), strip, ExponentialSum::ZeroPolicy::allow);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::DuplicateFrequency) throw Error(e.kind(), std::string("at /frequencies: ") + e.what());
    if (e.kind() == ErrorKind::MixedCoefficientModes || e.kind() == ErrorKind::DimensionMismatch)
      throw Error(e.kind(), std::string("at /coefficients: ") + e.what());
    throw;
  }
}

ExponentialSum load_sum_document(const std::string& path, unsigned precision_bits) {
  return parse_sum_document(read_text_file(path), precision_bits);
}

std::string serialize_sum_document(const ExponentialSum& f) {
  json doc;
  const auto& gens = *f.exponents().generators();
  doc["generators"] = json::array();
  for (const auto& e : gens.entries()) doc["generators"].push_back({{"symbol", e.symbol}, {"value", e.decimal}});
  doc["frequencies"] = json::array();
  for (const auto& fr : f.exponents()) {
    json row = json::array();
    for (const auto& q : fr.coords()) row.push_back(to_string(q));
    doc["frequencies"].push_back(std::move(row));
  }
  doc["coefficients"] = json::array();
  for (const auto& c : f.coefficients()) {
    if (c.is_exact())
      doc["coefficients"].push_back(
          {{"modulus", to_string(c.polar().modulus)}, {"phase_turns", to_string(c.polar().phase_turns)}});
    else
      doc["coefficients"].push_back({{"re", c.rect().re}, {"im", c.rect().im}});
  }
  if (f.strip()) doc["strip"] = {{"alpha", strip_bound(f.strip()->alpha)}, {"beta", strip_bound(f.strip()->beta)}};
  return doc.dump(2) + "\n";
}

std::vector<Frequency> parse_basis_document(std::string_view text, const GeneratorsPtr& generators) {
  json doc = parse_json(text);
  return frequencies_at(array_member(doc, "", "basis"), "/basis", generators);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace bohreq
