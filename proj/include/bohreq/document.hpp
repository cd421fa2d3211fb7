#pragma once

// JSON documents describing a sum:
//
//   {
//     "generators":   [{"symbol": "g1", "value": "1"}, {"symbol": "g2", "value": "1.41421356237309504880"}],
//     "frequencies":  [["1", "0"], ["0", "1"], ["1/2", "1"]],
//     "coefficients": [{"modulus": "1", "phase_turns": "1/4"}, {"re": 0.5, "im": -1.0}, ...],
//     "strip":        {"alpha": "-inf", "beta": "+inf"}
//   }
//
// Rationals are "p/q" strings (integers and decimal literals are accepted on
// input). Coefficients are either all exact-polar or all numeric.

#include <string>
#include <string_view>
#include <vector>

#include "bohreq/exponents.hpp"
#include "bohreq/sums.hpp"

namespace bohreq {

/// Throws ParseError with a byte offset or JSON pointer, or the construction
/// errors of ExponentialSum.
ExponentialSum parse_sum_document(std::string_view text, unsigned precision_bits = kDefaultPrecisionBits);

/// Reads the file; throws ParseError when it cannot be opened.
ExponentialSum load_sum_document(const std::string& path, unsigned precision_bits = kDefaultPrecisionBits);

std::string serialize_sum_document(const ExponentialSum& f);

/// {"basis": [["1", "1"], ["1", "-1"]]}: frequency list over `generators`.
std::vector<Frequency> parse_basis_document(std::string_view text, const GeneratorsPtr& generators);

std::string read_text_file(const std::string& path);

}  // namespace bohreq
