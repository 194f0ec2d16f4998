#pragma once

#include "chamber/lattice.hpp"
#include "chamber/polyhedral.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace chamber::io {

using json = nlohmann::json;

inline constexpr const char *kSchemaVersion = "1";

/// JSON number when |x| < 2^53, decimal string otherwise.
json encode_integer(const Integer &x);
/// Accepts integral numbers and decimal strings. Throws ParseError.
Integer decode_integer(const json &j);

/// Integral values as integers, the rest as "p/q" strings.
json encode_rational(const Rational &x);

json encode_vector(const LatticeVector &v);
json encode_vector(const RationalVector &v);
/// Throws ParseError; `rank` is checked unless it is zero.
LatticeVector decode_vector(const json &j, std::size_t rank = 0);

json encode_matrix(const IntMatrix &m);
IntMatrix decode_matrix(const json &j);

/// FanDocument. Only maximal cones are written; decoding closes under faces.
json encode_fan(const Fan &f);
/// Throws ParseError for malformed documents and InvalidFan when the decoded
/// fan fails fan_validate.
Fan decode_fan(const json &j);

/// {"schema_version", "rank", "generators": [matrix, ...]}
json encode_group(const MatrixGroup &g);
MatrixGroup decode_group(const json &j);

/// {"schema_version", "rank", "generators": [vector, ...]}
struct GeneratorList {
  std::size_t rank = 0;
  std::vector<LatticeVector> generators;
};
GeneratorList decode_generators(const json &j);

/// Parses text as JSON. Throws ParseError.
json parse(std::string_view text);
/// Reads a file ("-" is stdin) and parses it. Throws ParseError.
json read_document(const std::string &path);

/// 64-bit FNV-1a, as 16 lowercase hex digits.
std::string fnv1a64(std::string_view bytes);

} // namespace chamber::io
