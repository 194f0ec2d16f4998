#include "chamber/io.hpp"

#include "chamber/errors.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace chamber::io {

namespace {

const Integer kSafeBound = Integer(1) << 53;

const json &field(const json &j, const char *name) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  auto it = j.find(name);
  if (it == j.end()) throw ParseError(std::string("missing field \"") + name + "\"");
  return *it;
}

void check_schema(const json &j) {
  const json &v = field(j, "schema_version");
  if (!v.is_string() || v.get<std::string>() != kSchemaVersion)
    throw ParseError("unsupported schema_version");
}

std::size_t decode_size(const json &j, const char *what) {
  if (!j.is_number_unsigned()) throw ParseError(std::string(what) + " must be a nonnegative integer");
  return j.get<std::size_t>();
}

} // namespace

json encode_integer(const Integer &x) {
  if (abs(x) < kSafeBound) return json(x.get_si());
  return json(x.get_str());
}

Integer decode_integer(const json &j) {
  if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
  if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    const std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos)
      throw ParseError("not an integer: \"" + s + "\"");
    return Integer(s[0] == '+' ? s.substr(1) : s);
  }
  throw ParseError("expected an integer, got " + j.dump());
}

json encode_rational(const Rational &x) {
  Rational c = x;
  c.canonicalize();
  if (c.get_den() == 1) return encode_integer(c.get_num());
  return json(c.get_str());
}

json encode_vector(const LatticeVector &v) {
  json out = json::array();
  for (const auto &c : v.coords()) out.push_back(encode_integer(c));
  return out;
}

json encode_vector(const RationalVector &v) {
  json out = json::array();
  for (const auto &c : v.coords()) out.push_back(encode_rational(c));
  return out;
}

LatticeVector decode_vector(const json &j, std::size_t rank) {
  if (!j.is_array()) throw ParseError("expected an integer array");
  if (rank != 0 && j.size() != rank) throw ParseError("vector of wrong length " + j.dump());
  std::vector<Integer> coords;
  for (const auto &x : j) coords.push_back(decode_integer(x));
  return LatticeVector(std::move(coords));
}

json encode_matrix(const IntMatrix &m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(encode_vector(m.row(r)));
  return out;
}

IntMatrix decode_matrix(const json &j) {
  if (!j.is_array() || j.empty()) throw ParseError("expected a nonempty array of rows");
  std::vector<LatticeVector> rows;
  const std::size_t cols = j.front().is_array() ? j.front().size() : 0;
  for (const auto &r : j) rows.push_back(decode_vector(r, cols));
  if (cols == 0) throw ParseError("matrix rows must be nonempty arrays");
  return IntMatrix::from_rows(rows, cols);
}

json encode_fan(const Fan &f) {
  json rays = json::array();
  for (const auto &r : f.rays()) rays.push_back(encode_vector(r));
  json cones = json::array();
  for (auto m : f.maximal_cones()) cones.push_back(f.cones()[m]);
  return {{"schema_version", kSchemaVersion},
          {"rank", f.rank()},
          {"rays", std::move(rays)},
          {"cones", std::move(cones)}};
}

Fan decode_fan(const json &j) {
  check_schema(j);
  const std::size_t rank = decode_size(field(j, "rank"), "rank");
  const json &jr = field(j, "rays");
  const json &jc = field(j, "cones");
  if (!jr.is_array() || !jc.is_array()) throw ParseError("rays and cones must be arrays");
  std::vector<LatticeVector> rays;
  for (const auto &r : jr) rays.push_back(decode_vector(r, rank));
  std::vector<RayIndexSet> cones;
  for (const auto &c : jc) {
    if (!c.is_array()) throw ParseError("each cone must be an array of ray indices");
    RayIndexSet s;
    for (const auto &i : c) {
      const std::size_t k = decode_size(i, "ray index");
      if (k >= rays.size()) throw ParseError("ray index " + std::to_string(k) + " out of range");
      s.push_back(k);
    }
    cones.push_back(std::move(s));
  }
  Fan f;
  try {
    f = Fan::generated_by(rank, std::move(rays), cones);
  } catch (const Error &e) {
    throw InvalidFan(e.kind() + ": " + e.what());
  }
  const auto report = fan_validate(f);
  if (!report.valid()) throw InvalidFan(report.violations.front());
  return f;
}

json encode_group(const MatrixGroup &g) {
  json gens = json::array();
  for (const auto &m : g.generators()) gens.push_back(encode_matrix(m));
  return {{"schema_version", kSchemaVersion}, {"rank", g.rank()}, {"generators", std::move(gens)}};
}

MatrixGroup decode_group(const json &j) {
  check_schema(j);
  const std::size_t rank = decode_size(field(j, "rank"), "rank");
  const json &jg = field(j, "generators");
  if (!jg.is_array()) throw ParseError("generators must be an array");
  std::vector<IntMatrix> gens;
  for (const auto &m : jg) {
    IntMatrix a = decode_matrix(m);
    if (a.rows() != rank || a.cols() != rank) throw ParseError("group generator of wrong size");
    if (!is_unimodular(a)) throw ParseError("group generator is not unimodular");
    gens.push_back(std::move(a));
  }
  return MatrixGroup(rank, std::move(gens));
}

GeneratorList decode_generators(const json &j) {
  check_schema(j);
  GeneratorList out;
  out.rank = decode_size(field(j, "rank"), "rank");
  if (out.rank == 0) throw ParseError("rank must be positive");
  const json &jg = field(j, "generators");
  if (!jg.is_array()) throw ParseError("generators must be an array");
  for (const auto &g : jg) out.generators.push_back(decode_vector(g, out.rank));
  return out;
}

json parse(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception &e) {
    throw ParseError(e.what());
  }
}

json read_document(const std::string &path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  return parse(text);
}

std::string fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char out[17];
  std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
  return out;
}

} // namespace chamber::io
