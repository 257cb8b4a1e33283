#pragma once

// Coloring files and run records.
//
// Coloring file schema:
//   {"r": int, "n": int, "colorCount": int | null, "values": [int, ...]}
// with values indexed by colex rank of the r-subset.

#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ramsey/core.hpp"
#include "ramsey/random.hpp"
#include "ramsey/treemeasure.hpp"

#ifndef RAMSEY_VERSION
#define RAMSEY_VERSION "0.1.0"
#endif

namespace ramsey {

using json = nlohmann::json;

inline constexpr const char *library_version = RAMSEY_VERSION;

/// Malformed input files or schema violations.
class input_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline json to_json(const Coloring &f) {
  json j;
  j["r"] = f.arity();
  j["n"] = f.domain();
  j["colorCount"] = f.color_count() ? json(*f.color_count()) : json(nullptr);
  j["values"] = f.values();
  return j;
}

inline Coloring coloring_from_json(const json &j) {
  if (!j.is_object())
    throw input_error("coloring file must be a JSON object");
  for (const char *key : {"r", "n", "colorCount", "values"})
    if (!j.contains(key))
      throw input_error(std::string("coloring file is missing \"") + key + "\"");
  auto natural = [&](const char *key) -> std::uint64_t {
    const auto &v = j.at(key);
    if (!v.is_number_unsigned())
      throw input_error(std::string("\"") + key + "\" must be a non-negative integer");
    return v.get<std::uint64_t>();
  };
  const std::uint64_t r = natural("r");
  const std::uint64_t n = natural("n");
  if (r < 1 || r > 64)
    throw input_error("\"r\" must lie in [1, 64]");
  if (n > std::numeric_limits<Element>::max())
    throw input_error("\"n\" is too large");
  std::optional<Color> count;
  if (!j.at("colorCount").is_null())
    count = natural("colorCount");
  const auto &vals = j.at("values");
  if (!vals.is_array())
    throw input_error("\"values\" must be an array");
  std::uint64_t expected = 0;
  try {
    expected = binom(n, r);
  } catch (const std::overflow_error &) {
    throw input_error("binom(n, r) overflows");
  }
  if (vals.size() != expected)
    throw input_error("\"values\" has " + std::to_string(vals.size()) + " entries, expected binom(" +
                      std::to_string(n) + "," + std::to_string(r) + ") = " + std::to_string(expected));
  std::vector<Color> values;
  values.reserve(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (!vals[i].is_number_unsigned())
      throw input_error("values[" + std::to_string(i) + "] must be a non-negative integer");
    values.push_back(vals[i].get<Color>());
  }
  try {
    return Coloring(static_cast<unsigned>(r), static_cast<unsigned>(n), std::move(values), count);
  } catch (const std::invalid_argument &e) {
    throw input_error(e.what());
  }
}

inline Coloring load_coloring(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw input_error("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error &e) {
    throw input_error(path + ": " + e.what());
  }
  return coloring_from_json(j);
}

inline void save_coloring(const std::string &path, const Coloring &f) {
  std::ofstream out(path);
  if (!out)
    throw input_error("cannot write " + path);
  out << to_json(f).dump() << '\n';
}

inline json to_json(const Tuple &t) { return t.elements(); }
inline json to_json(const Palette &p) { return p.colors(); }

/// Integers that fit 64 bits as numbers, larger ones as decimal strings.
inline json to_json(const BigInt &x) {
  if (x >= 0 && x <= std::numeric_limits<std::uint64_t>::max())
    return json(static_cast<std::uint64_t>(x));
  return json(x.str());
}

inline json to_json(const Rational &q) {
  return json{{"exact", boost::multiprecision::numerator(q).str() + "/" +
                            boost::multiprecision::denominator(q).str()},
              {"approx", static_cast<double>(q)}};
}

/// One structured document per command run. Identical inputs and seed give a
/// byte-identical record; wall time is only included when asked for.
struct RunRecord {
  std::string command;
  json parameters = json::object();
  std::optional<std::uint64_t> seed;
  json result = json::object();
  std::optional<double> wall_time_ms;

  json to_json() const {
    json j;
    j["command"] = command;
    j["parameters"] = parameters;
    j["seed"] = seed ? json(*seed) : json(nullptr);
    j["result"] = result;
    j["library_version"] = library_version;
    j["generator"] = Rng::algorithm;
    if (wall_time_ms)
      j["wall_time_ms"] = *wall_time_ms;
    return j;
  }

  std::string dump() const { return to_json().dump(2) + "\n"; }
};

/// Appends rows to a CSV file, writing the header once for a new file.
inline void append_csv(const std::string &path, const std::vector<std::string> &header,
                       const std::vector<std::vector<std::string>> &rows) {
  bool fresh = true;
  {
    std::ifstream probe(path);
    fresh = !probe || probe.peek() == std::ifstream::traits_type::eof();
  }
  std::ofstream out(path, std::ios::app);
  if (!out)
    throw input_error("cannot write " + path);
  auto quote = [](const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
      return s;
    std::string q = "\"";
    for (char c : s)
      q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  };
  auto line = [&](const std::vector<std::string> &cells) {
    for (std::size_t i = 0; i < cells.size(); ++i)
      out << (i ? "," : "") << quote(cells[i]);
    out << '\n';
  };
  if (fresh)
    line(header);
  for (const auto &r : rows)
    line(r);
}

} // namespace ramsey
