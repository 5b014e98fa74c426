// JSON documents for channel, state and ensemble specifications.
//
// Complex numbers are always [re, im] arrays; 2x2 matrices are row-major
// arrays of two rows of two complex numbers.
#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "roofkit/channels.hpp"

namespace roofkit::io {

using json = nlohmann::json;

/// Malformed document: missing fields, wrong types, unknown kinds.
class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

[[noreturn]] inline void fail(const std::string& field, const std::string& what) {
  throw parse_error("field '" + field + "': " + what);
}

inline const json& require(const json& doc, const std::string& key, const std::string& path) {
  if (!doc.is_object()) fail(path, "expected an object");
  auto it = doc.find(key);
  if (it == doc.end()) fail(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

inline double number(const json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number");
  return j.get<double>();
}

}  // namespace detail

inline json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline cplx complex_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2) detail::fail(field, "expected [re, im]");
  return {detail::number(j[0], field + "[0]"), detail::number(j[1], field + "[1]")};
}

inline json matrix_to_json(const Mat2& m) {
  return json::array({json::array({complex_to_json(m(0, 0)), complex_to_json(m(0, 1))}),
                      json::array({complex_to_json(m(1, 0)), complex_to_json(m(1, 1))})});
}

inline Mat2 matrix_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2) detail::fail(field, "expected a 2x2 array of [re, im] pairs");
  Mat2 m;
  for (int r = 0; r < 2; ++r) {
    const std::string row = field + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != 2) detail::fail(row, "expected two [re, im] entries");
    for (int c = 0; c < 2; ++c) m(r, c) = complex_from_json(j[r][c], row + "[" + std::to_string(c) + "]");
  }
  return m;
}

inline json channel_to_json(const ChannelSpec& spec) {
  return std::visit(
      [](const auto& s) -> json {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, kraus_channel>) {
          return {{"kind", "kraus"}, {"A", matrix_to_json(s.pair.A())}, {"B", matrix_to_json(s.pair.B())}};
        } else if constexpr (std::is_same_v<S, phase_damping>) {
          return {{"kind", "phase_damping"}, {"z", complex_to_json(s.z)}};
        } else if constexpr (std::is_same_v<S, amplitude_damping>) {
          return {{"kind", "amplitude_damping"}, {"p", s.p}};
        } else {
          return {{"kind", "canonical"},
                  {"a00", complex_to_json(s.a00)},
                  {"a11", complex_to_json(s.a11)},
                  {"b01", complex_to_json(s.b01)},
                  {"b10", complex_to_json(s.b10)}};
        }
      },
      spec);
}

/// Parses without range validation; call validate() for the channel invariants.
inline ChannelSpec channel_from_json(const json& doc) {
  const json& kind_j = detail::require(doc, "kind", "");
  if (!kind_j.is_string()) detail::fail("kind", "expected a string");
  const std::string kind = kind_j.get<std::string>();
  if (kind == "kraus") {
    const Mat2 a = matrix_from_json(detail::require(doc, "A", ""), "A");
    const Mat2 b = matrix_from_json(detail::require(doc, "B", ""), "B");
    return kraus_channel{KrausPair(a, b)};
  }
  if (kind == "phase_damping") return phase_damping{complex_from_json(detail::require(doc, "z", ""), "z")};
  if (kind == "amplitude_damping") return amplitude_damping{detail::number(detail::require(doc, "p", ""), "p")};
  if (kind == "canonical") {
    auto get = [&](const char* k) { return complex_from_json(detail::require(doc, k, ""), k); };
    return canonical_form{get("a00"), get("a11"), get("b01"), get("b10")};
  }
  detail::fail("kind", "unknown channel kind '" + kind + "'");
}

/// States are written in matrix form so they read back bit-exactly.
inline json state_to_json(const DensityOperator& rho) { return {{"matrix", matrix_to_json(rho.matrix())}}; }

inline DensityOperator state_from_json(const json& doc, const std::string& path = "") {
  if (!doc.is_object()) detail::fail(path.empty() ? "state" : path, "expected an object");
  const std::string prefix = path.empty() ? "" : path + ".";
  if (doc.contains("bloch")) {
    const json& b = doc["bloch"];
    if (!b.is_array() || b.size() != 3) detail::fail(prefix + "bloch", "expected [x1, x2, x3]");
    return density_from_bloch({detail::number(b[0], prefix + "bloch[0]"), detail::number(b[1], prefix + "bloch[1]"),
                               detail::number(b[2], prefix + "bloch[2]")});
  }
  if (doc.contains("matrix")) return DensityOperator::from_matrix(matrix_from_json(doc["matrix"], prefix + "matrix"));
  detail::fail(path.empty() ? "state" : path, "expected a 'bloch' or 'matrix' field");
}

inline json ensemble_to_json(const Ensemble& e) {
  json members = json::array();
  for (const auto& m : e.members()) members.push_back({{"weight", m.weight}, {"state", state_to_json(m.state)}});
  return {{"members", members}};
}

inline Ensemble ensemble_from_json(const json& doc) {
  const json& members = detail::require(doc, "members", "");
  if (!members.is_array()) detail::fail("members", "expected an array");
  std::vector<Ensemble::member> out;
  for (std::size_t i = 0; i < members.size(); ++i) {
    const std::string path = "members[" + std::to_string(i) + "]";
    const double w = detail::number(detail::require(members[i], "weight", path), path + ".weight");
    out.push_back({w, state_from_json(detail::require(members[i], "state", path), path + ".state")});
  }
  return Ensemble(std::move(out));
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw parse_error(path + ": " + e.what());
  }
}

inline void write_json_file(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << doc.dump(2) << '\n';
}

}  // namespace roofkit::io
