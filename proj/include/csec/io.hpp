#pragma once

// JSON algebra files: field "Q" or {"GF": p}, labels, and the nonzero
// brackets [e_i, e_j] (i < j) as maps from basis index to scalar strings.

#include "csec/lie_algebra.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <variant>

namespace csec {

using Json = nlohmann::ordered_json;

using AnyAlgebra = std::variant<LieAlgebra<Rational>, LieAlgebra<GF2>, LieAlgebra<GF3>, LieAlgebra<GF5>, LieAlgebra<GF7>>;

template <class S>
Json field_json() {
  if constexpr (field_traits<S>::characteristic == 0)
    return "Q";
  else
    return Json{{"GF", field_traits<S>::characteristic}};
}

template <class S>
Json to_json(const LieAlgebra<S>& L) {
  Json j;
  j["field"] = field_json<S>();
  j["dim"] = L.dim();
  j["basis"] = L.labels();
  Json brackets = Json::array();
  for (const auto& b : L.brackets()) {
    Json coeffs = Json::object();
    for (Index k = 0; k < L.dim(); ++k)
      if (!is_zero(b.value(k))) coeffs[std::to_string(k)] = field_traits<S>::format(b.value(k));
    brackets.push_back(Json{{"i", b.i}, {"j", b.j}, {"coeffs", std::move(coeffs)}});
  }
  j["brackets"] = std::move(brackets);
  if (!L.provenance().empty()) j["provenance"] = L.provenance();
  return j;
}

/// Canonical file text: two-space indented JSON and a trailing newline.
template <class S>
std::string to_file_text(const LieAlgebra<S>& L) {
  return to_json(L).dump(2) + "\n";
}

inline std::string any_to_file_text(const AnyAlgebra& a) {
  return std::visit([](const auto& L) { return to_file_text(L); }, a);
}

namespace detail {

inline const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("algebra file: missing field '") + key + "'");
  return j.at(key);
}

inline Index index_value(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw FormatError(std::string("algebra file: ") + what + " must be an integer");
  return j.get<Index>();
}

template <class S>
LieAlgebra<S> algebra_from_json(const Json& j) {
  const Index n = index_value(member(j, "dim"), "dim");
  if (n < 0) throw FormatError("algebra file: dim must be non-negative");
  const Json& basis = member(j, "basis");
  if (!basis.is_array() || static_cast<Index>(basis.size()) != n)
    throw FormatError("algebra file: basis must list dim labels");
  std::vector<std::string> labels;
  for (const auto& l : basis) {
    if (!l.is_string()) throw FormatError("algebra file: basis labels must be strings");
    labels.push_back(l.get<std::string>());
  }
  const Json& brackets = member(j, "brackets");
  if (!brackets.is_array()) throw FormatError("algebra file: brackets must be an array");
  std::vector<typename LieAlgebra<S>::Bracket> list;
  for (const auto& b : brackets) {
    const Index i = index_value(member(b, "i"), "i"), k = index_value(member(b, "j"), "j");
    if (i < 0 || k >= n || i >= k)
      throw FormatError("algebra file: bracket indices must satisfy 0 <= i < j < dim, got (" + std::to_string(i) +
                        ", " + std::to_string(k) + ")");
    const Json& coeffs = member(b, "coeffs");
    if (!coeffs.is_object()) throw FormatError("algebra file: coeffs must be an object");
    Vector<S> v = Vector<S>::Zero(n);
    for (const auto& [key, value] : coeffs.items()) {
      Index idx = -1;
      const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), idx);
      if (ec != std::errc() || ptr != key.data() + key.size() || idx < 0 || idx >= n || std::to_string(idx) != key)
        throw FormatError("algebra file: coefficient key '" + key + "' is not a basis index");
      if (!value.is_string()) throw FormatError("algebra file: scalars must be strings, got " + value.dump());
      v(idx) = field_traits<S>::parse(value.template get<std::string>());
    }
    list.push_back({i, k, std::move(v)});
  }
  std::string provenance;
  if (j.contains("provenance")) {
    if (!j.at("provenance").is_string()) throw FormatError("algebra file: provenance must be a string");
    provenance = j.at("provenance").get<std::string>();
  }
  try {
    return LieAlgebra<S>(std::move(labels), list, std::move(provenance));
  } catch (const DomainError& e) {
    throw FormatError(std::string("algebra file: ") + e.what());
  }
}

}  // namespace detail

/// Parses an algebra file; malformed input raises FormatError, fields other
/// than Q, GF(2), GF(3), GF(5), GF(7) raise CapabilityError.
inline AnyAlgebra algebra_from_json(const Json& j) {
  const Json& field = detail::member(j, "field");
  if (field.is_string()) {
    if (field.get<std::string>() != "Q") throw FormatError("algebra file: field must be \"Q\" or {\"GF\": p}");
    return detail::algebra_from_json<Rational>(j);
  }
  const Index p = detail::index_value(detail::member(field, "GF"), "GF");
  switch (p) {
    case 2: return detail::algebra_from_json<GF2>(j);
    case 3: return detail::algebra_from_json<GF3>(j);
    case 5: return detail::algebra_from_json<GF5>(j);
    case 7: return detail::algebra_from_json<GF7>(j);
  }
  if (!is_prime(p)) throw FormatError("algebra file: GF(" + std::to_string(p) + ") is not a prime field");
  throw CapabilityError("GF(" + std::to_string(p) + ") is not supported (primes 2, 3, 5, 7)");
}

inline AnyAlgebra algebra_from_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError(std::string("algebra file: invalid JSON: ") + e.what());
  }
  return algebra_from_json(j);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw std::runtime_error("cannot write '" + path + "'");
}

inline AnyAlgebra load_algebra(const std::string& path) { return algebra_from_text(read_file(path)); }

/// 64-bit FNV-1a, as 16 hex digits.
inline std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

/// Rows of coefficients in the algebra's basis, "a b c; d e f".
template <class S>
Subspace<S> parse_rows(std::string_view text, Index n) {
  std::vector<Vector<S>> rows;
  std::string_view rest = text;
  while (true) {
    const auto semi = rest.find(';');
    std::istringstream row{std::string(rest.substr(0, semi))};
    std::vector<S> entries;
    for (std::string tok; row >> tok;) entries.push_back(field_traits<S>::parse(tok));
    if (!entries.empty()) {
      if (static_cast<Index>(entries.size()) != n)
        throw DomainError("row '" + std::string(rest.substr(0, semi)) + "' needs " + std::to_string(n) + " entries");
      Vector<S> v(n);
      for (Index i = 0; i < n; ++i) v(i) = entries[static_cast<std::size_t>(i)];
      rows.push_back(std::move(v));
    }
    if (semi == std::string_view::npos) break;
    rest.remove_prefix(semi + 1);
  }
  return Subspace<S>::span(rows, n);
}

template <class S>
Json rows_json(const Subspace<S>& U) {
  Json rows = Json::array();
  for (Index r = 0; r < U.dim(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < U.ambient_dim(); ++c) row.push_back(field_traits<S>::format(U.basis()(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace csec
