#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "bihom/algebra.hpp"

namespace bihom {

using json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

/// Input error with a location: a JSON pointer into the document, or a
/// line/column for syntax errors.
class document_error : public std::invalid_argument {
 public:
  document_error(std::string location, const std::string& message)
      : std::invalid_argument(location + ": " + message), location_(std::move(location)) {}
  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

/// A named entry of the maps section: a square matrix with a parity, or a
/// row (linear form, always even).
struct NamedMap {
  std::optional<GradedMap> map;
  std::optional<LinearForm> form;
};

struct AlgebraDocument {
  int format = kFormatVersion;
  SuperSpace space;
  std::optional<StructureTensor2> bracket2;
  std::optional<StructureTensor3> bracket3;
  std::map<std::string, StructureTensor3> tensors;
  std::map<std::string, NamedMap> maps;
  std::map<std::string, Scalar> scalars;
  bool multiplicative = false;
  json metadata = json::object();

  const GradedMap& map(const std::string& name) const {
    auto it = maps.find(name);
    if (it == maps.end() || !it->second.map)
      throw document_error("/maps/" + name, "no matrix named '" + name + "'");
    return *it->second.map;
  }
  const LinearForm& form(const std::string& name) const {
    auto it = maps.find(name);
    if (it == maps.end() || !it->second.form)
      throw document_error("/maps/" + name, "no row named '" + name + "'");
    return *it->second.form;
  }
  bool has_map(const std::string& name) const {
    auto it = maps.find(name);
    return it != maps.end() && it->second.map;
  }
  GradedMap map_or_identity(const std::string& name) const {
    return has_map(name) ? map(name) : GradedMap::identity(space);
  }

  BiHomLieSuperalgebra binary() const {
    if (!bracket2) throw document_error("/bracket2", "document has no binary bracket");
    return {*bracket2, map_or_identity("alpha"), map_or_identity("beta"), multiplicative};
  }
  ThreeBiHomLieSuperalgebra ternary() const {
    if (!bracket3) throw document_error("/bracket3", "document has no ternary bracket");
    return {*bracket3, map_or_identity("alpha"), map_or_identity("beta"), multiplicative};
  }
};

namespace detail {

inline const json& require(const json& node, const char* key, const std::string& path) {
  if (!node.is_object() || !node.contains(key))
    throw document_error(path, std::string("missing field '") + key + "'");
  return node.at(key);
}

inline Scalar read_scalar(const json& node, const std::string& path) {
  try {
    if (node.is_string()) return parse_scalar(node.get<std::string>());
    if (node.is_number_integer()) return Scalar(node.get<long>());
  } catch (const std::invalid_argument& e) {
    throw document_error(path, e.what());
  }
  throw document_error(path, "expected a rational string \"p/q\" or an integer");
}

inline std::size_t read_index(const json& node, std::size_t dim, const std::string& path) {
  if (!node.is_number_integer()) throw document_error(path, "expected an integer index");
  const long i = node.get<long>();
  if (i < 1 || static_cast<std::size_t>(i) > dim)
    throw document_error(path, "index " + std::to_string(i) + " outside 1.." + std::to_string(dim));
  return static_cast<std::size_t>(i - 1);
}

inline Parity read_parity(const json& node, const std::string& path) {
  if (!node.is_number_integer() || (node.get<int>() != 0 && node.get<int>() != 1))
    throw document_error(path, "parity must be 0 or 1");
  return parity_from_int(node.get<int>());
}

template <std::size_t Arity>
StructureTensor<Arity> read_tensor(const json& node, const SuperSpace& sp,
                                   const std::string& path) {
  if (!node.is_array()) throw document_error(path, "expected a list of entries");
  using Key = typename StructureTensor<Arity>::Key;
  std::map<Key, Scalar> entries;
  for (std::size_t n = 0; n < node.size(); ++n) {
    const std::string at = path + "/" + std::to_string(n);
    const json& e = node[n];
    if (!e.is_array() || e.size() != Arity + 2)
      throw document_error(at, "entry must have " + std::to_string(Arity + 1) +
                                   " indices and a coefficient");
    Key key{};
    for (std::size_t k = 0; k <= Arity; ++k)
      key[k] = read_index(e[k], sp.dim(), at + "/" + std::to_string(k));
    if (entries.count(key)) throw document_error(at, "duplicate entry");
    entries[key] = read_scalar(e[Arity + 1], at + "/" + std::to_string(Arity + 1));
    try {
      StructureTensor<Arity>(sp, {{key, entries[key]}});
    } catch (const std::invalid_argument& err) {
      throw document_error(at, err.what());
    }
  }
  return StructureTensor<Arity>(sp, entries);
}

inline Vector read_row(const json& node, std::size_t dim, const std::string& path) {
  if (!node.is_array() || node.size() != dim)
    throw document_error(path, "expected " + std::to_string(dim) + " entries");
  Vector v;
  for (std::size_t i = 0; i < dim; ++i) v.push_back(read_scalar(node[i], path + "/" + std::to_string(i)));
  return v;
}

inline NamedMap read_map(const json& node, const SuperSpace& sp, const std::string& path) {
  NamedMap out;
  try {
    if (node.contains("row")) {
      out.form = LinearForm(sp, read_row(node.at("row"), sp.dim(), path + "/row"));
      return out;
    }
    const json& rows = require(node, "matrix", path);
    const Parity p = node.contains("parity") ? read_parity(node.at("parity"), path + "/parity")
                                             : Parity::even;
    if (!rows.is_array() || rows.size() != sp.dim())
      throw document_error(path + "/matrix", "expected " + std::to_string(sp.dim()) + " rows");
    std::vector<Vector> rs;
    for (std::size_t r = 0; r < rows.size(); ++r)
      rs.push_back(read_row(rows[r], sp.dim(), path + "/matrix/" + std::to_string(r)));
    out.map = GradedMap(sp, Matrix::from_rows(rs), p);
  } catch (const document_error&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw document_error(path, e.what());
  }
  return out;
}

inline std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

template <std::size_t Arity>
json write_tensor(const StructureTensor<Arity>& t) {
  json out = json::array();
  for (const auto& [key, value] : t.entries()) {
    json e = json::array();
    for (std::size_t k : key) e.push_back(k + 1);
    e.push_back(to_string(value));
    out.push_back(std::move(e));
  }
  return out;
}

inline json write_row(const Vector& v) {
  json out = json::array();
  for (const auto& c : v) out.push_back(to_string(c));
  return out;
}

}  // namespace detail

inline AlgebraDocument document_from_json(const json& root) {
  using namespace detail;
  if (!root.is_object()) throw document_error("/", "document must be an object");
  const json& fmt = require(root, "format", "/");
  if (!fmt.is_number_integer() || fmt.get<int>() != kFormatVersion)
    throw document_error("/format", "unsupported format version");

  const json& sp = require(root, "space", "/");
  const json& dim = require(sp, "dim", "/space");
  if (!dim.is_number_integer() || dim.get<long>() < 1)
    throw document_error("/space/dim", "dimension must be a positive integer");
  const json& ps = require(sp, "parities", "/space");
  if (!ps.is_array() || ps.size() != dim.get<std::size_t>())
    throw document_error("/space/parities", "expected one parity per basis vector");
  std::vector<Parity> parities;
  for (std::size_t i = 0; i < ps.size(); ++i)
    parities.push_back(read_parity(ps[i], "/space/parities/" + std::to_string(i)));

  AlgebraDocument doc{kFormatVersion, SuperSpace(parities)};
  if (root.contains("bracket2"))
    doc.bracket2 = read_tensor<2>(root.at("bracket2"), doc.space, "/bracket2");
  if (root.contains("bracket3"))
    doc.bracket3 = read_tensor<3>(root.at("bracket3"), doc.space, "/bracket3");
  if (root.contains("tensors")) {
    const json& ts = root.at("tensors");
    if (!ts.is_object()) throw document_error("/tensors", "expected an object");
    for (const auto& [name, node] : ts.items())
      doc.tensors.emplace(name, read_tensor<3>(node, doc.space, "/tensors/" + name));
  }
  if (root.contains("maps")) {
    const json& ms = root.at("maps");
    if (!ms.is_object()) throw document_error("/maps", "expected an object");
    for (const auto& [name, node] : ms.items())
      doc.maps.emplace(name, read_map(node, doc.space, "/maps/" + name));
  }
  for (const char* name : {"alpha", "beta"}) {
    auto it = doc.maps.find(name);
    if (it != doc.maps.end() && (!it->second.map || it->second.map->parity() != Parity::even))
      throw document_error(std::string("/maps/") + name, "twisting map must be an even matrix");
  }
  if (root.contains("scalars")) {
    const json& ss = root.at("scalars");
    if (!ss.is_object()) throw document_error("/scalars", "expected an object");
    for (const auto& [name, node] : ss.items())
      doc.scalars.emplace(name, read_scalar(node, "/scalars/" + name));
  }
  if (root.contains("multiplicative")) {
    if (!root.at("multiplicative").is_boolean())
      throw document_error("/multiplicative", "expected true or false");
    doc.multiplicative = root.at("multiplicative").get<bool>();
  }
  if (root.contains("metadata")) doc.metadata = root.at("metadata");
  return doc;
}

/// Parses and validates a document. Syntax errors carry a line and column,
/// invariant violations a JSON pointer to the offending field.
inline AlgebraDocument parse_document(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw document_error(detail::line_column(text, e.byte == 0 ? 0 : e.byte - 1),
                         "syntax error");
  }
  return document_from_json(root);
}

inline json document_to_json(const AlgebraDocument& doc) {
  using namespace detail;
  json root = json::object();
  root["format"] = doc.format;
  json ps = json::array();
  for (Parity p : doc.space.parities()) ps.push_back(to_int(p));
  root["space"] = {{"dim", doc.space.dim()}, {"parities", ps}};
  if (doc.bracket2) root["bracket2"] = write_tensor(*doc.bracket2);
  if (doc.bracket3) root["bracket3"] = write_tensor(*doc.bracket3);
  if (!doc.tensors.empty()) {
    json ts = json::object();
    for (const auto& [name, t] : doc.tensors) ts[name] = write_tensor(t);
    root["tensors"] = ts;
  }
  if (!doc.maps.empty()) {
    json ms = json::object();
    for (const auto& [name, m] : doc.maps) {
      if (m.form) {
        ms[name] = {{"row", write_row(m.form->coefficients())}};
      } else {
        json rows = json::array();
        for (std::size_t r = 0; r < doc.space.dim(); ++r) rows.push_back(write_row(m.map->matrix().row(r)));
        ms[name] = {{"parity", to_int(m.map->parity())}, {"matrix", rows}};
      }
    }
    root["maps"] = ms;
  }
  if (!doc.scalars.empty()) {
    json ss = json::object();
    for (const auto& [name, c] : doc.scalars) ss[name] = to_string(c);
    root["scalars"] = ss;
  }
  if (doc.multiplicative) root["multiplicative"] = true;
  if (!doc.metadata.empty()) root["metadata"] = doc.metadata;
  return root;
}

namespace detail {

// Two-space indentation; arrays holding only scalars stay on one line.
inline void write_compact(const json& node, std::string& out, int indent) {
  const std::string pad(indent + 2, ' ');
  auto flat = [](const json& a) {
    for (const auto& x : a)
      if (x.is_structured()) return false;
    return true;
  };
  if (node.is_object() && !node.empty()) {
    out += "{\n";
    std::size_t n = 0;
    for (const auto& [key, value] : node.items()) {
      out += pad + json(key).dump() + ": ";
      write_compact(value, out, indent + 2);
      out += ++n < node.size() ? ",\n" : "\n";
    }
    out += std::string(indent, ' ') + "}";
  } else if (node.is_array() && !node.empty() && !flat(node)) {
    out += "[\n";
    for (std::size_t i = 0; i < node.size(); ++i) {
      out += pad;
      write_compact(node[i], out, indent + 2);
      out += i + 1 < node.size() ? ",\n" : "\n";
    }
    out += std::string(indent, ' ') + "]";
  } else if (node.is_array()) {
    out += "[";
    for (std::size_t i = 0; i < node.size(); ++i) out += (i ? ", " : "") + node[i].dump();
    out += "]";
  } else {
    out += node.dump();
  }
}

}  // namespace detail

/// Canonical text: sorted keys, sorted tensor entries, no zero constants,
/// reduced rationals, one tensor entry or matrix row per line, trailing newline.
inline std::string serialize_document(const AlgebraDocument& doc) {
  std::string out;
  detail::write_compact(document_to_json(doc), out, 0);
  return out + "\n";
}

inline std::string canonicalize(const std::string& text) {
  return serialize_document(parse_document(text));
}

/// A document holding a derived algebra, keeping the source's maps.
inline AlgebraDocument with_ternary(AlgebraDocument doc, const ThreeBiHomLieSuperalgebra& a) {
  doc.bracket2.reset();
  doc.bracket3 = a.bracket();
  doc.multiplicative = a.multiplicative();
  doc.maps["alpha"] = NamedMap{a.alpha(), std::nullopt};
  doc.maps["beta"] = NamedMap{a.beta(), std::nullopt};
  return doc;
}

}  // namespace bihom
