#include "nielsen/io.hpp"

#include <fstream>
#include <sstream>

#include "nielsen/errors.hpp"

namespace nielsen::io {
namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::int64_t integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

std::size_t index(const Json& j, const char* what) {
  const auto v = integer(j, what);
  if (v < 0) throw ParseError(std::string(what) + " must be nonnegative");
  return static_cast<std::size_t>(v);
}

const Json& array(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  return j;
}

Rational scalar(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw ParseError("coefficient must be an integer or a string such as \"1/2\"");
}

EdgePath edge_path(const Json& j, const char* what) {
  EdgePath p;
  for (const auto& l : array(j, what)) {
    const auto v = integer(l, what);
    if (v == 0) throw ParseError(std::string(what) + ": edge indices are signed and 1-based");
    p.push_back(static_cast<int>(v));
  }
  return p;
}

}  // namespace

Json parse_document(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("document must be a JSON object");
  if (!j.contains("schema") || j.at("schema") != schema_version)
    throw ParseError(std::string("expected \"schema\": \"") + schema_version + "\"");
  return j;
}

Json read_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_document(text.str());
}

Group parse_group(const Json& j) {
  if (!j.is_object()) throw ParseError("group must be an object");
  const Json& kind = field(j, "kind");
  if (!kind.is_string()) throw ParseError("group kind must be a string");
  const auto k = kind.get<std::string>();
  if (k == "trivial") return Group::trivial();
  if (k == "free") return Group::free(static_cast<int>(index(field(j, "rank"), "rank")));
  if (k == "free_abelian") return Group::free_abelian(static_cast<int>(index(field(j, "rank"), "rank")));
  if (k == "cyclic") return Group::cyclic(static_cast<int>(index(field(j, "order"), "order")));
  if (k == "symmetric") return Group::symmetric(static_cast<int>(index(field(j, "n"), "n")));
  if (k == "finite") {
    std::vector<std::string> names;
    for (const auto& n : array(field(j, "names"), "names")) {
      if (!n.is_string()) throw ParseError("element names must be strings");
      names.push_back(n.get<std::string>());
    }
    std::vector<std::vector<int>> table;
    for (const auto& row : array(field(j, "table"), "table")) {
      table.emplace_back();
      for (const auto& v : array(row, "table row")) table.back().push_back(static_cast<int>(integer(v, "table entry")));
    }
    return Group::finite(std::move(names), std::move(table));
  }
  throw ParseError("unknown group kind \"" + k + "\"");
}

GroupElement parse_element(const Json& j, const Group& g) {
  if (j.is_string() && j.get<std::string>() == "e") return g.identity();
  if (g.kind() == GroupKind::finite) {
    if (j.is_number_integer()) {
      const auto i = j.get<std::int64_t>();
      if (i < 0 || i >= g.order()) throw ParseError("element index " + std::to_string(i) + " out of range");
      return GroupElement(static_cast<int>(i));
    }
    if (j.is_string()) {
      const auto& names = g.element_names();
      auto it = std::find(names.begin(), names.end(), j.get<std::string>());
      if (it == names.end()) throw ParseError("unknown element \"" + j.get<std::string>() + "\"");
      return GroupElement(static_cast<int>(it - names.begin()));
    }
    throw ParseError("finite group elements are indices or names");
  }
  RawWord w;
  for (const auto& l : array(j, "element")) {
    const auto v = integer(l, "generator");
    if (v == 0 || std::abs(v) > g.rank()) throw ParseError("unknown generator " + std::to_string(v));
    w.push_back(static_cast<int>(v));
  }
  return g.normal_form(w);
}

GroupRing parse_ring(const Json& j) {
  if (j.is_string()) return GroupRing::plain(CoefficientRing::parse(j.get<std::string>()));
  if (!j.is_object()) throw ParseError("ring must be a string or an object");
  CoefficientRing k = CoefficientRing::integers();
  if (j.contains("coefficients")) {
    if (!j.at("coefficients").is_string()) throw ParseError("coefficients must be a string");
    k = CoefficientRing::parse(j.at("coefficients").get<std::string>());
  }
  return GroupRing(k, j.contains("group") ? parse_group(j.at("group")) : Group::trivial());
}

GroupRingElement parse_ring_element(const Json& j, const GroupRing& r) {
  if (j.is_number_integer() || j.is_string()) return GroupRingElement::scalar(r, scalar(j));
  GroupRingElement out(r);
  for (const auto& term : array(j, "ring element")) {
    if (!term.is_array() || term.size() != 2) throw ParseError("ring element terms are [coefficient, element] pairs");
    out.add_term(parse_element(term[1], r.group()), scalar(term[0]));
  }
  return out;
}

RingMatrix parse_entries(const Json& entries, const GroupRing& r, std::size_t rows, std::size_t cols) {
  if (array(entries, "entries").size() != rows) throw ParseError("entries need " + std::to_string(rows) + " rows");
  RingMatrix m(r, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (array(entries[i], "entry row").size() != cols)
      throw ParseError("entry row " + std::to_string(i) + " needs " + std::to_string(cols) + " columns");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = parse_ring_element(entries[i][k], r);
  }
  return m;
}

RingMatrix parse_matrix(const Json& j) {
  GroupRing r = parse_ring(field(j, "ring"));
  return parse_entries(field(j, "entries"), r, index(field(j, "rows"), "rows"), index(field(j, "cols"), "cols"));
}

GroupHomomorphism parse_endomorphism(const Json& j, const Group& g) {
  if (j.is_null() || (j.is_object() && !j.contains("images") && !j.contains("matrix")))
    return GroupHomomorphism::identity(g);
  if (j.contains("matrix")) {
    if (g.kind() != GroupKind::free_abelian) throw ParseError("matrix endomorphisms need a free abelian group");
    std::vector<std::vector<std::int64_t>> m;
    for (const auto& row : array(j.at("matrix"), "matrix")) {
      m.emplace_back();
      for (const auto& v : array(row, "matrix row")) m.back().push_back(integer(v, "matrix entry"));
    }
    if (m.size() != static_cast<std::size_t>(g.rank())) throw ParseError("matrix must be square of the group rank");
    for (const auto& row : m)
      if (row.size() != m.size()) throw ParseError("matrix must be square of the group rank");
    return GroupHomomorphism::from_matrix(g, m);
  }
  std::vector<GroupElement> images;
  for (const auto& e : array(j.at("images"), "images")) images.push_back(parse_element(e, g));
  const auto expected = static_cast<std::size_t>(g.kind() == GroupKind::finite ? g.order() : g.rank());
  if (images.size() != expected) throw ParseError("endomorphism needs " + std::to_string(expected) + " images");
  return GroupHomomorphism(g, g, images);
}

CWComplex2 parse_complex(const Json& j) {
  for (const char* higher : {"three_cells", "cells_3", "higher_cells"})
    if (j.contains(higher))
      throw ParseError("cells above dimension 2 are not accepted; supply a chain complex file instead");
  CWComplex2 x;
  x.vertices = array(field(j, "vertices"), "vertices").size();
  for (const auto& e : array(field(j, "edges"), "edges")) {
    if (!e.is_array() || e.size() != 2) throw ParseError("edges are [source, target] pairs");
    x.edges.emplace_back(index(e[0], "edge source"), index(e[1], "edge target"));
  }
  if (j.contains("two_cells"))
    for (const auto& c : array(j.at("two_cells"), "two_cells")) x.two_cells.push_back(edge_path(c, "2-cell"));
  x.base = j.contains("base") ? index(j.at("base"), "base") : 0;
  return x;
}

GroupTarget parse_target(const Json& j) {
  GroupTarget t{parse_group(field(j, "group")), {}};
  for (const auto& e : array(field(j, "edge_labels"), "edge_labels")) t.edge_labels.push_back(parse_element(e, t.group));
  return t;
}

CWSelfMap parse_self_map(const Json& j, const GroupRing& r) {
  CWSelfMap f;
  for (const auto& v : array(field(j, "vertex_images"), "vertex_images")) f.vertex_images.push_back(index(v, "vertex image"));
  for (const auto& p : array(field(j, "edge_images"), "edge_images")) f.edge_images.push_back(edge_path(p, "edge image"));
  if (j.contains("zeta") && !j.at("zeta").is_null()) f.zeta = edge_path(j.at("zeta"), "zeta");
  if (j.contains("two_cell_lifts") && !j.at("two_cell_lifts").is_null()) {
    const Json& rows = array(j.at("two_cell_lifts"), "two_cell_lifts");
    f.two_cell_lift = parse_entries(rows, r, rows.size(), rows.size());
  }
  return f;
}

TwistedChainComplex parse_chain_complex(const Json& j) {
  TwistedChainComplex c{parse_ring(field(j, "ring")), {}, {}};
  for (const auto& r : array(field(j, "ranks"), "ranks")) c.ranks.push_back(index(r, "rank"));
  const Json& bs = array(field(j, "boundaries"), "boundaries");
  if (c.ranks.empty() || bs.size() + 1 != c.ranks.size()) throw ParseError("need one boundary matrix per positive degree");
  for (std::size_t k = 1; k < c.ranks.size(); ++k)
    c.boundaries.push_back(parse_entries(bs[k - 1], c.ring, c.ranks[k], c.ranks[k - 1]));
  return c;
}

TwistedChainMap parse_chain_map(const Json& j, const TwistedChainComplex& c) {
  TwistedChainMap f{parse_endomorphism(j.contains("phi") ? j.at("phi") : Json(), c.ring.group()), {}};
  const Json& ms = array(field(j, "matrices"), "matrices");
  if (ms.size() != c.ranks.size()) throw ParseError("need one matrix per degree");
  for (std::size_t k = 0; k < c.ranks.size(); ++k) f.matrices.push_back(parse_entries(ms[k], c.ring, c.ranks[k], c.ranks[k]));
  return f;
}

GroupHomomorphism parse_quotient(const Json& j, const Group& source) {
  Group target = parse_group(field(j, "group"));
  std::vector<GroupElement> images;
  for (const auto& e : array(field(j, "images"), "images")) images.push_back(parse_element(e, target));
  const auto expected = static_cast<std::size_t>(source.kind() == GroupKind::finite ? source.order() : source.rank());
  if (images.size() != expected) throw ParseError("quotient needs " + std::to_string(expected) + " images");
  return GroupHomomorphism(source, target, images);
}

Json to_json(const Rational& r) {
  if (r.is_integer()) return r.num();
  return r.to_string();
}

Json to_json(const ShadowElement& s) {
  Json terms = Json::array();
  const Group& g = s.ring().group();
  for (const auto& [e, c] : s.terms()) terms.push_back({{"class", g.format(e)}, {"coefficient", to_json(c)}});
  return {{"formatted", s.format()}, {"reduced", s.reduced()}, {"terms", terms}};
}

Json to_json(const RingMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m(i, k).format());
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const EdgePath& p) {
  Json out = Json::array();
  for (int l : p) out.push_back(l);
  return out;
}

}  // namespace nielsen::io
