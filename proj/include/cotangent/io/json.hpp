#pragma once

// JSON descriptors for every context. Integers that do not fit in 64 bits
// are written as decimal strings; both forms are accepted on input.

#include <json.hpp>

#include <string>
#include <variant>
#include <vector>

#include "cotangent/algebra.hpp"
#include "cotangent/module.hpp"
#include "cotangent/monoid_context.hpp"
#include "cotangent/set_context.hpp"

namespace cotangent::io {

using Json = nlohmann::json;

namespace detail {

[[noreturn]] inline void bad(const std::string& what) { throw InvalidObject("json: " + what); }

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

inline std::size_t index(const Json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    bad(std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

inline std::vector<std::string> strings(const Json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& s : j) {
    if (!s.is_string()) bad(std::string(what) + " must be an array of strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

/// A label, or an index into `labels`.
inline std::size_t element(const Json& j, const std::vector<std::string>& labels) {
  if (j.is_string()) {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == j.get<std::string>()) return i;
    bad("unknown element \"" + j.get<std::string>() + "\"");
  }
  std::size_t i = index(j, "element");
  if (i >= labels.size()) bad("element index out of range");
  return i;
}

}  // namespace detail

inline Json integer_to_json(const Integer& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

inline Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(static_cast<long>(j.get<long long>()));
  if (j.is_string()) {
    try {
      return Integer(j.get<std::string>());
    } catch (const std::invalid_argument&) {
    }
  }
  detail::bad("expected an integer");
}

/// Row-major list of rows.
inline Json matrix_to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(integer_to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

/// Rows of a matrix whose shape is known (an empty list cannot carry its width).
inline IntMatrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows) detail::bad("matrix must have " + std::to_string(rows) + " rows");
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      detail::bad("matrix row must have " + std::to_string(cols) + " entries");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = integer_from_json(j[i][k]);
  }
  return m;
}

// ---- abelian groups ----

/// {"ngens": n, "relations": [[...], ...]}, one list of n coefficients per relator.
inline Json group_to_json(const FGAbGroup& g) {
  Json rels = Json::array();
  for (std::size_t k = 0; k < g.relations().cols(); ++k) {
    Json col = Json::array();
    for (const auto& v : g.relations().column(k)) col.push_back(integer_to_json(v));
    rels.push_back(col);
  }
  return {{"ngens", g.ngens()}, {"relations", rels}};
}

inline FGAbGroup group_from_json(const Json& j) {
  std::size_t n = detail::index(detail::field(j, "ngens"), "ngens");
  Json rels = j.contains("relations") ? j.at("relations") : Json::array();
  if (!rels.is_array()) detail::bad("relations must be an array");
  IntMatrix m(n, rels.size());
  for (std::size_t k = 0; k < rels.size(); ++k) {
    if (!rels[k].is_array() || rels[k].size() != n)
      detail::bad("every relator needs " + std::to_string(n) + " coefficients");
    for (std::size_t i = 0; i < n; ++i) m(i, k) = integer_from_json(rels[k][i]);
  }
  return FGAbGroup(n, m);
}

/// {"source": group, "target": group, "matrix": rows}
inline Json hom_to_json(const AbHom& h) {
  return {{"source", group_to_json(h.source())}, {"target", group_to_json(h.target())},
          {"matrix", matrix_to_json(h.matrix())}};
}

inline AbHom hom_from_json(const Json& j) {
  FGAbGroup s = group_from_json(detail::field(j, "source"));
  FGAbGroup t = group_from_json(detail::field(j, "target"));
  return AbHom(s, t, matrix_from_json(detail::field(j, "matrix"), t.ngens(), s.ngens()));
}

// ---- sets ----

inline Json set_to_json(const sets::FinSet& x) { return {{"set", x.labels()}}; }

/// {"set": [...]} or a bare array of labels.
inline sets::FinSet set_from_json(const Json& j) {
  if (j.is_array()) return sets::FinSet(detail::strings(j, "set"));
  return sets::FinSet(detail::strings(detail::field(j, "set"), "set"));
}

/// {"map": {"source": [...], "target": [...], "images": [...]}}, images by label.
inline Json map_to_json(const sets::SetMap& f) {
  Json im = Json::array();
  for (auto i : f.images()) im.push_back(f.target().label(i));
  return {{"map", {{"source", f.source().labels()}, {"target", f.target().labels()}, {"images", im}}}};
}

inline sets::SetMap map_from_json(const Json& j) {
  const Json& m = detail::field(j, "map");
  sets::FinSet s = set_from_json(detail::field(m, "source"));
  sets::FinSet t = set_from_json(detail::field(m, "target"));
  const Json& im = detail::field(m, "images");
  if (!im.is_array()) detail::bad("images must be an array");
  std::vector<std::size_t> images;
  for (const auto& v : im) images.push_back(detail::element(v, t.labels()));
  return sets::SetMap(s, t, images);
}

/// {"base": [...], "fibers": [group, ...]}
inline Json set_module_to_json(const sets::SetBeckModule& m) {
  Json fibers = Json::array();
  for (const auto& g : m.fibers) fibers.push_back(group_to_json(g));
  return {{"base", m.base.labels()}, {"fibers", fibers}};
}

inline sets::SetBeckModule set_module_from_json(const Json& j) {
  sets::FinSet base = set_from_json(detail::field(j, "base"));
  const Json& f = detail::field(j, "fibers");
  if (!f.is_array() || f.size() != base.size()) detail::bad("one fiber per base element required");
  std::vector<FGAbGroup> fibers;
  for (const auto& g : f) fibers.push_back(group_from_json(g));
  return sets::SetBeckModule(base, fibers);
}

// ---- monoids ----

/// A finite monoid, or the bound of a truncated N when the descriptor is {"nat": ...}.
struct NatDescriptor {
  std::size_t bound = 0;
};
using MonoidDescriptor = std::variant<monoids::FinCommMonoid, NatDescriptor>;

inline Json monoid_to_json(const monoids::FinCommMonoid& m) {
  return {{"elements", m.labels()}, {"table", m.table()}, {"unit", m.unit()}};
}

inline monoids::FinCommMonoid monoid_from_json(const Json& j) {
  auto labels = detail::strings(detail::field(j, "elements"), "elements");
  const Json& t = detail::field(j, "table");
  if (!t.is_array()) detail::bad("table must be an array of rows");
  std::vector<std::vector<std::size_t>> table;
  for (const auto& row : t) {
    if (!row.is_array()) detail::bad("table must be an array of rows");
    std::vector<std::size_t> r;
    for (const auto& v : row) r.push_back(detail::element(v, labels));
    table.push_back(r);
  }
  return monoids::FinCommMonoid(labels, table, detail::element(detail::field(j, "unit"), labels));
}

inline MonoidDescriptor monoid_descriptor_from_json(const Json& j) {
  if (j.is_object() && j.contains("nat")) {
    const Json& n = j.at("nat");
    std::size_t bound = n.is_object() && n.contains("bound") ? detail::index(n.at("bound"), "bound") : 0;
    return NatDescriptor{bound};
  }
  return monoid_from_json(j);
}

/// {"hom": {"source": monoid, "target": monoid, "images": [...]}}
inline Json monoid_hom_to_json(const monoids::MonoidHom& f) {
  Json im = Json::array();
  for (auto i : f.images()) im.push_back(f.target().label(i));
  return {{"hom", {{"source", monoid_to_json(f.source())}, {"target", monoid_to_json(f.target())}, {"images", im}}}};
}

inline monoids::MonoidHom monoid_hom_from_json(const Json& j) {
  const Json& h = detail::field(j, "hom");
  auto s = monoid_from_json(detail::field(h, "source"));
  auto t = monoid_from_json(detail::field(h, "target"));
  const Json& im = detail::field(h, "images");
  if (!im.is_array()) detail::bad("images must be an array");
  std::vector<std::size_t> images;
  for (const auto& v : im) images.push_back(detail::element(v, t.labels()));
  return monoids::MonoidHom(s, t, images);
}

/// {"base": monoid, "fibers": [group, ...], "transitions": [[rows of h_x on fiber y]]}
inline Json monoid_module_to_json(const monoids::MonBeckModule& m) {
  Json fibers = Json::array();
  for (const auto& g : m.fibers()) fibers.push_back(group_to_json(g));
  Json tr = Json::array();
  for (const auto& row : m.transitions()) {
    Json r = Json::array();
    for (const auto& h : row) r.push_back(matrix_to_json(h.matrix()));
    tr.push_back(r);
  }
  return {{"base", monoid_to_json(m.base())}, {"fibers", fibers}, {"transitions", tr}};
}

inline monoids::MonBeckModule monoid_module_from_json(const Json& j) {
  auto base = monoid_from_json(detail::field(j, "base"));
  const std::size_t n = base.size();
  const Json& f = detail::field(j, "fibers");
  if (!f.is_array() || f.size() != n) detail::bad("one fiber per monoid element required");
  std::vector<FGAbGroup> fibers;
  for (const auto& g : f) fibers.push_back(group_from_json(g));
  const Json& t = detail::field(j, "transitions");
  if (!t.is_array() || t.size() != n) detail::bad("transitions must be an n x n table of matrices");
  monoids::Transitions tr(n);
  for (std::size_t x = 0; x < n; ++x) {
    if (!t[x].is_array() || t[x].size() != n) detail::bad("transitions must be an n x n table of matrices");
    for (std::size_t y = 0; y < n; ++y) {
      const FGAbGroup& src = fibers[y];
      const FGAbGroup& dst = fibers[base.mul(x, y)];
      tr[x].emplace_back(src, dst, matrix_from_json(t[x][y], dst.ngens(), src.ngens()));
    }
  }
  return monoids::MonBeckModule(base, fibers, tr);
}

/// {"nat": {"bound": N}, "fibers": [...], "transitions": [n -> n+1 matrices], "unit": [[...], ...]}
inline Json nat_omega_to_json(const monoids::NatOmega& om) {
  Json fibers = Json::array(), tr = Json::array(), unit = Json::array();
  for (const auto& g : om.fibers) fibers.push_back(group_to_json(g));
  for (const auto& h : om.transitions) tr.push_back(matrix_to_json(h.matrix()));
  for (const auto& u : om.unit) {
    Json v = Json::array();
    for (const auto& c : u) v.push_back(integer_to_json(c));
    unit.push_back(v);
  }
  return {{"nat", {{"bound", om.bound}}}, {"fibers", fibers}, {"transitions", tr}, {"unit", unit}};
}

inline monoids::NatOmega nat_omega_from_json(const Json& j) {
  monoids::NatOmega om;
  om.bound = detail::index(detail::field(detail::field(j, "nat"), "bound"), "bound");
  const Json& f = detail::field(j, "fibers");
  const Json& t = detail::field(j, "transitions");
  const Json& u = detail::field(j, "unit");
  if (!f.is_array() || f.size() != om.bound + 1) detail::bad("fibers 0..bound required");
  if (!t.is_array() || t.size() != om.bound) detail::bad("one transition per n < bound required");
  if (!u.is_array() || u.size() != om.bound + 1) detail::bad("one unit value per fiber required");
  for (const auto& g : f) om.fibers.push_back(group_from_json(g));
  for (std::size_t n = 0; n < om.bound; ++n)
    om.transitions.emplace_back(om.fibers[n], om.fibers[n + 1],
                                matrix_from_json(t[n], om.fibers[n + 1].ngens(), om.fibers[n].ngens()));
  for (std::size_t n = 0; n <= om.bound; ++n) {
    if (!u[n].is_array() || u[n].size() != om.fibers[n].ngens()) detail::bad("unit value has the wrong length");
    IntVector v;
    for (const auto& c : u[n]) v.push_back(integer_from_json(c));
    om.unit.push_back(v);
  }
  return om;
}

// ---- algebras ----

/// {"field": "Q", "vars": [...], "relators": ["y^2 - x^3"], "order": "grevlex"}
inline Json algebra_to_json(const ring::FPAlgebra& a) {
  Json rels = Json::array();
  for (const auto& r : a.relators()) rels.push_back(a.format(r));
  return {{"field", a.field().tag()},
          {"vars", a.variables()},
          {"relators", rels},
          {"order", a.ring().order() == ring::MonomialOrder::lex ? "lex" : "grevlex"}};
}

inline ring::MonomialOrder order_from_tag(const std::string& s) {
  if (s == "grevlex") return ring::MonomialOrder::grevlex;
  if (s == "lex") return ring::MonomialOrder::lex;
  detail::bad("unknown monomial order \"" + s + "\"");
}

inline ring::FPAlgebra algebra_from_json(const Json& j) {
  const Json& f = detail::field(j, "field");
  if (!f.is_string()) detail::bad("field must be a string such as \"Q\" or \"F7\"");
  auto vars = detail::strings(detail::field(j, "vars"), "vars");
  std::vector<std::string> rels =
      j.contains("relators") ? detail::strings(j.at("relators"), "relators") : std::vector<std::string>{};
  ring::MonomialOrder order = ring::MonomialOrder::grevlex;
  if (j.contains("order")) {
    if (!j.at("order").is_string()) detail::bad("order must be a string");
    order = order_from_tag(j.at("order").get<std::string>());
  }
  ring::FPAlgebra a = ring::FPAlgebra::parse(ring::Field::from_tag(f.get<std::string>()), vars, rels, order);
  ring::check_user_algebra(a);
  return a;
}

/// {"algebra": ..., "gens": [...], "relations": [["2x", "0"], ...]}, one entry per generator in each relation.
inline Json ring_module_to_json(const ring::FPModule& m) {
  const auto& a = m.algebra();
  Json rels = Json::array();
  for (const auto& col : m.relations()) {
    Json c = Json::array();
    for (const auto& p : col) c.push_back(a.format(p));
    rels.push_back(c);
  }
  return {{"algebra", algebra_to_json(a)}, {"gens", m.names()}, {"relations", rels}};
}

inline ring::FPModule ring_module_from_json(const Json& j) {
  ring::FPAlgebra a = algebra_from_json(detail::field(j, "algebra"));
  auto gens = detail::strings(detail::field(j, "gens"), "gens");
  std::vector<ring::Column> rels;
  if (j.contains("relations")) {
    for (const auto& c : j.at("relations")) {
      auto entries = detail::strings(c, "relation");
      if (entries.size() != gens.size()) detail::bad("every relation needs one entry per generator");
      ring::Column col;
      for (const auto& s : entries) col.push_back(a.element(s));
      rels.push_back(col);
    }
  }
  return ring::FPModule(a, gens, rels);
}

/// {"hom": {"source": algebra, "target": algebra, "images": {"x": "..."}}}
inline Json algebra_hom_to_json(const ring::AlgebraHom& f) {
  Json im = Json::object();
  for (std::size_t i = 0; i < f.source().nvars(); ++i)
    im[f.source().variables()[i]] = f.target().format(f.images()[i]);
  return {{"hom", {{"source", algebra_to_json(f.source())}, {"target", algebra_to_json(f.target())}, {"images", im}}}};
}

inline ring::AlgebraHom algebra_hom_from_json(const Json& j) {
  const Json& h = detail::field(j, "hom");
  ring::FPAlgebra s = algebra_from_json(detail::field(h, "source"));
  ring::FPAlgebra t = algebra_from_json(detail::field(h, "target"));
  const Json& im = detail::field(h, "images");
  if (!im.is_object()) detail::bad("images must map every source variable to a polynomial");
  std::vector<ring::Polynomial> images;
  for (const auto& v : s.variables()) {
    if (!im.contains(v) || !im.at(v).is_string()) detail::bad("no image for variable \"" + v + "\"");
    images.push_back(t.element(im.at(v).get<std::string>()));
  }
  return ring::AlgebraHom(s, t, images);
}

}  // namespace cotangent::io
