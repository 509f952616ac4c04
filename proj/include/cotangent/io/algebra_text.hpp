#pragma once

// Plain-text descriptors for algebras and algebra homomorphisms.
//
//   # the cusp
//   field Q
//   vars x, y
//   rel y^2 - x^3
//
// A hom file has three sections; [source] and [target] hold algebra lines and
// [map] holds one "x = polynomial" line per source variable.

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cotangent/algebra.hpp"

namespace cotangent::io {

namespace detail {

struct Line {
  std::string text;
  std::size_t number = 0;
  std::size_t indent = 0;
};

inline std::vector<Line> significant_lines(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t n = 0;
  while (std::getline(in, raw)) {
    ++n;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    while (!raw.empty() && std::isspace(static_cast<unsigned char>(raw.back()))) raw.pop_back();
    std::size_t start = 0;
    while (start < raw.size() && std::isspace(static_cast<unsigned char>(raw[start]))) ++start;
    if (start == raw.size()) continue;
    out.push_back({raw.substr(start), n, start});
  }
  return out;
}

/// Splits "keyword rest" and reports the 1-based column where rest begins.
inline std::pair<std::string, std::size_t> keyword(const Line& l, std::string& rest) {
  std::size_t k = 0;
  while (k < l.text.size() && !std::isspace(static_cast<unsigned char>(l.text[k]))) ++k;
  std::string word = l.text.substr(0, k);
  while (k < l.text.size() && std::isspace(static_cast<unsigned char>(l.text[k]))) ++k;
  rest = l.text.substr(k);
  return {word, l.indent + k + 1};
}

class AlgebraBuilder {
 public:
  void add(const Line& l) {
    std::string rest;
    auto [word, col] = keyword(l, rest);
    if (word == "field") {
      if (field_) throw ParseError("field given twice", l.number, l.indent + 1);
      try {
        field_ = ring::Field::from_tag(rest);
      } catch (const Error& e) {
        throw ParseError(e.what(), l.number, col);
      }
    } else if (word == "vars") {
      if (vars_) throw ParseError("vars given twice", l.number, l.indent + 1);
      vars_.emplace();
      std::string name;
      for (std::size_t i = 0; i <= rest.size(); ++i) {
        char c = i < rest.size() ? rest[i] : ',';
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
          if (!name.empty()) vars_->push_back(name);
          name.clear();
        } else {
          if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
            throw ParseError(std::string("unexpected character '") + c + "' in variable list", l.number, col + i);
          name += c;
        }
      }
    } else if (word == "rel") {
      if (rest.empty()) throw ParseError("empty relator", l.number, col);
      rels_.push_back({rest, l.number, col - 1});
    } else if (word == "order") {
      if (rest == "lex") {
        order_ = ring::MonomialOrder::lex;
      } else if (rest == "grevlex") {
        order_ = ring::MonomialOrder::grevlex;
      } else {
        throw ParseError("unknown monomial order '" + rest + "'", l.number, col);
      }
    } else {
      throw ParseError("unknown keyword '" + word + "'", l.number, l.indent + 1);
    }
  }

  ring::FPAlgebra build(std::size_t line_hint) const {
    if (!field_) throw ParseError("missing 'field' line", line_hint, 1);
    std::vector<std::string> vars = vars_ ? *vars_ : std::vector<std::string>{};
    ring::PolyRing r = [&] {
      try {
        return ring::PolyRing(*field_, vars, order_);
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        throw ParseError(e.what(), line_hint, 1);
      }
    }();
    std::vector<ring::Polynomial> rels;
    for (const auto& l : rels_) rels.push_back(r.parse(l.text, l.number, l.indent + 1));
    ring::FPAlgebra a(r, rels);
    ring::check_user_algebra(a);
    return a;
  }

 private:
  std::optional<ring::Field> field_;
  std::optional<std::vector<std::string>> vars_;
  std::vector<Line> rels_;
  ring::MonomialOrder order_ = ring::MonomialOrder::grevlex;
};

}  // namespace detail

inline ring::FPAlgebra parse_algebra(const std::string& text) {
  detail::AlgebraBuilder b;
  std::size_t last = 1;
  for (const auto& l : detail::significant_lines(text)) {
    b.add(l);
    last = l.number;
  }
  return b.build(last);
}

inline ring::AlgebraHom parse_algebra_hom(const std::string& text) {
  detail::AlgebraBuilder source, target;
  std::vector<detail::Line> map_lines;
  std::string section;
  std::size_t source_line = 1, target_line = 1;
  for (const auto& l : detail::significant_lines(text)) {
    if (l.text.front() == '[') {
      if (l.text == "[source]" || l.text == "[target]" || l.text == "[map]") {
        section = l.text.substr(1, l.text.size() - 2);
        continue;
      }
      throw ParseError("unknown section " + l.text, l.number, l.indent + 1);
    }
    if (section == "source") {
      source.add(l);
      source_line = l.number;
    } else if (section == "target") {
      target.add(l);
      target_line = l.number;
    } else if (section == "map") {
      map_lines.push_back(l);
    } else {
      throw ParseError("expected a [source], [target] or [map] section", l.number, l.indent + 1);
    }
  }
  ring::FPAlgebra s = source.build(source_line);
  ring::FPAlgebra t = target.build(target_line);
  std::map<std::string, ring::Polynomial> images;
  for (const auto& l : map_lines) {
    auto eq = l.text.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'variable = polynomial'", l.number, l.indent + 1);
    std::string var = l.text.substr(0, eq);
    while (!var.empty() && std::isspace(static_cast<unsigned char>(var.back()))) var.pop_back();
    bool known = false;
    for (const auto& v : s.variables()) known = known || v == var;
    if (!known) throw ParseError("'" + var + "' is not a source variable", l.number, l.indent + 1);
    if (images.count(var)) throw ParseError("second image for '" + var + "'", l.number, l.indent + 1);
    std::size_t start = eq + 1;
    while (start < l.text.size() && std::isspace(static_cast<unsigned char>(l.text[start]))) ++start;
    if (start == l.text.size()) throw ParseError("missing image", l.number, l.indent + eq + 2);
    images[var] = t.normal_form(t.ring().parse(l.text.substr(start), l.number, l.indent + start + 1));
  }
  std::vector<ring::Polynomial> im;
  for (const auto& v : s.variables()) {
    if (!images.count(v)) throw ParseError("no image for '" + v + "'", map_lines.empty() ? 1 : map_lines.back().number, 1);
    im.push_back(images[v]);
  }
  return ring::AlgebraHom(s, t, im);
}

inline std::string format_algebra(const ring::FPAlgebra& a) {
  std::ostringstream os;
  os << "field " << a.field().tag() << "\n";
  os << "vars ";
  for (std::size_t i = 0; i < a.nvars(); ++i) os << (i ? ", " : "") << a.variables()[i];
  os << "\n";
  if (a.ring().order() == ring::MonomialOrder::lex) os << "order lex\n";
  for (const auto& r : a.relators()) os << "rel " << a.format(r) << "\n";
  return os.str();
}

inline std::string format_algebra_hom(const ring::AlgebraHom& f) {
  std::ostringstream os;
  os << "[source]\n" << format_algebra(f.source()) << "[target]\n" << format_algebra(f.target()) << "[map]\n";
  for (std::size_t i = 0; i < f.source().nvars(); ++i)
    os << f.source().variables()[i] << " = " << f.target().format(f.images()[i]) << "\n";
  return os.str();
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidObject("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace cotangent::io
