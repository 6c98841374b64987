#pragma once

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tiltkit/representation.hpp"

namespace tiltkit {

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline std::string strip_comment(const std::string& line) {
  auto p = line.find('#');
  return trim(p == std::string::npos ? line : line.substr(0, p));
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

inline bool is_number_token(const std::string& t) {
  if (t.empty()) return false;
  std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
  if (i == t.size()) return false;
  bool slash = false;
  for (; i < t.size(); ++i) {
    if (t[i] == '/' && !slash) {
      slash = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
  }
  return true;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string where(const std::string& file, std::size_t line) {
  return file + ":" + std::to_string(line) + ": ";
}

}  // namespace detail

/// Parsed contents of an algebra file, before the field is fixed.
struct AlgebraSource {
  FieldSpec field;
  Quiver quiver;
  std::vector<RelationPoly> relations;
};

inline FieldSpec parse_field(const std::string& text) {
  std::string t = detail::trim(text);
  if (t == "Q" || t == "QQ") return FieldSpec::rationals();
  if (t.rfind("GF(", 0) == 0 && t.back() == ')') {
    std::string n = t.substr(3, t.size() - 4);
    if (n.empty() || !std::all_of(n.begin(), n.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      throw InputError("bad field '" + t + "'");
    }
    return FieldSpec::prime(std::stoull(n));
  }
  throw InputError("unknown field '" + t + "' (expected Q or GF(p))");
}

/// Parses "a*b - 2*g*d + 1/2*x*y" into a relation over the quiver.
inline RelationPoly parse_relation(const std::string& text, const Quiver& q) {
  RelationPoly rel;
  std::vector<std::pair<bool, std::string>> terms;
  std::string cur;
  bool negative = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    const bool sign = (c == '+' || c == '-');
    // A '-' directly after '*' or at the start of a coefficient is part of a number.
    if (sign && !detail::trim(cur).empty() && detail::trim(cur).back() != '*') {
      terms.push_back({negative, detail::trim(cur)});
      cur.clear();
      negative = (c == '-');
    } else if (sign && detail::trim(cur).empty()) {
      negative = (negative != (c == '-'));
    } else {
      cur += c;
    }
  }
  if (!detail::trim(cur).empty()) terms.push_back({negative, detail::trim(cur)});
  if (terms.empty()) throw InputError("empty relation");

  for (const auto& [neg, term] : terms) {
    mpq_class coeff(neg ? -1 : 1);
    Path path;
    std::string factor;
    std::istringstream is(term);
    while (std::getline(is, factor, '*')) {
      factor = detail::trim(factor);
      if (factor.empty()) throw InputError("empty factor in relation term '" + term + "'");
      if (detail::is_number_token(factor)) {
        if (!path.empty()) throw InputError("coefficient must precede the path in '" + term + "'");
        mpq_class c;
        c.set_str(factor[0] == '+' ? factor.substr(1) : factor, 10);
        c.canonicalize();
        coeff *= c;
        continue;
      }
      auto a = q.find_arrow(factor);
      if (!a) throw InputError("unknown arrow '" + factor + "' in relation");
      path.push_back(*a);
    }
    if (path.empty()) throw InputError("relation term '" + term + "' has no path");
    rel.terms.push_back({Scalar::rational(coeff), path});
  }
  return rel;
}

inline AlgebraSource parse_algebra_text(const std::string& text, const std::string& name = "<algebra>") {
  AlgebraSource src;
  std::vector<std::string> relation_lines;
  std::vector<std::size_t> relation_numbers;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = detail::strip_comment(raw);
    if (line.empty()) continue;
    auto sp = line.find_first_of(" \t");
    std::string kw = line.substr(0, sp);
    std::string rest = sp == std::string::npos ? "" : detail::trim(line.substr(sp));
    try {
      if (kw == "field") {
        src.field = parse_field(rest);
      } else if (kw == "vertex" || kw == "vertices") {
        for (auto& v : detail::split_ws(rest)) src.quiver.vertices.push_back(v);
      } else if (kw == "arrow") {
        auto colon = rest.find(':');
        auto arrow = rest.find("->");
        if (colon == std::string::npos || arrow == std::string::npos || arrow < colon) {
          throw InputError("expected 'arrow NAME: SRC -> TGT'");
        }
        std::string n = detail::trim(rest.substr(0, colon));
        std::string s = detail::trim(rest.substr(colon + 1, arrow - colon - 1));
        std::string t = detail::trim(rest.substr(arrow + 2));
        if (n.empty()) throw InputError("arrow without a name");
        src.quiver.arrows.push_back({n, src.quiver.vertex(s), src.quiver.vertex(t)});
      } else if (kw == "relation") {
        relation_lines.push_back(rest);
        relation_numbers.push_back(lineno);
      } else {
        throw InputError("unknown keyword '" + kw + "'");
      }
    } catch (const InputError& e) {
      throw InputError(detail::where(name, lineno) + e.what());
    }
  }
  src.quiver.validate();
  for (std::size_t i = 0; i < relation_lines.size(); ++i) {
    try {
      src.relations.push_back(parse_relation(relation_lines[i], src.quiver));
    } catch (const InputError& e) {
      throw InputError(detail::where(name, relation_numbers[i]) + e.what());
    }
  }
  return src;
}

inline AlgebraSource read_algebra_source(const std::string& path) {
  return parse_algebra_text(detail::read_file(path), path);
}

inline AlgebraPtr load_algebra(const std::string& path, std::optional<FieldSpec> field = std::nullopt,
                               std::size_t max_path_len = 64) {
  AlgebraSource src = read_algebra_source(path);
  return build_algebra(src.quiver, src.relations, field.value_or(src.field), max_path_len);
}

/// Parses "[[1,0],[1/2,-3]]" (an empty "[]" is a matrix with no rows).
inline Matrix parse_matrix(const std::string& text, const FieldSpec& f) {
  std::vector<std::vector<Scalar>> rows;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto expect = [&](char c) {
    skip();
    if (i >= text.size() || text[i] != c) throw InputError(std::string("matrix: expected '") + c + "'");
    ++i;
  };
  expect('[');
  skip();
  if (i < text.size() && text[i] == ']') {
    ++i;
  } else {
    while (true) {
      expect('[');
      std::vector<Scalar> row;
      skip();
      if (i < text.size() && text[i] == ']') {
        ++i;
      } else {
        while (true) {
          skip();
          std::size_t b = i;
          while (i < text.size() && text[i] != ',' && text[i] != ']') ++i;
          row.push_back(parse_scalar(detail::trim(text.substr(b, i - b)), f));
          skip();
          if (i < text.size() && text[i] == ',') {
            ++i;
            continue;
          }
          expect(']');
          break;
        }
      }
      rows.push_back(std::move(row));
      skip();
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      expect(']');
      break;
    }
  }
  skip();
  if (i != text.size()) throw InputError("matrix: trailing characters");
  const std::size_t nc = rows.empty() ? 0 : rows[0].size();
  Matrix m(rows.size(), nc);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != nc) throw InputError("matrix: ragged rows");
    for (std::size_t c = 0; c < nc; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

/// Parses a module file against an already-built algebra. Missing maps are zero.
inline Representation parse_module_text(const std::string& text, const AlgebraPtr& a, const std::string& name = "<module>",
                                        std::string* algebra_path = nullptr) {
  std::vector<std::size_t> dims(a->vertex_count(), 0);
  std::vector<std::pair<std::string, std::string>> maps;
  std::vector<std::size_t> map_lines;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = detail::strip_comment(raw);
    if (line.empty()) continue;
    auto sp = line.find_first_of(" \t");
    std::string kw = line.substr(0, sp);
    std::string rest = sp == std::string::npos ? "" : detail::trim(line.substr(sp));
    try {
      if (kw == "algebra") {
        if (algebra_path) *algebra_path = rest;
      } else if (kw == "dim") {
        for (const auto& tok : detail::split_ws(rest)) {
          auto eq = tok.find('=');
          if (eq == std::string::npos) throw InputError("expected VERTEX=DIM, got '" + tok + "'");
          std::size_t v = a->vertex(tok.substr(0, eq));
          dims[v] = std::stoul(tok.substr(eq + 1));
        }
      } else if (kw == "map") {
        auto eq = rest.find('=');
        if (eq == std::string::npos) throw InputError("expected 'map NAME = MATRIX'");
        maps.push_back({detail::trim(rest.substr(0, eq)), detail::trim(rest.substr(eq + 1))});
        map_lines.push_back(lineno);
      } else {
        throw InputError("unknown keyword '" + kw + "'");
      }
    } catch (const std::invalid_argument&) {
      throw InputError(detail::where(name, lineno) + "bad dimension");
    } catch (const InputError& e) {
      throw InputError(detail::where(name, lineno) + e.what());
    }
  }
  Representation m(a, dims);
  for (std::size_t k = 0; k < maps.size(); ++k) {
    try {
      auto g = a->find_generator(maps[k].first);
      if (!g) throw InputError("unknown arrow '" + maps[k].first + "'");
      Matrix mat = parse_matrix(maps[k].second, a->field);
      const auto& gen = a->generators[*g];
      if (mat.rows() == 0 && (dims[gen.source] == 0 || dims[gen.target] == 0)) mat = Matrix(dims[gen.source], dims[gen.target]);
      if (mat.rows() != dims[gen.source] || mat.cols() != dims[gen.target]) {
        throw InputError("matrix for '" + gen.name + "' has shape " + mat.shape() + ", expected " +
                         std::to_string(dims[gen.source]) + "x" + std::to_string(dims[gen.target]));
      }
      m.gens[*g] = mat;
    } catch (const InputError& e) {
      throw InputError(detail::where(name, map_lines[k]) + e.what());
    }
  }
  try {
    m.validate();
  } catch (const InputError& e) {
    throw InputError(name + ": " + e.what());
  }
  return m;
}

inline Representation load_module(const std::string& path, const AlgebraPtr& a) {
  return parse_module_text(detail::read_file(path), a, path);
}

/// Module file text for m; inverse of parse_module_text.
inline std::string format_module(const Representation& m, const std::string& algebra_path = "") {
  std::ostringstream os;
  if (!algebra_path.empty()) os << "algebra " << algebra_path << "\n";
  os << "dim";
  for (std::size_t v = 0; v < m.dims.size(); ++v) os << ' ' << m.algebra->vertices[v] << '=' << m.dims[v];
  os << "\n";
  for (std::size_t g = 0; g < m.gens.size(); ++g) {
    if (m.gens[g].empty()) continue;
    os << "map " << m.algebra->generators[g].name << " = " << m.gens[g].str() << "\n";
  }
  return os.str();
}

}  // namespace tiltkit
