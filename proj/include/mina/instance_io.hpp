#pragma once

#include "mina/instance.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

// Instance format (line based, '#' starts a comment line):
//
//   header <n> <m> <k> <p>
//   vertex <id> <iface>:<cost> [<iface>:<cost> ...]     n lines
//   edge <u> <v>                                       m lines
//   group <id1> <id2> ...                              p lines
//
// Costs are non-negative decimals (or p/q fractions). Vertex and interface
// ids are arbitrary whitespace-free labels.
//
// Assignment format: one `active <vertex> <iface> [<iface> ...]` line per
// vertex with a non-empty activation.

namespace mina {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class InvalidInstance : public std::runtime_error {
 public:
  explicit InvalidInstance(std::vector<Violation> violations)
      : std::runtime_error(join(violations)), violations_(std::move(violations)) {}
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  static std::string join(const std::vector<Violation>& vs) {
    std::string s = "invalid instance";
    for (const auto& v : vs) s += "; " + v.to_string();
    return s;
  }
  std::vector<Violation> violations_;
};

namespace detail {

inline std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline bool is_comment_or_blank(const std::vector<std::string>& toks) {
  return toks.empty() || toks.front().front() == '#';
}

inline int parse_count(const std::string& s, int line, const char* what) {
  if (!all_digits(s)) throw ParseError(line, std::string("expected non-negative integer for ") + what + ", got '" + s + "'");
  try {
    return std::stoi(s);
  } catch (const std::out_of_range&) {
    throw ParseError(line, std::string(what) + " out of range");
  }
}

}  // namespace detail

/// Parses an instance document and checks every invariant.
/// Throws ParseError (syntax, with line number) or InvalidInstance.
inline Instance parse_instance(std::string_view text) {
  InstanceBuilder builder;
  int header_n = -1, header_m = 0, header_k = 0, header_p = 0;
  int edges = 0, groups = 0;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    auto toks = detail::tokenize(line);
    if (detail::is_comment_or_blank(toks)) continue;
    const std::string& kw = toks[0];

    if (kw == "header") {
      if (header_n >= 0) throw ParseError(line_no, "duplicate header");
      if (toks.size() != 5) throw ParseError(line_no, "header expects 4 fields: n m k p");
      header_n = detail::parse_count(toks[1], line_no, "n");
      header_m = detail::parse_count(toks[2], line_no, "m");
      header_k = detail::parse_count(toks[3], line_no, "k");
      header_p = detail::parse_count(toks[4], line_no, "p");
      continue;
    }
    if (header_n < 0) throw ParseError(line_no, "expected header before '" + kw + "'");

    try {
      if (kw == "vertex") {
        if (toks.size() < 2) throw ParseError(line_no, "vertex line needs an id");
        Vertex v = builder.add_vertex(toks[1]);
        for (std::size_t t = 2; t < toks.size(); ++t) {
          auto colon = toks[t].find(':');
          if (colon == std::string::npos || colon == 0) {
            throw ParseError(line_no, "expected <iface>:<cost>, got '" + toks[t] + "'");
          }
          Rational cost;
          try {
            cost = parse_rational(std::string_view(toks[t]).substr(colon + 1));
          } catch (const std::invalid_argument& e) {
            throw ParseError(line_no, e.what());
          }
          builder.add_slot(v, toks[t].substr(0, colon), std::move(cost));
        }
      } else if (kw == "edge") {
        if (toks.size() != 3) throw ParseError(line_no, "edge expects 2 vertex ids");
        auto u = builder.find_vertex(toks[1]);
        auto v = builder.find_vertex(toks[2]);
        if (!u) throw ParseError(line_no, "unknown vertex '" + toks[1] + "'");
        if (!v) throw ParseError(line_no, "unknown vertex '" + toks[2] + "'");
        builder.add_edge(*u, *v);
        ++edges;
      } else if (kw == "group") {
        if (toks.size() < 2) throw ParseError(line_no, "group needs at least one vertex");
        std::vector<Vertex> g;
        for (std::size_t t = 1; t < toks.size(); ++t) {
          auto v = builder.find_vertex(toks[t]);
          if (!v) throw ParseError(line_no, "unknown vertex '" + toks[t] + "'");
          if (std::find(g.begin(), g.end(), *v) != g.end()) {
            throw ParseError(line_no, "vertex '" + toks[t] + "' repeated in group");
          }
          g.push_back(*v);
        }
        builder.add_group(std::move(g));
        ++groups;
      } else {
        throw ParseError(line_no, "unknown keyword '" + kw + "'");
      }
    } catch (const InstanceError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (header_n < 0) throw ParseError(line_no, "missing header");

  Instance inst = std::move(builder).build();
  std::vector<Violation> violations;
  auto mismatch = [&](const char* what, int declared, int actual) {
    if (declared != actual) {
      violations.push_back({std::string("header ") + what + " mismatch",
                            "declared " + std::to_string(declared) + ", found " + std::to_string(actual)});
    }
  };
  mismatch("n", header_n, inst.num_vertices());
  mismatch("m", header_m, edges);
  mismatch("k", header_k, inst.num_interfaces());
  mismatch("p", header_p, groups);
  for (auto& v : validate(inst)) violations.push_back(std::move(v));
  if (!violations.empty()) throw InvalidInstance(std::move(violations));
  return inst;
}

inline std::string serialize_instance(const Instance& inst) {
  std::ostringstream out;
  out << "header " << inst.num_vertices() << ' ' << inst.num_edges() << ' ' << inst.num_interfaces() << ' '
      << inst.num_groups() << '\n';
  for (Vertex v = 0; v < inst.num_vertices(); ++v) {
    out << "vertex " << inst.vertex_label(v);
    for (const auto& s : inst.slots(v)) out << ' ' << inst.interface_label(s.iface) << ':' << format_rational(s.cost);
    out << '\n';
  }
  for (const auto& e : inst.edges()) out << "edge " << inst.vertex_label(e.u) << ' ' << inst.vertex_label(e.v) << '\n';
  for (const auto& g : inst.groups()) {
    out << "group";
    for (Vertex v : g) out << ' ' << inst.vertex_label(v);
    out << '\n';
  }
  return out.str();
}

/// Parses an assignment against `inst`. Activating an interface the vertex
/// does not have is a parse error.
inline Assignment parse_assignment(const Instance& inst, std::string_view text) {
  Assignment a(inst.num_vertices());
  std::vector<bool> seen(inst.num_vertices(), false);
  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    auto toks = detail::tokenize(line);
    if (detail::is_comment_or_blank(toks)) continue;
    if (toks[0] != "active") throw ParseError(line_no, "unknown keyword '" + toks[0] + "'");
    if (toks.size() < 3) throw ParseError(line_no, "active expects a vertex and at least one interface");
    auto v = inst.find_vertex(toks[1]);
    if (!v) throw ParseError(line_no, "unknown vertex '" + toks[1] + "'");
    if (seen[*v]) throw ParseError(line_no, "vertex '" + toks[1] + "' listed twice");
    seen[*v] = true;
    for (std::size_t t = 2; t < toks.size(); ++t) {
      auto i = inst.find_interface(toks[t]);
      if (!i || !(inst.available(*v) & bit(*i))) {
        throw ParseError(line_no, "interface '" + toks[t] + "' not available at vertex '" + toks[1] + "'");
      }
      a.activate(*v, *i);
    }
  }
  return a;
}

inline std::string serialize_assignment(const Instance& inst, const Assignment& a) {
  std::ostringstream out;
  for (Vertex v = 0; v < inst.num_vertices(); ++v) {
    if (a.mask(v) == 0) continue;
    out << "active " << inst.vertex_label(v);
    for (Interface i = 0; i < inst.num_interfaces(); ++i) {
      if (a.active(v, i)) out << ' ' << inst.interface_label(i);
    }
    out << '\n';
  }
  return out.str();
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Instance load_instance(const std::string& path) { return parse_instance(read_file(path)); }

}  // namespace mina
