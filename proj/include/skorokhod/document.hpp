#ifndef SKOROKHOD_DOCUMENT_HPP
#define SKOROKHOD_DOCUMENT_HPP

// Plain-text function documents.
//
//   format skorokhod 1
//   kind pl_cadlag
//   name ramp
//   nodes 2
//   0 0 0
//   1 1 1
//
// Kinds: step and pl_cadlag carry "nodes N" followed by N lines "t left
// right"; timechange and homeo carry "nodes N" with lines "t s"; turbo
// carries "F N" (cadlag lines) and then "sigma M" (map lines). Numbers are
// written with 17 significant digits, lines end in LF, and the field order is
// fixed. Blank lines and lines starting with '#' are ignored on load.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "skorokhod/piecewise.hpp"
#include "skorokhod/turbo.hpp"

namespace skorokhod {

enum class DocumentKind { step, pl_cadlag, timechange, homeo, turbo };

inline const char* to_string(DocumentKind k) {
  switch (k) {
    case DocumentKind::step: return "step";
    case DocumentKind::pl_cadlag: return "pl_cadlag";
    case DocumentKind::timechange: return "timechange";
    case DocumentKind::homeo: return "homeo";
    case DocumentKind::turbo: return "turbo";
  }
  return "?";
}

/// Load failure with the offending line (1-based) and field.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::string field, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", field '" + field + "': " + what),
        line_(line),
        field_(std::move(field)) {}
  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Document {
  DocumentKind kind = DocumentKind::pl_cadlag;
  std::string name;
  std::variant<CadlagFunction, TimeChange, Homeomorphism, Turbofunction> value;

  static Document function(const CadlagFunction& f, std::string name = "f") {
    return {f.is_step() ? DocumentKind::step : DocumentKind::pl_cadlag, std::move(name), f};
  }
  static Document turbo(const Turbofunction& x, std::string name = "x") {
    return {DocumentKind::turbo, std::move(name), x};
  }
};

namespace detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

class LineReader {
 public:
  explicit LineReader(std::string_view text) {
    std::size_t pos = 0, no = 0;
    while (pos <= text.size()) {
      const auto end = text.find('\n', pos);
      auto line = text.substr(pos, end == std::string_view::npos ? text.size() - pos : end - pos);
      ++no;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (!line.empty() && line.front() != '#') lines_.push_back({no, std::string(line)});
      if (end == std::string_view::npos) break;
      pos = end + 1;
    }
  }

  bool done() const { return next_ >= lines_.size(); }
  std::size_t line_number() const { return done() ? (lines_.empty() ? 1 : lines_.back().first + 1) : lines_[next_].first; }

  std::vector<std::string> fields(const std::string& expect) {
    if (done()) throw ParseError(line_number(), expect, "unexpected end of document");
    std::istringstream in(lines_[next_].second);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    ++next_;
    return out;
  }

  /// "key value" line; returns value.
  std::string keyed(const std::string& key) {
    const std::size_t no = line_number();
    auto f = fields(key);
    if (f.size() != 2 || f[0] != key) throw ParseError(no, key, "expected '" + key + " <value>'");
    return f[1];
  }

  std::size_t last_line() const { return lines_[next_ - 1].first; }

 private:
  std::vector<std::pair<std::size_t, std::string>> lines_;
  std::size_t next_ = 0;
};

inline double parse_number(const std::string& s, std::size_t line, const std::string& field) {
  double v = 0.0;
  const char* b = s.data();
  const char* e = b + s.size();
  if (!s.empty() && *b == '+') ++b;
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e) throw ParseError(line, field, "not a number: '" + s + "'");
  return v;
}

inline std::size_t parse_count(LineReader& r, const std::string& key) {
  const std::string v = r.keyed(key);
  std::size_t n = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
  if (ec != std::errc() || p != v.data() + v.size() || n < 2) {
    throw ParseError(r.last_line(), key, "node count must be an integer >= 2");
  }
  return n;
}

template <class Build>
auto validated(std::size_t line, const std::string& field, Build build) {
  try {
    return build();
  } catch (const std::invalid_argument& e) {
    throw ParseError(line, field, e.what());
  } catch (const std::domain_error& e) {
    throw ParseError(line, field, e.what());
  }
}

inline CadlagFunction read_cadlag(LineReader& r, const std::string& key) {
  const std::size_t n = parse_count(r, key);
  const std::size_t first = r.last_line();
  std::vector<CadlagNode> nodes;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t no = r.line_number();
    auto f = r.fields(key);
    if (f.size() != 3) throw ParseError(no, key, "expected 't left right'");
    nodes.push_back({parse_number(f[0], no, "t"), parse_number(f[1], no, "left"), parse_number(f[2], no, "right")});
  }
  return validated(first, key, [&] { return CadlagFunction(std::move(nodes)); });
}

template <class Map>
Map read_map(LineReader& r, const std::string& key) {
  const std::size_t n = parse_count(r, key);
  const std::size_t first = r.last_line();
  std::vector<MapNode> nodes;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t no = r.line_number();
    auto f = r.fields(key);
    if (f.size() != 2) throw ParseError(no, key, "expected 't s'");
    nodes.push_back({parse_number(f[0], no, "t"), parse_number(f[1], no, "s")});
  }
  return validated(first, key, [&] { return Map(std::move(nodes)); });
}

inline void write_cadlag(std::string& out, const char* key, const CadlagFunction& f) {
  out += std::string(key) + " " + std::to_string(f.size()) + "\n";
  for (const auto& n : f.nodes()) out += fmt(n.t) + " " + fmt(n.left) + " " + fmt(n.right) + "\n";
}

template <Monotonicity K>
void write_map(std::string& out, const char* key, const MonotoneMap<K>& m) {
  out += std::string(key) + " " + std::to_string(m.size()) + "\n";
  for (const auto& n : m.nodes()) out += fmt(n.t) + " " + fmt(n.s) + "\n";
}

}  // namespace detail

inline Document parse_document(std::string_view text) {
  detail::LineReader r(text);
  {
    const std::size_t no = r.line_number();
    auto f = r.fields("format");
    if (f.size() != 3 || f[0] != "format" || f[1] != "skorokhod" || f[2] != "1") {
      throw ParseError(no, "format", "expected 'format skorokhod 1'");
    }
  }
  Document d;
  const std::string kind = r.keyed("kind");
  const std::size_t kind_line = r.last_line();
  d.name = r.keyed("name");
  if (kind == "step" || kind == "pl_cadlag") {
    d.kind = kind == "step" ? DocumentKind::step : DocumentKind::pl_cadlag;
    auto f = detail::read_cadlag(r, "nodes");
    if (d.kind == DocumentKind::step && !f.is_step()) {
      throw ParseError(kind_line, "kind", "kind is step but some piece is not constant");
    }
    d.value = std::move(f);
  } else if (kind == "timechange") {
    d.kind = DocumentKind::timechange;
    d.value = detail::read_map<TimeChange>(r, "nodes");
  } else if (kind == "homeo") {
    d.kind = DocumentKind::homeo;
    d.value = detail::read_map<Homeomorphism>(r, "nodes");
  } else if (kind == "turbo") {
    d.kind = DocumentKind::turbo;
    auto F = detail::read_cadlag(r, "F");
    auto s = detail::read_map<TimeChange>(r, "sigma");
    d.value = Turbofunction(std::move(F), std::move(s));
  } else {
    throw ParseError(kind_line, "kind", "unknown kind '" + kind + "'");
  }
  if (!r.done()) throw ParseError(r.line_number(), "end", "trailing content after the document");
  return d;
}

inline std::string format_document(const Document& d) {
  std::string out = "format skorokhod 1\n";
  out += std::string("kind ") + to_string(d.kind) + "\n";
  out += "name " + (d.name.empty() ? std::string("unnamed") : d.name) + "\n";
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, CadlagFunction>) {
          detail::write_cadlag(out, "nodes", v);
        } else if constexpr (std::is_same_v<T, Turbofunction>) {
          detail::write_cadlag(out, "F", v.F());
          detail::write_map(out, "sigma", v.sigma());
        } else {
          detail::write_map(out, "nodes", v);
        }
      },
      d.value);
  return out;
}

inline Document load_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str());
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("write to '" + path + "' failed");
}

inline void save_document(const std::string& path, const Document& d) { write_text_file(path, format_document(d)); }

/// The document as a cadlag function (step, pl_cadlag).
inline CadlagFunction as_function(const Document& d) {
  if (const auto* f = std::get_if<CadlagFunction>(&d.value)) return *f;
  throw DomainError("document '" + d.name + "' is a " + to_string(d.kind) + ", not a function");
}

/// The document as a turbofunction; functions are embedded.
inline Turbofunction as_turbo(const Document& d) {
  if (const auto* x = std::get_if<Turbofunction>(&d.value)) return *x;
  if (const auto* f = std::get_if<CadlagFunction>(&d.value)) return embed(*f);
  throw DomainError("document '" + d.name + "' is a " + to_string(d.kind) + ", not a turbofunction");
}

}  // namespace skorokhod

#endif  // SKOROKHOD_DOCUMENT_HPP
