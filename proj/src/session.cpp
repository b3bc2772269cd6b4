#include "fthresh/session.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

#include "fthresh/errors.hpp"

namespace fthresh {

namespace {

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Recursive-descent parser over a single line fragment. Columns are reported
// relative to the full line via `offset`.
class PolyParser {
 public:
  PolyParser(const Ring& ring, std::string_view text, std::size_t line, std::size_t offset)
      : ring_(ring), text_(text), line_(line), offset_(offset) {}

  Polynomial parse_all() {
    Polynomial f = parse_sum();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

  Polynomial parse_sum() {
    skip_space();
    bool negate = false;
    if (peek() == '+' || peek() == '-') {
      negate = peek() == '-';
      ++pos_;
    }
    Polynomial acc = parse_term();
    if (negate) acc = -acc;
    for (;;) {
      skip_space();
      const char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      Polynomial t = parse_term();
      if (c == '+') {
        acc += t;
      } else {
        acc -= t;
      }
    }
    return acc;
  }

  bool at_end() {
    skip_space();
    return pos_ == text_.size();
  }
  std::size_t position() const { return pos_; }
  char peek_nonspace() {
    skip_space();
    return peek();
  }
  void advance() { ++pos_; }

 private:
  Polynomial parse_term() {
    Polynomial acc = parse_factor();
    for (;;) {
      skip_space();
      const char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * parse_factor();
      } else if (std::isdigit(static_cast<unsigned char>(c)) || is_ident_start(c) ||
                 c == '(') {
        acc = acc * parse_factor();
      } else {
        break;
      }
    }
    return acc;
  }

  Polynomial parse_factor() {
    Polynomial base = parse_primary();
    skip_space();
    if (peek() == '^') {
      ++pos_;
      skip_space();
      const auto e = parse_unsigned("exponent");
      base = pow(base, e);
    }
    return base;
  }

  Polynomial parse_primary() {
    skip_space();
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::uint32_t p = ring_->characteristic();
      std::uint64_t residue = 0;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        residue = (residue * 10 + static_cast<std::uint64_t>(peek() - '0')) % p;
        ++pos_;
      }
      return Polynomial::constant(ring_, static_cast<std::int64_t>(residue));
    }
    if (is_ident_start(c)) {
      const std::size_t start = pos_;
      while (is_ident_char(peek())) ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      const int idx = ring_->variable_index(name);
      if (idx >= 0) return Polynomial::variable(ring_, static_cast<std::size_t>(idx));
      // juxtaposed variables such as "xy"
      const auto parts = segment(name);
      if (parts.empty()) fail_at(start, "unknown variable '" + name + "'");
      Polynomial product = Polynomial::constant(ring_, 1);
      for (const int v : parts) {
        product = product * Polynomial::variable(ring_, static_cast<std::size_t>(v));
      }
      return product;
    }
    if (c == '(') {
      ++pos_;
      Polynomial inner = parse_sum();
      skip_space();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (c == '\0') fail("unexpected end of polynomial");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  // Splits an identifier into a product of declared variable names; empty
  // when no split exists.
  std::vector<int> segment(const std::string& name) const {
    const std::size_t n = name.size();
    std::vector<int> from(n + 1, -2);  // variable ending at i, -2 unreachable
    from[0] = -1;
    std::vector<std::size_t> prev(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (from[i] == -2) continue;
      for (std::size_t v = 0; v < ring_->num_variables(); ++v) {
        const auto& var = ring_->variables()[v];
        if (name.compare(i, var.size(), var) == 0 && from[i + var.size()] == -2) {
          from[i + var.size()] = static_cast<int>(v);
          prev[i + var.size()] = i;
        }
      }
    }
    if (from[n] == -2) return {};
    std::vector<int> out;
    for (std::size_t i = n; i > 0; i = prev[i]) out.push_back(from[i]);
    std::reverse(out.begin(), out.end());
    return out;
  }

  std::uint64_t parse_unsigned(const char* what) {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) {
      fail(std::string("expected ") + what);
    }
    std::uint64_t v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + static_cast<std::uint64_t>(peek() - '0');
      if (v > 0xffffffffull) fail(std::string(what) + " too large");
      ++pos_;
    }
    return v;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& message) const { fail_at(pos_, message); }
  [[noreturn]] void fail_at(std::size_t pos, const std::string& message) const {
    throw ParseError(message, line_, offset_ + pos + 1);
  }

  const Ring& ring_;
  std::string_view text_;
  std::size_t line_;
  std::size_t offset_;
  std::size_t pos_ = 0;
};

struct Line {
  std::size_t number;
  std::string text;  // comment stripped
  std::string keyword;
  std::size_t rest_offset;  // 0-based column where the argument text starts
  std::string rest;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    std::string raw(text.substr(start, end == std::string_view::npos ? text.size() - start
                                                                     : end - start));
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::size_t i = 0;
    while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
    if (i < raw.size()) {
      Line line;
      line.number = number;
      line.text = raw;
      std::size_t j = i;
      while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
      line.keyword = raw.substr(i, j - i);
      while (j < raw.size() && std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
      line.rest_offset = j;
      line.rest = raw.substr(j);
      while (!line.rest.empty() && std::isspace(static_cast<unsigned char>(line.rest.back()))) {
        line.rest.pop_back();
      }
      out.push_back(std::move(line));
    }
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

std::vector<std::pair<std::string, std::size_t>> words(const Line& line) {
  std::vector<std::pair<std::string, std::size_t>> out;
  std::size_t i = 0;
  const auto& s = line.rest;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size()) break;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    out.emplace_back(s.substr(i, j - i), line.rest_offset + i + 1);
    i = j;
  }
  return out;
}

}  // namespace

const Ideal& Session::ideal(std::string_view name) const {
  for (const auto& n : ideals) {
    if (n.name == name) return n.ideal;
  }
  throw PreconditionError("no ideal named '" + std::string(name) + "' in session");
}

bool Session::has_ideal(std::string_view name) const {
  for (const auto& n : ideals) {
    if (n.name == name) return true;
  }
  return false;
}

Polynomial parse_polynomial(const Ring& ring, std::string_view text) {
  return PolyParser(ring, text, 1, 0).parse_all();
}

Session parse_session(std::string_view text) {
  const auto lines = split_lines(text);

  std::optional<std::uint32_t> characteristic;
  std::optional<std::vector<std::string>> variables;
  MonomialOrder order;
  bool order_seen = false;

  // Header directives may appear in any order before or between body lines.
  for (const auto& line : lines) {
    if (line.keyword == "char") {
      if (characteristic) throw ParseError("duplicate 'char'", line.number, 1);
      const auto w = words(line);
      if (w.size() != 1) throw ParseError("expected one integer after 'char'", line.number, 1);
      const auto& [tok, col] = w[0];
      if (tok.empty() || tok.size() > 10 ||
          !std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        throw ParseError("characteristic must be a positive integer", line.number, col);
      }
      const auto p = std::stoull(tok);
      if (p >= (1ull << 31) || !is_prime(p)) {
        throw ParseError("characteristic " + tok + " is not prime", line.number, col);
      }
      characteristic = static_cast<std::uint32_t>(p);
    } else if (line.keyword == "vars") {
      if (variables) throw ParseError("duplicate 'vars'", line.number, 1);
      std::vector<std::string> names;
      for (const auto& [tok, col] : words(line)) {
        if (!is_ident_start(tok[0]) ||
            !std::all_of(tok.begin(), tok.end(), is_ident_char)) {
          throw ParseError("invalid variable name '" + tok + "'", line.number, col);
        }
        if (std::find(names.begin(), names.end(), tok) != names.end()) {
          throw ParseError("duplicate variable '" + tok + "'", line.number, col);
        }
        names.push_back(tok);
      }
      if (names.empty()) throw ParseError("'vars' needs at least one name", line.number, 1);
      if (names.size() > kMaxVariables) {
        throw ParseError("at most " + std::to_string(kMaxVariables) + " variables supported",
                         line.number, 1);
      }
      variables = std::move(names);
    } else if (line.keyword == "order") {
      if (order_seen) throw ParseError("duplicate 'order'", line.number, 1);
      order_seen = true;
      const auto w = words(line);
      if (w.size() != 1 || (w[0].first != "grevlex" && w[0].first != "lex")) {
        throw ParseError("order must be 'grevlex' or 'lex'", line.number,
                         w.empty() ? 1 : w[0].second);
      }
      order.kind = w[0].first == "lex" ? OrderKind::lex : OrderKind::grevlex;
    } else if (line.keyword != "rel" && line.keyword != "ideal") {
      throw ParseError("unknown directive '" + line.keyword + "'", line.number, 1);
    }
  }
  if (!characteristic) throw ParseError("missing 'char' directive", lines.empty() ? 1 : lines.back().number, 1);
  if (!variables) throw ParseError("missing 'vars' directive", lines.empty() ? 1 : lines.back().number, 1);

  Ring base = RingContext::make(*characteristic, *variables, order);

  std::vector<Terms> relations;
  for (const auto& line : lines) {
    if (line.keyword != "rel") continue;
    if (line.rest.empty()) throw ParseError("'rel' needs a polynomial", line.number, 1);
    Polynomial f = PolyParser(base, line.rest, line.number, line.rest_offset).parse_all();
    if (f.is_zero()) throw ParseError("relation is zero", line.number, line.rest_offset + 1);
    relations.push_back(f.terms());
  }
  Ring ring = relations.empty() ? base : base->with_relations(std::move(relations));

  Session session{ring, {}};
  for (const auto& line : lines) {
    if (line.keyword != "ideal") continue;
    const auto eq = line.rest.find('=');
    if (eq == std::string::npos) {
      throw ParseError("expected 'ideal <name> = <generators>'", line.number, line.rest_offset + 1);
    }
    std::string name = line.rest.substr(0, eq);
    while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.pop_back();
    if (name.empty() || !is_ident_start(name[0]) ||
        !std::all_of(name.begin(), name.end(), is_ident_char)) {
      throw ParseError("invalid ideal name '" + name + "'", line.number, line.rest_offset + 1);
    }
    if (session.has_ideal(name)) {
      throw ParseError("duplicate ideal name '" + name + "'", line.number, line.rest_offset + 1);
    }
    const std::string body = line.rest.substr(eq + 1);
    const std::size_t body_offset = line.rest_offset + eq + 1;
    std::vector<Polynomial> gens;
    std::size_t start = 0;
    int depth = 0;
    for (std::size_t i = 0; i <= body.size(); ++i) {
      const char c = i < body.size() ? body[i] : ',';
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (c == ',' && depth == 0) {
        const std::string piece = body.substr(start, i - start);
        if (piece.find_first_not_of(" \t") == std::string::npos) {
          throw ParseError("empty generator", line.number, body_offset + start + 1);
        }
        gens.push_back(PolyParser(ring, piece, line.number, body_offset + start).parse_all());
        start = i + 1;
      }
    }
    session.ideals.push_back({name, Ideal(ring, std::move(gens))});
  }
  return session;
}

Session load_session(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open session file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_session(buf.str());
}

std::string print_session(const Session& session) {
  const auto& ring = *session.ring;
  std::ostringstream out;
  out << "char " << ring.characteristic() << "\n";
  out << "vars";
  for (const auto& v : ring.variables()) out << " " << v;
  out << "\n";
  out << "order " << ring.order().name() << "\n";
  for (const auto& r : ring.relation_terms()) out << "rel " << ring.format_terms(r) << "\n";
  for (const auto& [name, ideal] : session.ideals) {
    out << "ideal " << name << " =";
    const auto& gens = ideal.generators();
    if (gens.empty()) out << " 0";
    for (std::size_t i = 0; i < gens.size(); ++i) {
      out << (i ? ", " : " ") << gens[i].to_string();
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace fthresh
