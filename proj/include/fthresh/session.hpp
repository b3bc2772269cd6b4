#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fthresh/polyring.hpp"

namespace fthresh {

struct NamedIdeal {
  std::string name;
  Ideal ideal;
};

/// A parsed session file: one ring presentation and its named ideals, in
/// declaration order.
struct Session {
  Ring ring;
  std::vector<NamedIdeal> ideals;

  /// Throws PreconditionError naming the missing ideal.
  const Ideal& ideal(std::string_view name) const;
  bool has_ideal(std::string_view name) const;
};

/// Line-oriented session grammar:
///   char <prime>
///   vars <name>+
///   order grevlex|lex          (optional, default grevlex)
///   rel <poly>                 (repeatable)
///   ideal <name> = <poly> (, <poly>)*
/// `#` starts a comment. Throws ParseError with line and column.
Session parse_session(std::string_view text);
Session load_session(const std::filesystem::path& path);

/// Canonical text; parse_session(print_session(s)) reproduces s.
std::string print_session(const Session& session);

/// Parses one polynomial in `ring` (`*` optional, `^` powers, integer
/// coefficients reduced mod p, parentheses allowed).
Polynomial parse_polynomial(const Ring& ring, std::string_view text);

}  // namespace fthresh
