#pragma once

// Plain-text structured documents used for fan files and run reports.
//
//   document  := { statement [';'] }
//   statement := WORD [STRING] '=' value
//   value     := INTEGER | STRING | WORD | list | record
//   list      := '[' [ value { ',' value } [','] ] ']'
//   record    := '{' [ WORD '=' value { ',' WORD '=' value } [','] ] '}'
//
// '#' starts a comment that runs to the end of the line. Whitespace,
// including any newline convention, is insignificant. WORD is
// [A-Za-z_][A-Za-z0-9_.:+-]*, INTEGER is -?[0-9]+ of any length, STRING is
// double-quoted with \" and \\ escapes. Input must be UTF-8; non-ASCII bytes
// are only allowed inside strings and comments.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "toric_ic/lattice.hpp"

namespace toric_ic {

struct Value {
  enum class Kind { Integer, String, Word, List, Record };

  Kind kind = Kind::Word;
  Int integer;
  std::string text;  // String and Word
  std::vector<Value> items;
  std::vector<std::pair<std::string, Value>> fields;

  static Value of(const Int& i);
  static Value of(long long i) { return of(Int(i)); }
  static Value string(std::string s);
  static Value word(std::string w);
  static Value list(std::vector<Value> items = {});
  static Value record(std::vector<std::pair<std::string, Value>> fields = {});

  // Accessors throw ParseError naming `what` on a kind mismatch.
  const Int& as_integer(std::string_view what) const;
  long long as_int64(std::string_view what) const;
  const std::string& as_string(std::string_view what) const;
  const std::string& as_word(std::string_view what) const;
  const std::vector<Value>& as_list(std::string_view what) const;
  const Value& field(std::string_view name) const;
  const Value* find_field(std::string_view name) const;

  friend bool operator==(const Value&, const Value&) = default;
};

struct Statement {
  std::string key;
  std::optional<std::string> label;
  Value value;
  int line = 0;

  friend bool operator==(const Statement& a, const Statement& b) {
    return a.key == b.key && a.label == b.label && a.value == b.value;
  }
};

struct Document {
  std::vector<Statement> statements;

  void add(std::string key, Value value, std::optional<std::string> label = std::nullopt);
  std::vector<const Statement*> all(std::string_view key) const;
  const Statement* first(std::string_view key) const;

  friend bool operator==(const Document&, const Document&) = default;
};

/// Throws ParseError with "line L, column C" context.
Document parse_document(std::string_view text);

/// Canonical rendering: one statement per line.
std::string write_document(const Document& doc);
std::string write_value(const Value& v);

}  // namespace toric_ic
