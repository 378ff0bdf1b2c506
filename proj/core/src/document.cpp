#include "toric_ic/document.hpp"

#include <cctype>
#include <limits>
#include <sstream>

#include "toric_ic/error.hpp"

namespace toric_ic {

Value Value::of(const Int& i) {
  Value v;
  v.kind = Kind::Integer;
  v.integer = i;
  return v;
}

Value Value::string(std::string s) {
  Value v;
  v.kind = Kind::String;
  v.text = std::move(s);
  return v;
}

Value Value::word(std::string w) {
  Value v;
  v.kind = Kind::Word;
  v.text = std::move(w);
  return v;
}

Value Value::list(std::vector<Value> items) {
  Value v;
  v.kind = Kind::List;
  v.items = std::move(items);
  return v;
}

Value Value::record(std::vector<std::pair<std::string, Value>> fields) {
  Value v;
  v.kind = Kind::Record;
  v.fields = std::move(fields);
  return v;
}

namespace {

[[noreturn]] void kind_error(std::string_view what, std::string_view expected) {
  throw Error(ErrorKind::ParseError, std::string(what) + ": expected " + std::string(expected));
}

}  // namespace

const Int& Value::as_integer(std::string_view what) const {
  if (kind != Kind::Integer) kind_error(what, "an integer");
  return integer;
}

long long Value::as_int64(std::string_view what) const {
  const Int& i = as_integer(what);
  if (i > Int(std::numeric_limits<long long>::max()) || i < Int(std::numeric_limits<long long>::min())) {
    kind_error(what, "a 64-bit integer");
  }
  return i.convert_to<long long>();
}

const std::string& Value::as_string(std::string_view what) const {
  if (kind != Kind::String) kind_error(what, "a string");
  return text;
}

const std::string& Value::as_word(std::string_view what) const {
  if (kind != Kind::Word) kind_error(what, "a bare word");
  return text;
}

const std::vector<Value>& Value::as_list(std::string_view what) const {
  if (kind != Kind::List) kind_error(what, "a list");
  return items;
}

const Value* Value::find_field(std::string_view name) const {
  if (kind != Kind::Record) return nullptr;
  for (const auto& [k, v] : fields)
    if (k == name) return &v;
  return nullptr;
}

const Value& Value::field(std::string_view name) const {
  if (kind != Kind::Record) kind_error(name, "a record");
  if (const Value* v = find_field(name)) return *v;
  throw Error(ErrorKind::ParseError, "record has no field \"" + std::string(name) + "\"");
}

void Document::add(std::string key, Value value, std::optional<std::string> label) {
  statements.push_back(Statement{std::move(key), std::move(label), std::move(value), 0});
}

std::vector<const Statement*> Document::all(std::string_view key) const {
  std::vector<const Statement*> out;
  for (const auto& s : statements)
    if (s.key == key) out.push_back(&s);
  return out;
}

const Statement* Document::first(std::string_view key) const {
  for (const auto& s : statements)
    if (s.key == key) return &s;
  return nullptr;
}

// --- parser ----------------------------------------------------------------

namespace {

bool word_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == ':' || c == '+' || c == '-';
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Document parse() {
    Document doc;
    skip();
    while (!at_end()) {
      Statement st;
      st.line = line_;
      st.key = read_word("statement key");
      skip();
      if (peek() == '"') {
        st.label = read_string();
        skip();
      }
      expect('=');
      st.value = read_value();
      skip();
      if (peek() == ';') {
        ++pos_;
        ++col_;
        skip();
      }
      doc.statements.push_back(std::move(st));
    }
    return doc;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line_) + ", column " + std::to_string(col_) + ": " + why);
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip() {
    while (!at_end()) {
      char c = peek();
      if (c == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v') {
        advance();
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    skip();
    if (peek() != c) {
      if (at_end()) fail(std::string("expected '") + c + "', found end of input");
      fail(std::string("expected '") + c + "', found '" + peek() + "'");
    }
    advance();
  }

  std::string read_word(std::string_view what) {
    skip();
    if (!word_start(peek())) {
      if (at_end()) fail("expected " + std::string(what) + ", found end of input");
      fail("expected " + std::string(what) + ", found '" + peek() + "'");
    }
    std::size_t start = pos_;
    while (!at_end() && word_char(peek())) advance();
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string read_string() {
    expect('"');
    std::string out;
    for (;;) {
      if (at_end()) fail("unterminated string");
      char c = peek();
      if (c == '"') {
        advance();
        return out;
      }
      if (c == '\\') {
        advance();
        if (at_end()) fail("unterminated escape");
        char e = peek();
        if (e != '"' && e != '\\') fail(std::string("unknown escape '\\") + e + "'");
        out.push_back(e);
        advance();
        continue;
      }
      if (c == '\n') fail("newline inside string");
      out.push_back(c);
      advance();
    }
  }

  Value read_value() {
    skip();
    char c = peek();
    if (c == '[') {
      advance();
      std::vector<Value> items;
      skip();
      while (peek() != ']') {
        items.push_back(read_value());
        skip();
        if (peek() == ',') {
          advance();
          skip();
        } else if (peek() != ']') {
          if (at_end()) fail("unterminated list");
          fail(std::string("expected ',' or ']', found '") + peek() + "'");
        }
      }
      advance();
      return Value::list(std::move(items));
    }
    if (c == '{') {
      advance();
      std::vector<std::pair<std::string, Value>> fields;
      skip();
      while (peek() != '}') {
        std::string name = read_word("field name");
        expect('=');
        fields.emplace_back(std::move(name), read_value());
        skip();
        if (peek() == ',') {
          advance();
          skip();
        } else if (peek() != '}') {
          if (at_end()) fail("unterminated record");
          fail(std::string("expected ',' or '}', found '") + peek() + "'");
        }
      }
      advance();
      return Value::record(std::move(fields));
    }
    if (c == '"') return Value::string(read_string());
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      if (c == '-') advance();
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected digits after '-'");
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) advance();
      if (!at_end() && (word_char(peek()) || peek() == '/')) {
        fail(std::string("unexpected '") + peek() + "' in integer (only integers are allowed here)");
      }
      return Value::of(Int(std::string(text_.substr(start, pos_ - start))));
    }
    if (word_start(c)) return Value::word(read_word("value"));
    if (at_end()) fail("expected a value, found end of input");
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write(std::ostringstream& os, const Value& v) {
  switch (v.kind) {
    case Value::Kind::Integer: os << v.integer; break;
    case Value::Kind::String: os << quote(v.text); break;
    case Value::Kind::Word: os << v.text; break;
    case Value::Kind::List:
      os << '[';
      for (std::size_t i = 0; i < v.items.size(); ++i) {
        if (i) os << ',';
        write(os, v.items[i]);
      }
      os << ']';
      break;
    case Value::Kind::Record:
      os << '{';
      for (std::size_t i = 0; i < v.fields.size(); ++i) {
        os << (i ? ", " : " ") << v.fields[i].first << " = ";
        write(os, v.fields[i].second);
      }
      os << (v.fields.empty() ? "}" : " }");
      break;
  }
}

}  // namespace

Document parse_document(std::string_view text) { return Parser(text).parse(); }

std::string write_value(const Value& v) {
  std::ostringstream os;
  write(os, v);
  return os.str();
}

std::string write_document(const Document& doc) {
  std::ostringstream os;
  for (const auto& st : doc.statements) {
    os << st.key;
    if (st.label) os << ' ' << quote(*st.label);
    os << " = ";
    write(os, st.value);
    os << '\n';
  }
  return os.str();
}

}  // namespace toric_ic
