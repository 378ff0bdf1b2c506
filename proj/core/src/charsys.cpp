#include "toric_ic/charsys.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "toric_ic/error.hpp"

namespace toric_ic {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

Rational mod_one(const Rational& q) {
  Int num = numerator(q);
  Int den = denominator(q);
  Int r = num % den;
  if (r < 0) r += den;
  return Rational(r, den);
}

Character::Character(std::vector<Rational> values) : values_(std::move(values)) {
  for (Rational& v : values_) v = mod_one(v);
}

Character Character::from_fractions(std::span<const long long> numerators, long long denominator) {
  if (denominator <= 0) throw Error(ErrorKind::InvalidArgument, "denominator must be positive");
  std::vector<Rational> values;
  values.reserve(numerators.size());
  for (long long a : numerators) values.emplace_back(Int(a), Int(denominator));
  return Character(std::move(values));
}

Character Character::trivial(std::size_t rank) {
  return Character(std::vector<Rational>(rank, Rational(0)));
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Int parse_integer(std::string_view s, std::string_view whole) {
  s = trim(s);
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) throw Error(ErrorKind::ParseError, "bad character value in \"" + std::string(whole) + "\"");
  for (std::size_t j = i; j < s.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) {
      throw Error(ErrorKind::ParseError, "bad character value in \"" + std::string(whole) + "\"");
    }
  }
  return Int(std::string(s[0] == '+' ? s.substr(1) : s));
}

}  // namespace

Character Character::parse(std::string_view text) {
  std::vector<Rational> values;
  if (trim(text).empty()) return Character(std::move(values));
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = text.find(',', start);
    std::string_view item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    std::size_t slash = item.find('/');
    if (slash == std::string_view::npos) {
      values.emplace_back(parse_integer(item, text));
    } else {
      Int num = parse_integer(item.substr(0, slash), text);
      Int den = parse_integer(item.substr(slash + 1), text);
      if (den <= 0) throw Error(ErrorKind::ParseError, "non-positive denominator in \"" + std::string(text) + "\"");
      values.emplace_back(num, den);
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return Character(std::move(values));
}

Int Character::order() const {
  Int l = 1;
  for (const Rational& v : values_) {
    Int d = denominator(v);
    l = l / boost::multiprecision::gcd(l, d) * d;
  }
  return l;
}

Rational Character::evaluate(const IntVector& v) const {
  if (v.size() != values_.size()) {
    throw Error(ErrorKind::DimensionMismatch, "character on Z^" + std::to_string(values_.size()) +
                                                  " evaluated on " + toric_ic::to_string(v));
  }
  Rational s = 0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j] != 0) s += Rational(v[j]) * values_[j];
  }
  return mod_one(s);
}

Character Character::operator+(const Character& other) const {
  if (other.ambient_rank() != ambient_rank()) throw Error(ErrorKind::DimensionMismatch, "adding characters of different rank");
  std::vector<Rational> out(values_.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = values_[j] + other.values_[j];
  return Character(std::move(out));
}

std::string Character::to_string() const {
  std::ostringstream os;
  for (std::size_t j = 0; j < values_.size(); ++j) {
    if (j) os << ',';
    os << values_[j];
  }
  return os.str();
}

std::strong_ordering operator<=>(const Character& a, const Character& b) {
  if (a.values_.size() != b.values_.size()) return a.values_.size() <=> b.values_.size();
  for (std::size_t j = 0; j < a.values_.size(); ++j) {
    if (a.values_[j] < b.values_[j]) return std::strong_ordering::less;
    if (b.values_[j] < a.values_[j]) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

bool is_trivial(const Character& chi) {
  return std::all_of(chi.values().begin(), chi.values().end(), [](const Rational& v) { return v == 0; });
}

Character dual(const Character& chi) {
  std::vector<Rational> out;
  out.reserve(chi.ambient_rank());
  for (const Rational& v : chi.values()) out.push_back(-v);
  return Character(std::move(out));
}

Character restrict(const Character& chi, const Sublattice& s) {
  if (s.ambient_rank() != chi.ambient_rank()) {
    throw Error(ErrorKind::DimensionMismatch, "restricting a character on Z^" + std::to_string(chi.ambient_rank()) +
                                                  " to a sublattice of Z^" + std::to_string(s.ambient_rank()));
  }
  std::vector<Rational> out;
  out.reserve(s.rank());
  for (const IntVector& b : s.basis()) out.push_back(chi.evaluate(b));
  return Character(std::move(out));
}

Character descend(const Character& chi, const QuotientLattice& q) {
  if (q.ambient_rank() != chi.ambient_rank()) {
    throw Error(ErrorKind::DimensionMismatch, "descending a character on Z^" + std::to_string(chi.ambient_rank()) +
                                                  " along a quotient of Z^" + std::to_string(q.ambient_rank()));
  }
  if (!is_trivial(restrict(chi, q.sub()))) {
    throw Error(ErrorKind::NotDescendable, "character " + chi.to_string() + " is nontrivial on the sublattice");
  }
  std::vector<Rational> out;
  out.reserve(q.rank());
  for (const IntVector& c : q.complement_basis()) out.push_back(chi.evaluate(c));
  return Character(std::move(out));
}

Character pullback(const Character& psi, const QuotientLattice& q) {
  if (psi.ambient_rank() != q.rank()) {
    throw Error(ErrorKind::DimensionMismatch, "pulling back a character of rank " + std::to_string(psi.ambient_rank()) +
                                                  " along a quotient of rank " + std::to_string(q.rank()));
  }
  const std::size_t n = q.ambient_rank();
  std::vector<Rational> out;
  out.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    IntVector e(n, Int(0));
    e[j] = 1;
    out.push_back(psi.evaluate(q.project(e)));
  }
  return Character(std::move(out));
}

void LocalSystemClass::add(const Character& chi, long long multiplicity) {
  if (multiplicity <= 0) return;
  factors[chi] += multiplicity;
}

long long LocalSystemClass::total_rank() const {
  long long r = 0;
  for (const auto& [chi, m] : factors) r += m;
  return r;
}

LocalSystemClass& LocalSystemClass::operator+=(const LocalSystemClass& other) {
  for (const auto& [chi, m] : other.factors) add(chi, m);
  return *this;
}

bool LocalSystemClass::contains(const LocalSystemClass& other) const {
  for (const auto& [chi, m] : other.factors) {
    auto it = factors.find(chi);
    if (it == factors.end() || it->second < m) return false;
  }
  return true;
}

bool is_twisted(const LocalSystemClass& cls) {
  return std::none_of(cls.factors.begin(), cls.factors.end(),
                      [](const auto& entry) { return is_trivial(entry.first); });
}

}  // namespace toric_ic
