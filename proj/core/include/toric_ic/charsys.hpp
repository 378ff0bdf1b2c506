#pragma once

// Finite-order characters Z^n -> Q/Z (monodromy of rank-one local systems on
// a torus) and the composition-factor model of local systems on an orbit.

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "toric_ic/lattice.hpp"

namespace toric_ic {

using Rational = boost::multiprecision::cpp_rational;

/// Reduces q into the fundamental domain [0, 1).
Rational mod_one(const Rational& q);

/// A homomorphism Z^n -> Q/Z, stored as its values on the standard basis.
/// Every stored value is a reduced fraction in [0, 1).
class Character {
 public:
  Character() = default;
  explicit Character(std::vector<Rational> values);
  // Convenience: values[i] = numerators[i] / denominator.
  static Character from_fractions(std::span<const long long> numerators, long long denominator);
  static Character trivial(std::size_t rank);
  // Parses "1/2,1/3,0". Throws ParseError.
  static Character parse(std::string_view text);

  std::size_t ambient_rank() const noexcept { return values_.size(); }
  const std::vector<Rational>& values() const noexcept { return values_; }

  // lcm of the denominators.
  Int order() const;
  // chi(v) mod 1.
  Rational evaluate(const IntVector& v) const;

  Character operator+(const Character& other) const;

  // "1/2,1/3,0"
  std::string to_string() const;

  friend bool operator==(const Character&, const Character&) = default;
  friend std::strong_ordering operator<=>(const Character& a, const Character& b);

 private:
  std::vector<Rational> values_;
};

bool is_trivial(const Character& chi);
Character dual(const Character& chi);

/// Restriction to s, in s.basis() coordinates. Throws DimensionMismatch.
Character restrict(const Character& chi, const Sublattice& s);

/// The character on Z^n / q.sub() (complement coordinates) whose pullback is
/// chi. Throws NotDescendable when chi is nontrivial on q.sub().
Character descend(const Character& chi, const QuotientLattice& q);

/// Inverse of descend: psi on the quotient, composed with the projection.
Character pullback(const Character& psi, const QuotientLattice& q);

/// Semisimplified local system on one orbit: the multiset of its rank-one
/// composition factors. `quotient` points at the orbit's fundamental-group
/// lattice and may be null for free-standing multisets.
struct LocalSystemClass {
  const QuotientLattice* quotient = nullptr;
  std::map<Character, long long> factors;

  void add(const Character& chi, long long multiplicity = 1);
  long long total_rank() const;
  // Multiset union (short-exact-sequence semisimplification).
  LocalSystemClass& operator+=(const LocalSystemClass& other);
  // Sub-multiset test.
  bool contains(const LocalSystemClass& other) const;

  friend bool operator==(const LocalSystemClass& a, const LocalSystemClass& b) {
    return a.factors == b.factors;
  }
};

/// No composition factor is trivial. The empty class is twisted.
bool is_twisted(const LocalSystemClass& cls);

}  // namespace toric_ic
