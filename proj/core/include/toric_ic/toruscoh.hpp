#pragma once

// Cohomology of a compact torus (S^1)^k with coefficients in a rank-one local
// system: the closed form (nonzero only for trivial monodromy) and an
// independent Koszul-complex computation over a cyclotomic field.

#include <cstddef>
#include <memory>
#include <vector>

#include "toric_ic/charsys.hpp"

namespace toric_ic {

/// Ranks by degree, ranks[i] living in degree offset + i. Canonical form
/// trims leading and trailing zeros; the zero object has no ranks and
/// offset 0.
struct GradedRanks {
  int offset = 0;
  std::vector<long long> ranks;

  static GradedRanks canonical(int offset, std::vector<long long> ranks);

  long long at(int degree) const;
  bool is_zero() const { return ranks.empty(); }
  long long euler_characteristic() const;

  friend bool operator==(const GradedRanks&, const GradedRanks&) = default;
};

/// Integer polynomial, coefficient of x^i at index i.
using IntPolynomial = std::vector<Int>;

/// m-th cyclotomic polynomial by exact division of x^m - 1 by the Phi_d for
/// proper divisors d of m. Throws InvalidArgument for m == 0.
IntPolynomial cyclotomic_polynomial(unsigned m);

/// Element of Q(zeta_m) = Q[x] / Phi_m(x), kept reduced (degree < phi(m)).
class CyclotomicElement {
 public:
  CyclotomicElement(unsigned order, std::vector<Rational> coeffs);
  // zeta_m^exponent
  static CyclotomicElement root_power(unsigned order, long long exponent);
  static CyclotomicElement constant(unsigned order, const Rational& c);

  unsigned order() const noexcept { return order_; }
  std::size_t degree() const noexcept { return modulus_->size() - 1; }
  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const;

  CyclotomicElement operator+(const CyclotomicElement& o) const;
  CyclotomicElement operator-(const CyclotomicElement& o) const;
  CyclotomicElement operator*(const CyclotomicElement& o) const;
  friend bool operator==(const CyclotomicElement& a, const CyclotomicElement& b) {
    return a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
  }

  // Matrix of y -> this * y on the power basis; column i holds x^i * this.
  std::vector<std::vector<Rational>> multiplication_matrix() const;

 private:
  CyclotomicElement(unsigned order, std::shared_ptr<const IntPolynomial> modulus, std::vector<Rational> coeffs);
  void reduce();

  unsigned order_ = 1;
  std::shared_ptr<const IntPolynomial> modulus_;
  std::vector<Rational> coeffs_;
};

/// binomial(k, q) in degrees 0..k for trivial chi, zero otherwise.
/// Throws DimensionMismatch when chi.ambient_rank() != k.
GradedRanks torus_cohomology_closed_form(std::size_t k, const Character& chi);

/// Ranks of the Koszul complex Lambda^q(F^k) -> Lambda^{q+1}(F^k), v -> c ∧ v,
/// c_j = zeta^{m chi_j} - 1, over F = Q(zeta_m) with m the order of chi.
GradedRanks torus_cohomology_koszul_oracle(std::size_t k, const Character& chi);

}  // namespace toric_ic
