#include <doctest.h>

#include "generators.hpp"
#include "toric_ic/error.hpp"
#include "toric_ic/toruscoh.hpp"

using namespace toric_ic;

namespace {

IntPolynomial poly(std::initializer_list<long long> cs) {
  IntPolynomial p;
  for (long long c : cs) p.emplace_back(c);
  return p;
}

IntPolynomial multiply(const IntPolynomial& a, const IntPolynomial& b) {
  IntPolynomial out(a.size() + b.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

GradedRanks ranks(int offset, std::vector<long long> r) { return GradedRanks::canonical(offset, std::move(r)); }

}  // namespace

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == poly({-1, 1}));
  CHECK(cyclotomic_polynomial(2) == poly({1, 1}));
  CHECK(cyclotomic_polynomial(4) == poly({1, 0, 1}));
  CHECK(cyclotomic_polynomial(12) == poly({1, 0, -1, 0, 1}));
  // x^12 - 1 is the product of Phi_d over d | 12.
  IntPolynomial product = poly({1});
  for (unsigned d : {1u, 2u, 3u, 4u, 6u, 12u}) product = multiply(product, cyclotomic_polynomial(d));
  IntPolynomial x12 = IntPolynomial(13, Int(0));
  x12[0] = -1;
  x12[12] = 1;
  CHECK(product == x12);
  CHECK_THROWS_AS(cyclotomic_polynomial(0), Error);
}

TEST_CASE("cyclotomic arithmetic") {
  // zeta_4^2 = -1
  CyclotomicElement i = CyclotomicElement::root_power(4, 1);
  CHECK(i * i == CyclotomicElement::constant(4, -1));
  // 1 + zeta_3 + zeta_3^2 = 0
  CyclotomicElement s = CyclotomicElement::constant(3, 1) + CyclotomicElement::root_power(3, 1) +
                        CyclotomicElement::root_power(3, 2);
  CHECK(s.is_zero());
  CHECK(CyclotomicElement::root_power(6, 6) == CyclotomicElement::constant(6, 1));
  CHECK(CyclotomicElement::root_power(6, -1) * CyclotomicElement::root_power(6, 1) == CyclotomicElement::constant(6, 1));
  CHECK(CyclotomicElement::root_power(12, 1).degree() == 4);
}

TEST_CASE("closed form") {
  CHECK(torus_cohomology_closed_form(2, Character::parse("0,0")) == ranks(0, {1, 2, 1}));
  CHECK(torus_cohomology_closed_form(1, Character::parse("1/2")).is_zero());
  CHECK(torus_cohomology_closed_form(3, Character::parse("0,0,1/4")).is_zero());
  CHECK_THROWS_AS(torus_cohomology_closed_form(2, Character::parse("0")), Error);
}

TEST_CASE("Koszul oracle examples") {
  CHECK(torus_cohomology_koszul_oracle(1, Character::parse("1/2")).is_zero());
  CHECK(torus_cohomology_koszul_oracle(2, Character::parse("0,0")) == ranks(0, {1, 2, 1}));
  CHECK(torus_cohomology_koszul_oracle(2, Character::parse("1/2,0")).is_zero());
  CHECK(torus_cohomology_koszul_oracle(3, Character::parse("0,0,1/4")).is_zero());
  CHECK(torus_cohomology_koszul_oracle(0, Character::trivial(0)) == ranks(0, {1}));
  CHECK_THROWS_AS(torus_cohomology_koszul_oracle(2, Character::parse("0")), Error);
}

TEST_CASE("oracle agrees with closed form, Euler characteristic vanishes") {
  gen::Gen g(12);
  for (int i = 0; i < 200; ++i) {
    const auto k = static_cast<std::size_t>(g.range(1, 5));
    Character c = g.character(k, 12);
    GradedRanks oracle = torus_cohomology_koszul_oracle(k, c);
    CHECK(oracle == torus_cohomology_closed_form(k, c));
    CHECK(oracle.euler_characteristic() == 0);
    // dual character: ranks in complementary degrees
    GradedRanks d = torus_cohomology_koszul_oracle(k, dual(c));
    for (int q = 0; q <= static_cast<int>(k); ++q) CHECK(oracle.at(q) == d.at(static_cast<int>(k) - q));
    if (is_trivial(c)) {
      for (int q = 0; q <= static_cast<int>(k); ++q) CHECK(oracle.at(q) == oracle.at(static_cast<int>(k) - q));
    }
  }
}

TEST_CASE("graded ranks canonical form") {
  GradedRanks g = GradedRanks::canonical(-3, {0, 0, 1, 2, 0});
  CHECK(g.offset == -1);
  CHECK(g.ranks == std::vector<long long>{1, 2});
  CHECK(g.at(0) == 2);
  CHECK(g.at(5) == 0);
  CHECK(GradedRanks::canonical(4, {0, 0}) == GradedRanks{});
}
