#include "toric_ic/toruscoh.hpp"

#include <algorithm>

#include "toric_ic/error.hpp"

namespace toric_ic {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

GradedRanks GradedRanks::canonical(int offset, std::vector<long long> ranks) {
  std::size_t lo = 0;
  while (lo < ranks.size() && ranks[lo] == 0) ++lo;
  std::size_t hi = ranks.size();
  while (hi > lo && ranks[hi - 1] == 0) --hi;
  if (lo == hi) return {};
  return {offset + static_cast<int>(lo),
          std::vector<long long>(ranks.begin() + static_cast<std::ptrdiff_t>(lo),
                                 ranks.begin() + static_cast<std::ptrdiff_t>(hi))};
}

long long GradedRanks::at(int degree) const {
  int i = degree - offset;
  if (i < 0 || i >= static_cast<int>(ranks.size())) return 0;
  return ranks[static_cast<std::size_t>(i)];
}

long long GradedRanks::euler_characteristic() const {
  long long chi = 0;
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    int degree = offset + static_cast<int>(i);
    chi += (degree % 2 == 0 ? 1 : -1) * ranks[i];
  }
  return chi;
}

// --- polynomials -----------------------------------------------------------

namespace {

void trim(IntPolynomial& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact division by a monic divisor.
IntPolynomial divide_exact(IntPolynomial num, const IntPolynomial& den) {
  trim(num);
  const std::size_t dd = den.size() - 1;
  if (num.size() < den.size()) return {};
  IntPolynomial q(num.size() - dd, Int(0));
  for (std::size_t i = num.size(); i-- > dd;) {
    Int c = num[i];
    if (c == 0) continue;
    q[i - dd] = c;
    for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
  }
  trim(num);
  if (!num.empty()) throw Error(ErrorKind::InvalidArgument, "inexact cyclotomic division");
  return q;
}

}  // namespace

IntPolynomial cyclotomic_polynomial(unsigned m) {
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "cyclotomic polynomial of order 0");
  IntPolynomial p(m + 1, Int(0));
  p[0] = -1;
  p[m] = 1;
  for (unsigned d = 1; d < m; ++d) {
    if (m % d == 0) p = divide_exact(std::move(p), cyclotomic_polynomial(d));
  }
  return p;
}

// --- CyclotomicElement -----------------------------------------------------

CyclotomicElement::CyclotomicElement(unsigned order, std::shared_ptr<const IntPolynomial> modulus,
                                     std::vector<Rational> coeffs)
    : order_(order), modulus_(std::move(modulus)), coeffs_(std::move(coeffs)) {
  reduce();
}

CyclotomicElement::CyclotomicElement(unsigned order, std::vector<Rational> coeffs)
    : CyclotomicElement(order, std::make_shared<const IntPolynomial>(cyclotomic_polynomial(order)),
                        std::move(coeffs)) {}

CyclotomicElement CyclotomicElement::root_power(unsigned order, long long exponent) {
  long long e = exponent % static_cast<long long>(order);
  if (e < 0) e += order;
  std::vector<Rational> c(static_cast<std::size_t>(e) + 1, Rational(0));
  c.back() = 1;
  return CyclotomicElement(order, std::move(c));
}

CyclotomicElement CyclotomicElement::constant(unsigned order, const Rational& c) {
  return CyclotomicElement(order, std::vector<Rational>{c});
}

void CyclotomicElement::reduce() {
  const IntPolynomial& mod = *modulus_;
  const std::size_t deg = mod.size() - 1;
  for (std::size_t i = coeffs_.size(); i-- > deg;) {
    Rational c = coeffs_[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= deg; ++j) coeffs_[i - deg + j] -= c * Rational(mod[j]);
  }
  coeffs_.resize(deg, Rational(0));
}

bool CyclotomicElement::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
}

CyclotomicElement CyclotomicElement::operator+(const CyclotomicElement& o) const {
  if (o.order_ != order_) throw Error(ErrorKind::DimensionMismatch, "cyclotomic orders differ");
  std::vector<Rational> c(coeffs_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.coeffs_[i];
  return CyclotomicElement(order_, modulus_, std::move(c));
}

CyclotomicElement CyclotomicElement::operator-(const CyclotomicElement& o) const {
  if (o.order_ != order_) throw Error(ErrorKind::DimensionMismatch, "cyclotomic orders differ");
  std::vector<Rational> c(coeffs_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.coeffs_[i];
  return CyclotomicElement(order_, modulus_, std::move(c));
}

CyclotomicElement CyclotomicElement::operator*(const CyclotomicElement& o) const {
  if (o.order_ != order_) throw Error(ErrorKind::DimensionMismatch, "cyclotomic orders differ");
  std::vector<Rational> c(coeffs_.size() + o.coeffs_.size(), Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  return CyclotomicElement(order_, modulus_, std::move(c));
}

std::vector<std::vector<Rational>> CyclotomicElement::multiplication_matrix() const {
  const std::size_t d = degree();
  std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d, Rational(0)));
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<Rational> xi(i + 1, Rational(0));
    xi[i] = 1;
    CyclotomicElement col = *this * CyclotomicElement(order_, modulus_, std::move(xi));
    for (std::size_t r = 0; r < d; ++r) m[r][i] = col.coeffs_[r];
  }
  return m;
}

// --- torus cohomology ------------------------------------------------------

namespace {

long long binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  long long r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<long long>(n - k + i) / static_cast<long long>(i);
  return r;
}

void check_rank(std::size_t k, const Character& chi) {
  if (chi.ambient_rank() != k) {
    throw Error(ErrorKind::DimensionMismatch, "character of rank " + std::to_string(chi.ambient_rank()) +
                                                  " on a torus of rank " + std::to_string(k));
  }
}

// Subsets of {0..k-1} of size q as bitmasks, in increasing order.
std::vector<unsigned> subsets_of_size(std::size_t k, std::size_t q) {
  std::vector<unsigned> out;
  for (unsigned mask = 0; mask < (1u << k); ++mask)
    if (static_cast<std::size_t>(__builtin_popcount(mask)) == q) out.push_back(mask);
  return out;
}

}  // namespace

GradedRanks torus_cohomology_closed_form(std::size_t k, const Character& chi) {
  check_rank(k, chi);
  if (!is_trivial(chi)) return {};
  std::vector<long long> ranks(k + 1);
  for (std::size_t q = 0; q <= k; ++q) ranks[q] = binomial(k, q);
  return GradedRanks::canonical(0, std::move(ranks));
}

GradedRanks torus_cohomology_koszul_oracle(std::size_t k, const Character& chi) {
  check_rank(k, chi);
  if (k >= 16) throw Error(ErrorKind::InvalidArgument, "Koszul oracle limited to tori of rank < 16");
  const Int order = chi.order();
  if (order > 100000) throw Error(ErrorKind::InvalidArgument, "character order too large for the oracle");
  const unsigned m = order.convert_to<unsigned>();

  std::vector<CyclotomicElement> c;
  for (const Rational& v : chi.values()) {
    Int a = numerator(v) * (Int(m) / denominator(v));
    c.push_back(CyclotomicElement::root_power(m, a.convert_to<long long>()) - CyclotomicElement::constant(m, 1));
  }
  std::vector<std::vector<std::vector<Rational>>> blocks;
  for (const auto& cj : c) blocks.push_back(cj.multiplication_matrix());
  const std::size_t phi = c.empty() ? 1 : c.front().degree();

  // rank_of_d[q] = rank over F of d^q : Lambda^q -> Lambda^{q+1}
  std::vector<std::size_t> rank_of_d(k + 1, 0);
  for (std::size_t q = 0; q < k; ++q) {
    const std::vector<unsigned> src = subsets_of_size(k, q);
    const std::vector<unsigned> dst = subsets_of_size(k, q + 1);
    std::vector<std::vector<Rational>> big(dst.size() * phi, std::vector<Rational>(src.size() * phi, Rational(0)));
    for (std::size_t col = 0; col < src.size(); ++col) {
      const unsigned s = src[col];
      for (std::size_t j = 0; j < k; ++j) {
        if (s & (1u << j)) continue;
        const unsigned t = s | (1u << j);
        const std::size_t row = static_cast<std::size_t>(std::find(dst.begin(), dst.end(), t) - dst.begin());
        // e_j ∧ e_S = (-1)^{#{i in S : i < j}} e_{S ∪ {j}}
        const int sign = (__builtin_popcount(s & ((1u << j) - 1)) % 2 == 0) ? 1 : -1;
        for (std::size_t a = 0; a < phi; ++a)
          for (std::size_t b = 0; b < phi; ++b) big[row * phi + a][col * phi + b] = sign * blocks[j][a][b];
      }
    }
    // Clear denominators row by row, then take the integer rank.
    IntMatrix im(big.size(), big.empty() ? 0 : big.front().size());
    for (std::size_t r = 0; r < big.size(); ++r) {
      Int l = 1;
      for (const Rational& x : big[r]) {
        Int d = denominator(x);
        l = l / boost::multiprecision::gcd(l, d) * d;
      }
      for (std::size_t cc = 0; cc < big[r].size(); ++cc) im(r, cc) = numerator(big[r][cc]) * (l / denominator(big[r][cc]));
    }
    const std::size_t r = rank(im);
    if (r % phi != 0) throw Error(ErrorKind::InvalidArgument, "expanded rank not a multiple of the field degree");
    rank_of_d[q] = r / phi;
  }

  std::vector<long long> ranks(k + 1);
  for (std::size_t q = 0; q <= k; ++q) {
    long long dim = binomial(k, q);
    long long out_rank = static_cast<long long>(rank_of_d[q]);
    long long in_rank = q > 0 ? static_cast<long long>(rank_of_d[q - 1]) : 0;
    ranks[q] = dim - out_rank - in_rank;
  }
  return GradedRanks::canonical(0, std::move(ranks));
}

}  // namespace toric_ic
