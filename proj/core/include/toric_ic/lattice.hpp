#pragma once

// Exact integer-lattice linear algebra: Smith and Hermite normal forms,
// sublattices of Z^n, saturation, and unimodular basis completion.
//
// Everything here works over arbitrary-precision integers; there is no
// floating point anywhere in this module.

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace toric_ic {

using Int = boost::multiprecision::cpp_int;
using IntVector = std::vector<Int>;

IntVector make_vector(std::initializer_list<long long> values);
Int dot(const IntVector& a, const IntVector& b);
// gcd of the coordinates; 0 for the zero vector.
Int content(const IntVector& v);
// v / content(v); the zero vector is returned unchanged.
IntVector primitive(const IntVector& v);
bool is_zero(const IntVector& v);
std::string to_string(const IntVector& v);

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntMatrix identity(std::size_t n);
  // `cols` is needed to shape an empty row list.
  static IntMatrix from_rows(std::span<const IntVector> rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Int& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector row(std::size_t r) const;
  IntVector column(std::size_t c) const;
  IntMatrix transpose() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  // row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Int& factor);
  // col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Int& factor);
  void negate_row(std::size_t r);

  bool is_diagonal() const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
// Row vector times matrix.
IntVector operator*(const IntVector& v, const IntMatrix& m);
std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

// Fraction-free (Bareiss) elimination.
Int determinant(const IntMatrix& m);
std::size_t rank(const IntMatrix& m);

/// U * m * V == D with U, V unimodular and D = diag(d_1, ..., d_r, 0, ...)
/// where d_1 | d_2 | ... and every d_i > 0. `v_inverse` is V^{-1}, tracked
/// alongside V so callers never have to invert.
struct SmithForm {
  IntMatrix u;
  IntMatrix d;
  IntMatrix v;
  IntMatrix v_inverse;
  std::size_t rank = 0;
};

SmithForm smith_normal_form(const IntMatrix& m);

/// Nonzero rows of the row-style Hermite normal form: echelon, positive
/// pivots, entries above each pivot reduced into [0, pivot).
std::vector<IntVector> hermite_basis(std::span<const IntVector> generators, std::size_t cols);

/// A sublattice of Z^n given by a basis of linearly independent vectors.
class Sublattice {
 public:
  Sublattice() = default;
  // Throws DimensionMismatch on wrong lengths and InvalidArgument when the
  // vectors are linearly dependent.
  Sublattice(std::size_t ambient_rank, std::vector<IntVector> basis);

  // Z-span of arbitrary (possibly dependent) generators, in Hermite form.
  static Sublattice span(std::size_t ambient_rank, std::span<const IntVector> generators);
  static Sublattice zero(std::size_t ambient_rank);
  static Sublattice full(std::size_t ambient_rank);

  std::size_t ambient_rank() const noexcept { return ambient_rank_; }
  std::size_t rank() const noexcept { return basis_.size(); }
  const std::vector<IntVector>& basis() const noexcept { return basis_; }
  IntMatrix basis_matrix() const;

  // Z^n / this is torsion-free.
  bool is_saturated() const;
  // Index of this lattice inside its saturation.
  Int saturation_index() const;

  friend bool operator==(const Sublattice&, const Sublattice&) = default;

 private:
  std::size_t ambient_rank_ = 0;
  std::vector<IntVector> basis_;
};

/// span_Q(s) ∩ Z^n, returned in Hermite form.
Sublattice saturate(const Sublattice& s);
/// v in the Z-span of s.basis(). Throws DimensionMismatch.
bool membership(const IntVector& v, const Sublattice& s);
/// Equality as subsets of Z^n, independent of the chosen bases.
bool same_lattice(const Sublattice& a, const Sublattice& b);

/// Z^n / sub for a saturated sub, presented by a complement basis such that
/// sub.basis() ∪ complement_basis() is a Z-basis of Z^n. Coordinates on the
/// quotient are taken with respect to the complement basis.
class QuotientLattice {
 public:
  QuotientLattice() = default;
  // Throws NotSaturated if the combined basis is not unimodular.
  QuotientLattice(Sublattice sub, std::vector<IntVector> complement_basis);

  std::size_t ambient_rank() const noexcept { return sub_.ambient_rank(); }
  std::size_t rank() const noexcept { return complement_.size(); }
  const Sublattice& sub() const noexcept { return sub_; }
  const std::vector<IntVector>& complement_basis() const noexcept { return complement_; }

  // Image of v under Z^n -> Z^n / sub, in complement coordinates.
  IntVector project(const IntVector& v) const;
  // sum_i coords[i] * complement_basis()[i]
  IntVector lift(const IntVector& coords) const;

  friend bool operator==(const QuotientLattice& a, const QuotientLattice& b) {
    return a.sub_ == b.sub_ && a.complement_ == b.complement_;
  }

 private:
  Sublattice sub_;
  std::vector<IntVector> complement_;
  // Last rank() columns of the inverse of [sub; complement].
  IntMatrix projection_;
};

/// Completion read off the Smith transform of s.basis(). Throws NotSaturated.
QuotientLattice complete_basis(const Sublattice& s);

}  // namespace toric_ic
