#include "toric_ic/lattice.hpp"

#include <algorithm>
#include <optional>
#include <ostream>
#include <sstream>
#include <utility>

#include "toric_ic/error.hpp"

namespace toric_ic {

using boost::multiprecision::abs;
using boost::multiprecision::gcd;

IntVector make_vector(std::initializer_list<long long> values) {
  IntVector v;
  v.reserve(values.size());
  for (long long x : values) v.emplace_back(x);
  return v;
}

Int dot(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::DimensionMismatch, "dot product of vectors of length " +
                                                  std::to_string(a.size()) + " and " +
                                                  std::to_string(b.size()));
  }
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Int content(const IntVector& v) {
  Int g = 0;
  for (const Int& x : v) g = gcd(g, abs(x));
  return g;
}

IntVector primitive(const IntVector& v) {
  Int g = content(v);
  if (g == 0 || g == 1) return v;
  IntVector out(v);
  for (Int& x : out) x /= g;
  return out;
}

bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

std::string to_string(const IntVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  os << ')';
  return os.str();
}

// --- IntMatrix -------------------------------------------------------------

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Int(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "ragged matrix literal");
    for (long long x : r) data_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(std::span<const IntVector> rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      throw Error(ErrorKind::DimensionMismatch, "row " + std::to_string(i) + " has length " +
                                                    std::to_string(rows[i].size()) +
                                                    ", expected " + std::to_string(cols));
    }
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t c) const {
  IntVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Int& factor) {
  if (factor == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += factor * (*this)(src, c);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Int& factor) {
  if (factor == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += factor * (*this)(r, src);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

bool IntMatrix::is_diagonal() const {
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (r != c && (*this)(r, c) != 0) return false;
  return true;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "matrix product shape mismatch");
  }
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

IntVector operator*(const IntVector& v, const IntMatrix& m) {
  if (v.size() != m.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "vector-matrix product shape mismatch");
  }
  IntVector out(m.cols(), Int(0));
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[k] * m(k, j);
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  os << '[';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) os << ',';
    os << to_string(m.row(r));
  }
  return os << ']';
}

namespace {

// Bareiss elimination in place; returns the rank and records the sign of
// the row permutation.
std::size_t bareiss(IntMatrix& a, int& sign) {
  sign = 1;
  std::size_t rank = 0;
  Int prev = 1;
  for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
    std::size_t pivot = rank;
    while (pivot < a.rows() && a(pivot, col) == 0) ++pivot;
    if (pivot == a.rows()) continue;
    if (pivot != rank) {
      a.swap_rows(pivot, rank);
      sign = -sign;
    }
    for (std::size_t i = rank + 1; i < a.rows(); ++i) {
      for (std::size_t j = col + 1; j < a.cols(); ++j) {
        a(i, j) = (a(rank, col) * a(i, j) - a(i, col) * a(rank, j)) / prev;
      }
      a(i, col) = 0;
    }
    prev = a(rank, col);
    ++rank;
  }
  return rank;
}

}  // namespace

Int determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "determinant of non-square matrix");
  if (m.rows() == 0) return 1;
  IntMatrix a = m;
  int sign = 1;
  if (bareiss(a, sign) < a.rows()) return 0;
  Int det = a(a.rows() - 1, a.cols() - 1);
  return sign < 0 ? Int(-det) : det;
}

std::size_t rank(const IntMatrix& m) {
  IntMatrix a = m;
  int sign = 1;
  return bareiss(a, sign);
}

// --- Smith normal form -----------------------------------------------------

namespace {

struct SmithWork {
  IntMatrix a, u, v, v_inv;

  void swap_rows(std::size_t i, std::size_t j) {
    a.swap_rows(i, j);
    u.swap_rows(i, j);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    a.swap_cols(i, j);
    v.swap_cols(i, j);
    v_inv.swap_rows(i, j);
  }
  // row[dst] += f * row[src]
  void add_row(std::size_t dst, std::size_t src, const Int& f) {
    a.add_row_multiple(dst, src, f);
    u.add_row_multiple(dst, src, f);
  }
  // col[dst] += f * col[src]; V^{-1} picks up the inverse row operation.
  void add_col(std::size_t dst, std::size_t src, const Int& f) {
    a.add_col_multiple(dst, src, f);
    v.add_col_multiple(dst, src, f);
    v_inv.add_row_multiple(src, dst, Int(-f));
  }

  // Smallest |entry| in the trailing block starting at (t, t).
  std::optional<std::pair<std::size_t, std::size_t>> smallest_in_block(std::size_t t) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Int best_abs;
    for (std::size_t i = t; i < a.rows(); ++i)
      for (std::size_t j = t; j < a.cols(); ++j) {
        if (a(i, j) == 0) continue;
        Int m = abs(a(i, j));
        if (!best || m < best_abs) {
          best = {i, j};
          best_abs = m;
        }
      }
    return best;
  }

  // Smallest nonzero |entry| in row t / column t beyond the pivot.
  std::optional<std::pair<std::size_t, std::size_t>> smallest_in_cross(std::size_t t) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Int best_abs = abs(a(t, t));
    for (std::size_t i = t + 1; i < a.rows(); ++i)
      if (a(i, t) != 0 && abs(a(i, t)) < best_abs) {
        best = {i, t};
        best_abs = abs(a(i, t));
      }
    for (std::size_t j = t + 1; j < a.cols(); ++j)
      if (a(t, j) != 0 && abs(a(t, j)) < best_abs) {
        best = {t, j};
        best_abs = abs(a(t, j));
      }
    return best;
  }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  SmithWork w{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols()),
              IntMatrix::identity(m.cols())};
  const std::size_t limit = std::min(m.rows(), m.cols());
  std::size_t t = 0;
  for (; t < limit; ++t) {
    auto pivot = w.smallest_in_block(t);
    if (!pivot) break;
    w.swap_rows(t, pivot->first);
    w.swap_cols(t, pivot->second);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < w.a.rows(); ++i) {
        if (w.a(i, t) == 0) continue;
        Int q = w.a(i, t) / w.a(t, t);
        w.add_row(i, t, Int(-q));
        if (w.a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < w.a.cols(); ++j) {
        if (w.a(t, j) == 0) continue;
        Int q = w.a(t, j) / w.a(t, t);
        w.add_col(j, t, Int(-q));
        if (w.a(t, j) != 0) clean = false;
      }
      if (!clean) {
        // A remainder smaller than the pivot is left; promote it.
        if (auto smaller = w.smallest_in_cross(t)) {
          w.swap_rows(t, smaller->first);
          w.swap_cols(t, smaller->second);
        }
        continue;
      }
      // Row and column are clear; enforce divisibility of the trailing block.
      std::optional<std::size_t> offending;
      for (std::size_t i = t + 1; i < w.a.rows() && !offending; ++i)
        for (std::size_t j = t + 1; j < w.a.cols(); ++j)
          if (w.a(i, j) % w.a(t, t) != 0) {
            offending = i;
            break;
          }
      if (!offending) break;
      w.add_row(t, *offending, Int(1));
    }
    if (w.a(t, t) < 0) {
      w.a.negate_row(t);
      w.u.negate_row(t);
    }
  }
  return SmithForm{std::move(w.u), std::move(w.a), std::move(w.v), std::move(w.v_inv), t};
}

// --- Hermite basis ---------------------------------------------------------

std::vector<IntVector> hermite_basis(std::span<const IntVector> generators, std::size_t cols) {
  IntMatrix a = IntMatrix::from_rows(generators, cols);
  std::size_t p = 0;
  for (std::size_t j = 0; j < cols && p < a.rows(); ++j) {
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t i = p; i < a.rows(); ++i)
        if (a(i, j) != 0 && (!best || abs(a(i, j)) < abs(a(*best, j)))) best = i;
      if (!best) break;
      a.swap_rows(p, *best);
      bool others = false;
      for (std::size_t i = p + 1; i < a.rows(); ++i) {
        if (a(i, j) == 0) continue;
        a.add_row_multiple(i, p, Int(-(a(i, j) / a(p, j))));
        if (a(i, j) != 0) others = true;
      }
      if (!others) break;
    }
    if (p < a.rows() && a(p, j) != 0) {
      if (a(p, j) < 0) a.negate_row(p);
      for (std::size_t i = 0; i < p; ++i) {
        Int q = a(i, j) / a(p, j);
        if (a(i, j) - q * a(p, j) < 0) --q;  // floor division
        a.add_row_multiple(i, p, Int(-q));
      }
      ++p;
    }
  }
  std::vector<IntVector> out;
  out.reserve(p);
  for (std::size_t i = 0; i < p; ++i) out.push_back(a.row(i));
  return out;
}

// --- Sublattice ------------------------------------------------------------

Sublattice::Sublattice(std::size_t ambient_rank, std::vector<IntVector> basis)
    : ambient_rank_(ambient_rank), basis_(std::move(basis)) {
  for (const auto& b : basis_) {
    if (b.size() != ambient_rank_) {
      throw Error(ErrorKind::DimensionMismatch, "basis vector " + to_string(b) +
                                                    " does not live in Z^" +
                                                    std::to_string(ambient_rank_));
    }
  }
  if (toric_ic::rank(basis_matrix()) != basis_.size()) {
    throw Error(ErrorKind::InvalidArgument, "sublattice basis is linearly dependent");
  }
}

Sublattice Sublattice::span(std::size_t ambient_rank, std::span<const IntVector> generators) {
  Sublattice s;
  s.ambient_rank_ = ambient_rank;
  s.basis_ = hermite_basis(generators, ambient_rank);
  return s;
}

Sublattice Sublattice::zero(std::size_t ambient_rank) {
  Sublattice s;
  s.ambient_rank_ = ambient_rank;
  return s;
}

Sublattice Sublattice::full(std::size_t ambient_rank) {
  Sublattice s;
  s.ambient_rank_ = ambient_rank;
  for (std::size_t i = 0; i < ambient_rank; ++i) {
    IntVector e(ambient_rank, Int(0));
    e[i] = 1;
    s.basis_.push_back(std::move(e));
  }
  return s;
}

IntMatrix Sublattice::basis_matrix() const { return IntMatrix::from_rows(basis_, ambient_rank_); }

Int Sublattice::saturation_index() const {
  SmithForm snf = smith_normal_form(basis_matrix());
  Int index = 1;
  for (std::size_t i = 0; i < snf.rank; ++i) index *= snf.d(i, i);
  return index;
}

bool Sublattice::is_saturated() const { return saturation_index() == 1; }

Sublattice saturate(const Sublattice& s) {
  SmithForm snf = smith_normal_form(s.basis_matrix());
  std::vector<IntVector> rows;
  rows.reserve(snf.rank);
  for (std::size_t i = 0; i < snf.rank; ++i) rows.push_back(snf.v_inverse.row(i));
  return Sublattice::span(s.ambient_rank(), rows);
}

bool membership(const IntVector& v, const Sublattice& s) {
  if (v.size() != s.ambient_rank()) {
    throw Error(ErrorKind::DimensionMismatch, "vector " + to_string(v) + " tested against a sublattice of Z^" +
                                                  std::to_string(s.ambient_rank()));
  }
  if (s.rank() == 0) return is_zero(v);
  // x * B = v  <=>  (x U^{-1}) D = v V
  SmithForm snf = smith_normal_form(s.basis_matrix());
  IntVector w = v * snf.v;
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (j < snf.rank) {
      if (w[j] % snf.d(j, j) != 0) return false;
    } else if (w[j] != 0) {
      return false;
    }
  }
  return true;
}

bool same_lattice(const Sublattice& a, const Sublattice& b) {
  if (a.ambient_rank() != b.ambient_rank() || a.rank() != b.rank()) return false;
  for (const auto& v : a.basis())
    if (!membership(v, b)) return false;
  for (const auto& v : b.basis())
    if (!membership(v, a)) return false;
  return true;
}

// --- QuotientLattice -------------------------------------------------------

QuotientLattice::QuotientLattice(Sublattice sub, std::vector<IntVector> complement_basis)
    : sub_(std::move(sub)), complement_(std::move(complement_basis)) {
  const std::size_t n = sub_.ambient_rank();
  if (sub_.rank() + complement_.size() != n) {
    throw Error(ErrorKind::DimensionMismatch, "complement of a rank-" + std::to_string(sub_.rank()) +
                                                  " sublattice of Z^" + std::to_string(n) +
                                                  " needs " + std::to_string(n - sub_.rank()) +
                                                  " vectors, got " + std::to_string(complement_.size()));
  }
  std::vector<IntVector> all = sub_.basis();
  all.insert(all.end(), complement_.begin(), complement_.end());
  IntMatrix full = IntMatrix::from_rows(all, n);
  // [sub; complement] is unimodular iff its Smith form is the identity;
  // then the inverse is V * U.
  SmithForm snf = smith_normal_form(full);
  if (snf.rank != n || (n > 0 && snf.d(n - 1, n - 1) != 1)) {
    throw Error(ErrorKind::NotSaturated,
                "sublattice basis plus complement is not a Z-basis (|det| = " +
                    Int(boost::multiprecision::abs(determinant(full))).str() + ")");
  }
  IntMatrix inverse = snf.v * snf.u;
  projection_ = IntMatrix(n, complement_.size());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < complement_.size(); ++j)
      projection_(i, j) = inverse(i, sub_.rank() + j);
}

IntVector QuotientLattice::project(const IntVector& v) const {
  if (v.size() != ambient_rank()) {
    throw Error(ErrorKind::DimensionMismatch, "cannot project " + to_string(v) + " from Z^" +
                                                  std::to_string(ambient_rank()));
  }
  return v * projection_;
}

IntVector QuotientLattice::lift(const IntVector& coords) const {
  if (coords.size() != rank()) {
    throw Error(ErrorKind::DimensionMismatch, "quotient coordinates of wrong length");
  }
  IntVector out(ambient_rank(), Int(0));
  for (std::size_t i = 0; i < coords.size(); ++i)
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += coords[i] * complement_[i][j];
  return out;
}

QuotientLattice complete_basis(const Sublattice& s) {
  SmithForm snf = smith_normal_form(s.basis_matrix());
  for (std::size_t i = 0; i < snf.rank; ++i) {
    if (snf.d(i, i) != 1) {
      throw Error(ErrorKind::NotSaturated, "Z^n / sublattice has torsion (invariant factor " +
                                               snf.d(i, i).str() + ")");
    }
  }
  std::vector<IntVector> complement;
  for (std::size_t i = snf.rank; i < s.ambient_rank(); ++i) complement.push_back(snf.v_inverse.row(i));
  return QuotientLattice(s, std::move(complement));
}

}  // namespace toric_ic
