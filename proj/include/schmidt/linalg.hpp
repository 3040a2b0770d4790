#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "schmidt/arith.hpp"

namespace schmidt::linalg {

using IntVector = std::vector<Integer>;
using IntMatrix = std::vector<IntVector>;

/// Scales a rational vector to a primitive integer vector (zero stays zero).
IntVector primitive(std::span<const Rational> v);
/// Divides out the content; the sign is left alone.
void make_primitive(IntVector& v);

/// Fraction-free reduced row echelon form.
///
/// Bareiss-style elimination with exact divisions by the previous pivot,
/// applied above and below each pivot. Every pivot entry ends equal to
/// `pivot_value`, so for a free column f the vector with
/// x_f = pivot_value and x_{pivot(r)} = -rows[r][f] spans the kernel.
struct ReducedEchelon {
  IntMatrix rows;                    // first `rank` rows are nonzero
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
  Integer pivot_value = 1;
  std::size_t rank = 0;
  std::size_t cols = 0;
};

ReducedEchelon fraction_free_rref(IntMatrix m, std::size_t cols);

std::size_t rank(const IntMatrix& m, std::size_t cols);

/// Bareiss determinant of a square integer matrix.
Integer determinant(IntMatrix m);

/// Basis of {x : m x = 0}; each vector is primitive.
IntMatrix nullspace(const IntMatrix& m, std::size_t cols);

/// True iff the row spaces of a and b coincide.
bool same_row_space(const IntMatrix& a, const IntMatrix& b, std::size_t cols);

/// Incrementally grown row space kept in fraction-free echelon form with
/// content removal; `insert` reports whether the span grew.
class SpanBuilder {
 public:
  explicit SpanBuilder(std::size_t cols) : cols_(cols) {}

  bool insert(IntVector v);
  /// True iff v already lies in the span.
  bool contains(IntVector v) const;
  std::size_t dim() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  const IntMatrix& rows() const { return rows_; }

 private:
  void reduce(IntVector& v) const;

  std::size_t cols_;
  IntMatrix rows_;                  // each row has a distinct leading column
  std::vector<std::size_t> lead_;
};

}  // namespace schmidt::linalg
