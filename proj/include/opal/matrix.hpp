#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "opal/rational.hpp"

namespace opal {

// Dense matrix over the rationals, row-major storage.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, Rational(0)) {}

  static QMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rational& at(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  QMatrix transpose() const;
  QMatrix operator*(const QMatrix& other) const;
  QMatrix operator+(const QMatrix& other) const;
  QMatrix operator-(const QMatrix& other) const;
  QMatrix operator*(const Rational& scalar) const;
  bool operator==(const QMatrix& other) const;
  bool is_zero() const;

  std::vector<Rational> column(std::size_t c) const;
  void set_column(std::size_t c, const std::vector<Rational>& v);
  std::vector<Rational> apply(const std::vector<Rational>& v) const;

  // Horizontal concatenation [this | other]; row counts must match.
  QMatrix augment(const QMatrix& other) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

struct RrefResult {
  QMatrix mat;
  std::vector<std::size_t> pivot_cols;  // ascending
};

// Reduced row echelon form.  Pivot selection always takes the first row with
// a nonzero entry in the lowest-index unexplored column, so the output is a
// deterministic function of the input.
RrefResult rref(const QMatrix& m);

std::size_t rank(const QMatrix& m);

// Columns form a deterministic basis of the null space: one vector per free
// column j, with entry 1 at j and the solved values at the pivot columns.
QMatrix kernel_basis(const QMatrix& m);

// Columns form a deterministic basis of the column space: the nonzero rows of
// rref(transpose), transposed back.
QMatrix column_space_basis(const QMatrix& m);

// Solves m*x = b if consistent.
std::optional<std::vector<Rational>> solve(const QMatrix& m,
                                           const std::vector<Rational>& b);

// Inverse of a square nonsingular matrix; throws opal::error otherwise.
QMatrix inverse(const QMatrix& m);

// Incrementally built subspace of Q^n with exact membership queries.
// Internally keeps its spanning vectors in reduced echelon form.
class SpanBuilder {
 public:
  explicit SpanBuilder(std::size_t ambient_dim) : ambient_(ambient_dim) {}

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return rows_.size(); }

  // Adds v to the span; returns true when the dimension grew.
  bool add(const std::vector<Rational>& v);
  bool contains(const std::vector<Rational>& v) const;

 private:
  // Reduces v against the stored echelon rows in place.
  void reduce(std::vector<Rational>& v) const;

  std::size_t ambient_;
  std::vector<std::pair<std::size_t, std::vector<Rational>>> rows_;  // (pivot, row)
};

}  // namespace opal
