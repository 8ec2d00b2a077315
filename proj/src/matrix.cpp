#include "opal/matrix.hpp"

#include <algorithm>

namespace opal {

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

QMatrix QMatrix::operator*(const QMatrix& other) const {
  if (cols_ != other.rows_) throw error("matrix product shape mismatch");
  QMatrix out(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& f = at(r, k);
      if (f == 0) continue;
      for (std::size_t c = 0; c < other.cols_; ++c) {
        const Rational& g = other.at(k, c);
        if (g != 0) out.at(r, c) += f * g;
      }
    }
  return out;
}

QMatrix QMatrix::operator+(const QMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw error("matrix sum shape mismatch");
  QMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < entries_.size(); ++i)
    out.entries_[i] = entries_[i] + other.entries_[i];
  return out;
}

QMatrix QMatrix::operator-(const QMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw error("matrix difference shape mismatch");
  QMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < entries_.size(); ++i)
    out.entries_[i] = entries_[i] - other.entries_[i];
  return out;
}

QMatrix QMatrix::operator*(const Rational& scalar) const {
  QMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < entries_.size(); ++i)
    out.entries_[i] = entries_[i] * scalar;
  return out;
}

bool QMatrix::operator==(const QMatrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ &&
         entries_ == other.entries_;
}

bool QMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Rational& x) { return x == 0; });
}

std::vector<Rational> QMatrix::column(std::size_t c) const {
  std::vector<Rational> v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
  return v;
}

void QMatrix::set_column(std::size_t c, const std::vector<Rational>& v) {
  if (v.size() != rows_) throw error("set_column length mismatch");
  for (std::size_t r = 0; r < rows_; ++r) at(r, c) = v[r];
}

std::vector<Rational> QMatrix::apply(const std::vector<Rational>& v) const {
  if (v.size() != cols_) throw error("matrix apply length mismatch");
  std::vector<Rational> out(rows_, Rational(0));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (at(r, c) != 0 && v[c] != 0) out[r] += at(r, c) * v[c];
  return out;
}

QMatrix QMatrix::augment(const QMatrix& other) const {
  if (rows_ != other.rows_) throw error("augment row count mismatch");
  QMatrix out(rows_, cols_ + other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out.at(r, c) = at(r, c);
    for (std::size_t c = 0; c < other.cols_; ++c)
      out.at(r, cols_ + c) = other.at(r, c);
  }
  return out;
}

RrefResult rref(const QMatrix& m) {
  RrefResult res{m, {}};
  QMatrix& a = res.mat;
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < a.cols() && pivot_row < a.rows(); ++col) {
    std::size_t sel = a.rows();
    for (std::size_t r = pivot_row; r < a.rows(); ++r)
      if (a.at(r, col) != 0) {
        sel = r;
        break;
      }
    if (sel == a.rows()) continue;
    if (sel != pivot_row)
      for (std::size_t c = 0; c < a.cols(); ++c)
        std::swap(a.at(sel, c), a.at(pivot_row, c));
    Rational inv = 1 / a.at(pivot_row, col);
    for (std::size_t c = 0; c < a.cols(); ++c) a.at(pivot_row, c) *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == pivot_row) continue;
      Rational f = a.at(r, col);
      if (f == 0) continue;
      for (std::size_t c = 0; c < a.cols(); ++c)
        a.at(r, c) -= f * a.at(pivot_row, c);
    }
    res.pivot_cols.push_back(col);
    ++pivot_row;
  }
  return res;
}

std::size_t rank(const QMatrix& m) { return rref(m).pivot_cols.size(); }

QMatrix kernel_basis(const QMatrix& m) {
  RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : r.pivot_cols) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  QMatrix k(m.cols(), free_cols.size());
  for (std::size_t j = 0; j < free_cols.size(); ++j) {
    std::size_t fc = free_cols[j];
    k.at(fc, j) = 1;
    for (std::size_t pi = 0; pi < r.pivot_cols.size(); ++pi)
      k.at(r.pivot_cols[pi], j) = -r.mat.at(pi, fc);
  }
  return k;
}

QMatrix column_space_basis(const QMatrix& m) {
  RrefResult r = rref(m.transpose());
  QMatrix basis(m.rows(), r.pivot_cols.size());
  for (std::size_t i = 0; i < r.pivot_cols.size(); ++i)
    for (std::size_t c = 0; c < m.rows(); ++c) basis.at(c, i) = r.mat.at(i, c);
  return basis;
}

std::optional<std::vector<Rational>> solve(const QMatrix& m,
                                           const std::vector<Rational>& b) {
  if (b.size() != m.rows()) throw error("solve length mismatch");
  QMatrix rhs(m.rows(), 1);
  rhs.set_column(0, b);
  RrefResult r = rref(m.augment(rhs));
  // Inconsistent iff some pivot lands in the appended column.
  for (std::size_t p : r.pivot_cols)
    if (p == m.cols()) return std::nullopt;
  std::vector<Rational> x(m.cols(), Rational(0));
  for (std::size_t i = 0; i < r.pivot_cols.size(); ++i)
    x[r.pivot_cols[i]] = r.mat.at(i, m.cols());
  return x;
}

QMatrix inverse(const QMatrix& m) {
  if (m.rows() != m.cols()) throw error("inverse of non-square matrix");
  RrefResult r = rref(m.augment(QMatrix::identity(m.rows())));
  if (r.pivot_cols.size() != m.rows() ||
      (m.rows() > 0 && r.pivot_cols.back() >= m.rows()))
    throw error("inverse of singular matrix");
  QMatrix inv(m.rows(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.rows(); ++j)
      inv.at(i, j) = r.mat.at(i, m.rows() + j);
  return inv;
}

void SpanBuilder::reduce(std::vector<Rational>& v) const {
  for (const auto& [pivot, row] : rows_) {
    if (v[pivot] == 0) continue;
    Rational f = v[pivot];
    for (std::size_t c = 0; c < ambient_; ++c)
      if (row[c] != 0) v[c] -= f * row[c];
  }
}

bool SpanBuilder::add(const std::vector<Rational>& v) {
  if (v.size() != ambient_) throw error("SpanBuilder dimension mismatch");
  std::vector<Rational> w = v;
  reduce(w);
  std::size_t pivot = ambient_;
  for (std::size_t c = 0; c < ambient_; ++c)
    if (w[c] != 0) {
      pivot = c;
      break;
    }
  if (pivot == ambient_) return false;
  Rational inv = 1 / w[pivot];
  for (std::size_t c = 0; c < ambient_; ++c) w[c] *= inv;
  // Back-eliminate the new pivot from existing rows to stay fully reduced.
  for (auto& [p, row] : rows_) {
    Rational f = row[pivot];
    if (f == 0) continue;
    for (std::size_t c = 0; c < ambient_; ++c)
      if (w[c] != 0) row[c] -= f * w[c];
  }
  rows_.emplace_back(pivot, std::move(w));
  std::sort(rows_.begin(), rows_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return true;
}

bool SpanBuilder::contains(const std::vector<Rational>& v) const {
  if (v.size() != ambient_) throw error("SpanBuilder dimension mismatch");
  std::vector<Rational> w = v;
  reduce(w);
  return std::all_of(w.begin(), w.end(),
                     [](const Rational& x) { return x == 0; });
}

}  // namespace opal
