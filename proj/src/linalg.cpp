#include "nielsen/linalg.hpp"

#include "nielsen/errors.hpp"

namespace nielsen {

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::from_rows(const std::vector<std::vector<Rational>>& rows, std::size_t cols) {
  if (!rows.empty()) cols = rows[0].size();
  QMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw ShapeMismatch("ragged rational matrix");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::vector<Rational> QMatrix::row(std::size_t i) const {
  return {a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
          a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

bool QMatrix::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

Rational QMatrix::trace() const {
  if (rows_ != cols_) throw ShapeMismatch("trace of a non-square matrix");
  Rational s = 0;
  for (std::size_t i = 0; i < rows_; ++i) s += (*this)(i, i);
  return s;
}

QMatrix QMatrix::transposed() const {
  QMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols_ != b.rows_) throw ShapeMismatch("rational matrix product shape mismatch");
  QMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += x * b(k, j);
    }
  return out;
}

QMatrix operator+(const QMatrix& a, const QMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeMismatch("rational matrix sum shape mismatch");
  QMatrix out = a;
  for (std::size_t k = 0; k < out.a_.size(); ++k) out.a_[k] += b.a_[k];
  return out;
}

QMatrix operator-(const QMatrix& a, const QMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeMismatch("rational matrix difference shape mismatch");
  QMatrix out = a;
  for (std::size_t k = 0; k < out.a_.size(); ++k) out.a_[k] -= b.a_[k];
  return out;
}

std::string QMatrix::format() const {
  std::string out = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    out += i ? ", [" : "[";
    for (std::size_t j = 0; j < cols_; ++j) out += (j ? ", " : "") + (*this)(i, j).to_string();
    out += "]";
  }
  return out + "]";
}

RowEchelon row_echelon(const QMatrix& m) {
  QMatrix r = m;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < r.cols() && row < r.rows(); ++col) {
    // leftmost column first; among candidate rows prefer the smallest denominator
    std::size_t best = r.rows();
    for (std::size_t i = row; i < r.rows(); ++i) {
      if (r(i, col).is_zero()) continue;
      if (best == r.rows() || r(i, col).den() < r(best, col).den()) best = i;
    }
    if (best == r.rows()) continue;
    if (best != row)
      for (std::size_t j = 0; j < r.cols(); ++j) std::swap(r(best, j), r(row, j));
    const Rational inv = Rational(1) / r(row, col);
    for (std::size_t j = 0; j < r.cols(); ++j) r(row, j) *= inv;
    for (std::size_t i = 0; i < r.rows(); ++i) {
      if (i == row || r(i, col).is_zero()) continue;
      const Rational k = r(i, col);
      for (std::size_t j = 0; j < r.cols(); ++j) r(i, j) -= k * r(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return {r, pivots};
}

std::size_t rank(const QMatrix& m) { return row_echelon(m).pivots.size(); }

QMatrix nullspace(const QMatrix& m) {
  RowEchelon e = row_echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> rows;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> x(m.cols(), 0);
    x[free] = 1;
    for (std::size_t k = 0; k < e.pivots.size(); ++k) x[e.pivots[k]] = -e.reduced(k, free);
    rows.push_back(std::move(x));
  }
  return QMatrix::from_rows(rows, m.cols());
}

QMatrix left_nullspace(const QMatrix& m) { return nullspace(m.transposed()); }

QMatrix row_space(const QMatrix& m) {
  RowEchelon e = row_echelon(m);
  QMatrix out(e.pivots.size(), m.cols());
  for (std::size_t i = 0; i < e.pivots.size(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = e.reduced(i, j);
  return out;
}

std::optional<std::vector<Rational>> solve_left(const QMatrix& b, const std::vector<Rational>& v) {
  if (v.size() != b.cols()) throw ShapeMismatch("solve_left: vector length mismatch");
  // x B = v  <=>  B^T x^T = v^T; reduce the augmented system [B^T | v]
  QMatrix aug(b.cols(), b.rows() + 1);
  for (std::size_t i = 0; i < b.cols(); ++i) {
    for (std::size_t j = 0; j < b.rows(); ++j) aug(i, j) = b(j, i);
    aug(i, b.rows()) = v[i];
  }
  RowEchelon e = row_echelon(aug);
  std::vector<Rational> x(b.rows(), 0);
  for (std::size_t k = 0; k < e.pivots.size(); ++k) {
    if (e.pivots[k] == b.rows()) return std::nullopt;
    x[e.pivots[k]] = e.reduced(k, b.rows());
  }
  return x;
}

QMatrix stack(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.cols() && a.rows() && b.rows()) throw ShapeMismatch("stack: column count mismatch");
  const std::size_t cols = a.rows() ? a.cols() : b.cols();
  QMatrix out(a.rows() + b.rows(), cols);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < cols; ++j) out(a.rows() + i, j) = b(i, j);
  return out;
}

}  // namespace nielsen
