#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nielsen/rational.hpp"

namespace nielsen {

/// Dense exact rational matrix, row-major.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  static QMatrix identity(std::size_t n);
  static QMatrix from_rows(const std::vector<std::vector<Rational>>& rows, std::size_t cols = 0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  std::vector<Rational> row(std::size_t i) const;

  bool is_zero() const;
  Rational trace() const;
  QMatrix transposed() const;

  friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
  friend QMatrix operator+(const QMatrix& a, const QMatrix& b);
  friend QMatrix operator-(const QMatrix& a, const QMatrix& b);
  friend bool operator==(const QMatrix&, const QMatrix&) = default;

  std::string format() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> a_;
};

/// Reduced row echelon form; pivot columns in increasing order.
struct RowEchelon {
  QMatrix reduced;
  std::vector<std::size_t> pivots;
};

RowEchelon row_echelon(const QMatrix& m);
std::size_t rank(const QMatrix& m);

/// Rows spanning {x : M x = 0}, one per free column, in column order.
QMatrix nullspace(const QMatrix& m);
/// Rows spanning {v : v M = 0}.
QMatrix left_nullspace(const QMatrix& m);
/// Nonzero rows of the reduced echelon form of m: a basis of its row space.
QMatrix row_space(const QMatrix& m);
/// Some x with x B = v, or nullopt.
std::optional<std::vector<Rational>> solve_left(const QMatrix& b, const std::vector<Rational>& v);

/// Rows of a stacked over rows of b.
QMatrix stack(const QMatrix& a, const QMatrix& b);

}  // namespace nielsen
