#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nielsen/group_ring.hpp"

namespace nielsen {

/// Dense matrix over a group ring K[pi], row-major.
class RingMatrix {
 public:
  RingMatrix(GroupRing ring, std::size_t rows, std::size_t cols);
  static RingMatrix identity(const GroupRing& ring, std::size_t n);
  /// Throws ShapeMismatch on ragged input.
  static RingMatrix from_rows(const GroupRing& ring, const std::vector<std::vector<GroupRingElement>>& rows);
  static RingMatrix from_integers(const GroupRing& ring, const std::vector<std::vector<std::int64_t>>& rows);

  const GroupRing& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  const GroupRingElement& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  GroupRingElement& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

  bool is_zero() const;
  /// Sum of the diagonal entries.
  GroupRingElement diagonal_sum() const;

  RingMatrix& operator+=(const RingMatrix& rhs);
  RingMatrix& operator-=(const RingMatrix& rhs);
  friend RingMatrix operator+(RingMatrix a, const RingMatrix& b) { return a += b; }
  friend RingMatrix operator-(RingMatrix a, const RingMatrix& b) { return a -= b; }
  friend RingMatrix operator*(const RingMatrix& a, const RingMatrix& b);

  RingMatrix transposed() const;
  /// phi applied entrywise.
  RingMatrix twisted(const GroupHomomorphism& phi) const;
  /// Group involution applied entrywise.
  RingMatrix involuted() const;
  RingMatrix scaled(const Rational& c) const;

  std::string format() const;

  friend bool operator==(const RingMatrix& a, const RingMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.ring_ == b.ring_ && a.entries_ == b.entries_;
  }

 private:
  GroupRing ring_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<GroupRingElement> entries_;
};

}  // namespace nielsen
