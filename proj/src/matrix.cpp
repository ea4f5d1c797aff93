#include "nielsen/matrix.hpp"

#include "nielsen/errors.hpp"

namespace nielsen {

RingMatrix::RingMatrix(GroupRing ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), entries_(rows * cols, GroupRingElement(ring_)) {}

RingMatrix RingMatrix::identity(const GroupRing& ring, std::size_t n) {
  RingMatrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = GroupRingElement::scalar(ring, 1);
  return m;
}

RingMatrix RingMatrix::from_rows(const GroupRing& ring, const std::vector<std::vector<GroupRingElement>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows[0].size();
  RingMatrix m(ring, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw ShapeMismatch("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) {
      if (!(rows[i][j].ring() == ring)) throw ModelMismatch("matrix entry over a different ring");
      m(i, j) = rows[i][j];
    }
  }
  return m;
}

RingMatrix RingMatrix::from_integers(const GroupRing& ring, const std::vector<std::vector<std::int64_t>>& rows) {
  std::vector<std::vector<GroupRingElement>> out;
  for (const auto& row : rows) {
    out.emplace_back();
    for (auto v : row) out.back().push_back(GroupRingElement::scalar(ring, v));
  }
  return from_rows(ring, out);
}

bool RingMatrix::is_zero() const {
  for (const auto& x : entries_)
    if (!x.is_zero()) return false;
  return true;
}

GroupRingElement RingMatrix::diagonal_sum() const {
  if (!is_square()) throw ShapeMismatch("trace of a non-square matrix");
  GroupRingElement s(ring_);
  for (std::size_t i = 0; i < rows_; ++i) s += (*this)(i, i);
  return s;
}

RingMatrix& RingMatrix::operator+=(const RingMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw ShapeMismatch("matrix sum of different shapes");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += rhs.entries_[k];
  return *this;
}

RingMatrix& RingMatrix::operator-=(const RingMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw ShapeMismatch("matrix difference of different shapes");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= rhs.entries_[k];
  return *this;
}

RingMatrix operator*(const RingMatrix& a, const RingMatrix& b) {
  if (a.cols_ != b.rows_)
    throw ShapeMismatch("matrix product " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) + " by " +
                        std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
  if (!(a.ring_ == b.ring_)) throw ModelMismatch("matrix product over different rings");
  RingMatrix out(a.ring_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const auto& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero()) out(i, j) += x * b(k, j);
    }
  return out;
}

RingMatrix RingMatrix::transposed() const {
  RingMatrix out(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

RingMatrix RingMatrix::twisted(const GroupHomomorphism& phi) const {
  RingMatrix out(ring_, rows_, cols_);
  for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = entries_[k].twisted(phi);
  return out;
}

RingMatrix RingMatrix::involuted() const {
  RingMatrix out(ring_, rows_, cols_);
  for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = entries_[k].involution();
  return out;
}

RingMatrix RingMatrix::scaled(const Rational& c) const {
  RingMatrix out(ring_, rows_, cols_);
  for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = entries_[k].scaled(c);
  return out;
}

std::string RingMatrix::format() const {
  std::string out = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    out += i ? ", [" : "[";
    for (std::size_t j = 0; j < cols_; ++j) out += (j ? ", " : "") + (*this)(i, j).format();
    out += "]";
  }
  return out + "]";
}

}  // namespace nielsen
