#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

namespace nielsen {

using Integer = boost::multiprecision::cpp_int;
using IntegerMatrix = std::vector<std::vector<Integer>>;

/// U * A * V = D with U, V unimodular and D diagonal (d_1 | d_2 | ...).
struct SmithForm {
  IntegerMatrix diagonal;      // same shape as A
  IntegerMatrix left;          // U, rows x rows
  IntegerMatrix left_inverse;  // U^-1
  IntegerMatrix right;         // V, cols x cols

  /// d_i for i < min(rows, cols); entries are >= 0.
  std::vector<Integer> invariant_factors() const;
};

/// Integer row/column reduction pivoting on the smallest nonzero entry.
SmithForm smith_normal_form(const IntegerMatrix& a);

IntegerMatrix integer_identity(std::size_t n);
IntegerMatrix integer_product(const IntegerMatrix& a, const IntegerMatrix& b);
IntegerMatrix to_integer_matrix(const std::vector<std::vector<std::int64_t>>& m);

/// Throws std::overflow_error when the value does not fit.
std::int64_t to_int64(const Integer& v);

/// Floor-style residue in [0, m) for m > 0.
Integer nonnegative_mod(const Integer& v, const Integer& m);

}  // namespace nielsen
