#include "nielsen/smith.hpp"

#include <limits>
#include <stdexcept>
#include <utility>

namespace nielsen {
namespace {

// Row and column operations applied to the working matrix are mirrored
// into U, U^-1 and V so that U * A * V stays equal to the working matrix.
struct Reducer {
  IntegerMatrix d, u, u_inv, v;
  std::size_t rows, cols;

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    std::swap(d[i], d[j]);
    std::swap(u[i], u[j]);
    for (auto& row : u_inv) std::swap(row[i], row[j]);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (auto& row : d) std::swap(row[i], row[j]);
    for (auto& row : v) std::swap(row[i], row[j]);
  }
  // row_i += k * row_j
  void add_row(std::size_t i, std::size_t j, const Integer& k) {
    if (k == 0) return;
    for (std::size_t c = 0; c < cols; ++c) d[i][c] += k * d[j][c];
    for (std::size_t c = 0; c < rows; ++c) u[i][c] += k * u[j][c];
    // U' = E U, so U'^-1 = U^-1 E^-1: col_j -= k * col_i
    for (std::size_t r = 0; r < rows; ++r) u_inv[r][j] -= k * u_inv[r][i];
  }
  // col_i += k * col_j
  void add_col(std::size_t i, std::size_t j, const Integer& k) {
    if (k == 0) return;
    for (std::size_t r = 0; r < rows; ++r) d[r][i] += k * d[r][j];
    for (std::size_t r = 0; r < cols; ++r) v[r][i] += k * v[r][j];
  }
  void negate_col(std::size_t i) {
    for (auto& row : d) row[i] = -row[i];
    for (auto& row : v) row[i] = -row[i];
  }

  // Returns false when the trailing block starting at t is zero.
  bool pivot_to(std::size_t t) {
    std::size_t best_r = rows, best_c = cols;
    Integer best;
    for (std::size_t r = t; r < rows; ++r)
      for (std::size_t c = t; c < cols; ++c) {
        if (d[r][c] == 0) continue;
        Integer a = abs(d[r][c]);
        if (best_r == rows || a < best) {
          best = a;
          best_r = r;
          best_c = c;
        }
      }
    if (best_r == rows) return false;
    swap_rows(t, best_r);
    swap_cols(t, best_c);
    return true;
  }

  void reduce() {
    std::size_t n = std::min(rows, cols);
    for (std::size_t t = 0; t < n; ++t) {
      if (!pivot_to(t)) break;
      for (;;) {
        bool dirty = false;
        for (std::size_t r = t + 1; r < rows; ++r) {
          if (d[r][t] == 0) continue;
          Integer q = d[r][t] / d[t][t];
          add_row(r, t, -q);
          if (d[r][t] != 0) dirty = true;
        }
        for (std::size_t c = t + 1; c < cols; ++c) {
          if (d[t][c] == 0) continue;
          Integer q = d[t][c] / d[t][t];
          add_col(c, t, -q);
          if (d[t][c] != 0) dirty = true;
        }
        if (!dirty) {
          // Divisibility: fold any entry not divisible by the pivot into row t.
          bool fixed = true;
          for (std::size_t r = t + 1; r < rows && fixed; ++r)
            for (std::size_t c = t + 1; c < cols; ++c)
              if (d[r][c] % d[t][t] != 0) {
                add_row(t, r, 1);
                fixed = false;
                break;
              }
          if (fixed) break;
        }
        pivot_to(t);
      }
      if (d[t][t] < 0) negate_col(t);
    }
  }
};

}  // namespace

std::vector<Integer> SmithForm::invariant_factors() const {
  std::vector<Integer> out;
  std::size_t n = diagonal.empty() ? 0 : std::min(diagonal.size(), diagonal[0].size());
  for (std::size_t i = 0; i < n; ++i) out.push_back(diagonal[i][i]);
  return out;
}

IntegerMatrix integer_identity(std::size_t n) {
  IntegerMatrix m(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntegerMatrix integer_product(const IntegerMatrix& a, const IntegerMatrix& b) {
  std::size_t inner = b.size();
  std::size_t cols = inner == 0 ? 0 : b[0].size();
  IntegerMatrix out(a.size(), std::vector<Integer>(cols, 0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != inner) throw std::invalid_argument("integer_product: shape mismatch");
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  }
  return out;
}

IntegerMatrix to_integer_matrix(const std::vector<std::vector<std::int64_t>>& m) {
  IntegerMatrix out;
  out.reserve(m.size());
  for (const auto& row : m) out.emplace_back(row.begin(), row.end());
  return out;
}

SmithForm smith_normal_form(const IntegerMatrix& a) {
  Reducer red;
  red.rows = a.size();
  red.cols = red.rows == 0 ? 0 : a[0].size();
  for (const auto& row : a)
    if (row.size() != red.cols) throw std::invalid_argument("smith_normal_form: ragged matrix");
  red.d = a;
  red.u = integer_identity(red.rows);
  red.u_inv = integer_identity(red.rows);
  red.v = integer_identity(red.cols);
  red.reduce();
  return SmithForm{std::move(red.d), std::move(red.u), std::move(red.u_inv), std::move(red.v)};
}

std::int64_t to_int64(const Integer& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("integer does not fit in 64 bits");
  return static_cast<std::int64_t>(v);
}

Integer nonnegative_mod(const Integer& v, const Integer& m) {
  Integer r = v % m;
  if (r < 0) r += m;
  return r;
}

}  // namespace nielsen
