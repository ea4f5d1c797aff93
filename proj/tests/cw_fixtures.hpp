#pragma once

#include <cstdint>
#include <vector>

#include "nielsen/cw.hpp"

namespace testing_support {

using nielsen::CWComplex2;
using nielsen::CWSelfMap;
using nielsen::EdgePath;
using nielsen::Group;
using nielsen::GroupTarget;

inline EdgePath repeated(const EdgePath& loop, std::int64_t times) {
  EdgePath out;
  for (std::int64_t i = 0; i < (times < 0 ? -times : times); ++i)
    if (times > 0)
      out.insert(out.end(), loop.begin(), loop.end());
    else
      for (auto it = loop.rbegin(); it != loop.rend(); ++it) out.push_back(-*it);
  return out;
}

inline CWComplex2 cw_circle() { return {1, {{0, 0}}, {}, 0}; }

inline GroupTarget circle_target() {
  Group z = Group::free_abelian(1);
  return {z, {z.generator(1)}};
}

inline CWSelfMap circle_degree(std::int64_t d) { return {{0}, {repeated({1}, d)}, EdgePath{}, {}}; }

inline CWComplex2 cw_torus() { return {1, {{0, 0}, {0, 0}}, {{1, 2, -1, -2}}, 0}; }

inline GroupTarget torus_target() {
  Group z2 = Group::free_abelian(2);
  return {z2, {z2.generator(1), z2.generator(2)}};
}

/// Linear torus map; column j of `a` is the image of the j-th loop.
inline CWSelfMap torus_linear(const std::vector<std::vector<std::int64_t>>& a) {
  CWSelfMap f{{0}, {}, EdgePath{}, {}};
  for (int j = 0; j < 2; ++j) {
    EdgePath img = repeated({1}, a[0][j]);
    EdgePath b = repeated({2}, a[1][j]);
    img.insert(img.end(), b.begin(), b.end());
    f.edge_images.push_back(img);
  }
  return f;
}

/// Torus as an n x 1 grid of squares: horizontal edges a_i : v_i -> v_{i+1}
/// (indices 1..n) and vertical loops b_i at v_i (indices n+1..2n).
inline CWComplex2 grid_torus(std::size_t n, std::size_t base = 0) {
  CWComplex2 x{n, {}, {}, base};
  for (std::size_t i = 0; i < n; ++i) x.edges.push_back({i, (i + 1) % n});
  for (std::size_t i = 0; i < n; ++i) x.edges.push_back({i, i});
  for (std::size_t i = 0; i < n; ++i) {
    const int a = static_cast<int>(i) + 1;
    const int b = static_cast<int>(n + i) + 1;
    const int b_next = static_cast<int>(n + (i + 1) % n) + 1;
    x.two_cells.push_back({a, b_next, -a, -b});
  }
  return x;
}

inline GroupTarget grid_target(std::size_t n) {
  Group z2 = Group::free_abelian(2);
  GroupTarget t{z2, {}};
  for (std::size_t i = 0; i < n; ++i) t.edge_labels.push_back(i == 0 ? z2.generator(1) : z2.identity());
  for (std::size_t i = 0; i < n; ++i) t.edge_labels.push_back(z2.generator(2));
  return t;
}

/// Linear map on the grid torus collapsing every vertex onto v_0.
inline CWSelfMap grid_linear(std::size_t n, const std::vector<std::vector<std::int64_t>>& a) {
  EdgePath around;
  for (std::size_t i = 0; i < n; ++i) around.push_back(static_cast<int>(i) + 1);
  const EdgePath up{static_cast<int>(n) + 1};
  auto image = [&](int j) {
    EdgePath img = repeated(around, a[0][j]);
    EdgePath b = repeated(up, a[1][j]);
    img.insert(img.end(), b.begin(), b.end());
    return img;
  };
  CWSelfMap f{std::vector<std::size_t>(n, 0), {}, {}, {}};
  for (std::size_t i = 0; i < n; ++i) f.edge_images.push_back(i == 0 ? image(0) : EdgePath{});
  for (std::size_t i = 0; i < n; ++i) f.edge_images.push_back(image(1));
  return f;
}

}  // namespace testing_support
