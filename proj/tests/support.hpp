#pragma once

#include <random>
#include <vector>

#include "nielsen/group.hpp"

namespace testing_support {

inline nielsen::RawWord random_raw_word(std::mt19937_64& rng, int rank, int max_length) {
  nielsen::RawWord w;
  if (rank == 0) return w;
  std::uniform_int_distribution<int> len(0, max_length);
  std::uniform_int_distribution<int> gen(1, rank);
  std::bernoulli_distribution sign(0.5);
  const int n = len(rng);
  for (int i = 0; i < n; ++i) w.push_back(sign(rng) ? gen(rng) : -gen(rng));
  return w;
}

inline nielsen::GroupElement random_element(std::mt19937_64& rng, const nielsen::Group& g, int max_length = 6) {
  if (g.kind() == nielsen::GroupKind::finite) {
    std::uniform_int_distribution<int> pick(0, g.order() - 1);
    return nielsen::GroupElement(pick(rng));
  }
  return g.normal_form(random_raw_word(rng, g.rank(), max_length));
}

/// Permutation composition (s*t)(i) = s(t(i)), used as an independent oracle
/// for the symmetric group tables.
inline std::vector<int> compose(const std::vector<int>& s, const std::vector<int>& t) {
  std::vector<int> out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = s[t[i]];
  return out;
}

}  // namespace testing_support

#include "nielsen/group_ring.hpp"

namespace testing_support {

inline nielsen::GroupRingElement random_ring_element(std::mt19937_64& rng, const nielsen::GroupRing& ring,
                                                     int max_terms = 3, int max_coeff = 3) {
  nielsen::GroupRingElement x(ring);
  std::uniform_int_distribution<int> terms(0, max_terms);
  std::uniform_int_distribution<int> coeff(-max_coeff, max_coeff);
  const int n = terms(rng);
  for (int i = 0; i < n; ++i) x.add_term(random_element(rng, ring.group(), 4), coeff(rng));
  return x;
}

}  // namespace testing_support
