#pragma once

#include <random>

#include "nielsen/chain.hpp"
#include "nielsen/module_bicategory.hpp"

namespace testing_support {

/// Cellular chains of the circle over Z[t] with the lift of a degree d map.
inline std::pair<nielsen::TwistedChainComplex, nielsen::TwistedChainMap> circle_map(std::int64_t d) {
  using namespace nielsen;
  Group z = Group::free_abelian(1);
  GroupRing r = GroupRing::over(z);
  auto t = [&](std::int64_t k) { return GroupRingElement::basis(r, z.power(z.generator(1), k)); };
  RingMatrix d1(r, 1, 1), f0 = RingMatrix::identity(r, 1), f1(r, 1, 1);
  d1(0, 0) = t(1) - t(0);
  for (std::int64_t k = 0; k < d; ++k) f1(0, 0) += t(k);
  for (std::int64_t k = d; k < 0; ++k) f1(0, 0) -= t(k);
  return {TwistedChainComplex{r, {1, 1}, {d1}}, TwistedChainMap{GroupHomomorphism::from_matrix(z, {{d}}), {f0, f1}}};
}

/// Torus chains over Z[a, b] with the lift of a -> a^2 b, b -> a b.
inline std::pair<nielsen::TwistedChainComplex, nielsen::TwistedChainMap> torus_map() {
  using namespace nielsen;
  Group z2 = Group::free_abelian(2);
  GroupRing r = GroupRing::over(z2);
  auto mono = [&](std::int64_t i, std::int64_t j) {
    return GroupRingElement::basis(r, GroupElement(std::vector<std::int64_t>{i, j}));
  };
  auto one = mono(0, 0), a = mono(1, 0), b = mono(0, 1);
  RingMatrix d1(r, 2, 1), d2(r, 1, 2);
  d1(0, 0) = a - one;
  d1(1, 0) = b - one;
  d2(0, 0) = one - b;
  d2(0, 1) = a - one;
  RingMatrix f1(r, 2, 2), f2(r, 1, 1);
  f1(0, 0) = one + a;
  f1(0, 1) = mono(2, 0);
  f1(1, 0) = one;
  f1(1, 1) = a;
  f2(0, 0) = a;
  return {TwistedChainComplex{r, {1, 2, 1}, {d1, d2}},
          TwistedChainMap{GroupHomomorphism::from_matrix(z2, {{2, 1}, {1, 1}}), {RingMatrix::identity(r, 1), f1, f2}}};
}

/// Change of basis by invertible P_k: d'_k = P_k d_k P_{k-1}^-1, F'_k = P_k^phi F_k P_k^-1.
inline std::pair<nielsen::TwistedChainComplex, nielsen::TwistedChainMap> rebased(
    const nielsen::TwistedChainComplex& c, const nielsen::TwistedChainMap& f, std::mt19937_64& rng) {
  using namespace nielsen;
  ModuleBicategory b(c.ring);
  ModuleSampler sampler(b, {3, 1, 1});
  std::vector<std::pair<RingMatrix, RingMatrix>> p;
  for (auto n : c.ranks) p.push_back(sampler.random_invertible(rng, n));
  TwistedChainComplex c2 = c;
  TwistedChainMap f2 = f;
  for (std::size_t k = 1; k < c.ranks.size(); ++k)
    c2.boundaries[k - 1] = p[k].first * c.boundaries[k - 1] * p[k - 1].second;
  for (std::size_t k = 0; k < c.ranks.size(); ++k)
    f2.matrices[k] = p[k].first.twisted(f.phi) * f.matrices[k] * p[k].second;
  return {c2, f2};
}

}  // namespace testing_support
