#include <random>

#include "doctest.h"
#include "nielsen/errors.hpp"
#include "nielsen/group_ring.hpp"
#include "support.hpp"

using namespace nielsen;
using testing_support::random_element;
using testing_support::random_ring_element;

namespace {

GroupElement t_pow(const Group& z, std::int64_t k) { return z.power(z.generator(1), k); }

int index_named(const Group& g, const std::string& name) {
  for (int i = 0; i < g.order(); ++i)
    if (g.element_names()[i] == name) return i;
  return -1;
}

}  // namespace

TEST_CASE("ring arithmetic") {
  Group z = Group::free_abelian(1);
  GroupRing zz = GroupRing::over(z);
  auto one = GroupRingElement::scalar(zz, 1);
  auto t = GroupRingElement::basis(zz, z.generator(1));
  CHECK((one + t) * (one - t) == one - GroupRingElement::basis(zz, t_pow(z, 2)));
  CHECK(t + GroupRingElement(zz) == t);
  CHECK((GroupRingElement::basis(zz, z.identity(), 2) - GroupRingElement::basis(zz, t_pow(z, 1), 3)).augment() ==
        Rational(-1));
  CHECK(GroupRingElement(zz).augment() == Rational(0));

  auto m6 = GroupRing(CoefficientRing::modular(6), Group::trivial());
  CHECK(GroupRingElement::scalar(m6, 4) * GroupRingElement::scalar(m6, 3) == GroupRingElement(m6));
}

TEST_CASE("convolution agrees with a naive double loop over the table") {
  Group s3 = Group::symmetric(3);
  GroupRing r = GroupRing::over(s3);
  const int g = index_named(s3, "(1 2)"), h = index_named(s3, "(1 3)");
  auto x = GroupRingElement::basis(r, GroupElement(g)) + GroupRingElement::basis(r, GroupElement(h));
  std::vector<std::int64_t> coeff(6, 0);
  for (int a : {g, h})
    for (int b : {g, h}) coeff[s3.table()[a][b]] += 1;
  auto sq = x * x;
  for (int i = 0; i < 6; ++i) CHECK(sq.coefficient(GroupElement(i)) == Rational(coeff[i]));
  CHECK(sq.augment() == Rational(4));

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    auto u = random_ring_element(rng, r), v = random_ring_element(rng, r);
    std::vector<Rational> naive(6, 0);
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b)
        naive[s3.table()[a][b]] += u.coefficient(GroupElement(a)) * v.coefficient(GroupElement(b));
    auto uv = u * v;
    for (int i = 0; i < 6; ++i) CHECK(uv.coefficient(GroupElement(i)) == naive[i]);
    CHECK(uv.augment() == u.augment() * v.augment());
  }
}

TEST_CASE("semiconjugacy examples") {
  Group z2 = Group::free_abelian(2);
  auto id2 = GroupHomomorphism::identity(z2);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    auto v = random_element(rng, z2);
    CHECK(semiconjugacy_class(v, id2) == v);
  }

  Group z = Group::free_abelian(1);
  auto cube = GroupHomomorphism::from_matrix(z, {{3}});
  CHECK(semiconjugacy_class(t_pow(z, 0), cube) == semiconjugacy_class(t_pow(z, 2), cube));
  CHECK(semiconjugacy_class(t_pow(z, 1), cube) != semiconjugacy_class(t_pow(z, 0), cube));
  CHECK(TwistedClasses(cube).class_count() == Integer(2));

  Group s3 = Group::symmetric(3);
  auto ids3 = GroupHomomorphism::identity(s3);
  CHECK(semiconjugacy_class(GroupElement(index_named(s3, "(1 2)")), ids3) ==
        semiconjugacy_class(GroupElement(index_named(s3, "(1 3)")), ids3));
  CHECK(TwistedClasses(ids3).class_count() == Integer(3));

  Group f2 = Group::free(2);
  auto idf = GroupHomomorphism::identity(f2);
  GroupElement w1 = f2.normal_form(std::vector<int>{2, 1, 1, -2});
  CHECK(semiconjugacy_class(w1, idf) == f2.normal_form(std::vector<int>{1, 1}));
  CHECK(semiconjugacy_class(f2.normal_form(std::vector<int>{2, 1}), idf) ==
        semiconjugacy_class(f2.normal_form(std::vector<int>{1, 2}), idf));

  auto phi = GroupHomomorphism::from_words(f2, f2, {{1, 2}, {2}});
  CHECK(!TwistedClasses::supported(phi));
  CHECK_THROWS_AS(semiconjugacy_class(f2.generator(1), phi), UnsupportedReduction);
}

TEST_CASE("abelian classes match the lattice oracle") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> entry(-4, 4);
  Group z2 = Group::free_abelian(2);
  int checked = 0;
  while (checked < 200) {
    std::vector<std::vector<std::int64_t>> a{{entry(rng), entry(rng)}, {entry(rng), entry(rng)}};
    const std::int64_t m00 = 1 - a[0][0], m01 = -a[0][1], m10 = -a[1][0], m11 = 1 - a[1][1];
    const std::int64_t det = m00 * m11 - m01 * m10;
    if (det == 0) continue;
    ++checked;
    auto phi = GroupHomomorphism::from_matrix(z2, a);
    TwistedClasses classes(phi);
    CHECK(classes.class_count() == Integer(det < 0 ? -det : det));
    for (int k = 0; k < 20; ++k) {
      auto v = random_element(rng, z2), w = random_element(rng, z2);
      const std::int64_t d0 = v.exponents()[0] - w.exponents()[0], d1 = v.exponents()[1] - w.exponents()[1];
      // v ~ w iff adj(I - A)(v - w) is divisible by det
      const bool related = (m11 * d0 - m01 * d1) % det == 0 && (-m10 * d0 + m00 * d1) % det == 0;
      CHECK((classes.representative(v) == classes.representative(w)) == related);
    }
  }
}

TEST_CASE("semiconjugacy is idempotent and constant on orbits") {
  std::mt19937_64 rng(23);
  Group z2 = Group::free_abelian(2), s3 = Group::symmetric(3), f2 = Group::free(2);
  std::vector<GroupHomomorphism> phis{GroupHomomorphism::from_matrix(z2, {{2, 1}, {1, 1}}),
                                      GroupHomomorphism::from_matrix(z2, {{1, 0}, {0, 1}}),
                                      GroupHomomorphism::from_matrix(z2, {{0, 2}, {1, 3}}),
                                      GroupHomomorphism::identity(s3), GroupHomomorphism::identity(f2)};
  // a non-identity automorphism of S3: conjugation by a transposition
  {
    const int c = index_named(s3, "(1 2)");
    std::vector<GroupElement> images;
    for (int x = 0; x < 6; ++x) images.emplace_back(s3.table()[s3.table()[c][x]][c]);
    phis.emplace_back(s3, s3, images);
  }
  for (const auto& phi : phis) {
    TwistedClasses classes(phi);
    const Group& g = phi.source();
    for (int i = 0; i < 300; ++i) {
      auto a = random_element(rng, g), b = random_element(rng, g);
      auto rep = classes.representative(a);
      CHECK(classes.representative(rep) == rep);
      auto moved = g.multiply(g.multiply(b, a), phi(g.invert(b)));
      CHECK(classes.representative(moved) == rep);
    }
  }
}

TEST_CASE("shadow projection") {
  Group z2 = Group::free_abelian(2);
  GroupRing r = GroupRing::over(z2);
  auto id = GroupHomomorphism::identity(z2);
  auto g = z2.generator(1), h = z2.generator(2);
  auto x = GroupRingElement::basis(r, g, 2) - GroupRingElement::basis(r, h, 3);
  auto s = shadow_project(x, id);
  CHECK(s.reduced());
  CHECK(s.coefficient_of_class(g) == Rational(2));
  CHECK(s.coefficient_of_class(h) == Rational(-3));

  Group z = Group::free_abelian(1);
  auto cube = GroupHomomorphism::from_matrix(z, {{3}});
  GroupRing rz = GroupRing::over(z);
  auto y = GroupRingElement::basis(rz, t_pow(z, 0)) + GroupRingElement::basis(rz, t_pow(z, 2));
  auto sy = shadow_project(y, cube);
  CHECK(sy.terms().size() == 1);
  CHECK(sy.coefficient_of_class(t_pow(z, 0)) == Rational(2));

  Group f2 = Group::free(2);
  auto phi = GroupHomomorphism::from_words(f2, f2, {{1, 2}, {2}});
  auto sf = shadow_project(GroupRingElement::basis(GroupRing::over(f2), f2.generator(1)), phi);
  CHECK(!sf.reduced());
  CHECK_THROWS_AS(sf.nonzero_classes(), FormalShadow);
}

TEST_CASE("shadow trace-function properties") {
  std::mt19937_64 rng(29);
  Group z2 = Group::free_abelian(2), s3 = Group::symmetric(3), f2 = Group::free(2), c6 = Group::cyclic(6);
  struct Case {
    GroupRing ring;
    GroupHomomorphism phi;
  };
  std::vector<Case> cases{
      {GroupRing::over(z2), GroupHomomorphism::identity(z2)},
      {GroupRing::over(s3), GroupHomomorphism::identity(s3)},
      {GroupRing::over(f2), GroupHomomorphism::identity(f2)},
      {GroupRing(CoefficientRing::modular(6), c6), GroupHomomorphism::identity(c6)},
  };
  for (const auto& c : cases) {
    auto classes = std::make_shared<const TwistedClasses>(c.phi);
    for (int i = 0; i < 10000 / static_cast<int>(cases.size()); ++i) {
      auto x = random_ring_element(rng, c.ring), y = random_ring_element(rng, c.ring);
      CHECK(shadow_project(x * y, classes) == shadow_project(y * x, classes));
      CHECK(shadow_project(x, classes).augment() == x.augment());
    }
  }
  std::vector<Case> twisted{
      {GroupRing::over(z2), GroupHomomorphism::from_matrix(z2, {{2, 1}, {1, 1}})},
      {GroupRing::over(z2), GroupHomomorphism::from_matrix(z2, {{3, 0}, {1, -2}})},
      {GroupRing::over(c6), GroupHomomorphism::from_words(c6, c6, {{}, {6}, {5}, {4}, {3}, {2}})},
  };
  for (const auto& c : twisted) {
    auto classes = std::make_shared<const TwistedClasses>(c.phi);
    for (int i = 0; i < 2000; ++i) {
      auto x = random_ring_element(rng, c.ring), y = random_ring_element(rng, c.ring);
      CHECK(shadow_project(x * y.twisted(c.phi), classes) == shadow_project(y * x, classes));
    }
  }
}

TEST_CASE("mod-K projection") {
  Group z = Group::free_abelian(1);
  auto cube = GroupHomomorphism::from_matrix(z, {{3}});
  GroupRing rz = GroupRing::over(z);
  auto f1 = GroupRingElement::scalar(rz, 1) + GroupRingElement::basis(rz, t_pow(z, 1)) +
            GroupRingElement::basis(rz, t_pow(z, 2));
  auto trace = shadow_project(GroupRingElement::scalar(rz, 1), cube) - shadow_project(f1, cube);
  auto collapse = GroupHomomorphism(z, Group::trivial(), {Group::trivial().identity()});
  auto lefschetz = mod_k_project(trace, collapse);
  CHECK(lefschetz.terms().size() == 1);
  CHECK(lefschetz.coefficient_of_class(Group::trivial().identity()) == Rational(1 - 3));

  Group f2 = Group::free(2), z2 = Group::free_abelian(2);
  auto ab = GroupHomomorphism::from_words(f2, z2, {{1}, {2}});
  auto comm = f2.normal_form(std::vector<int>{1, 2, -1, -2});
  ShadowElement s(GroupRing::over(f2), GroupHomomorphism::identity(f2));
  s.add(comm, 1);
  auto pushed = mod_k_project(s, ab);
  CHECK(pushed.coefficient_of_class(z2.identity()) == Rational(1));

  // phi(a) = ab, phi(b) = b on F2 descends to [[1,0],[1,1]] on Z^2
  auto phi = GroupHomomorphism::from_words(f2, f2, {{1, 2}, {2}});
  CHECK(descend_endomorphism(phi, ab).abelian_matrix() == std::vector<std::vector<std::int64_t>>{{1, 0}, {1, 1}});

  // onto Z/2 by a -> s, b -> e; phi(a) = b does not preserve the kernel
  Group c2 = Group::cyclic(2);
  auto q = GroupHomomorphism(f2, c2, {GroupElement(1), GroupElement(0)});
  auto swap = GroupHomomorphism::from_words(f2, f2, {{2}, {1}});
  CHECK_THROWS_AS(descend_endomorphism(swap, q), ValidationError);
  auto not_onto = GroupHomomorphism(f2, c2, {GroupElement(0), GroupElement(0)});
  CHECK_THROWS_AS(descend_endomorphism(phi, not_onto), ValidationError);

  std::mt19937_64 rng(31);
  for (int i = 0; i < 500; ++i) {
    auto x = random_ring_element(rng, GroupRing::over(f2));
    auto sx = shadow_project(x, phi);
    CHECK(mod_k_project(sx, ab).augment() == x.augment());
    CHECK(mod_k_project(sx, q).augment() == x.augment());
  }
}
