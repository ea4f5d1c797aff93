#include <algorithm>
#include <random>

#include "doctest.h"
#include "nielsen/errors.hpp"
#include "nielsen/group.hpp"
#include "support.hpp"

using namespace nielsen;
using testing_support::random_element;
using testing_support::random_raw_word;

TEST_CASE("normal forms") {
  Group f2 = Group::free(2);
  std::vector<int> raw{1, 2, -2, 1};
  CHECK(f2.format(f2.normal_form(raw)) == "a^2");
  CHECK(f2.normal_form(raw).word() == FreeWord{{1, 2}});

  Group z2 = Group::free_abelian(2);
  std::vector<int> raw2{1, 2, -1};
  CHECK(z2.normal_form(raw2).exponents() == std::vector<std::int64_t>{0, 1});

  CHECK_THROWS_AS(f2.normal_form(std::vector<int>{3}), ParseError);
  CHECK_THROWS_AS(f2.normal_form(std::vector<int>{0}), ParseError);
}

TEST_CASE("symmetric group table agrees with permutation composition") {
  Group s3 = Group::symmetric(3);
  REQUIRE(s3.order() == 6);
  std::vector<std::vector<int>> perms;
  std::vector<int> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  auto index_of = [&](const std::vector<int>& q) {
    return static_cast<int>(std::find(perms.begin(), perms.end(), q) - perms.begin());
  };
  // [r, s, r] folded left to right
  const int r = 3, s = 2;
  auto folded = testing_support::compose(testing_support::compose(perms[r], perms[s]), perms[r]);
  CHECK(s3.normal_form(std::vector<int>{r + 1, s + 1, r + 1}).index() == index_of(folded));

  int t12 = -1, t13 = -1;
  for (int i = 0; i < 6; ++i) {
    if (s3.element_names()[i] == "(1 2)") t12 = i;
    if (s3.element_names()[i] == "(1 3)") t13 = i;
  }
  REQUIRE(t12 >= 0);
  REQUIRE(t13 >= 0);
  GroupElement prod = s3.multiply(GroupElement(t12), GroupElement(t13));
  CHECK(prod.index() == index_of(testing_support::compose(perms[t12], perms[t13])));
  CHECK(s3.element_names()[prod.index()].size() == 7);  // a 3-cycle "(a b c)"
  for (int i = 0; i < 6; ++i) {
    int inv = -1;
    for (int j = 0; j < 6; ++j)
      if (s3.table()[i][j] == s3.identity_index()) inv = j;
    CHECK(s3.invert(GroupElement(i)).index() == inv);
  }
}

TEST_CASE("finite table validation") {
  CHECK_THROWS_AS(Group::finite({"e", "x"}, {{0, 1}, {1, 1}}), ValidationError);
  CHECK_THROWS_AS(Group::finite({"e", "x", "y"}, {{0, 1, 2}, {1, 2, 0}, {2, 1, 0}}), ValidationError);
  std::vector<std::vector<int>> big(513, std::vector<int>(513, 0));
  CHECK_THROWS_AS(Group::finite({}, big), ValidationError);
  CHECK_NOTHROW(Group::cyclic(6));
}

TEST_CASE("multiplication examples") {
  Group z = Group::free_abelian(1);
  GroupElement t = z.generator(1);
  CHECK(z.multiply(z.power(t, 2), z.power(t, -3)) == z.invert(t));
  Group f3 = Group::free(3);
  GroupElement w = f3.normal_form(std::vector<int>{1, 2, -3, 2});
  CHECK(f3.invert(w) == f3.normal_form(std::vector<int>{-2, 3, -2, -1}));
  CHECK(f3.invert(f3.identity()) == f3.identity());
}

TEST_CASE("group axioms on random elements") {
  std::mt19937_64 rng(7);
  for (const Group& g : {Group::free(3), Group::free_abelian(3), Group::symmetric(3), Group::cyclic(6)}) {
    for (int i = 0; i < 2000; ++i) {
      auto a = random_element(rng, g), b = random_element(rng, g), c = random_element(rng, g);
      CHECK(g.multiply(g.multiply(a, b), c) == g.multiply(a, g.multiply(b, c)));
      CHECK(g.is_identity(g.multiply(a, g.invert(a))));
      CHECK(g.multiply(g.identity(), a) == a);
    }
  }
}

TEST_CASE("normal form is idempotent and equality-complete") {
  std::mt19937_64 rng(11);
  for (const Group& g : {Group::free(2), Group::free_abelian(2), Group::symmetric(3)}) {
    for (int i = 0; i < 10000; ++i) {
      RawWord u = random_raw_word(rng, g.rank(), 8);
      RawWord v = random_raw_word(rng, g.rank(), 8);
      GroupElement nu = g.normal_form(u);
      CHECK(g.normal_form(g.to_raw(nu)) == nu);
      // u == v in the group iff u v^-1 is trivial
      RawWord uv = u;
      for (auto it = v.rbegin(); it != v.rend(); ++it) uv.push_back(-*it);
      CHECK((nu == g.normal_form(v)) == g.is_identity(g.normal_form(uv)));
    }
  }
}

TEST_CASE("endomorphism application") {
  Group z = Group::free_abelian(1);
  auto cube = GroupHomomorphism::from_matrix(z, {{3}});
  CHECK(cube(z.power(z.generator(1), 2)) == z.power(z.generator(1), 6));

  Group f2 = Group::free(2);
  auto phi = GroupHomomorphism::from_words(f2, f2, {{1, 2}, {2}});
  CHECK(phi(f2.normal_form(std::vector<int>{1, -2})) == f2.generator(1));
  CHECK(GroupHomomorphism::identity(f2).is_identity());

  std::mt19937_64 rng(3);
  auto psi = GroupHomomorphism::from_words(f2, f2, {{1, 2, 1}, {-2, 1}});
  for (int i = 0; i < 500; ++i) {
    auto a = random_element(rng, f2), b = random_element(rng, f2);
    CHECK(psi(f2.multiply(a, b)) == f2.multiply(psi(a), psi(b)));
  }
}

TEST_CASE("finite homomorphisms are checked against the table") {
  Group c6 = Group::cyclic(6);
  std::vector<GroupElement> doubling;
  for (int i = 0; i < 6; ++i) doubling.emplace_back((2 * i) % 6);
  CHECK_NOTHROW(GroupHomomorphism(c6, c6, doubling));
  std::vector<GroupElement> bad(6, GroupElement(1));
  CHECK_THROWS_AS(GroupHomomorphism(c6, c6, bad), ValidationError);
}

TEST_CASE("relation validation") {
  Group z2 = Group::free_abelian(2);
  auto any = GroupHomomorphism::from_matrix(z2, {{2, 1}, {1, 1}});
  std::vector<RawWord> torus{{1, 2, -1, -2}};
  CHECK(!first_violated_relation(any, torus));
  CHECK(!first_violated_relation(any, std::vector<RawWord>{}));

  Group z = Group::free_abelian(1);
  auto onto = GroupHomomorphism::from_words(Group::free(1), z, {{1}});
  std::vector<RawWord> square{{1, 1}};
  CHECK(first_violated_relation(onto, square) == std::size_t{0});
  CHECK_THROWS_AS(validate_endomorphism(onto, square), ValidationError);
}

TEST_CASE("abelianization matrix") {
  Group f2 = Group::free(2);
  auto phi = GroupHomomorphism::from_words(f2, f2, {{1, 1, 2}, {1, 2}});
  CHECK(phi.abelian_matrix() == std::vector<std::vector<std::int64_t>>{{2, 1}, {1, 1}});
}
