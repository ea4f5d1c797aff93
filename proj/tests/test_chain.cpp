#include <random>

#include "chain_fixtures.hpp"
#include "doctest.h"
#include "nielsen/chain.hpp"
#include "nielsen/errors.hpp"

using namespace nielsen;
using testing_support::circle_map;
using testing_support::rebased;
using testing_support::torus_map;

namespace {

// Shift every degree up by one, inserting an empty degree 0.
std::pair<TwistedChainComplex, TwistedChainMap> suspended(const TwistedChainComplex& c, const TwistedChainMap& f) {
  TwistedChainComplex s{c.ring, {0}, {RingMatrix(c.ring, c.ranks[0], 0)}};
  s.ranks.insert(s.ranks.end(), c.ranks.begin(), c.ranks.end());
  s.boundaries.insert(s.boundaries.end(), c.boundaries.begin(), c.boundaries.end());
  TwistedChainMap g{f.phi, {RingMatrix(c.ring, 0, 0)}};
  g.matrices.insert(g.matrices.end(), f.matrices.begin(), f.matrices.end());
  return {s, g};
}

QMatrix q(std::vector<std::vector<Rational>> rows, std::size_t cols = 0) { return QMatrix::from_rows(rows, cols); }

}  // namespace

TEST_CASE("complex validation") {
  auto [circle, f] = circle_map(3);
  CHECK_NOTHROW(validate_complex(circle));
  auto [torus, g] = torus_map();
  CHECK_FALSE(complex_defect(torus).has_value());

  GroupRing z = GroupRing::plain(CoefficientRing::integers());
  TwistedChainComplex zero{z, {2, 1, 3}, {RingMatrix(z, 1, 2), RingMatrix(z, 3, 1)}};
  CHECK_NOTHROW(validate_complex(zero));

  TwistedChainComplex bad{z, {1, 1, 1}, {RingMatrix::identity(z, 1), RingMatrix::identity(z, 1)}};
  auto defect = complex_defect(bad);
  REQUIRE(defect.has_value());
  CHECK(defect->degree == 2);
  CHECK_THROWS_AS(validate_complex(bad), ValidationError);

  TwistedChainComplex misshaped{z, {1, 2}, {RingMatrix(z, 1, 2)}};
  CHECK_THROWS_AS(validate_complex(misshaped), ShapeMismatch);
}

TEST_CASE("chain map validation") {
  auto [circle, f] = circle_map(3);
  CHECK_NOTHROW(validate_chain_map(circle, f));
  TwistedChainMap id{GroupHomomorphism::identity(circle.ring.group()),
                     {RingMatrix::identity(circle.ring, 1), RingMatrix::identity(circle.ring, 1)}};
  CHECK_NOTHROW(validate_chain_map(circle, id));
  auto broken = f;
  broken.matrices[1](0, 0) -= GroupRingElement::basis(circle.ring, circle.ring.group().generator(1));
  auto defect = chain_map_defect(circle, broken);
  REQUIRE(defect.has_value());
  CHECK(defect->degree == 1);
  CHECK_THROWS_AS(lefschetz(circle, broken), ValidationError);
  auto [torus, g] = torus_map();
  CHECK_NOTHROW(validate_chain_map(torus, g));
}

TEST_CASE("circle maps") {
  for (std::int64_t d = -4; d <= 5; ++d) {
    CAPTURE(d);
    auto [c, f] = circle_map(d);
    CHECK(lefschetz(c, f) == Rational(1 - d));
    auto r = reidemeister_trace(c, f);
    CHECK(r.augment() == Rational(1 - d));
    CHECK(nielsen_number(r) == static_cast<std::size_t>(d > 1 ? d - 1 : 1 - d));
  }
  auto [c, f] = circle_map(3);
  auto r = reidemeister_trace(c, f);
  const Group& z = c.ring.group();
  CHECK(r.nonzero_classes() == 2);
  CHECK(r.coefficient_of_class(z.identity()) == -1);
  CHECK(r.coefficient_of_class(z.generator(1)) == -1);
  CHECK(r.format() == "-1[e] - 1[t]");

  auto [c1, id] = circle_map(1);
  CHECK(lefschetz(c1, id) == 0);
  CHECK(reidemeister_trace(c1, id).is_zero());
}

TEST_CASE("torus map") {
  auto [c, f] = torus_map();
  CHECK(lefschetz(c, f) == -1);
  auto r = reidemeister_trace(c, f);
  CHECK(r.nonzero_classes() == 1);
  CHECK(r.augment() == -1);
  CHECK(nielsen_number(r) == 1);
}

TEST_CASE("formal traces are refused by the Nielsen count") {
  Group f2 = Group::free(2);
  GroupRing r = GroupRing::over(f2);
  auto swap = GroupHomomorphism::from_words(f2, f2, {{2}, {1}});
  TwistedChainComplex c{r, {1}, {}};
  TwistedChainMap f{swap, {RingMatrix::identity(r, 1)}};
  auto s = reidemeister_trace(c, f);
  CHECK_FALSE(s.reduced());
  CHECK(s.augment() == 1);
  CHECK_THROWS_AS(nielsen_number(s), FormalShadow);
}

TEST_CASE("Reidemeister trace is invariant under change of basis") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    auto [c, f] = trial % 2 ? torus_map() : circle_map(static_cast<std::int64_t>(rng() % 7) - 3);
    auto [c2, f2] = rebased(c, f, rng);
    CHECK_NOTHROW(validate_complex(c2));
    CHECK_NOTHROW(validate_chain_map(c2, f2));
    CHECK(reidemeister_trace(c2, f2) == reidemeister_trace(c, f));
    CHECK(lefschetz(c2, f2) == lefschetz(c, f));
    CHECK(reidemeister_trace(c2, f2).augment() == lefschetz(c2, f2));
  }
}

TEST_CASE("shifting the degrees negates both invariants") {
  for (auto [c, f] : {circle_map(3), circle_map(-2), torus_map()}) {
    auto [s, g] = suspended(c, f);
    CHECK(lefschetz(s, g) == -lefschetz(c, f));
    CHECK(reidemeister_trace(s, g) == reidemeister_trace(c, f).scaled(-1));
  }
}

TEST_CASE("rational homology examples") {
  auto id2 = QMatrix::identity(2);
  auto h = homology_q({1, 2}, {q({{1}, {1}})}, {QMatrix::identity(1), id2});
  CHECK(h.dimensions == std::vector<std::size_t>{0, 1});
  CHECK(h.chain_trace == Rational(-1));
  CHECK(h.homology_trace == Rational(-1));

  auto acyclic = homology_q({1, 1}, {q({{1}})}, {q({{5}}), q({{5}})});
  CHECK(acyclic.dimensions == std::vector<std::size_t>{0, 0});
  CHECK(acyclic.homology_trace == 0);

  for (std::int64_t d = -3; d <= 4; ++d) {
    auto circle = homology_q({1, 1}, {q({{0}})}, {q({{1}}), q({{d}})});
    CHECK(circle.dimensions == std::vector<std::size_t>{1, 1});
    CHECK(circle.homology_trace == Rational(1 - d));
    CHECK(circle.induced[1](0, 0) == Rational(d));
  }

  auto [c, f] = circle_map(3);
  CHECK_THROWS_AS(homology_q(c, f), ModelMismatch);
  CHECK_THROWS_AS(homology_q({1, 1}, {q({{1}})}, {q({{1}}), q({{2}})}), ValidationError);
}

TEST_CASE("random rational complexes preserve the alternating trace") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 200; ++trial) {
    auto s = random_rational_complex(rng, 3, 3);
    for (std::size_t k = 2; k < s.ranks.size(); ++k) CHECK((s.boundaries[k - 1] * s.boundaries[k - 2]).is_zero());
    auto h = homology_q(s.ranks, s.boundaries, s.maps);
    CHECK(h.chain_trace == h.homology_trace);
    // Euler characteristic through ranks of boundaries
    std::int64_t chi = 0, hchi = 0;
    for (std::size_t k = 0; k < s.ranks.size(); ++k) {
      chi += (k % 2 ? -1 : 1) * static_cast<std::int64_t>(s.ranks[k]);
      hchi += (k % 2 ? -1 : 1) * static_cast<std::int64_t>(h.dimensions[k]);
    }
    CHECK(chi == hchi);
    for (std::size_t k = 0; k < s.ranks.size(); ++k) {
      const std::size_t z = s.ranks[k] - (k ? rank(s.boundaries[k - 1]) : 0);
      const std::size_t b = k + 1 < s.ranks.size() ? rank(s.boundaries[k]) : 0;
      CHECK(h.dimensions[k] == z - b);
    }
  }
}

TEST_CASE("rational linear algebra") {
  auto m = q({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  CHECK(rank(m) == 2);
  auto n = nullspace(m);
  CHECK(n.rows() == 1);
  CHECK((m * n.transposed()).is_zero());
  auto l = left_nullspace(m);
  CHECK(l.rows() == 1);
  CHECK((l * m).is_zero());
  auto x = solve_left(m, {Rational(3), Rational(4), Rational(7)});
  REQUIRE(x.has_value());
  CHECK((q({*x}) * m) == q({{3, 4, 7}}));
  CHECK_FALSE(solve_left(m, {Rational(0), Rational(0), Rational(1)}).has_value());
  CHECK(rank(QMatrix(0, 3)) == 0);
  CHECK(nullspace(QMatrix(0, 2)).rows() == 2);
}
