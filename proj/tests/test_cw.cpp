#include <algorithm>
#include <random>

#include "cw_fixtures.hpp"
#include "doctest.h"
#include "nielsen/errors.hpp"
#include "support.hpp"

using namespace nielsen;
using namespace testing_support;

namespace {

GroupRingElement ring_basis(const GroupRing& r, const GroupElement& g, std::int64_t c = 1) {
  return GroupRingElement::basis(r, g, c);
}

std::vector<Rational> sorted_coefficients(const ShadowElement& s) {
  std::vector<Rational> out;
  for (const auto& [g, c] : s.terms()) out.push_back(c);
  std::sort(out.begin(), out.end());
  return out;
}

CWComplex2 subdivided_wedge() { return {3, {{0, 1}, {1, 0}, {0, 2}, {2, 0}}, {}, 0}; }

std::vector<std::vector<std::int64_t>> random_matrix(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> d(-3, 3);
  return {{d(rng), d(rng)}, {d(rng), d(rng)}};
}

}  // namespace

TEST_CASE("edge-path presentations") {
  auto circle = fundamental_group(cw_circle());
  CHECK(circle.rank() == 1);
  CHECK(circle.relators.empty());
  CHECK(circle.tree.empty());

  auto torus = fundamental_group(cw_torus());
  CHECK(torus.rank() == 2);
  REQUIRE(torus.relators.size() == 1);
  CHECK(torus.relators[0] == RawWord{1, 2, -1, -2});

  auto wedge = fundamental_group(subdivided_wedge());
  CHECK(wedge.tree == std::vector<std::size_t>{0, 2});
  CHECK(wedge.generator_edges == std::vector<std::size_t>{1, 3});
  CHECK(wedge.to_base[1] == EdgePath{-1});
  CHECK(wedge.to_base[2] == EdgePath{-3});
  CHECK(wedge.rewrite({1, 2, 3, 4, -2}) == RawWord{1, 2, -1});

  auto other = fundamental_group(subdivided_wedge(), std::vector<std::size_t>{1, 3});
  CHECK(other.generator_edges == std::vector<std::size_t>{0, 2});

  CHECK_THROWS_AS(fundamental_group(subdivided_wedge(), std::vector<std::size_t>{0, 1}), ValidationError);
  CHECK_THROWS_AS(fundamental_group(subdivided_wedge(), std::vector<std::size_t>{0}), ValidationError);
  CHECK_THROWS_AS(fundamental_group(CWComplex2{2, {{0, 0}}, {}, 0}), ValidationError);
  CHECK_THROWS_AS(fundamental_group(CWComplex2{1, {{0, 0}}, {{1, 2}}, 0}), ValidationError);
  CHECK_THROWS_AS(validate_cw(CWComplex2{2, {{0, 1}}, {{1}}, 0}), ValidationError);

  // relators are freely reduced after the tree edges disappear
  CWComplex2 x{2, {{0, 1}, {1, 1}, {1, 0}}, {{1, 2, -2, 3}}, 0};
  auto p = fundamental_group(x);
  CHECK(p.relators[0] == RawWord{2});
}

TEST_CASE("Fox derivative examples") {
  Group f2 = Group::free(2);
  GroupRing r = GroupRing::over(f2);
  auto id = GroupHomomorphism::identity(f2);
  const auto x = f2.generator(1);
  CHECK(fox_derivative({1, 2}, 1, id) == GroupRingElement::scalar(r, 1));
  CHECK(fox_derivative({1, 2}, 2, id) == ring_basis(r, x));
  CHECK(fox_derivative({-1}, 1, id) == ring_basis(r, f2.invert(x), -1));
  CHECK(fox_derivative({2}, 1, id).is_zero());
  CHECK(fox_derivative({}, 1, id).is_zero());
  CHECK_THROWS_AS(fox_derivative({1, 3}, 1, id), ValidationError);
  CHECK_THROWS_AS(fox_derivative({1}, 3, id), ValidationError);

  auto t = torus_target();
  auto rho = target_map(cw_torus(), fundamental_group(cw_torus()), t);
  GroupRing z2 = GroupRing::over(t.group);
  auto a = ring_basis(z2, t.group.generator(1)), b = ring_basis(z2, t.group.generator(2));
  auto one = GroupRingElement::scalar(z2, 1);
  CHECK(fox_derivative({1, 2, -1, -2}, 1, rho) == one - b);
  CHECK(fox_derivative({1, 2, -1, -2}, 2, rho) == a - one);
}

TEST_CASE("Fox fundamental identity on random words") {
  std::mt19937_64 rng(2024);
  const std::vector<Group> finite{Group::symmetric(3), Group::cyclic(6), Group::symmetric(4)};
  int trials = 0;
  for (int rank = 1; rank <= 4; ++rank) {
    Group free = Group::free(rank);
    std::vector<GroupHomomorphism> targets{GroupHomomorphism::identity(free)};
    for (Group g : {Group::free_abelian(2), Group::free(2)}) {
      std::vector<GroupElement> images;
      for (int i = 0; i < rank; ++i) images.push_back(random_element(rng, g, 3));
      targets.emplace_back(free, g, images);
    }
    for (const auto& g : finite) {
      std::vector<GroupElement> images;
      for (int i = 0; i < rank; ++i) images.push_back(random_element(rng, g));
      targets.emplace_back(free, g, images);
    }
    for (const auto& rho : targets) {
      GroupRing r = GroupRing::over(rho.target());
      for (int k = 0; k < 500; ++k, ++trials) {
        RawWord w = random_raw_word(rng, rank, 12);
        GroupRingElement sum(r);
        for (int x = 1; x <= rank; ++x)
          sum += fox_derivative(w, x, rho) *
                 (ring_basis(r, rho(free.generator(x))) - GroupRingElement::scalar(r, 1));
        CHECK(sum == ring_basis(r, rho(free.normal_form(w))) - GroupRingElement::scalar(r, 1));
      }
    }
  }
  CHECK(trials >= 10000);
}

TEST_CASE("universal cover chains") {
  auto c = twisted_chains(cw_circle(), fundamental_group(cw_circle()), circle_target());
  CHECK(c.ranks == std::vector<std::size_t>{1, 1});
  GroupRing zr = c.ring;
  CHECK(c.boundaries[0](0, 0) == ring_basis(zr, zr.group().generator(1)) - GroupRingElement::scalar(zr, 1));

  auto t = twisted_chains(cw_torus(), fundamental_group(cw_torus()), torus_target());
  CHECK(t.ranks == std::vector<std::size_t>{1, 2, 1});
  CHECK_NOTHROW(validate_complex(t));
  const Group& z2 = t.ring.group();
  auto one = GroupRingElement::scalar(t.ring, 1);
  auto a = ring_basis(t.ring, z2.generator(1)), b = ring_basis(t.ring, z2.generator(2));
  CHECK(t.boundaries[0] == RingMatrix::from_rows(t.ring, {{a - one}, {b - one}}));
  CHECK(t.boundaries[1] == RingMatrix::from_rows(t.ring, {{one - b, a - one}}));

  Group f2 = Group::free(2);
  GroupTarget wt{f2, {f2.identity(), f2.generator(1), f2.identity(), f2.generator(2)}};
  auto w = twisted_chains(subdivided_wedge(), fundamental_group(subdivided_wedge()), wt);
  CHECK(w.ranks == std::vector<std::size_t>{1, 2});

  for (std::size_t n = 1; n <= 4; ++n) {
    auto g = grid_torus(n);
    auto gc = twisted_chains(g, fundamental_group(g), grid_target(n));
    CHECK(gc.ranks == std::vector<std::size_t>{1, n + 1, n});
    CHECK_NOTHROW(validate_complex(gc));
  }

  auto bad = torus_target();
  bad.edge_labels[1] = Group::free_abelian(2).identity();
  GroupTarget nonabelian{Group::symmetric(3), {GroupElement(1), GroupElement(2)}};
  CHECK_THROWS_AS(twisted_chains(cw_torus(), fundamental_group(cw_torus()), nonabelian), ValidationError);
  CHECK_NOTHROW(twisted_chains(cw_torus(), fundamental_group(cw_torus()), bad));
  CHECK_THROWS_AS(validate_target(cw_torus(), GroupTarget{Group::free_abelian(2), {}}), ShapeMismatch);
}

TEST_CASE("lifting self-maps") {
  auto circle = cw_circle();
  auto p = fundamental_group(circle);
  for (std::int64_t d = 1; d <= 5; ++d) {
    auto lift = lift_self_map(circle, circle_degree(d), p, circle_target());
    const Group& z = lift.phi.source();
    CHECK(lift.phi(z.generator(1)) == z.power(z.generator(1), d));
    GroupRing r = GroupRing::over(z);
    GroupRingElement geometric(r);
    for (std::int64_t k = 0; k < d; ++k) geometric += ring_basis(r, z.power(z.generator(1), k));
    CHECK(lift.map.matrices[1](0, 0) == geometric);
  }

  auto torus = cw_torus();
  auto tp = fundamental_group(torus);
  auto lift = lift_self_map(torus, torus_linear({{2, 1}, {1, 1}}), tp, torus_target());
  GroupRing r = lift.map.matrices[0].ring();
  const Group& z2 = r.group();
  auto a = ring_basis(r, z2.generator(1));
  auto one = GroupRingElement::scalar(r, 1);
  CHECK(lift.map.matrices[1] == RingMatrix::from_rows(r, {{one + a, a * a}, {one, a}}));
  CHECK(lift.solved_top);
  CHECK(lift.map.matrices[2](0, 0).augment() == 1);
  CHECK(lift.phi == GroupHomomorphism::from_matrix(z2, {{2, 1}, {1, 1}}));

  auto id = lift_self_map(torus, torus_linear({{1, 0}, {0, 1}}), tp, torus_target());
  CHECK(id.phi.is_identity());
  for (std::size_t k = 0; k < 3; ++k) CHECK(id.map.matrices[k] == RingMatrix::identity(r, id.map.matrices[k].rows()));

  // supplied top entries are checked against the commutation square
  auto f = torus_linear({{1, 0}, {0, 1}});
  f.two_cell_lift = RingMatrix::from_rows(r, {{a}});
  CHECK_THROWS_AS(lift_self_map(torus, f, tp, torus_target()), ValidationError);
  f.two_cell_lift = RingMatrix::identity(r, 1);
  CHECK_NOTHROW(lift_self_map(torus, f, tp, torus_target()));
  f.two_cell_lift = RingMatrix::identity(r, 2);
  CHECK_THROWS_AS(lift_self_map(torus, f, tp, torus_target()), ShapeMismatch);

  auto broken = torus_linear({{1, 0}, {0, 1}});
  broken.vertex_images = {1};
  CHECK_THROWS_AS(validate_self_map(torus, broken), ValidationError);
  CHECK_THROWS_AS(validate_self_map(subdivided_wedge(), CWSelfMap{{0, 0, 0}, {{1}, {}, {}, {}}, {}, {}}),
                  ValidationError);
}

TEST_CASE("projective plane needs supplied top entries") {
  CWComplex2 rp2{1, {{0, 0}}, {{1, 1}}, 0};
  Group z2 = Group::cyclic(2);
  GroupTarget t{z2, {GroupElement(1)}};
  CWSelfMap id{{0}, {{1}}, EdgePath{}, {}};
  CHECK_THROWS_AS(analyze(rp2, id, t), UnderdeterminedLift);
  id.two_cell_lift = RingMatrix::identity(GroupRing::over(z2), 1);
  auto report = analyze(rp2, id, t);
  CHECK(report.lefschetz == 1);
  CHECK(report.reidemeister.augment() == 1);
}

TEST_CASE("analysis examples") {
  auto c3 = analyze(cw_circle(), circle_degree(3), circle_target());
  CHECK(c3.lefschetz == -2);
  CHECK(c3.nielsen == std::optional<std::size_t>(2));
  CHECK(c3.reidemeister.format() == "-1[e] - 1[t]");

  auto t = analyze(cw_torus(), torus_linear({{2, 1}, {1, 1}}), torus_target());
  CHECK(t.lefschetz == -1);
  CHECK(t.nielsen == std::optional<std::size_t>(1));
  CHECK(t.reidemeister.nonzero_classes() == 1);

  auto id = analyze(cw_torus(), torus_linear({{1, 0}, {0, 1}}), torus_target());
  CHECK(id.lefschetz == 0);
  CHECK(id.reidemeister.is_zero());
  CHECK(id.nielsen == std::optional<std::size_t>(0));

  Group f2 = Group::free(2);
  GroupTarget wt{f2, {f2.identity(), f2.generator(1), f2.identity(), f2.generator(2)}};
  auto wid = analyze(subdivided_wedge(), CWSelfMap{{0, 1, 2}, {{1}, {2}, {3}, {4}}, {}, {}}, wt);
  CHECK(wid.lefschetz == -1);
  CHECK(wid.nielsen == std::optional<std::size_t>(1));

  auto swap = analyze(subdivided_wedge(), CWSelfMap{{0, 2, 1}, {{3}, {4}, {1}, {2}}, {}, {}}, wt);
  CHECK_FALSE(swap.nielsen.has_value());
  CHECK_FALSE(swap.reidemeister.reduced());
  CHECK(swap.lefschetz == 1);
}

TEST_CASE("identity maps have Lefschetz number equal to the Euler characteristic") {
  struct Case {
    CWComplex2 x;
    GroupTarget t;
    std::int64_t chi;
  };
  Group f2 = Group::free(2);
  std::vector<Case> cases{
      {cw_circle(), circle_target(), 0},
      {cw_torus(), torus_target(), 0},
      {grid_torus(3), grid_target(3), 0},
      {subdivided_wedge(), {f2, {f2.identity(), f2.generator(1), f2.identity(), f2.generator(2)}}, -1},
      {CWComplex2{1, {{0, 0}}, {{1}}, 0}, {Group::trivial(), {Group::trivial().identity()}}, 1},
  };
  for (const auto& c : cases) {
    CWSelfMap id{{}, {}, EdgePath{}, {}};
    for (std::size_t v = 0; v < c.x.vertices; ++v) id.vertex_images.push_back(v);
    for (std::size_t e = 0; e < c.x.edges.size(); ++e) id.edge_images.push_back({static_cast<int>(e) + 1});
    auto report = analyze(c.x, id, c.t);
    CHECK(report.lefschetz == Rational(c.chi));
    CHECK(report.reidemeister.augment() == Rational(c.chi));
  }
}

TEST_CASE("trees, base vertices and base paths do not change the invariants") {
  std::mt19937_64 rng(8);
  const std::size_t n = 3;
  int checked = 0;
  while (checked < 12) {
    auto a = random_matrix(rng);
    const std::int64_t det = (1 - a[0][0]) * (1 - a[1][1]) - a[0][1] * a[1][0];
    if (det == 0 || std::abs(det) > 30) continue;
    auto reference = analyze(cw_torus(), torus_linear(a), torus_target());
    for (int choice = 0; choice < 4; ++choice) {
      const std::size_t base = rng() % n;
      const std::size_t skip = rng() % n;
      std::vector<std::size_t> tree;
      for (std::size_t i = 0; i < n; ++i)
        if (i != skip) tree.push_back(i);
      EdgePath zeta;
      for (std::size_t i = base; i != 0; i = (i + 1) % n) zeta.push_back(static_cast<int>(i) + 1);
      const std::int64_t loops = static_cast<std::int64_t>(rng() % 5) - 2;
      EdgePath extra = repeated({static_cast<int>(n) + 1}, loops);
      zeta.insert(zeta.end(), extra.begin(), extra.end());
      auto report = analyze(grid_torus(n, base), grid_linear(n, a), grid_target(n), {tree, zeta});
      CHECK(report.lefschetz == reference.lefschetz);
      CHECK(report.nielsen == reference.nielsen);
      CHECK(sorted_coefficients(report.reidemeister) == sorted_coefficients(reference.reidemeister));
    }
    ++checked;
  }
}
