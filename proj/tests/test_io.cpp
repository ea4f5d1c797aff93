#include "cw_fixtures.hpp"
#include "doctest.h"
#include "nielsen/errors.hpp"
#include "nielsen/io.hpp"

using namespace nielsen;
using namespace testing_support;

TEST_CASE("document envelope") {
  CHECK_THROWS_AS(io::parse_document("{"), ParseError);
  CHECK_THROWS_AS(io::parse_document("[1]"), ParseError);
  CHECK_THROWS_AS(io::parse_document(R"({"schema": "2"})"), ParseError);
  CHECK_NOTHROW(io::parse_document(R"({"schema": "1"})"));
  CHECK_THROWS_AS(io::read_document("/nonexistent/file.json"), ParseError);
}

TEST_CASE("groups, elements and rings") {
  using io::Json;
  CHECK(io::parse_group(Json::parse(R"({"kind": "free", "rank": 2})")) == Group::free(2));
  CHECK(io::parse_group(Json::parse(R"({"kind": "symmetric", "n": 3})")) == Group::symmetric(3));
  CHECK(io::parse_group(Json::parse(R"({"kind": "trivial"})")).is_trivial());
  CHECK_THROWS_AS(io::parse_group(Json::parse(R"({"kind": "lie"})")), ParseError);
  CHECK_THROWS_AS(io::parse_group(Json::parse(R"({"kind": "free"})")), ParseError);

  Group f2 = Group::free(2);
  CHECK(io::parse_element(Json::parse("[1, 2, -2]"), f2) == f2.generator(1));
  CHECK(io::parse_element(Json::parse(R"("e")"), f2) == f2.identity());
  CHECK_THROWS_AS(io::parse_element(Json::parse("[3]"), f2), ParseError);
  Group c3 = Group::cyclic(3);
  CHECK(io::parse_element(Json::parse("2"), c3) == GroupElement(2));
  CHECK_THROWS_AS(io::parse_element(Json::parse("3"), c3), ParseError);

  GroupRing r = io::parse_ring(Json::parse(R"({"coefficients": "Q", "group": {"kind": "free_abelian", "rank": 1}})"));
  const Group& z = r.group();
  auto x = io::parse_ring_element(Json::parse(R"([[2, [1]], ["-1/2", "e"]])"), r);
  CHECK(x.coefficient(z.generator(1)) == 2);
  CHECK(x.coefficient(z.identity()) == Rational(-1, 2));
  CHECK(io::parse_ring_element(Json::parse("3"), r) == GroupRingElement::scalar(r, 3));
  CHECK_THROWS_AS(io::parse_ring_element(Json::parse("[[1]]"), r), ParseError);
  GroupRing zz = io::parse_ring(Json::parse(R"({"coefficients": "Z", "group": {"kind": "free_abelian", "rank": 1}})"));
  CHECK_THROWS(io::parse_ring_element(Json::parse(R"([["1/2", "e"]])"), zz));

  auto phi = io::parse_endomorphism(Json::parse(R"({"matrix": [[3]]})"), z);
  CHECK(phi(z.generator(1)) == z.power(z.generator(1), 3));
  CHECK(io::parse_endomorphism(Json::object(), z).is_identity());
}

TEST_CASE("complex, map and target files") {
  auto x = io::parse_complex(io::parse_document(
      R"({"schema": "1", "vertices": ["v"], "edges": [[0, 0], [0, 0]], "two_cells": [[1, 2, -1, -2]], "base": 0})"));
  CHECK(x.vertices == 1);
  CHECK(x.two_cells == cw_torus().two_cells);
  CHECK_THROWS_AS(io::parse_complex(io::parse_document(
                      R"({"schema": "1", "vertices": [0], "edges": [], "three_cells": [[1]]})")),
                  ParseError);
  CHECK_THROWS_AS(io::parse_complex(io::parse_document(R"({"schema": "1", "vertices": [0], "edges": [[0, 0]], "two_cells": [[0]]})")),
                  ParseError);

  auto t = io::parse_target(io::parse_document(
      R"({"schema": "1", "group": {"kind": "free_abelian", "rank": 2}, "edge_labels": [[1], [2]]})"));
  CHECK(t.edge_labels == torus_target().edge_labels);

  auto f = io::parse_self_map(io::parse_document(
                                  R"({"schema": "1", "vertex_images": [0], "edge_images": [[1, 1, 2], [1, 2]], "two_cell_lifts": [[[[1, [1]]]]]})"),
                              GroupRing::over(t.group));
  CHECK_FALSE(f.zeta.has_value());
  REQUIRE(f.two_cell_lift.has_value());
  auto lift = lift_self_map(x, f, fundamental_group(x), t);
  CHECK_FALSE(lift.solved_top);
  CHECK(lift.map.matrices[2] == *f.two_cell_lift);
}

TEST_CASE("chain files and report values") {
  auto c = io::parse_chain_complex(io::parse_document(R"({"schema": "1", "ring": "Q", "ranks": [1, 1],
      "boundaries": [[[0]]]})"));
  auto f = io::parse_chain_map(io::parse_document(R"({"schema": "1", "matrices": [[[1]], [[3]]]})"), c);
  CHECK(lefschetz(c, f) == -2);
  CHECK_THROWS_AS(io::parse_chain_map(io::parse_document(R"({"schema": "1", "matrices": [[[1]]]})"), c), ParseError);
  CHECK(io::to_json(Rational(-2)) == -2);
  CHECK(io::to_json(Rational(1, 2)) == "1/2");
  auto s = io::to_json(reidemeister_trace(c, f));
  CHECK(s["formatted"] == "-2[e]");
  CHECK(s["terms"][0]["coefficient"] == -2);
}
