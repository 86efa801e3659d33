#include "doctest.h"

#include <random>

#include "gtl/io.hpp"
#include "support/generators.hpp"

using namespace gtl;

TEST_CASE("real model documents") {
  const auto doc = Json::parse(R"({"kind":"real","states":2,"loopback":1,"valuation":{"p":["1/2",1]}})");
  const RealModel m = realModelFromJson(doc);
  CHECK(m.flow.states() == 2);
  CHECK(m.flow.loopback() == 1);
  CHECK(m.valuation.at("p")[0] == Rational(1, 2));
  CHECK(m.valuation.at("p")[1] == Rational(1));
  CHECK(toJson(m)["valuation"]["p"] == Json::array({"1/2", "1/1"}));

  CHECK_THROWS_AS(realModelFromJson(Json::parse(R"({"kind":"real","states":1,"loopback":0,"valuation":{"p":["3/2"]}})")),
                  FormatError);
  CHECK_THROWS_AS(realModelFromJson(Json::parse(R"({"kind":"real","states":1,"loopback":1,"valuation":{}})")),
                  FormatError);
  CHECK_THROWS_AS(realModelFromJson(Json::parse(R"({"kind":"bi","states":1,"loopback":0,"valuation":{}})")),
                  FormatError);
  CHECK_THROWS_AS(realModelFromJson(Json::parse(R"({"kind":"real","states":1,"loopback":0})")), FormatError);
}

TEST_CASE("bi-relational model documents") {
  const auto doc = Json::parse(R"({"kind":"bi","worlds":2,"states":1,"loopback":0,"valuation":{"p":[[0,0]]}})");
  const BiModel m = biModelFromJson(doc);
  CHECK(m.valuation.at("p").contains(0, 0));
  CHECK_FALSE(m.valuation.at("p").contains(1, 0));
  CHECK(toJson(m) == doc);
  // not downward closed
  CHECK_THROWS_AS(
      biModelFromJson(Json::parse(R"({"kind":"bi","worlds":2,"states":1,"loopback":0,"valuation":{"p":[[1,0]]}})")),
      FormatError);
  CHECK_THROWS_AS(
      biModelFromJson(Json::parse(R"({"kind":"bi","worlds":2,"states":1,"loopback":0,"valuation":{"p":[[2,0]]}})")),
      FormatError);
}

TEST_CASE("round trips") {
  std::mt19937 rng(71);
  for (int i = 0; i < 60; ++i) {
    const RealModel r = testing::randomRealModel(rng, 4, {"p", "q"});
    CHECK(realModelFromJson(toJson(r)).valuation == r.valuation);
    const BiModel b = testing::randomBiModel(rng, 3, 4, {"p", "q"});
    const BiModel back = biModelFromJson(toJson(b));
    CHECK(back.worlds == b.worlds);
    CHECK(back.flow == b.flow);
    CHECK(back.valuation == b.valuation);

    const Formula f = testing::randomFormulaWithClosure(rng, 6);
    const Quasimodel q = quotient(b, Closure(f));
    const Quasimodel qb = quasimodelFromJson(Json::parse(toJson(q).dump()));
    CHECK(qb.sigma == q.sigma);
    CHECK(qb.worlds == q.worlds);
    CHECK(qb.rel == q.rel);
  }

  const Formula f = parse("F (p -> X p)");
  const auto d = decide(f);
  REQUIRE(d.witness.has_value());
  CHECK(witnessFromJson(Json::parse(toJson(*d.witness).dump())) == *d.witness);
}

TEST_CASE("quasimodel documents") {
  // sigma listed out of closure order; labels follow the listing
  const auto doc = Json::parse(R"({"sigma":["X p","p"],
    "worlds":[{"id":7,"component":0,"rank":0,"label":[0,1]}], "rel":[[7,7]]})");
  const Quasimodel q = quasimodelFromJson(doc);
  CHECK(q.size() == 1);
  CHECK(q.worlds[0].label == (bit(q.sigma.indexOf(parse("p"))) | bit(q.sigma.indexOf(parse("X p")))));
  CHECK(q.rel == std::vector<WorldPair>{{0, 0}});
  CHECK(validateQuasimodel(q).valid());

  CHECK_THROWS_AS(quasimodelFromJson(Json::parse(R"({"sigma":["X p"],"worlds":[],"rel":[]})")), FormatError);
  CHECK_THROWS_AS(quasimodelFromJson(Json::parse(
                      R"({"sigma":["p"],"worlds":[{"id":0,"component":0,"rank":0,"label":[]}],"rel":[[0,1]]})")),
                  FormatError);

  const std::string dot = toDot(q);
  CHECK(dot.rfind("digraph", 0) == 0);
  CHECK(dot.find("w7 -> w7;") != std::string::npos);
}

TEST_CASE("witness documents reject malformed relations") {
  const auto doc = Json::parse(R"({"formula":"p","pivot":0,"moments":[[["p"]],[["p"]]],"relations":[[[0,1]]]})");
  CHECK_THROWS_AS(witnessFromJson(doc), FormatError);
  const auto stranger = Json::parse(R"({"formula":"p","pivot":0,"moments":[[["q"]],[["p"]]],"relations":[[[0,0]]]})");
  CHECK_THROWS_AS(witnessFromJson(stranger), FormatError);
}
