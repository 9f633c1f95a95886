#include <doctest.h>

#include <cmath>
#include <sstream>

#include "pmod/registry.hpp"
#include "pmod/report.hpp"

using namespace pmod;

TEST_CASE("spec strings") {
  const SpecString s = SpecString::parse("g2:m=3");
  CHECK(s.name == "g2");
  CHECK(s.integer("m") == 3);
  const SpecString t = SpecString::parse("radialpow:alpha=-0.5");
  CHECK(t.number("alpha") == -0.5);
  CHECK(t.number("beta", 7.0) == 7.0);
  CHECK_THROWS_AS(t.number("beta"), DomainError);
  CHECK(SpecString::parse("radialpow:alpha=−0.5").number("alpha") == -0.5);
  CHECK(SpecString::parse("normsq").params.empty());
  CHECK_THROWS_AS(SpecString::parse("g2:m").integer("m"), DomainError);
  CHECK_THROWS_AS(SpecString::parse("g2:m=2.5").integer("m"), DomainError);
}

TEST_CASE("field registry") {
  Vec x(2);
  x << 0.3, 0.4;
  CHECK(parse_field("constant:c=2", 2)(x) == 2.0);
  CHECK(parse_field("radialpow:alpha=-1", 2)(x) == doctest::Approx(2.0));
  CHECK(parse_field("logrecip", 2)(x) == doctest::Approx(std::log(2.0)));
  CHECK(parse_field("logpow:k=2", 2)(x) == doctest::Approx(std::log(2.0) * std::log(2.0)));
  CHECK(parse_field("coordsq:i=2", 2)(x) == doctest::Approx(0.16));
  CHECK(parse_field("normsq", 2)(x) == doctest::Approx(0.25));
  CHECK(parse_field("constant:c=inf", 2)(x) == kInf);
  CHECK_THROWS_AS(parse_field("coordsq:i=3", 2), DomainError);
  CHECK_THROWS_AS(parse_field("constant:c=1,d=2", 2), DomainError);
  CHECK_THROWS_AS(parse_field("nonsense", 2), DomainError);
  CHECK_THROWS_AS(parse_field("grid:file=/nonexistent/q.bin", 2), DomainError);
}

TEST_CASE("map registry") {
  CHECK(parse_map("g2:m=3", 2).label() == "g2:m=3");
  CHECK(parse_map("identity", 3).n == 3);
  CHECK(parse_map("compose:g1,g2:m=2", 2).label() == "compose:g1,g2:m=2");
  CHECK(parse_map("exp:m=2", 2).kind == MappingSpec::Kind::exp_m);
  CHECK_THROWS_AS(parse_map("exp:m=2", 3), DomainError);
  CHECK_THROWS_AS(parse_map("g3", 2), DomainError);

  const auto fam = parse_map_family("exp:m=1..10", 2);
  REQUIRE(fam.size() == 10);
  CHECK(fam.front().param == 1.0);
  CHECK(fam.back().param == 10.0);
  CHECK(parse_map_family("g2:m=4", 2).size() == 1);
  CHECK_THROWS_AS(parse_map_family("g2:m=5..2", 2), DomainError);
  CHECK_THROWS_AS(parse_map_family("g2:m=1..x", 2), DomainError);
  CHECK_THROWS_AS(parse_map_family("g2:m=1...3", 2), DomainError);
}

TEST_CASE("points and lists") {
  CHECK(parse_point("0", 3).isZero());
  const Vec p = parse_point("1,-2.5", 2);
  CHECK(p[0] == 1.0);
  CHECK(p[1] == -2.5);
  CHECK_THROWS_AS(parse_point("1,2,3", 2), DomainError);
  CHECK(parse_list("0.5, 0.25,0.125") == std::vector<double>{0.5, 0.25, 0.125});
  CHECK_THROWS_AS(parse_list("0.5,abc"), DomainError);
}

TEST_CASE("eta choices are normalized") {
  const SphericalRing ring(Vec::Zero(2), 0.1, 0.5);
  for (const char* name : {"const", "loglog", "qmean"}) {
    const PsiFamily eta = make_eta(name, ring, 1.5, ScalarField::constant(2));
    CHECK(psi_integral(eta, 0.1, 0.5).value == doctest::Approx(1.0).epsilon(1e-8));
  }
  CHECK_THROWS_AS(make_eta("loglog", SphericalRing(Vec::Zero(2), 1.0, 2.0), 1.5, ScalarField::constant(1)),
                  DomainError);
  CHECK_THROWS_AS(make_eta("bogus", ring, 1.5, ScalarField::constant(1)), DomainError);
}

TEST_CASE("JSON numbers keep infinities") {
  CHECK(num(kInf) == "inf");
  CHECK(num(-kInf) == "-inf");
  CHECK(num(std::nan("")) == "nan");
  CHECK(num(1.25) == 1.25);
  CHECK(from_num(num(kInf)) == kInf);
  CHECK(std::isnan(from_num(num(std::nan("")))));
  CHECK(from_num(Json(3)) == 3.0);
}

TEST_CASE("curve family JSON round trip") {
  const CurveFamily fam = sample_ring_family(SphericalRing(Vec::Zero(3), 1, 2), 5,
                                             SamplingMode::random_joining, 9);
  const Json j = family_to_json(fam);
  CHECK(j["schema"] == kSchema);
  const CurveFamily back = family_from_json(Json::parse(j.dump()));
  REQUIRE(back.size() == fam.size());
  for (std::size_t i = 0; i < fam.size(); ++i)
    for (std::size_t k = 0; k < fam.curves[i].vertices.size(); ++k)
      CHECK((back.curves[i].vertices[k] - fam.curves[i].vertices[k]).norm() == 0.0);

  const CurveFamily bare = family_from_json(Json::parse("[[[0,0],[1,0]],[[0,1],[1,1],[2,1]]]"));
  CHECK(bare.size() == 2);
  CHECK(bare.curves[1].length() == 2.0);
  CHECK_THROWS_AS(family_from_json(Json::parse("[[[0,0],[1,0,0]]]")), DomainError);
}

TEST_CASE("report envelope and CSV") {
  const Json e = envelope("bounds", Json{{"value", 1}}, false);
  CHECK(e["schema"] == kSchema);
  CHECK(e["command"] == "bounds");
  CHECK(e["value"] == 1);
  CHECK_FALSE(e.contains("meta"));
  CHECK(envelope("bounds", Json::object(), true).contains("meta"));

  CriterionReport r;
  r.criterion = CriterionId::fmo;
  r.evidence = {{0.1, 0.5}, {0.01, kInf}};
  std::ostringstream os;
  write_evidence_csv(r, os);
  CHECK(os.str() == "eps,value\n0.1,0.5\n0.01,inf\n");
}
