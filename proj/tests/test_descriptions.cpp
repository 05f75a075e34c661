#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "fso/descriptions.hpp"
#include "fso/errors.hpp"

using fso::Role;

namespace {

const char* kPrefixes =
    "@prefix service: <http://www.pats.ua.ac.be/AALService#> .\n"
    "@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n";

std::string record(const std::string& body) {
  return std::string(kPrefixes) + "[\n" + body + "\n] .\n";
}

const char* kTimes =
    "  service:creationTime \"2013-05-12T13:00:00\"^^xsd:dateTime ;\n"
    "  service:startTime \"2013-05-12T17:00:00\"^^xsd:dateTime ;\n"
    "  service:endTime \"2013-05-12T21:00:00\"^^xsd:dateTime ;\n"
    "  service:hasCreator <http://example.org/u#this>";

}  // namespace

TEST_CASE("verbatim sample description") {
  auto records = fso::parse_descriptions(fixtures::sample_text());
  REQUIRE(records.size() == 1);
  const auto& d = records.front();
  CHECK(d.creation_time.str() == "2013-05-12T13:00:00");
  CHECK(d.start_time.str() == "2013-05-12T17:00:00");
  CHECK(d.end_time.str() == "2013-05-12T21:00:00");
  CHECK(d.creator == "http://www.pats.ua.ac.be/aal/user/15441#this");
  CHECK(d.provide == "Walking");
  CHECK(d.request == "Walking");
  REQUIRE(d.location);
  CHECK(d.location->place_class == "http://schema.org/Beach");
  CHECK(d.location->located_in == "http://dbpedia.org/resource/Borgerhout");
  CHECK(fso::classify(d) == Role::Mutualistic);
}

TEST_CASE("classify follows field presence") {
  CHECK(fso::classify(fixtures::make("Walking", std::nullopt)) == Role::ProviderOnly);
  CHECK(fso::classify(fixtures::make(std::nullopt, "Fitness")) == Role::RequesterOnly);
  CHECK(fso::classify(fixtures::make("Walking", "Walking")) == Role::Mutualistic);
}

TEST_CASE("prefix-only document is empty") {
  CHECK(fso::parse_descriptions(kPrefixes).empty());
  CHECK(fso::parse_descriptions("").empty());
  CHECK(fso::parse_descriptions("# just a comment\n").empty());
}

TEST_CASE("validation errors") {
  SUBCASE("neither provide nor request") {
    CHECK_THROWS_AS(fso::parse_descriptions(record(kTimes)), fso::ValidationError);
  }
  SUBCASE("start after end") {
    auto text = record(
        "  service:creationTime \"2013-05-12T13:00:00\"^^xsd:dateTime ;\n"
        "  service:startTime \"2013-05-12T22:00:00\"^^xsd:dateTime ;\n"
        "  service:endTime \"2013-05-12T21:00:00\"^^xsd:dateTime ;\n"
        "  service:hasCreator <http://example.org/u#this> ;\n"
        "  service:provide service:Walking");
    CHECK_THROWS_AS(fso::parse_descriptions(text), fso::ValidationError);
  }
  SUBCASE("missing creator") {
    auto text = record(
        "  service:creationTime \"2013-05-12T13:00:00\"^^xsd:dateTime ;\n"
        "  service:startTime \"2013-05-12T17:00:00\"^^xsd:dateTime ;\n"
        "  service:endTime \"2013-05-12T21:00:00\"^^xsd:dateTime ;\n"
        "  service:provide service:Walking");
    CHECK_THROWS_AS(fso::parse_descriptions(text), fso::ValidationError);
  }
  SUBCASE("validate() directly") {
    auto d = fixtures::make(std::nullopt, std::nullopt);
    CHECK_THROWS_AS(fso::validate(d), fso::ValidationError);
  }
}

TEST_CASE("grammar errors carry a position") {
  SUBCASE("unknown predicate") {
    auto text = record(std::string(kTimes) + " ;\n  service:colour service:Red");
    try {
      fso::parse_descriptions(text);
      FAIL("expected ParseError");
    } catch (const fso::ParseError& e) {
      CHECK(e.line() == 8);
      CHECK(e.offset() > 0);
    }
  }
  SUBCASE("duplicate predicate") {
    auto text = record(std::string(kTimes) + " ;\n  service:provide service:A ;\n  service:provide service:B");
    CHECK_THROWS_AS(fso::parse_descriptions(text), fso::ParseError);
  }
  SUBCASE("missing final dot") {
    CHECK_THROWS_AS(fso::parse_descriptions(std::string(kPrefixes) + "[ " + kTimes + " ; service:provide service:A ]"),
                    fso::ParseError);
  }
  SUBCASE("undeclared prefix") {
    auto text = record(std::string(kTimes) + " ;\n  service:provide foo:Walking");
    CHECK_THROWS_AS(fso::parse_descriptions(text), fso::ParseError);
  }
  SUBCASE("wrong datatype") {
    auto text = record(
        "  service:creationTime \"2013-05-12T13:00:00\"^^xsd:string ;\n"
        "  service:startTime \"2013-05-12T17:00:00\"^^xsd:dateTime ;\n"
        "  service:endTime \"2013-05-12T21:00:00\"^^xsd:dateTime ;\n"
        "  service:hasCreator <http://example.org/u#this> ;\n"
        "  service:provide service:Walking");
    CHECK_THROWS_AS(fso::parse_descriptions(text), fso::ParseError);
  }
  SUBCASE("malformed timestamp") {
    auto text = record(
        "  service:creationTime \"2013-5-12 13:00\"^^xsd:dateTime ;\n"
        "  service:startTime \"2013-05-12T17:00:00\"^^xsd:dateTime ;\n"
        "  service:endTime \"2013-05-12T21:00:00\"^^xsd:dateTime ;\n"
        "  service:hasCreator <http://example.org/u#this> ;\n"
        "  service:provide service:Walking");
    CHECK_THROWS_AS(fso::parse_descriptions(text), fso::ParseError);
  }
  SUBCASE("object lists are outside the subset") {
    auto text = record(std::string(kTimes) + " ;\n  service:provide service:A, service:B");
    CHECK_THROWS_AS(fso::parse_descriptions(text), fso::ParseError);
  }
  SUBCASE("unterminated IRI") {
    CHECK_THROWS_AS(fso::parse_descriptions("@prefix service: <http://x"), fso::ParseError);
  }
}

TEST_CASE("prefix rebinding and full IRIs") {
  auto text =
      "@prefix s: <http://www.pats.ua.ac.be/AALService#> .\n"
      "@prefix service: <http://other.example/ns#> .\n"
      "@prefix x: <http://www.w3.org/2001/XMLSchema#> .\n"
      "[ service:creationTime \"2013-05-12T13:00:00\"^^x:dateTime ;\n"
      "  service:startTime \"2013-05-12T17:00:00\"^^<http://www.w3.org/2001/XMLSchema#dateTime> ;\n"
      "  service:endTime \"2013-05-12T21:00:00\"^^x:dateTime ;\n"
      "  service:hasCreator <http://example.org/u#this> ;\n"
      "  service:provide service:Walking ;\n"
      "  service:request s:Walking ] .\n";
  auto records = fso::parse_descriptions(text);
  REQUIRE(records.size() == 1);
  // service: now names the other namespace, so its types are local there
  CHECK(records[0].provide == "Walking");
  CHECK(records[0].request == "http://www.pats.ua.ac.be/AALService#Walking");
}

TEST_CASE("canonical location block and multiple records") {
  auto two = std::string(kPrefixes) +
             "[ " + kTimes + " ;\n  service:hasServiceLocation [ a <http://schema.org/Park> ] ;\n"
             "  service:provide service:Location ] .\n"
             "[ a <http://example.org/Offer> ; " + kTimes + " ;\n  service:request service:Location ; ] .\n";
  auto records = fso::parse_descriptions(two);
  REQUIRE(records.size() == 2);
  CHECK(records[0].location == fso::LocationSpec{"http://schema.org/Park", std::nullopt});
  CHECK(fso::classify(records[0]) == Role::ProviderOnly);
  CHECK(fso::classify(records[1]) == Role::RequesterOnly);
  CHECK(fso::parse_descriptions(fso::serialize_descriptions(records)) == records);
}

TEST_CASE("serialization is canonical") {
  auto d = fso::parse_descriptions(fixtures::sample_text()).front();
  auto text = fso::serialize_description(d);
  CHECK(text ==
        "@prefix service: <http://www.pats.ua.ac.be/AALService#> .\n"
        "@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n"
        "\n"
        "[\n"
        "  service:creationTime \"2013-05-12T13:00:00\"^^xsd:dateTime ;\n"
        "  service:endTime \"2013-05-12T21:00:00\"^^xsd:dateTime ;\n"
        "  service:hasCreator <http://www.pats.ua.ac.be/aal/user/15441#this> ;\n"
        "  service:hasServiceLocation [ a <http://schema.org/Beach> ; "
        "<http://dbpedia.org/ontology/location> <http://dbpedia.org/resource/Borgerhout> ] ;\n"
        "  service:provide service:Walking ;\n"
        "  service:request service:Walking ;\n"
        "  service:startTime \"2013-05-12T17:00:00\"^^xsd:dateTime\n"
        "] .\n");
  auto copy = d;
  CHECK(fso::serialize_description(copy) == text);
  auto reparsed = fso::parse_descriptions(text);
  REQUIRE(reparsed.size() == 1);
  CHECK(reparsed.front() == d);
}

TEST_CASE("parse inverts serialize on random records") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    auto d = fixtures::random_description(rng);
    auto text = fso::serialize_description(d);
    auto back = fso::parse_descriptions(text);
    REQUIRE(back.size() == 1);
    REQUIRE(back.front() == d);
    CHECK(fso::serialize_description(back.front()) == text);
  }
}

TEST_CASE("timestamps") {
  CHECK(fso::Timestamp::parse("2013-05-12T13:00:00") < fso::Timestamp::parse("2013-05-12T13:00:01"));
  CHECK(fso::Timestamp::parse("2013-05-12T13:00:00") < fso::Timestamp::parse("2013-05-12T13:00:00.5"));
  CHECK_THROWS_AS(fso::Timestamp::parse("2013-05-12T13:00:00Z"), fso::ValidationError);
  CHECK_THROWS_AS(fso::Timestamp::parse("2013-13-12T13:00:00"), fso::ValidationError);
  CHECK_THROWS_AS(fso::Timestamp::parse("2013-05-12"), fso::ValidationError);
}
