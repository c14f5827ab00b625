#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "chaincomm/document.hpp"
#include "chaincomm/random.hpp"
#include "helpers.hpp"

using namespace chaincomm;
using namespace chaincomm::testing;

namespace {

json read_fixture(const std::string& name) {
  std::ifstream in(std::string(CHAINCOMM_FIXTURE_DIR) + "/" + name);
  REQUIRE(in);
  return json::parse(in);
}

std::vector<SchemaViolation> violations_of(const json& j) {
  try {
    parse_document(j);
  } catch (const SchemaError& e) {
    return e.violations();
  }
  return {};
}

json line_doc() {
  return json::parse(R"({"format_version":"1","field":{"kind":"Q"},"lo":0,"hi":1,"dims":[1,1],
                         "differentials":[[["1"]]],"endomorphism":[[["1/2"]],[["1/2"]]]})");
}

}  // namespace

TEST_CASE("bundled fixtures round-trip") {
  for (const auto& entry : std::filesystem::directory_iterator(CHAINCOMM_FIXTURE_DIR)) {
    if (entry.path().extension() != ".json") continue;
    CAPTURE(entry.path().string());
    const auto j = read_fixture(entry.path().filename().string());
    CHECK(serialize_document(parse_document(j)) == j);
  }
}

TEST_CASE("example 2 fixture parses and validates") {
  const auto doc = parse_document(read_fixture("example2.json"));
  CHECK(doc.complex->field() == F2);
  REQUIRE(doc.endomorphism.has_value());
  const auto s = split_complex(doc.complex);
  const auto blocks = extract_blocks(*doc.endomorphism, s);
  const Matrix m(F2, {{0, 0}, {1, 0}}), n(F2, {{0, 1}, {0, 0}});
  for (int i = doc.complex->lo(); i <= doc.complex->hi(); ++i) {
    if (blocks.at(i).boundary.rows() > 0) CHECK(blocks.at(i).boundary == m);
    if (blocks.at(i).cohomology.rows() > 0) CHECK(blocks.at(i).cohomology == n);
  }
}

TEST_CASE("rational entries") {
  auto j = line_doc();
  CHECK(violations_of(j).empty());

  j["endomorphism"][0][0][0] = "2/4";
  auto v = violations_of(j);
  REQUIRE(v.size() == 1);
  CHECK(v[0].code == "not_lowest_terms");
  CHECK(v[0].path == "/endomorphism/0/0/0");
  CHECK(v[0].message.find("\"1/2\"") != std::string::npos);

  for (const char* bad : {"1.5", "x", "1/0", "", "1//2", "0x3"}) {
    j["endomorphism"][0][0][0] = bad;
    v = violations_of(j);
    REQUIRE_FALSE(v.empty());
    CHECK(v[0].code == "malformed_number");
  }
  j["endomorphism"][0][0][0] = 0.5;
  CHECK(violations_of(j)[0].code == "malformed_number");
  j["endomorphism"][0][0][0] = "4/2";
  CHECK(violations_of(j)[0].code == "not_lowest_terms");
  j["endomorphism"][0][0][0] = "-3/6";
  CHECK(violations_of(j)[0].message.find("\"-1/2\"") != std::string::npos);
}

TEST_CASE("schema violation codes") {
  auto j = line_doc();
  j["format_version"] = "2";
  CHECK(violations_of(j)[0].code == "bad_format_version");

  j = line_doc();
  j.erase("dims");
  CHECK(violations_of(j)[0].code == "missing_field");
  CHECK(violations_of(j)[0].path == "/dims");

  j = line_doc();
  j["field"] = {{"kind", "Fp"}, {"p", 4}};
  CHECK(violations_of(j)[0].code == "bad_field");

  j = line_doc();
  j["differentials"][0] = json::parse(R"([["1","0"]])");
  CHECK(violations_of(j)[0].code == "shape_mismatch");

  j = line_doc();
  j["endomorphism"][1][0][0] = "2";
  auto v = violations_of(j);
  REQUIRE(v.size() == 1);
  CHECK(v[0].code == "not_chain_map");
  CHECK(v[0].path == "/endomorphism/0");

  j = json::parse(R"({"format_version":"1","field":{"kind":"Q"},"lo":0,"hi":2,"dims":[1,1,1],
                      "differentials":[[["1"]],[["1"]]]})");
  v = violations_of(j);
  REQUIRE(v.size() == 1);
  CHECK(v[0].code == "d_squared_nonzero");

  j = json::parse(R"({"format_version":"1","field":{"kind":"Fp","p":3},"lo":0,"hi":0,"dims":[1],
                      "differentials":[],"endomorphism":[[[3]]]})");
  CHECK(violations_of(j)[0].code == "out_of_range");
  j["endomorphism"][0][0][0] = -1;
  CHECK(violations_of(j)[0].code == "out_of_range");
  j["endomorphism"][0][0][0] = "1";
  CHECK(violations_of(j)[0].code == "malformed_number");

  j = line_doc();
  j["witnesses"] = json::parse(R"([{"kind":"magic"}])");
  CHECK(violations_of(j)[0].code == "bad_witness");

  CHECK_THROWS_AS(parse_document_text("{not json"), SchemaError);
  try {
    parse_document_text("[1,");
  } catch (const SchemaError& e) {
    CHECK(e.violations()[0].code == "malformed_json");
  }
}

TEST_CASE("all bad entries are reported together") {
  auto j = line_doc();
  j["endomorphism"][0][0][0] = "2/4";
  j["endomorphism"][1][0][0] = "z";
  const auto v = violations_of(j);
  CHECK(v.size() == 2);
}

TEST_CASE("witness payloads round-trip") {
  Rng rng(3);
  for (int n = 0; n < 20; ++n) {
    const auto c = random_complex(rng, n % 2 ? F3 : Q, 3, 1 + rng.below(4), -1);
    const auto phi = random_endomorphism(rng, c, Ensure::Theorem4);
    Document d{c, phi, {}};
    try {
      d.witnesses.push_back({4, theorem4_witness(phi)});
    } catch (const ConstructionError&) {
    }
    d.witnesses.push_back({std::nullopt, CommutatorWitness{phi, phi}});
    const auto j = serialize_document(d);
    const auto back = parse_document(j);
    CHECK(serialize_document(back) == j);
    CHECK(*back.complex == *c);
    CHECK(back.endomorphism->maps() == phi.maps());
    CHECK(json::parse(j.dump()) == j);
  }
}
