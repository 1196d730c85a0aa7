#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "cotpath/json_io.hpp"

using namespace cotpath;
using nlohmann::json;

namespace {

json so3_doc() {
  return json::parse(R"({
    "n": 3,
    "terms": [
      {"i": 1, "j": 2, "poly": [{"coef": 1.0, "exp": [0, 0, 1]}]},
      {"i": 2, "j": 3, "poly": [{"coef": 1.0, "exp": [1, 0, 0]}]},
      {"i": 1, "j": 3, "poly": [{"coef": -1.0, "exp": [0, 1, 0]}]}
    ]
  })");
}

}  // namespace

TEST_CASE("parses the so(3) document") {
  const BivectorField pi = bivector_from_json(so3_doc());
  CHECK(pi.n() == 3);
  Eigen::VectorXd q(3);
  q << 1.0, 2.0, 3.0;
  CHECK(pi.entry_eval(1, 2, q) == 3.0);
  CHECK(pi.entry_eval(2, 3, q) == 1.0);
  CHECK(pi.entry_eval(3, 1, q) == 2.0);
}

TEST_CASE("round trip through to_json") {
  const BivectorField pi = bivector_from_json(so3_doc());
  const BivectorField back = bivector_from_json(bivector_to_json(pi));
  Eigen::VectorXd q(3);
  q << -0.3, 0.8, 1.7;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j)
      CHECK(back.entry_eval(i, j, q) == pi.entry_eval(i, j, q));
}

TEST_CASE("omitted terms mean zero entries") {
  const BivectorField pi =
      bivector_from_json(json::parse(R"({"n": 3, "terms": []})"));
  Eigen::VectorXd q(3);
  q << 1, 1, 1;
  CHECK(pi.entry_eval(1, 2, q) == 0.0);
  // A missing terms array is the zero bivector as well.
  CHECK(bivector_from_json(json::parse(R"({"n": 2})")).n() == 2);
}

TEST_CASE("schema violations name the offending field") {
  auto expect_error = [](const char* text, const char* needle) {
    try {
      bivector_from_json(json::parse(text));
      FAIL_CHECK("expected ParseError for: " << text);
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect_error(R"({"terms": []})", "n");
  expect_error(R"({"n": 0, "terms": []})", "n");
  expect_error(R"({"n": 3, "terms": 5})", "terms");
  expect_error(R"({"n": 3, "terms": [{"j": 2, "poly": []}]})", "i");
  expect_error(R"({"n": 3, "terms": [{"i": 2, "j": 1, "poly": []}]})", "i");
  expect_error(R"({"n": 3, "terms": [{"i": 1, "j": 5, "poly": []}]})", "j");
  expect_error(R"({"n": 3, "terms": [{"i": 1, "j": 2}]})", "poly");
  expect_error(
      R"({"n": 3, "terms": [{"i": 1, "j": 2, "poly": [{"exp": [0,0,0]}]}]})",
      "coef");
  expect_error(
      R"({"n": 3, "terms": [{"i": 1, "j": 2, "poly": [{"coef": 1, "exp": [0,0]}]}]})",
      "exp");
  expect_error(
      R"({"n": 3, "terms": [{"i": 1, "j": 2, "poly": [{"coef": 1, "exp": [0,0,-1]}]}]})",
      "exp");
}

TEST_CASE("file-level errors") {
  CHECK_THROWS_AS((void)bivector_from_file("/nonexistent/path.json"),
                  ParseError);
}

TEST_CASE("non-object documents are rejected") {
  CHECK_THROWS_AS(bivector_from_json(json::parse("[1,2,3]")), ParseError);
  CHECK_THROWS_AS(bivector_from_json(json::parse("42")), ParseError);
}
