#include <doctest.h>

#include <json.hpp>

#include "gen.hpp"
#include "lr/error.hpp"
#include "lr/json_io.hpp"
#include "lr/parse.hpp"

using namespace lr;
using Json = nlohmann::ordered_json;

namespace {

Derivation infer_text(const Semiring& sr, const std::string& text) {
  Judgment j = parse_judgment(sr, text);
  return infer_check(sr, j.ctx, j.usage, j.term, j.type);
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Defect;
}

}  // namespace

TEST_CASE("field layout") {
  const auto& sr = lin01w();
  Derivation d = infer_text(sr, "x :w A |- (x, x) : A * A");
  Json j = Json::parse(derivation_json(sr, d));
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"rule", "conclusion", "facts", "children"});
  CHECK(j["conclusion"]["ctx"][0]["usage"] == "w");
  CHECK(j["conclusion"]["type"] == "A * A");
  CHECK(j["facts"][0]["kind"] == "add");
  CHECK(j["facts"][0]["lhs"] == "(w) + (w)");
  CHECK(j["children"].size() == 2);
  CHECK(derivation_json(sr, d, -1).find('\n') == std::string::npos);
}

TEST_CASE("documents re-ingest to the same bytes") {
  lrtest::Rng rng(21);
  for (const Semiring* sr : {static_cast<const Semiring*>(&trivial()),
                             static_cast<const Semiring*>(&lin01w()),
                             static_cast<const Semiring*>(&mod01box())}) {
    for (int n = 0; n < 150; ++n) {
      Derivation d = lrtest::random_derivation(*sr, rng, {5, 3, 2, nullptr, 3});
      std::string text = derivation_json(*sr, d);
      Derivation back = derivation_from_json(*sr, text);
      CAPTURE(text);
      CHECK(derivation_json(*sr, back) == text);
    }
  }
}

TEST_CASE("shadowed binders are renamed apart") {
  const auto& sr = trivial();
  Derivation d = infer_text(sr, "x :* A |- \\x:A. x : A -o A");
  std::string text = derivation_json(sr, d);
  Json j = Json::parse(text);
  CHECK(j["conclusion"]["term"] == "\\x1:A. x1");
  CHECK(derivation_json(sr, derivation_from_json(sr, text)) == text);
}

TEST_CASE("malformed and tampered documents") {
  const auto& sr = lin01w();
  CHECK(kind_of([&] { derivation_from_json(sr, "{"); }) == ErrorKind::ParseError);
  CHECK(kind_of([&] { derivation_from_json(sr, "{\"rule\": \"var\"}"); }) ==
        ErrorKind::ParseError);

  Derivation d = infer_text(sr, "x :w A |- (x, x) : A * A");
  Json j = Json::parse(derivation_json(sr, d));
  j["children"][1]["facts"][0]["rhs"] = "(0)";
  try {
    derivation_from_json(sr, j.dump(2));
    FAIL("expected RuleMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RuleMismatch);
    CHECK(e.path == std::vector<std::size_t>{1});
  }
  Json k = Json::parse(derivation_json(sr, d));
  k["conclusion"]["ctx"][0]["usage"] = "1";
  CHECK(kind_of([&] { derivation_from_json(sr, k.dump()); }) == ErrorKind::UsageMismatch);
}
