#include <doctest.h>

#include <algorithm>

#include "gen.hpp"
#include "lr/checker.hpp"
#include "lr/error.hpp"
#include "lr/parse.hpp"
#include "oracle.hpp"

using namespace lr;

namespace {

constexpr Usage Z = Lin01wSemiring::kZero;
constexpr Usage O = Lin01wSemiring::kOne;
constexpr Usage W = Lin01wSemiring::kOmega;

Derivation check_text(const Semiring& sr, const std::string& text) {
  Judgment j = parse_judgment(sr, text);
  return check(sr, j.ctx, j.usage, j.term, j.type);
}

Derivation infer_text(const Semiring& sr, const std::string& text) {
  Judgment j = parse_judgment(sr, text);
  return infer_check(sr, j.ctx, j.usage, j.term, j.type);
}

Error error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  return Error(ErrorKind::Defect, "no error raised");
}

}  // namespace

TEST_CASE("annotated checking") {
  const auto& sr = lin01w();
  Derivation d = check_text(sr, "x :w A |- (x, x)@{(w);(w)} : A * A");
  CHECK(d.rule == "*-I");
  REQUIRE(d.children.size() == 2);
  CHECK(d.children[0].rule == "var");
  CHECK(d.children[0].usage == UsageCtx{W});
  CHECK(derivation_size(d) == 3);
  validate(sr, d);

  SUBCASE("missing split") {
    Error e = error_of([&] { check_text(sr, "x :w A |- (x, x) : A * A"); });
    CHECK(e.kind() == ErrorKind::MissingAnnotation);
  }
  SUBCASE("usage failure carries its location") {
    Error e = error_of([&] {
      check_text(sr, "x :1 A, y :1 B |- (x, (y, x)@{(0,1);(1,0)})@{(1,0);(0,1)} : A * (B * A)");
    });
    CHECK(e.kind() == ErrorKind::UsageMismatch);
    CHECK(e.path == std::vector<std::size_t>{1});
    CHECK_FALSE(e.lhs.empty());
    CHECK_FALSE(e.rhs.empty());
    CHECK(e.report().find("UsageMismatch") != std::string::npos);
  }
  SUBCASE("type failure") {
    Error e = error_of([&] { check_text(sr, "x :1 A |- x : B"); });
    CHECK(e.kind() == ErrorKind::TypeMismatch);
  }
}

TEST_CASE("inference picks canonical splits") {
  const auto& sr = lin01w();
  Derivation d = infer_text(sr, "x :w A, y :1 B |- (x, (y, x)) : A * (B * A)");
  CHECK(d.term->split_p.has_value());
  // Re-checking the elaborated, annotated term gives the same derivation.
  Derivation again = check(sr, d.ctx, d.usage, d.term, d.type);
  CHECK(same_derivation(d, again));

  Error e = error_of([&] { infer_text(sr, "x :1 A |- (x, x) : A * A"); });
  CHECK(e.kind() == ErrorKind::UsageMismatch);
  CHECK(e.coordinate == 0u);

  // Subusage: an unused variable may be anything below 0.
  CHECK_NOTHROW(infer_text(sr, "x :w A, y :0 B |- x : A"));
  CHECK(error_of([&] { infer_text(sr, "x :1 A, y :1 B |- x : A"); }).kind() ==
        ErrorKind::UsageMismatch);
}

TEST_CASE("demand synthesis") {
  const auto& sr = lin01w();
  auto demand_of = [&](const Semiring& s, const std::string& text) {
    Judgment j = parse_judgment(s, text);
    return synthesize_demand(s, j.ctx, j.term, j.type);
  };
  CHECK(demand_of(sr, "x :1 A |- (x, x) : A * A").maximal == std::vector<UsageCtx>{{W}});
  CHECK(demand_of(sr, "|- \\x:A. x : A -o A").maximal == std::vector<UsageCtx>{{}});
  CHECK(demand_of(sr, "x :1 A, y :1 B |- x : A").maximal == std::vector<UsageCtx>{{O, Z}});
  // Top-I demands nothing; over lin01w both maximal elements survive.
  auto eat = demand_of(sr, "x :1 A |- (<> : Top) : Top").maximal;
  CHECK(eat.size() == 2);
  CHECK(Demand{eat}.admits(sr, UsageCtx{W}));

  SUBCASE("binder that its body cannot satisfy") {
    Error e = error_of([&] { demand_of(sr, "|- \\x:A. (x, x) : A -o A * A"); });
    CHECK(e.kind() == ErrorKind::BoundUsageError);
  }
  SUBCASE("nat has no meet of distinct demands") {
    const auto& n = exact_nat();
    Error e = error_of([&] { demand_of(n, "x :1 A |- <x, ()> : A & I"); });
    CHECK(e.kind() == ErrorKind::NoMeet);
    CHECK(demand_of(n, "x :1 A |- <x, x> : A & A").maximal == std::vector<UsageCtx>{{Usage{1}}});
  }
}

TEST_CASE("elaboration fills eliminator ascriptions") {
  const auto& sr = trivial();
  Judgment j = parse_judgment(sr, "p :* A * B |- let (a, b) = p in (b, a) : B * A");
  TermPtr t = elaborate(sr, j.ctx, j.term, j.type);
  REQUIRE(t->type);
  CHECK(print(sr, *t->type) == "B * A");
  CHECK(error_of([&] { elaborate(sr, j.ctx, j.term, ty::base("A")); }).kind() ==
        ErrorKind::TypeMismatch);
}

TEST_CASE("bottom-up form") {
  const auto& sr = lin01w();
  Derivation d = infer_text(sr, "x :w A, y :0 B |- (x, x) : A * A");
  Derivation bu = to_bottom_up(sr, d);
  CHECK(bu.usage == d.usage);
  std::string why;
  CHECK(is_bottom_up(sr, bu, false, &why));
  validate(sr, bu);
  CHECK(same_derivation(to_bottom_up(sr, bu), bu));
  // 1 + 1 is not a bottom-up fact.
  Derivation one_one = check_text(sr, "x :w A |- (x, x)@{(1);(1)} : A * A");
  CHECK_FALSE(is_bottom_up(sr, one_one, false, &why));
  CHECK_FALSE(why.empty());
  CHECK(is_bottom_up(sr, to_bottom_up(sr, one_one)));
}

TEST_CASE("validate finds the first disagreeing node") {
  const auto& sr = lin01w();
  Derivation d = check_text(sr, "x :w A |- (x, x)@{(w);(w)} : A * A");
  Derivation bad = d;
  bad.children[1].rule = "Top-I";
  Error e = error_of([&] { validate(sr, bad); });
  CHECK(e.kind() == ErrorKind::RuleMismatch);
  CHECK(e.path == std::vector<std::size_t>{1});
  CHECK(first_difference(d, bad) == std::vector<std::size_t>{1});
  CHECK_FALSE(first_difference(d, d).has_value());
}

TEST_CASE("the trivial semiring accepts every simply typed term") {
  lrtest::Rng rng(5);
  const auto& sr = trivial();
  for (int n = 0; n < 200; ++n) {
    Derivation d = lrtest::random_derivation(sr, rng, {5, 3, 2, nullptr, 1});
    CHECK(lrtest::stlc_checks(d.ctx, d.term, d.type));
    CHECK_NOTHROW(infer_check(sr, d.ctx, d.usage, erase(d.term), d.type));
  }
}

TEST_CASE("render shows one node per line") {
  const auto& sr = lin01w();
  Derivation d = check_text(sr, "x :w A |- (x, x)@{(w);(w)} : A * A");
  std::string r = render(sr, d);
  CHECK(std::count(r.begin(), r.end(), '\n') >= 2);
  CHECK(r.find("*-I") != std::string::npos);
  CHECK(print(sr, d.facts.front()).find("+") != std::string::npos);
}
