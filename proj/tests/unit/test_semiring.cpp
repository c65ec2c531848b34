#include <doctest.h>

#include "lr/error.hpp"
#include "lr/semiring.hpp"
#include "oracle.hpp"

using namespace lr;

namespace {

Usage u(int i) { return Usage{static_cast<std::uint64_t>(i)}; }

void against_table(const Semiring& sr, const lrtest::Table3& t) {
  REQUIRE(sr.elements()->size() == 3);
  for (int i = 0; i < 3; ++i) CHECK(sr.print(u(i)) == t.lit[i]);
  CHECK(sr.zero() == u(t.zero));
  CHECK(sr.one() == u(t.one));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      CAPTURE(a);
      CAPTURE(b);
      CHECK(sr.add(u(a), u(b)) == u(t.add[a][b]));
      CHECK(sr.mul(u(a), u(b)) == u(t.mul[a][b]));
      CHECK(sr.leq(u(a), u(b)) == t.leq[a][b]);
      CHECK(sr.bottom_up_add(u(a), u(b)) == (t.bu_add[a][b] >= 0));
      CHECK(sr.bottom_up_mul(u(a), u(b)) == (t.bu_mul[a][b] >= 0));
    }
}

}  // namespace

TEST_CASE("three-element instances agree with the hand tables") {
  SUBCASE("lin01w") { against_table(lin01w(), lrtest::lin01w_table()); }
  SUBCASE("mod01box") { against_table(mod01box(), lrtest::mod01box_table()); }
}

TEST_CASE("meets") {
  const auto& l = lin01w();
  CHECK(l.meet(l.kZero, l.kOne) == l.kOmega);
  CHECK(l.meet(l.kOmega, l.kOne) == l.kOmega);
  CHECK(l.meet(l.kOne, l.kOne) == l.kOne);
  CHECK_FALSE(l.top().has_value());
  CHECK(l.maximal_elements() == std::vector<Usage>{l.kZero, l.kOne});

  const auto& m = mod01box();
  for (Usage a : *m.elements())
    for (Usage b : *m.elements()) CHECK(m.meet(a, b) == m.add(a, b));
  CHECK(m.top() == m.kZero);

  const auto& n = exact_nat();
  CHECK(n.meet({3}, {3}) == Usage{3});
  CHECK_FALSE(n.meet({3}, {4}).has_value());
  try {
    n.meet_or_fail({3}, {4});
    FAIL("expected NoMeet");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoMeet);
  }
}

TEST_CASE("law audit") {
  for (const Semiring* sr : {static_cast<const Semiring*>(&trivial()),
                             static_cast<const Semiring*>(&lin01w()),
                             static_cast<const Semiring*>(&mod01box()),
                             static_cast<const Semiring*>(&exact_nat())}) {
    CAPTURE(sr->name());
    CHECK(law_audit(*sr).empty());
  }
  CHECK(zero_top_and_add_meet(mod01box()));
  CHECK(zero_top_and_add_meet(trivial()));
  CHECK_FALSE(zero_top_and_add_meet(lin01w()));
  CHECK_FALSE(zero_top_and_add_meet(exact_nat()));
}

// A copy of lin01w whose addition is not commutative: 1 + w = 1.
class Broken : public Lin01wSemiring {
 public:
  Usage add(Usage a, Usage b) const override {
    if (a == kOne && b == kOmega) return kOne;
    return Lin01wSemiring::add(a, b);
  }
};

TEST_CASE("law audit names the broken law with a witness") {
  Broken b;
  auto v = law_audit(b);
  REQUIRE_FALSE(v.empty());
  bool commut = false;
  for (const auto& x : v)
    if (x.law.find("commut") != std::string::npos) {
      commut = true;
      CHECK(x.witness.size() >= 2);
    }
  CHECK(commut);
}

TEST_CASE("parse and print") {
  CHECK(lin01w().parse("w") == Lin01wSemiring::kOmega);
  CHECK(mod01box().parse("#") == Mod01BoxSemiring::kBox);
  CHECK(trivial().print(trivial().zero()) == "*");
  CHECK(exact_nat().parse("42") == Usage{42});
  CHECK_FALSE(lin01w().parse("2").has_value());
  CHECK_FALSE(exact_nat().parse("-1").has_value());
  CHECK(semiring_by_name("mod01box").name() == "mod01box");
  try {
    semiring_by_name("real");
    FAIL("expected UnknownSemiring");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownSemiring);
  }
}
