#include <doctest.h>

#include "lr/dill.hpp"
#include "lr/error.hpp"
#include "lr/parse.hpp"
#include "lr/pd.hpp"

using namespace lr;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Defect;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    out.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

DillDerivation dill_script(const std::string& seq, const std::string& script) {
  return dill_check(parse_dill_sequent(seq), parse_script(lines(script), 1));
}

PdDerivation pd_script(const std::string& seq, const std::string& script) {
  return pd_check(parse_pd_sequent(seq), parse_script(lines(script), 1));
}

const char* kDillFile = R"(logic dill
base A, B

x:A | y:B |- !A * B
  tensor-I
    bang-I
      int-ax
    lin-ax

| p:A * B |- B * A
  tensor-E left=p ty={A * B} as=a,b
    lin-ax
    tensor-I left=b
      lin-ax
      lin-ax

x:A | |- A + B -o !A * (A + B)
  lolli-I as=s
    plus-E left=s ty={A + B} as=l,r
      lin-ax
      tensor-I
        bang-I
          int-ax
        plus-I1
          lin-ax
      tensor-I
        bang-I
          int-ax
        plus-I2
          lin-ax
)";

const char* kPdFile = R"(logic pd
base A, B

x:A |v y:B |- []A /\ B true
  and-I
    box-I
      hyp*
    hyp

|v p:[]A |- []([]A) true
  box-E ty={[]A} as=u
    hyp
    box-I
      box-I
        hyp*
)";

}  // namespace

TEST_CASE("formulas") {
  const auto& ds = dill::formula_syntax();
  for (const char* s : {"A", "I", "Top", "0", "!A", "A * B", "A -o B -o A", "(A -o B) -o A",
                        "!(A & B)", "A + B * A"})
    CHECK(print_formula(ds, parse_formula(ds, s)) == s);
  const auto& ps = pd::formula_syntax();
  for (const char* s : {"T", "F", "[]A", "A => B", "A \\/ B /\\ A", "[](A => B)"})
    CHECK(print_formula(ps, parse_formula(ps, s)) == s);
  CHECK(kind_of([&] { parse_formula(ds, "A *"); }) == ErrorKind::ParseError);
  CHECK(kind_of([&] { parse_formula(ds, "C", {"A", "B"}); }) == ErrorKind::ParseError);
  CHECK(kind_of([&] { parse_dill_sequent("x:A | x:B |- A"); }) == ErrorKind::ScopeError);
  CHECK(print(parse_dill_sequent("x:A | y:B |- A * B")) == "x:A | y:B |- A * B");
  CHECK(print_pd(parse_pd_sequent("x:A |v |- A true")) == "x:A |v |- A true");
}

TEST_CASE("DILL files check and print back") {
  DillFile f = parse_dill_file(kDillFile);
  REQUIRE(f.proofs.size() == 3);
  CHECK(f.proofs[1].rule == dill::Rule::TensorE);
  for (const auto& d : f.proofs) {
    dill_validate(d);
    CHECK(same_sequent(dill_check(d.seq, to_script(d)).seq, d.seq));
  }
  DillFile again = parse_dill_file(print(f));
  CHECK(print(again) == print(f));
}

TEST_CASE("DILL script errors") {
  SUBCASE("linear hypothesis sent to the wrong premise") {
    CHECK(kind_of([&] {
            dill_script("| y:A, z:B |- A * B", "tensor-I left=z\n  lin-ax\n  lin-ax");
          }) == ErrorKind::RuleMismatch);
  }
  SUBCASE("left names something outside the linear zone") {
    CHECK(kind_of([&] {
            dill_script("| y:A, z:B |- A * B", "tensor-I left=q\n  lin-ax\n  lin-ax");
          }) == ErrorKind::ZoneSplitError);
  }
  SUBCASE("rule does not fit the goal") {
    CHECK(kind_of([&] { dill_script("| y:A |- A * A", "lolli-I as=s\n  lin-ax"); }) ==
          ErrorKind::RuleMismatch);
  }
  SUBCASE("unused linear hypothesis at an axiom") {
    CHECK(kind_of([&] { dill_script("| y:A, z:B |- A", "lin-ax"); }) == ErrorKind::ZoneSplitError);
  }
  SUBCASE("unknown rule") {
    CHECK(kind_of([&] { dill_script("| y:A |- A", "ax"); }) == ErrorKind::RuleMismatch);
  }
}

TEST_CASE("DILL to LR and back") {
  DillFile f = parse_dill_file(kDillFile);
  for (const auto& d : f.proofs) {
    Derivation lr = dill_to_lr(d);
    validate(lin01w(), lr);
    DillDerivation back = lr_to_dill(lr, partition_of(lr.usage));
    CHECK(same_sequent(back.seq, d.seq));
    dill_validate(back);
  }
  TyPtr t = embed_ty_dill(parse_dill_type("!A -o B"));
  CHECK(print(lin01w(), *t) == "![w] A -o B");
  CHECK(kind_of([&] { unembed_ty_dill(ty::bang(Lin01wSemiring::kOne, ty::base("A"))); }) ==
        ErrorKind::NonDillType);
  Derivation lr = dill_to_lr(f.proofs[0]);
  CHECK(kind_of([&] {
          lr_to_dill(lr, std::vector<ZoneClass>(lr.ctx.size(), ZoneClass::Linear));
        }) == ErrorKind::ZoneSplitError);
}

TEST_CASE("PD files, scripts and translation") {
  PdFile f = parse_pd_file(kPdFile);
  REQUIRE(f.proofs.size() == 2);
  for (const auto& d : f.proofs) {
    pd_validate(d);
    Derivation lr = pd_to_lr(d);
    validate(mod01box(), lr);
    PdDerivation back = lr_to_pd(lr, partition_of_box(lr.usage));
    CHECK(same_sequent(back.seq, d.seq));
    pd_validate(back);
  }
  CHECK(print(parse_pd_file(print(f))) == print(f));

  // box-I needs an empty true zone in its premise, so hyp cannot use y.
  CHECK(kind_of([&] { pd_script("x:A |v y:B |- []B true", "box-I\n  hyp"); }) ==
        ErrorKind::RuleMismatch);
  CHECK(kind_of([&] { pd_script("|v y:B |- A true", "hyp"); }) == ErrorKind::RuleMismatch);
  CHECK(kind_of([&] { pd_script("|v y:B |- B true", "hyp var=z"); }) == ErrorKind::RuleMismatch);

  CHECK(print(mod01box(), *embed_ty_pd(parse_pd_type("[]A => T"))) == "![#] A -o I");
  CHECK(kind_of([&] { unembed_ty_pd(ty::bang(Mod01BoxSemiring::kOne, ty::base("A"))); }) ==
        ErrorKind::ForbiddenBang);
  CHECK(kind_of([&] { unembed_ty_pd(ty::tensor(ty::base("A"), ty::base("A"))); }) ==
        ErrorKind::TypeMismatch);
}

TEST_CASE("the top/unit and tensor/with isomorphisms") {
  TopMeetIso iso = top_meet_iso(mod01box(), ty::base("A"), ty::base("B"));
  for (const Derivation* d :
       {&iso.unit_to_top, &iso.top_to_unit, &iso.tensor_to_with, &iso.with_to_tensor})
    validate(mod01box(), *d);
  CHECK(kind_of([&] { top_meet_iso(lin01w(), ty::base("A"), ty::base("B")); }) ==
        ErrorKind::HypothesisFailed);

  Judgment j = parse_judgment(mod01box(), "x :1 A, y :1 B |- (x, y) : A * B");
  Derivation d = infer_check(mod01box(), j.ctx, j.usage, j.term, j.type);
  Derivation w = rewrite_tensors(mod01box(), d);
  CHECK(print(mod01box(), *w.type) == "A & B");
  CHECK(w.usage == d.usage);
  validate(mod01box(), w);
}
