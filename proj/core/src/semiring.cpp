#include "lr/semiring.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <random>

#include "lr/error.hpp"

namespace lr {

std::optional<Usage> Semiring::meet(Usage, Usage) const { return std::nullopt; }
std::optional<Usage> Semiring::top() const { return std::nullopt; }
std::optional<std::vector<Usage>> Semiring::elements() const { return std::nullopt; }
bool Semiring::bottom_up_add(Usage, Usage) const { return true; }
bool Semiring::bottom_up_mul(Usage, Usage) const { return true; }

std::vector<Usage> Semiring::maximal_elements() const {
  auto all = elements();
  if (!all) fail(ErrorKind::NoMeet, std::string(name()) + " has no finite carrier");
  std::vector<Usage> out;
  for (Usage x : *all) {
    bool dominated = std::any_of(all->begin(), all->end(),
                                 [&](Usage y) { return y != x && leq(x, y); });
    if (!dominated) out.push_back(x);
  }
  return out;
}

bool Semiring::contains(Usage u) const {
  auto all = elements();
  if (!all) return parse(print(u)).has_value();
  return std::find(all->begin(), all->end(), u) != all->end();
}

Usage Semiring::meet_or_fail(Usage a, Usage b) const {
  if (auto m = meet(a, b)) return *m;
  fail(ErrorKind::NoMeet, "no meet of " + print(a) + " and " + print(b) + " in " +
                              std::string(name()) + "; annotate this node explicitly");
}

Usage Semiring::parse_or_fail(std::string_view text) const {
  if (auto u = parse(text)) return *u;
  fail(ErrorKind::ParseError,
       "'" + std::string(text) + "' is not a usage of " + std::string(name()));
}

// Trivial

std::optional<std::vector<Usage>> TrivialSemiring::elements() const {
  return std::vector<Usage>{{0}};
}

std::string TrivialSemiring::print(Usage) const { return "*"; }

std::optional<Usage> TrivialSemiring::parse(std::string_view text) const {
  if (text == "*") return Usage{0};
  return std::nullopt;
}

// Lin01w

Usage Lin01wSemiring::add(Usage a, Usage b) const {
  if (a == kZero) return b;
  if (b == kZero) return a;
  return kOmega;
}

Usage Lin01wSemiring::mul(Usage a, Usage b) const {
  if (a == kZero || b == kZero) return kZero;
  if (a == kOne) return b;
  if (b == kOne) return a;
  return kOmega;
}

bool Lin01wSemiring::leq(Usage a, Usage b) const { return a == b || a == kOmega; }

std::optional<Usage> Lin01wSemiring::meet(Usage a, Usage b) const {
  return a == b ? a : kOmega;
}

std::optional<std::vector<Usage>> Lin01wSemiring::elements() const {
  return std::vector<Usage>{kZero, kOne, kOmega};
}

bool Lin01wSemiring::bottom_up_add(Usage p, Usage q) const {
  return (p == kZero && q == kZero) || (p == kZero && q == kOne) ||
         (p == kOne && q == kZero) || (p == kOmega && q == kOmega);
}

bool Lin01wSemiring::bottom_up_mul(Usage r, Usage p) const {
  if (r == kZero) return p == kOmega;
  if (r == kOne) return true;
  return p != kOne;
}

std::string Lin01wSemiring::print(Usage u) const {
  if (u == kZero) return "0";
  if (u == kOne) return "1";
  return "w";
}

std::optional<Usage> Lin01wSemiring::parse(std::string_view text) const {
  if (text == "0") return kZero;
  if (text == "1") return kOne;
  if (text == "w") return kOmega;
  return std::nullopt;
}

// Mod01Box

namespace {

// Position in the chain box <| 1 <| 0.
int box_rank(Usage u) {
  if (u == Mod01BoxSemiring::kBox) return 0;
  if (u == Mod01BoxSemiring::kOne) return 1;
  return 2;
}

}  // namespace

Usage Mod01BoxSemiring::add(Usage a, Usage b) const {
  return box_rank(a) <= box_rank(b) ? a : b;
}

Usage Mod01BoxSemiring::mul(Usage a, Usage b) const {
  if (a == kZero || b == kZero) return kZero;
  if (a == kOne) return b;
  return kBox;
}

bool Mod01BoxSemiring::leq(Usage a, Usage b) const { return box_rank(a) <= box_rank(b); }

std::optional<Usage> Mod01BoxSemiring::meet(Usage a, Usage b) const { return add(a, b); }

std::optional<std::vector<Usage>> Mod01BoxSemiring::elements() const {
  return std::vector<Usage>{kZero, kOne, kBox};
}

bool Mod01BoxSemiring::bottom_up_add(Usage p, Usage q) const { return p == q; }

bool Mod01BoxSemiring::bottom_up_mul(Usage r, Usage p) const {
  if (r == kZero) return p == kBox;
  if (r == kOne) return true;
  return p != kOne;
}

std::string Mod01BoxSemiring::print(Usage u) const {
  if (u == kZero) return "0";
  if (u == kOne) return "1";
  return "#";
}

std::optional<Usage> Mod01BoxSemiring::parse(std::string_view text) const {
  if (text == "0") return kZero;
  if (text == "1") return kOne;
  if (text == "#") return kBox;
  return std::nullopt;
}

// ExactNat

std::optional<Usage> ExactNatSemiring::meet(Usage a, Usage b) const {
  if (a == b) return a;
  return std::nullopt;
}

std::string ExactNatSemiring::print(Usage u) const { return std::to_string(u.value); }

std::optional<Usage> ExactNatSemiring::parse(std::string_view text) const {
  if (text.empty() || text.size() > 18) return std::nullopt;
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return Usage{v};
}

const TrivialSemiring& trivial() {
  static const TrivialSemiring instance;
  return instance;
}
const Lin01wSemiring& lin01w() {
  static const Lin01wSemiring instance;
  return instance;
}
const Mod01BoxSemiring& mod01box() {
  static const Mod01BoxSemiring instance;
  return instance;
}
const ExactNatSemiring& exact_nat() {
  static const ExactNatSemiring instance;
  return instance;
}

const Semiring& semiring_by_name(std::string_view name) {
  if (name == "trivial") return trivial();
  if (name == "lin01w") return lin01w();
  if (name == "mod01box") return mod01box();
  if (name == "nat") return exact_nat();
  fail(ErrorKind::UnknownSemiring, "unknown semiring '" + std::string(name) +
                                       "' (expected trivial, lin01w, mod01box or nat)");
}

// Law audit

namespace {

class Auditor {
 public:
  explicit Auditor(const Semiring& sr) : sr_(sr) {}

  void pair(Usage x, Usage y) {
    expect(sr_.add(x, y) == sr_.add(y, x), "add commutative", {x, y});
    if (sr_.leq(x, y) && sr_.leq(y, x))
      expect(x == y, "leq antisymmetric", {x, y});
    if (auto m = sr_.meet(x, y)) {
      expect(sr_.leq(*m, x) && sr_.leq(*m, y), "meet is a lower bound", {x, y});
    }
  }

  void single(Usage x) {
    expect(sr_.leq(x, x), "leq reflexive", {x});
    expect(sr_.add(sr_.zero(), x) == x, "zero left identity", {x});
    expect(sr_.add(x, sr_.zero()) == x, "zero right identity", {x});
    expect(sr_.leq(sr_.mul(sr_.one(), x), x), "1x <| x", {x});
    expect(sr_.leq(x, sr_.mul(x, sr_.one())), "x <| x1", {x});
    expect(sr_.leq(sr_.mul(sr_.zero(), x), sr_.zero()), "0z <| 0", {x});
    expect(sr_.leq(sr_.zero(), sr_.mul(x, sr_.zero())), "0 <| x0", {x});
    if (auto t = sr_.top()) expect(sr_.leq(x, *t), "top is greatest", {x});
  }

  void triple(Usage x, Usage y, Usage z) {
    const Semiring& s = sr_;
    expect(s.add(s.add(x, y), z) == s.add(x, s.add(y, z)), "add associative", {x, y, z});
    expect(s.leq(s.mul(s.mul(x, y), z), s.mul(x, s.mul(y, z))), "(xy)z <| x(yz)", {x, y, z});
    expect(s.leq(s.mul(s.add(x, y), z), s.add(s.mul(x, z), s.mul(y, z))),
           "(x+y)z <| xz+yz", {x, y, z});
    expect(s.leq(s.add(s.mul(x, y), s.mul(x, z)), s.mul(x, s.add(y, z))),
           "xy+xz <| x(y+z)", {x, y, z});
    if (s.leq(x, y) && s.leq(y, z)) expect(s.leq(x, z), "leq transitive", {x, y, z});
    if (s.leq(x, y)) {
      expect(s.leq(s.add(x, z), s.add(y, z)), "add monotone left", {x, y, z});
      expect(s.leq(s.add(z, x), s.add(z, y)), "add monotone right", {x, y, z});
      expect(s.leq(s.mul(x, z), s.mul(y, z)), "mul monotone left", {x, y, z});
      expect(s.leq(s.mul(z, x), s.mul(z, y)), "mul monotone right", {x, y, z});
    }
    // z is a common lower bound of x and y: the declared meet must be above it.
    if (s.leq(z, x) && s.leq(z, y)) {
      if (auto m = s.meet(x, y)) expect(s.leq(z, *m), "meet is greatest", {x, y, z});
    }
  }

  std::vector<LawViolation> take() { return std::move(violations_); }

 private:
  void expect(bool ok, const char* law, std::vector<Usage> witness) {
    if (!ok) violations_.push_back({law, std::move(witness)});
  }

  const Semiring& sr_;
  std::vector<LawViolation> violations_;
};

void audit_range(Auditor& a, const std::vector<Usage>& values) {
  for (Usage x : values) {
    a.single(x);
    for (Usage y : values) {
      a.pair(x, y);
      for (Usage z : values) a.triple(x, y, z);
    }
  }
}

}  // namespace

std::vector<LawViolation> law_audit(const Semiring& sr, std::size_t budget,
                                    std::uint64_t small_bound, std::uint64_t seed) {
  Auditor auditor(sr);
  if (auto all = sr.elements()) {
    audit_range(auditor, *all);
    return auditor.take();
  }
  std::vector<Usage> small;
  for (std::uint64_t v = 0; v <= small_bound; ++v) small.push_back({v});
  audit_range(auditor, small);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(small_bound + 1, 100000);
  for (std::size_t i = 0; i < std::max<std::size_t>(budget, 1); ++i) {
    Usage x{dist(rng)}, y{dist(rng)}, z{dist(rng)};
    auditor.single(x);
    auditor.pair(x, y);
    auditor.triple(x, y, z);
    auditor.triple(x, x, y);
  }
  return auditor.take();
}

bool zero_top_and_add_meet(const Semiring& sr) {
  auto all = sr.elements();
  if (!all) return false;
  for (Usage x : *all) {
    if (!sr.leq(x, sr.zero())) return false;
    for (Usage y : *all) {
      Usage s = sr.add(x, y);
      if (!sr.leq(s, x) || !sr.leq(s, y)) return false;
      for (Usage z : *all)
        if (sr.leq(z, x) && sr.leq(z, y) && !sr.leq(z, s)) return false;
    }
  }
  return true;
}

}  // namespace lr
