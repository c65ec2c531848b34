#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lr {

/// One element of a skew semiring. The encoding is owned by the instance.
struct Usage {
  std::uint64_t value = 0;

  friend bool operator==(Usage, Usage) = default;
  friend auto operator<=>(Usage, Usage) = default;
};

/// A (left) skew semiring: a partial order with monotone + and *, where
/// (0, +) is a commutative monoid and the unit, associativity and
/// distributivity laws of * hold only as inequalities in fixed directions.
///
/// Instances are stateless and immutable.
class Semiring {
 public:
  virtual ~Semiring() = default;

  virtual std::string_view name() const = 0;
  virtual Usage zero() const = 0;
  virtual Usage one() const = 0;
  virtual Usage add(Usage a, Usage b) const = 0;
  virtual Usage mul(Usage a, Usage b) const = 0;
  virtual bool leq(Usage a, Usage b) const = 0;

  /// Greatest lower bound, when the instance declares one for this pair.
  virtual std::optional<Usage> meet(Usage a, Usage b) const;
  /// Top element of the order, if any.
  virtual std::optional<Usage> top() const;
  /// The whole carrier, for finite instances.
  virtual std::optional<std::vector<Usage>> elements() const;

  /// Which addition/multiplication facts a bottom-up derivation may use.
  /// Instances without published tables allow every fact.
  virtual bool bottom_up_add(Usage p, Usage q) const;
  virtual bool bottom_up_mul(Usage r, Usage p) const;

  virtual std::string print(Usage u) const = 0;
  virtual std::optional<Usage> parse(std::string_view text) const = 0;

  bool enumerable() const { return elements().has_value(); }
  /// Maximal elements of a finite carrier.
  std::vector<Usage> maximal_elements() const;
  bool contains(Usage u) const;
  /// meet() or an Error of kind NoMeet.
  Usage meet_or_fail(Usage a, Usage b) const;
  /// parse() or an Error of kind ParseError.
  Usage parse_or_fail(std::string_view text) const;
};

/// The one-element semiring {*}.
class TrivialSemiring : public Semiring {
 public:
  std::string_view name() const override { return "trivial"; }
  Usage zero() const override { return {0}; }
  Usage one() const override { return {0}; }
  Usage add(Usage, Usage) const override { return {0}; }
  Usage mul(Usage, Usage) const override { return {0}; }
  bool leq(Usage, Usage) const override { return true; }
  std::optional<Usage> meet(Usage, Usage) const override { return Usage{0}; }
  std::optional<Usage> top() const override { return Usage{0}; }
  std::optional<std::vector<Usage>> elements() const override;
  std::string print(Usage u) const override;
  std::optional<Usage> parse(std::string_view text) const override;
};

/// Linearity semiring {0, 1, w} ordered by w <| 0 and w <| 1.
class Lin01wSemiring : public Semiring {
 public:
  static constexpr Usage kZero{0};
  static constexpr Usage kOne{1};
  static constexpr Usage kOmega{2};

  std::string_view name() const override { return "lin01w"; }
  Usage zero() const override { return kZero; }
  Usage one() const override { return kOne; }
  Usage add(Usage a, Usage b) const override;
  Usage mul(Usage a, Usage b) const override;
  bool leq(Usage a, Usage b) const override;
  std::optional<Usage> meet(Usage a, Usage b) const override;
  std::optional<std::vector<Usage>> elements() const override;
  bool bottom_up_add(Usage p, Usage q) const override;
  bool bottom_up_mul(Usage r, Usage p) const override;
  std::string print(Usage u) const override;
  std::optional<Usage> parse(std::string_view text) const override;
};

/// Modal semiring on the chain box <| 1 <| 0, with + the meet.
class Mod01BoxSemiring : public Semiring {
 public:
  static constexpr Usage kZero{0};
  static constexpr Usage kOne{1};
  static constexpr Usage kBox{2};

  std::string_view name() const override { return "mod01box"; }
  Usage zero() const override { return kZero; }
  Usage one() const override { return kOne; }
  Usage add(Usage a, Usage b) const override;
  Usage mul(Usage a, Usage b) const override;
  bool leq(Usage a, Usage b) const override;
  std::optional<Usage> meet(Usage a, Usage b) const override;
  std::optional<Usage> top() const override { return kZero; }
  std::optional<std::vector<Usage>> elements() const override;
  bool bottom_up_add(Usage p, Usage q) const override;
  bool bottom_up_mul(Usage r, Usage p) const override;
  std::string print(Usage u) const override;
  std::optional<Usage> parse(std::string_view text) const override;
};

/// Natural numbers with ordinary arithmetic and the discrete order.
class ExactNatSemiring : public Semiring {
 public:
  std::string_view name() const override { return "nat"; }
  Usage zero() const override { return {0}; }
  Usage one() const override { return {1}; }
  Usage add(Usage a, Usage b) const override { return {a.value + b.value}; }
  Usage mul(Usage a, Usage b) const override { return {a.value * b.value}; }
  bool leq(Usage a, Usage b) const override { return a == b; }
  std::optional<Usage> meet(Usage a, Usage b) const override;
  std::string print(Usage u) const override;
  std::optional<Usage> parse(std::string_view text) const override;
};

const TrivialSemiring& trivial();
const Lin01wSemiring& lin01w();
const Mod01BoxSemiring& mod01box();
const ExactNatSemiring& exact_nat();

/// Looks up "trivial" | "lin01w" | "mod01box" | "nat".
const Semiring& semiring_by_name(std::string_view name);

struct LawViolation {
  std::string law;
  std::vector<Usage> witness;
};

/// Checks every skew-semiring law. Finite instances are checked
/// exhaustively and `budget` is ignored; infinite ones exhaustively over
/// values up to `small_bound` plus `budget` random tuples above it.
std::vector<LawViolation> law_audit(const Semiring& sr, std::size_t budget = 1000,
                                    std::uint64_t small_bound = 8,
                                    std::uint64_t seed = 0x5eed);

/// Whether 0 is the top element and + is the binary meet. Only decidable
/// for finite instances; infinite ones report false.
bool zero_top_and_add_meet(const Semiring& sr);

}  // namespace lr
