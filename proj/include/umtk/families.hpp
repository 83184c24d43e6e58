#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "umtk/spaces.hpp"
#include "umtk/transform.hpp"

namespace umtk {

// Nonempty list of transforms, each verified increasing and amenable on
// construction; rejected members are named together with their witness.
class FunctionFamily {
 public:
  explicit FunctionFamily(std::vector<TransformFunction> members);

  std::span<const TransformFunction> members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  const TransformFunction& at(std::size_t i) const;

 private:
  std::vector<TransformFunction> members_;
};

// First member (list order) with k * f(t1) < f(t2); nullopt when no member
// separates. pre: 0 <= t1 < t2, k > 1. Throws undecided_error when the
// precision cap leaves the answer open for some power member.
std::optional<std::size_t> find_separator(const FunctionFamily& family, const Rational& t1,
                                          const Rational& t2, const Rational& k,
                                          const PrecisionPolicy& policy = {});

// Smallest integer exponent e with k * t1^e < t2^e, certified, found by
// doubling then bisection. pre: 0 < t1 < t2, k > 1.
Rational power_separator_exponent(const Rational& t1, const Rational& t2, const Rational& k,
                                  const PrecisionPolicy& policy = {});

// Verdict over the supplied pair set only. margins hold f(t2) - k * f(t1)
// per member at the reported pair (positive means that member separates).
struct SeparationCheck {
  enum class Outcome { separated, failed, undecided };
  Outcome outcome = Outcome::separated;
  std::optional<std::pair<Rational, Rational>> pair;
  std::vector<Enclosure> margins;
};

SeparationCheck is_k_separating_on(const FunctionFamily& family, const Rational& k,
                                   std::span<const std::pair<Rational, Rational>> pairs,
                                   const PrecisionPolicy& policy = {});

// Certificate replayed on construction: the space is a metric but not an
// ultrametric, and every member keeps it a metric.
struct CounterexampleCertificate {
  Rational t3;
  bool space_metric = false;
  bool space_ultrametric = true;
  std::size_t members_verified = 0;
};

struct FamilyCounterexample {
  Dissimilarity space;
  CounterexampleCertificate certificate;
};

// Three-point space with sides (t2, t3, t3), t3 = (t1 + t2) / 2, that no
// member of a non-2-separating family can expose as non-ultrametric.
// pre: 0 < t1 < t2 and 2 f(t1) >= f(t2) for every member (checked).
FamilyCounterexample counterexample_space(const FunctionFamily& family, const Rational& t1,
                                          const Rational& t2,
                                          const PrecisionPolicy& policy = {});

enum class FamilyVerdict { ultrametric, not_ultrametric, inconclusive };

struct FamilyDecision {
  FamilyVerdict verdict = FamilyVerdict::inconclusive;
  // inconclusive: occurring pair no member certifiably 2-separates.
  std::optional<std::pair<Rational, Rational>> unseparated_pair;
  // inconclusive: triple a fractional-power member leaves undecided.
  std::optional<TripleWitness> undecided_triple;
  std::optional<std::size_t> breaking_member;
  std::optional<TripleWitness> breaking_triple;
};

// Decides ultrametricity of a metric space through the family: every member
// must keep the space a metric. 2-separation is certified on the occurring
// value pairs first unless the caller vouches for it. The verdict is
// asserted to agree with direct classification.
FamilyDecision ultrametric_by_family(const FunctionFamily& family, const Dissimilarity& d,
                                     bool certified_2_separating = false,
                                     const PrecisionPolicy& policy = {});

}  // namespace umtk
