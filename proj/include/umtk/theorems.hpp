#pragma once

#include <optional>
#include <vector>

#include "umtk/spaces.hpp"
#include "umtk/transform.hpp"

namespace umtk {

enum class Axiom { reflexive, identity, triangle, strong_triangle };

const char* axiom_name(Axiom a);

// Self-verifying counterexample: the function, a space it is applied to, the
// transformed space, and the axiom the transform breaks, located at indices.
// before/after hold the distances among the cited points on each side.
struct WitnessPackage {
  TransformFunction function;
  Dissimilarity space;
  Dissimilarity transformed;
  Axiom violated;
  std::vector<std::size_t> indices;  // 1 point, 2 for a pair, 3 for a triple
  std::vector<Rational> before;
  std::vector<Rational> after;

  // Replays the package: transformed equals function applied to space, the
  // cited axiom fails at the cited indices, classify_space agrees, and the
  // before/after values match. Throws internal_error on any mismatch.
  void verify() const;
};

// Entrywise f(d). Exact; a power function requires an integer exponent here
// (probe_snowflake handles fractional exponents with certified arithmetic).
Dissimilarity apply(const TransformFunction& f, const Dissimilarity& d);

// For f failing is_increasing: an ultrametric space whose transform breaks
// the strong triangle (or reflexivity, when the failure forces f(0) > 0).
WitnessPackage witness_not_pseudoultrametric_preserving(const TransformFunction& f);

// For f failing is_amenable: a two-point ultrametric whose transform breaks
// reflexivity or the identity axiom.
WitnessPackage witness_not_semimetric_preserving(const TransformFunction& f);

// For amenable f failing is_doubling: an ultrametric whose transform breaks
// the triangle inequality.
WitnessPackage witness_not_ultrametric_metric_preserving(const TransformFunction& f);

// For a metric space that is not ultrametric: a transform f_{a,b}, built from
// the worst strong-triangle violation, whose application breaks the triangle
// inequality. nullopt when the space is ultrametric.
std::optional<WitnessPackage> dual_witness(const Dissimilarity& d);

// Finite ultrametricity test for a metric space: applies f_{a,b} for every
// pair of occurring positive values a < b and classifies each transform.
struct FabProbeResult {
  bool ultrametric = false;
  std::vector<std::pair<Rational, Rational>> pairs_tested;
  std::optional<std::pair<Rational, Rational>> failing_pair;
  std::optional<WitnessPackage> failure;
};

FabProbeResult probe_fab(const Dissimilarity& d);

enum class ProbeVerdict { metric, not_metric, undecided };

// Checks whether d^alpha satisfies the triangle inequality, alpha > 1, with
// certified power arithmetic. Witness: first violating triple in lex order.
struct SnowflakeResult {
  ProbeVerdict verdict = ProbeVerdict::metric;
  std::optional<TripleWitness> witness;
  std::vector<TripleWitness> undecided_triples;
};

SnowflakeResult probe_snowflake(const Dissimilarity& d, const Rational& alpha,
                                const PrecisionPolicy& policy = {});

// Smallest exponent at which some triple of a metric space stops satisfying
// the triangle inequality; nullopt for ultrametric spaces (no finite
// exponent exists). exact marks roots found by exact evaluation; otherwise
// alpha_star is within tolerance of the true infimum.
struct CriticalExponent {
  Rational alpha_star;
  TripleWitness triple;
  bool exact = false;
};

std::optional<CriticalExponent> min_falsifying_exponent(
    const Dissimilarity& d, const Rational& tolerance = Rational(1, 1073741824),
    const PrecisionPolicy& policy = {});

}  // namespace umtk
