#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "umtk/spaces.hpp"
#include "umtk/transform.hpp"

namespace umtk {

// Value pool for generated distances and breakpoints: positive rationals p/q
// with p <= max_numerator, q <= max_denominator.
struct ValuePool {
  unsigned long max_numerator = 12;
  unsigned long max_denominator = 4;
};

struct GenSpec {
  std::uint64_t seed = 0;
  std::size_t n = 1;
  ValuePool pool;
};

// Laminar tree node: either a leaf holding a point or an inner node whose
// children separate at the given level. Levels strictly decrease downward.
struct LaminarNode {
  std::optional<std::size_t> point;
  Rational level;
  std::vector<LaminarNode> children;
};

// Ultrametric realized by a laminar hierarchy: d(x, y) is the level of the
// lowest common ancestor. The tree must hold each of 0..n-1 exactly once.
Dissimilarity ultrametric_from_laminar(const LaminarNode& root, std::size_t n);

// Random laminar hierarchy on n points; result verified ultrametric.
Dissimilarity gen_ultrametric(const GenSpec& spec);

struct GeneratedMetric {
  Dissimilarity space;
  bool ultrametric = false;
};

// Random metric via shortest-path closure of a random symmetric matrix; when
// embed_sides is given (needs n >= 3), points 0, 1, 2 keep exactly those
// three distances through the closure. Result verified metric.
GeneratedMetric gen_metric(const GenSpec& spec,
                           const std::optional<std::array<Rational, 3>>& embed_sides = {});

// Random pseudoultrametric built by lifting an ultrametric on a quotient:
// zero_fraction in [0, 1] steers how many points collapse into shared
// classes. A positive fraction guarantees at least one zero-distance pair
// (needs n >= 2). Result verified.
Dissimilarity gen_pseudoultrametric(const GenSpec& spec, const Rational& zero_fraction);

enum class FunctionClass {
  increasing_amenable,
  increasing_zero_at_zero,  // amenability unconstrained: may carry a zero plateau
  amenable_doubling,        // also non-increasing: values pinned inside [c, 2c]
  amenable_non_doubling,
  non_increasing,           // f(0) = 0, with a certified decrease witness
  non_amenable,
  unconstrained,            // any valid piecewise representation
};

// Random piecewise-affine function (<= 8 pieces) shaped to the class, then
// verified against the fn-calculus checks; a shape that misses its class is
// an internal error, never silently resampled.
TransformFunction gen_function(const GenSpec& spec, FunctionClass cls);

}  // namespace umtk
