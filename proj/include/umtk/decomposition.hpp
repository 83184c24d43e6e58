#pragma once

#include <optional>

#include "umtk/spaces.hpp"
#include "umtk/transform.hpp"

namespace umtk {

// Factorization of a pseudoultrametric rho as threshold_fn composed with an
// ultrametric: r_star is the smallest positive value of rho, the ultrametric
// replaces zero distances between distinct points by r_star / 2, and the
// threshold function erases them again. Composition is re-verified entrywise
// before returning.
struct DecompositionResult {
  Rational r_star;
  Dissimilarity ultrametric;
  TransformFunction threshold_fn;
  bool composition_verified = false;
};

// pre: rho is a pseudoultrametric and not an ultrametric (some distinct pair
// sits at distance zero). Throws precondition_error otherwise; the already-
// ultrametric case factors trivially through the identity.
DecompositionResult decompose(const Dissimilarity& rho);

// For increasing f with f(0) = 0 applied to an ultrametric d: if f weakens
// the space to a strict pseudoultrametric, the radius below which f erases
// distances, with the lexicographically first erased pair at that radius.
// nullopt when f keeps d ultrametric.
struct ZeroGap {
  Rational r0;
  PairWitness pair;
};

std::optional<ZeroGap> zero_gap_radius(const Dissimilarity& d, const TransformFunction& f);

}  // namespace umtk
