#include "umtk/decomposition.hpp"

#include <utility>

#include "umtk/errors.hpp"
#include "umtk/theorems.hpp"

namespace umtk {

DecompositionResult decompose(const Dissimilarity& rho) {
  AxiomReport rep = classify_space(rho);
  if (!rep.pseudoultrametric) {
    throw precondition_error("decomposition requires a pseudoultrametric space");
  }
  if (rep.ultrametric) {
    throw precondition_error(
        "space is already an ultrametric; it factors trivially through the identity");
  }

  std::vector<Rational> positives = rho.positive_values();
  // A strict pseudoultrametric on >= 2 points with no positive value is the
  // zero space; any positive radius works, so fix 1.
  Rational r_star = positives.empty() ? Rational(1) : positives.front();
  Rational half = r_star / Rational(2);

  std::size_t n = rho.size();
  std::vector<Rational> lifted;
  lifted.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& v = rho.at(i, j);
      lifted.push_back(i != j && v.is_zero() ? half : v);
    }
  }
  Dissimilarity u(n, std::move(lifted), rho.labels());
  if (!classify_space(u).ultrametric) {
    throw internal_error("lifted space is not an ultrametric");
  }

  TransformFunction f = make_threshold(r_star);
  if (!(apply(f, u) == rho)) {
    throw internal_error("threshold composition does not reproduce the input");
  }
  return DecompositionResult{std::move(r_star), std::move(u), std::move(f), true};
}

std::optional<ZeroGap> zero_gap_radius(const Dissimilarity& d, const TransformFunction& f) {
  if (!classify_space(d).ultrametric) {
    throw precondition_error("zero_gap_radius requires an ultrametric space");
  }
  auto inc = is_increasing(f);
  bool zero_at_zero = f.is_power() || f.affine()(Rational(0)).is_zero();
  if (!inc.holds || !zero_at_zero) {
    throw precondition_error("zero_gap_radius requires increasing f with f(0) = 0");
  }
  if (f.is_power()) return std::nullopt;  // powers are amenable, nothing is erased

  Dissimilarity t = apply(f, d);
  if (classify_space(t).ultrametric) return std::nullopt;

  // Smallest original distance erased by f, with its first pair.
  std::optional<ZeroGap> gap;
  std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!t.at(i, j).is_zero() || d.at(i, j).is_zero()) continue;
      if (!gap || d.at(i, j) < gap->r0) {
        gap = ZeroGap{d.at(i, j), PairWitness{i, j}};
      }
    }
  }
  if (!gap) throw internal_error("transform lost ultrametricity without erasing a distance");

  // f is increasing with f(0) = 0 and f(r0) = 0, so it vanishes on [0, r0];
  // confirm exactly on the pieces overlapping [0, r0).
  for (const AffinePiece& p : f.affine().pieces()) {
    if (p.lo >= gap->r0) break;
    bool vanishes = p.is_point() ? p.value_at(p.lo).is_zero()
                                 : p.slope.is_zero() && p.intercept.is_zero();
    if (!vanishes) {
      throw internal_error("increasing transform erased a distance without a zero plateau");
    }
  }
  return gap;
}

}  // namespace umtk
