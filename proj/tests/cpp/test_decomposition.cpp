#include "doctest.h"

#include <vector>

#include "umtk/decomposition.hpp"
#include "umtk/errors.hpp"
#include "umtk/generators.hpp"
#include "umtk/spaces.hpp"
#include "umtk/theorems.hpp"

using umtk::Dissimilarity;
using umtk::Rational;

namespace {

Dissimilarity zero_pair_space(const Rational& t) {
  return Dissimilarity::from_rows({
      {Rational(0), Rational(0), t},
      {Rational(0), Rational(0), t},
      {t, t, Rational(0)},
  });
}

}  // namespace

TEST_CASE("decompose the canonical zero-pair space") {
  Dissimilarity rho = zero_pair_space(Rational(1));
  umtk::DecompositionResult r = umtk::decompose(rho);
  CHECK(r.r_star == Rational(1));
  CHECK(r.composition_verified);

  // Ultrametric factor: the erased pair is pushed up to r_star / 2.
  CHECK(r.ultrametric.at(0, 1) == Rational(1, 2));
  CHECK(r.ultrametric.at(0, 2) == Rational(1));
  CHECK(r.ultrametric.at(1, 2) == Rational(1));
  CHECK(umtk::classify_space(r.ultrametric).ultrametric);

  // Threshold factor: 0 on [0, 1/2], identity above.
  CHECK(r.threshold_fn.evaluate_exact(Rational(1, 2)) == Rational(0));
  CHECK(r.threshold_fn.evaluate_exact(Rational(1)) == Rational(1));

  // Recomposition is exact.
  CHECK(umtk::apply(r.threshold_fn, r.ultrametric) == rho);
}

TEST_CASE("decompose rejects spaces outside its domain") {
  // Already ultrametric: factors trivially, reported as a precondition error.
  Dissimilarity u = Dissimilarity::three_point(Rational(1), Rational(2), Rational(2));
  CHECK_THROWS_AS(umtk::decompose(u), umtk::precondition_error);

  // Not a pseudoultrametric at all.
  Dissimilarity tri = Dissimilarity::three_point(Rational(3), Rational(4), Rational(5));
  CHECK_THROWS_AS(umtk::decompose(tri), umtk::precondition_error);
}

TEST_CASE("decompose the all-zero space") {
  // No positive value exists; r_star falls back to 1 and the ultrametric
  // factor places every pair at 1/2.
  Dissimilarity zero(3, std::vector<Rational>(9, Rational(0)));
  umtk::DecompositionResult r = umtk::decompose(zero);
  CHECK(r.r_star == Rational(1));
  CHECK(r.ultrametric.at(0, 1) == Rational(1, 2));
  CHECK(r.ultrametric.at(0, 2) == Rational(1, 2));
  CHECK(r.ultrametric.at(1, 2) == Rational(1, 2));
  CHECK(umtk::classify_space(r.ultrametric).ultrametric);
  CHECK(umtk::apply(r.threshold_fn, r.ultrametric) == zero);
}

TEST_CASE("zero_gap_radius detects erased distances") {
  Dissimilarity d =
      Dissimilarity::three_point(Rational(1, 4), Rational(2), Rational(2));
  REQUIRE(umtk::classify_space(d).ultrametric);

  auto gap = umtk::zero_gap_radius(d, umtk::make_threshold(Rational(1)));
  REQUIRE(gap.has_value());
  CHECK(gap->r0 == Rational(1, 4));
  CHECK(gap->pair.i == 0);
  CHECK(gap->pair.j == 1);

  CHECK(!umtk::zero_gap_radius(d, umtk::make_identity()).has_value());
  CHECK(!umtk::zero_gap_radius(d, umtk::make_cap(Rational(3, 2))).has_value());
}

TEST_CASE("zero_gap_radius requires an increasing vanishing function") {
  Dissimilarity d = Dissimilarity::three_point(Rational(1), Rational(2), Rational(2));
  std::vector<umtk::AffinePiece> pieces;
  pieces.push_back({Rational(0), std::nullopt, true, false, Rational(1), Rational(1)});
  CHECK_THROWS_AS(
      umtk::zero_gap_radius(d, umtk::TransformFunction::piecewise(std::move(pieces))),
      umtk::precondition_error);
}

TEST_CASE("decompose round-trips on random strict pseudoultrametrics") {
  for (int i = 0; i < 120; ++i) {
    umtk::GenSpec spec;
    spec.seed = 13000 + static_cast<std::uint64_t>(i);
    spec.n = 2 + static_cast<std::size_t>(i % 9);
    Dissimilarity rho = umtk::gen_pseudoultrametric(spec, Rational(1, 2));
    umtk::AxiomReport before = umtk::classify_space(rho);
    REQUIRE(before.pseudoultrametric);
    REQUIRE(!before.ultrametric);

    umtk::DecompositionResult r = umtk::decompose(rho);
    CHECK(r.composition_verified);
    CHECK(umtk::classify_space(r.ultrametric).ultrametric);
    CHECK(umtk::apply(r.threshold_fn, r.ultrametric) == rho);
    CHECK(r.r_star.is_positive());

    // r_star is the smallest positive distance of rho.
    std::vector<Rational> vals = rho.positive_values();
    if (!vals.empty()) CHECK(r.r_star == vals.front());
  }
}
