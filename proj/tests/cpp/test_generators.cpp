#include "doctest.h"

#include <array>
#include <optional>
#include <set>
#include <vector>

#include "umtk/errors.hpp"
#include "umtk/generators.hpp"
#include "umtk/io.hpp"
#include "umtk/spaces.hpp"
#include "umtk/transform.hpp"

using umtk::Dissimilarity;
using umtk::GenSpec;
using umtk::LaminarNode;
using umtk::Rational;

namespace {

LaminarNode leaf(std::size_t p) {
  LaminarNode n;
  n.point = p;
  return n;
}

LaminarNode inner(Rational level, std::vector<LaminarNode> children) {
  LaminarNode n;
  n.level = std::move(level);
  n.children = std::move(children);
  return n;
}

}  // namespace

TEST_CASE("ultrametric_from_laminar realizes the hierarchy") {
  // Root splits {0} from {1, 2} at level 2; {1, 2} split at level 1.
  LaminarNode root = inner(
      Rational(2), {leaf(0), inner(Rational(1), {leaf(1), leaf(2)})});
  Dissimilarity d = umtk::ultrametric_from_laminar(root, 3);
  CHECK(d.at(0, 1) == Rational(2));
  CHECK(d.at(0, 2) == Rational(2));
  CHECK(d.at(1, 2) == Rational(1));
  CHECK(umtk::classify_space(d).ultrametric);
}

TEST_CASE("ultrametric_from_laminar validates the tree") {
  // Point appears twice.
  LaminarNode dup = inner(Rational(2), {leaf(0), leaf(0)});
  CHECK_THROWS_AS(umtk::ultrametric_from_laminar(dup, 2), umtk::input_error);

  // Point missing.
  LaminarNode missing = inner(Rational(2), {leaf(0), leaf(2)});
  CHECK_THROWS_AS(umtk::ultrametric_from_laminar(missing, 3), umtk::input_error);

  // Child level does not decrease.
  LaminarNode flat = inner(
      Rational(1), {leaf(0), inner(Rational(1), {leaf(1), leaf(2)})});
  CHECK_THROWS_AS(umtk::ultrametric_from_laminar(flat, 3), umtk::input_error);

  // Nonpositive level.
  LaminarNode zero = inner(Rational(0), {leaf(0), leaf(1)});
  CHECK_THROWS_AS(umtk::ultrametric_from_laminar(zero, 2), umtk::input_error);

  // Single point tree is valid.
  Dissimilarity one = umtk::ultrametric_from_laminar(leaf(0), 1);
  CHECK(one.size() == 1);
}

TEST_CASE("gen_ultrametric produces verified ultrametrics of all sizes") {
  for (int i = 0; i < 1000; ++i) {
    GenSpec spec;
    spec.seed = static_cast<std::uint64_t>(i);
    spec.n = 1 + static_cast<std::size_t>(i % 12);
    Dissimilarity d = umtk::gen_ultrametric(spec);
    CHECK(d.size() == spec.n);
    CHECK(umtk::classify_space(d).ultrametric);
  }
}

TEST_CASE("gen_ultrametric is reproducible and seed-sensitive") {
  GenSpec spec;
  spec.seed = 424242;
  spec.n = 8;
  Dissimilarity a = umtk::gen_ultrametric(spec);
  Dissimilarity b = umtk::gen_ultrametric(spec);
  CHECK(a == b);
  CHECK(umtk::io::matrix_to_json(a).dump() == umtk::io::matrix_to_json(b).dump());

  GenSpec other = spec;
  other.seed = 424243;
  CHECK(!(umtk::gen_ultrametric(other) == a));
}

TEST_CASE("gen_ultrametric rejects an exhausted value pool") {
  GenSpec spec;
  spec.seed = 1;
  spec.n = 40;
  spec.pool.max_numerator = 3;
  spec.pool.max_denominator = 1;
  // At most 3 distinct levels exist; a hierarchy on 40 points may need up to
  // 39, so the draw must fail loudly rather than loop forever.
  CHECK_THROWS_AS(umtk::gen_ultrametric(spec), umtk::input_error);
}

TEST_CASE("gen_metric yields verified metrics; n = 2 is always ultrametric") {
  int non_ultra = 0;
  for (int i = 0; i < 1000; ++i) {
    GenSpec spec;
    spec.seed = 100000 + static_cast<std::uint64_t>(i);
    spec.n = 2 + static_cast<std::size_t>(i % 7);
    umtk::GeneratedMetric gm = umtk::gen_metric(spec);
    umtk::AxiomReport r = umtk::classify_space(gm.space);
    CHECK(r.metric);
    CHECK(gm.ultrametric == r.ultrametric);
    if (spec.n == 2) CHECK(r.ultrametric);
    if (!r.ultrametric) ++non_ultra;
  }
  CHECK(non_ultra > 200);
}

TEST_CASE("gen_metric embeds requested sides exactly") {
  std::array<Rational, 3> sides = {Rational(3), Rational(4), Rational(5)};
  for (int i = 0; i < 50; ++i) {
    GenSpec spec;
    spec.seed = 200000 + static_cast<std::uint64_t>(i);
    spec.n = 3 + static_cast<std::size_t>(i % 5);
    umtk::GeneratedMetric gm = umtk::gen_metric(spec, sides);
    CHECK(gm.space.at(0, 1) == Rational(3));
    CHECK(gm.space.at(0, 2) == Rational(4));
    CHECK(gm.space.at(1, 2) == Rational(5));
    CHECK(umtk::classify_space(gm.space).metric);
    CHECK(!gm.ultrametric);
  }

  GenSpec tiny;
  tiny.seed = 1;
  tiny.n = 2;
  CHECK_THROWS_AS(umtk::gen_metric(tiny, sides), umtk::precondition_error);

  GenSpec spec;
  spec.seed = 1;
  spec.n = 4;
  std::array<Rational, 3> degenerate = {Rational(1), Rational(1), Rational(3)};
  CHECK_THROWS_AS(umtk::gen_metric(spec, degenerate), umtk::precondition_error);
}

TEST_CASE("gen_pseudoultrametric collapses points but stays pseudoultrametric") {
  for (int i = 0; i < 500; ++i) {
    GenSpec spec;
    spec.seed = 300000 + static_cast<std::uint64_t>(i);
    spec.n = 2 + static_cast<std::size_t>(i % 9);
    Dissimilarity d = umtk::gen_pseudoultrametric(spec, Rational(1, 2));
    umtk::AxiomReport r = umtk::classify_space(d);
    CHECK(r.pseudoultrametric);
    CHECK(!r.ultrametric);
  }
}

TEST_CASE("gen_pseudoultrametric with zero fraction zero is ultrametric") {
  GenSpec spec;
  spec.seed = 7;
  spec.n = 6;
  Dissimilarity d = umtk::gen_pseudoultrametric(spec, Rational(0));
  CHECK(umtk::classify_space(d).ultrametric);
  CHECK_THROWS_AS(umtk::gen_pseudoultrametric(spec, Rational(2)),
                  umtk::precondition_error);
  CHECK_THROWS_AS(umtk::gen_pseudoultrametric(spec, Rational(-1, 2)),
                  umtk::precondition_error);
}

TEST_CASE("three-point collapse reproduces the canonical zero-pair pattern") {
  // n = 3 with one merge: two points share a class, the third stands alone.
  // The result must be d(x, y) = 0 on the merged pair and a common positive t
  // to the loner, the canonical strict pseudoultrametric.
  GenSpec spec;
  spec.seed = 99;
  spec.n = 3;
  Dissimilarity d = umtk::gen_pseudoultrametric(spec, Rational(1, 2));
  std::vector<std::pair<std::size_t, std::size_t>> zeros;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j)
      if (d.at(i, j).is_zero()) zeros.push_back({i, j});
  REQUIRE(zeros.size() == 1);
  std::size_t loner = 3 - zeros[0].first - zeros[0].second;
  Rational t = d.at(zeros[0].first, loner);
  CHECK(t.is_positive());
  CHECK(d.at(zeros[0].second, loner) == t);
}

TEST_CASE("gen_function hits every class deterministically") {
  const umtk::FunctionClass classes[] = {
      umtk::FunctionClass::increasing_amenable,
      umtk::FunctionClass::increasing_zero_at_zero,
      umtk::FunctionClass::amenable_doubling,
      umtk::FunctionClass::amenable_non_doubling,
      umtk::FunctionClass::non_increasing,
      umtk::FunctionClass::non_amenable,
      umtk::FunctionClass::unconstrained,
  };
  for (int seed = 0; seed < 200; ++seed) {
    for (umtk::FunctionClass cls : classes) {
      GenSpec spec;
      spec.seed = 400000 + static_cast<std::uint64_t>(seed);
      umtk::TransformFunction f = umtk::gen_function(spec, cls);
      umtk::TransformFunction g = umtk::gen_function(spec, cls);
      CHECK(umtk::io::function_to_json(f).dump() == umtk::io::function_to_json(g).dump());

      auto c = umtk::classify_function(f);
      switch (cls) {
        case umtk::FunctionClass::increasing_amenable:
          CHECK(c.increasing.holds);
          CHECK(c.amenable.holds);
          break;
        case umtk::FunctionClass::increasing_zero_at_zero:
          CHECK(c.increasing.holds);
          CHECK(c.value_at_zero.is_zero());
          break;
        case umtk::FunctionClass::amenable_doubling:
          CHECK(c.amenable.holds);
          CHECK(c.doubling.holds);
          CHECK(!c.increasing.holds);
          break;
        case umtk::FunctionClass::amenable_non_doubling:
          CHECK(c.amenable.holds);
          CHECK(!c.doubling.holds);
          break;
        case umtk::FunctionClass::non_increasing:
          CHECK(!c.increasing.holds);
          CHECK(c.increasing.witness->a.is_positive());
          CHECK(c.value_at_zero.is_zero());
          break;
        case umtk::FunctionClass::non_amenable:
          CHECK(!c.amenable.holds);
          break;
        case umtk::FunctionClass::unconstrained:
          break;
      }
    }
  }
}
