#include "doctest.h"

#include <optional>
#include <string>
#include <vector>

#include "umtk/errors.hpp"
#include "umtk/generators.hpp"
#include "umtk/rng.hpp"
#include "umtk/transform.hpp"

using umtk::AffinePiece;
using umtk::Rational;
using umtk::TransformFunction;

namespace {

// 0 at 0, 1 on (0, 1], 1/2 on (1, inf): amenable but drops at t = 1.
TransformFunction drop_function() {
  std::vector<AffinePiece> pieces;
  pieces.push_back({Rational(0), Rational(0), true, true, Rational(0), Rational(0)});
  pieces.push_back({Rational(0), Rational(1), false, true, Rational(0), Rational(1)});
  pieces.push_back({Rational(1), std::nullopt, false, false, Rational(0), Rational(1, 2)});
  return TransformFunction::piecewise(std::move(pieces));
}

// 0 at 0, 3 on (0, 1], 1 on (1, inf): amenable, drop ratio 3 beats doubling.
TransformFunction spike_function() {
  std::vector<AffinePiece> pieces;
  pieces.push_back({Rational(0), Rational(0), true, true, Rational(0), Rational(0)});
  pieces.push_back({Rational(0), Rational(1), false, true, Rational(0), Rational(3)});
  pieces.push_back({Rational(1), std::nullopt, false, false, Rational(0), Rational(1)});
  return TransformFunction::piecewise(std::move(pieces));
}

// t + 1: not amenable at 0.
TransformFunction shift_function() {
  std::vector<AffinePiece> pieces;
  pieces.push_back({Rational(0), std::nullopt, true, false, Rational(1), Rational(1)});
  return TransformFunction::piecewise(std::move(pieces));
}

}  // namespace

TEST_CASE("piecewise partition validation") {
  // Gap between pieces.
  std::vector<AffinePiece> gap;
  gap.push_back({Rational(0), Rational(1), true, false, Rational(1), Rational(0)});
  gap.push_back({Rational(2), std::nullopt, true, false, Rational(1), Rational(0)});
  CHECK_THROWS_AS(TransformFunction::piecewise(std::move(gap)), umtk::input_error);

  // Both sides of a junction closed.
  std::vector<AffinePiece> overlap;
  overlap.push_back({Rational(0), Rational(1), true, true, Rational(1), Rational(0)});
  overlap.push_back({Rational(1), std::nullopt, true, false, Rational(1), Rational(0)});
  CHECK_THROWS_AS(TransformFunction::piecewise(std::move(overlap)), umtk::input_error);

  // Missing unbounded tail.
  std::vector<AffinePiece> bounded;
  bounded.push_back({Rational(0), Rational(1), true, true, Rational(1), Rational(0)});
  CHECK_THROWS_AS(TransformFunction::piecewise(std::move(bounded)), umtk::input_error);

  // Negative value inside a piece.
  std::vector<AffinePiece> negative;
  negative.push_back({Rational(0), std::nullopt, true, false, Rational(1), Rational(-1)});
  CHECK_THROWS_AS(TransformFunction::piecewise(std::move(negative)), umtk::input_error);

  // First piece must start closed at 0.
  std::vector<AffinePiece> late;
  late.push_back({Rational(1), std::nullopt, true, false, Rational(1), Rational(0)});
  CHECK_THROWS_AS(TransformFunction::piecewise(std::move(late)), umtk::input_error);
}

TEST_CASE("evaluate_exact on the stock constructions") {
  TransformFunction f13 = umtk::make_fab(Rational(1), Rational(3));
  CHECK(f13.evaluate_exact(Rational(0)) == Rational(0));
  CHECK(f13.evaluate_exact(Rational(1, 2)) == Rational(1, 2));
  CHECK(f13.evaluate_exact(Rational(1)) == Rational(1, 2));
  CHECK(f13.evaluate_exact(Rational(2)) == Rational(3));

  TransformFunction cap = umtk::make_cap(Rational(3, 2));
  CHECK(cap.evaluate_exact(Rational(1)) == Rational(1));
  CHECK(cap.evaluate_exact(Rational(3, 2)) == Rational(3, 2));
  CHECK(cap.evaluate_exact(Rational(2)) == Rational(3, 2));

  TransformFunction thr = umtk::make_threshold(Rational(1));
  CHECK(thr.evaluate_exact(Rational(0)) == Rational(0));
  CHECK(thr.evaluate_exact(Rational(1, 4)) == Rational(0));
  CHECK(thr.evaluate_exact(Rational(1, 2)) == Rational(0));
  CHECK(thr.evaluate_exact(Rational(1)) == Rational(1));

  TransformFunction id = umtk::make_identity();
  CHECK(id.evaluate_exact(Rational(0)) == Rational(0));
  CHECK(id.evaluate_exact(Rational(7, 5)) == Rational(7, 5));

  TransformFunction sq = umtk::make_power(Rational(2));
  CHECK(sq.evaluate_exact(Rational(3, 2)) == Rational(9, 4));
  CHECK(sq.integral_power_exponent() == 2UL);

  TransformFunction root = umtk::make_power(Rational(1, 2));
  CHECK(root.evaluate_exact(Rational(9, 4)) == Rational(3, 2));
  CHECK_THROWS_AS(root.evaluate_exact(Rational(2)), umtk::precondition_error);
  CHECK(!root.integral_power_exponent().has_value());
  umtk::Enclosure e = root.evaluate(Rational(2));
  CHECK(e.lo() * e.lo() < Rational(2));
  CHECK(e.hi() * e.hi() > Rational(2));
}

TEST_CASE("is_increasing finds the first drop") {
  auto inc = umtk::is_increasing(umtk::make_fab(Rational(1), Rational(3)));
  CHECK(inc.holds);

  auto drop = umtk::is_increasing(drop_function());
  CHECK(!drop.holds);
  REQUIRE(drop.witness.has_value());
  CHECK(drop.witness->a == Rational(1));
  CHECK(drop.witness->b == Rational(2));
  TransformFunction f = drop_function();
  CHECK(f.evaluate_exact(drop.witness->a) > f.evaluate_exact(drop.witness->b));

  CHECK(umtk::is_increasing(umtk::make_power(Rational(1, 2))).holds);
  CHECK(umtk::is_increasing(umtk::make_cap(Rational(3, 2))).holds);
}

TEST_CASE("is_amenable pins the vanishing point") {
  CHECK(umtk::is_amenable(umtk::make_identity()).holds);
  CHECK(umtk::is_amenable(umtk::make_power(Rational(3))).holds);

  auto shift = umtk::is_amenable(shift_function());
  CHECK(!shift.holds);
  REQUIRE(shift.witness.has_value());
  CHECK(*shift.witness == Rational(0));

  auto thr = umtk::is_amenable(umtk::make_threshold(Rational(1)));
  CHECK(!thr.holds);
  REQUIRE(thr.witness.has_value());
  CHECK(*thr.witness == Rational(1, 2));
}

TEST_CASE("is_doubling compares against the running supremum") {
  auto spike = umtk::is_doubling(spike_function());
  CHECK(!spike.holds);
  REQUIRE(spike.witness.has_value());
  CHECK(spike.witness->a == Rational(1));
  CHECK(spike.witness->b == Rational(2));
  TransformFunction f = spike_function();
  CHECK(f.evaluate_exact(spike.witness->a) >
        Rational(2) * f.evaluate_exact(spike.witness->b));

  // The mild drop 1 -> 1/2 stays within factor 2.
  CHECK(umtk::is_doubling(drop_function()).holds);
  CHECK(umtk::is_doubling(umtk::make_fab(Rational(1), Rational(3))).holds);
  // f_{5,2} drops from 5/2 to 2: within factor 2, doubling but not increasing.
  CHECK(umtk::is_doubling(umtk::make_fab(Rational(5), Rational(2))).holds);
  CHECK(!umtk::is_increasing(umtk::make_fab(Rational(5), Rational(2))).holds);
  // f_{5,1/7} drops from 5/2 to 1/7: past factor 2, not doubling.
  auto deep = umtk::is_doubling(umtk::make_fab(Rational(5), Rational(1, 7)));
  CHECK(!deep.holds);
  REQUIRE(deep.witness.has_value());
  TransformFunction fab = umtk::make_fab(Rational(5), Rational(1, 7));
  CHECK(fab.evaluate_exact(deep.witness->a) >
        Rational(2) * fab.evaluate_exact(deep.witness->b));
}

TEST_CASE("classify_function matches the characterizations") {
  auto f13 = umtk::classify_function(umtk::make_fab(Rational(1), Rational(3)));
  CHECK(f13.ultrametric_preserving);
  CHECK(f13.ultrametric_metric_preserving);
  CHECK(f13.pseudoultrametric_preserving);
  CHECK(f13.semimetric_preserving);

  auto cap = umtk::classify_function(umtk::make_cap(Rational(3, 2)));
  CHECK(cap.ultrametric_preserving);

  auto thr = umtk::classify_function(umtk::make_threshold(Rational(1)));
  CHECK(thr.pseudoultrametric_preserving);
  CHECK(!thr.semimetric_preserving);
  CHECK(!thr.ultrametric_preserving);
  CHECK(!thr.ultrametric_metric_preserving);

  auto shift = umtk::classify_function(shift_function());
  CHECK(!shift.pseudoultrametric_preserving);
  CHECK(!shift.semimetric_preserving);
  CHECK(shift.value_at_zero == Rational(1));

  auto spike = umtk::classify_function(spike_function());
  CHECK(spike.semimetric_preserving);
  CHECK(!spike.ultrametric_preserving);
  CHECK(!spike.ultrametric_metric_preserving);
}

TEST_CASE("increasing with f(0)=0 implies doubling on random functions") {
  for (int seed = 0; seed < 10000; ++seed) {
    umtk::GenSpec spec;
    spec.seed = static_cast<std::uint64_t>(seed);
    umtk::FunctionClass cls = (seed % 2) == 0
                                  ? umtk::FunctionClass::increasing_amenable
                                  : umtk::FunctionClass::increasing_zero_at_zero;
    TransformFunction f = umtk::gen_function(spec, cls);
    auto c = umtk::classify_function(f);
    REQUIRE(c.increasing.holds);
    REQUIRE(c.value_at_zero.is_zero());
    CHECK(c.doubling.holds);
    if (cls == umtk::FunctionClass::increasing_amenable) {
      CHECK(c.ultrametric_metric_preserving);
      CHECK(c.ultrametric_preserving);
    }
    CHECK(c.pseudoultrametric_preserving);
  }
}

TEST_CASE("exact checks agree with dense grid sampling") {
  const umtk::FunctionClass classes[] = {
      umtk::FunctionClass::increasing_amenable,
      umtk::FunctionClass::increasing_zero_at_zero,
      umtk::FunctionClass::amenable_doubling,
      umtk::FunctionClass::amenable_non_doubling,
      umtk::FunctionClass::non_increasing,
      umtk::FunctionClass::non_amenable,
      umtk::FunctionClass::unconstrained,
  };
  int checked = 0;
  for (int seed = 0; seed < 30; ++seed) {
    for (umtk::FunctionClass cls : classes) {
      umtk::GenSpec spec;
      spec.seed = 90000 + static_cast<std::uint64_t>(seed);
      TransformFunction f = umtk::gen_function(spec, cls);
      if (f.is_power()) continue;

      Rational top(1);
      for (const AffinePiece& p : f.affine().pieces()) {
        if (p.hi && *p.hi > top) top = *p.hi;
      }
      Rational span = Rational(2) * top;

      auto inc = umtk::is_increasing(f);
      auto dbl = umtk::is_doubling(f);
      auto amn = umtk::is_amenable(f);

      // 1000-point grid over [0, 2 * max breakpoint]: any violation found by
      // sampling must also be found by the exact check, and exact witnesses
      // must evaluate to genuine violations.
      const int kGrid = 1000;
      Rational prev_val = f.evaluate_exact(Rational(0));
      Rational running_sup = prev_val;
      bool grid_inc_violation = false;
      bool grid_dbl_violation = false;
      bool grid_amn_violation = !f.evaluate_exact(Rational(0)).is_zero();
      for (int g = 1; g <= kGrid; ++g) {
        Rational t = span * Rational(g, kGrid);
        Rational v = f.evaluate_exact(t);
        if (v < prev_val) grid_inc_violation = true;
        if (running_sup > Rational(2) * v) grid_dbl_violation = true;
        if (v.is_zero()) grid_amn_violation = true;
        if (v > running_sup) running_sup = v;
        prev_val = v;
      }
      if (grid_inc_violation) CHECK(!inc.holds);
      if (grid_dbl_violation) CHECK(!dbl.holds);
      if (grid_amn_violation) CHECK(!amn.holds);

      if (!inc.holds) {
        CHECK(inc.witness->a < inc.witness->b);
        CHECK(f.evaluate_exact(inc.witness->a) > f.evaluate_exact(inc.witness->b));
      }
      if (!dbl.holds) {
        CHECK(dbl.witness->a <= dbl.witness->b);
        CHECK(f.evaluate_exact(dbl.witness->a) >
              Rational(2) * f.evaluate_exact(dbl.witness->b));
      }
      if (!amn.holds) {
        if (amn.witness->is_zero()) {
          CHECK(!f.evaluate_exact(Rational(0)).is_zero());
        } else {
          CHECK(f.evaluate_exact(*amn.witness).is_zero());
        }
      }
      ++checked;
    }
  }
  CHECK(checked >= 180);
}
