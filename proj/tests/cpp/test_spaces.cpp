#include "doctest.h"

#include <cstdint>
#include <vector>

#include "umtk/errors.hpp"
#include "umtk/generators.hpp"
#include "umtk/rng.hpp"
#include "umtk/spaces.hpp"

using umtk::AxiomReport;
using umtk::Dissimilarity;
using umtk::Rational;

namespace {

Dissimilarity three_point_zero_pair(const Rational& t) {
  // d(x1, x2) = 0, d(x1, x3) = d(x2, x3) = t.
  return Dissimilarity::from_rows({
      {Rational(0), Rational(0), t},
      {Rational(0), Rational(0), t},
      {t, t, Rational(0)},
  });
}

}  // namespace

TEST_CASE("construction validates shape, symmetry, and sign") {
  CHECK_THROWS_AS(Dissimilarity(2, {Rational(0)}), umtk::input_error);
  CHECK_THROWS_AS(Dissimilarity::from_rows({{Rational(0), Rational(1)},
                                            {Rational(2), Rational(0)}}),
                  umtk::input_error);
  CHECK_THROWS_AS(Dissimilarity::two_point(Rational(-1)), umtk::input_error);
  CHECK_THROWS_AS(Dissimilarity::from_rows({{Rational(0), Rational(1), Rational(2)},
                                            {Rational(1), Rational(0)}}),
                  umtk::input_error);

  Dissimilarity d = Dissimilarity::three_point(Rational(3), Rational(4), Rational(5));
  CHECK(d.size() == 3);
  CHECK(d.at(0, 1) == Rational(3));
  CHECK(d.at(1, 0) == Rational(3));
  CHECK(d.at(0, 2) == Rational(4));
  CHECK(d.at(1, 2) == Rational(5));
  CHECK(d.at(2, 2) == Rational(0));
  std::vector<Rational> vals = d.positive_values();
  REQUIRE(vals.size() == 3);
  CHECK(vals[0] == Rational(3));
  CHECK(vals[2] == Rational(5));
}

TEST_CASE("(3,4,5) is a metric but not an ultrametric") {
  Dissimilarity d = Dissimilarity::three_point(Rational(3), Rational(4), Rational(5));
  AxiomReport r = umtk::classify_space(d);
  CHECK(r.metric);
  CHECK(r.pseudometric);
  CHECK(r.semimetric);
  CHECK(!r.ultrametric);
  CHECK(!r.pseudoultrametric);
  CHECK(r.triangle.holds);
  CHECK(!r.strong_triangle.holds);
  // First failing triple in lexicographic scan: d(1,2) = 5 > max(3, 4) through 0.
  REQUIRE(r.strong_triangle.witness.has_value());
  CHECK(r.strong_triangle.witness->i == 1);
  CHECK(r.strong_triangle.witness->j == 2);
  CHECK(r.strong_triangle.witness->k == 0);
}

TEST_CASE("zero distance between distinct points: pseudoultrametric only") {
  Dissimilarity d = three_point_zero_pair(Rational(1));
  AxiomReport r = umtk::classify_space(d);
  CHECK(r.pseudoultrametric);
  CHECK(r.pseudometric);
  CHECK(!r.semimetric);
  CHECK(!r.metric);
  CHECK(!r.ultrametric);
  REQUIRE(r.identity.witness.has_value());
  CHECK(r.identity.witness->i == 0);
  CHECK(r.identity.witness->j == 1);
}

TEST_CASE("reflexivity failure is reported with the point") {
  Dissimilarity d(2, {Rational(1), Rational(2), Rational(2), Rational(0)});
  AxiomReport r = umtk::classify_space(d);
  CHECK(!r.reflexive.holds);
  REQUIRE(r.reflexive.witness.has_value());
  CHECK(r.reflexive.witness->i == 0);
  CHECK(!r.semimetric);
  CHECK(!r.pseudometric);
  CHECK(!r.pseudoultrametric);
}

TEST_CASE("ultrametric example: isosceles with short base") {
  Dissimilarity d = Dissimilarity::three_point(Rational(1), Rational(2), Rational(2));
  AxiomReport r = umtk::classify_space(d);
  CHECK(r.ultrametric);
  CHECK(r.metric);
  CHECK(r.pseudoultrametric);
  CHECK(r.strong_triangle.holds);
}

TEST_CASE("single point and two point spaces") {
  Dissimilarity one(1, {Rational(0)});
  AxiomReport r1 = umtk::classify_space(one);
  CHECK(r1.ultrametric);

  AxiomReport r2 = umtk::classify_space(Dissimilarity::two_point(Rational(7, 3)));
  CHECK(r2.ultrametric);
  CHECK(r2.metric);

  AxiomReport r0 = umtk::classify_space(Dissimilarity::two_point(Rational(0)));
  CHECK(r0.pseudoultrametric);
  CHECK(!r0.ultrametric);
}

TEST_CASE("perimeter form agrees with the triangle axiom") {
  Dissimilarity good = Dissimilarity::three_point(Rational(3), Rational(4), Rational(5));
  CHECK(umtk::check_triangle_perimeter(good, 0, 1, 2));
  Dissimilarity bad = Dissimilarity::three_point(Rational(3), Rational(1), Rational(1));
  CHECK(!umtk::check_triangle_perimeter(bad, 0, 1, 2));
  AxiomReport r = umtk::classify_space(bad);
  CHECK(!r.triangle.holds);
}

TEST_CASE("worst ultrametric violation picks the largest gap") {
  // Sides 3/2, 5/4, 5/4: the base 3/2 exceeds both legs 5/4.
  Dissimilarity d =
      Dissimilarity::three_point(Rational(3, 2), Rational(5, 4), Rational(5, 4));
  auto v = umtk::worst_ultrametric_violation(d);
  REQUIRE(v.has_value());
  CHECK(v->a == Rational(5, 4));
  CHECK(v->b == Rational(3, 2));
  CHECK(d.at(v->triple.i, v->triple.j) == v->b);

  Dissimilarity u = Dissimilarity::three_point(Rational(1), Rational(2), Rational(2));
  CHECK(!umtk::worst_ultrametric_violation(u).has_value());
}

TEST_CASE("class lattice is consistent on random spaces") {
  // semimetric = reflexive && identity; pseudometric = reflexive && triangle;
  // pseudoultrametric implies pseudometric; ultrametric = pseudoultrametric
  // && identity; metric = pseudometric && identity.
  umtk::SeededRng rng(20260819u);
  umtk::ValuePool pool;
  pool.max_numerator = 6;
  pool.max_denominator = 2;
  for (int it = 0; it < 10000; ++it) {
    std::size_t n = 2 + rng.below(5);
    std::vector<Rational> entries(n * n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        Rational v = rng.below(5) == 0
                         ? Rational(0)
                         : rng.positive_rational(pool.max_numerator, pool.max_denominator);
        entries[i * n + j] = v;
        entries[j * n + i] = v;
      }
    }
    Dissimilarity d(n, std::move(entries));
    AxiomReport r = umtk::classify_space(d);
    CHECK(r.reflexive.holds);
    CHECK(r.semimetric == (r.reflexive.holds && r.identity.holds));
    CHECK(r.pseudometric == (r.reflexive.holds && r.triangle.holds));
    CHECK(r.pseudoultrametric == (r.reflexive.holds && r.strong_triangle.holds));
    CHECK(r.metric == (r.pseudometric && r.identity.holds));
    CHECK(r.ultrametric == (r.pseudoultrametric && r.identity.holds));
    if (r.strong_triangle.holds) CHECK(r.triangle.holds);
    if (!r.triangle.holds) {
      auto w = *r.triangle.witness;
      CHECK(d.at(w.i, w.j) > d.at(w.i, w.k) + d.at(w.k, w.j));
      CHECK(!umtk::check_triangle_perimeter(d, w.i, w.j, w.k));
    }
    if (!r.strong_triangle.holds) {
      auto w = *r.strong_triangle.witness;
      CHECK(d.at(w.i, w.j) > umtk::max(d.at(w.i, w.k), d.at(w.k, w.j)));
    }
    // Perimeter form of a triple is the conjunction of its three directed
    // triangle inequalities.
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) {
          bool all_three = d.at(i, j) <= d.at(i, k) + d.at(k, j) &&
                           d.at(i, k) <= d.at(i, j) + d.at(j, k) &&
                           d.at(j, k) <= d.at(j, i) + d.at(i, k);
          CHECK(umtk::check_triangle_perimeter(d, i, j, k) == all_three);
        }
      }
    }
  }
}
