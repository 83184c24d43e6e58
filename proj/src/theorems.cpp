#include "umtk/theorems.hpp"

#include <array>
#include <map>
#include <string>
#include <utility>

#include "umtk/errors.hpp"

namespace umtk {

const char* axiom_name(Axiom a) {
  switch (a) {
    case Axiom::reflexive: return "reflexive";
    case Axiom::identity: return "identity";
    case Axiom::triangle: return "triangle";
    case Axiom::strong_triangle: return "strong_triangle";
  }
  throw internal_error("unknown axiom");
}

Dissimilarity apply(const TransformFunction& f, const Dissimilarity& d) {
  std::vector<Rational> out;
  out.reserve(d.entries().size());
  if (f.is_power()) {
    auto e = f.integral_power_exponent();
    if (!e) {
      throw precondition_error(
          "fractional power transforms have irrational values; use probe_snowflake");
    }
    for (const Rational& v : d.entries()) out.push_back(pow_int(v, *e));
  } else {
    const PiecewiseAffine& pw = f.affine();
    for (const Rational& v : d.entries()) out.push_back(pw(v));
  }
  return Dissimilarity(d.size(), std::move(out), d.labels());
}

namespace {

// Distances cited by the violated inequality, in reading order:
// point i -> [d(i,i)]; pair (i,j) -> [d(i,j)]; triple (i,j,k) ->
// [d(i,j), d(i,k), d(k,j)].
std::vector<Rational> cited_values(const Dissimilarity& d, Axiom ax,
                                   const std::vector<std::size_t>& idx) {
  switch (ax) {
    case Axiom::reflexive:
      return {d.at(idx[0], idx[0])};
    case Axiom::identity:
      return {d.at(idx[0], idx[1])};
    case Axiom::triangle:
    case Axiom::strong_triangle:
      return {d.at(idx[0], idx[1]), d.at(idx[0], idx[2]), d.at(idx[2], idx[1])};
  }
  throw internal_error("unknown axiom");
}

std::size_t index_count(Axiom ax) {
  switch (ax) {
    case Axiom::reflexive: return 1;
    case Axiom::identity: return 2;
    case Axiom::triangle:
    case Axiom::strong_triangle: return 3;
  }
  throw internal_error("unknown axiom");
}

WitnessPackage make_package(TransformFunction f, Dissimilarity space, Axiom ax,
                            std::vector<std::size_t> idx) {
  Dissimilarity transformed = apply(f, space);
  WitnessPackage pkg{std::move(f), std::move(space), std::move(transformed),
                     ax,           std::move(idx),   {},
                     {}};
  pkg.before = cited_values(pkg.space, pkg.violated, pkg.indices);
  pkg.after = cited_values(pkg.transformed, pkg.violated, pkg.indices);
  pkg.verify();
  return pkg;
}

}  // namespace

void WitnessPackage::verify() const {
  if (!(transformed == apply(function, space))) {
    throw internal_error("witness package: transformed space does not match the function");
  }
  if (indices.size() != index_count(violated)) {
    throw internal_error("witness package: wrong index count for the cited axiom");
  }
  AxiomReport rep = classify_space(transformed);
  switch (violated) {
    case Axiom::reflexive: {
      if (transformed.at(indices[0], indices[0]).is_zero()) {
        throw internal_error("witness package: cited reflexivity violation does not reproduce");
      }
      if (rep.reflexive.holds) {
        throw internal_error("witness package: classification does not confirm reflexivity failure");
      }
      break;
    }
    case Axiom::identity: {
      if (indices[0] == indices[1] || !transformed.at(indices[0], indices[1]).is_zero()) {
        throw internal_error("witness package: cited identity violation does not reproduce");
      }
      if (rep.identity.holds) {
        throw internal_error("witness package: classification does not confirm identity failure");
      }
      break;
    }
    case Axiom::triangle: {
      const Rational& dij = transformed.at(indices[0], indices[1]);
      Rational legs = transformed.at(indices[0], indices[2]) +
                      transformed.at(indices[2], indices[1]);
      if (dij <= legs) {
        throw internal_error("witness package: cited triangle violation does not reproduce");
      }
      if (check_triangle_perimeter(transformed, indices[0], indices[1], indices[2])) {
        throw internal_error("witness package: perimeter test passes on the cited triple");
      }
      if (rep.triangle.holds) {
        throw internal_error("witness package: classification does not confirm triangle failure");
      }
      break;
    }
    case Axiom::strong_triangle: {
      const Rational& dij = transformed.at(indices[0], indices[1]);
      Rational bound = max(transformed.at(indices[0], indices[2]),
                           transformed.at(indices[2], indices[1]));
      if (dij <= bound) {
        throw internal_error("witness package: cited strong triangle violation does not reproduce");
      }
      if (rep.strong_triangle.holds) {
        throw internal_error(
            "witness package: classification does not confirm strong triangle failure");
      }
      break;
    }
  }
  if (before != cited_values(space, violated, indices) ||
      after != cited_values(transformed, violated, indices)) {
    throw internal_error("witness package: cited values do not match the spaces");
  }
}

WitnessPackage witness_not_pseudoultrametric_preserving(const TransformFunction& f) {
  auto inc = is_increasing(f);
  if (inc.holds) {
    throw precondition_error("function is increasing; no witness exists");
  }
  Rational a = min(inc.witness->a, inc.witness->b);
  Rational b = max(inc.witness->a, inc.witness->b);
  if (a.is_positive()) {
    // Two points at distance a inside a ball of radius b: the transform
    // raises the short side above both long ones.
    Dissimilarity space = Dissimilarity::three_point(b, b, a);
    if (!classify_space(space).ultrametric) {
      throw internal_error("two-long-sides construction is not ultrametric");
    }
    return make_package(f, std::move(space), Axiom::strong_triangle, {1, 2, 0});
  }
  // a = 0 forces f(0) > f(b) >= 0: reflexivity already breaks.
  return make_package(f, Dissimilarity::two_point(b), Axiom::reflexive, {0});
}

WitnessPackage witness_not_semimetric_preserving(const TransformFunction& f) {
  auto am = is_amenable(f);
  if (am.holds) {
    throw precondition_error("function is amenable; no witness exists");
  }
  const Rational& t = *am.witness;
  if (t.is_zero()) {
    return make_package(f, Dissimilarity::two_point(Rational(1)), Axiom::reflexive, {0});
  }
  // f(t) = 0 collapses a pair at distance t.
  return make_package(f, Dissimilarity::two_point(t), Axiom::identity, {0, 1});
}

WitnessPackage witness_not_ultrametric_metric_preserving(const TransformFunction& f) {
  auto am = is_amenable(f);
  if (!am.holds) {
    throw precondition_error(
        "function is not amenable; use witness_not_semimetric_preserving");
  }
  auto dbl = is_doubling(f);
  if (dbl.holds) {
    throw precondition_error("function is doubling; no witness exists");
  }
  Rational a = dbl.witness->a;
  Rational b = dbl.witness->b;
  if (!a.is_positive()) {
    throw internal_error("doubling witness starts at 0 for an amenable function");
  }
  // Isoceles ultrametric with short side a: f(a) > 2 f(b) breaks the triangle.
  Dissimilarity space = Dissimilarity::three_point(a, b, b);
  if (!classify_space(space).ultrametric) {
    throw internal_error("isoceles construction is not ultrametric");
  }
  return make_package(f, std::move(space), Axiom::triangle, {0, 1, 2});
}

std::optional<WitnessPackage> dual_witness(const Dissimilarity& d) {
  AxiomReport rep = classify_space(d);
  if (!rep.metric) throw precondition_error("dual witness requires a metric space");
  if (rep.ultrametric) return std::nullopt;
  auto v = worst_ultrametric_violation(d);
  if (!v) throw internal_error("non-ultrametric metric without a strong triangle violation");
  // d(i,j) = b keeps its value while both legs through k collapse to a/2, so
  // the transformed triple sums to a < b.
  TransformFunction f = make_fab(v->a, v->b);
  return make_package(std::move(f), d, Axiom::triangle, {v->triple.i, v->triple.j, v->triple.k});
}

FabProbeResult probe_fab(const Dissimilarity& d) {
  AxiomReport rep = classify_space(d);
  if (!rep.metric) throw precondition_error("probe_fab requires a metric space");
  FabProbeResult res;
  std::vector<Rational> vals = d.positive_values();
  for (std::size_t i = 0; i < vals.size() && !res.failure; ++i) {
    for (std::size_t j = i + 1; j < vals.size() && !res.failure; ++j) {
      const Rational& a = vals[i];
      const Rational& b = vals[j];
      res.pairs_tested.emplace_back(a, b);
      TransformFunction f = make_fab(a, b);
      AxiomReport after = classify_space(apply(f, d));
      if (after.metric) continue;
      if (after.triangle.holds) {
        throw internal_error("f_ab transform broke a metric without a triangle violation");
      }
      const TripleWitness& w = *after.triangle.witness;
      res.failing_pair = {a, b};
      res.failure = make_package(std::move(f), d, Axiom::triangle, {w.i, w.j, w.k});
    }
  }
  res.ultrametric = !res.failure.has_value();
  if (res.ultrametric != rep.ultrametric) {
    throw internal_error("f_ab probe disagrees with direct classification");
  }
  return res;
}

namespace {

// Orients an unordered triple i < j < k for violation checks: m is the
// strictly largest side (pair p, q via r) and o1, o2 the other two.
struct OrientedTriple {
  bool candidate = false;  // false when the largest side is not unique
  Rational m, o1, o2;
  TripleWitness witness;
};

OrientedTriple orient(const Dissimilarity& d, std::size_t i, std::size_t j, std::size_t k) {
  const Rational& dij = d.at(i, j);
  const Rational& dik = d.at(i, k);
  const Rational& djk = d.at(j, k);
  OrientedTriple t;
  if (dij > dik && dij > djk) {
    t = {true, dij, dik, djk, TripleWitness{i, j, k}};
  } else if (dik > dij && dik > djk) {
    t = {true, dik, dij, djk, TripleWitness{i, k, j}};
  } else if (djk > dij && djk > dik) {
    t = {true, djk, dij, dik, TripleWitness{j, k, i}};
  }
  return t;
}

}  // namespace

SnowflakeResult probe_snowflake(const Dissimilarity& d, const Rational& alpha,
                                const PrecisionPolicy& policy) {
  AxiomReport rep = classify_space(d);
  if (!rep.metric) throw precondition_error("probe_snowflake requires a metric space");
  if (alpha <= Rational(1)) {
    throw precondition_error("snowflake exponent must exceed 1");
  }
  SnowflakeResult res;
  std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        OrientedTriple t = orient(d, i, j, k);
        if (!t.candidate) continue;  // with a tied maximum no power violates
        std::array terms{PowerTerm{Rational(1), t.o1, alpha},
                         PowerTerm{Rational(1), t.o2, alpha},
                         PowerTerm{Rational(-1), t.m, alpha}};
        switch (power_sum_sign(terms, policy)) {
          case Sign::negative:
            if (!res.witness) res.witness = t.witness;
            break;
          case Sign::undecided:
            res.undecided_triples.push_back(t.witness);
            break;
          default:
            break;
        }
      }
    }
  }
  if (res.witness) {
    res.verdict = ProbeVerdict::not_metric;
  } else if (!res.undecided_triples.empty()) {
    res.verdict = ProbeVerdict::undecided;
  } else {
    res.verdict = ProbeVerdict::metric;
  }
  return res;
}

namespace {

// Unique root in [1, inf) of h(x) = r1^x + r2^x - 1 for 0 < r1, r2 < 1 with
// h(1) >= 0; h is strictly decreasing. Bisection on a dyadic grid; exact
// zeros (perfect powers) are recognized and marked exact.
std::pair<Rational, bool> ratio_root(const Rational& r1, const Rational& r2,
                                     const Rational& tolerance,
                                     const PrecisionPolicy& policy) {
  auto h_sign = [&](const Rational& x) {
    std::array terms{PowerTerm{Rational(1), r1, x}, PowerTerm{Rational(1), r2, x},
                     PowerTerm{Rational(-1), Rational(1), Rational(1)}};
    return power_sum_sign(terms, policy);
  };

  Rational h1 = r1 + r2 - Rational(1);
  if (h1.is_zero()) return {Rational(1), true};
  if (h1.is_negative()) {
    throw internal_error("triangle inequality fails at exponent 1 on a metric space");
  }

  Rational lo(1);
  Rational hi(2);
  for (;;) {
    Sign s = h_sign(hi);
    if (s == Sign::zero) return {hi, true};
    if (s == Sign::negative) break;
    if (s == Sign::undecided) {
      // h(hi) is closer to zero than the precision cap can separate; the
      // root is pinned at hi far more tightly than any usable tolerance.
      return {hi, false};
    }
    lo = hi;
    hi += hi;
  }

  while (hi - lo > tolerance) {
    Rational mid = (lo + hi) / Rational(2);
    switch (h_sign(mid)) {
      case Sign::zero:
        return {mid, true};
      case Sign::positive:
        lo = mid;
        break;
      case Sign::negative:
        hi = mid;
        break;
      case Sign::undecided:
        return {mid, false};
    }
  }
  return {(lo + hi) / Rational(2), false};
}

}  // namespace

std::optional<CriticalExponent> min_falsifying_exponent(const Dissimilarity& d,
                                                        const Rational& tolerance,
                                                        const PrecisionPolicy& policy) {
  AxiomReport rep = classify_space(d);
  if (!rep.metric) throw precondition_error("min_falsifying_exponent requires a metric space");
  if (!tolerance.is_positive()) throw precondition_error("tolerance must be positive");
  if (rep.ultrametric) return std::nullopt;

  std::map<std::pair<Rational, Rational>, std::pair<Rational, bool>> cache;
  std::optional<CriticalExponent> best;
  std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        OrientedTriple t = orient(d, i, j, k);
        if (!t.candidate) continue;
        std::pair<Rational, Rational> key{min(t.o1, t.o2) / t.m, max(t.o1, t.o2) / t.m};
        auto it = cache.find(key);
        if (it == cache.end()) {
          it = cache.emplace(key, ratio_root(key.first, key.second, tolerance, policy)).first;
        }
        const auto& [root, exact] = it->second;
        if (!best || root < best->alpha_star) {
          best = CriticalExponent{root, t.witness, exact};
        }
      }
    }
  }
  if (!best) throw internal_error("non-ultrametric metric with no strictly largest side");
  return best;
}

}  // namespace umtk
