#include "umtk/generators.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>

#include "umtk/errors.hpp"
#include "umtk/rng.hpp"

namespace umtk {

namespace {

constexpr unsigned kDrawCapPerValue = 64;

std::vector<std::size_t> collect_leaves(const LaminarNode& node, std::size_t n,
                                        const Rational* parent_level,
                                        std::vector<Rational>& entries,
                                        std::vector<char>& seen) {
  if (node.point) {
    if (!node.children.empty()) throw input_error("laminar leaf has children");
    if (*node.point >= n) throw input_error("laminar leaf index out of range");
    if (seen[*node.point]) throw input_error("laminar leaf repeated");
    seen[*node.point] = 1;
    return {*node.point};
  }
  if (node.children.empty()) throw input_error("laminar inner node has no children");
  if (!node.level.is_positive()) throw input_error("laminar level must be positive");
  if (parent_level && node.level >= *parent_level) {
    throw input_error("laminar levels must strictly decrease downward");
  }
  std::vector<std::vector<std::size_t>> groups;
  groups.reserve(node.children.size());
  for (const LaminarNode& child : node.children) {
    groups.push_back(collect_leaves(child, n, &node.level, entries, seen));
  }
  std::vector<std::size_t> all;
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    for (std::size_t gj = gi + 1; gj < groups.size(); ++gj) {
      for (std::size_t p : groups[gi]) {
        for (std::size_t q : groups[gj]) {
          entries[p * n + q] = node.level;
          entries[q * n + p] = node.level;
        }
      }
    }
    all.insert(all.end(), groups[gi].begin(), groups[gi].end());
  }
  return all;
}

std::vector<Rational> distinct_positive_values(SeededRng& rng, const ValuePool& pool,
                                               std::size_t count) {
  std::set<Rational> vals;
  unsigned attempts = 0;
  while (vals.size() < count) {
    if (++attempts > kDrawCapPerValue * (count + 1)) {
      throw input_error("value pool too small for " + std::to_string(count) +
                        " distinct values");
    }
    vals.insert(rng.positive_rational(pool.max_numerator, pool.max_denominator));
  }
  return {vals.begin(), vals.end()};
}

void shuffle(SeededRng& rng, std::vector<std::size_t>& v) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[rng.below(i)]);
  }
}

// Random partition of points into between 2 and |points| nonempty blocks.
std::vector<std::vector<std::size_t>> random_split(SeededRng& rng,
                                                   std::vector<std::size_t> points) {
  std::size_t k = 2 + rng.below(points.size() - 1);
  shuffle(rng, points);
  std::vector<std::vector<std::size_t>> blocks(k);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i < k) {
      blocks[i].push_back(points[i]);
    } else {
      blocks[rng.below(k)].push_back(points[i]);
    }
  }
  return blocks;
}

LaminarNode build_tree(SeededRng& rng, std::vector<std::size_t> points,
                       const std::vector<Rational>& levels, std::size_t depth) {
  if (points.size() == 1) {
    LaminarNode leaf;
    leaf.point = points.front();
    return leaf;
  }
  LaminarNode node;
  node.level = levels[depth];
  for (auto& block : random_split(rng, std::move(points))) {
    node.children.push_back(build_tree(rng, std::move(block), levels, depth + 1));
  }
  return node;
}

Dissimilarity gen_ultrametric_impl(SeededRng& rng, std::size_t n, const ValuePool& pool) {
  if (n == 1) return Dissimilarity(1, {Rational(0)});
  // Splitting always produces blocks smaller than the input, so the chain of
  // levels is at most n - 1 deep.
  std::vector<Rational> levels = distinct_positive_values(rng, pool, n - 1);
  std::sort(levels.begin(), levels.end(), [](const Rational& a, const Rational& b) {
    return b < a;
  });
  std::vector<std::size_t> points(n);
  for (std::size_t i = 0; i < n; ++i) points[i] = i;
  LaminarNode root = build_tree(rng, std::move(points), levels, 0);
  return ultrametric_from_laminar(root, n);
}

long round_half_up(const Rational& r) {
  mpz_class num = r.num() * 2 + r.den();
  mpz_class den = r.den() * 2;
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q.get_si();
}

}  // namespace

Dissimilarity ultrametric_from_laminar(const LaminarNode& root, std::size_t n) {
  if (n == 0) throw input_error("laminar hierarchy needs at least one point");
  std::vector<Rational> entries(n * n, Rational(0));
  std::vector<char> seen(n, 0);
  collect_leaves(root, n, nullptr, entries, seen);
  for (std::size_t i = 0; i < n; ++i) {
    if (!seen[i]) throw input_error("laminar hierarchy misses point " + std::to_string(i));
  }
  return Dissimilarity(n, std::move(entries));
}

Dissimilarity gen_ultrametric(const GenSpec& spec) {
  if (spec.n == 0) throw input_error("generation needs n >= 1");
  SeededRng rng(spec.seed);
  Dissimilarity d = gen_ultrametric_impl(rng, spec.n, spec.pool);
  if (!classify_space(d).ultrametric) {
    throw internal_error("generated hierarchy is not an ultrametric");
  }
  return d;
}

GeneratedMetric gen_metric(const GenSpec& spec,
                           const std::optional<std::array<Rational, 3>>& embed_sides) {
  if (spec.n == 0) throw input_error("generation needs n >= 1");
  std::size_t n = spec.n;
  SeededRng rng(spec.seed);

  std::optional<Rational> floor_value;
  if (embed_sides) {
    if (n < 3) throw precondition_error("embedding three sides needs n >= 3");
    const auto& s = *embed_sides;
    for (const Rational& v : s) {
      if (!v.is_positive()) throw precondition_error("embedded sides must be positive");
    }
    if (s[0] > s[1] + s[2] || s[1] > s[0] + s[2] || s[2] > s[0] + s[1]) {
      throw precondition_error("embedded sides violate the triangle inequality");
    }
    floor_value = max(s[0], max(s[1], s[2]));
  }

  std::vector<Rational> m(n * n, Rational(0));
  auto put = [&](std::size_t i, std::size_t j, const Rational& v) {
    m[i * n + j] = v;
    m[j * n + i] = v;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (embed_sides && i == 0 && j == 1) {
        put(i, j, (*embed_sides)[0]);
      } else if (embed_sides && i == 0 && j == 2) {
        put(i, j, (*embed_sides)[1]);
      } else if (embed_sides && i == 1 && j == 2) {
        put(i, j, (*embed_sides)[2]);
      } else if (floor_value) {
        // Values in (M, 2M] cannot shortcut the embedded triangle.
        Rational u(static_cast<long>(1 + rng.below(spec.pool.max_numerator)),
                   static_cast<long>(spec.pool.max_numerator));
        put(i, j, *floor_value + *floor_value * u);
      } else {
        put(i, j, rng.positive_rational(spec.pool.max_numerator, spec.pool.max_denominator));
      }
    }
  }

  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        Rational via = m[i * n + k] + m[k * n + j];
        if (via < m[i * n + j]) m[i * n + j] = via;
      }
    }
  }

  Dissimilarity d(n, std::move(m));
  AxiomReport rep = classify_space(d);
  if (!rep.metric) throw internal_error("shortest-path closure did not produce a metric");
  if (embed_sides &&
      (d.at(0, 1) != (*embed_sides)[0] || d.at(0, 2) != (*embed_sides)[1] ||
       d.at(1, 2) != (*embed_sides)[2])) {
    throw internal_error("closure altered the embedded sides");
  }
  return {std::move(d), rep.ultrametric};
}

Dissimilarity gen_pseudoultrametric(const GenSpec& spec, const Rational& zero_fraction) {
  if (zero_fraction.is_negative() || zero_fraction > Rational(1)) {
    throw precondition_error("zero fraction must lie in [0, 1]");
  }
  if (zero_fraction.is_zero()) return gen_ultrametric(spec);
  if (spec.n < 2) throw precondition_error("zero-distance pairs need n >= 2");

  std::size_t n = spec.n;
  long merges = round_half_up(zero_fraction * Rational(static_cast<long>(n - 1)));
  merges = std::max(1l, std::min(merges, static_cast<long>(n - 1)));
  std::size_t classes = n - static_cast<std::size_t>(merges);

  SeededRng rng(spec.seed);
  Dissimilarity quotient = gen_ultrametric_impl(rng, classes, spec.pool);

  std::vector<std::size_t> points(n);
  for (std::size_t i = 0; i < n; ++i) points[i] = i;
  shuffle(rng, points);
  std::vector<std::size_t> cls(n);
  for (std::size_t i = 0; i < n; ++i) {
    cls[points[i]] = i < classes ? i : rng.below(classes);
  }

  std::vector<Rational> entries(n * n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (cls[i] != cls[j]) entries[i * n + j] = quotient.at(cls[i], cls[j]);
    }
  }
  Dissimilarity d(n, std::move(entries));
  AxiomReport rep = classify_space(d);
  if (!rep.pseudoultrametric || rep.ultrametric) {
    throw internal_error("quotient lift is not a strict pseudoultrametric");
  }
  return d;
}

namespace {

// Target values at both ends of a span between breakpoints; pieces are affine
// between them, with jumps allowed at junctions.
struct SpanPlan {
  Rational left_value;
  Rational right_value;
};

AffinePiece span_piece(const Rational& lo, const Rational& hi, const Rational& vl,
                       const Rational& vr) {
  Rational slope = (vr - vl) / (hi - lo);
  return AffinePiece{lo, hi, true, false, slope, vl - slope * lo};
}

// Assigns the shared junction closures randomly, keeping exactly one side
// closed, then builds the function.
TransformFunction assemble(SeededRng& rng, std::vector<AffinePiece> pieces) {
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
    bool left_owns = pieces[i].is_point() || (!pieces[i + 1].is_point() && rng.coin());
    pieces[i].hi_closed = left_owns;
    pieces[i + 1].lo_closed = !left_owns;
  }
  return TransformFunction::piecewise(std::move(pieces));
}

Rational in_band(SeededRng& rng, const Rational& lo, const Rational& hi) {
  Rational u(static_cast<long>(rng.below(17)), 16);
  return lo + (hi - lo) * u;
}

AffinePiece origin_point() {
  Rational zero(0);
  return AffinePiece{zero, zero, true, true, zero, zero};
}

TransformFunction gen_increasing(SeededRng& rng, const ValuePool& pool,
                                 bool allow_zero_plateau) {
  std::vector<Rational> bps = distinct_positive_values(rng, pool, 1 + rng.below(4));
  std::vector<AffinePiece> pieces;
  Rational cur(0);
  Rational prev_b(0);

  bool plateau = allow_zero_plateau && rng.coin();
  if (!plateau && rng.coin()) {
    // Jump at the origin: f(0) = 0, then start strictly above.
    pieces.push_back(origin_point());
    cur = rng.positive_rational(pool.max_numerator, pool.max_denominator);
  }

  for (std::size_t i = 0; i <= bps.size(); ++i) {
    bool last = i == bps.size();
    Rational rise = rng.coin() ? Rational(0)
                               : rng.positive_rational(pool.max_numerator, pool.max_denominator);
    if (!plateau && cur.is_zero() && rise.is_zero()) {
      // A zero start must rise immediately or amenability is lost.
      rise = Rational(1);
    }
    if (plateau && i == 0) rise = Rational(0);
    if (last) {
      Rational slope = rng.coin() ? Rational(0) : Rational(1);
      pieces.push_back(AffinePiece{prev_b, std::nullopt, true, false, slope,
                                   cur - slope * prev_b});
      break;
    }
    const Rational& b = bps[i];
    pieces.push_back(span_piece(prev_b, b, cur, cur + rise));
    cur += rise;
    if ((!plateau || i > 0) && rng.coin()) {
      cur += rng.positive_rational(pool.max_numerator, pool.max_denominator);  // junction jump
    }
    prev_b = b;
  }
  return assemble(rng, std::move(pieces));
}

TransformFunction gen_amenable_doubling(SeededRng& rng, const ValuePool& pool) {
  Rational c = rng.positive_rational(pool.max_numerator, pool.max_denominator);
  Rational top = c + c;
  std::vector<Rational> bps = distinct_positive_values(rng, pool, 2 + rng.below(4));
  std::vector<AffinePiece> pieces;
  pieces.push_back(origin_point());
  Rational prev_b(0);
  for (std::size_t i = 0; i < bps.size(); ++i) {
    // The first span sits at the top of the band and the tail at the bottom,
    // so a strict decrease is guaranteed; middles roam the band freely.
    Rational vl = i == 0 ? top : in_band(rng, c, top);
    Rational vr = i == 0 ? top : in_band(rng, c, top);
    pieces.push_back(span_piece(prev_b, bps[i], vl, vr));
    prev_b = bps[i];
  }
  Rational slope = rng.coin() ? Rational(0) : Rational(1, 2);
  pieces.push_back(AffinePiece{prev_b, std::nullopt, true, false, slope, c - slope * prev_b});
  return assemble(rng, std::move(pieces));
}

TransformFunction gen_amenable_non_doubling(SeededRng& rng, const ValuePool& pool) {
  Rational floor_v = rng.positive_rational(pool.max_numerator, pool.max_denominator);
  Rational spike = floor_v * Rational(static_cast<long>(5 + 2 * rng.below(4)), 2);
  std::vector<Rational> bps = distinct_positive_values(rng, pool, 2 + rng.below(3));
  std::vector<AffinePiece> pieces;
  pieces.push_back(origin_point());
  Rational prev_b(0);
  for (std::size_t i = 0; i < bps.size(); ++i) {
    Rational vl = i == 0 ? spike : in_band(rng, floor_v, spike);
    Rational vr = i == 0 ? spike : in_band(rng, floor_v, spike);
    pieces.push_back(span_piece(prev_b, bps[i], vl, vr));
    prev_b = bps[i];
  }
  pieces.push_back(AffinePiece{prev_b, std::nullopt, true, false, Rational(0), floor_v});
  return assemble(rng, std::move(pieces));
}

TransformFunction gen_non_increasing(SeededRng& rng, const ValuePool& pool) {
  std::vector<Rational> bps = distinct_positive_values(rng, pool, 2 + rng.below(4));
  std::size_t spans = bps.size() + 1;
  std::vector<SpanPlan> plan(spans);
  for (std::size_t i = 0; i < spans; ++i) {
    plan[i].left_value = rng.positive_rational(pool.max_numerator, pool.max_denominator);
    plan[i].right_value = rng.positive_rational(pool.max_numerator, pool.max_denominator);
  }
  // Force a strict drop at a random junction.
  std::size_t j = 1 + rng.below(spans - 1);
  plan[j].left_value = plan[j - 1].right_value / Rational(2);

  std::vector<AffinePiece> pieces;
  pieces.push_back(origin_point());
  Rational prev_b(0);
  for (std::size_t i = 0; i < spans; ++i) {
    if (i + 1 == spans) {
      pieces.push_back(AffinePiece{prev_b, std::nullopt, true, false, Rational(0),
                                   plan[i].left_value});
    } else {
      pieces.push_back(span_piece(prev_b, bps[i], plan[i].left_value, plan[i].right_value));
      prev_b = bps[i];
    }
  }
  return assemble(rng, std::move(pieces));
}

TransformFunction gen_non_amenable(SeededRng& rng, const ValuePool& pool) {
  Rational v = rng.positive_rational(pool.max_numerator, pool.max_denominator);
  Rational b = rng.positive_rational(pool.max_numerator, pool.max_denominator);
  std::vector<AffinePiece> pieces;
  if (rng.coin()) {
    // Positive at the origin.
    Rational slope = rng.coin() ? Rational(0) : Rational(1);
    pieces.push_back(AffinePiece{Rational(0), b, true, false, Rational(0), v});
    pieces.push_back(AffinePiece{b, std::nullopt, true, false, slope, v - slope * b});
    return TransformFunction::piecewise(std::move(pieces));
  }
  // Attained zero plateau [0, b], then positive.
  pieces.push_back(AffinePiece{Rational(0), b, true, true, Rational(0), Rational(0)});
  pieces.push_back(AffinePiece{b, std::nullopt, false, false, Rational(0), v});
  return TransformFunction::piecewise(std::move(pieces));
}

TransformFunction gen_unconstrained(SeededRng& rng, const ValuePool& pool) {
  auto value = [&] {
    return rng.below(4) == 0 ? Rational(0)
                             : rng.positive_rational(pool.max_numerator, pool.max_denominator);
  };
  std::size_t k = rng.below(6);
  std::vector<Rational> bps = distinct_positive_values(rng, pool, k);
  std::vector<AffinePiece> pieces;
  if (rng.coin()) pieces.push_back(origin_point());
  Rational prev_b(0);
  for (const Rational& b : bps) {
    pieces.push_back(span_piece(prev_b, b, value(), value()));
    prev_b = b;
  }
  Rational slope = rng.coin() ? Rational(0) : Rational(1);
  pieces.push_back(AffinePiece{prev_b, std::nullopt, true, false, slope,
                               value() - slope * prev_b});
  return assemble(rng, std::move(pieces));
}

}  // namespace

TransformFunction gen_function(const GenSpec& spec, FunctionClass cls) {
  SeededRng rng(spec.seed);
  TransformFunction f = [&] {
    switch (cls) {
      case FunctionClass::increasing_amenable:
        return gen_increasing(rng, spec.pool, false);
      case FunctionClass::increasing_zero_at_zero:
        return gen_increasing(rng, spec.pool, true);
      case FunctionClass::amenable_doubling:
        return gen_amenable_doubling(rng, spec.pool);
      case FunctionClass::amenable_non_doubling:
        return gen_amenable_non_doubling(rng, spec.pool);
      case FunctionClass::non_increasing:
        return gen_non_increasing(rng, spec.pool);
      case FunctionClass::non_amenable:
        return gen_non_amenable(rng, spec.pool);
      case FunctionClass::unconstrained:
        return gen_unconstrained(rng, spec.pool);
    }
    throw precondition_error("unknown function class");
  }();

  FunctionClassification c = classify_function(f);
  auto require = [&](bool ok, const char* what) {
    if (!ok) {
      throw internal_error(std::string("generated function misses its class: ") + what);
    }
  };
  switch (cls) {
    case FunctionClass::increasing_amenable:
      require(c.increasing.holds && c.amenable.holds, "increasing_amenable");
      break;
    case FunctionClass::increasing_zero_at_zero:
      require(c.increasing.holds && c.value_at_zero.is_zero(), "increasing_zero_at_zero");
      break;
    case FunctionClass::amenable_doubling:
      require(c.amenable.holds && c.doubling.holds && !c.increasing.holds,
              "amenable_doubling");
      break;
    case FunctionClass::amenable_non_doubling:
      require(c.amenable.holds && !c.doubling.holds, "amenable_non_doubling");
      break;
    case FunctionClass::non_increasing:
      require(!c.increasing.holds && c.value_at_zero.is_zero(), "non_increasing");
      require(c.increasing.witness && c.increasing.witness->a.is_positive(),
              "non_increasing witness starts above zero");
      break;
    case FunctionClass::non_amenable:
      require(!c.amenable.holds, "non_amenable");
      break;
    case FunctionClass::unconstrained:
      break;
  }
  return f;
}

}  // namespace umtk
