#include "umtk/transform.hpp"

#include <string>
#include <utility>

#include "umtk/errors.hpp"

namespace umtk {

bool AffinePiece::contains(const Rational& t) const {
  if (t < lo || (t == lo && !lo_closed)) return false;
  if (hi && (t > *hi || (t == *hi && !hi_closed))) return false;
  return true;
}

PiecewiseAffine::PiecewiseAffine(std::vector<AffinePiece> pieces)
    : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw input_error("piecewise function needs at least one piece");
  if (pieces_.front().lo != Rational(0) || !pieces_.front().lo_closed) {
    throw input_error("first piece must start closed at 0");
  }
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const AffinePiece& p = pieces_[i];
    std::string where = "piece " + std::to_string(i);
    if (p.hi) {
      if (*p.hi < p.lo) throw input_error(where + " has upper bound below lower bound");
      if (*p.hi == p.lo && !(p.lo_closed && p.hi_closed)) {
        throw input_error(where + " is degenerate but not closed on both sides");
      }
      if (i + 1 == pieces_.size()) throw input_error("last piece must be unbounded");
      const AffinePiece& q = pieces_[i + 1];
      if (q.lo != *p.hi) {
        throw input_error("pieces " + std::to_string(i) + " and " + std::to_string(i + 1) +
                          " do not share a boundary");
      }
      if (q.lo_closed == p.hi_closed) {
        throw input_error("boundary between pieces " + std::to_string(i) + " and " +
                          std::to_string(i + 1) + " must be closed on exactly one side");
      }
    } else {
      if (i + 1 != pieces_.size()) throw input_error(where + " is unbounded but not last");
      if (p.hi_closed) throw input_error(where + " is unbounded and cannot close above");
      if (p.slope.is_negative()) {
        throw input_error(where + " is unbounded with negative slope, so eventually negative");
      }
    }
    if (p.value_at(p.lo).is_negative() || (p.hi && p.value_at(*p.hi).is_negative())) {
      throw input_error(where + " takes negative values");
    }
  }
}

const AffinePiece& PiecewiseAffine::piece_for(const Rational& t) const {
  if (t.is_negative()) throw precondition_error("transform argument must be nonnegative");
  for (const AffinePiece& p : pieces_) {
    if (p.contains(t)) return p;
  }
  throw internal_error("validated piece list does not cover t = " + t.to_string());
}

TransformFunction TransformFunction::piecewise(std::vector<AffinePiece> pieces) {
  return TransformFunction(PiecewiseAffine(std::move(pieces)));
}

TransformFunction TransformFunction::power(Rational alpha) {
  if (!alpha.is_positive()) throw precondition_error("power exponent must be positive");
  return TransformFunction(std::move(alpha));
}

const Rational& TransformFunction::alpha() const {
  if (!is_power()) throw precondition_error("not a power function");
  return std::get<Rational>(repr_);
}

const PiecewiseAffine& TransformFunction::affine() const {
  if (is_power()) throw precondition_error("not a piecewise affine function");
  return std::get<PiecewiseAffine>(repr_);
}

std::optional<unsigned long> TransformFunction::integral_power_exponent() const {
  if (!is_power()) return std::nullopt;
  const Rational& a = alpha();
  if (!a.is_integer() || !a.num().fits_ulong_p()) return std::nullopt;
  return a.num().get_ui();
}

Rational TransformFunction::evaluate_exact(const Rational& t) const {
  if (t.is_negative()) throw precondition_error("transform argument must be nonnegative");
  if (!is_power()) return affine()(t);
  if (auto v = pow_exact(t, alpha())) return *v;
  throw precondition_error("t^" + alpha().to_string() + " at t = " + t.to_string() +
                           " has no exact rational value");
}

Enclosure TransformFunction::evaluate(const Rational& t, const PrecisionPolicy& policy) const {
  if (t.is_negative()) throw precondition_error("transform argument must be nonnegative");
  if (!is_power()) return Enclosure::exact(affine()(t));
  if (t.is_zero()) return Enclosure::exact(Rational(0));
  return pow_value(t, alpha(), policy);
}

namespace {

// Point strictly inside p near its boundary x (x is p's left end when
// left_end, else its right end), whose value differs from the limit of f at
// x by strictly less than margin. Constant pieces use a fixed step: +1 into
// an unbounded piece, the midpoint otherwise.
// pre: p is not a single point; margin > 0.
Rational point_near_end(const AffinePiece& p, const Rational& x, bool left_end,
                        const Rational& margin) {
  Rational room = left_end ? (p.hi ? (*p.hi - x) / Rational(2) : Rational(1))
                           : (x - p.lo) / Rational(2);
  Rational delta = room;
  if (!p.slope.is_zero()) {
    delta = min(delta, margin / (p.slope.abs() + Rational(1)));
  }
  return left_end ? x + delta : x - delta;
}

}  // namespace

CheckResult<PairViolation> is_increasing(const TransformFunction& f) {
  if (f.is_power()) return {};
  auto pieces = f.affine().pieces();
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const AffinePiece& p = pieces[i];
    if (p.slope.is_negative() && !p.is_point()) {
      Rational u, v;
      if (p.hi) {
        u = (p.lo + p.lo + *p.hi) / Rational(3);
        v = (p.lo + *p.hi + *p.hi) / Rational(3);
      } else {
        u = p.lo + Rational(1);
        v = p.lo + Rational(2);
      }
      return {false, PairViolation{u, v}};
    }
    if (i + 1 == pieces.size()) continue;
    const AffinePiece& q = pieces[i + 1];
    const Rational& x = *p.hi;
    Rational left = p.value_at(x);
    Rational right = q.value_at(x);
    if (left <= right) continue;
    Rational margin = (left - right) / Rational(4);
    Rational a = p.hi_closed ? x : point_near_end(p, x, false, margin);
    Rational b = q.lo_closed ? x : point_near_end(q, x, true, margin);
    if (!(a < b && f.evaluate_exact(a) > f.evaluate_exact(b))) {
      throw internal_error("monotonicity witness construction failed at junction " +
                           x.to_string());
    }
    return {false, PairViolation{std::move(a), std::move(b)}};
  }
  return {};
}

CheckResult<Rational> is_amenable(const TransformFunction& f) {
  if (f.is_power()) return {};
  const PiecewiseAffine& pw = f.affine();
  if (!pw(Rational(0)).is_zero()) return {false, Rational(0)};
  for (const AffinePiece& p : pw.pieces()) {
    if (p.slope.is_zero()) {
      if (!p.intercept.is_zero()) continue;
      // f vanishes on all of p; report an attained positive point, preferring
      // the endpoints.
      if (p.is_point()) {
        if (p.lo.is_positive()) return {false, p.lo};
        continue;
      }
      if (p.hi && p.hi_closed && p.hi->is_positive()) return {false, *p.hi};
      if (p.lo_closed && p.lo.is_positive()) return {false, p.lo};
      Rational inner = p.hi ? (p.lo + *p.hi) / Rational(2) : p.lo + Rational(1);
      if (inner.is_positive()) return {false, std::move(inner)};
    } else {
      Rational root = -p.intercept / p.slope;
      if (root.is_positive() && p.contains(root)) return {false, std::move(root)};
    }
  }
  return {};
}

namespace {

// Supremum of f over a scanned prefix of [0, inf), with enough provenance to
// materialize a point nearly attaining it.
struct SupPoint {
  Rational value;
  bool attained = false;
  Rational point;         // attained: f(point) == value
  std::size_t piece = 0;  // not attained: approached at an open end of this piece
  Rational end;
  bool end_is_left = false;
};

SupPoint attained_at(const Rational& value, const Rational& point) {
  SupPoint s;
  s.value = value;
  s.attained = true;
  s.point = point;
  return s;
}

SupPoint approached_at(const Rational& value, std::size_t piece, const Rational& end,
                       bool end_is_left) {
  SupPoint s;
  s.value = value;
  s.piece = piece;
  s.end = end;
  s.end_is_left = end_is_left;
  return s;
}

// Keeps the earlier provenance on ties.
void raise_sup(std::optional<SupPoint>& sup, const SupPoint& candidate) {
  if (!sup || candidate.value > sup->value) sup = candidate;
}

// Supremum of f over one piece. Constant pieces always attain it; for sloped
// pieces it sits at an end, attained only when that end is closed.
// pre: p bounded or slope >= 0 (unbounded rising pieces are never queried).
SupPoint piece_sup(const AffinePiece& p, std::size_t idx) {
  if (p.is_point()) return attained_at(p.value_at(p.lo), p.lo);
  if (p.slope.is_zero()) {
    if (p.lo_closed) return attained_at(p.intercept, p.lo);
    if (p.hi && p.hi_closed) return attained_at(p.intercept, *p.hi);
    Rational inner = p.hi ? (p.lo + *p.hi) / Rational(2) : p.lo + Rational(1);
    return attained_at(p.intercept, std::move(inner));
  }
  if (p.slope.is_negative()) {
    if (p.lo_closed) return attained_at(p.value_at(p.lo), p.lo);
    return approached_at(p.value_at(p.lo), idx, p.lo, true);
  }
  if (p.hi_closed) return attained_at(p.value_at(*p.hi), *p.hi);
  return approached_at(p.value_at(*p.hi), idx, *p.hi, false);
}

}  // namespace

CheckResult<PairViolation> is_doubling(const TransformFunction& f) {
  if (f.is_power()) return {};
  auto pieces = f.affine().pieces();
  std::optional<SupPoint> sup;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const AffinePiece& p = pieces[i];

    // Candidate for sup over everything strictly left of points in p: the
    // prefix sup, plus p's own left-end value when p decreases (covering
    // pairs inside p).
    std::optional<SupPoint> cand = sup;
    bool falls = p.slope.is_negative() && !p.is_point();
    if (falls) {
      SupPoint left = p.lo_closed ? attained_at(p.value_at(p.lo), p.lo)
                                  : approached_at(p.value_at(p.lo), i, p.lo, true);
      if (cand) {
        raise_sup(cand, left);
      } else {
        cand = left;
      }
    }

    if (cand) {
      // Infimum of f over p: at the right end for falling pieces, else at lo.
      Rational x_inf = falls ? *p.hi : p.lo;
      bool inf_attained = p.is_point() || (falls ? p.hi_closed : p.lo_closed);
      Rational v = p.value_at(x_inf);
      if (cand->value > v + v) {
        Rational margin = (cand->value - v - v) / Rational(4);
        Rational a = cand->attained
                         ? cand->point
                         : point_near_end(pieces[cand->piece], cand->end, cand->end_is_left,
                                          margin);
        Rational b = inf_attained ? x_inf : point_near_end(p, x_inf, !falls, margin);
        Rational fa = f.evaluate_exact(a);
        Rational fb = f.evaluate_exact(b);
        if (!(a <= b && fa > fb + fb)) {
          throw internal_error("doubling witness construction failed in piece " +
                               std::to_string(i));
        }
        return {false, PairViolation{std::move(a), std::move(b)}};
      }
    }

    if (p.hi) raise_sup(sup, piece_sup(p, i));
  }
  return {};
}

FunctionClassification classify_function(const TransformFunction& f) {
  FunctionClassification c;
  c.increasing = is_increasing(f);
  c.amenable = is_amenable(f);
  c.doubling = is_doubling(f);
  c.value_at_zero = f.is_power() ? Rational(0) : f.affine()(Rational(0));
  if (c.increasing.holds && !c.doubling.holds) {
    throw internal_error("increasing function failed the doubling check");
  }
  c.pseudoultrametric_preserving = c.increasing.holds && c.value_at_zero.is_zero();
  c.semimetric_preserving = c.amenable.holds;
  c.ultrametric_preserving = c.amenable.holds && c.increasing.holds;
  c.ultrametric_metric_preserving = c.amenable.holds && c.doubling.holds;
  return c;
}

TransformFunction make_fab(const Rational& a, const Rational& b) {
  if (!a.is_positive() || !b.is_positive()) {
    throw precondition_error("make_fab requires a > 0 and b > 0");
  }
  Rational zero(0);
  std::vector<AffinePiece> pieces;
  pieces.push_back({zero, zero, true, true, zero, zero});
  pieces.push_back({zero, a, false, true, zero, a / Rational(2)});
  pieces.push_back({a, std::nullopt, false, false, zero, b});
  return TransformFunction::piecewise(std::move(pieces));
}

TransformFunction make_cap(const Rational& cap) {
  if (!cap.is_positive()) throw precondition_error("make_cap requires cap > 0");
  Rational zero(0);
  Rational one(1);
  std::vector<AffinePiece> pieces;
  pieces.push_back({zero, cap, true, false, one, zero});
  pieces.push_back({cap, std::nullopt, true, false, zero, cap});
  return TransformFunction::piecewise(std::move(pieces));
}

TransformFunction make_power(const Rational& alpha) { return TransformFunction::power(alpha); }

TransformFunction make_threshold(const Rational& r) {
  if (!r.is_positive()) throw precondition_error("make_threshold requires r > 0");
  Rational zero(0);
  Rational one(1);
  Rational half_r = r / Rational(2);
  std::vector<AffinePiece> pieces;
  pieces.push_back({zero, half_r, true, true, zero, zero});
  pieces.push_back({half_r, std::nullopt, false, false, one, zero});
  return TransformFunction::piecewise(std::move(pieces));
}

TransformFunction make_identity() {
  Rational zero(0);
  Rational one(1);
  std::vector<AffinePiece> pieces;
  pieces.push_back({zero, std::nullopt, true, false, one, zero});
  return TransformFunction::piecewise(std::move(pieces));
}

}  // namespace umtk
