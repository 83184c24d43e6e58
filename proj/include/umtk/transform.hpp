#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "umtk/rational.hpp"
#include "umtk/value.hpp"

namespace umtk {

// One affine segment slope * t + intercept on an interval of [0, inf).
// hi == nullopt marks the final unbounded piece.
struct AffinePiece {
  Rational lo;
  std::optional<Rational> hi;
  bool lo_closed = true;
  bool hi_closed = false;
  Rational slope;
  Rational intercept;

  Rational value_at(const Rational& t) const { return slope * t + intercept; }
  bool contains(const Rational& t) const;
  bool is_point() const { return hi && *hi == lo; }
};

// Finite list of affine pieces partitioning [0, inf), nonnegative everywhere.
// The constructor validates the partition: first piece starts closed at 0,
// consecutive pieces share their boundary with exactly one side closed, the
// last piece is unbounded with nonnegative slope.
class PiecewiseAffine {
 public:
  explicit PiecewiseAffine(std::vector<AffinePiece> pieces);

  std::span<const AffinePiece> pieces() const { return pieces_; }
  const AffinePiece& piece_for(const Rational& t) const;
  Rational operator()(const Rational& t) const { return piece_for(t).value_at(t); }

 private:
  std::vector<AffinePiece> pieces_;
};

// A transform acting on distance values: either piecewise affine or a pure
// power t^alpha with alpha > 0.
class TransformFunction {
 public:
  static TransformFunction piecewise(std::vector<AffinePiece> pieces);
  static TransformFunction power(Rational alpha);

  bool is_power() const { return std::holds_alternative<Rational>(repr_); }
  const Rational& alpha() const;
  const PiecewiseAffine& affine() const;

  // Exponent as a machine integer when this is t^k with integral k.
  std::optional<unsigned long> integral_power_exponent() const;

  // Exact value whenever one exists (always, for piecewise affine); throws
  // precondition_error for a power whose value at t is irrational.
  Rational evaluate_exact(const Rational& t) const;
  // pre: t >= 0.
  Enclosure evaluate(const Rational& t, const PrecisionPolicy& policy = {}) const;

 private:
  explicit TransformFunction(PiecewiseAffine pw) : repr_(std::move(pw)) {}
  explicit TransformFunction(Rational alpha) : repr_(std::move(alpha)) {}
  std::variant<PiecewiseAffine, Rational> repr_;
};

// Witness pair a < b with f(a) > f(b), or a <= b with f(a) > 2 f(b).
struct PairViolation {
  Rational a;
  Rational b;
};

template <typename W>
struct CheckResult {
  bool holds = true;
  std::optional<W> witness;
};

// f(a) <= f(b) whenever a <= b. Witness: a < b with f(a) > f(b).
CheckResult<PairViolation> is_increasing(const TransformFunction& f);

// f vanishes only at 0. Witness: either t = 0 when f(0) != 0, or an attained
// t > 0 with f(t) = 0.
CheckResult<Rational> is_amenable(const TransformFunction& f);

// f(a) <= 2 f(b) whenever a <= b. Witness: a <= b with f(a) > 2 f(b).
CheckResult<PairViolation> is_doubling(const TransformFunction& f);

// All three checks plus the preservation classes they characterize.
struct FunctionClassification {
  CheckResult<PairViolation> increasing;
  CheckResult<Rational> amenable;
  CheckResult<PairViolation> doubling;
  Rational value_at_zero;
  bool pseudoultrametric_preserving = false;   // increasing and f(0) = 0
  bool semimetric_preserving = false;          // amenable
  bool ultrametric_preserving = false;         // amenable and increasing
  bool ultrametric_metric_preserving = false;  // amenable and doubling
};

FunctionClassification classify_function(const TransformFunction& f);

// 0 at 0, a/2 on (0, a], b on (a, inf). pre: a > 0, b > 0.
TransformFunction make_fab(const Rational& a, const Rational& b);
// min(t, cap). pre: cap > 0.
TransformFunction make_cap(const Rational& cap);
// t^alpha. pre: alpha > 0.
TransformFunction make_power(const Rational& alpha);
// 0 on [0, r/2], t above. pre: r > 0.
TransformFunction make_threshold(const Rational& r);
TransformFunction make_identity();

}  // namespace umtk
