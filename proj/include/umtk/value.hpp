#pragma once

#include <optional>
#include <span>
#include <vector>

#include "umtk/rational.hpp"

namespace umtk {

// Controls the refinement loop of certified numeric procedures. Precision
// doubles from start_bits until a decision is reached or max_bits is hit.
struct PrecisionPolicy {
  unsigned start_bits = 128;
  unsigned max_bits = 4096;
  // Enclosure-producing calls stop refining once the width drops below
  // 2^-target_width_log2 (sign queries ignore this and refine to max_bits).
  unsigned target_width_log2 = 60;
};

// Closed rational interval [lo, hi] certified to contain an exact real value.
class Enclosure {
 public:
  static Enclosure exact(Rational v);
  static Enclosure bounds(Rational lo, Rational hi);

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  bool is_exact() const { return exact_; }
  Rational width() const { return hi_ - lo_; }

  // Exact value if known, else nullopt.
  std::optional<Rational> exact_value() const;

 private:
  Enclosure(Rational lo, Rational hi, bool exact)
      : lo_(std::move(lo)), hi_(std::move(hi)), exact_(exact) {}
  Rational lo_;
  Rational hi_;
  bool exact_;
};

enum class Sign { negative, zero, positive, undecided };

// One summand coeff * base^exponent with base >= 0 and exponent > 0.
struct PowerTerm {
  Rational coeff;
  Rational base;
  Rational exponent;
};

// base^exponent as an exact rational when one is certifiably equal to it:
// base 0 or 1, integer exponent, or a perfect q-th root for exponent p/q.
// Returns nullopt when the value is irrational or too large to expand.
std::optional<Rational> pow_exact(const Rational& base, const Rational& exponent);

// Certified enclosure of base^exponent at the given working precision.
// pre: base > 0, exponent > 0.
Enclosure pow_bounds(const Rational& base, const Rational& exponent, unsigned bits);

// Exact value when pow_exact succeeds, otherwise an enclosure refined until
// its width is below 2^-policy.target_width_log2 or max_bits is reached.
// pre: base >= 0, exponent > 0.
Enclosure pow_value(const Rational& base, const Rational& exponent,
                    const PrecisionPolicy& policy = {});

// Certified sign of sum(coeff_i * base_i^exponent_i). Returns Sign::zero only
// via exact evaluation; undecided only when max_bits cannot separate the sum
// from zero.
Sign power_sum_sign(std::span<const PowerTerm> terms, const PrecisionPolicy& policy = {});

// Enclosure of the same sum, exact when every term evaluates exactly.
Enclosure power_sum_enclosure(std::span<const PowerTerm> terms,
                              const PrecisionPolicy& policy = {});

}  // namespace umtk
