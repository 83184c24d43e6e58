#include "umtk/value.hpp"

#include <mpfr.h>

#include <algorithm>

#include "umtk/errors.hpp"

namespace umtk {

namespace {

// Bit-size guard for exact integer powers. Beyond this the enclosure path is
// both faster and sufficient, since only sign queries reach such exponents.
constexpr unsigned long kExactPowBitCap = 1u << 18;

unsigned long bit_size(const mpz_class& z) { return mpz_sizeinbase(z.get_mpz_t(), 2); }

bool within_pow_cap(const Rational& base, unsigned long exp) {
  unsigned long width = std::max(bit_size(base.num()), bit_size(base.den()));
  return exp <= kExactPowBitCap / std::max(width, 1ul);
}

Rational mpfr_to_rational(const mpfr_t x) {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), x);
  return Rational(std::move(q));
}

Rational width_target(unsigned log2) {
  return Rational(1) / pow_int(Rational(2), log2);
}

}  // namespace

Enclosure Enclosure::exact(Rational v) { return Enclosure(v, v, true); }

Enclosure Enclosure::bounds(Rational lo, Rational hi) {
  if (hi < lo) throw internal_error("enclosure with hi < lo");
  bool exact = lo == hi;
  return Enclosure(std::move(lo), std::move(hi), exact);
}

std::optional<Rational> Enclosure::exact_value() const {
  if (!exact_) return std::nullopt;
  return lo_;
}

std::optional<Rational> pow_exact(const Rational& base, const Rational& exponent) {
  if (base.is_negative()) throw precondition_error("pow_exact requires base >= 0");
  if (exponent.is_zero()) return Rational(1);
  if (exponent.is_negative()) throw precondition_error("pow_exact requires exponent > 0");
  if (base.is_zero()) return Rational(0);
  if (base == Rational(1)) return Rational(1);

  mpz_class p = exponent.num();
  mpz_class q = exponent.den();
  if (!p.fits_ulong_p() || !q.fits_ulong_p()) return std::nullopt;
  unsigned long pu = p.get_ui();
  unsigned long qu = q.get_ui();
  if (!within_pow_cap(base, pu)) return std::nullopt;

  Rational powered = pow_int(base, pu);
  if (qu == 1) return powered;

  mpz_class root_num, root_den;
  bool exact_num = mpz_root(root_num.get_mpz_t(), powered.num().get_mpz_t(), qu) != 0;
  bool exact_den = mpz_root(root_den.get_mpz_t(), powered.den().get_mpz_t(), qu) != 0;
  if (!exact_num || !exact_den) return std::nullopt;
  return Rational(root_num, root_den);
}

Enclosure pow_bounds(const Rational& base, const Rational& exponent, unsigned bits) {
  if (!base.is_positive() || !exponent.is_positive()) {
    throw precondition_error("pow_bounds requires base > 0 and exponent > 0");
  }

  mpfr_t b[2], e[2], r, acc_lo, acc_hi;
  mpfr_init2(b[0], bits);
  mpfr_init2(b[1], bits);
  mpfr_init2(e[0], bits);
  mpfr_init2(e[1], bits);
  mpfr_init2(r, bits);
  mpfr_init2(acc_lo, bits);
  mpfr_init2(acc_hi, bits);

  mpfr_set_q(b[0], base.raw().get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(b[1], base.raw().get_mpq_t(), MPFR_RNDU);
  mpfr_set_q(e[0], exponent.raw().get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(e[1], exponent.raw().get_mpq_t(), MPFR_RNDU);

  // pow is monotone in each argument over a positive box, so the extrema of
  // the true value lie at the four corners.
  bool first = true;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      mpfr_pow(r, b[i], e[j], MPFR_RNDD);
      if (first || mpfr_cmp(r, acc_lo) < 0) mpfr_set(acc_lo, r, MPFR_RNDD);
      mpfr_pow(r, b[i], e[j], MPFR_RNDU);
      if (first || mpfr_cmp(r, acc_hi) > 0) mpfr_set(acc_hi, r, MPFR_RNDU);
      first = false;
    }
  }

  Rational lo = mpfr_to_rational(acc_lo);
  Rational hi = mpfr_to_rational(acc_hi);

  mpfr_clears(b[0], b[1], e[0], e[1], r, acc_lo, acc_hi, static_cast<mpfr_ptr>(nullptr));
  return Enclosure::bounds(std::move(lo), std::move(hi));
}

Enclosure pow_value(const Rational& base, const Rational& exponent,
                    const PrecisionPolicy& policy) {
  if (auto v = pow_exact(base, exponent)) return Enclosure::exact(*v);
  Rational target = width_target(policy.target_width_log2);
  unsigned bits = policy.start_bits;
  for (;;) {
    Enclosure enc = pow_bounds(base, exponent, bits);
    if (enc.width() <= target || bits >= policy.max_bits) return enc;
    bits = std::min(bits * 2, policy.max_bits);
  }
}

namespace {

struct TermSplit {
  Rational exact_part;                      // sum of exactly evaluated terms
  std::vector<const PowerTerm*> inexact;    // remaining terms
};

TermSplit split_terms(std::span<const PowerTerm> terms) {
  TermSplit out;
  out.exact_part = Rational(0);
  for (const PowerTerm& t : terms) {
    if (t.coeff.is_zero()) continue;
    if (auto v = pow_exact(t.base, t.exponent)) {
      out.exact_part += t.coeff * *v;
    } else {
      out.inexact.push_back(&t);
    }
  }
  return out;
}

// Adds coeff * [enc.lo, enc.hi] onto the running interval [lo, hi].
void accumulate(Rational& lo, Rational& hi, const Rational& coeff, const Enclosure& enc) {
  if (coeff.is_negative()) {
    lo += coeff * enc.hi();
    hi += coeff * enc.lo();
  } else {
    lo += coeff * enc.lo();
    hi += coeff * enc.hi();
  }
}

}  // namespace

Sign power_sum_sign(std::span<const PowerTerm> terms, const PrecisionPolicy& policy) {
  TermSplit split = split_terms(terms);
  if (split.inexact.empty()) {
    int s = split.exact_part.sign();
    return s < 0 ? Sign::negative : (s > 0 ? Sign::positive : Sign::zero);
  }

  unsigned bits = policy.start_bits;
  for (;;) {
    Rational lo = split.exact_part;
    Rational hi = split.exact_part;
    for (const PowerTerm* t : split.inexact) {
      accumulate(lo, hi, t->coeff, pow_bounds(t->base, t->exponent, bits));
    }
    if (lo.is_positive()) return Sign::positive;
    if (hi.is_negative()) return Sign::negative;
    if (bits >= policy.max_bits) return Sign::undecided;
    bits = std::min(bits * 2, policy.max_bits);
  }
}

Enclosure power_sum_enclosure(std::span<const PowerTerm> terms,
                              const PrecisionPolicy& policy) {
  TermSplit split = split_terms(terms);
  if (split.inexact.empty()) return Enclosure::exact(split.exact_part);

  Rational target = width_target(policy.target_width_log2);
  unsigned bits = policy.start_bits;
  for (;;) {
    Rational lo = split.exact_part;
    Rational hi = split.exact_part;
    for (const PowerTerm* t : split.inexact) {
      accumulate(lo, hi, t->coeff, pow_bounds(t->base, t->exponent, bits));
    }
    Enclosure enc = Enclosure::bounds(std::move(lo), std::move(hi));
    if (enc.width() <= target || bits >= policy.max_bits) return enc;
    bits = std::min(bits * 2, policy.max_bits);
  }
}

}  // namespace umtk
