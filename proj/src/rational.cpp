#include "umtk/rational.hpp"

#include <cctype>
#include <cmath>
#include <ostream>

#include "umtk/errors.hpp"

namespace umtk {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational::Rational(long num, long den) : v_(num, den) {
  if (den == 0) throw input_error("rational with zero denominator");
  v_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) : v_(num, den) {
  if (den == 0) throw input_error("rational with zero denominator");
  v_.canonicalize();
}

Rational::Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

std::optional<Rational> Rational::try_parse(std::string_view text) {
  std::string_view s = trim(text);
  bool negative = false;
  if (!s.empty() && s.front() == '-') {
    negative = true;
    s.remove_prefix(1);
  }
  if (s.empty()) return std::nullopt;

  mpq_class v;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    mpz_class d(std::string(den), 10);
    if (d == 0) return std::nullopt;
    v = mpq_class(mpz_class(std::string(num), 10), d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot);
    std::string_view fp = s.substr(dot + 1);
    if (!all_digits(ip) || !all_digits(fp)) return std::nullopt;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
    mpz_class units = mpz_class(std::string(ip), 10) * scale + mpz_class(std::string(fp), 10);
    v = mpq_class(units, scale);
  } else {
    if (!all_digits(s)) return std::nullopt;
    v = mpq_class(mpz_class(std::string(s), 10));
  }
  v.canonicalize();
  if (negative) v = -v;
  return Rational(std::move(v));
}

Rational Rational::parse(std::string_view text) {
  auto r = try_parse(text);
  if (!r) throw input_error("cannot parse rational value from \"" + std::string(text) + "\"");
  return *r;
}

Rational Rational::from_double(double x) {
  if (!std::isfinite(x)) throw input_error("non-finite numeric value");
  return Rational(mpq_class(x));
}

std::optional<long> Rational::as_long() const {
  if (!is_integer()) return std::nullopt;
  mpz_class n = v_.get_num();
  if (!n.fits_slong_p()) return std::nullopt;
  return n.get_si();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw precondition_error("division by zero rational");
  v_ /= o.v_;
  return *this;
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw precondition_error("division by zero rational");
  return Rational(mpq_class(a.v_ / b.v_));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.v_; }

Rational pow_int(const Rational& base, unsigned long exp) {
  if (exp == 0) return Rational(1);
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), base.num().get_mpz_t(), exp);
  mpz_pow_ui(d.get_mpz_t(), base.den().get_mpz_t(), exp);
  return Rational(n, d);
}

const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }
const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }

}  // namespace umtk
