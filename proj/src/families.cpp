#include "umtk/families.hpp"

#include <array>
#include <string>
#include <utility>

#include "umtk/errors.hpp"
#include "umtk/theorems.hpp"

namespace umtk {

namespace {

std::string witness_pair_text(const PairViolation& w) {
  return "(" + w.a.to_string() + ", " + w.b.to_string() + ")";
}

// Certified sign of f(t2) - k * f(t1); exact for piecewise affine members.
Sign separation_sign(const TransformFunction& f, const Rational& t1, const Rational& t2,
                     const Rational& k, const PrecisionPolicy& policy) {
  if (!f.is_power()) {
    int s = (f.affine()(t2) - k * f.affine()(t1)).sign();
    return s < 0 ? Sign::negative : (s > 0 ? Sign::positive : Sign::zero);
  }
  std::array terms{PowerTerm{Rational(1), t2, f.alpha()},
                   PowerTerm{-k, t1, f.alpha()}};
  return power_sum_sign(terms, policy);
}

Enclosure separation_margin(const TransformFunction& f, const Rational& t1,
                            const Rational& t2, const Rational& k,
                            const PrecisionPolicy& policy) {
  if (!f.is_power()) {
    return Enclosure::exact(f.affine()(t2) - k * f.affine()(t1));
  }
  std::array terms{PowerTerm{Rational(1), t2, f.alpha()},
                   PowerTerm{-k, t1, f.alpha()}};
  return power_sum_enclosure(terms, policy);
}

void validate_separation_args(const Rational& t1, const Rational& t2, const Rational& k) {
  if (t1.is_negative() || t1 >= t2) {
    throw precondition_error("separation needs 0 <= t1 < t2, got t1 = " + t1.to_string() +
                             ", t2 = " + t2.to_string());
  }
  if (k <= Rational(1)) {
    throw precondition_error("separation constant must exceed 1, got " + k.to_string());
  }
}

}  // namespace

FunctionFamily::FunctionFamily(std::vector<TransformFunction> members)
    : members_(std::move(members)) {
  if (members_.empty()) throw input_error("function family must be nonempty");
  for (std::size_t i = 0; i < members_.size(); ++i) {
    auto inc = is_increasing(members_[i]);
    if (!inc.holds) {
      throw input_error("family member " + std::to_string(i) +
                        " is not increasing: witness " + witness_pair_text(*inc.witness));
    }
    auto am = is_amenable(members_[i]);
    if (!am.holds) {
      throw input_error("family member " + std::to_string(i) +
                        " is not amenable: witness t = " + am.witness->to_string());
    }
  }
}

const TransformFunction& FunctionFamily::at(std::size_t i) const {
  if (i >= members_.size()) {
    throw precondition_error("family member index " + std::to_string(i) + " out of range");
  }
  return members_[i];
}

std::optional<std::size_t> find_separator(const FunctionFamily& family, const Rational& t1,
                                          const Rational& t2, const Rational& k,
                                          const PrecisionPolicy& policy) {
  validate_separation_args(t1, t2, k);
  std::vector<std::size_t> undecided;
  for (std::size_t i = 0; i < family.size(); ++i) {
    switch (separation_sign(family.at(i), t1, t2, k, policy)) {
      case Sign::positive:
        if (!undecided.empty()) {
          throw undecided_error("member " + std::to_string(undecided.front()) +
                                " is undecided at the precision cap before the first "
                                "certified separator");
        }
        return i;
      case Sign::undecided:
        undecided.push_back(i);
        break;
      default:
        break;
    }
  }
  if (!undecided.empty()) {
    throw undecided_error("member " + std::to_string(undecided.front()) +
                          " is undecided at the precision cap");
  }
  return std::nullopt;
}

Rational power_separator_exponent(const Rational& t1, const Rational& t2, const Rational& k,
                                  const PrecisionPolicy& policy) {
  validate_separation_args(t1, t2, k);
  if (!t1.is_positive()) {
    throw precondition_error("power separator needs t1 > 0");
  }

  auto separates = [&](unsigned long e) {
    Rational alpha(static_cast<long>(e));
    std::array terms{PowerTerm{Rational(1), t2, alpha}, PowerTerm{-k, t1, alpha}};
    return power_sum_sign(terms, policy) == Sign::positive;
  };

  unsigned long hi = 1;
  while (!separates(hi)) {
    if (hi > (1ul << 40)) {
      throw internal_error("separator exponent search exceeded 2^40 with t2/t1 > 1");
    }
    hi *= 2;
  }
  unsigned long lo = hi / 2;  // 0 or a certified non-separating exponent
  while (hi - lo > 1) {
    unsigned long mid = lo + (hi - lo) / 2;
    if (separates(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  if (!separates(hi)) {
    throw internal_error("separator exponent lost certification on re-check");
  }
  return Rational(static_cast<long>(hi));
}

SeparationCheck is_k_separating_on(const FunctionFamily& family, const Rational& k,
                                   std::span<const std::pair<Rational, Rational>> pairs,
                                   const PrecisionPolicy& policy) {
  if (k <= Rational(1)) {
    throw precondition_error("separation constant must exceed 1, got " + k.to_string());
  }
  for (const auto& [t1, t2] : pairs) {
    if (t1.is_negative() || t1 >= t2) {
      throw input_error("separation pair needs 0 <= t1 < t2, got (" + t1.to_string() + ", " +
                        t2.to_string() + ")");
    }
  }
  for (const auto& pr : pairs) {
    bool separated = false;
    bool any_undecided = false;
    for (std::size_t i = 0; i < family.size() && !separated; ++i) {
      switch (separation_sign(family.at(i), pr.first, pr.second, k, policy)) {
        case Sign::positive:
          separated = true;
          break;
        case Sign::undecided:
          any_undecided = true;
          break;
        default:
          break;
      }
    }
    if (separated) continue;
    SeparationCheck res;
    res.outcome = any_undecided ? SeparationCheck::Outcome::undecided
                                : SeparationCheck::Outcome::failed;
    res.pair = pr;
    res.margins.reserve(family.size());
    for (std::size_t i = 0; i < family.size(); ++i) {
      res.margins.push_back(separation_margin(family.at(i), pr.first, pr.second, k, policy));
    }
    return res;
  }
  return {};
}

FamilyCounterexample counterexample_space(const FunctionFamily& family, const Rational& t1,
                                          const Rational& t2, const PrecisionPolicy& policy) {
  validate_separation_args(t1, t2, Rational(2));
  if (!t1.is_positive()) {
    throw precondition_error("counterexample construction needs t1 > 0");
  }
  for (std::size_t i = 0; i < family.size(); ++i) {
    switch (separation_sign(family.at(i), t1, t2, Rational(2), policy)) {
      case Sign::positive:
        throw precondition_error("family is 2-separating on this pair (member " +
                                 std::to_string(i) + "); no counterexample exists");
      case Sign::undecided:
        throw undecided_error("member " + std::to_string(i) +
                              " is undecided at the precision cap on 2 f(t1) >= f(t2)");
      default:
        break;
    }
  }

  Rational t3 = (t1 + t2) / Rational(2);
  Dissimilarity space = Dissimilarity::three_point(t2, t3, t3);
  AxiomReport rep = classify_space(space);
  if (!rep.metric || rep.ultrametric) {
    throw internal_error("counterexample space is not a strictly non-ultrametric metric");
  }

  for (std::size_t i = 0; i < family.size(); ++i) {
    const TransformFunction& f = family.at(i);
    if (!f.is_power() || f.integral_power_exponent()) {
      if (!classify_space(apply(f, space)).metric) {
        throw internal_error("member " + std::to_string(i) +
                             " broke the counterexample space metric");
      }
      continue;
    }
    // Fractional power: certify the one binding inequality 2 f(t3) >= f(t2).
    std::array terms{PowerTerm{Rational(2), t3, f.alpha()},
                     PowerTerm{Rational(-1), t2, f.alpha()}};
    switch (power_sum_sign(terms, policy)) {
      case Sign::negative:
        throw internal_error("member " + std::to_string(i) +
                             " broke the counterexample space metric");
      case Sign::undecided:
        throw undecided_error("member " + std::to_string(i) +
                              " metric replay undecided at the precision cap");
      default:
        break;
    }
  }

  CounterexampleCertificate cert{t3, rep.metric, rep.ultrametric, family.size()};
  return {std::move(space), cert};
}

FamilyDecision ultrametric_by_family(const FunctionFamily& family, const Dissimilarity& d,
                                     bool certified_2_separating,
                                     const PrecisionPolicy& policy) {
  AxiomReport rep = classify_space(d);
  if (!rep.metric) throw precondition_error("family decision requires a metric space");

  FamilyDecision dec;
  if (!certified_2_separating) {
    std::vector<Rational> vals = d.positive_values();
    for (std::size_t i = 0; i < vals.size(); ++i) {
      for (std::size_t j = i + 1; j < vals.size(); ++j) {
        bool separated = false;
        for (std::size_t m = 0; m < family.size() && !separated; ++m) {
          separated =
              separation_sign(family.at(m), vals[i], vals[j], Rational(2), policy) ==
              Sign::positive;
        }
        if (!separated) {
          dec.verdict = FamilyVerdict::inconclusive;
          dec.unseparated_pair = {vals[i], vals[j]};
          return dec;
        }
      }
    }
  }

  std::optional<TripleWitness> undecided;
  for (std::size_t m = 0; m < family.size(); ++m) {
    const TransformFunction& f = family.at(m);
    std::optional<TripleWitness> breaking;
    if (!f.is_power() || f.integral_power_exponent()) {
      AxiomReport after = classify_space(apply(f, d));
      if (!after.metric) {
        if (after.triangle.holds) {
          throw internal_error("amenable member broke a metric without a triangle violation");
        }
        breaking = after.triangle.witness;
      }
    } else {
      const Rational& alpha = f.alpha();
      std::size_t n = d.size();
      for (std::size_t i = 0; i < n && !breaking; ++i) {
        for (std::size_t j = i + 1; j < n && !breaking; ++j) {
          for (std::size_t k = j + 1; k < n && !breaking; ++k) {
            const Rational& dij = d.at(i, j);
            const Rational& dik = d.at(i, k);
            const Rational& djk = d.at(j, k);
            TripleWitness w{i, j, k};
            Rational big = dij, s1 = dik, s2 = djk;
            if (dik > dij && dik > djk) {
              big = dik; s1 = dij; s2 = djk; w = {i, k, j};
            } else if (djk > dij && djk > dik) {
              big = djk; s1 = dij; s2 = dik; w = {j, k, i};
            } else if (!(dij > dik && dij > djk)) {
              continue;  // tied maximum, never violated
            }
            std::array terms{PowerTerm{Rational(1), s1, alpha},
                             PowerTerm{Rational(1), s2, alpha},
                             PowerTerm{Rational(-1), big, alpha}};
            switch (power_sum_sign(terms, policy)) {
              case Sign::negative:
                breaking = w;
                break;
              case Sign::undecided:
                if (!undecided) undecided = w;
                break;
              default:
                break;
            }
          }
        }
      }
    }
    if (breaking) {
      dec.verdict = FamilyVerdict::not_ultrametric;
      dec.breaking_member = m;
      dec.breaking_triple = breaking;
      if (rep.ultrametric) {
        throw internal_error("family member broke an ultrametric space");
      }
      return dec;
    }
  }

  if (undecided) {
    dec.verdict = FamilyVerdict::inconclusive;
    dec.undecided_triple = undecided;
    return dec;
  }
  dec.verdict = FamilyVerdict::ultrametric;
  if (!rep.ultrametric) {
    throw internal_error("every member kept a non-ultrametric space metric despite "
                         "certified 2-separation");
  }
  return dec;
}

}  // namespace umtk
