#include "umtk/spaces.hpp"

#include <set>
#include <utility>

#include "umtk/errors.hpp"

namespace umtk {

Dissimilarity::Dissimilarity(std::size_t n, std::vector<Rational> entries,
                             std::vector<std::string> labels)
    : n_(n), d_(std::move(entries)), labels_(std::move(labels)) {
  if (n_ == 0) throw input_error("dissimilarity space needs at least one point");
  if (d_.size() != n_ * n_) {
    throw input_error("entry count " + std::to_string(d_.size()) + " is not n*n for n = " +
                      std::to_string(n_));
  }
  if (!labels_.empty() && labels_.size() != n_) {
    throw input_error("label count " + std::to_string(labels_.size()) +
                      " does not match n = " + std::to_string(n_));
  }
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      const Rational& v = d_[i * n_ + j];
      if (v.is_negative()) {
        throw input_error("negative entry at (" + std::to_string(i) + ", " +
                          std::to_string(j) + ")");
      }
      if (j > i && v != d_[j * n_ + i]) {
        throw input_error("asymmetric entries at (" + std::to_string(i) + ", " +
                          std::to_string(j) + ")");
      }
    }
  }
}

Dissimilarity Dissimilarity::from_rows(const std::vector<std::vector<Rational>>& rows,
                                       std::vector<std::string> labels) {
  std::size_t n = rows.size();
  std::vector<Rational> entries;
  entries.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw input_error("row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                        " entries, expected " + std::to_string(n));
    }
    for (const Rational& v : rows[i]) entries.push_back(v);
  }
  return Dissimilarity(n, std::move(entries), std::move(labels));
}

Dissimilarity Dissimilarity::two_point(const Rational& d01) {
  return Dissimilarity(2, {Rational(0), d01, d01, Rational(0)});
}

Dissimilarity Dissimilarity::three_point(const Rational& d01, const Rational& d02,
                                         const Rational& d12) {
  return Dissimilarity(3, {Rational(0), d01, d02,
                           d01, Rational(0), d12,
                           d02, d12, Rational(0)});
}

const Rational& Dissimilarity::at(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) {
    throw precondition_error("index (" + std::to_string(i) + ", " + std::to_string(j) +
                             ") out of range for n = " + std::to_string(n_));
  }
  return d_[i * n_ + j];
}

std::vector<Rational> Dissimilarity::positive_values() const {
  std::set<Rational> vals;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      const Rational& v = d_[i * n_ + j];
      if (v.is_positive()) vals.insert(v);
    }
  }
  return {vals.begin(), vals.end()};
}

namespace {

void assert_lattice(const AxiomReport& r) {
  if (r.strong_triangle.holds && !r.triangle.holds) {
    throw internal_error("strong triangle holds but triangle fails");
  }
  if (r.pseudoultrametric && !r.pseudometric) {
    throw internal_error("pseudoultrametric space is not a pseudometric");
  }
  if (r.ultrametric && !r.metric) {
    throw internal_error("ultrametric space is not a metric");
  }
}

}  // namespace

AxiomReport classify_space(const Dissimilarity& d) {
  AxiomReport r;
  std::size_t n = d.size();

  for (std::size_t i = 0; i < n && r.reflexive.holds; ++i) {
    if (!d.at(i, i).is_zero()) {
      r.reflexive.holds = false;
      r.reflexive.witness = PointWitness{i};
    }
  }

  for (std::size_t i = 0; i < n && r.identity.holds; ++i) {
    for (std::size_t j = i + 1; j < n && r.identity.holds; ++j) {
      if (d.at(i, j).is_zero()) {
        r.identity.holds = false;
        r.identity.witness = PairWitness{i, j};
      }
    }
  }

  bool scanning = true;
  for (std::size_t i = 0; i < n && scanning; ++i) {
    for (std::size_t j = 0; j < n && scanning; ++j) {
      if (j == i) continue;
      const Rational& dij = d.at(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        const Rational& leg1 = d.at(i, k);
        const Rational& leg2 = d.at(k, j);
        if (r.triangle.holds && dij > leg1 + leg2) {
          r.triangle.holds = false;
          r.triangle.witness = TripleWitness{i, j, k};
        }
        if (r.strong_triangle.holds && dij > max(leg1, leg2)) {
          r.strong_triangle.holds = false;
          r.strong_triangle.witness = TripleWitness{i, j, k};
        }
      }
      scanning = r.triangle.holds || r.strong_triangle.holds;
    }
  }

  r.semimetric = r.reflexive.holds && r.identity.holds;
  r.pseudometric = r.reflexive.holds && r.triangle.holds;
  r.pseudoultrametric = r.reflexive.holds && r.strong_triangle.holds;
  r.metric = r.pseudometric && r.identity.holds;
  r.ultrametric = r.pseudoultrametric && r.identity.holds;
  assert_lattice(r);
  return r;
}

bool check_triangle_perimeter(const Dissimilarity& d, std::size_t i, std::size_t j,
                              std::size_t k) {
  const Rational& a = d.at(i, j);
  const Rational& b = d.at(j, k);
  const Rational& c = d.at(k, i);
  Rational perimeter = a + b + c;
  Rational largest = max(a, max(b, c));
  return largest + largest <= perimeter;
}

std::optional<UltrametricViolation> worst_ultrametric_violation(const Dissimilarity& d) {
  std::size_t n = d.size();
  std::optional<UltrametricViolation> best;
  std::optional<Rational> best_gap;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const Rational& b = d.at(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        Rational a = max(d.at(i, k), d.at(k, j));
        if (b <= a) continue;
        Rational gap = b - a;
        if (!best_gap || gap > *best_gap) {
          best_gap = gap;
          best = UltrametricViolation{TripleWitness{i, j, k}, a, b};
        }
      }
    }
  }
  return best;
}

}  // namespace umtk
