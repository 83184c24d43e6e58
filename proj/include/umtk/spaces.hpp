#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "umtk/rational.hpp"

namespace umtk {

// Finite symmetric nonnegative matrix over named points. Immutable after
// construction; the constructor rejects asymmetry and negative entries.
class Dissimilarity {
 public:
  Dissimilarity(std::size_t n, std::vector<Rational> entries,
                std::vector<std::string> labels = {});

  static Dissimilarity from_rows(const std::vector<std::vector<Rational>>& rows,
                                 std::vector<std::string> labels = {});
  static Dissimilarity two_point(const Rational& d01);
  static Dissimilarity three_point(const Rational& d01, const Rational& d02,
                                   const Rational& d12);

  std::size_t size() const { return n_; }
  const Rational& at(std::size_t i, std::size_t j) const;
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<Rational>& entries() const { return d_; }

  // Distinct positive off-diagonal values, ascending.
  std::vector<Rational> positive_values() const;

  friend bool operator==(const Dissimilarity& a, const Dissimilarity& b) {
    return a.n_ == b.n_ && a.d_ == b.d_;
  }

 private:
  std::size_t n_;
  std::vector<Rational> d_;  // row-major n*n
  std::vector<std::string> labels_;
};

struct PointWitness {
  std::size_t i;
};

struct PairWitness {
  std::size_t i;
  std::size_t j;
};

// Triple (i, j, k): the inequality bounding d(i, j) through k fails.
struct TripleWitness {
  std::size_t i;
  std::size_t j;
  std::size_t k;
};

template <typename W>
struct Verdict {
  bool holds = true;
  std::optional<W> witness;
};

// Axiom verdicts plus the derived class memberships. Witnesses are the first
// failures in lexicographic scan order over indices.
struct AxiomReport {
  Verdict<PointWitness> reflexive;        // d(i, i) = 0 for all i
  Verdict<PairWitness> identity;          // d(i, j) > 0 for all i != j
  Verdict<TripleWitness> triangle;        // d(i, j) <= d(i, k) + d(k, j)
  Verdict<TripleWitness> strong_triangle; // d(i, j) <= max(d(i, k), d(k, j))
  bool semimetric = false;
  bool pseudometric = false;
  bool pseudoultrametric = false;
  bool metric = false;
  bool ultrametric = false;
};

AxiomReport classify_space(const Dissimilarity& d);

// Triangle test in perimeter form: with p = d(i,j) + d(j,k) + d(k,i), checks
// 2 * max(d(i,j), d(j,k), d(k,i)) <= p.
bool check_triangle_perimeter(const Dissimilarity& d, std::size_t i, std::size_t j,
                              std::size_t k);

// Strong-triangle failure maximizing the gap between d(i, j) and the larger
// of the two legs through k; a = that larger leg, b = d(i, j).
struct UltrametricViolation {
  TripleWitness triple;
  Rational a;
  Rational b;
};

std::optional<UltrametricViolation> worst_ultrametric_violation(const Dissimilarity& d);

}  // namespace umtk
