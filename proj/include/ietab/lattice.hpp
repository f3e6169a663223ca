#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "ietab/ground.hpp"

namespace ietab {

using IntVec = std::vector<Integer>;
using IntMat = std::vector<IntVec>;

// Row-style Hermite normal form of an integer matrix; zero rows are dropped.
IntMat hermite_normal_form(IntMat rows);
Integer determinant(const IntMat& m);
// Rank over Q of integer row vectors.
int rank_over_q(const IntMat& rows);

// A finitely generated subgroup of R containing 1, with a fixed Z-basis.
class Lattice {
 public:
  struct Impl;

  static Lattice from_generators(const Field& field, const std::vector<GroundNum>& gens);
  // Uses `basis` as given; it must be Z-independent with 1 in its span.
  static Lattice with_basis(const Field& field, const std::vector<GroundNum>& basis);

  const Field& field() const;
  int rank() const;
  const std::vector<GroundNum>& basis() const;
  bool dense() const;
  bool same(const Lattice& other) const;

  std::optional<IntVec> try_coordinates(const GroundNum& x) const;
  IntVec coordinates_of(const GroundNum& x) const;
  bool contains(const GroundNum& x) const { return try_coordinates(x).has_value(); }
  GroundNum element(const IntVec& coords) const;
  bool divisible_by(const GroundNum& x, long k) const;

  // Same group, new basis, where new coordinates are c' = U c.
  Lattice rebased(const IntMat& U) const;

  GroundNum zero() const { return field().zero(); }
  GroundNum one() const { return field().one(); }

 private:
  explicit Lattice(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

void require_same(const Lattice& a, const Lattice& b);

GroundNum small_positive(const Lattice& L, const GroundNum& bound);

// Positive Z-independent set with natural-number expansions of the requested targets.
struct IndependentSet {
  std::vector<GroundNum> elements;  // sorted decreasing
  std::vector<GroundNum> targets;
  std::vector<IntVec> expansions;   // expansions[t][s]

  size_t size() const { return elements.size(); }
  // Z-coefficients of x over the elements, if x lies in their Z-span.
  std::optional<IntVec> expand(const Lattice& L, const GroundNum& x) const;
  // Verifies positivity, independence and the stored expansions.
  bool verify(const Lattice& L) const;
};

constexpr long kDefaultIndependentizeBudget = 10000;

// Reduce-by-smallest. Budget < 0 means the default (overridable via IETABEL_BUDGET).
IndependentSet independentize(const Lattice& L, const std::vector<GroundNum>& targets, long budget = -1);

}  // namespace ietab
