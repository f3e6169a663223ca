#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ietab/lattice.hpp"

namespace ietab {

// Points 0 = x_0 < x_1 < ... < x_n = 1.
using Partition = std::vector<GroundNum>;

// One piece of a piecewise isometry: [src, src+len) is sent onto [dst, dst+len),
// by translation or (flip) by reversal. Flipped pieces are only meaningful on open intervals.
struct Piece {
  GroundNum src;
  GroundNum len;
  GroundNum dst;
  bool flip = false;
};

// Interval exchange with flips in canonical form: pieces sorted by source and no two
// adjacent pieces that could be merged into one.
class PiecewiseIsometry {
 public:
  static PiecewiseIsometry identity(const Lattice& L);
  // Validates and canonicalizes. Pieces may come in any order.
  static PiecewiseIsometry from_pieces(const Lattice& L, std::vector<Piece> pieces);
  // Canonicalizes without validation; for pieces derived from valid maps.
  static PiecewiseIsometry from_trusted_pieces(const Lattice& L, std::vector<Piece> pieces);
  // Lengths alpha, arrival order tau (0-based, J_{tau(i)} is the image of I_i), optional flips.
  static PiecewiseIsometry from_description(const Lattice& L, const std::vector<GroundNum>& alpha,
                                            const std::vector<int>& tau, const std::vector<bool>& flips);

  const Lattice& lattice() const { return L_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  size_t size() const { return pieces_.size(); }

  Partition breakpoints() const;
  std::vector<GroundNum> lengths() const;
  std::vector<int> tau() const;
  std::vector<bool> flips() const;
  bool orientation_preserving() const;
  bool is_identity() const;

  // f(x); on a flipped piece the value at its left endpoint is representative-dependent.
  GroundNum apply(const GroundNum& x) const;
  // Image of [a, b) as sorted disjoint intervals (not merged).
  std::vector<std::pair<GroundNum, GroundNum>> image(const GroundNum& a, const GroundNum& b) const;

  // Pieces of the non-canonical description over a partition refining the breakpoints.
  std::vector<Piece> split(const Partition& P) const;
  bool refined_by(const Partition& P) const;
  // Images of the intervals of P, as a partition of [0,1).
  Partition arrival_partition(const Partition& P) const;

  bool operator==(const PiecewiseIsometry& o) const;
  bool operator!=(const PiecewiseIsometry& o) const { return !(*this == o); }

 private:
  PiecewiseIsometry(Lattice L, std::vector<Piece> pieces) : L_(std::move(L)), pieces_(std::move(pieces)) {}
  Lattice L_;
  std::vector<Piece> pieces_;
};

struct Order {
  enum class Kind { Finite, Infinite, Unknown };
  Kind kind = Kind::Unknown;
  unsigned long n = 0;  // Finite: the order; Unknown: the budget spent
  static Order finite(unsigned long n) { return {Kind::Finite, n}; }
  static Order infinite() { return {Kind::Infinite, 0}; }
  static Order unknown(unsigned long budget) { return {Kind::Unknown, budget}; }
  bool operator==(const Order& o) const { return kind == o.kind && n == o.n; }
  std::string str() const;
};

// Smallest partition containing the breakpoints and closed under taking images of its
// intervals, if it is reached within max_rounds refinements. Such a partition is permuted by f.
std::optional<Partition> invariant_partition(const PiecewiseIsometry& f, long max_rounds);
// Order of f given a partition it permutes: lcm over cycles of the cycle length, doubled when
// the cycle reverses orientation an odd number of times. Verified by f^n = id.
unsigned long permutation_order(const PiecewiseIsometry& f, const Partition& P);

// f o g: apply g first.
PiecewiseIsometry compose(const PiecewiseIsometry& f, const PiecewiseIsometry& g);
PiecewiseIsometry inverse(const PiecewiseIsometry& f);
PiecewiseIsometry power(const PiecewiseIsometry& f, unsigned long n);

// Canonical minimal partition of the breakpoints of two maps and pullbacks: the
// coarsest partition P such that P is associated with g and g(P) is associated with f.
Partition common_partition(const PiecewiseIsometry& g, const PiecewiseIsometry& f);
Partition sorted_unique(const Lattice& L, std::vector<GroundNum> pts);

}  // namespace ietab
