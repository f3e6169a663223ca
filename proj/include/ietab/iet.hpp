#pragma once

#include <string>
#include <vector>

#include "ietab/alg2.hpp"
#include "ietab/piecewise.hpp"
#include "ietab/regions.hpp"

namespace ietab {

// Orientation-preserving interval exchange with endpoints in the lattice, in canonical
// (minimal partition) form.
class IetMap {
 public:
  static IetMap identity(const Lattice& L);
  // alpha: lengths; tau: 0-based arrival ranks, the image of I_i is J_{tau[i]}.
  static IetMap from_description(const Lattice& L, const std::vector<GroundNum>& alpha, const std::vector<int>& tau);
  // Translation by b on [x, x+a) and by -a on [x+a, x+a+b).
  static IetMap restricted_rotation(const Lattice& L, const GroundNum& a, const GroundNum& b, const GroundNum& x);
  // Swaps [p, p+a) and [q, q+a) by translation.
  static IetMap transposition(const Lattice& L, const GroundNum& a, const GroundNum& p, const GroundNum& q);
  static IetMap from_map(PiecewiseIsometry m);

  const PiecewiseIsometry& map() const { return m_; }
  const Lattice& lattice() const { return m_.lattice(); }
  size_t size() const { return m_.size(); }
  Partition breakpoints() const { return m_.breakpoints(); }
  std::vector<GroundNum> lengths() const { return m_.lengths(); }
  std::vector<int> tau() const { return m_.tau(); }
  // Translation value on each interval of the minimal partition.
  std::vector<GroundNum> translations() const;
  bool is_identity() const { return m_.is_identity(); }

  GroundNum apply(const GroundNum& x) const { return m_.apply(x); }
  bool operator==(const IetMap& o) const { return m_ == o.m_; }
  bool operator!=(const IetMap& o) const { return !(m_ == o.m_); }
  std::string str() const;

 private:
  explicit IetMap(PiecewiseIsometry m) : m_(std::move(m)) {}
  PiecewiseIsometry m_;
};

IetMap compose(const IetMap& f, const IetMap& g);  // f o g
IetMap inverse(const IetMap& f);
IetMap power(const IetMap& f, unsigned long n);

// Lengths and arrival ranks of a list of pieces given in source order.
void describe(const std::vector<Piece>& pieces, std::vector<GroundNum>& alpha, std::vector<int>& tau);

SW2 saf(const IetMap& f);
SW2 saf_over(const IetMap& f, const Partition& P);
RectangleSet inversion_rectangles(const IetMap& f);
SW2 signature(const IetMap& f);
SW2 signature_over(const IetMap& f, const Partition& P);
bool in_ker_saf(const IetMap& f);
bool in_derived(const IetMap& f);

constexpr long kDefaultOrderBudget = 4096;
// Infinite is certified by a nonzero SAF on an invariant block of intervals; Finite by an
// invariant partition found within the budget (< 0: default, overridable via IETABEL_BUDGET).
Order order(const IetMap& f, long budget = -1);

// Restricted rotation or transposition, as an explicit factor.
struct Factor {
  enum class Kind { Rotation, Transposition };
  Kind kind = Kind::Rotation;
  GroundNum a, b;  // rotation: type (a, b); transposition: a is the type, b unused
  GroundNum p, q;  // rotation: offset p; transposition: positions p and q

  static Factor rotation(const GroundNum& a, const GroundNum& b, const GroundNum& x) { return {Kind::Rotation, a, b, x, x}; }
  static Factor transposition(const GroundNum& a, const GroundNum& p, const GroundNum& q) {
    return {Kind::Transposition, a, a, p, q};
  }
  IetMap map(const Lattice& L) const;
  GroundNum support() const;  // measure of the moved set
};

// f_1 f_2 ... f_k, so the last factor acts first.
IetMap recompose(const Lattice& L, const std::vector<Factor>& fs);

// The pair (f, g) of transpositions with order(g o f) = n.
std::pair<IetMap, IetMap> two_transposition_example(const Lattice& L, unsigned n);

std::vector<Factor> decompose_rotations(const IetMap& f, const Partition& P);
std::vector<Factor> decompose_rotations(const IetMap& f);
std::vector<Factor> decompose_small(const IetMap& f, const GroundNum& eps);
std::vector<Factor> decompose_balanced(const IetMap& f);
bool is_balanced(const std::vector<Factor>& fs);

}  // namespace ietab
