#pragma once

#include <string>
#include <vector>

#include "ietab/iet.hpp"

namespace ietab {

// Interval exchange with flips, read on open intervals (endpoint values are not tracked).
class FlipMap {
 public:
  static FlipMap identity(const Lattice& L);
  // Reverses [a, b), identity elsewhere.
  static FlipMap reflection(const Lattice& L, const GroundNum& a, const GroundNum& b);
  static FlipMap embed(const IetMap& f);
  // signs: true where the interval is reversed.
  static FlipMap from_description(const Lattice& L, const std::vector<GroundNum>& alpha, const std::vector<int>& tau,
                                  const std::vector<bool>& flips);
  static FlipMap from_map(PiecewiseIsometry m) { return FlipMap(std::move(m)); }

  const PiecewiseIsometry& map() const { return m_; }
  const Lattice& lattice() const { return m_.lattice(); }
  size_t size() const { return m_.size(); }
  Partition breakpoints() const { return m_.breakpoints(); }
  std::vector<GroundNum> lengths() const { return m_.lengths(); }
  std::vector<int> tau() const { return m_.tau(); }
  std::vector<bool> flips() const { return m_.flips(); }
  bool orientation_preserving() const { return m_.orientation_preserving(); }
  bool is_identity() const { return m_.is_identity(); }

  bool operator==(const FlipMap& o) const { return m_ == o.m_; }
  bool operator!=(const FlipMap& o) const { return !(m_ == o.m_); }
  std::string str() const;

 private:
  explicit FlipMap(PiecewiseIsometry m) : m_(std::move(m)) {}
  PiecewiseIsometry m_;
};

IetMap try_unflip(const FlipMap& f);
FlipMap compose(const FlipMap& f, const FlipMap& g);  // f o g
FlipMap inverse(const FlipMap& f);
FlipMap power(const FlipMap& f, unsigned long n);

// All inversions {(x,y) : (x - y)(f(x) - f(y)) < 0}, symmetric in x and y.
RectangleSet inversion_set(const FlipMap& f);
T2Mod2 eps_flip(const FlipMap& f);
bool in_ker_eps_flip(const FlipMap& f);

struct PositiveSubstitute {
  IetMap positive;   // translates every interval of P onto its image
  FlipMap residual;  // reflections of the reversed arrival intervals
};
// compose(residual, embed(positive)) == f.
PositiveSubstitute positive_substitute(const FlipMap& f, const Partition& P);

// Minimal partition refined into S-intervals; within an interval the pieces follow the order of S.
Partition s_refinement(const FlipMap& f, const IndependentSet& S);
SW2Mod2 psi_at(const FlipMap& f, const IndependentSet& S);

// Positive basis of the whole lattice together with the minimal lengths of every map.
IndependentSet common_s(const std::vector<FlipMap>& fs);

struct PsiValue {
  SW2Mod2 value;
  IndependentSet S;
};
PsiValue psi(const FlipMap& f);
std::vector<SW2Mod2> psi_common(const std::vector<FlipMap>& fs);

struct AbImage {
  T2Mod2 eps;
  SW2Mod2 psi;
  bool operator==(const AbImage& o) const { return eps == o.eps && psi == o.psi; }
};
bool in_derived_flip(const FlipMap& f);
AbImage ab_image(const FlipMap& f);
// Images of several maps with the psi parts taken over one common S.
std::vector<AbImage> ab_images(const std::vector<FlipMap>& fs);

constexpr long kDefaultFlipOrderBudget = 256;
// Budget < 0 means the default (overridable via IETABEL_BUDGET).
Order order_flip(const FlipMap& f, long budget = -1);

}  // namespace ietab
