#pragma once

#include <utility>
#include <vector>

#include "ietab/alg2.hpp"
#include "ietab/piecewise.hpp"

namespace ietab {

using Interval = std::pair<GroundNum, GroundNum>;

// Finite union of right-open intervals [a,b) inside [0,1), sorted, disjoint and merged.
class IntervalSet {
 public:
  explicit IntervalSet(const Lattice& L) : L_(L) {}
  // Any list of intervals, possibly overlapping or empty; endpoints must lie in the lattice.
  IntervalSet(const Lattice& L, std::vector<Interval> parts);
  static IntervalSet full(const Lattice& L);

  const Lattice& lattice() const { return L_; }
  const std::vector<Interval>& intervals() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  bool contains(const GroundNum& x) const;

  bool operator==(const IntervalSet& o) const;
  bool operator!=(const IntervalSet& o) const { return !(*this == o); }
  std::string str() const;

 private:
  Lattice L_;
  std::vector<Interval> parts_;
};

enum class BoolOp { Union, Intersect, Diff, SymDiff };

IntervalSet bool_op(const IntervalSet& x, const IntervalSet& y, BoolOp op);
GroundNum measure_len(const IntervalSet& X);
IntervalSet act(const PiecewiseIsometry& f, const IntervalSet& X);

struct Rectangle {
  Interval x;
  Interval y;
};

// Finite union of products of intervals, stored as vertical slabs: sorted disjoint x-intervals,
// each with a nonempty y-set, and no two adjacent slabs with the same y-set.
class RectangleSet {
 public:
  struct Slab {
    Interval x;
    IntervalSet y;
  };

  explicit RectangleSet(const Lattice& L) : L_(L) {}
  RectangleSet(const Lattice& L, const std::vector<Rectangle>& rects);

  const Lattice& lattice() const { return L_; }
  const std::vector<Slab>& slabs() const { return slabs_; }
  std::vector<Rectangle> rectangles() const;
  bool empty() const { return slabs_.empty(); }
  bool contains(const GroundNum& x, const GroundNum& y) const;

  bool operator==(const RectangleSet& o) const;
  bool operator!=(const RectangleSet& o) const { return !(*this == o); }

 private:
  friend RectangleSet bool_op(const RectangleSet&, const RectangleSet&, BoolOp);
  static RectangleSet from_slabs(const Lattice& L, std::vector<Slab> slabs);
  Lattice L_;
  std::vector<Slab> slabs_;
};

RectangleSet bool_op(const RectangleSet& x, const RectangleSet& y, BoolOp op);
// {(f(x), f(y)) : (x,y) in P}
RectangleSet act(const PiecewiseIsometry& f, const RectangleSet& P);
// {(y, x) : (x,y) in P}
RectangleSet mirror(const RectangleSet& P);
// Product measure with values in the tensor square: [a,b)x[c,d) -> (b-a)(x)(d-c).
T2 measure_t2(const RectangleSet& P);

}  // namespace ietab
