#include "ietab/regions.hpp"

#include <algorithm>

#include "ietab/error.hpp"

namespace ietab {

namespace {

bool apply_op(bool a, bool b, BoolOp op) {
  switch (op) {
    case BoolOp::Union: return a || b;
    case BoolOp::Intersect: return a && b;
    case BoolOp::Diff: return a && !b;
    case BoolOp::SymDiff: return a != b;
  }
  return false;
}

// Sorted distinct endpoints of several interval lists.
std::vector<GroundNum> grid(const Lattice& L, std::initializer_list<const std::vector<Interval>*> lists) {
  std::vector<GroundNum> pts;
  for (const auto* l : lists)
    for (const auto& [a, b] : *l) {
      pts.push_back(a);
      pts.push_back(b);
    }
  return sorted_unique(L, std::move(pts));
}

// Walks a sorted disjoint interval list along increasing query segments.
struct Cursor {
  const std::vector<Interval>& parts;
  size_t k = 0;
  bool covers(const GroundNum& a) {
    while (k < parts.size() && !(a < parts[k].second)) ++k;
    return k < parts.size() && !(a < parts[k].first);
  }
};

void append_merged(std::vector<Interval>& out, const GroundNum& a, const GroundNum& b) {
  if (!out.empty() && out.back().second == a)
    out.back().second = b;
  else
    out.emplace_back(a, b);
}

}  // namespace

IntervalSet::IntervalSet(const Lattice& L, std::vector<Interval> parts) : L_(L) {
  for (const auto& [a, b] : parts) {
    if (a.sign() < 0 || L.one() < b) fail(ErrorKind::OutOfRange, "interval outside [0,1)");
    if (!L.contains(a) || !L.contains(b)) fail(ErrorKind::NotInLattice, "interval endpoint not in the lattice");
  }
  parts.erase(std::remove_if(parts.begin(), parts.end(), [](const Interval& i) { return !(i.first < i.second); }),
              parts.end());
  std::sort(parts.begin(), parts.end(), [](const Interval& x, const Interval& y) { return x.first < y.first; });
  for (auto& [a, b] : parts) {
    if (!parts_.empty() && !(parts_.back().second < a)) {
      if (parts_.back().second < b) parts_.back().second = b;
    } else {
      parts_.emplace_back(a, b);
    }
  }
}

IntervalSet IntervalSet::full(const Lattice& L) { return IntervalSet(L, {{L.zero(), L.one()}}); }

bool IntervalSet::contains(const GroundNum& x) const {
  for (const auto& [a, b] : parts_)
    if (!(x < a) && x < b) return true;
  return false;
}

bool IntervalSet::operator==(const IntervalSet& o) const {
  require_same(L_, o.L_);
  if (parts_.size() != o.parts_.size()) return false;
  for (size_t i = 0; i < parts_.size(); ++i)
    if (parts_[i].first != o.parts_[i].first || parts_[i].second != o.parts_[i].second) return false;
  return true;
}

std::string IntervalSet::str() const {
  if (parts_.empty()) return "{}";
  std::string s;
  for (const auto& [a, b] : parts_) {
    if (!s.empty()) s += " u ";
    s += "[" + a.str() + ", " + b.str() + ")";
  }
  return s;
}

IntervalSet bool_op(const IntervalSet& x, const IntervalSet& y, BoolOp op) {
  require_same(x.lattice(), y.lattice());
  const Lattice& L = x.lattice();
  auto pts = grid(L, {&x.intervals(), &y.intervals()});
  Cursor cx{x.intervals()}, cy{y.intervals()};
  std::vector<Interval> out;
  for (size_t k = 0; k + 1 < pts.size(); ++k) {
    bool a = cx.covers(pts[k]), b = cy.covers(pts[k]);
    if (apply_op(a, b, op)) append_merged(out, pts[k], pts[k + 1]);
  }
  return IntervalSet(L, std::move(out));
}

GroundNum measure_len(const IntervalSet& X) {
  GroundNum s = X.lattice().zero();
  for (const auto& [a, b] : X.intervals()) s += b - a;
  return s;
}

IntervalSet act(const PiecewiseIsometry& f, const IntervalSet& X) {
  require_same(f.lattice(), X.lattice());
  std::vector<Interval> out;
  for (const auto& [a, b] : X.intervals())
    for (auto& iv : f.image(a, b)) out.push_back(std::move(iv));
  return IntervalSet(X.lattice(), std::move(out));
}

RectangleSet RectangleSet::from_slabs(const Lattice& L, std::vector<Slab> slabs) {
  RectangleSet r(L);
  for (auto& s : slabs) {
    if (s.y.empty()) continue;
    if (!r.slabs_.empty() && r.slabs_.back().x.second == s.x.first && r.slabs_.back().y == s.y) {
      r.slabs_.back().x.second = s.x.second;
      continue;
    }
    r.slabs_.push_back(std::move(s));
  }
  return r;
}

RectangleSet::RectangleSet(const Lattice& L, const std::vector<Rectangle>& rects) : L_(L) {
  std::vector<Interval> xs;
  for (const auto& r : rects) {
    IntervalSet check(L, {r.x, r.y});  // validates endpoints
    (void)check;
    if (r.x.first < r.x.second && r.y.first < r.y.second) xs.push_back(r.x);
  }
  auto pts = grid(L, {&xs});
  std::vector<Slab> slabs;
  for (size_t k = 0; k + 1 < pts.size(); ++k) {
    std::vector<Interval> ys;
    for (const auto& r : rects)
      if (r.y.first < r.y.second && !(pts[k] < r.x.first) && !(r.x.second < pts[k + 1])) ys.push_back(r.y);
    slabs.push_back(Slab{{pts[k], pts[k + 1]}, IntervalSet(L, std::move(ys))});
  }
  *this = from_slabs(L, std::move(slabs));
}

std::vector<Rectangle> RectangleSet::rectangles() const {
  std::vector<Rectangle> out;
  for (const auto& s : slabs_)
    for (const auto& y : s.y.intervals()) out.push_back(Rectangle{s.x, y});
  return out;
}

bool RectangleSet::contains(const GroundNum& x, const GroundNum& y) const {
  for (const auto& s : slabs_)
    if (!(x < s.x.first) && x < s.x.second) return s.y.contains(y);
  return false;
}

bool RectangleSet::operator==(const RectangleSet& o) const {
  require_same(L_, o.L_);
  if (slabs_.size() != o.slabs_.size()) return false;
  for (size_t i = 0; i < slabs_.size(); ++i) {
    const auto &a = slabs_[i], &b = o.slabs_[i];
    if (a.x.first != b.x.first || a.x.second != b.x.second || a.y != b.y) return false;
  }
  return true;
}

RectangleSet bool_op(const RectangleSet& x, const RectangleSet& y, BoolOp op) {
  require_same(x.lattice(), y.lattice());
  const Lattice& L = x.lattice();
  std::vector<Interval> xs, ys;
  for (const auto& s : x.slabs()) xs.push_back(s.x);
  for (const auto& s : y.slabs()) ys.push_back(s.x);
  auto pts = grid(L, {&xs, &ys});
  size_t i = 0, j = 0;
  IntervalSet none(L);
  std::vector<RectangleSet::Slab> out;
  for (size_t k = 0; k + 1 < pts.size(); ++k) {
    const GroundNum& a = pts[k];
    while (i < xs.size() && !(a < xs[i].second)) ++i;
    while (j < ys.size() && !(a < ys[j].second)) ++j;
    const IntervalSet& yx = (i < xs.size() && !(a < xs[i].first)) ? x.slabs()[i].y : none;
    const IntervalSet& yy = (j < ys.size() && !(a < ys[j].first)) ? y.slabs()[j].y : none;
    out.push_back(RectangleSet::Slab{{pts[k], pts[k + 1]}, bool_op(yx, yy, op)});
  }
  return RectangleSet::from_slabs(L, std::move(out));
}

RectangleSet act(const PiecewiseIsometry& f, const RectangleSet& P) {
  require_same(f.lattice(), P.lattice());
  std::vector<Rectangle> out;
  for (const auto& s : P.slabs()) {
    auto fx = f.image(s.x.first, s.x.second);
    IntervalSet fy = act(f, s.y);
    for (const auto& a : fx)
      for (const auto& b : fy.intervals()) out.push_back(Rectangle{a, b});
  }
  return RectangleSet(P.lattice(), out);
}

RectangleSet mirror(const RectangleSet& P) {
  std::vector<Rectangle> out;
  for (const auto& r : P.rectangles()) out.push_back(Rectangle{r.y, r.x});
  return RectangleSet(P.lattice(), out);
}

T2 measure_t2(const RectangleSet& P) {
  T2 acc(P.lattice());
  for (const auto& s : P.slabs()) acc += tensor(P.lattice(), s.x.second - s.x.first, measure_len(s.y));
  return acc;
}

}  // namespace ietab
