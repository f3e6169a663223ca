#include "ietab/flips.hpp"

#include <algorithm>
#include <numeric>

#include "ietab/error.hpp"

namespace ietab {

FlipMap FlipMap::identity(const Lattice& L) { return FlipMap(PiecewiseIsometry::identity(L)); }

FlipMap FlipMap::reflection(const Lattice& L, const GroundNum& a, const GroundNum& b) {
  for (const auto* v : {&a, &b})
    if (!L.contains(*v)) fail(ErrorKind::NotInLattice, v->str() + " is not in the lattice");
  if (a.sign() < 0 || !(a < b) || L.one() < b) fail(ErrorKind::OutOfRange, "reflection interval outside [0,1)");
  std::vector<Piece> ps;
  if (a.sign() > 0) ps.push_back(Piece{L.zero(), a, L.zero(), false});
  ps.push_back(Piece{a, b - a, a, true});
  if (b < L.one()) ps.push_back(Piece{b, L.one() - b, b, false});
  return FlipMap(PiecewiseIsometry::from_pieces(L, std::move(ps)));
}

FlipMap FlipMap::embed(const IetMap& f) { return FlipMap(f.map()); }

FlipMap FlipMap::from_description(const Lattice& L, const std::vector<GroundNum>& alpha, const std::vector<int>& tau,
                                  const std::vector<bool>& flips) {
  return FlipMap(PiecewiseIsometry::from_description(L, alpha, tau, flips));
}

std::string FlipMap::str() const {
  std::string s = "alpha:";
  for (const auto& a : lengths()) s += " " + a.str();
  s += " tau:";
  for (int t : tau()) s += " " + std::to_string(t + 1);
  s += " signs: ";
  for (bool b : flips()) s += b ? '-' : '+';
  return s;
}

IetMap try_unflip(const FlipMap& f) { return IetMap::from_map(f.map()); }
FlipMap compose(const FlipMap& f, const FlipMap& g) { return FlipMap::from_map(compose(f.map(), g.map())); }
FlipMap inverse(const FlipMap& f) { return FlipMap::from_map(inverse(f.map())); }
FlipMap power(const FlipMap& f, unsigned long n) { return FlipMap::from_map(power(f.map(), n)); }

RectangleSet inversion_set(const FlipMap& f) {
  const auto& ps = f.map().pieces();
  std::vector<Rectangle> rects;
  for (size_t i = 0; i < ps.size(); ++i) {
    Interval Ii{ps[i].src, ps[i].src + ps[i].len};
    if (ps[i].flip) rects.push_back(Rectangle{Ii, Ii});
    for (size_t j = i + 1; j < ps.size(); ++j) {
      if (!(ps[j].dst < ps[i].dst)) continue;
      Interval Ij{ps[j].src, ps[j].src + ps[j].len};
      rects.push_back(Rectangle{Ii, Ij});
      rects.push_back(Rectangle{Ij, Ii});
    }
  }
  return RectangleSet(f.lattice(), rects);
}

T2Mod2 eps_flip(const FlipMap& f) {
  const Lattice& L = f.lattice();
  const auto& ps = f.map().pieces();
  std::vector<IntVec> c;
  for (const auto& p : ps) c.push_back(L.coordinates_of(p.len));
  T2 acc(L);
  for (size_t i = 0; i < ps.size(); ++i) {
    if (ps[i].flip) acc += tensor_coords(L, c[i], c[i]);
    for (size_t j = i + 1; j < ps.size(); ++j)
      if (ps[j].dst < ps[i].dst) {
        acc += tensor_coords(L, c[i], c[j]);
        acc += tensor_coords(L, c[j], c[i]);
      }
  }
  return mod2(acc);
}

bool in_ker_eps_flip(const FlipMap& f) { return eps_flip(f).is_zero(); }

PositiveSubstitute positive_substitute(const FlipMap& f, const Partition& P) {
  const Lattice& L = f.lattice();
  auto ps = f.map().split(P);
  FlipMap residual = FlipMap::identity(L);
  for (auto& p : ps) {
    if (!p.flip) continue;
    residual = compose(residual, FlipMap::reflection(L, p.dst, p.dst + p.len));
    p.flip = false;
  }
  return {IetMap::from_map(PiecewiseIsometry::from_pieces(L, std::move(ps))), residual};
}

namespace {

// Natural-number expansion of x over S, or NotRepresentableOverS.
IntVec expansion_over(const Lattice& L, const IndependentSet& S, const GroundNum& x) {
  auto c = S.expand(L, x);
  if (!c) fail(ErrorKind::NotRepresentableOverS, x.str() + " is not in the span of S");
  for (const auto& v : *c)
    if (v < 0) fail(ErrorKind::NotRepresentableOverS, x.str() + " has a negative coefficient over S");
  return *c;
}

}  // namespace

Partition s_refinement(const FlipMap& f, const IndependentSet& S) {
  const Lattice& L = f.lattice();
  Partition P;
  for (const auto& p : f.map().pieces()) {
    IntVec c = expansion_over(L, S, p.len);
    GroundNum x = p.src;
    for (size_t s = 0; s < S.size(); ++s)
      for (Integer k = 0; k < c[s]; ++k) {
        P.push_back(x);
        x += S.elements[s];
      }
  }
  P.push_back(L.one());
  return P;
}

SW2Mod2 psi_at(const FlipMap& f, const IndependentSet& S) {
  // Inversions between distinct minimal intervals survive in the substitute; inside a
  // reversed interval every pair of its S-pieces is inverted, which mod 2 is
  // sum C(c_s,2) s^s + sum_{s<t} c_s c_t s^t.
  const Lattice& L = f.lattice();
  const auto& ps = f.map().pieces();
  std::vector<IntVec> sc;
  for (const auto& s : S.elements) sc.push_back(L.coordinates_of(s));
  std::vector<IntVec> c;
  for (const auto& p : ps) c.push_back(L.coordinates_of(p.len));
  SW2 acc(L);
  for (size_t j = 0; j < ps.size(); ++j) {
    for (size_t i = 0; i < j; ++i)
      if (ps[j].dst < ps[i].dst) add_wedge_coords(acc, c[i], c[j]);
    IntVec e = expansion_over(L, S, ps[j].len);
    if (!ps[j].flip) continue;
    for (size_t s = 0; s < S.size(); ++s) {
      if (e[s] == 0) continue;
      Integer pairs = e[s] * (e[s] - 1) / 2;
      if (pairs % 2 != 0) add_wedge_coords(acc, sc[s], sc[s]);
      for (size_t t = s + 1; t < S.size(); ++t)
        if ((e[s] * e[t]) % 2 != 0) add_wedge_coords(acc, sc[s], sc[t]);
    }
  }
  return mod2(acc);
}

IndependentSet common_s(const std::vector<FlipMap>& fs) {
  if (fs.empty()) fail(ErrorKind::OutOfRange, "no maps");
  const Lattice& L = fs[0].lattice();
  std::vector<GroundNum> targets{L.one()};
  for (int k = 0; k < L.rank(); ++k) {
    IntVec e(L.rank(), Integer(0));
    e[k] = 1;
    GroundNum b = L.element(e);
    GroundNum fr = b - GroundNum(L.field().from_rational(Rational(b.floor())));
    if (!fr.is_zero()) targets.push_back(fr);
  }
  for (const auto& f : fs) {
    require_same(L, f.lattice());
    for (const auto& a : f.lengths()) targets.push_back(a);
  }
  return independentize(L, sorted_unique(L, std::move(targets)));
}

PsiValue psi(const FlipMap& f) {
  IndependentSet S = common_s({f});
  SW2Mod2 v = psi_at(f, S);
  return {v, std::move(S)};
}

std::vector<SW2Mod2> psi_common(const std::vector<FlipMap>& fs) {
  IndependentSet S = common_s(fs);
  std::vector<SW2Mod2> out;
  for (const auto& f : fs) out.push_back(psi_at(f, S));
  return out;
}

namespace {
void require_dense(const Lattice& L) {
  if (!L.dense()) fail(ErrorKind::NotDense, "membership in the derived subgroup needs a dense lattice");
}
}  // namespace

bool in_derived_flip(const FlipMap& f) {
  require_dense(f.lattice());
  return eps_flip(f).is_zero() && psi(f).value.is_zero();
}

AbImage ab_image(const FlipMap& f) {
  require_dense(f.lattice());
  return {eps_flip(f), psi(f).value};
}

std::vector<AbImage> ab_images(const std::vector<FlipMap>& fs) {
  if (fs.empty()) return {};
  require_dense(fs[0].lattice());
  auto ps = psi_common(fs);
  std::vector<AbImage> out;
  for (size_t i = 0; i < fs.size(); ++i) out.push_back({eps_flip(fs[i]), ps[i]});
  return out;
}

Order order_flip(const FlipMap& f, long budget) {
  if (budget < 0) budget = budget_from_env(kDefaultFlipOrderBudget);
  if (f.orientation_preserving()) return order(try_unflip(f), budget);
  auto P = invariant_partition(f.map(), budget);
  if (P) return Order::finite(permutation_order(f.map(), *P));
  return Order::unknown(static_cast<unsigned long>(budget));
}

}  // namespace ietab
