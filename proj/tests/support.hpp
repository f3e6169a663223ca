#pragma once

#include <random>
#include <vector>

#include "ietab/ground.hpp"
#include "ietab/flips.hpp"
#include "ietab/lattice.hpp"
#include <algorithm>

namespace testsupport {

using namespace ietab;

inline Field sqrt2_field() { return Field::create({{-2, 0, 1}, Rational(1), Rational(2)}); }
inline Field cbrt2_field() { return Field::create({{-2, 0, 0, 1}, Rational(1), Rational(2)}); }

// Z + sqrt2 Z with basis (1, sqrt2).
inline Lattice z_sqrt2() {
  Field f = sqrt2_field();
  return Lattice::from_generators(f, {f.theta()});
}

// Z + 2^(1/3) Z + 2^(2/3) Z.
inline Lattice z_cbrt2() {
  Field f = cbrt2_field();
  return Lattice::from_generators(f, {f.theta(), f.theta() * f.theta()});
}

// (1/n) Z inside Q.
inline Lattice one_over(long n) {
  Field q = Field::rationals();
  return Lattice::from_generators(q, {q.from_rational(Rational(1, n))});
}

inline GroundNum num(const Lattice& L, std::vector<long> coords) {
  IntVec c;
  for (long v : coords) c.push_back(v);
  return L.element(c);
}

inline GroundNum q2(const Lattice& L, long a, long b) {
  return L.field().from_coords({Rational(a), Rational(b)});
}

// Random lattice element with coordinates in [-span, span].
inline GroundNum random_element(std::mt19937& rng, const Lattice& L, int span) {
  std::uniform_int_distribution<int> d(-span, span);
  IntVec c;
  for (int i = 0; i < L.rank(); ++i) c.push_back(d(rng));
  return L.element(c);
}

// Random element of (lo, hi) in the lattice; small coordinates when possible, otherwise
// lo plus a random multiple of a small positive element (lo must then lie in the lattice).
inline GroundNum random_between(std::mt19937& rng, const Lattice& L, const GroundNum& lo, const GroundNum& hi,
                                int span = 6) {
  for (int tries = 0; tries < 300; ++tries) {
    GroundNum x = random_element(rng, L, span);
    if (lo < x && x < hi) return x;
    if (tries % 100 == 99) ++span;
  }
  if (L.dense()) {
    GroundNum w = small_positive(L, (hi - lo) * Rational(1, 3));
    std::uniform_int_distribution<int> m(1, 2);
    return lo + w * Rational(m(rng));
  }
  GroundNum step = L.element(IntVec{Integer(1)});
  if (step.sign() < 0) step = -step;
  GroundNum x = lo + step;
  if (x < hi) return x;
  throw std::runtime_error("random_between: no element found");
}

// n - 1 distinct random lattice points of (0,1), with 0 and 1 added.
inline Partition random_partition(std::mt19937& rng, const Lattice& L, int n, int span = 6) {
  std::vector<GroundNum> pts;
  while (static_cast<int>(pts.size()) < n - 1) {
    pts.push_back(random_between(rng, L, L.zero(), L.one(), span));
    pts = sorted_unique(L, pts);
  }
  pts.insert(pts.begin(), L.zero());
  pts.push_back(L.one());
  return pts;
}

inline std::vector<GroundNum> lengths_of(const Partition& P) {
  std::vector<GroundNum> out;
  for (size_t k = 0; k + 1 < P.size(); ++k) out.push_back(P[k + 1] - P[k]);
  return out;
}

inline std::vector<int> random_permutation(std::mt19937& rng, int n) {
  std::vector<int> t(n);
  for (int i = 0; i < n; ++i) t[i] = i;
  std::shuffle(t.begin(), t.end(), rng);
  return t;
}

inline IetMap random_iet(std::mt19937& rng, const Lattice& L, int n, int span = 6) {
  return IetMap::from_description(L, lengths_of(random_partition(rng, L, n, span)), random_permutation(rng, n));
}

inline FlipMap random_flip(std::mt19937& rng, const Lattice& L, int n, int span = 6) {
  std::vector<bool> flips;
  std::bernoulli_distribution coin(0.5);
  for (int i = 0; i < n; ++i) flips.push_back(coin(rng));
  return FlipMap::from_description(L, lengths_of(random_partition(rng, L, n, span)), random_permutation(rng, n), flips);
}

// Random restricted rotation with support inside [0,1).
inline IetMap random_rotation(std::mt19937& rng, const Lattice& L) {
  auto P = random_partition(rng, L, 4);
  return IetMap::restricted_rotation(L, P[2] - P[1], P[3] - P[2], P[1]);
}

// Random transposition: two disjoint intervals of equal length.
inline IetMap random_transposition(std::mt19937& rng, const Lattice& L) {
  auto P = random_partition(rng, L, 4);
  GroundNum a = min(P[2] - P[1], P[4] - P[3]);
  return IetMap::transposition(L, a, P[1], P[3]);
}

}  // namespace testsupport
