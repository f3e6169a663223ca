#include <gtest/gtest.h>

#include <algorithm>

#include "ietab/error.hpp"
#include "ietab/iet.hpp"
#include "support.hpp"

using namespace ietab;
using namespace testsupport;

namespace {

GroundNum rat(const Lattice& L, long p, long q) { return L.field().from_rational(Rational(p, q)); }

// Permutation on n equal intervals: interval i goes to slot sigma[i].
IetMap from_permutation(const Lattice& L, const std::vector<int>& sigma) {
  const int n = static_cast<int>(sigma.size());
  std::vector<GroundNum> alpha(n, rat(L, 1, n));
  return IetMap::from_description(L, alpha, sigma);
}

int parity(const std::vector<int>& s) {
  int inv = 0;
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = i + 1; j < s.size(); ++j) inv += s[i] > s[j];
  return inv % 2;
}

// SAF straight from the description: sum_j (sum_{tau(i)<tau(j)} a_i - sum_{i<j} a_i) ^ a_j.
SW2 saf_formula(const Lattice& L, const std::vector<GroundNum>& a, const std::vector<int>& tau) {
  SW2 acc(L);
  for (size_t j = 0; j < a.size(); ++j) {
    GroundNum v = L.zero();
    for (size_t i = 0; i < a.size(); ++i) {
      if (tau[i] < tau[j]) v += a[i];
      if (i < j) v -= a[i];
    }
    acc += wedge(L, v, a[j]);
  }
  return acc;
}

// Smallest k <= cap with f^k = id, or 0.
unsigned long brute_order(const IetMap& f, unsigned long cap) {
  IetMap g = f;
  for (unsigned long k = 1; k <= cap; ++k) {
    if (g.is_identity()) return k;
    g = compose(f, g);
  }
  return 0;
}

// A random refinement of the minimal partition.
Partition refine(std::mt19937& rng, const IetMap& f, int extra) {
  Partition P = f.breakpoints();
  const Lattice& L = f.lattice();
  for (int k = 0; k < extra; ++k) P.push_back(random_between(rng, L, L.zero(), L.one()));
  return sorted_unique(L, P);
}

bool types_within(const std::vector<Factor>& fs, const Partition& P) {
  auto lens = lengths_of(P);
  auto has = [&](const GroundNum& x) { return std::find(lens.begin(), lens.end(), x) != lens.end(); };
  for (const auto& f : fs)
    if (f.kind != Factor::Kind::Rotation || !has(f.a) || !has(f.b)) return false;
  return true;
}

}  // namespace

TEST(Iet, ConstructorsAndCanonicalForm) {
  Lattice L = one_over(6);
  IetMap swap = IetMap::restricted_rotation(L, rat(L, 1, 2), rat(L, 1, 2), L.zero());
  EXPECT_TRUE(compose(swap, swap).is_identity());
  EXPECT_EQ(swap.apply(rat(L, 1, 4)), rat(L, 3, 4));
  EXPECT_TRUE(IetMap::from_description(L, {rat(L, 1, 3), rat(L, 2, 3)}, {0, 1}).is_identity());
  EXPECT_THROW(IetMap::transposition(L, rat(L, 1, 3), L.zero(), rat(L, 1, 6)), Error);
  EXPECT_THROW(IetMap::transposition(L, rat(L, 1, 2), L.zero(), rat(L, 2, 3)), Error);
  EXPECT_THROW(IetMap::restricted_rotation(L, L.zero(), rat(L, 1, 2), L.zero()), Error);
  Lattice Q4 = one_over(4);
  EXPECT_THROW(IetMap::restricted_rotation(L, rat(Q4, 1, 4), rat(L, 1, 2), L.zero()), Error);
}

TEST(Iet, TranspositionDescriptions) {
  Lattice L = z_sqrt2();
  GroundNum a = q2(L, -1, 1);
  // 1/2 is not in Z + sqrt2 Z; the second copy sits at 2 - sqrt2 and ends at 1.
  EXPECT_THROW(IetMap::transposition(L, a, L.zero(), rat(L, 1, 2)), Error);
  IetMap t = IetMap::transposition(L, a, L.zero(), q2(L, 2, -1));
  EXPECT_EQ(t.tau(), (std::vector<int>{2, 1, 0}));
  EXPECT_EQ(t.lengths()[1], q2(L, 3, -2));
  // Interior placement gives the (u, a, b, a, v) pattern with tau = (1 4 3 2 5).
  GroundNum s = q2(L, 3, -2);
  IetMap t5 = IetMap::transposition(L, s, s, q2(L, 2, -1));
  EXPECT_EQ(t5.size(), 5u);
  EXPECT_EQ(t5.tau(), (std::vector<int>{0, 3, 2, 1, 4}));
  EXPECT_EQ(signature(t5), wedge(L, s, s));
}

TEST(Iet, ComposeMatchesPointwise) {
  Lattice L = z_sqrt2();
  std::mt19937 rng(41);
  for (int it = 0; it < 50; ++it) {
    IetMap f = random_iet(rng, L, 5), g = random_iet(rng, L, 4), h = random_iet(rng, L, 3);
    IetMap fg = compose(f, g);
    for (int k = 0; k < 10; ++k) {
      GroundNum x = random_between(rng, L, L.zero() - L.one(), L.one());
      if (x.sign() < 0) x = -x;
      EXPECT_EQ(fg.apply(x), f.apply(g.apply(x)));
    }
    EXPECT_TRUE(compose(f, inverse(f)).is_identity());
    EXPECT_EQ(compose(compose(f, g), h), compose(f, compose(g, h)));
  }
}

TEST(Iet, SafExamples) {
  Lattice L = z_sqrt2();
  GroundNum a = q2(L, 2, -1), b = q2(L, -1, 1);
  SW2 s = saf(IetMap::restricted_rotation(L, a, b, L.zero()));
  EXPECT_EQ(s.upper(0, 1), -2);
  EXPECT_FALSE(s.diag(0));
  EXPECT_FALSE(s.diag(1));
  EXPECT_EQ(s, wedge(L, b, a) * Integer(2));
  IetMap t = IetMap::transposition(L, b, L.zero(), q2(L, 2, -1));
  EXPECT_TRUE(saf(t).is_zero());
  EXPECT_TRUE(saf(IetMap::identity(L)).is_zero());
}

TEST(Iet, SignatureExamples) {
  Lattice L = z_sqrt2();
  GroundNum a = q2(L, 2, -1), b = q2(L, -1, 1);
  EXPECT_EQ(signature(IetMap::restricted_rotation(L, a, b, L.zero())), wedge(L, a, b));
  IetMap t = IetMap::transposition(L, b, L.zero(), q2(L, 2, -1));
  EXPECT_EQ(signature(t), wedge(L, b, b));
  EXPECT_EQ(signature(t).str(), "e1∧e1 + e2∧e2 (torsion)");
  EXPECT_TRUE(in_ker_saf(t));
  EXPECT_FALSE(in_derived(t));
  EXPECT_TRUE(signature(IetMap::identity(L)).is_zero());
  // Type 2(sqrt2 - 1) cannot be transposed inside [0,1): two copies need more than 1.
  EXPECT_THROW(IetMap::transposition(L, b + b, L.zero(), b + b), Error);
  // A type in 2Z[sqrt2] that fits: 2(3 - 2 sqrt2).
  GroundNum c = q2(L, 6, -4);
  IetMap t2 = IetMap::transposition(L, c, L.zero(), c);
  EXPECT_TRUE(in_derived(t2));
}

TEST(Iet, TranspositionSignatureHasFiveRectangles) {
  Lattice L = z_sqrt2();
  GroundNum s = q2(L, 3, -2);
  IetMap t = IetMap::transposition(L, s, s, q2(L, 2, -1));
  RectangleSet E = inversion_rectangles(t);
  auto bp = t.breakpoints();
  auto I = [&](int k) { return Interval{bp[k], bp[k + 1]}; };
  RectangleSet expect(L, {Rectangle{I(1), I(2)}, Rectangle{I(1), I(3)}, Rectangle{I(2), I(3)}});
  EXPECT_EQ(E, expect);
}

TEST(IetProperty, ParityOracleRankOne) {
  Lattice L = one_over(6);
  SW2 ee = wedge(L, rat(L, 1, 6), rat(L, 1, 6));
  std::vector<int> s{0, 1, 2, 3};
  do {
    std::vector<int> full{s[0], s[1], s[2], s[3], 4, 5};
    SW2 expect = parity(s) ? ee : SW2(L);
    EXPECT_EQ(signature(from_permutation(L, full)), expect);
  } while (std::next_permutation(s.begin(), s.end()));
  std::mt19937 rng(42);
  for (int it = 0; it < 100; ++it) {
    auto p = random_permutation(rng, 6);
    EXPECT_EQ(signature(from_permutation(L, p)), parity(p) ? ee : SW2(L));
  }
}

TEST(IetProperty, SafMatchesFormulaOnEveryRefinement) {
  Lattice L = z_cbrt2();
  std::mt19937 rng(43);
  for (int it = 0; it < 60; ++it) {
    IetMap f = random_iet(rng, L, 5);
    EXPECT_EQ(saf(f), saf_formula(L, f.lengths(), f.tau()));
    Partition P = refine(rng, f, 3);
    std::vector<GroundNum> alpha;
    std::vector<int> tau;
    describe(f.map().split(P), alpha, tau);
    EXPECT_EQ(saf_over(f, P), saf(f));
    EXPECT_EQ(saf_formula(L, alpha, tau), saf(f));
    EXPECT_EQ(signature_over(f, P), signature(f));
  }
}

TEST(IetProperty, Homomorphisms) {
  for (const Lattice& L : {z_sqrt2(), z_cbrt2()}) {
    std::mt19937 rng(44);
    for (int it = 0; it < 100; ++it) {
      IetMap f = random_iet(rng, L, 4), g = random_iet(rng, L, 5);
      IetMap fg = compose(f, g);
      EXPECT_EQ(saf(fg), saf(f) + saf(g));
      EXPECT_EQ(signature(fg), signature(f) + signature(g));
      EXPECT_EQ(signature(f) * Integer(2), -saf(f));
      EXPECT_EQ(signature(compose(compose(g, f), inverse(g))), signature(f));
    }
  }
}

TEST(IetProperty, SignatureViaRectangles) {
  Lattice L = z_sqrt2();
  std::mt19937 rng(45);
  for (int it = 0; it < 60; ++it) {
    IetMap f = random_iet(rng, L, 5);
    EXPECT_EQ(project(measure_t2(inversion_rectangles(f))), signature(f));
  }
}

TEST(IetProperty, ClosedFormsForGenerators) {
  for (const Lattice& L : {z_sqrt2(), z_cbrt2()}) {
    std::mt19937 rng(46);
    for (int it = 0; it < 50; ++it) {
      auto P = random_partition(rng, L, 4);
      GroundNum a = P[2] - P[1], b = P[3] - P[2];
      EXPECT_EQ(signature(IetMap::restricted_rotation(L, a, b, P[1])), wedge(L, a, b));
      IetMap t = random_transposition(rng, L);
      GroundNum ta = t.lengths()[t.tau()[0] == 0 ? 1 : 0];
      // The type is the length of the first moved interval.
      for (size_t i = 0; i < t.size(); ++i)
        if (t.translations()[i].sign() > 0) ta = t.lengths()[i];
      EXPECT_EQ(signature(t), wedge(L, ta, ta));
    }
  }
}

TEST(Iet, Orders) {
  Lattice L = z_sqrt2();
  GroundNum a = q2(L, 2, -1), b = q2(L, -1, 1);
  EXPECT_EQ(order(IetMap::restricted_rotation(L, a, b, L.zero())), Order::infinite());
  EXPECT_EQ(order(IetMap::transposition(L, b, L.zero(), q2(L, 2, -1))), Order::finite(2));
  EXPECT_EQ(order(IetMap::identity(L)), Order::finite(1));
  EXPECT_EQ(Order::infinite().str(), "infinite");
  EXPECT_EQ(Order::unknown(256).str(), "unknown (budget 256)");
}

TEST(Iet, TwoTranspositionExamples) {
  for (const Lattice& L : {z_sqrt2(), one_over(14)}) {
    for (unsigned n = 1; n <= 12; ++n) {
      auto [f, g] = two_transposition_example(L, n);
      IetMap gf = compose(g, f);
      EXPECT_EQ(order(gf), Order::finite(n)) << n;
      EXPECT_EQ(brute_order(gf, 20), n);
      EXPECT_EQ(order(f), Order::finite(2));
      EXPECT_EQ(order(g), Order::finite(2));
    }
  }
  EXPECT_THROW(two_transposition_example(one_over(6), 9), Error);
}

TEST(IetProperty, TranspositionPairsHaveFiniteOrder) {
  Lattice L = z_sqrt2();
  std::mt19937 rng(47);
  for (int it = 0; it < 100; ++it) {
    IetMap f = random_transposition(rng, L), g = random_transposition(rng, L);
    IetMap gf = compose(g, f);
    Order o = order(gf);
    ASSERT_EQ(o.kind, Order::Kind::Finite);
    EXPECT_TRUE(power(gf, o.n).is_identity());
    if (o.n <= 60) EXPECT_EQ(brute_order(gf, 60), o.n);
  }
}

TEST(IetProperty, OrderMatchesBruteForce) {
  Lattice L = one_over(12);
  std::mt19937 rng(48);
  for (int it = 0; it < 50; ++it) {
    IetMap f = random_iet(rng, L, 6);
    Order o = order(f);
    ASSERT_EQ(o.kind, Order::Kind::Finite);
    EXPECT_EQ(brute_order(f, 100), o.n);
  }
}

TEST(Iet, DecomposeRotationsExamples) {
  Lattice L = z_sqrt2();
  EXPECT_TRUE(decompose_rotations(IetMap::identity(L)).empty());
  IetMap r = IetMap::restricted_rotation(L, q2(L, 3, -2), q2(L, -1, 1), q2(L, -1, 1));
  auto fs = decompose_rotations(r);
  ASSERT_EQ(fs.size(), 1u);
  EXPECT_EQ(fs[0].map(L), r);
  EXPECT_THROW(decompose_rotations(r, {L.zero(), L.one()}), Error);
}

TEST(IetProperty, DecomposeRotationsRecomposes) {
  for (const Lattice& L : {z_sqrt2(), z_cbrt2()}) {
    std::mt19937 rng(49);
    for (int it = 0; it < 50; ++it) {
      IetMap f = random_iet(rng, L, 2 + it % 7);
      Partition P = refine(rng, f, it % 3);
      auto fs = decompose_rotations(f, P);
      EXPECT_EQ(recompose(L, fs), f);
      EXPECT_TRUE(types_within(fs, P));
    }
  }
}

TEST(Iet, DecomposeSmall) {
  Lattice L = z_sqrt2();
  GroundNum quarter = rat(L, 1, 4);
  IetMap t = IetMap::transposition(L, q2(L, -1, 1), L.zero(), q2(L, 2, -1));
  auto fs = decompose_small(t, quarter);
  EXPECT_EQ(recompose(L, fs), t);
  for (const auto& f : fs) EXPECT_FALSE(quarter < f.support());
  EXPECT_TRUE(decompose_small(IetMap::identity(L), quarter).empty());
  IetMap r = IetMap::restricted_rotation(L, q2(L, 3, -2), q2(L, -7, 5), L.zero());
  EXPECT_EQ(decompose_small(r, quarter).size(), 1u);
  EXPECT_THROW(decompose_small(t, L.zero()), Error);
  Lattice Q = one_over(4);
  EXPECT_THROW(decompose_small(IetMap::identity(Q), rat(Q, 1, 4)), Error);
}

TEST(IetProperty, DecomposeSmallRecomposes) {
  Lattice L = z_sqrt2();
  std::mt19937 rng(50);
  for (int it = 0; it < 10; ++it) {
    IetMap f = random_iet(rng, L, 4);
    for (GroundNum eps : {rat(L, 1, 4), rat(L, 1, 10)}) {
      auto fs = decompose_small(f, eps);
      EXPECT_EQ(recompose(L, fs), f);
      for (const auto& x : fs) EXPECT_FALSE(eps < x.support());
    }
  }
}

TEST(Iet, Balance) {
  Lattice L = z_sqrt2();
  GroundNum a = q2(L, 3, -2), b = q2(L, -1, 1), x = q2(L, 2, -1);
  Factor r = Factor::rotation(a, b, L.zero()), s = Factor::rotation(b, a, x);
  EXPECT_TRUE(is_balanced({r, s}));
  EXPECT_FALSE(is_balanced({r}));
  EXPECT_TRUE(is_balanced({Factor::rotation(a, a, L.zero())}));
  EXPECT_THROW(decompose_balanced(IetMap::restricted_rotation(L, a, b, L.zero())), Error);
  // Consecutive transposition: a single (a,a) factor.
  auto fs = decompose_balanced(IetMap::transposition(L, a, L.zero(), a));
  ASSERT_EQ(fs.size(), 1u);
  EXPECT_EQ(fs[0].a, fs[0].b);
}

TEST(IetProperty, BalancedDecomposition) {
  for (const Lattice& L : {z_sqrt2(), z_cbrt2()}) {
    std::mt19937 rng(51);
    for (int it = 0; it < 25; ++it) {
      // Product of a balanced tuple: rotations of types (a,b) and (b,a) at random places.
      std::vector<Factor> tuple;
      for (int k = 0; k < 2; ++k) {
        auto P = random_partition(rng, L, 4), Q = random_partition(rng, L, 4);
        GroundNum a = min(P[2] - P[1], Q[2] - Q[1]), b = min(P[3] - P[2], Q[3] - Q[2]);
        tuple.push_back(Factor::rotation(a, b, P[1]));
        tuple.push_back(Factor::rotation(b, a, Q[1]));
      }
      std::shuffle(tuple.begin(), tuple.end(), rng);
      ASSERT_TRUE(is_balanced(tuple));
      IetMap f = recompose(L, tuple);
      EXPECT_TRUE(in_ker_saf(f));
      auto fs = decompose_balanced(f);
      EXPECT_TRUE(is_balanced(fs));
      EXPECT_EQ(recompose(L, fs), f);
    }
    for (int it = 0; it < 10; ++it) {
      IetMap f = random_rotation(rng, L);
      if (f.lengths().size() >= 2 && !saf(f).is_zero()) EXPECT_THROW(decompose_balanced(f), Error);
    }
  }
}
