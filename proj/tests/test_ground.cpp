#include <gtest/gtest.h>

#include <random>

#include "ietab/error.hpp"
#include "ietab/ground.hpp"

using namespace ietab;

namespace {

Field sqrt2() { return Field::create({{-2, 0, 1}, Rational(1), Rational(2)}); }
Field cbrt2() { return Field::create({{-2, 0, 0, 1}, Rational(1), Rational(2)}); }

GroundNum q2(const Field& f, Rational a, Rational b) { return f.from_coords({a, b}); }

// Sign of a + b*sqrt(2) by comparing squares, no enclosures involved.
int sqrt2_sign_oracle(const Rational& a, const Rational& b) {
  int sa = sgn(a), sb = sgn(b);
  if (sa == 0) return sb;
  if (sb == 0) return sa;
  if (sa == sb) return sa;
  Rational lhs = a * a, rhs = 2 * b * b;
  return lhs > rhs ? sa : sb;
}

Rational rand_q(std::mt19937& rng, int span = 20) {
  std::uniform_int_distribution<int> num(-span, span), den(1, 9);
  return Rational(num(rng), den(rng));
}

}  // namespace

TEST(Field, RationalFieldFromLinearPolynomial) {
  Field q = Field::create({{0, 1}, Rational(-1), Rational(1)});
  EXPECT_EQ(q.degree(), 1);
  EXPECT_EQ((q.from_rational(Rational(1, 2)) * q.from_rational(4)).coords()[0], 2);
}

TEST(Field, RejectsBadPolynomials) {
  auto kind = [](FieldSpec s) {
    try {
      Field::create(s);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Internal;
  };
  EXPECT_EQ(kind({{-4, 0, 1}, 1, 3}), ErrorKind::BadPolynomial);
  EXPECT_EQ(kind({{-2, 0, 2}, 1, 2}), ErrorKind::BadPolynomial);
  EXPECT_EQ(kind({{1, -2, 1}, 0, 2}), ErrorKind::BadPolynomial);
  // (x^2 - 2)(x^2 - 3): square-free, no rational roots, reducible.
  EXPECT_EQ(kind({{6, 0, -5, 0, 1}, 1, Rational(3, 2)}), ErrorKind::BadPolynomial);
  EXPECT_EQ(kind({{-2, 0, 1}, 2, 3}), ErrorKind::BadInterval);
  EXPECT_EQ(kind({{-2, 0, 1}, -2, 2}), ErrorKind::BadInterval);
}

TEST(Field, AcceptsIrreducibleQuartic) {
  // x^4 - 10x^2 + 1, minimal polynomial of sqrt2 + sqrt3.
  Field f = Field::create({{1, 0, -10, 0, 1}, 3, 4});
  EXPECT_EQ(f.degree(), 4);
}

TEST(GroundNum, DefiningRelation) {
  Field f = sqrt2();
  GroundNum t = f.theta();
  EXPECT_EQ(t * t, f.from_rational(2));
  EXPECT_EQ(q2(f, 2, -1) + q2(f, -1, 1), f.one());
}

TEST(GroundNum, InverseOfSqrt2) {
  Field f = sqrt2();
  GroundNum i = f.theta().inv();
  EXPECT_EQ(i.coords()[0], 0);
  EXPECT_EQ(i.coords()[1], Rational(1, 2));
  EXPECT_EQ(i * f.theta(), f.one());
  EXPECT_THROW(f.zero().inv(), Error);
}

TEST(GroundNum, SignExamples) {
  Field f = sqrt2();
  EXPECT_EQ(f.zero().sign(), 0);
  EXPECT_EQ(q2(f, Rational(3, 2), -1).sign(), 1);
  EXPECT_EQ(q2(f, 3, -2).sign(), 1);
  EXPECT_EQ(q2(f, -99, 70).sign(), -1);  // 70*sqrt2 = 98.99495...
  EXPECT_EQ(q2(f, 99, -70).sign(), 1);
}

TEST(GroundNum, FloorAndDouble) {
  Field f = sqrt2();
  EXPECT_EQ(f.theta().floor(), 1);
  EXPECT_EQ((-f.theta()).floor(), -2);
  EXPECT_EQ(f.from_rational(Rational(-7, 2)).floor(), -4);
  EXPECT_NEAR(f.theta().to_double(), 1.41421356237, 1e-10);
}

TEST(GroundNumProperty, FieldAxiomsQuadratic) {
  Field f = sqrt2();
  std::mt19937 rng(11);
  for (int it = 0; it < 300; ++it) {
    GroundNum a = q2(f, rand_q(rng), rand_q(rng));
    GroundNum b = q2(f, rand_q(rng), rand_q(rng));
    GroundNum c = q2(f, rand_q(rng), rand_q(rng));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    if (!a.is_zero()) EXPECT_EQ(a * a.inv(), f.one());
  }
}

TEST(GroundNumProperty, FieldAxiomsCubic) {
  Field f = cbrt2();
  std::mt19937 rng(12);
  for (int it = 0; it < 200; ++it) {
    auto r = [&] { return f.from_coords({rand_q(rng), rand_q(rng), rand_q(rng)}); };
    GroundNum a = r(), b = r(), c = r();
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    if (!a.is_zero()) EXPECT_EQ(a * a.inv(), f.one());
  }
}

TEST(GroundNumProperty, SignMatchesSquaresOracle) {
  Field f = sqrt2();
  std::mt19937 rng(13);
  for (int it = 0; it < 500; ++it) {
    Rational a = rand_q(rng, 200), b = rand_q(rng, 140);
    EXPECT_EQ(q2(f, a, b).sign(), sqrt2_sign_oracle(a, b)) << a << " " << b;
  }
}

TEST(GroundNumProperty, SignConsistency) {
  Field f = cbrt2();
  std::mt19937 rng(14);
  for (int it = 0; it < 200; ++it) {
    auto r = [&] { return f.from_coords({rand_q(rng), rand_q(rng), rand_q(rng)}); };
    GroundNum a = r(), b = r();
    EXPECT_EQ((a - b).sign(), -(b - a).sign());
    EXPECT_EQ((a * b).sign(), a.sign() * b.sign());
  }
}

TEST(GroundNumProperty, RefinementScheduleDoesNotChangeSign) {
  Field cached = sqrt2();
  Field plain = Field::create({{-2, 0, 1}, Rational(1), Rational(2)}, false);
  std::mt19937 rng(15);
  for (int it = 0; it < 200; ++it) {
    Rational a = rand_q(rng, 500), b = rand_q(rng, 350);
    GroundNum x = q2(cached, a, b);
    GroundNum y = q2(plain, a, b);
    int s = x.sign();
    EXPECT_EQ(s, y.sign());
    EXPECT_EQ(s, x.sign_with_schedule(1));
    EXPECT_EQ(s, x.sign_with_schedule(7));
  }
}

TEST(Poly, SturmCounts) {
  poly::Poly p{Rational(-2), Rational(0), Rational(1)};
  EXPECT_EQ(poly::sturm_count(p, -2, 2), 2);
  EXPECT_EQ(poly::sturm_count(p, 0, 2), 1);
  EXPECT_EQ(poly::sturm_count(p, 2, 3), 0);
}
