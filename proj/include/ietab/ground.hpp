#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace ietab {

using Integer = mpz_class;
using Rational = mpq_class;

struct FieldSpec {
  std::vector<Integer> minpoly;  // constant term first, monic
  Rational lo;
  Rational hi;
};

class GroundNum;

// Handle to a real number field Q(theta). Cheap to copy; the underlying data is immutable
// apart from an internally synchronized enclosure cache.
class Field {
 public:
  struct Impl;

  static Field create(const FieldSpec& spec, bool cache_enclosures = true);
  static Field rationals();

  int degree() const;
  const FieldSpec& spec() const;
  bool caching() const;

  bool same(const Field& other) const;
  bool operator==(const Field& other) const { return same(other); }

  GroundNum zero() const;
  GroundNum one() const;
  GroundNum theta() const;
  GroundNum from_rational(const Rational& q) const;
  GroundNum from_coords(std::vector<Rational> coords) const;

  const Impl& impl() const { return *impl_; }

 private:
  explicit Field(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<Impl> impl_;
};

class GroundNum {
 public:
  GroundNum(Field field, std::vector<Rational> coords);

  const Field& field() const { return field_; }
  const std::vector<Rational>& coords() const { return coords_; }

  bool is_zero() const;
  bool is_rational() const;
  int sign() const;
  // Same sign, computed from a fresh enclosure bisected `steps` times per round.
  int sign_with_schedule(int steps) const;

  GroundNum operator-() const;
  GroundNum inv() const;
  GroundNum& operator+=(const GroundNum& o);
  GroundNum& operator-=(const GroundNum& o);
  GroundNum& operator*=(const GroundNum& o);
  GroundNum& operator*=(const Rational& q);

  // Rational enclosure [lo, hi] of the value with hi - lo <= width.
  std::pair<Rational, Rational> enclosure(const Rational& width) const;
  Integer floor() const;
  // Deterministic approximation: independent of the enclosure cache.
  double to_double() const;

  std::string str() const;

 private:
  Field field_;
  std::vector<Rational> coords_;
};

GroundNum operator+(GroundNum a, const GroundNum& b);
GroundNum operator-(GroundNum a, const GroundNum& b);
GroundNum operator*(GroundNum a, const GroundNum& b);
GroundNum operator*(GroundNum a, const Rational& q);
GroundNum operator*(const Rational& q, GroundNum a);
GroundNum operator/(const GroundNum& a, const GroundNum& b);

bool operator==(const GroundNum& a, const GroundNum& b);
inline bool operator!=(const GroundNum& a, const GroundNum& b) { return !(a == b); }
int compare(const GroundNum& a, const GroundNum& b);
inline bool operator<(const GroundNum& a, const GroundNum& b) { return compare(a, b) < 0; }
inline bool operator>(const GroundNum& a, const GroundNum& b) { return compare(a, b) > 0; }
inline bool operator<=(const GroundNum& a, const GroundNum& b) { return compare(a, b) <= 0; }
inline bool operator>=(const GroundNum& a, const GroundNum& b) { return compare(a, b) >= 0; }
const GroundNum& min(const GroundNum& a, const GroundNum& b);
const GroundNum& max(const GroundNum& a, const GroundNum& b);

// Strict total order on coordinate vectors, for use as a map key (not the real order).
struct CoordLess {
  bool operator()(const GroundNum& a, const GroundNum& b) const;
};

namespace poly {
// Dense polynomials over Q, constant term first, no trailing zeros (zero polynomial is empty).
using Poly = std::vector<Rational>;
void trim(Poly& p);
Poly derivative(const Poly& p);
Poly mul(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly gcd(const Poly& a, const Poly& b);
Rational eval(const Poly& p, const Rational& x);
// Number of distinct real roots in (lo, hi].
int sturm_count(const Poly& p, const Rational& lo, const Rational& hi);
// True if the monic integer polynomial has no nontrivial factorization over Q.
bool irreducible(const std::vector<Integer>& monic);
}  // namespace poly

}  // namespace ietab
