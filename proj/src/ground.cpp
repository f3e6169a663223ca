#include "ietab/ground.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>

#include "ietab/error.hpp"

namespace ietab {

namespace poly {

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly derivative(const Poly& p) {
  Poly d;
  for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<unsigned long>(i));
  trim(d);
  return d;
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

Poly sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), Rational(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.empty()) fail(ErrorKind::DivisionByZero, "polynomial division by zero");
  Poly r = a;
  trim(r);
  if (r.size() < b.size()) return {{}, r};
  Poly q(r.size() - b.size() + 1, Rational(0));
  const Rational& lead = b.back();
  for (size_t k = r.size(); k-- >= b.size();) {
    if (r[k] == 0) continue;
    Rational c = r[k] / lead;
    size_t shift = k - (b.size() - 1);
    q[shift] = c;
    for (size_t i = 0; i < b.size(); ++i) r[shift + i] -= c * b[i];
  }
  trim(q);
  trim(r);
  return {q, r};
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  trim(x);
  trim(y);
  while (!y.empty()) {
    Poly r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  if (!x.empty()) {
    Rational lead = x.back();
    for (auto& c : x) c /= lead;
  }
  return x;
}

Rational eval(const Poly& p, const Rational& x) {
  Rational r = 0;
  for (size_t i = p.size(); i-- > 0;) r = r * x + p[i];
  return r;
}

namespace {

int sign_changes(const std::vector<Poly>& seq, const Rational& x) {
  int changes = 0, last = 0;
  for (const auto& p : seq) {
    int s = sgn(eval(p, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

std::vector<Integer> divisors(Integer n) {
  if (n < 0) n = -n;
  std::vector<Integer> small, large;
  for (Integer d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

Integer eval_int(const std::vector<Integer>& p, const Integer& x) {
  Integer r = 0;
  for (size_t i = p.size(); i-- > 0;) r = r * x + p[i];
  return r;
}

}  // namespace

int sturm_count(const Poly& p, const Rational& lo, const Rational& hi) {
  std::vector<Poly> seq{p, derivative(p)};
  while (!seq.back().empty()) {
    Poly r = divmod(seq[seq.size() - 2], seq.back()).second;
    for (auto& c : r) c = -c;
    if (r.empty()) break;
    seq.push_back(r);
  }
  return sign_changes(seq, lo) - sign_changes(seq, hi);
}

bool irreducible(const std::vector<Integer>& p) {
  const int n = static_cast<int>(p.size()) - 1;
  if (n <= 1) return n == 1;
  if (p[0] == 0) return false;
  for (const auto& d : divisors(p[0])) {
    if (eval_int(p, d) == 0 || eval_int(p, -d) == 0) return false;
  }
  Poly pq(p.begin(), p.end());
  // Kronecker: a factor of degree k is determined by its values at k+1 integer points,
  // which must divide the values of p there.
  struct Point {
    Integer x;
    std::vector<Integer> divs;
  };
  std::vector<Point> pts;
  for (long x = -24; x <= 24; ++x) {
    Integer v = eval_int(p, Integer(x));
    pts.push_back({Integer(x), divisors(v)});
  }
  std::stable_sort(pts.begin(), pts.end(),
                   [](const Point& a, const Point& b) { return a.divs.size() < b.divs.size(); });
  for (int k = 2; k <= n / 2; ++k) {
    std::vector<Point> use(pts.begin(), pts.begin() + k + 1);
    std::vector<Poly> basis;
    for (int i = 0; i <= k; ++i) {
      Poly li{Rational(1)};
      for (int j = 0; j <= k; ++j) {
        if (j == i) continue;
        Rational den = Rational(use[i].x - use[j].x);
        li = mul(li, Poly{Rational(-use[j].x) / den, Rational(1) / den});
      }
      basis.push_back(li);
    }
    // Enumerate signed divisor choices; the first value is taken positive (g and -g are equivalent).
    std::vector<std::pair<size_t, int>> radix;
    for (int i = 0; i <= k; ++i) radix.push_back({use[i].divs.size(), i == 0 ? 1 : 2});
    std::vector<size_t> counter(2 * (k + 1), 0);
    while (true) {
      Poly g(k + 1, Rational(0));
      for (int i = 0; i <= k; ++i) {
        Integer v = use[i].divs[counter[2 * i]];
        if (counter[2 * i + 1]) v = -v;
        for (size_t c = 0; c < basis[i].size(); ++c) g[c] += basis[i][c] * Rational(v);
      }
      trim(g);
      if (static_cast<int>(g.size()) == k + 1 && abs(g.back()) == 1) {
        bool integral = std::all_of(g.begin(), g.end(),
                                    [](const Rational& c) { return c.get_den() == 1; });
        if (integral && divmod(pq, g).second.empty()) return false;
      }
      int pos = 0;
      for (; pos < 2 * (k + 1); ++pos) {
        size_t lim = (pos % 2 == 0) ? radix[pos / 2].first : static_cast<size_t>(radix[pos / 2].second);
        if (++counter[pos] < lim) break;
        counter[pos] = 0;
      }
      if (pos == 2 * (k + 1)) break;
    }
  }
  return true;
}

}  // namespace poly

struct Field::Impl {
  FieldSpec spec;
  poly::Poly p;
  int deg = 1;
  int sign_lo = 0;
  bool cache = true;
  mutable std::mutex mu;
  mutable Rational cached_lo, cached_hi;
  // Floating-point filter for sign(): theta to double with a relative error bound.
  bool fast = false;
  double theta = 0, theta_rel = 0;
};

namespace {

int qsgn(const Rational& q) { return sgn(q); }

struct Ival {
  Rational lo, hi;
};

Ival imul(const Ival& a, const Ival& b) {
  Rational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  Ival r{p1, p1};
  for (const Rational* q : {&p2, &p3, &p4}) {
    if (*q < r.lo) r.lo = *q;
    if (*q > r.hi) r.hi = *q;
  }
  return r;
}

Ival horner(const std::vector<Rational>& c, const Rational& lo, const Rational& hi) {
  const Ival x{lo, hi};
  Ival r{c.back(), c.back()};
  for (size_t i = c.size() - 1; i-- > 0;) {
    r = imul(r, x);
    r.lo += c[i];
    r.hi += c[i];
  }
  return r;
}

void bisect(const Field::Impl& f, Rational& lo, Rational& hi) {
  Rational mid = (lo + hi) / 2;
  int s = qsgn(poly::eval(f.p, mid));
  if (s == 0) {
    lo = hi = mid;
  } else if (s == f.sign_lo) {
    lo = mid;
  } else {
    hi = mid;
  }
}

void check_same(const Field& a, const Field& b) {
  if (!a.same(b)) fail(ErrorKind::MixedContexts, "ground numbers from different fields");
}

}  // namespace

Field Field::create(const FieldSpec& spec, bool cache_enclosures) {
  if (spec.minpoly.size() < 2) fail(ErrorKind::BadPolynomial, "degree must be at least 1");
  if (spec.minpoly.back() != 1) fail(ErrorKind::BadPolynomial, "polynomial is not monic");
  auto impl = std::make_shared<Impl>();
  impl->spec = spec;
  impl->p.assign(spec.minpoly.begin(), spec.minpoly.end());
  impl->deg = static_cast<int>(spec.minpoly.size()) - 1;
  impl->cache = cache_enclosures;
  poly::Poly g = poly::gcd(impl->p, poly::derivative(impl->p));
  if (g.size() > 1) fail(ErrorKind::BadPolynomial, "polynomial is not square-free");
  if (!poly::irreducible(spec.minpoly)) fail(ErrorKind::BadPolynomial, "polynomial is reducible");
  if (!(spec.lo < spec.hi)) fail(ErrorKind::BadInterval, "interval must satisfy lo < hi");
  int roots = poly::sturm_count(impl->p, spec.lo, spec.hi);
  if (qsgn(poly::eval(impl->p, spec.lo)) == 0) ++roots;
  if (roots != 1) fail(ErrorKind::BadInterval, "interval must contain exactly one root");
  impl->sign_lo = qsgn(poly::eval(impl->p, spec.lo));
  impl->cached_lo = spec.lo;
  impl->cached_hi = spec.hi;
  {
    Rational lo = spec.lo, hi = spec.hi;
    for (int i = 0; i < 400 && hi - lo > Rational(1, 1) / Rational(mpz_class(1) << 80); ++i) bisect(*impl, lo, hi);
    Rational mid = (lo + hi) / 2;
    double t = mid.get_d();
    if (std::isfinite(t) && t != 0) {
      Rational err = abs(mid - Rational(t)) + (hi - lo);
      impl->theta = t;
      impl->theta_rel = 2 * (err.get_d() / std::fabs(t)) + std::ldexp(1.0, -50);
      impl->fast = impl->theta_rel < 1e-12;
    }
  }
  return Field(impl);
}

Field Field::rationals() { return create(FieldSpec{{0, 1}, Rational(-1), Rational(1)}); }

int Field::degree() const { return impl_->deg; }
const FieldSpec& Field::spec() const { return impl_->spec; }
bool Field::caching() const { return impl_->cache; }

bool Field::same(const Field& other) const {
  if (impl_ == other.impl_) return true;
  return impl_->spec.minpoly == other.impl_->spec.minpoly && impl_->spec.lo == other.impl_->spec.lo &&
         impl_->spec.hi == other.impl_->spec.hi;
}

GroundNum Field::zero() const { return GroundNum(*this, std::vector<Rational>(degree(), Rational(0))); }
GroundNum Field::one() const { return from_rational(1); }

GroundNum Field::theta() const {
  if (degree() == 1) return from_rational(-Rational(impl_->spec.minpoly[0]));
  std::vector<Rational> c(degree(), Rational(0));
  c[1] = 1;
  return GroundNum(*this, std::move(c));
}

GroundNum Field::from_rational(const Rational& q) const {
  std::vector<Rational> c(degree(), Rational(0));
  c[0] = q;
  return GroundNum(*this, std::move(c));
}

GroundNum Field::from_coords(std::vector<Rational> coords) const {
  if (static_cast<int>(coords.size()) != degree())
    fail(ErrorKind::MixedContexts, "coordinate vector length does not match field degree");
  return GroundNum(*this, std::move(coords));
}

GroundNum::GroundNum(Field field, std::vector<Rational> coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
  for (auto& c : coords_) c.canonicalize();
}

bool GroundNum::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return c == 0; });
}

bool GroundNum::is_rational() const {
  return std::all_of(coords_.begin() + 1, coords_.end(), [](const Rational& c) { return c == 0; });
}

int GroundNum::sign() const {
  if (is_zero()) return 0;
  if (is_rational()) return qsgn(coords_[0]);
  const auto& f = field_.impl();
  if (f.fast) {
    // Sum of c_i theta^i in doubles with a bound on the accumulated error; only a clear
    // margin is trusted, everything else goes to the exact enclosure below.
    double v = 0, bound = 0, pw = 1;
    bool ok = true;
    for (size_t i = 0; i < coords_.size() && ok; ++i) {
      if (i) pw *= f.theta;
      if (coords_[i] == 0) continue;
      double c = coords_[i].get_d();
      if (!std::isfinite(c) || c == 0 || std::fabs(c) < 1e-280 || std::fabs(c) > 1e280) ok = false;
      double term = c * pw;
      v += term;
      bound += std::fabs(term) * (static_cast<double>(i) * f.theta_rel + (2.0 * static_cast<double>(i) + 8) * std::ldexp(1.0, -52));
    }
    if (ok && std::isfinite(v) && std::isfinite(bound) && std::fabs(v) > 4 * bound + 1e-290) return v > 0 ? 1 : -1;
  }
  Rational lo, hi;
  if (f.cache) {
    std::lock_guard<std::mutex> lk(f.mu);
    lo = f.cached_lo;
    hi = f.cached_hi;
  } else {
    lo = f.spec.lo;
    hi = f.spec.hi;
  }
  bool refined = false;
  int result = 0;
  while (true) {
    Ival v = horner(coords_, lo, hi);
    if (v.lo > 0) { result = 1; break; }
    if (v.hi < 0) { result = -1; break; }
    bisect(f, lo, hi);
    refined = true;
  }
  if (refined && f.cache) {
    std::lock_guard<std::mutex> lk(f.mu);
    if (hi - lo < f.cached_hi - f.cached_lo) {
      f.cached_lo = lo;
      f.cached_hi = hi;
    }
  }
  return result;
}

int GroundNum::sign_with_schedule(int steps) const {
  if (is_zero()) return 0;
  if (is_rational()) return qsgn(coords_[0]);
  const auto& f = field_.impl();
  Rational lo = f.spec.lo, hi = f.spec.hi;
  while (true) {
    Ival v = horner(coords_, lo, hi);
    if (v.lo > 0) return 1;
    if (v.hi < 0) return -1;
    for (int i = 0; i < std::max(1, steps); ++i) bisect(f, lo, hi);
  }
}

GroundNum GroundNum::operator-() const {
  GroundNum r = *this;
  for (auto& c : r.coords_) c = -c;
  return r;
}

GroundNum& GroundNum::operator+=(const GroundNum& o) {
  check_same(field_, o.field_);
  for (size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

GroundNum& GroundNum::operator-=(const GroundNum& o) {
  check_same(field_, o.field_);
  for (size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

GroundNum& GroundNum::operator*=(const Rational& q) {
  for (auto& c : coords_) c *= q;
  return *this;
}

GroundNum& GroundNum::operator*=(const GroundNum& o) {
  check_same(field_, o.field_);
  const int n = field_.degree();
  if (n == 1) {
    coords_[0] *= o.coords_[0];
    return *this;
  }
  std::vector<Rational> r(2 * n - 1, Rational(0));
  for (int i = 0; i < n; ++i) {
    if (coords_[i] == 0) continue;
    for (int j = 0; j < n; ++j) r[i + j] += coords_[i] * o.coords_[j];
  }
  const auto& p = field_.impl().p;
  for (int k = 2 * n - 2; k >= n; --k) {
    if (r[k] == 0) continue;
    Rational c = r[k];
    for (int i = 0; i <= n; ++i) r[k - n + i] -= c * p[i];
  }
  r.resize(n);
  coords_ = std::move(r);
  return *this;
}

GroundNum GroundNum::inv() const {
  if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero");
  const int n = field_.degree();
  if (n == 1) return field_.from_rational(1 / coords_[0]);
  // Extended Euclid: find s with s*a = 1 mod p.
  poly::Poly a = coords_;
  poly::trim(a);
  poly::Poly r0 = field_.impl().p, r1 = a;
  poly::Poly s0, s1{Rational(1)};
  while (r1.size() > 1) {
    auto [q, r] = poly::divmod(r0, r1);
    poly::Poly s = poly::sub(s0, poly::mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r1.empty()) fail(ErrorKind::Internal, "non-invertible element; minimal polynomial reducible");
  Rational c = r1[0];
  std::vector<Rational> out(n, Rational(0));
  auto reduced = poly::divmod(s1, field_.impl().p).second;
  for (size_t i = 0; i < reduced.size(); ++i) out[i] = reduced[i] / c;
  return GroundNum(field_, std::move(out));
}

std::pair<Rational, Rational> GroundNum::enclosure(const Rational& width) const {
  if (is_rational()) return {coords_[0], coords_[0]};
  const auto& f = field_.impl();
  Rational lo = f.spec.lo, hi = f.spec.hi;
  while (true) {
    Ival v = horner(coords_, lo, hi);
    if (v.hi - v.lo <= width) return {v.lo, v.hi};
    bisect(f, lo, hi);
  }
}

Integer GroundNum::floor() const {
  auto fl = [](const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
  };
  if (is_rational()) return fl(coords_[0]);
  Rational w(1, 2);
  while (true) {
    auto [lo, hi] = enclosure(w);
    Integer a = fl(lo), b = fl(hi);
    if (a == b) return a;
    w /= 16;
  }
}

double GroundNum::to_double() const {
  auto [lo, hi] = enclosure(Rational(1, Integer(1) << 60));
  Rational mid = (lo + hi) / 2;
  return mid.get_d();
}

std::string GroundNum::str() const {
  auto one = [](const Rational& q) { return q.get_str(); };
  if (coords_.size() == 1) return one(coords_[0]);
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < coords_.size(); ++i) {
    if (i) os << ", ";
    os << one(coords_[i]);
  }
  os << ')';
  return os.str();
}

GroundNum operator+(GroundNum a, const GroundNum& b) { return a += b; }
GroundNum operator-(GroundNum a, const GroundNum& b) { return a -= b; }
GroundNum operator*(GroundNum a, const GroundNum& b) { return a *= b; }
GroundNum operator*(GroundNum a, const Rational& q) { return a *= q; }
GroundNum operator*(const Rational& q, GroundNum a) { return a *= q; }
GroundNum operator/(const GroundNum& a, const GroundNum& b) { return a * b.inv(); }

bool operator==(const GroundNum& a, const GroundNum& b) {
  check_same(a.field(), b.field());
  return a.coords() == b.coords();
}

int compare(const GroundNum& a, const GroundNum& b) { return (a - b).sign(); }

const GroundNum& min(const GroundNum& a, const GroundNum& b) { return b < a ? b : a; }
const GroundNum& max(const GroundNum& a, const GroundNum& b) { return a < b ? b : a; }

bool CoordLess::operator()(const GroundNum& a, const GroundNum& b) const {
  const auto& x = a.coords();
  const auto& y = b.coords();
  if (x.size() != y.size()) return x.size() < y.size();
  for (size_t i = 0; i < x.size(); ++i) {
    int c = cmp(x[i], y[i]);
    if (c) return c < 0;
  }
  return false;
}

}  // namespace ietab
