#include "ietab/lattice.hpp"

#include <algorithm>
#include <numeric>

#include "ietab/error.hpp"

namespace ietab {

namespace {

using QVec = std::vector<Rational>;
using QMat = std::vector<QVec>;

// Reduced row echelon form in place; returns pivot columns.
std::vector<size_t> rref(QMat& m) {
  std::vector<size_t> pivots;
  if (m.empty()) return pivots;
  const size_t cols = m[0].size();
  size_t row = 0;
  for (size_t c = 0; c < cols && row < m.size(); ++c) {
    size_t p = row;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    Rational inv = 1 / m[row][c];
    for (auto& v : m[row]) v *= inv;
    for (size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][c] == 0) continue;
      Rational f = m[r][c];
      for (size_t k = 0; k < cols; ++k) m[r][k] -= f * m[row][k];
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

QMat invert(QMat a) {
  const size_t n = a.size();
  for (size_t i = 0; i < n; ++i) {
    a[i].resize(2 * n, Rational(0));
    a[i][n + i] = 1;
  }
  auto piv = rref(a);
  if (piv.size() < n || piv[n - 1] >= n) fail(ErrorKind::Internal, "singular matrix");
  QMat out(n);
  for (size_t i = 0; i < n; ++i) out[i].assign(a[i].begin() + n, a[i].end());
  return out;
}

Integer common_denominator(const std::vector<GroundNum>& xs) {
  Integer d = 1;
  for (const auto& x : xs)
    for (const auto& c : x.coords()) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), c.get_den_mpz_t());
  return d;
}

}  // namespace

IntMat hermite_normal_form(IntMat a) {
  if (a.empty()) return a;
  const size_t cols = a[0].size();
  size_t row = 0;
  for (size_t c = 0; c < cols && row < a.size(); ++c) {
    // Euclid down the column until a single nonzero entry remains at `row`.
    while (true) {
      size_t best = a.size();
      for (size_t r = row; r < a.size(); ++r) {
        if (a[r][c] == 0) continue;
        if (best == a.size() || abs(a[r][c]) < abs(a[best][c])) best = r;
      }
      if (best == a.size()) break;
      std::swap(a[row], a[best]);
      bool done = true;
      for (size_t r = row + 1; r < a.size(); ++r) {
        if (a[r][c] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[r][c].get_mpz_t(), a[row][c].get_mpz_t());
        for (size_t k = c; k < cols; ++k) a[r][k] -= q * a[row][k];
        if (a[r][c] != 0) done = false;
      }
      if (done) break;
    }
    if (row >= a.size() || a[row][c] == 0) continue;
    if (a[row][c] < 0)
      for (auto& v : a[row]) v = -v;
    for (size_t r = 0; r < row; ++r) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), a[r][c].get_mpz_t(), a[row][c].get_mpz_t());
      if (q != 0)
        for (size_t k = c; k < cols; ++k) a[r][k] -= q * a[row][k];
    }
    ++row;
  }
  a.resize(row);
  return a;
}

Integer determinant(const IntMat& m) {
  const size_t n = m.size();
  if (n == 0) return 1;
  IntMat a = m;
  Integer prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

int rank_over_q(const IntMat& rows) {
  QMat m;
  for (const auto& r : rows) m.emplace_back(r.begin(), r.end());
  return static_cast<int>(rref(m).size());
}

struct Lattice::Impl {
  Field field;
  std::vector<GroundNum> basis;
  std::vector<size_t> pivots;  // columns of the power basis where the basis matrix is invertible
  QMat pivot_inverse;
};

Lattice Lattice::with_basis(const Field& field, const std::vector<GroundNum>& basis) {
  if (basis.empty()) fail(ErrorKind::NotInLattice, "empty basis");
  QMat b;
  for (const auto& e : basis) {
    if (!e.field().same(field)) fail(ErrorKind::MixedContexts, "basis element from another field");
    b.push_back(e.coords());
  }
  QMat r = b;
  auto piv = rref(r);
  if (piv.size() != basis.size()) fail(ErrorKind::NotInLattice, "basis is not independent");
  QMat sub(basis.size());
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t c : piv) sub[i].push_back(b[i][c]);
  auto impl = std::make_shared<Impl>(Impl{field, basis, piv, invert(sub)});
  Lattice L(impl);
  if (!L.contains(field.one())) fail(ErrorKind::NotInLattice, "1 is not in the span of the basis");
  return L;
}

Lattice Lattice::from_generators(const Field& field, const std::vector<GroundNum>& gens) {
  std::vector<GroundNum> all = gens;
  all.push_back(field.one());
  Integer den = common_denominator(all);
  IntMat rows;
  for (const auto& g : all) {
    if (!g.field().same(field)) fail(ErrorKind::MixedContexts, "generator from another field");
    IntVec row;
    for (const auto& c : g.coords()) {
      Rational v = c * den;
      row.push_back(v.get_num());
    }
    rows.push_back(row);
  }
  IntMat h = hermite_normal_form(rows);
  std::vector<GroundNum> basis;
  for (const auto& row : h) {
    std::vector<Rational> c;
    for (const auto& v : row) c.push_back(Rational(v, den));
    basis.push_back(field.from_coords(std::move(c)));
  }
  return with_basis(field, basis);
}

const Field& Lattice::field() const { return impl_->field; }
int Lattice::rank() const { return static_cast<int>(impl_->basis.size()); }
const std::vector<GroundNum>& Lattice::basis() const { return impl_->basis; }
bool Lattice::dense() const { return rank() >= 2; }

bool Lattice::same(const Lattice& other) const {
  if (impl_ == other.impl_) return true;
  if (!field().same(other.field()) || rank() != other.rank()) return false;
  for (int i = 0; i < rank(); ++i)
    if (basis()[i].coords() != other.basis()[i].coords()) return false;
  return true;
}

void require_same(const Lattice& a, const Lattice& b) {
  if (!a.same(b)) fail(ErrorKind::MixedContexts, "values over different lattices");
}

std::optional<IntVec> Lattice::try_coordinates(const GroundNum& x) const {
  if (!x.field().same(field())) fail(ErrorKind::MixedContexts, "element from another field");
  const size_t d = basis().size();
  QVec c(d, Rational(0));
  for (size_t j = 0; j < d; ++j) {
    const Rational& xj = x.coords()[impl_->pivots[j]];
    if (xj == 0) continue;
    for (size_t i = 0; i < d; ++i) c[i] += xj * impl_->pivot_inverse[j][i];
  }
  IntVec out;
  for (const auto& v : c) {
    if (v.get_den() != 1) return std::nullopt;
    out.push_back(v.get_num());
  }
  if (element(out).coords() != x.coords()) return std::nullopt;
  return out;
}

IntVec Lattice::coordinates_of(const GroundNum& x) const {
  auto c = try_coordinates(x);
  if (!c) fail(ErrorKind::NotInLattice, x.str() + " is not in the lattice");
  return *c;
}

GroundNum Lattice::element(const IntVec& coords) const {
  GroundNum r = field().zero();
  for (size_t i = 0; i < coords.size(); ++i)
    if (coords[i] != 0) r += basis()[i] * Rational(coords[i]);
  return r;
}

bool Lattice::divisible_by(const GroundNum& x, long k) const {
  if (k <= 0) fail(ErrorKind::OutOfRange, "divisor must be positive");
  for (const auto& c : coordinates_of(x))
    if (c % k != 0) return false;
  return true;
}

Lattice Lattice::rebased(const IntMat& U) const {
  const size_t d = basis().size();
  if (U.size() != d) fail(ErrorKind::NotUnimodular, "matrix size does not match rank");
  for (const auto& row : U)
    if (row.size() != d) fail(ErrorKind::NotUnimodular, "matrix is not square");
  Integer det = determinant(U);
  if (det != 1 && det != -1) fail(ErrorKind::NotUnimodular, "determinant is " + det.get_str());
  QMat u;
  for (const auto& row : U) u.emplace_back(row.begin(), row.end());
  QMat ui = invert(u);
  std::vector<GroundNum> nb;
  for (size_t j = 0; j < d; ++j) {
    GroundNum e = field().zero();
    for (size_t i = 0; i < d; ++i)
      if (ui[i][j] != 0) e += basis()[i] * ui[i][j];
    nb.push_back(e);
  }
  return with_basis(field(), nb);
}

GroundNum small_positive(const Lattice& L, const GroundNum& bound) {
  if (!L.dense()) fail(ErrorKind::NotDense, "lattice of rank 1 is not dense");
  if (bound.sign() <= 0) fail(ErrorKind::OutOfRange, "bound must be positive");
  const GroundNum* irr = nullptr;
  for (const auto& e : L.basis())
    if (!e.is_rational()) {
      irr = &e;
      break;
    }
  if (!irr) fail(ErrorKind::Internal, "dense lattice without irrational basis element");
  GroundNum a = L.one();
  GroundNum b = *irr - L.field().from_rational(Rational(irr->floor()));
  while (true) {
    if (b < a) std::swap(a, b);
    if (a < bound) return a;
    Integer q = (b / a).floor();
    b -= a * Rational(q);
  }
}

std::optional<IntVec> IndependentSet::expand(const Lattice& L, const GroundNum& x) const {
  if (elements.empty()) {
    if (x.is_zero()) return IntVec{};
    return std::nullopt;
  }
  QMat m;
  for (const auto& s : elements) {
    auto c = L.coordinates_of(s);
    m.emplace_back(c.begin(), c.end());
  }
  auto xc = L.try_coordinates(x);
  if (!xc) return std::nullopt;
  // Solve sum_k c_k * m[k] = xc via RREF of the transposed augmented system.
  const size_t k = m.size(), d = m[0].size();
  QMat sys(d, QVec(k + 1, Rational(0)));
  for (size_t r = 0; r < d; ++r) {
    for (size_t j = 0; j < k; ++j) sys[r][j] = m[j][r];
    sys[r][k] = (*xc)[r];
  }
  auto piv = rref(sys);
  if (!piv.empty() && piv.back() == k) return std::nullopt;
  IntVec out(k, Integer(0));
  for (size_t r = 0; r < piv.size(); ++r) {
    const Rational& v = sys[r][k];
    if (v.get_den() != 1) return std::nullopt;
    out[piv[r]] = v.get_num();
  }
  return out;
}

bool IndependentSet::verify(const Lattice& L) const {
  IntMat rows;
  for (const auto& s : elements) {
    if (s.sign() <= 0) return false;
    auto c = L.try_coordinates(s);
    if (!c) return false;
    rows.push_back(*c);
  }
  if (!elements.empty() && rank_over_q(rows) != static_cast<int>(elements.size())) return false;
  if (expansions.size() != targets.size()) return false;
  for (size_t t = 0; t < targets.size(); ++t) {
    if (expansions[t].size() != elements.size()) return false;
    GroundNum sum = L.zero();
    for (size_t s = 0; s < elements.size(); ++s) {
      if (expansions[t][s] < 0) return false;
      sum += elements[s] * Rational(expansions[t][s]);
    }
    if (sum != targets[t]) return false;
  }
  return true;
}

namespace {

// Reduce-by-smallest on `cur`; coef[t] holds target t's coefficients over `cur`.
// Returns true once `cur` is independent, false when `rounds` is exhausted.
bool reduce_by_smallest(const Lattice& L, std::vector<GroundNum>& cur, std::vector<IntVec>& coef, long rounds) {
  auto independent = [&] {
    IntMat rows;
    for (const auto& x : cur) rows.push_back(L.coordinates_of(x));
    return rank_over_q(rows) == static_cast<int>(cur.size());
  };
  for (long r = 0;; ++r) {
    if (independent()) return true;
    if (r >= rounds) return false;
    size_t m = 0;
    for (size_t j = 1; j < cur.size(); ++j)
      if (cur[j] < cur[m]) m = j;
    for (size_t j = 0; j < cur.size(); ++j) {
      if (j == m) continue;
      Integer q = (cur[j] / cur[m]).floor();
      if (q == 0) continue;
      cur[j] -= cur[m] * Rational(q);
      for (auto& row : coef) row[m] += q * row[j];
    }
    std::vector<GroundNum> next;
    std::vector<size_t> where(cur.size());
    for (size_t j = 0; j < cur.size(); ++j) {
      if (cur[j].is_zero()) {
        where[j] = SIZE_MAX;
        continue;
      }
      size_t k = 0;
      while (k < next.size() && next[k] != cur[j]) ++k;
      if (k == next.size()) next.push_back(cur[j]);
      where[j] = k;
    }
    for (auto& row : coef) {
      IntVec nr(next.size(), Integer(0));
      for (size_t j = 0; j < cur.size(); ++j)
        if (where[j] != SIZE_MAX) nr[where[j]] += row[j];
      row = std::move(nr);
    }
    cur = std::move(next);
  }
}

// Integer coordinates of each target over the basis `b` (a basis of the targets' span).
std::vector<IntVec> coords_over(const Lattice& L, const std::vector<GroundNum>& b,
                                const std::vector<GroundNum>& targets) {
  IndependentSet tmp;
  tmp.elements = b;
  std::vector<IntVec> out;
  for (const auto& t : targets) {
    auto c = tmp.expand(L, t);
    if (!c) fail(ErrorKind::Internal, "target outside the span of the working basis");
    out.push_back(*c);
  }
  return out;
}

// Positive basis of the targets' span, enlarged by subtractive steps until every target
// has non-negative coordinates. Each step replaces b_i by b_i - k b_j with b_i > k b_j, so
// the positive cone spanned by the basis only grows.
void cone_euclid(const Lattice& L, const std::vector<GroundNum>& targets, long budget,
                 std::vector<GroundNum>& basis, std::vector<IntVec>& coef) {
  IntMat rows;
  for (const auto& t : targets) rows.push_back(L.coordinates_of(t));
  IntMat h = hermite_normal_form(rows);
  basis.clear();
  for (const auto& row : h) {
    GroundNum e = L.element(row);
    if (e.sign() < 0) e = -e;
    basis.push_back(e);
  }
  for (long step = 0;; ++step) {
    coef = coords_over(L, basis, targets);
    size_t tj = SIZE_MAX, j = 0;
    for (size_t t = 0; t < coef.size() && tj == SIZE_MAX; ++t) {
      for (size_t k = 0; k < coef[t].size(); ++k)
        if (coef[t][k] < 0 && (tj == SIZE_MAX || coef[t][k] < coef[t][j])) {
          tj = t;
          j = k;
        }
    }
    if (tj == SIZE_MAX) return;
    if (step >= budget)
      fail(ErrorKind::BudgetExceeded, "independentize exceeded " + std::to_string(budget) + " rounds");
    const IntVec& c = coef[tj];
    // Prefer fixing the negative coordinate directly: b_i -= k b_j adds k c_i to c_j.
    size_t best = SIZE_MAX;
    for (size_t i = 0; i < c.size(); ++i)
      if (c[i] > 0 && basis[j] < basis[i] && (best == SIZE_MAX || c[i] > c[best])) best = i;
    if (best != SIZE_MAX) {
      Integer room = (basis[best] / basis[j]).floor();
      Integer need;
      Integer neg = -c[j];
      mpz_cdiv_q(need.get_mpz_t(), neg.get_mpz_t(), c[best].get_mpz_t());
      Integer k = need < room ? need : room;
      basis[best] -= basis[j] * Rational(k);
      continue;
    }
    // Otherwise shrink b_j by the largest smaller element with positive coefficient.
    size_t i = SIZE_MAX;
    for (size_t k = 0; k < c.size(); ++k)
      if (c[k] > 0 && (i == SIZE_MAX || basis[i] < basis[k])) i = k;
    Integer q = (basis[j] / basis[i]).floor();
    basis[j] -= basis[i] * Rational(q);
  }
}

}  // namespace

IndependentSet independentize(const Lattice& L, const std::vector<GroundNum>& targets, long budget) {
  if (budget < 0) budget = budget_from_env(kDefaultIndependentizeBudget);
  for (const auto& t : targets) {
    if (t.sign() <= 0) fail(ErrorKind::OutOfRange, "independentize targets must be positive");
    L.coordinates_of(t);
  }
  std::vector<GroundNum> cur;
  std::vector<IntVec> coef(targets.size());
  for (size_t t = 0; t < targets.size(); ++t) {
    size_t j = 0;
    while (j < cur.size() && cur[j] != targets[t]) ++j;
    if (j == cur.size()) {
      cur.push_back(targets[t]);
      for (auto& row : coef) row.push_back(0);
    }
    coef[t][j] += 1;
  }
  constexpr long kSmallestFirstRounds = 64;
  if (!reduce_by_smallest(L, cur, coef, std::min(budget, kSmallestFirstRounds)))
    cone_euclid(L, targets, budget, cur, coef);
  std::vector<size_t> order;
  for (size_t j = 0; j < cur.size(); ++j) {
    bool used = std::any_of(coef.begin(), coef.end(), [&](const IntVec& row) { return row[j] != 0; });
    if (used) order.push_back(j);
  }
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return cur[b] < cur[a]; });
  IndependentSet out;
  out.targets = targets;
  for (size_t j : order) out.elements.push_back(cur[j]);
  for (auto& row : coef) {
    IntVec nr;
    for (size_t j : order) nr.push_back(row[j]);
    out.expansions.push_back(std::move(nr));
  }
  if (!out.verify(L)) fail(ErrorKind::Internal, "independentize post-condition failed");
  return out;
}

}  // namespace ietab
