#include "ietab/iet.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "ietab/error.hpp"

namespace ietab {

namespace {

void check_member(const Lattice& L, const GroundNum& x) {
  if (!L.contains(x)) fail(ErrorKind::NotInLattice, x.str() + " is not in the lattice");
}

void push_piece(std::vector<Piece>& ps, const GroundNum& src, const GroundNum& end, const GroundNum& dst) {
  if (src < end) ps.push_back(Piece{src, end - src, dst, false});
}

std::vector<IntVec> coords_of_all(const Lattice& L, const std::vector<GroundNum>& xs) {
  std::vector<IntVec> out;
  for (const auto& x : xs) out.push_back(L.coordinates_of(x));
  return out;
}

SW2 signature_of(const Lattice& L, const std::vector<GroundNum>& alpha, const std::vector<int>& tau) {
  auto c = coords_of_all(L, alpha);
  SW2 acc(L);
  for (size_t j = 0; j < alpha.size(); ++j)
    for (size_t i = 0; i < j; ++i)
      if (tau[i] > tau[j]) add_wedge_coords(acc, c[i], c[j]);
  return acc;
}

}  // namespace

IetMap IetMap::identity(const Lattice& L) { return IetMap(PiecewiseIsometry::identity(L)); }

IetMap IetMap::from_description(const Lattice& L, const std::vector<GroundNum>& alpha, const std::vector<int>& tau) {
  return IetMap(PiecewiseIsometry::from_description(L, alpha, tau, {}));
}

IetMap IetMap::restricted_rotation(const Lattice& L, const GroundNum& a, const GroundNum& b, const GroundNum& x) {
  for (const auto* v : {&a, &b, &x}) check_member(L, *v);
  if (a.sign() <= 0 || b.sign() <= 0) fail(ErrorKind::OutOfRange, "rotation type must be positive");
  GroundNum end = x + a + b;
  if (x.sign() < 0 || L.one() < end) fail(ErrorKind::OutOfRange, "rotation support outside [0,1)");
  std::vector<Piece> ps;
  push_piece(ps, L.zero(), x, L.zero());
  ps.push_back(Piece{x, a, x + b, false});
  ps.push_back(Piece{x + a, b, x, false});
  push_piece(ps, end, L.one(), end);
  return IetMap(PiecewiseIsometry::from_pieces(L, std::move(ps)));
}

IetMap IetMap::transposition(const Lattice& L, const GroundNum& a, const GroundNum& p, const GroundNum& q) {
  for (const auto* v : {&a, &p, &q}) check_member(L, *v);
  if (a.sign() <= 0) fail(ErrorKind::OutOfRange, "transposition type must be positive");
  const GroundNum& u = min(p, q);
  const GroundNum& v = max(p, q);
  if (u.sign() < 0 || L.one() < v + a) fail(ErrorKind::OutOfRange, "transposition support outside [0,1)");
  if (v < u + a) fail(ErrorKind::Overlap, "transposed intervals overlap");
  std::vector<Piece> ps;
  push_piece(ps, L.zero(), u, L.zero());
  ps.push_back(Piece{u, a, v, false});
  push_piece(ps, u + a, v, u + a);
  ps.push_back(Piece{v, a, u, false});
  push_piece(ps, v + a, L.one(), v + a);
  return IetMap(PiecewiseIsometry::from_pieces(L, std::move(ps)));
}

IetMap IetMap::from_map(PiecewiseIsometry m) {
  if (!m.orientation_preserving()) fail(ErrorKind::NotOrientationPreserving, "map reverses some interval");
  return IetMap(std::move(m));
}

std::vector<GroundNum> IetMap::translations() const {
  std::vector<GroundNum> out;
  for (const auto& p : m_.pieces()) out.push_back(p.dst - p.src);
  return out;
}

std::string IetMap::str() const {
  std::string s = "alpha:";
  for (const auto& a : lengths()) s += " " + a.str();
  s += " tau:";
  for (int t : tau()) s += " " + std::to_string(t + 1);
  return s;
}

IetMap compose(const IetMap& f, const IetMap& g) { return IetMap::from_map(compose(f.map(), g.map())); }
IetMap inverse(const IetMap& f) { return IetMap::from_map(inverse(f.map())); }
IetMap power(const IetMap& f, unsigned long n) { return IetMap::from_map(power(f.map(), n)); }

void describe(const std::vector<Piece>& pieces, std::vector<GroundNum>& alpha, std::vector<int>& tau) {
  alpha.clear();
  std::vector<int> idx(pieces.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return pieces[a].dst < pieces[b].dst; });
  tau.assign(pieces.size(), 0);
  for (size_t k = 0; k < idx.size(); ++k) tau[idx[k]] = static_cast<int>(k);
  for (const auto& p : pieces) alpha.push_back(p.len);
}

SW2 saf_over(const IetMap& f, const Partition& P) {
  const Lattice& L = f.lattice();
  SW2 acc(L);
  for (const auto& p : f.map().split(P)) add_wedge_coords(acc, L.coordinates_of(p.dst - p.src), L.coordinates_of(p.len));
  return acc;
}

SW2 saf(const IetMap& f) { return saf_over(f, f.breakpoints()); }

SW2 signature_over(const IetMap& f, const Partition& P) {
  std::vector<GroundNum> alpha;
  std::vector<int> tau;
  describe(f.map().split(P), alpha, tau);
  return signature_of(f.lattice(), alpha, tau);
}

SW2 signature(const IetMap& f) { return signature_over(f, f.breakpoints()); }

RectangleSet inversion_rectangles(const IetMap& f) {
  const auto& ps = f.map().pieces();
  std::vector<Rectangle> rects;
  for (size_t j = 0; j < ps.size(); ++j)
    for (size_t i = 0; i < j; ++i)
      if (ps[j].dst < ps[i].dst)
        rects.push_back(Rectangle{{ps[i].src, ps[i].src + ps[i].len}, {ps[j].src, ps[j].src + ps[j].len}});
  return RectangleSet(f.lattice(), rects);
}

bool in_ker_saf(const IetMap& f) { return saf(f).is_zero(); }
bool in_derived(const IetMap& f) { return signature(f).is_zero(); }

Order order(const IetMap& f, long budget) {
  if (budget < 0) budget = budget_from_env(kDefaultOrderBudget);
  // Group the minimal intervals into invariant blocks: an interval is tied to every interval
  // its image meets. A finite-order map has zero SAF free part on each block.
  const Lattice& L = f.lattice();
  const auto& ps = f.map().pieces();
  std::vector<int> parent(ps.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> root = [&](int i) { return parent[i] == i ? i : parent[i] = root(parent[i]); };
  for (size_t i = 0; i < ps.size(); ++i) {
    GroundNum end = ps[i].dst + ps[i].len;
    for (size_t j = 0; j < ps.size(); ++j)
      if (ps[j].src < end && ps[i].dst < ps[j].src + ps[j].len) parent[root(static_cast<int>(i))] = root(static_cast<int>(j));
  }
  std::map<int, SW2> block;
  for (size_t i = 0; i < ps.size(); ++i) {
    auto it = block.try_emplace(root(static_cast<int>(i)), L).first;
    add_wedge_coords(it->second, L.coordinates_of(ps[i].dst - ps[i].src), L.coordinates_of(ps[i].len));
  }
  for (const auto& [r, s] : block)
    if (!s.free_part_zero()) return Order::infinite();
  auto P = invariant_partition(f.map(), budget);
  if (!P) return Order::unknown(static_cast<unsigned long>(budget));
  return Order::finite(permutation_order(f.map(), *P));
}

IetMap Factor::map(const Lattice& L) const {
  if (kind == Kind::Rotation) return IetMap::restricted_rotation(L, a, b, p);
  return IetMap::transposition(L, a, p, q);
}

GroundNum Factor::support() const { return kind == Kind::Rotation ? a + b : a + a; }

IetMap recompose(const Lattice& L, const std::vector<Factor>& fs) {
  IetMap acc = IetMap::identity(L);
  for (const auto& f : fs) acc = compose(acc, f.map(L));
  return acc;
}

std::pair<IetMap, IetMap> two_transposition_example(const Lattice& L, unsigned n) {
  if (n == 0) fail(ErrorKind::OutOfRange, "order must be positive");
  // Cells of width w; the odd layout needs n + 2 cells, the even one n (and 4 for n = 2).
  unsigned cells = n % 2 ? n + 2 : std::max(n, 4u);
  GroundNum bound = L.one() * Rational(1, cells);
  GroundNum w = L.zero();
  if (L.dense()) {
    w = small_positive(L, bound);
  } else {
    w = L.element(IntVec{Integer(1)});
    if (w.sign() < 0) w = -w;
    if (bound < w) fail(ErrorKind::NotRepresentable, "lattice too coarse for order " + std::to_string(n));
  }
  auto cell = [&](unsigned k) { return w * Rational(k); };
  if (n == 1) {
    IetMap f = IetMap::transposition(L, w, cell(0), cell(1));
    return {f, f};
  }
  if (n == 2) {
    return {IetMap::transposition(L, w, cell(0), cell(1)), IetMap::transposition(L, w, cell(2), cell(3))};
  }
  if (n % 2 == 0) {
    unsigned h = n / 2;
    return {IetMap::transposition(L, cell(h - 1), cell(0), cell(h + 1)), IetMap::transposition(L, cell(h), cell(0), cell(h))};
  }
  unsigned h = (n + 1) / 2;
  return {IetMap::transposition(L, cell(h - 1), cell(1), cell(h + 2)), IetMap::transposition(L, cell(h - 1), cell(1), cell(h + 1))};
}

std::vector<Factor> decompose_rotations(const IetMap& f, const Partition& P) {
  auto ps = f.map().split(P);
  std::vector<GroundNum> len;
  std::vector<int> tau;
  describe(ps, len, tau);
  std::vector<Factor> applied;
  const int n = static_cast<int>(len.size());
  GroundNum offset = f.lattice().zero();  // left end of position t
  for (int t = 0; t < n; ++t) {
    int p = static_cast<int>(std::find(tau.begin() + t, tau.end(), t) - tau.begin());
    if (p > t) {
      GroundNum left = offset;
      for (int k = t; k < p - 1; ++k) left += len[k];
      for (; p > t; --p) {
        applied.push_back(Factor::rotation(len[p - 1], len[p], left));
        std::swap(len[p - 1], len[p]);
        std::swap(tau[p - 1], tau[p]);
        if (p - 1 > t) left -= len[p - 2];
      }
    }
    offset += len[t];
  }
  std::reverse(applied.begin(), applied.end());
  return applied;
}

std::vector<Factor> decompose_rotations(const IetMap& f) { return decompose_rotations(f, f.breakpoints()); }

std::vector<Factor> decompose_small(const IetMap& f, const GroundNum& eps) {
  const Lattice& L = f.lattice();
  if (!L.dense()) fail(ErrorKind::NotDense, "small factors need a dense lattice");
  if (eps.sign() <= 0) fail(ErrorKind::OutOfRange, "eps must be positive");
  if (f.is_identity()) return {};
  GroundNum half = eps * Rational(1, 2);
  GroundNum w = small_positive(L, half);
  std::vector<Factor> out;
  for (const auto& r : decompose_rotations(f)) {
    if (!(eps < r.support())) {
      out.push_back(r);
      continue;
    }
    // Cut every interval longer than eps/2 into pieces of length w and a shorter remainder;
    // adjacent swaps of such pieces move at most eps.
    IetMap g = r.map(L);
    Partition P;
    for (const auto& p : g.map().pieces()) {
      P.push_back(p.src);
      if (!(half < p.len)) continue;
      GroundNum end = p.src + p.len;
      for (GroundNum x = p.src + w; x < end; x += w) P.push_back(x);
    }
    P.push_back(L.one());
    auto small = decompose_rotations(g, P);
    out.insert(out.end(), small.begin(), small.end());
  }
  return out;
}

bool is_balanced(const std::vector<Factor>& fs) {
  std::map<std::pair<IntVec, IntVec>, long> count;
  for (const auto& f : fs) {
    if (f.kind != Factor::Kind::Rotation || f.a == f.b) continue;
    auto ca = f.a.coords(), cb = f.b.coords();
    IntVec ka, kb;
    // Exact key from the rational power-basis coordinates.
    for (const auto& c : ca) {
      ka.push_back(c.get_num());
      ka.push_back(c.get_den());
    }
    for (const auto& c : cb) {
      kb.push_back(c.get_num());
      kb.push_back(c.get_den());
    }
    ++count[{ka, kb}];
  }
  for (const auto& [k, v] : count) {
    auto it = count.find({k.second, k.first});
    if (it == count.end() || it->second != v) return false;
  }
  return true;
}

namespace {

// Row reduction of the integer matrix C (m x d) tracking the unimodular V with V C in echelon
// form; rows of V past the rank span the integer relations among the rows of C.
int echelon_with_transform(IntMat C, IntMat& V) {
  const size_t m = C.size(), d = m ? C[0].size() : 0;
  V.assign(m, IntVec(m, Integer(0)));
  for (size_t i = 0; i < m; ++i) V[i][i] = 1;
  auto row_sub = [&](size_t dst, size_t src, const Integer& q) {
    for (size_t c = 0; c < d; ++c) C[dst][c] -= q * C[src][c];
    for (size_t c = 0; c < m; ++c) V[dst][c] -= q * V[src][c];
  };
  size_t r = 0;
  for (size_t col = 0; col < d && r < m; ++col) {
    for (;;) {
      size_t piv = m;
      for (size_t i = r; i < m; ++i)
        if (C[i][col] != 0 && (piv == m || abs(C[i][col]) < abs(C[piv][col]))) piv = i;
      if (piv == m) break;
      std::swap(C[piv], C[r]);
      std::swap(V[piv], V[r]);
      bool done = true;
      for (size_t i = r + 1; i < m; ++i) {
        if (C[i][col] == 0) continue;
        Integer q = C[i][col] / C[r][col];
        row_sub(i, r, q);
        if (C[i][col] != 0) done = false;
      }
      if (done) {
        ++r;
        break;
      }
    }
  }
  // Shorten the relation vectors a little: pairwise size reduction until stable.
  for (bool changed = true; changed;) {
    changed = false;
    for (size_t i = r; i < m; ++i)
      for (size_t j = r; j < m; ++j) {
        if (i == j) continue;
        Integer ni = 0, dot = 0, nj = 0;
        for (size_t c = 0; c < m; ++c) {
          dot += V[i][c] * V[j][c];
          nj += V[j][c] * V[j][c];
        }
        if (nj == 0) continue;
        Integer k, twice = 2 * dot + nj, den = 2 * nj;
        mpz_fdiv_q(k.get_mpz_t(), twice.get_mpz_t(), den.get_mpz_t());
        if (k == 0) continue;
        for (size_t c = 0; c < m; ++c) ni += (V[i][c] - k * V[j][c]) * (V[i][c] - k * V[j][c]);
        Integer old = 0;
        for (size_t c = 0; c < m; ++c) old += V[i][c] * V[i][c];
        if (ni < old) {
          for (size_t c = 0; c < m; ++c) V[i][c] -= k * V[j][c];
          changed = true;
        }
      }
  }
  return static_cast<int>(r);
}

// Inverse of a unimodular integer matrix.
IntMat unimodular_inverse(const IntMat& V) {
  const size_t m = V.size();
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(2 * m, Rational(0)));
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < m; ++j) a[i][j] = V[i][j];
    a[i][m + i] = 1;
  }
  for (size_t c = 0; c < m; ++c) {
    size_t p = c;
    while (a[p][c] == 0) ++p;
    std::swap(a[p], a[c]);
    Rational inv = 1 / a[c][c];
    for (auto& x : a[c]) x *= inv;
    for (size_t i = 0; i < m; ++i) {
      if (i == c || a[i][c] == 0) continue;
      Rational q = a[i][c];
      for (size_t j = 0; j < 2 * m; ++j) a[i][j] -= q * a[c][j];
    }
  }
  IntMat W(m, IntVec(m));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) {
      if (a[i][m + j].get_den() != 1) fail(ErrorKind::Internal, "transform is not unimodular");
      W[i][j] = a[i][m + j].get_num();
    }
  return W;
}

// rot(p_1 + ... + p_t, w) at x, split along its first block.
void split_first(std::vector<Factor>& out, const std::vector<GroundNum>& parts, const GroundNum& w, GroundNum x) {
  for (const auto& p : parts) {
    out.push_back(Factor::rotation(p, w, x));
    x += p;
  }
}

// rot(w, p_1 + ... + p_t) at x, split along its second block.
void split_second(std::vector<Factor>& out, const std::vector<GroundNum>& parts, const GroundNum& w, const GroundNum& x) {
  std::vector<Factor> tmp;
  GroundNum y = x;
  for (const auto& p : parts) {
    tmp.push_back(Factor::rotation(w, p, y));
    y += p;
  }
  out.insert(out.end(), tmp.rbegin(), tmp.rend());
}

}  // namespace

std::vector<Factor> decompose_balanced(const IetMap& f) {
  if (!in_ker_saf(f)) fail(ErrorKind::NotInSAFKernel, "saf(f) = " + saf(f).str());
  auto out = decompose_rotations(f);
  if (is_balanced(out)) return out;
  // The type counts of the rotation tuple give an antisymmetric integer matrix D over the
  // distinct lengths. A zero SAF puts D in the span of u^e_j with u an integer relation among
  // the lengths; each such term is cancelled by identity products rot(l,w) rot(w,l) in which
  // one side is split along a common refinement of the two sides of the relation.
  const Lattice& L = f.lattice();
  std::vector<GroundNum> lam = sorted_unique(L, f.lengths());
  const size_t m = lam.size();
  auto index = [&](const GroundNum& x) {
    return static_cast<size_t>(std::lower_bound(lam.begin(), lam.end(), x) - lam.begin());
  };
  IntMat D(m, IntVec(m, Integer(0)));
  for (const auto& r : out) {
    size_t i = index(r.a), j = index(r.b);
    if (i == j) continue;
    D[i][j] += 1;
    D[j][i] -= 1;
  }
  IntMat C;
  for (const auto& x : lam) C.push_back(L.coordinates_of(x));
  IntMat V;
  const size_t rank = static_cast<size_t>(echelon_with_transform(C, V));
  // Put the relations first: b_0..b_{k-1} relations, then the independent rows.
  IntMat B;
  for (size_t i = rank; i < m; ++i) B.push_back(V[i]);
  for (size_t i = 0; i < rank; ++i) B.push_back(V[i]);
  const size_t k = m - rank;
  IntMat W = unimodular_inverse(B);  // e_i = sum_p W[i][p] b_p
  IntMat Dp(m, IntVec(m, Integer(0)));
  for (size_t p = 0; p < m; ++p)
    for (size_t q = 0; q < m; ++q) {
      Integer acc = 0;
      for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j)
          if (D[i][j] != 0) acc += W[i][p] * D[i][j] * W[j][q];
      Dp[p][q] = acc;
    }
  for (size_t p = k; p < m; ++p)
    for (size_t q = k; q < m; ++q)
      if (Dp[p][q] != 0) fail(ErrorKind::Internal, "type imbalance is not carried by length relations");
  GroundNum origin = L.zero();
  for (size_t p = 0; p < k; ++p) {
    for (size_t j = 0; j < m; ++j) {
      Integer c = 0;
      for (size_t q = p + 1; q < m; ++q) c += Dp[p][q] * B[q][j];
      if (c == 0) continue;
      // Add -c (b_p ^ e_j); with u = sign(c) b_p that is |c| copies of -(u ^ e_j).
      IntVec u = B[p];
      if (c < 0) {
        for (auto& v : u) v = -v;
        c = -c;
      }
      const GroundNum& w = lam[j];
      // Lay the positive and negative sides of the relation on a line and cut at both sets
      // of partial sums; every copy of a length is then a run of common pieces.
      std::vector<std::pair<size_t, bool>> copies_pos, copies_neg;
      for (size_t i = 0; i < m; ++i)
        for (Integer t = 0; t < abs(u[i]); ++t) (u[i] > 0 ? copies_pos : copies_neg).push_back({i, true});
      std::vector<GroundNum> cuts{L.zero()};
      GroundNum acc = L.zero();
      for (auto& [i, _] : copies_pos) cuts.push_back(acc += lam[i]);
      acc = L.zero();
      for (auto& [i, _] : copies_neg) cuts.push_back(acc += lam[i]);
      cuts = sorted_unique(L, cuts);
      auto pieces_of = [&](const GroundNum& s, const GroundNum& e) {
        std::vector<GroundNum> ps;
        for (size_t t = 0; t + 1 < cuts.size(); ++t)
          if (!(cuts[t] < s) && !(e < cuts[t + 1])) ps.push_back(cuts[t + 1] - cuts[t]);
        return ps;
      };
      for (Integer rep = 0; rep < c; ++rep) {
        for (int side = 0; side < 2; ++side) {
          const auto& copies = side == 0 ? copies_pos : copies_neg;
          GroundNum s = L.zero();
          for (const auto& [i, _] : copies) {
            GroundNum e = s + lam[i];
            auto ps = pieces_of(s, e);
            s = e;
            if (ps.size() < 2) continue;
            if (L.one() < lam[i] + w) fail(ErrorKind::Internal, "relation unit does not fit in [0,1)");
            if (side == 0) {
              // -U(i,w): rot(l_i, w) split on l_i, then its inverse rot(w, l_i).
              split_first(out, ps, w, origin);
              out.push_back(Factor::rotation(w, lam[i], origin));
            } else {
              // +U(i,w): rot(w, l_i) split on l_i, then its inverse rot(l_i, w).
              split_second(out, ps, w, origin);
              out.push_back(Factor::rotation(lam[i], w, origin));
            }
          }
        }
      }
    }
  }
  if (!is_balanced(out)) fail(ErrorKind::Internal, "balanced decomposition failed its count check");
  return out;
}

}  // namespace ietab
