#include "ietab/piecewise.hpp"

#include <algorithm>

#include "ietab/error.hpp"

namespace ietab {

namespace {

void sort_by_src(std::vector<Piece>& ps) {
  std::sort(ps.begin(), ps.end(), [](const Piece& a, const Piece& b) { return a.src < b.src; });
}

std::vector<Piece> canonical(std::vector<Piece> ps) {
  std::vector<Piece> out;
  for (auto& p : ps) {
    if (!out.empty()) {
      Piece& q = out.back();
      bool merge = q.flip == p.flip &&
                   (q.flip ? (q.dst == p.dst + p.len) : (p.dst == q.dst + q.len));
      if (merge) {
        q.len += p.len;
        if (q.flip) q.dst = p.dst;
        continue;
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}

// Start of the preimage (under a piece) of the sub-interval [a, a+len) of its image.
GroundNum pull_back(const Piece& g, const GroundNum& a, const GroundNum& len) {
  if (!g.flip) return g.src + (a - g.dst);
  return g.src + g.dst + g.len - a - len;
}

// Start of the image of the sub-interval [a, a+len) of the piece's source.
GroundNum push_forward(const Piece& f, const GroundNum& a, const GroundNum& len) {
  if (!f.flip) return f.dst + (a - f.src);
  return f.dst + f.src + f.len - a - len;
}

}  // namespace

PiecewiseIsometry PiecewiseIsometry::identity(const Lattice& L) {
  return PiecewiseIsometry(L, {Piece{L.zero(), L.one(), L.zero(), false}});
}

PiecewiseIsometry PiecewiseIsometry::from_pieces(const Lattice& L, std::vector<Piece> ps) {
  if (ps.empty()) fail(ErrorKind::OutOfRange, "no pieces");
  for (const auto& p : ps) {
    if (p.len.sign() <= 0) fail(ErrorKind::OutOfRange, "interval lengths must be positive");
    for (const auto* x : {&p.src, &p.len, &p.dst})
      if (!L.contains(*x)) fail(ErrorKind::NotInLattice, x->str() + " is not in the lattice");
  }
  sort_by_src(ps);
  auto check_tiling = [&](auto key) {
    GroundNum pos = L.zero();
    std::vector<const Piece*> order;
    for (const auto& p : ps) order.push_back(&p);
    std::sort(order.begin(), order.end(), [&](const Piece* a, const Piece* b) { return key(*a) < key(*b); });
    for (const Piece* p : order) {
      if (key(*p) != pos) fail(ErrorKind::Overlap, "pieces do not tile [0,1)");
      pos += p->len;
    }
    if (pos != L.one()) fail(ErrorKind::OutOfRange, "pieces do not tile [0,1)");
  };
  check_tiling([](const Piece& p) -> const GroundNum& { return p.src; });
  check_tiling([](const Piece& p) -> const GroundNum& { return p.dst; });
  return PiecewiseIsometry(L, canonical(std::move(ps)));
}

PiecewiseIsometry PiecewiseIsometry::from_trusted_pieces(const Lattice& L, std::vector<Piece> ps) {
  sort_by_src(ps);
  return PiecewiseIsometry(L, canonical(std::move(ps)));
}

PiecewiseIsometry PiecewiseIsometry::from_description(const Lattice& L, const std::vector<GroundNum>& alpha,
                                                      const std::vector<int>& tau, const std::vector<bool>& flips) {
  const size_t n = alpha.size();
  if (tau.size() != n || (!flips.empty() && flips.size() != n))
    fail(ErrorKind::OutOfRange, "description sizes do not match");
  std::vector<int> seen(n, 0);
  for (int t : tau) {
    if (t < 0 || static_cast<size_t>(t) >= n || seen[t]++) fail(ErrorKind::OutOfRange, "tau is not a permutation");
  }
  std::vector<GroundNum> by_arrival(n, L.zero());
  for (size_t i = 0; i < n; ++i) by_arrival[tau[i]] = alpha[i];
  std::vector<GroundNum> arrival_start(n, L.zero());
  GroundNum acc = L.zero();
  for (size_t k = 0; k < n; ++k) {
    arrival_start[k] = acc;
    acc += by_arrival[k];
  }
  std::vector<Piece> ps;
  GroundNum src = L.zero();
  for (size_t i = 0; i < n; ++i) {
    ps.push_back(Piece{src, alpha[i], arrival_start[tau[i]], flips.empty() ? false : flips[i]});
    src += alpha[i];
  }
  return from_pieces(L, std::move(ps));
}

Partition PiecewiseIsometry::breakpoints() const {
  Partition out;
  for (const auto& p : pieces_) out.push_back(p.src);
  out.push_back(L_.one());
  return out;
}

std::vector<GroundNum> PiecewiseIsometry::lengths() const {
  std::vector<GroundNum> out;
  for (const auto& p : pieces_) out.push_back(p.len);
  return out;
}

std::vector<int> PiecewiseIsometry::tau() const {
  std::vector<int> idx(pieces_.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return pieces_[a].dst < pieces_[b].dst; });
  std::vector<int> t(pieces_.size());
  for (size_t k = 0; k < idx.size(); ++k) t[idx[k]] = static_cast<int>(k);
  return t;
}

std::vector<bool> PiecewiseIsometry::flips() const {
  std::vector<bool> out;
  for (const auto& p : pieces_) out.push_back(p.flip);
  return out;
}

bool PiecewiseIsometry::orientation_preserving() const {
  return std::none_of(pieces_.begin(), pieces_.end(), [](const Piece& p) { return p.flip; });
}

bool PiecewiseIsometry::is_identity() const { return pieces_.size() == 1 && !pieces_[0].flip; }

GroundNum PiecewiseIsometry::apply(const GroundNum& x) const {
  if (x.sign() < 0 || !(x < L_.one())) fail(ErrorKind::OutOfRange, "point outside [0,1)");
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                             [](const GroundNum& v, const Piece& p) { return v < p.src; });
  const Piece& p = *(it - 1);
  if (!p.flip) return p.dst + (x - p.src);
  return p.dst + p.len - (x - p.src);
}

std::vector<std::pair<GroundNum, GroundNum>> PiecewiseIsometry::image(const GroundNum& a, const GroundNum& b) const {
  std::vector<std::pair<GroundNum, GroundNum>> out;
  for (const auto& p : pieces_) {
    GroundNum end = p.src + p.len;
    const GroundNum& lo = max(a, p.src);
    const GroundNum& hi = min(b, end);
    if (!(lo < hi)) continue;
    GroundNum len = hi - lo;
    GroundNum s = push_forward(p, lo, len);
    out.emplace_back(s, s + len);
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

bool PiecewiseIsometry::refined_by(const Partition& P) const {
  size_t k = 0;
  for (const auto& p : pieces_) {
    while (k < P.size() && P[k] < p.src) ++k;
    if (k == P.size() || P[k] != p.src) return false;
  }
  return true;
}

std::vector<Piece> PiecewiseIsometry::split(const Partition& P) const {
  if (P.size() < 2 || !P.front().is_zero() || P.back() != L_.one())
    fail(ErrorKind::NotAssociated, "partition must run from 0 to 1");
  for (size_t k = 0; k + 1 < P.size(); ++k)
    if (!(P[k] < P[k + 1])) fail(ErrorKind::NotAssociated, "partition points must increase");
  if (!refined_by(P)) fail(ErrorKind::NotAssociated, "partition does not refine the breakpoints");
  std::vector<Piece> out;
  size_t j = 0;
  for (size_t k = 0; k + 1 < P.size(); ++k) {
    while (!(P[k] < pieces_[j].src + pieces_[j].len)) ++j;
    const Piece& p = pieces_[j];
    GroundNum len = P[k + 1] - P[k];
    out.push_back(Piece{P[k], len, push_forward(p, P[k], len), p.flip});
  }
  return out;
}

Partition PiecewiseIsometry::arrival_partition(const Partition& P) const {
  auto ps = split(P);
  Partition out;
  for (const auto& p : ps) out.push_back(p.dst);
  out.push_back(L_.one());
  return sorted_unique(L_, std::move(out));
}

bool PiecewiseIsometry::operator==(const PiecewiseIsometry& o) const {
  require_same(L_, o.L_);
  if (pieces_.size() != o.pieces_.size()) return false;
  for (size_t i = 0; i < pieces_.size(); ++i) {
    const Piece &a = pieces_[i], &b = o.pieces_[i];
    if (a.flip != b.flip || a.src != b.src || a.len != b.len || a.dst != b.dst) return false;
  }
  return true;
}

PiecewiseIsometry compose(const PiecewiseIsometry& f, const PiecewiseIsometry& g) {
  require_same(f.lattice(), g.lattice());
  const Lattice& L = f.lattice();
  std::vector<const Piece*> gd;
  for (const auto& p : g.pieces()) gd.push_back(&p);
  std::sort(gd.begin(), gd.end(), [](const Piece* a, const Piece* b) { return a->dst < b->dst; });
  const auto& fs = f.pieces();
  std::vector<Piece> out;
  size_t i = 0, j = 0;
  GroundNum pos = L.zero();
  while (i < gd.size() && j < fs.size()) {
    GroundNum gend = gd[i]->dst + gd[i]->len;
    GroundNum fend = fs[j].src + fs[j].len;
    int c = compare(gend, fend);
    const GroundNum& end = c <= 0 ? gend : fend;
    GroundNum len = end - pos;
    out.push_back(Piece{pull_back(*gd[i], pos, len), len, push_forward(fs[j], pos, len), gd[i]->flip != fs[j].flip});
    pos = end;
    if (c <= 0) ++i;
    if (c >= 0) ++j;
  }
  return PiecewiseIsometry::from_trusted_pieces(L, std::move(out));
}

PiecewiseIsometry inverse(const PiecewiseIsometry& f) {
  std::vector<Piece> out;
  for (const auto& p : f.pieces()) out.push_back(Piece{p.dst, p.len, p.src, p.flip});
  return PiecewiseIsometry::from_trusted_pieces(f.lattice(), std::move(out));
}

PiecewiseIsometry power(const PiecewiseIsometry& f, unsigned long n) {
  PiecewiseIsometry result = PiecewiseIsometry::identity(f.lattice());
  PiecewiseIsometry base = f;
  while (n) {
    if (n & 1) result = compose(base, result);
    n >>= 1;
    if (n) base = compose(base, base);
  }
  return result;
}

Partition sorted_unique(const Lattice&, std::vector<GroundNum> pts) {
  std::sort(pts.begin(), pts.end());
  Partition out;
  for (auto& p : pts)
    if (out.empty() || out.back() != p) out.push_back(std::move(p));
  return out;
}

Partition common_partition(const PiecewiseIsometry& g, const PiecewiseIsometry& f) {
  require_same(f.lattice(), g.lattice());
  std::vector<GroundNum> pts = g.breakpoints();
  for (const auto& x : f.breakpoints()) {
    if (x == f.lattice().one() || x.is_zero()) continue;
    // Preimage of x under g, as a cut point: the endpoint of the matching g-piece image.
    for (const auto& p : g.pieces()) {
      GroundNum end = p.dst + p.len;
      if (p.dst < x && x < end) {
        pts.push_back(p.flip ? p.src + (end - x) : p.src + (x - p.dst));
        break;
      }
    }
  }
  return sorted_unique(f.lattice(), std::move(pts));
}

}  // namespace ietab

namespace ietab {

std::string Order::str() const {
  switch (kind) {
    case Kind::Finite: return std::to_string(n);
    case Kind::Infinite: return "infinite";
    case Kind::Unknown: return "unknown (budget " + std::to_string(n) + ")";
  }
  return "";
}

std::optional<Partition> invariant_partition(const PiecewiseIsometry& f, long max_rounds) {
  Partition P = f.breakpoints();
  for (long round = 0; round <= max_rounds; ++round) {
    std::vector<GroundNum> pts = P;
    for (size_t k = 0; k + 1 < P.size(); ++k)
      for (auto& [a, b] : f.image(P[k], P[k + 1])) {
        pts.push_back(a);
        pts.push_back(b);
      }
    Partition Q = sorted_unique(f.lattice(), std::move(pts));
    if (Q.size() == P.size()) return P;
    P = std::move(Q);
  }
  return std::nullopt;
}

unsigned long permutation_order(const PiecewiseIsometry& f, const Partition& P) {
  auto ps = f.split(P);
  std::vector<int> next(ps.size(), -1);
  for (size_t i = 0; i < ps.size(); ++i) {
    auto it = std::lower_bound(ps.begin(), ps.end(), ps[i].dst, [](const Piece& p, const GroundNum& v) { return p.src < v; });
    if (it == ps.end() || it->src != ps[i].dst || it->len != ps[i].len)
      fail(ErrorKind::Internal, "partition is not permuted");
    next[i] = static_cast<int>(it - ps.begin());
  }
  Integer n = 1;
  std::vector<bool> seen(ps.size(), false);
  for (size_t i = 0; i < ps.size(); ++i) {
    if (seen[i]) continue;
    unsigned long len = 0;
    bool reversed = false;
    for (int k = static_cast<int>(i); !seen[k]; k = next[k]) {
      seen[k] = true;
      ++len;
      reversed ^= ps[k].flip;
    }
    Integer l(reversed ? 2 * len : len);
    mpz_lcm(n.get_mpz_t(), n.get_mpz_t(), l.get_mpz_t());
  }
  if (!n.fits_ulong_p()) fail(ErrorKind::Internal, "order does not fit a machine word");
  if (!power(f, n.get_ui()).is_identity()) fail(ErrorKind::Internal, "computed order does not return to the identity");
  return n.get_ui();
}

}  // namespace ietab
