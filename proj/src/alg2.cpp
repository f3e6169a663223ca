#include "ietab/alg2.hpp"

#include <sstream>

#include "ietab/error.hpp"

namespace ietab {

namespace {

IntMat zeros(int d) { return IntMat(d, IntVec(d, Integer(0))); }

std::string basis_name(int i) { return "e" + std::to_string(i + 1); }

// Joins signed terms "c·name" into a stable string.
class TermWriter {
 public:
  void add(const Integer& c, const std::string& name) {
    if (c == 0) return;
    Integer a = abs(c);
    if (empty_) {
      if (c < 0) os_ << '-';
    } else {
      os_ << (c < 0 ? " - " : " + ");
    }
    if (a != 1) os_ << a.get_str() << "·";
    os_ << name;
    empty_ = false;
  }
  bool empty() const { return empty_; }
  std::string str() const { return empty_ ? "0" : os_.str(); }

 private:
  std::ostringstream os_;
  bool empty_ = true;
};

void check_dims(const Lattice& a, const Lattice& b) { require_same(a, b); }

}  // namespace

T2::T2(Lattice L) : L_(std::move(L)), m_(zeros(L_.rank())) {}
T2::T2(Lattice L, IntMat m) : L_(std::move(L)), m_(std::move(m)) {
  if (static_cast<int>(m_.size()) != dim()) fail(ErrorKind::MixedContexts, "matrix size does not match rank");
}

bool T2::is_zero() const {
  for (const auto& r : m_)
    for (const auto& v : r)
      if (v != 0) return false;
  return true;
}

T2& T2::operator+=(const T2& o) {
  check_dims(L_, o.L_);
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) m_[i][j] += o.m_[i][j];
  return *this;
}

T2& T2::operator-=(const T2& o) {
  check_dims(L_, o.L_);
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) m_[i][j] -= o.m_[i][j];
  return *this;
}

T2 T2::operator-() const {
  T2 r = *this;
  for (auto& row : r.m_)
    for (auto& v : row) v = -v;
  return r;
}

bool T2::operator==(const T2& o) const {
  check_dims(L_, o.L_);
  return m_ == o.m_;
}

std::string T2::str() const {
  TermWriter w;
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) w.add(m_[i][j], basis_name(i) + "⊗" + basis_name(j));
  return w.str();
}

SW2::SW2(Lattice L) : L_(std::move(L)), up_(zeros(L_.rank())), diag_(L_.rank(), 0) {}

bool SW2::is_zero() const {
  if (!free_part_zero()) return false;
  for (auto b : diag_)
    if (b) return false;
  return true;
}

bool SW2::free_part_zero() const {
  for (int i = 0; i < dim(); ++i)
    for (int j = i + 1; j < dim(); ++j)
      if (up_[i][j] != 0) return false;
  return true;
}

SW2& SW2::operator+=(const SW2& o) {
  check_dims(L_, o.L_);
  for (int i = 0; i < dim(); ++i) {
    for (int j = i + 1; j < dim(); ++j) up_[i][j] += o.up_[i][j];
    diag_[i] ^= o.diag_[i];
  }
  return *this;
}

SW2& SW2::operator-=(const SW2& o) {
  check_dims(L_, o.L_);
  for (int i = 0; i < dim(); ++i) {
    for (int j = i + 1; j < dim(); ++j) up_[i][j] -= o.up_[i][j];
    diag_[i] ^= o.diag_[i];
  }
  return *this;
}

SW2 SW2::operator-() const {
  SW2 r = *this;
  for (auto& row : r.up_)
    for (auto& v : row) v = -v;
  return r;
}

SW2 SW2::operator*(const Integer& k) const {
  SW2 r = *this;
  bool odd = (k % 2) != 0;
  for (int i = 0; i < dim(); ++i) {
    for (int j = i + 1; j < dim(); ++j) r.up_[i][j] *= k;
    if (!odd) r.diag_[i] = 0;
  }
  return r;
}

bool SW2::operator==(const SW2& o) const {
  check_dims(L_, o.L_);
  return up_ == o.up_ && diag_ == o.diag_;
}

std::string SW2::str() const {
  TermWriter w;
  bool torsion = false;
  for (int i = 0; i < dim(); ++i) {
    if (diag_[i]) {
      w.add(1, basis_name(i) + "∧" + basis_name(i));
      torsion = true;
    }
    for (int j = i + 1; j < dim(); ++j) w.add(up_[i][j], basis_name(i) + "∧" + basis_name(j));
  }
  std::string s = w.str();
  if (torsion && free_part_zero()) s += " (torsion)";
  return s;
}

Ext2::Ext2(Lattice L) : L_(std::move(L)), up_(zeros(L_.rank())) {}

bool Ext2::is_zero() const {
  for (const auto& r : up_)
    for (const auto& v : r)
      if (v != 0) return false;
  return true;
}

bool Ext2::operator==(const Ext2& o) const {
  check_dims(L_, o.L_);
  return up_ == o.up_;
}

std::string Ext2::str() const {
  TermWriter w;
  const int d = L_.rank();
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) w.add(up_[i][j], basis_name(i) + "∧" + basis_name(j));
  return w.str();
}

T2Mod2::T2Mod2(Lattice L) : L_(std::move(L)), bits_(L_.rank() * L_.rank(), 0) {}

bool T2Mod2::is_zero() const {
  for (auto b : bits_)
    if (b) return false;
  return true;
}

T2Mod2& T2Mod2::operator+=(const T2Mod2& o) {
  check_dims(L_, o.L_);
  for (size_t k = 0; k < bits_.size(); ++k) bits_[k] ^= o.bits_[k];
  return *this;
}

bool T2Mod2::operator==(const T2Mod2& o) const {
  check_dims(L_, o.L_);
  return bits_ == o.bits_;
}

std::string T2Mod2::str() const {
  TermWriter w;
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j)
      if (at(i, j)) w.add(1, basis_name(i) + "⊗" + basis_name(j));
  return w.empty() ? "0" : w.str() + " [mod 2]";
}

SW2Mod2::SW2Mod2(Lattice L) : L_(std::move(L)), up_(L_.rank() * L_.rank(), 0), diag_(L_.rank(), 0) {}

bool SW2Mod2::is_zero() const {
  for (auto b : up_)
    if (b) return false;
  for (auto b : diag_)
    if (b) return false;
  return true;
}

SW2Mod2& SW2Mod2::operator+=(const SW2Mod2& o) {
  check_dims(L_, o.L_);
  for (size_t k = 0; k < up_.size(); ++k) up_[k] ^= o.up_[k];
  for (size_t k = 0; k < diag_.size(); ++k) diag_[k] ^= o.diag_[k];
  return *this;
}

bool SW2Mod2::operator==(const SW2Mod2& o) const {
  check_dims(L_, o.L_);
  return up_ == o.up_ && diag_ == o.diag_;
}

std::vector<uint8_t> SW2Mod2::bits() const {
  std::vector<uint8_t> out;
  for (int i = 0; i < dim(); ++i)
    for (int j = i + 1; j < dim(); ++j) out.push_back(up_[i * dim() + j]);
  out.insert(out.end(), diag_.begin(), diag_.end());
  return out;
}

std::string SW2Mod2::str() const {
  TermWriter w;
  for (int i = 0; i < dim(); ++i) {
    if (diag_[i]) w.add(1, basis_name(i) + "∧" + basis_name(i));
    for (int j = i + 1; j < dim(); ++j)
      if (upper(i, j)) w.add(1, basis_name(i) + "∧" + basis_name(j));
  }
  return w.empty() ? "0" : w.str() + " [mod 2]";
}

T2 operator+(T2 a, const T2& b) { return a += b; }
T2 operator-(T2 a, const T2& b) { return a -= b; }
SW2 operator+(SW2 a, const SW2& b) { return a += b; }
SW2 operator-(SW2 a, const SW2& b) { return a -= b; }
T2Mod2 operator+(T2Mod2 a, const T2Mod2& b) { return a += b; }
SW2Mod2 operator+(SW2Mod2 a, const SW2Mod2& b) { return a += b; }

T2 tensor_coords(const Lattice& L, const IntVec& a, const IntVec& b) {
  const int d = L.rank();
  IntMat m = zeros(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m[i][j] = a[i] * b[j];
  return T2(L, std::move(m));
}

T2 tensor(const Lattice& L, const GroundNum& a, const GroundNum& b) {
  return tensor_coords(L, L.coordinates_of(a), L.coordinates_of(b));
}

void add_wedge_coords(SW2& acc, const IntVec& a, const IntVec& b) {
  const int d = acc.dim();
  for (int i = 0; i < d; ++i) {
    if (a[i] != 0 && b[i] != 0 && ((a[i] * b[i]) % 2 != 0)) acc.set_diag(i, !acc.diag(i));
    for (int j = i + 1; j < d; ++j) {
      Integer v = a[i] * b[j] - a[j] * b[i];
      if (v != 0) acc.set_upper(i, j, acc.upper(i, j) + v);
    }
  }
}

SW2 wedge_coords(const Lattice& L, const IntVec& a, const IntVec& b) {
  SW2 s(L);
  add_wedge_coords(s, a, b);
  return s;
}

SW2 wedge(const Lattice& L, const GroundNum& a, const GroundNum& b) {
  return wedge_coords(L, L.coordinates_of(a), L.coordinates_of(b));
}

SW2 project(const T2& t) {
  SW2 s(t.lattice());
  for (int i = 0; i < t.dim(); ++i) {
    s.set_diag(i, (t.at(i, i) % 2) != 0);
    for (int j = i + 1; j < t.dim(); ++j) s.set_upper(i, j, t.at(i, j) - t.at(j, i));
  }
  return s;
}

Ext2 to_exterior(const SW2& s) {
  Ext2 e(s.lattice());
  for (int i = 0; i < s.dim(); ++i)
    for (int j = i + 1; j < s.dim(); ++j) e.set(i, j, s.upper(i, j));
  return e;
}

T2Mod2 mod2(const T2& t) {
  T2Mod2 r(t.lattice());
  for (int i = 0; i < t.dim(); ++i)
    for (int j = 0; j < t.dim(); ++j) r.set(i, j, (t.at(i, j) % 2) != 0);
  return r;
}

SW2Mod2 mod2(const SW2& s) {
  SW2Mod2 r(s.lattice());
  for (int i = 0; i < s.dim(); ++i) {
    r.set_diag(i, s.diag(i));
    for (int j = i + 1; j < s.dim(); ++j) r.set_upper(i, j, (s.upper(i, j) % 2) != 0);
  }
  return r;
}

SW2Mod2 project_mod2(const T2Mod2& t) {
  SW2Mod2 r(t.lattice());
  for (int i = 0; i < t.dim(); ++i) {
    r.set_diag(i, t.at(i, i));
    for (int j = i + 1; j < t.dim(); ++j) r.set_upper(i, j, t.at(i, j) != t.at(j, i));
  }
  return r;
}

int f2_rank(std::vector<std::vector<uint8_t>> rows) {
  if (rows.empty()) return 0;
  const size_t cols = rows[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows.size(); ++c) {
    size_t p = r;
    while (p < rows.size() && !rows[p][c]) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    for (size_t k = 0; k < rows.size(); ++k)
      if (k != r && rows[k][c])
        for (size_t j = c; j < cols; ++j) rows[k][j] ^= rows[r][j];
    ++r;
  }
  return static_cast<int>(r);
}

int f2_span_dim(const std::vector<T2Mod2>& xs) {
  std::vector<std::vector<uint8_t>> rows;
  for (const auto& x : xs) {
    check_dims(xs[0].lattice(), x.lattice());
    rows.push_back(x.bits());
  }
  return f2_rank(std::move(rows));
}

int f2_span_dim(const std::vector<SW2Mod2>& xs) {
  std::vector<std::vector<uint8_t>> rows;
  for (const auto& x : xs) {
    check_dims(xs[0].lattice(), x.lattice());
    rows.push_back(x.bits());
  }
  return f2_rank(std::move(rows));
}

int f2_span_dim(const std::vector<std::pair<T2Mod2, SW2Mod2>>& xs) {
  std::vector<std::vector<uint8_t>> rows;
  for (const auto& [t, s] : xs) {
    check_dims(xs[0].first.lattice(), t.lattice());
    check_dims(xs[0].first.lattice(), s.lattice());
    auto row = t.bits();
    auto sb = s.bits();
    row.insert(row.end(), sb.begin(), sb.end());
    rows.push_back(std::move(row));
  }
  return f2_rank(std::move(rows));
}

namespace {

IntMat congruence(const IntMat& U, const IntMat& m) {
  const size_t d = U.size();
  IntMat um = zeros(static_cast<int>(d)), out = zeros(static_cast<int>(d));
  for (size_t i = 0; i < d; ++i)
    for (size_t k = 0; k < d; ++k)
      if (U[i][k] != 0)
        for (size_t j = 0; j < d; ++j) um[i][j] += U[i][k] * m[k][j];
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j)
      for (size_t k = 0; k < d; ++k) out[i][j] += um[i][k] * U[j][k];
  return out;
}

}  // namespace

T2 change_basis(const T2& x, const IntMat& U) {
  Lattice M = x.lattice().rebased(U);
  return T2(M, congruence(U, x.matrix()));
}

SW2 change_basis(const SW2& x, const IntMat& U) {
  const int d = x.dim();
  IntMat rep = zeros(d);
  for (int i = 0; i < d; ++i) {
    rep[i][i] = x.diag(i) ? 1 : 0;
    for (int j = i + 1; j < d; ++j) rep[i][j] = x.upper(i, j);
  }
  Lattice M = x.lattice().rebased(U);
  return project(T2(M, congruence(U, rep)));
}

}  // namespace ietab
