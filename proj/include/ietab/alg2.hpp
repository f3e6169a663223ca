#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ietab/lattice.hpp"

namespace ietab {

// Coefficient matrix of e_i (x) e_j.
class T2 {
 public:
  explicit T2(Lattice L);
  T2(Lattice L, IntMat m);

  const Lattice& lattice() const { return L_; }
  int dim() const { return L_.rank(); }
  const IntMat& matrix() const { return m_; }
  const Integer& at(int i, int j) const { return m_[i][j]; }
  bool is_zero() const;

  T2& operator+=(const T2& o);
  T2& operator-=(const T2& o);
  T2 operator-() const;
  bool operator==(const T2& o) const;
  std::string str() const;

 private:
  Lattice L_;
  IntMat m_;
};

// Skew-symmetric square: free part on e_i^e_j (i<j), 2-torsion bits on e_i^e_i.
class SW2 {
 public:
  explicit SW2(Lattice L);

  const Lattice& lattice() const { return L_; }
  int dim() const { return L_.rank(); }
  const Integer& upper(int i, int j) const { return up_[i][j]; }  // i < j
  bool diag(int i) const { return diag_[i] != 0; }
  void set_upper(int i, int j, Integer v) { up_[i][j] = std::move(v); }
  void set_diag(int i, bool v) { diag_[i] = v ? 1 : 0; }
  bool is_zero() const;
  bool free_part_zero() const;

  SW2& operator+=(const SW2& o);
  SW2& operator-=(const SW2& o);
  SW2 operator-() const;
  SW2 operator*(const Integer& k) const;
  bool operator==(const SW2& o) const;
  bool operator!=(const SW2& o) const { return !(*this == o); }
  std::string str() const;

 private:
  Lattice L_;
  IntMat up_;
  std::vector<uint8_t> diag_;
};

// Exterior square: coefficients on e_i^e_j, i<j.
class Ext2 {
 public:
  explicit Ext2(Lattice L);
  const Lattice& lattice() const { return L_; }
  const Integer& at(int i, int j) const { return up_[i][j]; }
  void set(int i, int j, Integer v) { up_[i][j] = std::move(v); }
  bool is_zero() const;
  bool operator==(const Ext2& o) const;
  std::string str() const;

 private:
  Lattice L_;
  IntMat up_;
};

class T2Mod2 {
 public:
  explicit T2Mod2(Lattice L);
  const Lattice& lattice() const { return L_; }
  int dim() const { return L_.rank(); }
  bool at(int i, int j) const { return bits_[i * dim() + j] != 0; }
  void set(int i, int j, bool v) { bits_[i * dim() + j] = v ? 1 : 0; }
  bool is_zero() const;
  T2Mod2& operator+=(const T2Mod2& o);
  bool operator==(const T2Mod2& o) const;
  bool operator!=(const T2Mod2& o) const { return !(*this == o); }
  std::vector<uint8_t> bits() const { return bits_; }
  std::string str() const;

 private:
  Lattice L_;
  std::vector<uint8_t> bits_;
};

class SW2Mod2 {
 public:
  explicit SW2Mod2(Lattice L);
  const Lattice& lattice() const { return L_; }
  int dim() const { return L_.rank(); }
  bool upper(int i, int j) const { return up_[i * dim() + j] != 0; }
  bool diag(int i) const { return diag_[i] != 0; }
  void set_upper(int i, int j, bool v) { up_[i * dim() + j] = v ? 1 : 0; }
  void set_diag(int i, bool v) { diag_[i] = v ? 1 : 0; }
  bool is_zero() const;
  SW2Mod2& operator+=(const SW2Mod2& o);
  bool operator==(const SW2Mod2& o) const;
  bool operator!=(const SW2Mod2& o) const { return !(*this == o); }
  // Coordinates in the F2 basis: upper (row-major, i<j) then diagonal.
  std::vector<uint8_t> bits() const;
  std::string str() const;

 private:
  Lattice L_;
  std::vector<uint8_t> up_;
  std::vector<uint8_t> diag_;
};

T2 operator+(T2 a, const T2& b);
T2 operator-(T2 a, const T2& b);
SW2 operator+(SW2 a, const SW2& b);
SW2 operator-(SW2 a, const SW2& b);
T2Mod2 operator+(T2Mod2 a, const T2Mod2& b);
SW2Mod2 operator+(SW2Mod2 a, const SW2Mod2& b);

T2 tensor(const Lattice& L, const GroundNum& a, const GroundNum& b);
T2 tensor_coords(const Lattice& L, const IntVec& a, const IntVec& b);
SW2 wedge(const Lattice& L, const GroundNum& a, const GroundNum& b);
// a^b for lattice coordinate vectors, without materializing the tensor.
SW2 wedge_coords(const Lattice& L, const IntVec& a, const IntVec& b);
void add_wedge_coords(SW2& acc, const IntVec& a, const IntVec& b);

SW2 project(const T2& t);
Ext2 to_exterior(const SW2& s);
T2Mod2 mod2(const T2& t);
SW2Mod2 mod2(const SW2& s);
// The projection T2 -> SW2 induced on mod-2 quotients.
SW2Mod2 project_mod2(const T2Mod2& t);

int f2_rank(std::vector<std::vector<uint8_t>> rows);
int f2_span_dim(const std::vector<T2Mod2>& xs);
int f2_span_dim(const std::vector<SW2Mod2>& xs);
int f2_span_dim(const std::vector<std::pair<T2Mod2, SW2Mod2>>& xs);

// Values expressed over L.rebased(U), where new coordinates are c' = U c.
T2 change_basis(const T2& x, const IntMat& U);
SW2 change_basis(const SW2& x, const IntMat& U);

}  // namespace ietab
