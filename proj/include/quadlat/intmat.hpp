#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <string>
#include <vector>

#include "quadlat/error.hpp"

namespace quadlat {

using Int = mpz_class;
using Rat = mpq_class;
using IVec = std::vector<Int>;
using QVec = std::vector<Rat>;

// Dense row-major matrix over Z. Small sizes only (rank <= ~30), so all
// algorithms below favour exactness and clarity over asymptotics.
class IMat {
public:
  IMat() : rows_(0), cols_(0) {}
  IMat(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols, Int(0)) {}
  IMat(std::initializer_list<std::initializer_list<long>> rows);

  static IMat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Int& at(int i, int j) { return a_[i * cols_ + j]; }
  const Int& at(int i, int j) const { return a_[i * cols_ + j]; }

  bool operator==(const IMat& o) const = default;

  IMat transposed() const;
  bool is_symmetric() const;
  bool is_zero() const;
  bool is_identity() const;

  IMat row(int i) const;
  IVec row_vec(int i) const;
  void set_row(int i, const IVec& v);

  friend IMat operator*(const IMat& x, const IMat& y);
  friend IMat operator+(const IMat& x, const IMat& y);
  friend IMat operator-(const IMat& x, const IMat& y);
  IMat operator-() const;
  IMat scaled(const Int& n) const;

  IVec apply(const IVec& v) const;  // matrix * column vector

  std::string to_string() const;

private:
  int rows_, cols_;
  std::vector<Int> a_;
};

// Dense matrix over Q (exact rationals, always canonicalized).
class QMat {
public:
  QMat() : rows_(0), cols_(0) {}
  QMat(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}
  explicit QMat(const IMat& m);

  static QMat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rat& at(int i, int j) { return a_[i * cols_ + j]; }
  const Rat& at(int i, int j) const { return a_[i * cols_ + j]; }

  bool operator==(const QMat& o) const = default;

  QMat transposed() const;
  friend QMat operator*(const QMat& x, const QMat& y);
  QVec apply(const QVec& v) const;

  bool is_integral() const;
  IMat to_integral() const;  // throws Internal if not integral

  std::string to_string() const;

private:
  int rows_, cols_;
  std::vector<Rat> a_;
};

// --- vector helpers ---
Int dot(const IVec& x, const IVec& y);
bool is_zero(const IVec& v);
Int content(const IVec& v);  // gcd of entries, 0 for the zero vector
IVec add(const IVec& x, const IVec& y);
IVec sub(const IVec& x, const IVec& y);
IVec scale(const IVec& x, const Int& c);
IVec neg(const IVec& x);
// lexicographic comparison
bool lex_less(const IVec& x, const IVec& y);
std::string to_string(const IVec& v);

// --- exact linear algebra ---

// Determinant of a square integer matrix, fraction-free (Bareiss).
Int det(const IMat& m);

// Inverse of a square rational matrix; throws Internal if singular.
QMat inverse(const QMat& m);

// Rank over Q.
int rank(const IMat& m);

// Row Hermite normal form: returns a matrix with the same row span over Z,
// in row echelon form with positive pivots and reduced entries above them.
// Zero rows are dropped.
IMat hnf(const IMat& m);

struct SnfResult {
  IMat d;  // diagonal (rows x cols), d1 | d2 | ..., nonnegative
  IMat u;  // rows x rows unimodular
  IMat v;  // cols x cols unimodular, u * m * v == d
};

SnfResult snf(const IMat& m);

// Saturated basis (rows) of { x in Z^cols : m x = 0 }.
IMat kernel_int(const IMat& m);

// Solve m * x = b over Q; empty optional if no solution.
bool solve(const QMat& m, const QVec& b, QVec& out);

}  // namespace quadlat
