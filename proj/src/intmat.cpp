#include "quadlat/intmat.hpp"

#include <algorithm>
#include <sstream>

namespace quadlat {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::DegenerateLattice: return "DegenerateLattice";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::IndefiniteLattice: return "IndefiniteLattice";
    case ErrorKind::DefiniteLattice: return "DefiniteLattice";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::RankMismatch: return "RankMismatch";
    case ErrorKind::OddLattice: return "OddLattice";
    case ErrorKind::NotTwoElementary: return "NotTwoElementary";
    case ErrorKind::NotIsotropic: return "NotIsotropic";
    case ErrorKind::NotAnIsometry: return "NotAnIsometry";
    case ErrorKind::OrderCapExceeded: return "OrderCapExceeded";
    case ErrorKind::NonIntegralReflection: return "NonIntegralReflection";
    case ErrorKind::NotUnimodular: return "NotUnimodular";
    case ErrorKind::DiscActionNontrivial: return "DiscActionNontrivial";
    case ErrorKind::OddSquare: return "OddSquare";
    case ErrorKind::MissingU2: return "MissingU2";
    case ErrorKind::GramMismatch: return "GramMismatch";
    case ErrorKind::UnsupportedType: return "UnsupportedType";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::NonIntegralDual: return "NonIntegralDual";
    case ErrorKind::WrongSquare: return "WrongSquare";
    case ErrorKind::NotPrimitive: return "NotPrimitive";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::CheckFailed: return "CheckFailed";
    case ErrorKind::Internal: return "Internal";
  }
  return "Error";
}

IMat::IMat(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
  a_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols_)
      throw Error(ErrorKind::InvalidArgument, "ragged matrix literal");
    for (long x : r) a_.emplace_back(x);
  }
}

IMat IMat::identity(int n) {
  IMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IMat IMat::transposed() const {
  IMat t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

bool IMat::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = i + 1; j < cols_; ++j)
      if (at(i, j) != at(j, i)) return false;
  return true;
}

bool IMat::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Int& x) { return x == 0; });
}

bool IMat::is_identity() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (at(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

IMat IMat::row(int i) const {
  IMat r(1, cols_);
  for (int j = 0; j < cols_; ++j) r.at(0, j) = at(i, j);
  return r;
}

IVec IMat::row_vec(int i) const {
  IVec r(cols_);
  for (int j = 0; j < cols_; ++j) r[j] = at(i, j);
  return r;
}

void IMat::set_row(int i, const IVec& v) {
  for (int j = 0; j < cols_; ++j) at(i, j) = v[j];
}

IMat operator*(const IMat& x, const IMat& y) {
  if (x.cols_ != y.rows_) throw Error(ErrorKind::Internal, "matrix product shape");
  IMat z(x.rows_, y.cols_);
  for (int i = 0; i < x.rows_; ++i)
    for (int k = 0; k < x.cols_; ++k) {
      const Int& xik = x.at(i, k);
      if (xik == 0) continue;
      for (int j = 0; j < y.cols_; ++j) z.at(i, j) += xik * y.at(k, j);
    }
  return z;
}

IMat operator+(const IMat& x, const IMat& y) {
  IMat z(x.rows_, x.cols_);
  for (int i = 0; i < x.rows_ * x.cols_; ++i) z.a_[i] = x.a_[i] + y.a_[i];
  return z;
}

IMat operator-(const IMat& x, const IMat& y) {
  IMat z(x.rows_, x.cols_);
  for (int i = 0; i < x.rows_ * x.cols_; ++i) z.a_[i] = x.a_[i] - y.a_[i];
  return z;
}

IMat IMat::operator-() const {
  IMat z(rows_, cols_);
  for (int i = 0; i < rows_ * cols_; ++i) z.a_[i] = -a_[i];
  return z;
}

IMat IMat::scaled(const Int& n) const {
  IMat z(rows_, cols_);
  for (int i = 0; i < rows_ * cols_; ++i) z.a_[i] = a_[i] * n;
  return z;
}

IVec IMat::apply(const IVec& v) const {
  if (static_cast<int>(v.size()) != cols_)
    throw Error(ErrorKind::Internal, "matrix apply shape");
  IVec r(rows_, Int(0));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
  return r;
}

std::string IMat::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (int j = 0; j < cols_; ++j) os << (j ? "," : "") << at(i, j).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

QMat::QMat(const IMat& m) : rows_(m.rows()), cols_(m.cols()), a_(rows_ * cols_) {
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) at(i, j) = Rat(m.at(i, j));
}

QMat QMat::identity(int n) {
  QMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

QMat QMat::transposed() const {
  QMat t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

QMat operator*(const QMat& x, const QMat& y) {
  if (x.cols_ != y.rows_) throw Error(ErrorKind::Internal, "matrix product shape");
  QMat z(x.rows_, y.cols_);
  for (int i = 0; i < x.rows_; ++i)
    for (int k = 0; k < x.cols_; ++k) {
      const Rat& xik = x.at(i, k);
      if (xik == 0) continue;
      for (int j = 0; j < y.cols_; ++j) z.at(i, j) += xik * y.at(k, j);
    }
  return z;
}

QVec QMat::apply(const QVec& v) const {
  QVec r(rows_, Rat(0));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
  return r;
}

bool QMat::is_integral() const {
  for (const Rat& x : a_)
    if (x.get_den() != 1) return false;
  return true;
}

IMat QMat::to_integral() const {
  IMat m(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      const Rat& x = at(i, j);
      if (x.get_den() != 1)
        throw Error(ErrorKind::Internal, "matrix is not integral");
      m.at(i, j) = x.get_num();
    }
  return m;
}

std::string QMat::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (int j = 0; j < cols_; ++j) os << (j ? "," : "") << at(i, j).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

Int dot(const IVec& x, const IVec& y) {
  Int s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

bool is_zero(const IVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

Int content(const IVec& v) {
  Int g = 0;
  for (const Int& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

IVec add(const IVec& x, const IVec& y) {
  IVec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
  return r;
}

IVec sub(const IVec& x, const IVec& y) {
  IVec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
  return r;
}

IVec scale(const IVec& x, const Int& c) {
  IVec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] * c;
  return r;
}

IVec neg(const IVec& x) {
  IVec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = -x[i];
  return r;
}

bool lex_less(const IVec& x, const IVec& y) {
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (x[i] != y[i]) return x[i] < y[i];
  }
  return x.size() < y.size();
}

std::string to_string(const IVec& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
  os << ")";
  return os.str();
}

Int det(const IMat& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::Internal, "det of non-square");
  int n = m.rows();
  if (n == 0) return 1;
  IMat a = m;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a.at(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (a.at(i, k) != 0) { p = i; break; }
      if (p < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        Int t = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
        mpz_divexact(a.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a.at(i, k) = 0;
    }
    prev = a.at(k, k);
  }
  return sign > 0 ? a.at(n - 1, n - 1) : Int(-a.at(n - 1, n - 1));
}

QMat inverse(const QMat& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::Internal, "inverse of non-square");
  int n = m.rows();
  QMat a = m;
  QMat inv = QMat::identity(n);
  for (int k = 0; k < n; ++k) {
    int p = -1;
    for (int i = k; i < n; ++i)
      if (a.at(i, k) != 0) { p = i; break; }
    if (p < 0) throw Error(ErrorKind::Internal, "singular matrix");
    if (p != k)
      for (int j = 0; j < n; ++j) {
        std::swap(a.at(k, j), a.at(p, j));
        std::swap(inv.at(k, j), inv.at(p, j));
      }
    Rat piv = a.at(k, k);
    for (int j = 0; j < n; ++j) {
      a.at(k, j) /= piv;
      inv.at(k, j) /= piv;
    }
    for (int i = 0; i < n; ++i) {
      if (i == k || a.at(i, k) == 0) continue;
      Rat f = a.at(i, k);
      for (int j = 0; j < n; ++j) {
        a.at(i, j) -= f * a.at(k, j);
        inv.at(i, j) -= f * inv.at(k, j);
      }
    }
  }
  return inv;
}

int rank(const IMat& m) { return hnf(m).rows(); }

IMat hnf(const IMat& m) {
  int rows = m.rows(), cols = m.cols();
  std::vector<IVec> w;
  w.reserve(rows);
  for (int i = 0; i < rows; ++i) w.push_back(m.row_vec(i));

  int r = 0;  // rows fixed so far
  for (int c = 0; c < cols && r < static_cast<int>(w.size()); ++c) {
    // gcd out column c below row r
    int p = -1;
    for (int i = r; i < static_cast<int>(w.size()); ++i)
      if (w[i][c] != 0) { p = i; break; }
    if (p < 0) continue;
    std::swap(w[r], w[p]);
    bool again = true;
    while (again) {
      again = false;
      for (int i = r + 1; i < static_cast<int>(w.size()); ++i) {
        if (w[i][c] == 0) continue;
        Int q = w[i][c] / w[r][c];  // truncated division
        if (q != 0) w[i] = sub(w[i], scale(w[r], q));
        if (w[i][c] != 0) {
          std::swap(w[r], w[i]);
          again = true;
        }
      }
    }
    if (w[r][c] < 0) w[r] = neg(w[r]);
    // reduce entries above the pivot
    for (int i = 0; i < r; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), w[i][c].get_mpz_t(), w[r][c].get_mpz_t());
      if (q != 0) w[i] = sub(w[i], scale(w[r], q));
    }
    ++r;
  }
  IMat h(r, cols);
  for (int i = 0; i < r; ++i) h.set_row(i, w[i]);
  return h;
}

namespace {

struct SnfWork {
  IMat a, u, v;

  void swap_rows(int i, int j) {
    for (int c = 0; c < a.cols(); ++c) std::swap(a.at(i, c), a.at(j, c));
    for (int c = 0; c < u.cols(); ++c) std::swap(u.at(i, c), u.at(j, c));
  }
  void swap_cols(int i, int j) {
    for (int r = 0; r < a.rows(); ++r) std::swap(a.at(r, i), a.at(r, j));
    for (int r = 0; r < v.rows(); ++r) std::swap(v.at(r, i), v.at(r, j));
  }
  void add_row(int dst, int src, const Int& c) {  // row dst += c * row src
    for (int j = 0; j < a.cols(); ++j) a.at(dst, j) += c * a.at(src, j);
    for (int j = 0; j < u.cols(); ++j) u.at(dst, j) += c * u.at(src, j);
  }
  void add_col(int dst, int src, const Int& c) {
    for (int i = 0; i < a.rows(); ++i) a.at(i, dst) += c * a.at(i, src);
    for (int i = 0; i < v.rows(); ++i) v.at(i, dst) += c * v.at(i, src);
  }
  void negate_row(int i) {
    for (int j = 0; j < a.cols(); ++j) a.at(i, j) = -a.at(i, j);
    for (int j = 0; j < u.cols(); ++j) u.at(i, j) = -u.at(i, j);
  }
};

}  // namespace

SnfResult snf(const IMat& m) {
  int rows = m.rows(), cols = m.cols();
  SnfWork w{m, IMat::identity(rows), IMat::identity(cols)};
  int n = std::min(rows, cols);

  for (int k = 0; k < n; ++k) {
    // find a nonzero pivot of minimal absolute value in the trailing block
    for (;;) {
      int pi = -1, pj = -1;
      Int best;
      for (int i = k; i < rows; ++i)
        for (int j = k; j < cols; ++j) {
          const Int& x = w.a.at(i, j);
          if (x == 0) continue;
          Int ax = abs(x);
          if (pi < 0 || ax < best) { best = ax; pi = i; pj = j; }
        }
      if (pi < 0) goto divisibility;  // trailing block all zero
      if (pi != k) w.swap_rows(k, pi);
      if (pj != k) w.swap_cols(k, pj);
      if (w.a.at(k, k) < 0) w.negate_row(k);

      bool clean = true;
      for (int i = k + 1; i < rows; ++i) {
        if (w.a.at(i, k) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), w.a.at(i, k).get_mpz_t(), w.a.at(k, k).get_mpz_t());
        w.add_row(i, k, -q);
        if (w.a.at(i, k) != 0) clean = false;
      }
      for (int j = k + 1; j < cols; ++j) {
        if (w.a.at(k, j) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), w.a.at(k, j).get_mpz_t(), w.a.at(k, k).get_mpz_t());
        w.add_col(j, k, -q);
        if (w.a.at(k, j) != 0) clean = false;
      }
      if (!clean) continue;

      // pivot must divide every entry of the trailing block
      bool divides = true;
      for (int i = k + 1; i < rows && divides; ++i)
        for (int j = k + 1; j < cols && divides; ++j)
          if (w.a.at(i, j) % w.a.at(k, k) != 0) {
            w.add_row(k, i, 1);
            divides = false;
          }
      if (divides) break;
    }
  }

divisibility:
  SnfResult r{w.a, w.u, w.v};
  return r;
}

IMat kernel_int(const IMat& m) {
  SnfResult s = snf(m);
  int n = m.cols();
  int rk = 0;
  for (int i = 0; i < std::min(m.rows(), n); ++i)
    if (s.d.at(i, i) != 0) ++rk;
  IMat k(n - rk, n);
  for (int j = rk; j < n; ++j)
    for (int i = 0; i < n; ++i) k.at(j - rk, i) = s.v.at(i, j);
  return hnf(k);
}

bool solve(const QMat& m, const QVec& b, QVec& out) {
  int rows = m.rows(), cols = m.cols();
  QMat a(rows, cols + 1);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) a.at(i, j) = m.at(i, j);
    a.at(i, cols) = b[i];
  }
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (a.at(i, c) != 0) { p = i; break; }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j <= cols; ++j) std::swap(a.at(r, j), a.at(p, j));
    Rat piv = a.at(r, c);
    for (int j = 0; j <= cols; ++j) a.at(r, j) /= piv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || a.at(i, c) == 0) continue;
      Rat f = a.at(i, c);
      for (int j = 0; j <= cols; ++j) a.at(i, j) -= f * a.at(r, j);
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (int i = r; i < rows; ++i)
    if (a.at(i, cols) != 0) return false;
  out.assign(cols, Rat(0));
  for (int i = 0; i < r; ++i) out[pivot_col[i]] = a.at(i, cols);
  return true;
}

}  // namespace quadlat
