#include "quadlat/lattice.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace quadlat {

namespace {

IMat restrict_gram(const IMat& basis, const IMat& gram) {
  return basis * gram * basis.transposed();
}

Int floor_rat(const Rat& r) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

Int ceil_rat(const Rat& r) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

// smallest integer u >= 0 with u >= sqrt(r), for r >= 0
Int isqrt_upper(const Rat& r) {
  Int c = ceil_rat(r);
  Int s;
  mpz_sqrt(s.get_mpz_t(), c.get_mpz_t());
  if (s * s < c) ++s;
  return s;
}

}  // namespace

Lattice Lattice::from_gram(IMat gram, bool allow_degenerate) {
  std::vector<SummandTag> tags;
  if (gram.rows() > 0)
    tags.push_back({"gram", Int(1), 0, gram.rows()});
  return from_gram(std::move(gram), std::move(tags), allow_degenerate);
}

Lattice Lattice::from_gram(IMat gram, std::vector<SummandTag> tags,
                           bool allow_degenerate) {
  if (gram.rows() != gram.cols())
    throw Error(ErrorKind::InvalidArgument, "gram matrix must be square");
  if (!gram.is_symmetric())
    throw Error(ErrorKind::InvalidArgument, "gram matrix must be symmetric");
  Lattice l;
  l.det_ = quadlat::det(gram);
  if (l.det_ == 0 && !allow_degenerate)
    throw Error(ErrorKind::DegenerateLattice, "gram matrix has determinant 0");
  l.even_ = true;
  for (int i = 0; i < gram.rows(); ++i)
    if (gram.at(i, i) % 2 != 0) { l.even_ = false; break; }
  l.gram_ = std::move(gram);
  l.tags_ = std::move(tags);
  return l;
}

// Symmetric elimination over Q. A zero diagonal with a nonzero row is fixed
// by the congruence e_i -> e_i + e_j, which makes the diagonal entry 2*a_ij.
Signature Lattice::signature() const {
  int n = rank();
  QMat a(gram_);
  Signature sig;
  for (int k = 0; k < n; ++k) {
    int p = -1;
    for (int i = k; i < n; ++i)
      if (a.at(i, i) != 0) { p = i; break; }
    if (p < 0) {
      int pi = -1, pj = -1;
      for (int i = k; i < n && pi < 0; ++i)
        for (int j = i + 1; j < n; ++j)
          if (a.at(i, j) != 0) { pi = i; pj = j; break; }
      if (pi < 0) break;  // radical: the rest of the form is zero
      for (int c = 0; c < n; ++c) a.at(pi, c) += a.at(pj, c);
      for (int r = 0; r < n; ++r) a.at(r, pi) += a.at(r, pj);
      p = pi;
    }
    if (p != k) {
      for (int c = 0; c < n; ++c) std::swap(a.at(p, c), a.at(k, c));
      for (int r = 0; r < n; ++r) std::swap(a.at(r, p), a.at(r, k));
    }
    Rat piv = a.at(k, k);
    if (piv > 0) ++sig.positive; else ++sig.negative;
    for (int i = k + 1; i < n; ++i) {
      if (a.at(i, k) == 0) continue;
      Rat f = a.at(i, k) / piv;
      for (int j = k; j < n; ++j) a.at(i, j) -= f * a.at(k, j);
      for (int j = k; j < n; ++j) a.at(j, i) = a.at(i, j);
    }
  }
  return sig;
}

bool Lattice::positive_definite() const {
  Signature s = signature();
  return s.negative == 0 && s.positive == rank();
}

bool Lattice::negative_definite() const {
  Signature s = signature();
  return s.positive == 0 && s.negative == rank();
}

bool Lattice::definite() const {
  return rank() == 0 || positive_definite() || negative_definite();
}

std::vector<Int> Lattice::disc_invariants() const {
  SnfResult s = snf(gram_);
  std::vector<Int> inv;
  for (int i = 0; i < rank(); ++i) {
    Int d = abs(s.d.at(i, i));
    if (d > 1) inv.push_back(d);
  }
  return inv;
}

Int Lattice::pair(const IVec& v, const IVec& w) const {
  return dot(v, gram_.apply(w));
}

Int Lattice::norm(const IVec& v) const { return pair(v, v); }

Sublattice::Sublattice(Lattice ambient, IMat basis)
    : ambient_(std::move(ambient)), basis_(std::move(basis)) {
  if (basis_.cols() != ambient_.rank())
    throw Error(ErrorKind::InvalidArgument, "sublattice basis has wrong width");
  SnfResult s = snf(basis_);
  int r = 0;
  bool saturated = true;
  for (int i = 0; i < std::min(basis_.rows(), basis_.cols()); ++i) {
    if (s.d.at(i, i) == 0) continue;
    ++r;
    if (abs(s.d.at(i, i)) != 1) saturated = false;
  }
  if (r != basis_.rows())
    throw Error(ErrorKind::InvalidArgument,
                "sublattice basis rows are linearly dependent");
  primitive_ = saturated;
}

Lattice Sublattice::lattice() const {
  return Lattice::from_gram(restrict_gram(basis_, ambient_.gram()),
                            /*allow_degenerate=*/true);
}

LatticeInfo lattice_info(const Lattice& l) {
  return LatticeInfo{l.rank(), l.signature(), l.det(), l.even(),
                     l.disc_invariants()};
}

Lattice direct_sum(const Lattice& l, const Lattice& m) {
  int n1 = l.rank(), n2 = m.rank();
  IMat g(n1 + n2, n1 + n2);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n1; ++j) g.at(i, j) = l.gram().at(i, j);
  for (int i = 0; i < n2; ++i)
    for (int j = 0; j < n2; ++j) g.at(n1 + i, n1 + j) = m.gram().at(i, j);
  std::vector<SummandTag> tags = l.tags();
  for (SummandTag t : m.tags()) {
    t.offset += n1;
    tags.push_back(t);
  }
  bool degenerate_ok = l.det() == 0 || m.det() == 0;
  return Lattice::from_gram(std::move(g), std::move(tags), degenerate_ok);
}

Lattice rescale(const Lattice& l, const Int& n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "rescale by zero");
  std::vector<SummandTag> tags = l.tags();
  for (auto& t : tags) t.scale *= n;
  return Lattice::from_gram(l.gram().scaled(n), std::move(tags),
                            l.det() == 0);
}

Sublattice saturate(const Sublattice& s) {
  const IMat& b = s.basis();
  int r = b.rows(), n = b.cols();
  SnfResult f = snf(b);
  IMat vinv = inverse(QMat(f.v)).to_integral();
  IMat sat(r, n);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < n; ++j) sat.at(i, j) = vinv.at(i, j);
  return Sublattice(s.ambient(), hnf(sat));
}

Sublattice orthogonal_complement(const Sublattice& s) {
  IMat pairings = s.basis() * s.ambient().gram();  // r x n
  IMat k = kernel_int(pairings);
  return Sublattice(s.ambient(), k);
}

Int divisibility(const Lattice& l, const IVec& v) {
  if (is_zero(v)) throw Error(ErrorKind::ZeroVector, "divisibility of 0");
  return content(l.gram().apply(v));
}

namespace {

struct NormEnum {
  const QMat* lmat;  // unit lower triangular
  const QVec* diag;  // positive pivots
  int n;
  long cap;
  std::vector<Int> x;
  std::vector<IVec>* out;

  void run(int i, const Rat& budget) {
    if (i < 0) {
      if (budget == 0) {
        if (static_cast<long>(out->size()) >= cap)
          throw Error(ErrorKind::CapExceeded, "short vector cap exceeded");
        out->push_back(IVec(x.begin(), x.end()));
      }
      return;
    }
    Rat c(0);  // offset sum_{j>i} L_ji x_j
    for (int j = i + 1; j < n; ++j) c += lmat->at(j, i) * Rat(x[j]);
    const Rat& d = (*diag)[i];
    Rat radius2 = budget / d;
    Int s = isqrt_upper(radius2);
    Int lo = ceil_rat(-c) - s - 1;
    Int hi = floor_rat(-c) + s + 1;
    auto over = [&](const Int& t) {
      Rat u = Rat(t) + c;
      return d * u * u > budget;
    };
    while (lo <= hi && over(lo)) ++lo;
    while (lo <= hi && over(hi)) --hi;
    for (Int t = lo; t <= hi; ++t) {
      Rat u = Rat(t) + c;
      x[i] = t;
      run(i - 1, budget - d * u * u);
    }
  }
};

}  // namespace

std::vector<IVec> vectors_of_norm(const Lattice& l, const Int& n, long cap) {
  if (!l.definite())
    throw Error(ErrorKind::IndefiniteLattice, "short vectors need a definite lattice");
  int r = l.rank();
  if (r == 0) return {};
  bool negdef = l.negative_definite();
  Int target = negdef ? Int(-n) : n;
  if (target < 0)
    throw Error(ErrorKind::InvalidArgument, "norm has the wrong sign for this lattice");
  if (target == 0) return {};

  QMat a(negdef ? l.gram().scaled(-1) : l.gram());
  QMat lower = QMat::identity(r);
  QVec diag(r);
  for (int k = 0; k < r; ++k) {
    diag[k] = a.at(k, k);
    for (int i = k + 1; i < r; ++i) {
      Rat f = a.at(i, k) / diag[k];
      lower.at(i, k) = f;
      for (int j = k; j < r; ++j) a.at(i, j) -= f * a.at(k, j);
      for (int j = k; j < r; ++j) a.at(j, i) = a.at(i, j);
    }
  }

  std::vector<IVec> out;
  NormEnum e{&lower, &diag, r, cap, std::vector<Int>(r, Int(0)), &out};
  e.run(r - 1, Rat(target));
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

Verdict Verdict::no(std::string cert, std::string detail) {
  Verdict v;
  v.state = VerdictState::No;
  v.certificate = std::move(cert);
  v.detail = std::move(detail);
  return v;
}

Verdict Verdict::unknown(Int bound) {
  Verdict v;
  v.state = VerdictState::Unknown;
  v.bound = std::move(bound);
  return v;
}

namespace {

// Values Q(x) mod m over (Z/m)^n; well defined since Q(x + m y) = Q(x) mod m.
std::set<Int> represented_mod(const IMat& g, const Int& m) {
  int n = g.rows();
  std::set<Int> vals;
  IVec x(n, Int(0));
  for (;;) {
    Int q = 0;
    for (int i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      for (int j = 0; j < n; ++j) {
        if (x[j] == 0) continue;
        q += g.at(i, j) * x[i] * x[j];
      }
    }
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), q.get_mpz_t(), m.get_mpz_t());
    vals.insert(r);
    int i = 0;
    while (i < n && ++x[i] == m) x[i++] = 0;
    if (i == n) break;
  }
  return vals;
}

// Backtracking isometry search between definite lattices: map the target's
// basis vectors to vectors of the right norms and pairings.
bool definite_witness(const Lattice& l, const Lattice& m, IMat& p) {
  int n = l.rank();
  std::map<Int, std::vector<IVec>> pools;
  for (int j = 0; j < n; ++j) {
    Int norm = m.gram().at(j, j);
    if (!pools.count(norm)) pools[norm] = vectors_of_norm(l, norm, 2000000);
  }
  std::vector<IVec> img(n);
  std::function<bool(int)> dfs = [&](int j) -> bool {
    if (j == n) return true;
    for (const IVec& cand : pools[m.gram().at(j, j)]) {
      bool ok = true;
      for (int i = 0; i < j && ok; ++i)
        if (l.pair(img[i], cand) != m.gram().at(i, j)) ok = false;
      if (!ok) continue;
      img[j] = cand;
      if (dfs(j + 1)) return true;
    }
    return false;
  };
  if (!dfs(0)) return false;
  p = IMat(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) p.at(i, j) = img[j][i];
  return true;
}

// --- binary indefinite forms ---

// Canonical data of one isotropic line: (d, c) where d = div of a primitive
// isotropic vector e on the line and c = w^2 mod 2d for any w completing e
// to a basis with (e, w) = d. Also returns that basis as matrix columns.
struct IsoLine {
  Int d, c;
  IMat basis;  // columns (e, w)
};

IsoLine line_data(const Lattice& l, Int ex, Int ey) {
  Int g;
  mpz_gcd(g.get_mpz_t(), ex.get_mpz_t(), ey.get_mpz_t());
  ex /= g; ey /= g;
  // complete (ex, ey) to a unimodular basis
  Int ux, uy, dgcd;
  mpz_gcdext(dgcd.get_mpz_t(), ux.get_mpz_t(), uy.get_mpz_t(), ex.get_mpz_t(),
             ey.get_mpz_t());
  // ex*ux + ey*uy == 1, so (e, w0) with w0 = (-uy, ux) has det 1
  Int wx = -uy, wy = ux;
  IVec e{ex, ey}, w{wx, wy};
  Int d = l.pair(e, w);
  if (d < 0) { d = -d; w = neg(w); }
  // normalize w^2 into [0, 2d) by w -> w + t e
  Int c = l.norm(w);
  Int t;
  Int twod = 2 * d;
  mpz_fdiv_q(t.get_mpz_t(), c.get_mpz_t(), twod.get_mpz_t());
  w = sub(w, scale(e, t));
  c = l.norm(w);
  IMat b(2, 2);
  b.at(0, 0) = e[0]; b.at(1, 0) = e[1];
  b.at(0, 1) = w[0]; b.at(1, 1) = w[1];
  return IsoLine{d, c, b};
}

// The two isotropic lines of a rank-2 lattice with -det a perfect square.
std::vector<IsoLine> isotropic_lines(const Lattice& l) {
  const IMat& g = l.gram();
  Int a = g.at(0, 0), b = g.at(0, 1), c = g.at(1, 1);
  std::vector<IsoLine> lines;
  if (a == 0) {
    lines.push_back(line_data(l, 1, 0));
    // other line: 2 b x + c y = 0
    lines.push_back(line_data(l, c, -2 * b));
  } else {
    Int disc = b * b - a * c;  // = -det > 0, perfect square
    Int s;
    mpz_sqrt(s.get_mpz_t(), disc.get_mpz_t());
    lines.push_back(line_data(l, -b + s, a));
    lines.push_back(line_data(l, -b - s, a));
  }
  std::sort(lines.begin(), lines.end(), [](const IsoLine& x, const IsoLine& y) {
    return x.d != y.d ? x.d < y.d : x.c < y.c;
  });
  return lines;
}

// Gauss reduction cycle for indefinite binary forms of nonsquare positive
// discriminant, on the halved form (a/2, b, c/2). Transform matrices are
// accumulated so equivalences come with explicit witnesses.
struct BinForm {
  Int a, b, c;
  bool operator==(const BinForm&) const = default;
  bool operator<(const BinForm& o) const {
    if (a != o.a) return a < o.a;
    if (b != o.b) return b < o.b;
    return c < o.c;
  }
};

BinForm halved(const IMat& g) {
  return BinForm{g.at(0, 0) / 2, g.at(0, 1), g.at(1, 1) / 2};
}

Int form_disc(const BinForm& f) { return f.b * f.b - 4 * f.a * f.c; }

bool is_reduced(const BinForm& f, const Int& s) {
  // |sqrt(D) - 2|a|| < b < sqrt(D), with s = floor(sqrt(D)), D nonsquare
  if (f.b <= 0 || f.b > s) return false;
  Int two_abs_a = 2 * abs(f.a);
  return two_abs_a > s - f.b && two_abs_a <= s + f.b;
}

// One rho step: (a,b,c) -> (c, b', *) with b' = 2|c| m - b placed in the
// standard window; returns the applied column transform.
BinForm rho(const BinForm& f, const Int& s, IMat& accum) {
  Int ac = abs(f.c);
  Int lo, hi;  // window (lo, hi] for b'
  if (ac > s) { lo = -ac; hi = ac; }
  else { lo = s - 2 * ac; hi = s; }
  // b' === -b (mod 2|c|), b' in (lo, hi]
  Int mod = 2 * ac;
  Int base = -f.b;
  Int k;
  Int num = hi - base;
  mpz_fdiv_q(k.get_mpz_t(), num.get_mpz_t(), mod.get_mpz_t());
  Int bp = base + k * mod;
  // m from b' = 2 c m - b
  Int m = (bp + f.b) / (2 * f.c);
  IMat t(2, 2);
  t.at(0, 0) = 0; t.at(0, 1) = -1;
  t.at(1, 0) = 1; t.at(1, 1) = m;
  accum = accum * t;
  Int ap = f.c;
  Int cp = (bp * bp - form_disc(f)) / (4 * f.c);
  return BinForm{ap, bp, cp};
}

BinForm reduce_form(BinForm f, const Int& s, IMat& accum) {
  int guard = 0;
  while (!is_reduced(f, s)) {
    f = rho(f, s, accum);
    if (++guard > 100000)
      throw Error(ErrorKind::Internal, "binary form reduction did not settle");
  }
  return f;
}

// Proper (SL2) equivalence of nonsquare-disc indefinite forms via cycle
// walking; on success p satisfies p^T gl p = gm.
bool cycle_equivalent(const IMat& gl, const IMat& gm, IMat& p) {
  BinForm fl = halved(gl), fm = halved(gm);
  Int d = form_disc(fl);
  if (d != form_disc(fm)) return false;
  Int s;
  mpz_sqrt(s.get_mpz_t(), d.get_mpz_t());
  IMat ml = IMat::identity(2), mm = IMat::identity(2);
  BinForm rl = reduce_form(fl, s, ml);
  BinForm rm = reduce_form(fm, s, mm);
  BinForm cur = rl;
  IMat walk = ml;
  int guard = 0;
  do {
    if (cur == rm) {
      p = walk * inverse(QMat(mm)).to_integral();
      return true;
    }
    cur = rho(cur, s, walk);
    if (++guard > 1000000)
      throw Error(ErrorKind::Internal, "binary form cycle did not close");
  } while (!(cur == rl));
  return false;
}

Verdict binary_indefinite(const Lattice& l, const Lattice& m) {
  Int negdet = -l.det();
  Int s;
  mpz_sqrt(s.get_mpz_t(), negdet.get_mpz_t());
  if (s * s == negdet) {
    // isotropic case: classify by the two isotropic lines
    auto ll = isotropic_lines(l), lm = isotropic_lines(m);
    bool same = ll[0].d == lm[0].d && ll[0].c == lm[0].c &&
                ll[1].d == lm[1].d && ll[1].c == lm[1].c;
    if (!same) {
      std::ostringstream os;
      os << "isotropic-line data (" << ll[0].d << "," << ll[0].c << ")/("
         << ll[1].d << "," << ll[1].c << ") vs (" << lm[0].d << "," << lm[0].c
         << ")/(" << lm[1].d << "," << lm[1].c << ")";
      return Verdict::no("canonical-form", os.str());
    }
    Verdict v = Verdict::yes();
    v.base_change = ll[0].basis * inverse(QMat(lm[0].basis)).to_integral();
    return v;
  }
  IMat p;
  if (cycle_equivalent(l.gram(), m.gram(), p)) {
    Verdict v = Verdict::yes();
    v.base_change = p;
    return v;
  }
  // improper transforms: retry against the conjugate by diag(1, -1)
  IMat flip(2, 2);
  flip.at(0, 0) = 1; flip.at(1, 1) = -1;
  IMat gm_f = flip * m.gram() * flip;
  if (cycle_equivalent(l.gram(), gm_f, p)) {
    Verdict v = Verdict::yes();
    v.base_change = p * flip;
    return v;
  }
  return Verdict::no("canonical-form", "distinct reduced cycles");
}

bool next_permutation_signed(std::vector<int>& perm, std::vector<int>& signs) {
  int n = static_cast<int>(perm.size());
  for (int i = 0; i < n; ++i) {
    if (signs[i] == 1) { signs[i] = -1; return true; }
    signs[i] = 1;
  }
  return std::next_permutation(perm.begin(), perm.end());
}

}  // namespace

Verdict is_isometric_small(const Lattice& l, const Lattice& m, long bound) {
  if (l.rank() != m.rank())
    throw Error(ErrorKind::RankMismatch, "lattices have different ranks");
  int n = l.rank();
  if (n == 0) {
    Verdict v = Verdict::yes();
    v.base_change = IMat(0, 0);
    return v;
  }
  if (l.even() != m.even()) return Verdict::no("parity");
  if (l.det() != m.det())
    return Verdict::no("determinant",
                       l.det().get_str() + " vs " + m.det().get_str());
  if (!(l.signature() == m.signature())) return Verdict::no("signature");
  if (l.disc_invariants() != m.disc_invariants())
    return Verdict::no("disc-form", "group invariant factors differ");

  if (n == 1) {
    Verdict v = Verdict::yes();
    v.base_change = IMat::identity(1);
    return v;
  }

  for (long mm : {3L, 4L, 5L, 7L, 8L, 9L, 16L}) {
    double size = 1;
    for (int i = 0; i < n; ++i) size *= static_cast<double>(mm);
    if (size > 200000) continue;
    Int modulus(mm);
    if (represented_mod(l.gram(), modulus) != represented_mod(m.gram(), modulus)) {
      return Verdict::no("represented-values", "mod " + std::to_string(mm));
    }
  }

  if (l.definite()) {
    IMat p;
    if (definite_witness(l, m, p)) {
      Verdict v = Verdict::yes();
      v.base_change = p;
      return v;
    }
    return Verdict::no("definite-search", "exhaustive short-vector backtracking");
  }

  if (n == 2) return binary_indefinite(l, m);

  // indefinite rank >= 3: signed permutations only, else Unknown
  if (n <= 6) {
    std::vector<int> perm(n), signs(n, 1);
    for (int i = 0; i < n; ++i) perm[i] = i;
    do {
      IMat p(n, n);
      for (int j = 0; j < n; ++j) p.at(perm[j], j) = signs[j];
      if (p.transposed() * l.gram() * p == m.gram()) {
        Verdict v = Verdict::yes();
        v.base_change = p;
        return v;
      }
    } while (next_permutation_signed(perm, signs));
  }
  return Verdict::unknown(Int(bound));
}

}  // namespace quadlat
