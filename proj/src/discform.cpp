#include "quadlat/discform.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace quadlat {

namespace {

Rat mod_reduce(Rat x, const Int& modulus) {
  // reduce into [0, modulus)
  Int num = x.get_num(), den = x.get_den();
  Int m = modulus * den;
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), num.get_mpz_t(), m.get_mpz_t());
  Rat y(r, den);
  y.canonicalize();
  return y;
}

std::string key_of(const std::vector<IVec>& elems) {
  std::ostringstream os;
  for (const IVec& e : elems) os << to_string(e) << ";";
  return os.str();
}

}  // namespace

Int FiniteQuadraticForm::order() const {
  Int n = 1;
  for (const Int& d : orders) n *= d;
  return n;
}

Int FiniteQuadraticForm::exponent() const {
  return orders.empty() ? Int(1) : orders.back();
}

IVec FiniteQuadraticForm::reduce(IVec x) const {
  for (int i = 0; i < ngens(); ++i)
    mpz_fdiv_r(x[i].get_mpz_t(), x[i].get_mpz_t(), orders[i].get_mpz_t());
  return x;
}

IVec FiniteQuadraticForm::add(const IVec& x, const IVec& y) const {
  return reduce(quadlat::add(x, y));
}

IVec FiniteQuadraticForm::negate(const IVec& x) const {
  return reduce(quadlat::neg(x));
}

Int FiniteQuadraticForm::element_order(const IVec& x) const {
  Int o = 1;
  for (int i = 0; i < ngens(); ++i) {
    Int g;
    mpz_gcd(g.get_mpz_t(), x[i].get_mpz_t(), orders[i].get_mpz_t());
    Int oi = orders[i] / g;
    mpz_lcm(o.get_mpz_t(), o.get_mpz_t(), oi.get_mpz_t());
  }
  return o;
}

Rat FiniteQuadraticForm::q_of(const IVec& x) const {
  Rat s(0);
  int k = ngens();
  for (int i = 0; i < k; ++i) {
    if (x[i] == 0) continue;
    s += Rat(x[i] * x[i]) * q[i];
    for (int j = i + 1; j < k; ++j)
      if (x[j] != 0) s += Rat(2 * x[i] * x[j]) * b.at(i, j);
  }
  return mod_reduce(s, 2);
}

Rat FiniteQuadraticForm::b_of(const IVec& x, const IVec& y) const {
  Rat s(0);
  int k = ngens();
  for (int i = 0; i < k; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < k; ++j)
      if (y[j] != 0) s += Rat(x[i] * y[j]) * b.at(i, j);
  }
  return mod_reduce(s, 1);
}

std::vector<IVec> FiniteQuadraticForm::elements(long cap) const {
  if (order() > cap)
    throw Error(ErrorKind::CapExceeded, "discriminant group larger than cap");
  int k = ngens();
  std::vector<IVec> out;
  IVec x(k, Int(0));
  for (;;) {
    out.push_back(x);
    int i = k - 1;
    while (i >= 0 && ++x[i] == orders[i]) x[i--] = 0;
    if (i < 0) break;
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

IVec FiniteQuadraticForm::coords_of_dual(const QVec& x) const {
  if (coord_rows.rows() != ngens())
    throw Error(ErrorKind::Internal, "form has no coordinate map");
  IVec c(ngens());
  for (int i = 0; i < ngens(); ++i) {
    Rat s(0);
    for (int j = 0; j < coord_rows.cols(); ++j)
      s += Rat(coord_rows.at(i, j)) * x[j];
    if (s.get_den() != 1)
      throw Error(ErrorKind::Internal, "vector is not in the dual lattice");
    c[i] = s.get_num();
  }
  return reduce(c);
}

QVec FiniteQuadraticForm::lift_of(const IVec& x) const {
  if (lifts.rows() != ngens())
    throw Error(ErrorKind::Internal, "form has no lifts");
  QVec r(lifts.cols(), Rat(0));
  for (int i = 0; i < ngens(); ++i)
    for (int j = 0; j < lifts.cols(); ++j)
      r[j] += Rat(x[i]) * lifts.at(i, j);
  return r;
}

bool DiscSubgroup::contains(const FiniteQuadraticForm&, const IVec& x) const {
  return std::binary_search(elems.begin(), elems.end(), x, lex_less);
}

DiscSubgroup subgroup_closure(const FiniteQuadraticForm& a,
                              const std::vector<IVec>& gens, long cap) {
  std::set<IVec, bool (*)(const IVec&, const IVec&)> seen(lex_less);
  std::vector<IVec> queue;
  IVec zero(a.ngens(), Int(0));
  seen.insert(zero);
  queue.push_back(zero);
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    for (const IVec& g : gens) {
      IVec nx = a.add(queue[qi], a.reduce(g));
      if (seen.insert(nx).second) {
        queue.push_back(nx);
        if (static_cast<long>(queue.size()) > cap)
          throw Error(ErrorKind::CapExceeded, "subgroup closure cap exceeded");
      }
    }
  }
  DiscSubgroup h;
  h.gens = gens;
  h.elems.assign(seen.begin(), seen.end());
  return h;
}

FiniteQuadraticForm discriminant_form(const Lattice& l) {
  if (!l.even()) throw Error(ErrorKind::OddLattice, "discriminant form needs an even lattice");
  if (l.degenerate())
    throw Error(ErrorKind::DegenerateLattice, "discriminant form needs nonzero determinant");
  int n = l.rank();
  SnfResult s = snf(l.gram());
  IMat vinv = inverse(QMat(s.v)).to_integral();

  FiniteQuadraticForm f;
  std::vector<int> kept;
  for (int i = 0; i < n; ++i) {
    Int d = abs(s.d.at(i, i));
    if (d > 1) {
      kept.push_back(i);
      f.orders.push_back(d);
    }
  }
  int k = static_cast<int>(kept.size());
  f.lifts = QMat(k, n);
  f.coord_rows = IMat(k, n);
  for (int a = 0; a < k; ++a) {
    int i = kept[a];
    for (int j = 0; j < n; ++j) {
      f.lifts.at(a, j) = Rat(s.v.at(j, i), f.orders[a]);
      f.lifts.at(a, j).canonicalize();
      f.coord_rows.at(a, j) = f.orders[a] * vinv.at(i, j);
    }
  }
  f.q.resize(k);
  f.b = QMat(k, k);
  QMat g(l.gram());
  for (int a = 0; a < k; ++a) {
    QVec ga(n, Rat(0));
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) ga[r] += g.at(r, c) * f.lifts.at(a, c);
    for (int bb = 0; bb < k; ++bb) {
      Rat pr(0);
      for (int r = 0; r < n; ++r) pr += f.lifts.at(bb, r) * ga[r];
      if (a == bb) f.q[a] = mod_reduce(pr, 2);
      f.b.at(a, bb) = mod_reduce(pr, 1);
    }
  }
  return f;
}

TwoElemInvariants two_elementary_invariants(const Lattice& l) {
  FiniteQuadraticForm f = discriminant_form(l);
  for (const Int& d : f.orders)
    if (d != 2)
      throw Error(ErrorKind::NotTwoElementary, "discriminant group is not (Z/2)^a");
  int a = f.ngens();
  if (a > 24) throw Error(ErrorKind::CapExceeded, "2-elementary scan too large");
  int delta = 0;
  for (const IVec& x : f.elements()) {
    Rat qx = f.q_of(x);
    if (qx.get_den() != 1) { delta = 1; break; }
  }
  return TwoElemInvariants{l.rank(), a, delta};
}

bool nikulin_equal(const Lattice& l, const Lattice& m) {
  TwoElemInvariants il = two_elementary_invariants(l);
  TwoElemInvariants im = two_elementary_invariants(m);
  if (l.definite() || m.definite())
    throw Error(ErrorKind::DefiniteLattice,
                "uniqueness of 2-elementary lattices needs indefinite signature");
  return il == im && l.signature() == m.signature();
}

std::vector<DiscSubgroup> isotropic_subgroups(const FiniteQuadraticForm& a,
                                              long cap) {
  if (a.order() > cap)
    throw Error(ErrorKind::CapExceeded, "discriminant group larger than cap");
  std::vector<IVec> isotropic;
  for (const IVec& x : a.elements(cap))
    if (a.q_of(x) == 0) isotropic.push_back(x);

  // grow subgroups by one isotropic generator at a time
  std::map<std::string, DiscSubgroup> found;
  IVec zero(a.ngens(), Int(0));
  DiscSubgroup triv;
  triv.elems.push_back(zero);
  found[key_of(triv.elems)] = triv;
  std::vector<DiscSubgroup> queue{triv};
  auto all_isotropic = [&](const DiscSubgroup& h) {
    for (const IVec& x : h.elems)
      if (a.q_of(x) != 0) return false;
    return true;
  };
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    DiscSubgroup cur = queue[qi];
    for (const IVec& x : isotropic) {
      if (cur.contains(a, x)) continue;
      std::vector<IVec> gens = cur.gens;
      gens.push_back(x);
      DiscSubgroup next = subgroup_closure(a, gens);
      std::string key = key_of(next.elems);
      if (found.count(key)) continue;
      if (!all_isotropic(next)) continue;
      found[key] = next;
      queue.push_back(next);
      if (found.size() > 100000)
        throw Error(ErrorKind::CapExceeded, "too many isotropic subgroups");
    }
  }
  std::vector<DiscSubgroup> out;
  for (auto& [k, h] : found) out.push_back(h);
  std::sort(out.begin(), out.end(), [](const DiscSubgroup& x, const DiscSubgroup& y) {
    if (x.elems.size() != y.elems.size()) return x.elems.size() < y.elems.size();
    for (std::size_t i = 0; i < x.elems.size(); ++i) {
      if (x.elems[i] != y.elems[i]) return lex_less(x.elems[i], y.elems[i]);
    }
    return false;
  });
  return out;
}

Overlattice overlattice_from_isotropic(const Lattice& l, const DiscSubgroup& h) {
  FiniteQuadraticForm a = discriminant_form(l);
  int n = l.rank();
  for (const IVec& x : h.elems)
    if (a.q_of(x) != 0)
      throw Error(ErrorKind::NotIsotropic, "subgroup is not isotropic");

  // stack lattice basis with lifted generators, clear denominators, HNF
  std::vector<QVec> lifted;
  for (const IVec& g : h.gens) lifted.push_back(a.lift_of(a.reduce(g)));
  Int den = 1;
  for (const QVec& v : lifted)
    for (const Rat& x : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den().get_mpz_t());
  IMat stack(n + static_cast<int>(lifted.size()), n);
  for (int i = 0; i < n; ++i) stack.at(i, i) = den;
  for (std::size_t r = 0; r < lifted.size(); ++r)
    for (int j = 0; j < n; ++j) {
      Rat x = lifted[r][j] * Rat(den);
      stack.at(n + static_cast<int>(r), j) = x.get_num();  // integral by choice of den
    }
  IMat hh = hnf(stack);
  if (hh.rows() != n) throw Error(ErrorKind::Internal, "overlattice basis rank drop");
  QMat basis(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      basis.at(i, j) = Rat(hh.at(i, j), den);
      basis.at(i, j).canonicalize();
    }

  QMat gq = basis * QMat(l.gram()) * basis.transposed();
  if (!gq.is_integral())
    throw Error(ErrorKind::NotIsotropic, "glued pairing is not integral");
  IMat gram = gq.to_integral();
  Lattice m = Lattice::from_gram(gram);
  if (!m.even())
    throw Error(ErrorKind::NotIsotropic, "glued lattice is not even");

  Int hsize = h.order();
  if (abs(l.det()) != abs(m.det()) * hsize * hsize)
    throw Error(ErrorKind::Internal, "overlattice index mismatch");

  // the discriminant form of the overlattice must match H^perp / H
  FiniteQuadraticForm fm = discriminant_form(m);
  FiniteQuadraticForm sub = subquotient_form(a, h);
  if (disc_forms_isomorphic(fm, sub) == Tristate::No)
    throw Error(ErrorKind::Internal, "overlattice discriminant form mismatch");

  return Overlattice{std::move(m), std::move(basis), hsize};
}

std::vector<GluingResult> primitive_gluings(const Lattice& t, const Lattice& w,
                                            std::optional<Int> torsion_exponent,
                                            long cap) {
  Lattice tw = direct_sum(t, w);
  FiniteQuadraticForm a = discriminant_form(tw);
  if (a.order() > cap)
    throw Error(ErrorKind::CapExceeded, "glue group larger than cap");
  int nt = t.rank();

  auto part_integral = [&](const IVec& x, bool t_part) {
    QVec lift = a.lift_of(x);
    int lo = t_part ? 0 : nt;
    int hi = t_part ? nt : static_cast<int>(lift.size());
    for (int i = lo; i < hi; ++i)
      if (lift[i].get_den() != 1) return false;
    return true;
  };

  std::vector<GluingResult> out;
  for (const DiscSubgroup& h : isotropic_subgroups(a, cap)) {
    // graph condition: no nonzero element lies over A_T or A_W alone
    bool graph = true;
    for (const IVec& x : h.elems) {
      if (is_zero(x)) continue;
      if (part_integral(x, true) || part_integral(x, false)) { graph = false; break; }
    }
    if (!graph) continue;
    Overlattice m = overlattice_from_isotropic(tw, h);
    if (torsion_exponent) {
      Int e = discriminant_form(m.lattice).exponent();
      if (*torsion_exponent % e != 0) continue;
    }
    out.push_back(GluingResult{m.lattice, m.basis, m.index});
  }
  return out;
}

FiniteQuadraticForm subquotient_form(const FiniteQuadraticForm& a,
                                     const DiscSubgroup& h, long cap) {
  int k = a.ngens();
  // orthogonal of H under b
  std::vector<IVec> perp;
  for (const IVec& x : a.elements(cap)) {
    bool ok = true;
    for (const IVec& g : h.gens)
      if (a.b_of(x, a.reduce(g)) != 0) { ok = false; break; }
    if (ok) perp.push_back(x);
  }

  // present H^perp / H: rows of relations diag(d) plus the subgroup
  IMat rel(k, k);
  for (int i = 0; i < k; ++i) rel.at(i, i) = a.orders[i];
  auto stack_rows = [&](const std::vector<IVec>& rows) {
    IMat m(static_cast<int>(rows.size()) + k, k);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (int j = 0; j < k; ++j) m.at(static_cast<int>(i), j) = rows[i][j];
    for (int i = 0; i < k; ++i)
      m.at(static_cast<int>(rows.size()) + i, i) = a.orders[i];
    return m;
  };
  IMat b1 = hnf(stack_rows(perp));      // k x k, full rank
  IMat b2 = hnf(stack_rows(h.elems));   // k x k, full rank
  QMat c = QMat(b2) * inverse(QMat(b1));
  IMat ci = c.to_integral();
  SnfResult s = snf(ci);
  IMat vinv = inverse(QMat(s.v)).to_integral();

  FiniteQuadraticForm f;
  std::vector<IVec> gens;
  for (int i = 0; i < k; ++i) {
    Int d = abs(s.d.at(i, i));
    if (d <= 1) continue;
    f.orders.push_back(d);
    // generator: row i of V^-1 mapped through b1, as coefficients over A
    IVec gen(k, Int(0));
    for (int j = 0; j < k; ++j)
      for (int c2 = 0; c2 < k; ++c2) gen[c2] += vinv.at(i, j) * b1.at(j, c2);
    gens.push_back(a.reduce(gen));
  }
  int kk = static_cast<int>(f.orders.size());
  f.q.resize(kk);
  f.b = QMat(kk, kk);
  for (int i = 0; i < kk; ++i) {
    f.q[i] = a.q_of(gens[i]);
    for (int j = 0; j < kk; ++j) f.b.at(i, j) = a.b_of(gens[i], gens[j]);
  }
  return f;
}

namespace {

std::multiset<Rat> q_multiset(const FiniteQuadraticForm& f, long cap) {
  std::multiset<Rat> m;
  for (const IVec& x : f.elements(cap)) m.insert(f.q_of(x));
  return m;
}

struct IsoSearch {
  const FiniteQuadraticForm *a, *b;
  std::vector<IVec> b_elements;
  long budget;
  std::vector<IVec> img;

  bool dfs(int i) {
    if (--budget < 0) throw Error(ErrorKind::CapExceeded, "budget");
    int k = a->ngens();
    if (i == k) {
      DiscSubgroup gen = subgroup_closure(*b, img);
      return gen.order() == b->order();
    }
    for (const IVec& cand : b_elements) {
      Int co = b->element_order(cand);
      if (a->orders[i] % co != 0) continue;
      if (b->q_of(cand) != a->q[i]) continue;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j)
        if (b->b_of(img[j], cand) != a->b.at(j, i)) ok = false;
      if (!ok) continue;
      img.push_back(cand);
      if (dfs(i + 1)) return true;
      img.pop_back();
    }
    return false;
  }
};

}  // namespace

Tristate disc_forms_isomorphic(const FiniteQuadraticForm& a,
                               const FiniteQuadraticForm& b, long node_budget) {
  if (a.orders != b.orders) return Tristate::No;
  long scan_cap = 20000;
  if (a.order() > scan_cap) return Tristate::Unknown;
  if (q_multiset(a, scan_cap) != q_multiset(b, scan_cap)) return Tristate::No;
  if (a.ngens() == 0) return Tristate::Yes;

  IsoSearch s{&a, &b, b.elements(scan_cap), node_budget, {}};
  try {
    return s.dfs(0) ? Tristate::Yes : Tristate::No;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::CapExceeded) return Tristate::Unknown;
    throw;
  }
}

}  // namespace quadlat
