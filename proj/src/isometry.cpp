#include "quadlat/isometry.hpp"

namespace quadlat {

const char* disc_action_name(DiscActionKind k) {
  switch (k) {
    case DiscActionKind::Trivial: return "trivial";
    case DiscActionKind::MinusIdentity: return "minus-identity";
    case DiscActionKind::Other: return "other";
  }
  return "?";
}

Isometry make_isometry(const Lattice& l, IMat p, long order_cap) {
  int n = l.rank();
  if (p.rows() != n || p.cols() != n)
    throw Error(ErrorKind::InvalidArgument, "isometry matrix has wrong size");
  if (!(p.transposed() * l.gram() * p == l.gram()))
    throw Error(ErrorKind::NotAnIsometry, "matrix does not preserve the Gram form");
  IMat q = p;
  long order = 1;
  while (!q.is_identity()) {
    q = q * p;
    if (++order > order_cap)
      throw Error(ErrorKind::OrderCapExceeded,
                  "order exceeds cap " + std::to_string(order_cap));
  }
  return Isometry(l, std::move(p), order);
}

namespace {

// 2 (x, v) / v^2 * v as a rational rank-1 update; throws if non-integral.
IMat reflection_matrix(const Lattice& l, const IVec& v) {
  if (is_zero(v)) throw Error(ErrorKind::ZeroVector, "reflection in 0");
  Int vv = l.norm(v);
  if (vv == 0)
    throw Error(ErrorKind::NonIntegralReflection, "reflection in an isotropic vector");
  int n = l.rank();
  IVec gv = l.gram().apply(v);
  IMat r = IMat::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rat upd = Rat(2 * v[i] * gv[j]) / Rat(vv);
      if (upd.get_den() != 1)
        throw Error(ErrorKind::NonIntegralReflection,
                    "2(x,v)/v^2 is not integral on this lattice");
      r.at(i, j) -= upd.get_num();
    }
  return r;
}

}  // namespace

Isometry reflection(const Lattice& l, const IVec& v) {
  return make_isometry(l, reflection_matrix(l, v));
}

Isometry negated_reflection(const Lattice& l, const IVec& v) {
  return make_isometry(l, -reflection_matrix(l, v));
}

std::pair<Sublattice, Sublattice> invariant_and_coinvariant(
    const Lattice& l, const std::vector<Isometry>& gens) {
  int n = l.rank();
  for (const Isometry& g : gens)
    if (!(g.lattice() == l))
      throw Error(ErrorKind::InvalidArgument, "isometry of a different lattice");
  IMat stack(static_cast<int>(gens.size()) * n, n);
  for (std::size_t k = 0; k < gens.size(); ++k) {
    IMat d = gens[k].matrix() - IMat::identity(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        stack.at(static_cast<int>(k) * n + i, j) = d.at(i, j);
  }
  IMat fixed = gens.empty() ? IMat::identity(n) : kernel_int(stack);
  Sublattice t(l, fixed);
  Sublattice s = orthogonal_complement(t);
  return {t, s};
}

DiscAction disc_action(const Lattice& l, const Isometry& g) {
  FiniteQuadraticForm a = discriminant_form(l);
  DiscAction act;
  act.classification = DiscActionKind::Trivial;
  int k = a.ngens();
  if (k == 0) return act;
  QMat p(g.matrix());
  bool all_id = true, all_neg = true;
  for (int i = 0; i < k; ++i) {
    QVec lift(l.rank());
    for (int j = 0; j < l.rank(); ++j) lift[j] = a.lifts.at(i, j);
    IVec c = a.coords_of_dual(p.apply(lift));
    IVec unit(k, Int(0));
    unit[i] = 1;
    if (!(c == unit)) all_id = false;
    if (!(c == a.negate(unit))) all_neg = false;
    act.images.push_back(c);
  }
  act.classification = all_id     ? DiscActionKind::Trivial
                       : all_neg ? DiscActionKind::MinusIdentity
                                 : DiscActionKind::Other;
  return act;
}

std::vector<Isometry> extend_to_unimodular(const Sublattice& m,
                                           const std::vector<Isometry>& gens) {
  const Lattice& l = m.ambient();
  if (!l.unimodular())
    throw Error(ErrorKind::NotUnimodular, "ambient lattice is not unimodular");
  if (!m.primitive())
    throw Error(ErrorKind::NotPrimitive, "sublattice is not primitive");
  Lattice ml = m.lattice();
  Sublattice comp = orthogonal_complement(m);

  int n = l.rank(), r = m.rank();
  IMat bt(n, n);  // columns: basis of M then basis of M^perp
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < n; ++j) bt.at(j, i) = m.basis().at(i, j);
  for (int i = 0; i < n - r; ++i)
    for (int j = 0; j < n; ++j) bt.at(j, r + i) = comp.basis().at(i, j);
  QMat btq(bt);
  QMat btq_inv = inverse(btq);

  std::vector<Isometry> out;
  for (const Isometry& g : gens) {
    make_isometry(ml, g.matrix());  // validates against M's Gram
    if (disc_action(ml, g).classification != DiscActionKind::Trivial)
      throw Error(ErrorKind::DiscActionNontrivial,
                  "isometry acts nontrivially on the discriminant of M");
    QMat blk = QMat::identity(n);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) blk.at(i, j) = Rat(g.matrix().at(i, j));
    QMat f = btq * blk * btq_inv;
    if (!f.is_integral())
      throw Error(ErrorKind::Internal, "extension is not integral");
    out.push_back(make_isometry(l, f.to_integral(), std::max(120L, g.order())));
  }
  return out;
}

}  // namespace quadlat
