#pragma once

#include <optional>
#include <vector>

#include "quadlat/lattice.hpp"

namespace quadlat {

// Finite quadratic form on a discriminant group A = L^dual / L, with values
// q in Q/2Z and bilinear values b in Q/Z. Generators follow the invariant
// factor decomposition d1 | d2 | ... (each > 1). Elements are coordinate
// tuples over the generators, reduced into [0, d_i).
class FiniteQuadraticForm {
public:
  std::vector<Int> orders;
  QVec q;      // q(g_i), reduced into [0, 2)
  QMat b;      // b(g_i, g_j), reduced into [0, 1)
  QMat lifts;  // optional: generator i as rational vector in lattice coords
  IMat coord_rows;  // optional: maps a dual vector to generator coordinates

  int ngens() const { return static_cast<int>(orders.size()); }
  Int order() const;
  Int exponent() const;  // 1 for the trivial group

  IVec reduce(IVec x) const;
  IVec add(const IVec& x, const IVec& y) const;
  IVec negate(const IVec& x) const;
  Int element_order(const IVec& x) const;
  Rat q_of(const IVec& x) const;        // in [0, 2)
  Rat b_of(const IVec& x, const IVec& y) const;  // in [0, 1)

  // All elements in lexicographic coordinate order; throws CapExceeded.
  std::vector<IVec> elements(long cap = 1000000) const;

  // Coordinates of a dual vector (rational, in lattice basis coords).
  IVec coords_of_dual(const QVec& x) const;
  QVec lift_of(const IVec& x) const;
};

// Subgroup of a FiniteQuadraticForm, stored closed under the group law.
struct DiscSubgroup {
  std::vector<IVec> gens;
  std::vector<IVec> elems;  // sorted lexicographically, includes 0

  Int order() const { return Int(static_cast<long>(elems.size())); }
  bool contains(const FiniteQuadraticForm& a, const IVec& x) const;
};

DiscSubgroup subgroup_closure(const FiniteQuadraticForm& a,
                              const std::vector<IVec>& gens, long cap = 1000000);

struct TwoElemInvariants {
  int r;      // rank
  int a;      // length of (Z/2)^a
  int delta;  // 0 if q is integer valued, 1 otherwise
  bool operator==(const TwoElemInvariants&) const = default;
};

// --- operations ---

FiniteQuadraticForm discriminant_form(const Lattice& l);

TwoElemInvariants two_elementary_invariants(const Lattice& l);
bool nikulin_equal(const Lattice& l, const Lattice& m);

std::vector<DiscSubgroup> isotropic_subgroups(const FiniteQuadraticForm& a,
                                              long cap = 10000);

struct Overlattice {
  Lattice lattice;
  QMat basis;  // rows: basis of the overlattice in source-lattice coordinates
  Int index;   // [M : L] = |H|
};

Overlattice overlattice_from_isotropic(const Lattice& l, const DiscSubgroup& h);

struct GluingResult {
  Lattice lattice;
  QMat basis;      // rows in (T + W) coordinates
  Int glue_order;  // |H|
};

// All even overlattices of T + W in which both T and W stay primitive,
// i.e. gluings along graphs of anti-isometries between subgroups of A_T
// and A_W. With torsion_exponent set, keeps only results whose
// discriminant group exponent divides it.
std::vector<GluingResult> primitive_gluings(
    const Lattice& t, const Lattice& w,
    std::optional<Int> torsion_exponent = std::nullopt, long cap = 10000);

// Quadratic form on H^perp / H for an isotropic subgroup H.
FiniteQuadraticForm subquotient_form(const FiniteQuadraticForm& a,
                                     const DiscSubgroup& h, long cap = 1000000);

enum class Tristate { Yes, No, Unknown };

// Isomorphism of finite quadratic forms: invariant factors and value
// multisets as filters, then exhaustive generator-mapping backtracking
// within a node budget.
Tristate disc_forms_isomorphic(const FiniteQuadraticForm& a,
                               const FiniteQuadraticForm& b,
                               long node_budget = 2000000);

}  // namespace quadlat
