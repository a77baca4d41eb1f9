#pragma once

#include "quadlat/discform.hpp"
#include "quadlat/lattice.hpp"

namespace quadlat {

// Finite-order isometry of a lattice, acting on coordinate columns.
class Isometry {
public:
  Isometry(Lattice lattice, IMat matrix, long order)
      : lattice_(std::move(lattice)), matrix_(std::move(matrix)), order_(order) {}

  const Lattice& lattice() const { return lattice_; }
  const IMat& matrix() const { return matrix_; }
  long order() const { return order_; }

  IVec apply(const IVec& v) const { return matrix_.apply(v); }

private:
  Lattice lattice_;
  IMat matrix_;
  long order_;
};

enum class DiscActionKind { Trivial, MinusIdentity, Other };

struct DiscAction {
  DiscActionKind classification;
  std::vector<IVec> images;  // image of each generator, in generator coords
};

const char* disc_action_name(DiscActionKind k);

// Validates the Gram identity and computes the order (cap default 120).
Isometry make_isometry(const Lattice& l, IMat p, long order_cap = 120);

// x -> x - (2(x,v)/v^2) v; negates v, fixes v^perp. Integrality is checked
// entry by entry.
Isometry reflection(const Lattice& l, const IVec& v);
// x -> -x + (2(x,v)/v^2) v; fixes v, negates v^perp.
Isometry negated_reflection(const Lattice& l, const IVec& v);

// (T_G, S_G): saturated common fixed sublattice of the generators and its
// orthogonal complement.
std::pair<Sublattice, Sublattice> invariant_and_coinvariant(
    const Lattice& l, const std::vector<Isometry>& gens);

DiscAction disc_action(const Lattice& l, const Isometry& g);

// Extends isometries of a primitive sublattice M of a unimodular lattice to
// the whole lattice, acting as the identity on the complement. Requires a
// trivial action on A_M.
std::vector<Isometry> extend_to_unimodular(const Sublattice& m,
                                           const std::vector<Isometry>& gens);

}  // namespace quadlat
