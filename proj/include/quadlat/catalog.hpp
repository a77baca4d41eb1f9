#pragma once

#include <optional>
#include <string>

#include "quadlat/discform.hpp"
#include "quadlat/lattice.hpp"

namespace quadlat {

enum class DeformationType { K3n, Kum, Og6, Og10 };

const char* deformation_type_name(DeformationType t);

// Root lattices (positive definite) and the hyperbolic plane.
Lattice hyperbolic_plane();           // U
Lattice root_lattice_a(int k);        // A_k, k >= 1
Lattice root_lattice_d(int k);        // D_k, k >= 4
Lattice root_lattice_e(int k);        // E6, E7, E8
Lattice rank_one(const Int& q);       // <q>
Lattice dual_e6_scaled(const Int& scale);  // scale * E6^{-1}; must be even integral

// Beauville-Bogomolov lattices of the known deformation types.
Lattice bb_lattice(DeformationType t, int n = 0);

// Full-cohomology (Mukai) lattices; the hyperbolic summands come first.
Lattice lambda24();
Lattice lambda8();
Lattice lambda26();

// <2> + <-2>^k, the invariant lattices of the EPW degeneration families.
Lattice epw(int k);

// Named construction, the catalog behind the expression language and CLI.
Lattice named_lattice(const std::string& name,
                      std::optional<Int> scale = std::nullopt,
                      std::optional<int> n = std::nullopt);

struct GammaVResult {
  Lattice lattice;
  QMat basis;  // rows over (w_perp + <-6>) coordinates
  bool summands_primitive;
};

// Index-2 gluing of w^perp with <-6> along the unique order-2 graph;
// w must be primitive of square 2 in lambda24.
GammaVResult gamma_v(const Lattice& ambient, const IVec& w);

struct LagrangianResult {
  Lattice lattice;  // canonical form
  std::string canonical_name;
  Int t_square;
  Int div_t;
};

LagrangianResult lagrangian_section_lattice(DeformationType t, int n = 0);

struct AssignResult {
  TwoElemInvariants inv;
  bool consistency_warning;  // set when a+1 > r-1, where no lattice can exist
};

AssignResult assignment_to_k3(const TwoElemInvariants& inv);

// Sublattice of a glued overlattice spanned by part of the source summands.
Sublattice glued_summand(const Lattice& glued, const QMat& basis, int offset,
                         int span);

}  // namespace quadlat
