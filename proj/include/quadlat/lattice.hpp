#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quadlat/intmat.hpp"

namespace quadlat {

struct Signature {
  int positive = 0;
  int negative = 0;
  bool operator==(const Signature&) const = default;
};

// One direct summand of a lattice built from named blocks. Tracked so that
// expression-level structure (e.g. an explicit U summand) survives direct
// sums and rescaling. Lattices produced by base change or gluing carry a
// single opaque "gram" tag.
struct SummandTag {
  std::string name;  // "U", "A2", "E8", "<q>", "E6v", "gram", ...
  Int scale = 1;
  int offset = 0;  // first basis index of this block
  int span = 0;    // number of basis vectors
};

class Lattice {
public:
  Lattice() = default;

  // Throws DegenerateLattice when det == 0 unless allow_degenerate.
  static Lattice from_gram(IMat gram, bool allow_degenerate = false);
  static Lattice from_gram(IMat gram, std::vector<SummandTag> tags,
                           bool allow_degenerate = false);

  int rank() const { return gram_.rows(); }
  const IMat& gram() const { return gram_; }
  const Int& det() const { return det_; }
  bool even() const { return even_; }
  bool degenerate() const { return det_ == 0; }
  bool unimodular() const { return det_ == 1 || det_ == -1; }

  Signature signature() const;
  bool positive_definite() const;
  bool negative_definite() const;
  bool definite() const;

  // Invariant factors (> 1) of Z^n / gram Z^n, ascending divisibility.
  std::vector<Int> disc_invariants() const;

  const std::vector<SummandTag>& tags() const { return tags_; }

  Int pair(const IVec& v, const IVec& w) const;
  Int norm(const IVec& v) const;

  bool operator==(const Lattice& o) const { return gram_ == o.gram_; }

private:
  IMat gram_;
  Int det_ = 1;
  bool even_ = true;
  std::vector<SummandTag> tags_;
};

class Sublattice {
public:
  // basis rows must be linearly independent over Q.
  Sublattice(Lattice ambient, IMat basis);

  const Lattice& ambient() const { return ambient_; }
  const IMat& basis() const { return basis_; }
  int rank() const { return basis_.rows(); }
  bool primitive() const { return primitive_; }

  // Gram of the sublattice in its own basis (may be degenerate).
  Lattice lattice() const;

private:
  Lattice ambient_;
  IMat basis_;
  bool primitive_;
};

struct LatticeInfo {
  int rank;
  Signature signature;
  Int determinant;
  bool even;
  std::vector<Int> disc_invariants;
};

LatticeInfo lattice_info(const Lattice& l);

Lattice direct_sum(const Lattice& l, const Lattice& m);
Lattice rescale(const Lattice& l, const Int& n);

Sublattice saturate(const Sublattice& s);
Sublattice orthogonal_complement(const Sublattice& s);

// gcd of the pairings of v with a basis; v must be nonzero.
Int divisibility(const Lattice& l, const IVec& v);

// All vectors of the given norm in a definite lattice, lexicographically
// ordered. Throws IndefiniteLattice / CapExceeded.
std::vector<IVec> vectors_of_norm(const Lattice& l, const Int& n,
                                  long cap = 1000000);

enum class VerdictState { Yes, No, Unknown };

struct Verdict {
  VerdictState state = VerdictState::Unknown;
  // Yes payloads
  std::optional<IMat> base_change;               // P with P^T G_L P = G_M
  std::optional<std::pair<IVec, IVec>> witness;  // hyperbolic pair for contains_U
  std::optional<Lattice> complement;             // K with L = U + K
  // No payloads
  std::optional<std::string> certificate;  // "definite", "scaled-gram", ...
  std::string detail;
  // Unknown payloads
  std::optional<Int> bound;

  static Verdict yes() { return Verdict{VerdictState::Yes}; }
  static Verdict no(std::string cert, std::string detail = "");
  static Verdict unknown(Int bound);
};

// Isometry testing for small ranks: exact for definite lattices of small
// rank and for indefinite rank <= 2 (binary form reduction); invariant
// mismatches give a certified No at any rank, otherwise Unknown.
Verdict is_isometric_small(const Lattice& l, const Lattice& m, long bound = 4);

}  // namespace quadlat
