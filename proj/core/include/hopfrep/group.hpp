#pragma once

// The group G = C3 x| C_{2l} = < s, t | s^3 = t^{2l} = 1, t s = s^2 t >,
// its irreducible representations, isotypic decomposition of arbitrary
// G-representations, and the label-level tensor/dual rules.

#include <map>
#include <string>
#include <vector>

#include "hopfrep/linalg.hpp"

namespace hopfrep {

// Canonical form s^a t^b with 0 <= a < 3, 0 <= b < 2l.
struct GroupElement {
  int a = 0;
  int b = 0;
  bool operator==(const GroupElement& o) const { return a == o.a && b == o.b; }
  bool operator<(const GroupElement& o) const { return a != o.a ? a < o.a : b < o.b; }
};

// t^b conjugates s to s^{2^b}; even b fixes s, odd b squares it.
GroupElement g_mul(int ell, GroupElement x, GroupElement y);
GroupElement g_inv(int ell, GroupElement x);
std::vector<GroupElement> group_elements(int ell);

struct IrrepLabel {
  enum Kind { SPlus, SMinus, TwoDim } kind = SPlus;
  int j = 0;
  std::string str() const;
  int dim() const { return kind == TwoDim ? 2 : 1; }
  bool operator==(const IrrepLabel& o) const { return kind == o.kind && j == o.j; }
  bool operator<(const IrrepLabel& o) const { return j != o.j ? j < o.j : kind < o.kind; }
};

struct GroupIrrep {
  IrrepLabel label;
  Mat s, t;
  int dim() const { return label.dim(); }
};

// All 2l one-dimensional and l two-dimensional irreducibles.
std::vector<GroupIrrep> irreps(const ParamSet& params);
GroupIrrep irrep_of(const ParamSet& params, IrrepLabel label);

// A representation of G given by the two generator matrices.
struct GRep {
  ParamSet params;
  Mat s, t;
  int dim() const { return s.rows(); }
};

// Violated group relations, empty when the matrices represent G.
std::vector<std::string> verify_group(const GRep& rep);

Mat rho(const GroupIrrep& irrep, GroupElement g);
Mat rho(const GRep& rep, GroupElement g);
Cyc character(const ParamSet& params, IrrepLabel label, GroupElement g);

struct IsotypicPiece {
  IrrepLabel label;
  // One matrix per copy; columns are the images of the irrep's basis.
  std::vector<Mat> embeddings;
  int multiplicity() const { return static_cast<int>(embeddings.size()); }
};

// Exact decomposition via eigenspace splitting of [t^2], [s], [t]. The
// returned embeddings intertwine the standard irrep matrices on the nose.
std::vector<IsotypicPiece> isotypic_decompose(const GRep& rep);

// Group-averaged projector onto the isotypic component of one irrep.
Mat isotypic_projector(const GRep& rep, IrrepLabel label);

// Split into eigenspaces of [t]^2; returns (j, basis columns) per nonzero block.
std::vector<std::pair<int, Mat>> j_split(const GRep& rep);

// Basis of G-equivariant maps from -> to, assembled from matched isotypic
// copies (Schur: the irreducibles are absolutely irreducible here).
std::vector<Mat> group_intertwiners(const GRep& from, const GRep& to);

// Closed-form tensor/dual rules on labels. These match the matrix-level
// Kronecker decomposition for the fixed choice b_j = eta^j, which forces a
// sign swap on the one-dimensional labels whenever j + k wraps past l.
std::vector<IrrepLabel> irrep_tensor(const ParamSet& params, IrrepLabel x, IrrepLabel y);
IrrepLabel irrep_dual(const ParamSet& params, IrrepLabel x);

}  // namespace hopfrep
