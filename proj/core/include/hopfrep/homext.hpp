#pragma once

// Homological layer: extension spaces between modules via the explicit
// cocycle/coboundary linear system, projectivity through a splitting of the
// canonical surjection from the induced cover, projective covers, and the
// per-degree dimension identity.

#include "hopfrep/smash.hpp"

namespace hopfrep {

struct ExtResult {
  int dim = 0;
  std::vector<ModuleRep> representatives;  // one verified extension per basis cocycle
};

// Extensions 0 -> N -> E -> M -> 0. The group part of E is split
// block-diagonal (the group algebra is semisimple); the corner block of
// [a0] is cut out by the defining relations, which are linear in it, and
// then reduced modulo coboundaries from Hom_G(M, N).
ExtResult ext1(const ModuleRep& m, const ModuleRep& n);

struct ExtTable {
  ParamSet params;
  std::vector<std::string> labels;
  std::vector<int> dims_of_simples;
  std::vector<std::vector<int>> dims;  // dims[i][j] = dim Ext^1(simple i, simple j)
  std::string text() const;
};

ExtTable ext_table(const ParamSet& params, const SimpleCatalog& catalog);

// Splitting test for the canonical surjection (+)_S A(S)^{m_S} -> M built
// from the isotypic decomposition of the restriction; the section is found
// (or refuted) as a linear feasibility problem over the Hom spaces.
struct ProjectivityWitness {
  bool projective = false;
  // section components, parallel to the surjection components used
  std::vector<Mat> sections;
};
ProjectivityWitness is_projective(const ModuleRep& m, const Algebra& alg);

// The projective cover of a catalog simple. The classification's candidate
// is built first and verified independently (projective, indecomposable,
// top == L). When the candidate fails those checks, the true cover is split
// off the induced projective over a restriction constituent instead, and
// the mismatch is reported in the result.
struct CoverResult {
  ModuleRep cover;
  bool candidate_ok = false;
  std::string candidate_label;
  std::string note;
};
CoverResult projective_cover(const ModuleRep& simple, const Algebra& alg,
                             const SimpleCatalog& catalog);

struct DimIdentityReport {
  std::vector<long> per_degree;  // sum over L = L[j] of dim L * dim P(L)
  long total = 0;
  bool ok = false;  // every degree gives 72 and the total is 72 l
  std::vector<std::pair<std::string, int>> cover_dims;
};

DimIdentityReport dim_identity(const ParamSet& params, const Algebra& alg,
                               const SimpleCatalog& catalog);

// A(S_j^+) == A(S_j^-) via the explicit map z -> (a0+a1+a2) w, defined
// whenever g_j != 0.
bool induced_iso_check(const Algebra& alg, int j);

}  // namespace hopfrep
