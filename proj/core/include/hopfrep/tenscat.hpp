#pragma once

// Tensor structure on modules: products through the coproduct, duals through
// the antipode, the closed-form block formulas for products of mixed-form
// modules together with the explicit intertwiner that proves them, and
// catalog-relative decomposition into direct summands.

#include "hopfrep/homext.hpp"

namespace hopfrep {

// [s] (x) [s], [t] (x) [t], [a0] (x) 1 + [t] (x) [a0]
ModuleRep tensor(const ModuleRep& m, const ModuleRep& n);

// [g]* = transpose inverse on the group, [a0]* = -transpose(t^{-1} a0)
ModuleRep dual(const ModuleRep& m);

// Mixed-form view of a canonical catalog module (basis x^p, y^q, v^r, w^r).
MixedSpec mixed_of(const ModuleRep& m);

// Closed-form product of two mixed forms; the result lives at degree j+k
// with b = b_j b_k and sizes p'' = pp'+qq'+rr', q'' = pq'+qp'+rr',
// r'' = pr'+qr'+rp'+rq'+rr'.
MixedSpec formula_tensor(const ParamSet& params, const MixedSpec& a, const MixedSpec& b);

struct TensorWitness {
  ModuleRep left, right, product, formula_product;
  Mat iso;  // intertwiner from the formula basis to the Kronecker basis
};

// Builds both sides and exhibits the explicit base change as an exact
// intertwiner; throws FormulaMismatch when it fails to intertwine.
TensorWitness check_tensor_formula(const ModuleRep& m, const ModuleRep& n);

struct DecomposeResult {
  std::vector<std::string> summands;
  std::optional<ModuleRep> remainder;
  std::vector<std::pair<std::string, int>> remainder_factors;
};

// Greedy catalog-relative splitting: degree split first, then peel covers
// and simples (projectives first, larger dimension first) by searching
// Hom(C, M) x Hom(M, C) for a pair composing to an automorphism of C.
DecomposeResult decompose(const ModuleRep& m, const Algebra& alg, const SimpleCatalog& catalog,
                          uint64_t seed = 0);

}  // namespace hopfrep
