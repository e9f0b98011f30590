#pragma once

// Modules over the deformed algebra as verified matrix triples
// ([s], [t], [a0]), constructors for every catalogued module family, the
// complete list of simple modules per parameter regime, and structural
// analysis: simplicity, socle/radical, composition factors, Hom spaces,
// isomorphism testing and the degree splitting.

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hopfrep/group.hpp"

namespace hopfrep {

struct ModuleRep {
  ParamSet params;
  Mat s, t, a0;
  std::string label;

  int dim() const { return s.rows(); }
  Mat a(int i) const;  // a0, a1 = s a0 s^2, a2 = s^2 a0 s
  GRep restriction() const { return GRep{params, s, t}; }
};

// The seven defining identities, checked exactly. Empty result = module.
std::vector<std::string> verify(const ModuleRep& m);
bool verified(const ModuleRep& m);

// ---- derived scalars ------------------------------------------------------

struct DerivedScalars {
  Cyc f, g, f_plus, f_minus, h;
  Cyc discriminant;                // h^2 - 4 f_plus g
  std::optional<Cyc> sqrt_disc;    // when extractable in-field
  std::optional<Cyc> s_root;       // (h + sqrt_disc)/2
};

DerivedScalars derived_scalars(const ParamSet& params, int j);  // j in 1..l-1

struct Upsilon {
  Cyc c1, c2, t1, t2;
};

// Representatives of the solution variety of c1 c2 = g, t1 t2 = f_plus,
// c1 t1 + c2 t2 = h: two points generically, one in the degenerate branch
// g = h = 0 and one when the discriminant vanishes.
std::vector<Upsilon> solve_upsilon(const ParamSet& params, int j);

// The exceptional slopes where the two six-dimensional simples at degree j
// collapse: (1 - b^2 +/- 2 sqrt(b^4+b^2+1)) / (b^2 - 1). A vanishing value
// is dropped (it would force lambda = mu = 0).
std::vector<Cyc> exceptional_mus(const ParamSet& params, int j);

// ---- constructors ---------------------------------------------------------

ModuleRep make_one_dim(const ParamSet& params, int sign);              // L0^+/-
ModuleRep make_two_dim(const ParamSet& params, int j, int sa, int sc); // L_j(a,c), a = sa*hbar
ModuleRep make_two_dim_zero(const ParamSet& params);                   // L_0(0,0), lambda = 0
ModuleRep make_tj(const ParamSet& params, int j);                      // T_j, mu = lambda/3
ModuleRep make_t0(const ParamSet& params, int sign);                   // T_0^+/- (not simple)
ModuleRep make_graded(const ParamSet& params, IrrepLabel s);           // a0 = 0
ModuleRep make_six_dim(const ParamSet& params, int j, const Upsilon& u);
ModuleRep make_cover_six(const ParamSet& params, int j, int sa, int sc,
                         const Rat& qp, const Rat& rp);                // Q_j(a,c,q,r)
ModuleRep make_pjac(const ParamSet& params, int j, int sa, int sc);    // Q_j(a,c,1,0)

// General mixed-form module on S+^p (+) S-^q (+) M^r at degree j.
struct MixedSpec {
  int j = 0;
  Cyc b;  // scalar with b^2 = zeta^j acting on the plus part
  int p = 0, q = 0, r = 0;
  Mat alpha;   // q x p
  Mat beta;    // p x q
  Mat dplus;   // p x r
  Mat dminus;  // q x r
  Mat eta;     // r x p
  Mat sigma;   // r x q
  Mat theta;   // r x r
  Mat tau;     // r x r
  int dim() const { return p + q + 2 * r; }
};

// Checks the compatibility equations of the mixed family before building.
ModuleRep make_mixed(const ParamSet& params, const MixedSpec& spec, bool validate = true);

// ---- catalog --------------------------------------------------------------

struct SimpleCatalog {
  std::vector<ModuleRep> simples;
  bool complete = true;
  std::vector<std::pair<int, Cyc>> missing;  // degree and non-extractable radicand
};

// The full list of simple modules for the parameter regime, labelled and
// pairwise non-isomorphic. Degrees whose six-dimensional representatives
// need a square root outside the field are reported in `missing`.
SimpleCatalog enumerate_simples(const ParamSet& params);

// ---- structure ------------------------------------------------------------

// Burnside: the action generates the full matrix algebra iff simple.
bool is_simple(const ModuleRep& m);

MatAlgebra enveloping_algebra(const ModuleRep& m);  // closure of {[s],[t],[a0]}

Mat socle(const ModuleRep& m);        // columns spanning the largest semisimple submodule
Mat radical_of(const ModuleRep& m);   // columns spanning rad(B) * M
ModuleRep submodule(const ModuleRep& m, const Mat& basis_cols, const std::string& label);
ModuleRep quotient(const ModuleRep& m, const Mat& sub_cols, const std::string& label);
ModuleRep top(const ModuleRep& m);

// Multiset of catalog labels; throws UnmatchedFactor when a factor matches
// nothing in the catalog (that would falsify the classification).
std::vector<std::pair<std::string, int>> composition_factors(const ModuleRep& m,
                                                             const SimpleCatalog& catalog);

bool is_indecomposable(const ModuleRep& m);

// Basis of module maps M -> N (matrices X with X g_M = g_N X for all three
// generators), computed through the group-equivariant subspace first.
std::vector<Mat> hom_space(const ModuleRep& m, const ModuleRep& n);

std::optional<Mat> find_isomorphism(const ModuleRep& m, const ModuleRep& n, uint64_t seed = 0);
bool is_isomorphic(const ModuleRep& m, const ModuleRep& n, uint64_t seed = 0);

std::vector<std::pair<int, ModuleRep>> j_component(const ModuleRep& m);
ModuleRep direct_sum(const ModuleRep& a, const ModuleRep& b);

// A proper nonzero submodule of a non-simple module (socle when proper,
// otherwise one isotypic constituent of the socle).
std::optional<Mat> proper_submodule_witness(const ModuleRep& m);

// For projective M: an indecomposable direct summand with top L, split off
// through an exact idempotent (a projector on the top lifted against the
// radical of End(M) by Newton iteration). Returns nothing when L does not
// occur in top(M). The catalog supplies the simple decomposition of the top.
std::optional<ModuleRep> split_summand_with_top(const ModuleRep& m, const ModuleRep& simple,
                                                const SimpleCatalog& catalog);

}  // namespace hopfrep
