#include "hopfrep/homext.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace hopfrep {

namespace {

// Degree of a single-block module, read off the scalar action of t^2.
int degree_of(const ModuleRep& m) {
  const ParamSet& p = m.params;
  Mat t2 = m.t * m.t;
  for (int j = 0; j < p.ell; ++j)
    if (t2 == Mat::scalar(p.ctx, m.dim(), p.zeta_pow(j))) return j;
  return -1;  // mixed degrees
}

std::vector<Cyc> flatten_mat(const Mat& m) { return m.flatten(); }

}  // namespace

ExtResult ext1(const ModuleRep& m, const ModuleRep& n) {
  const ParamSet& p = m.params;
  const Ctx& ctx = p.ctx;
  if (!p.same(n.params)) throw ParamViolation("ext between different parameter sets");
  int dm = m.dim(), dn = n.dim();

  // The corner block D of [a0] on N (+) M is cut out by four linear
  // conditions; everything else about E is already fixed block-diagonally.
  auto corner_conditions = [&](const Mat& d) {
    Mat d1 = n.s * d * m.s.pow(2);   // corner of [a1]
    Mat d2 = n.s.pow(2) * d * m.s;   // corner of [a2]
    Mat c1 = n.t * d + d * m.t;
    Mat c2 = n.a0 * d + d * m.a0;
    Mat c3 = n.a0 * d1 + d * m.a(1) + n.a(1) * d2 + d1 * m.a(2) + n.a(2) * d + d2 * m.a0;
    Mat c4 = n.a(1) * d + d1 * m.a0 + n.a(2) * d1 + d2 * m.a(1) + n.a0 * d2 + d * m.a(2);
    return c1.vstack(c2).vstack(c3).vstack(c4);
  };

  int unknowns = dn * dm;
  Mat constraint(ctx, 4 * dn * dm, unknowns);
  for (int i = 0; i < dn; ++i)
    for (int j = 0; j < dm; ++j) {
      Mat e(ctx, dn, dm);
      e.at(i, j) = Cyc::integer(ctx, 1);
      Mat cond = corner_conditions(e);
      int col = i * dm + j;
      for (int r = 0; r < cond.rows(); ++r)
        for (int c = 0; c < dm; ++c)
          if (!cond.at(r, c).is_zero())
            constraint.at(r * dm + c, col) = cond.at(r, c);
    }
  Mat cocycles = kernel_basis(constraint);

  // Coboundaries: D = A_N X - X A_M over group-equivariant X.
  EchelonSpan boundary_span(ctx);
  for (const Mat& x : group_intertwiners(m.restriction(), n.restriction())) {
    Mat d = n.a0 * x - x * m.a0;
    boundary_span.add(flatten_mat(d));
  }

  ExtResult out;
  EchelonSpan seen = boundary_span;
  for (int c = 0; c < cocycles.cols(); ++c) {
    Mat d(ctx, dn, dm);
    for (int i = 0; i < dn; ++i)
      for (int j = 0; j < dm; ++j) d.at(i, j) = cocycles.at(i * dm + j, c);
    if (!seen.add(flatten_mat(d))) continue;
    ++out.dim;
    // assemble the representative extension
    int de = dn + dm;
    Mat zs(ctx, de, de), zt(ctx, de, de), za(ctx, de, de);
    auto put = [&](Mat& dst, const Mat& block, int r0, int c0) {
      for (int i = 0; i < block.rows(); ++i)
        for (int j = 0; j < block.cols(); ++j) dst.at(r0 + i, c0 + j) = block.at(i, j);
    };
    put(zs, n.s, 0, 0);
    put(zs, m.s, dn, dn);
    put(zt, n.t, 0, 0);
    put(zt, m.t, dn, dn);
    put(za, n.a0, 0, 0);
    put(za, m.a0, dn, dn);
    put(za, d, 0, dn);
    ModuleRep e{p, zs, zt, za,
                "Ext(" + m.label + "," + n.label + ")#" + std::to_string(out.dim)};
    auto bad = verify(e);
    if (!bad.empty()) throw Error("extension representative fails verification: " + bad[0]);
    out.representatives.push_back(std::move(e));
  }
  return out;
}

ExtTable ext_table(const ParamSet& params, const SimpleCatalog& catalog) {
  ExtTable table;
  table.params = params;
  int n = static_cast<int>(catalog.simples.size());
  std::vector<int> degrees(n);
  for (int i = 0; i < n; ++i) {
    table.labels.push_back(catalog.simples[i].label);
    table.dims_of_simples.push_back(catalog.simples[i].dim());
    degrees[i] = degree_of(catalog.simples[i]);
  }
  table.dims.assign(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (degrees[i] != degrees[j]) continue;  // cross-degree extensions vanish
      table.dims[i][j] = ext1(catalog.simples[i], catalog.simples[j]).dim;
    }
  return table;
}

std::string ExtTable::text() const {
  size_t w = 6;
  for (const auto& l : labels) w = std::max(w, l.size() + 1);
  std::ostringstream os;
  os << std::setw(static_cast<int>(w)) << "";
  for (const auto& l : labels) os << std::setw(static_cast<int>(w)) << l;
  os << "\n";
  for (size_t i = 0; i < labels.size(); ++i) {
    os << std::setw(static_cast<int>(w)) << labels[i];
    for (size_t j = 0; j < labels.size(); ++j)
      os << std::setw(static_cast<int>(w)) << dims[i][j];
    os << "\n";
  }
  return os.str();
}

ProjectivityWitness is_projective(const ModuleRep& m, const Algebra& alg) {
  const ParamSet& p = m.params;
  const Ctx& ctx = p.ctx;
  int dm = m.dim();

  // word action on M, for the surjection a (x) v -> a . v
  auto word_action = [&](const Word& w) {
    Mat r = Mat::identity(ctx, dm);
    for (uint8_t l : w) r = r * m.a(l);
    return r;
  };

  auto iso = isotypic_decompose(m.restriction());
  std::vector<Mat> surjections;  // dm x dim A(S)
  std::vector<Mat> homs;         // dim A(S) x dm, parallel
  for (const auto& piece : iso) {
    ModuleRep cover = alg.induce(piece.label);
    std::vector<Mat> hom = hom_space(m, cover);
    int ds = piece.label.dim();
    int nw = static_cast<int>(alg.basis_words().size());
    std::vector<Mat> word_ops;
    for (const Word& w : alg.basis_words()) word_ops.push_back(word_action(w));
    for (const Mat& emb : piece.embeddings) {
      Mat pi(ctx, dm, nw * ds);
      for (int wi = 0; wi < nw; ++wi) {
        Mat img = word_ops[wi] * emb;  // dm x ds
        for (int l = 0; l < ds; ++l)
          for (int i = 0; i < dm; ++i) pi.at(i, wi * ds + l) = img.at(i, l);
      }
      for (const Mat& h : hom) {
        surjections.push_back(pi);
        homs.push_back(h);
      }
    }
  }

  ProjectivityWitness out;
  if (surjections.empty()) return out;
  int cols = static_cast<int>(surjections.size());
  Mat system(ctx, dm * dm, cols);
  for (int c = 0; c < cols; ++c) {
    Mat comp = surjections[c] * homs[c];  // dm x dm
    for (int i = 0; i < dm; ++i)
      for (int j = 0; j < dm; ++j) system.at(i * dm + j, c) = comp.at(i, j);
  }
  Mat target(ctx, dm * dm, 1);
  for (int i = 0; i < dm; ++i) target.at(i * dm + i, 0) = Cyc::integer(ctx, 1);
  auto sol = solve_linear(system, target);
  if (!sol) return out;
  out.projective = true;
  for (int c = 0; c < cols; ++c)
    if (!sol->at(c, 0).is_zero()) out.sections.push_back(homs[c] * sol->at(c, 0));
  return out;
}

namespace {

// Locate the catalog entry isomorphic to the given simple.
const ModuleRep* catalog_twin(const ModuleRep& simple, const SimpleCatalog& catalog) {
  for (const ModuleRep& c : catalog.simples) {
    if (c.dim() != simple.dim()) continue;
    if (is_isomorphic(simple, c)) return &c;
  }
  return nullptr;
}

}  // namespace

CoverResult projective_cover(const ModuleRep& simple, const Algebra& alg,
                             const SimpleCatalog& catalog) {
  const ParamSet& p = simple.params;
  const ModuleRep* twin = catalog_twin(simple, catalog);
  if (!twin) throw UnmatchedFactor("projective cover requested for a non-catalog simple");
  int j = degree_of(*twin);
  if (j < 0) throw ParamViolation("simple module is not concentrated in one degree");

  ModuleRep candidate;
  bool s_trivial = twin->s.is_identity();
  if (p.graded()) {
    auto iso = isotypic_decompose(twin->restriction());
    candidate = alg.induce(iso[0].label);
  } else if (twin->dim() == 1) {
    Cyc tval = twin->t.at(0, 0);
    candidate = alg.induce({tval == p.one() ? IrrepLabel::SPlus : IrrepLabel::SMinus, 0});
  } else if (twin->dim() == 2 && s_trivial) {
    candidate = alg.induce({IrrepLabel::SPlus, j});
  } else if (twin->dim() == 2) {
    if (p.lambda().is_zero()) {
      candidate = alg.induce({IrrepLabel::TwoDim, 0});
    } else {
      Cyc a = twin->a0.at(0, 0), c = twin->a0.at(1, 0);
      int sa = a == p.hbar ? +1 : -1;
      int sc = c == p.hbar ? +1 : -1;
      candidate = make_pjac(p, j, sa, sc);
    }
  } else if (twin->dim() == 6) {
    DerivedScalars d = derived_scalars(p, j);
    if (d.discriminant.is_zero())
      candidate = alg.induce({IrrepLabel::SPlus, j});
    else
      candidate = *twin;  // projective simple
  } else {
    throw CoverVerificationFailure("no cover candidate for " + twin->label);
  }

  CoverResult out;
  out.candidate_label = candidate.label;
  std::string why;
  if (!is_projective(candidate, alg).projective)
    why = "candidate is not projective";
  else if (!is_indecomposable(candidate))
    why = "candidate is decomposable";
  else if (!is_isomorphic(top(candidate), *twin))
    why = "candidate has the wrong simple top";

  if (why.empty()) {
    out.candidate_ok = true;
    out.cover = std::move(candidate);
    out.cover.label = "P(" + twin->label + ")";
    return out;
  }
  out.note = why;

  // Split the true cover off the induced projective over a restriction
  // constituent of L.
  auto iso = isotypic_decompose(twin->restriction());
  ModuleRep induced = alg.induce(iso[0].label);
  auto split = split_summand_with_top(induced, *twin, catalog);
  if (!split) throw CoverVerificationFailure("no projective cover found for " + twin->label);
  if (!is_projective(*split, alg).projective || !is_indecomposable(*split) ||
      !is_isomorphic(top(*split), *twin))
    throw CoverVerificationFailure("extracted cover for " + twin->label +
                                   " fails verification");
  out.cover = std::move(*split);
  out.cover.label = "P(" + twin->label + ")";
  return out;
}

DimIdentityReport dim_identity(const ParamSet& params, const Algebra& alg,
                               const SimpleCatalog& catalog) {
  DimIdentityReport rep;
  rep.per_degree.assign(params.ell, 0);
  for (const ModuleRep& simple : catalog.simples) {
    ModuleRep cover = projective_cover(simple, alg, catalog).cover;
    int j = degree_of(simple);
    rep.per_degree[j] += static_cast<long>(simple.dim()) * cover.dim();
    rep.total += static_cast<long>(simple.dim()) * cover.dim();
    rep.cover_dims.push_back({simple.label, cover.dim()});
  }
  rep.ok = rep.total == 72L * params.ell;
  for (long v : rep.per_degree) rep.ok = rep.ok && v == 72;
  if (!rep.ok) {
    std::ostringstream os;
    os << "dimension identity violated:";
    for (size_t j = 0; j < rep.per_degree.size(); ++j)
      os << " deg" << j << "=" << rep.per_degree[j];
    throw IdentityViolation(os.str());
  }
  return rep;
}

bool induced_iso_check(const Algebra& alg, int j) {
  const ParamSet& p = alg.params();
  DerivedScalars d = derived_scalars(p, j);
  if (d.g.is_zero()) throw ParamViolation("induced modules need g != 0 for the explicit map");
  ModuleRep plus = alg.induce({IrrepLabel::SPlus, j});
  ModuleRep minus = alg.induce({IrrepLabel::SMinus, j});

  // map w_i (x) z  ->  w_i (a0+a1+a2) (x) w on the normal-form bases
  const Ctx& ctx = p.ctx;
  SmashElement asum = alg.gen_a(0) + alg.gen_a(1) + alg.gen_a(2);
  GroupIrrep sm = irrep_of(p, {IrrepLabel::SMinus, j});
  int nw = static_cast<int>(alg.basis_words().size());
  std::map<Word, int> windex;
  for (int i = 0; i < nw; ++i) windex[alg.basis_words()[i]] = i;
  Mat phi(ctx, nw, nw);
  for (int wi = 0; wi < nw; ++wi) {
    SmashElement img = alg.mul(alg.word_elem(alg.basis_words()[wi]), asum);
    for (const auto& [k, c] : img.terms()) {
      Mat g = rho(sm, k.second);  // 1x1
      phi.at(windex.at(k.first), wi) += c * g.at(0, 0);
    }
  }
  bool intertwines = phi * plus.s == minus.s * phi && phi * plus.t == minus.t * phi &&
                     phi * plus.a0 == minus.a0 * phi;
  return intertwines && rank(phi) == nw;
}

}  // namespace hopfrep
