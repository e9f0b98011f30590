#include "hopfrep/group.hpp"

#include <sstream>

namespace hopfrep {

GroupElement g_mul(int ell, GroupElement x, GroupElement y) {
  int twist = (x.b % 2 == 0) ? 1 : 2;  // t^b s t^{-b} = s^{2^b}
  GroupElement r;
  r.a = (x.a + twist * y.a) % 3;
  r.b = (x.b + y.b) % (2 * ell);
  return r;
}

GroupElement g_inv(int ell, GroupElement x) {
  GroupElement r;
  r.b = (2 * ell - x.b) % (2 * ell);
  int twist = (r.b % 2 == 0) ? 1 : 2;
  r.a = ((3 - x.a) * twist) % 3;
  return r;
}

std::vector<GroupElement> group_elements(int ell) {
  std::vector<GroupElement> out;
  out.reserve(6 * ell);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 2 * ell; ++b) out.push_back({a, b});
  return out;
}

std::string IrrepLabel::str() const {
  std::ostringstream os;
  if (kind == TwoDim)
    os << "M" << j;
  else
    os << "S" << j << (kind == SPlus ? "+" : "-");
  return os.str();
}

GroupIrrep irrep_of(const ParamSet& params, IrrepLabel label) {
  const Ctx& ctx = params.ctx;
  GroupIrrep ir;
  ir.label = label;
  if (label.kind == IrrepLabel::TwoDim) {
    ir.s = Mat(ctx, 2, 2);
    ir.s.at(0, 0) = params.xi();
    ir.s.at(1, 1) = params.xi().pow(2);
    ir.t = Mat(ctx, 2, 2);
    ir.t.at(0, 1) = params.zeta_pow(label.j);
    ir.t.at(1, 0) = params.one();
  } else {
    ir.s = Mat::identity(ctx, 1);
    ir.t = Mat(ctx, 1, 1);
    Cyc v = params.b(label.j);
    ir.t.at(0, 0) = label.kind == IrrepLabel::SPlus ? v : -v;
  }
  return ir;
}

std::vector<GroupIrrep> irreps(const ParamSet& params) {
  std::vector<GroupIrrep> out;
  for (int j = 0; j < params.ell; ++j) {
    out.push_back(irrep_of(params, {IrrepLabel::SPlus, j}));
    out.push_back(irrep_of(params, {IrrepLabel::SMinus, j}));
    out.push_back(irrep_of(params, {IrrepLabel::TwoDim, j}));
  }
  return out;
}

std::vector<std::string> verify_group(const GRep& rep) {
  std::vector<std::string> bad;
  const Ctx& ctx = rep.params.ctx;
  int n = rep.dim();
  Mat id = Mat::identity(ctx, n);
  if (rep.s.pow(3) != id) bad.push_back("s^3 != 1");
  if (rep.t.pow(2 * rep.params.ell) != id) bad.push_back("t^(2l) != 1");
  if (rep.t * rep.s != rep.s.pow(2) * rep.t) bad.push_back("t s != s^2 t");
  return bad;
}

Mat rho(const GroupIrrep& irrep, GroupElement g) { return irrep.s.pow(g.a) * irrep.t.pow(g.b); }
Mat rho(const GRep& rep, GroupElement g) { return rep.s.pow(g.a) * rep.t.pow(g.b); }

Cyc character(const ParamSet& params, IrrepLabel label, GroupElement g) {
  return rho(irrep_of(params, label), g).trace();
}

namespace {

// Columns spanning the common nullspace of the stacked matrices.
Mat stacked_kernel(const std::vector<Mat>& mats) {
  Mat stack = mats[0];
  for (size_t i = 1; i < mats.size(); ++i) stack = stack.vstack(mats[i]);
  return kernel_basis(stack);
}

}  // namespace

std::vector<IsotypicPiece> isotypic_decompose(const GRep& rep) {
  {
    auto bad = verify_group(rep);
    if (!bad.empty()) throw Error("isotypic decomposition of a non-representation: " + bad[0]);
  }
  const ParamSet& p = rep.params;
  const Ctx& ctx = p.ctx;
  int n = rep.dim();
  Mat id = Mat::identity(ctx, n);
  Mat t2 = rep.t * rep.t;
  Cyc xi = p.xi();

  std::vector<IsotypicPiece> out;
  int total = 0;
  for (int j = 0; j < p.ell; ++j) {
    Cyc zj = p.zeta_pow(j);
    Cyc bj = p.b(j);
    // One-dimensional pieces: t-eigenvectors inside the s-fixed space.
    for (int sign = 0; sign < 2; ++sign) {
      Cyc tval = sign == 0 ? bj : -bj;
      Mat ker = stacked_kernel({rep.s - id, rep.t - Mat::scalar(ctx, n, tval)});
      IsotypicPiece piece;
      piece.label = {sign == 0 ? IrrepLabel::SPlus : IrrepLabel::SMinus, j};
      for (int c = 0; c < ker.cols(); ++c) piece.embeddings.push_back(ker.column(c));
      if (!piece.embeddings.empty()) {
        total += piece.multiplicity();
        out.push_back(std::move(piece));
      }
    }
    // Two-dimensional pieces: pick the s = xi eigenspace inside the
    // zeta^j-eigenspace of t^2; the partner basis vector is its t-image.
    Mat vker = stacked_kernel({rep.s - Mat::scalar(ctx, n, xi), t2 - Mat::scalar(ctx, n, zj)});
    IsotypicPiece piece;
    piece.label = {IrrepLabel::TwoDim, j};
    for (int c = 0; c < vker.cols(); ++c) {
      Mat v = vker.column(c);
      Mat w = rep.t * v;
      piece.embeddings.push_back(v.hstack(w));
    }
    if (!piece.embeddings.empty()) {
      total += 2 * piece.multiplicity();
      out.push_back(std::move(piece));
    }
  }
  if (total != n) throw Error("isotypic decomposition does not fill the space");
  return out;
}

Mat isotypic_projector(const GRep& rep, IrrepLabel label) {
  const ParamSet& p = rep.params;
  const Ctx& ctx = p.ctx;
  int n = rep.dim();
  Mat acc(ctx, n, n);
  for (GroupElement g : group_elements(p.ell)) {
    Cyc chi = character(p, label, g_inv(p.ell, g));
    if (chi.is_zero()) continue;
    acc = acc + rho(rep, g) * chi;
  }
  Cyc scale = Cyc::rational(ctx, Rat(label.dim(), 6 * p.ell));
  return acc * scale;
}

std::vector<std::pair<int, Mat>> j_split(const GRep& rep) {
  const ParamSet& p = rep.params;
  const Ctx& ctx = p.ctx;
  int n = rep.dim();
  Mat t2 = rep.t * rep.t;
  std::vector<std::pair<int, Mat>> out;
  int total = 0;
  for (int j = 0; j < p.ell; ++j) {
    Mat ker = kernel_basis(t2 - Mat::scalar(ctx, n, p.zeta_pow(j)));
    if (ker.cols() == 0) continue;
    total += ker.cols();
    out.push_back({j, std::move(ker)});
  }
  if (total != n) throw Error("t^2 eigenspaces do not reassemble the space");
  return out;
}

std::vector<Mat> group_intertwiners(const GRep& from, const GRep& to) {
  const Ctx& ctx = from.params.ctx;
  auto iso_from = isotypic_decompose(from);
  auto iso_to = isotypic_decompose(to);

  Mat u(ctx, from.dim(), 0);
  std::vector<std::pair<IrrepLabel, int>> copies;  // label, starting column
  for (const auto& piece : iso_from)
    for (const Mat& emb : piece.embeddings) {
      copies.push_back({piece.label, u.cols()});
      u = u.cols() == 0 ? emb : u.hstack(emb);
    }
  Mat uinv = u.inverse();

  std::vector<Mat> basis;
  for (const auto& [label, offset] : copies) {
    Mat proj = uinv.submatrix(offset, 0, label.dim(), from.dim());
    for (const auto& piece : iso_to) {
      if (!(piece.label == label)) continue;
      for (const Mat& emb : piece.embeddings) basis.push_back(emb * proj);
    }
  }
  return basis;
}

namespace {

// With b_j = eta^j, the product b_j b_k is -b_{j+k mod l} when j+k >= l.
bool wraps(int ell, int j, int k) { return j + k >= ell; }

IrrepLabel one_dim(int j, bool plus) {
  return {plus ? IrrepLabel::SPlus : IrrepLabel::SMinus, j};
}

}  // namespace

std::vector<IrrepLabel> irrep_tensor(const ParamSet& params, IrrepLabel x, IrrepLabel y) {
  int ell = params.ell;
  int j = (x.j + y.j) % ell;
  bool w = wraps(ell, x.j, y.j);
  bool x1 = x.kind != IrrepLabel::TwoDim;
  bool y1 = y.kind != IrrepLabel::TwoDim;
  if (x1 && y1) {
    bool plus = (x.kind == y.kind);
    if (w) plus = !plus;  // b_x b_y = -b_{x+y}
    return {one_dim(j, plus)};
  }
  if (x1 || y1) return {{IrrepLabel::TwoDim, j}};
  return {one_dim(j, true), one_dim(j, false), {IrrepLabel::TwoDim, j}};
}

IrrepLabel irrep_dual(const ParamSet& params, IrrepLabel x) {
  int ell = params.ell;
  int j = (ell - x.j) % ell;
  if (x.kind == IrrepLabel::TwoDim) return {IrrepLabel::TwoDim, j};
  // b_j^{-1} = -b_{l-j} for 0 < j, so the sign flips off degree zero.
  bool plus = x.kind == IrrepLabel::SPlus;
  if (x.j != 0) plus = !plus;
  return one_dim(j, plus);
}

}  // namespace hopfrep
