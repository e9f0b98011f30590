#include "hopfrep/tenscat.hpp"

#include <algorithm>

namespace hopfrep {

ModuleRep tensor(const ModuleRep& m, const ModuleRep& n) {
  if (!m.params.same(n.params)) throw ParamViolation("tensor between different parameter sets");
  const Ctx& ctx = m.params.ctx;
  ModuleRep r{m.params, kron(m.s, n.s), kron(m.t, n.t),
              kron(m.a0, Mat::identity(ctx, n.dim())) + kron(m.t, n.a0),
              m.label + "(x)" + n.label};
  return r;
}

ModuleRep dual(const ModuleRep& m) {
  Mat tinv = m.t.pow(2 * m.params.ell - 1);
  ModuleRep r{m.params, m.s.pow(2).transpose(), tinv.transpose(),
              -((tinv * m.a0).transpose()), m.label + "*"};
  return r;
}

// ---- mixed forms -----------------------------------------------------------

MixedSpec mixed_of(const ModuleRep& m) {
  const ParamSet& p = m.params;
  const Ctx& ctx = p.ctx;
  int n = m.dim();
  // degree from the scalar action of t^2
  Mat t2 = m.t * m.t;
  int j = -1;
  for (int cand = 0; cand < p.ell; ++cand)
    if (t2 == Mat::scalar(ctx, n, p.zeta_pow(cand))) j = cand;
  if (j < 0) throw ParamViolation("mixed form needs a single degree");
  Cyc b = p.b(j);
  Cyc one = p.one(), xi = p.xi();

  // canonical layout: x-block (s=1, t=b), y-block (s=1, t=-b), then v, w
  MixedSpec sp;
  sp.j = j;
  sp.b = b;
  int i = 0;
  while (i < n && m.s.at(i, i) == one && m.t.at(i, i) == b) ++i;
  sp.p = i;
  while (i < n && m.s.at(i, i) == one && m.t.at(i, i) == -b) ++i;
  sp.q = i - sp.p;
  int rest = n - sp.p - sp.q;
  if (rest % 2 != 0) throw ParamViolation("module is not in canonical mixed layout");
  sp.r = rest / 2;
  for (int k = 0; k < sp.r; ++k) {
    int v = sp.p + sp.q + k, w = sp.p + sp.q + sp.r + k;
    if (!(m.s.at(v, v) == xi) || !(m.s.at(w, w) == xi * xi) || !(m.t.at(w, v) == one))
      throw ParamViolation("module is not in canonical mixed layout");
  }
  auto block = [&](int r0, int c0, int nr, int nc) { return m.a0.submatrix(r0, c0, nr, nc); };
  int P = sp.p, Q = sp.q, R = sp.r;
  // columns encode the action; read the defining blocks back off
  sp.alpha = block(0, P, P, Q).transpose();
  sp.beta = block(P, 0, Q, P).transpose();
  sp.dplus = block(P + Q + R, 0, R, P).transpose();
  sp.dminus = block(P + Q + R, P, R, Q).transpose();
  sp.eta = block(0, P + Q, P, R).transpose();
  sp.sigma = block(P, P + Q, Q, R).transpose();
  sp.theta = block(P + Q, P + Q, R, R).transpose();
  sp.tau = block(P + Q + R, P + Q, R, R).transpose();
  // round-trip check pins the layout exactly
  ModuleRep probe = make_mixed(p, sp, false);
  if (!(probe.a0 == m.a0) || !(probe.t == m.t) || !(probe.s == m.s))
    throw ParamViolation("module does not match its mixed reconstruction");
  return sp;
}

namespace {

struct BlockLayout {
  // offsets of the constituent blocks inside the x/y/v index ranges
  int x1 = 0, x2 = 0, x3 = 0, xdim = 0;
  int y1 = 0, y2 = 0, y3 = 0, ydim = 0;
  int v1 = 0, v2 = 0, v3 = 0, v4 = 0, v5 = 0, vdim = 0;
};

BlockLayout layout(const MixedSpec& a, const MixedSpec& b) {
  BlockLayout L;
  L.x1 = 0;
  L.x2 = a.p * b.p;
  L.x3 = L.x2 + a.q * b.q;
  L.xdim = L.x3 + a.r * b.r;
  L.y1 = 0;
  L.y2 = a.p * b.q;
  L.y3 = L.y2 + a.q * b.p;
  L.ydim = L.y3 + a.r * b.r;
  L.v1 = 0;
  L.v2 = a.p * b.r;
  L.v3 = L.v2 + a.q * b.r;
  L.v4 = L.v3 + a.r * b.p;
  L.v5 = L.v4 + a.r * b.q;
  L.vdim = L.v5 + a.r * b.r;
  return L;
}

void put_block(Mat& dst, int r0, int c0, const Mat& block) {
  for (int i = 0; i < block.rows(); ++i)
    for (int j = 0; j < block.cols(); ++j)
      if (!block.at(i, j).is_zero()) dst.at(r0 + i, c0 + j) = block.at(i, j);
}

Mat idm(const Ctx& ctx, int n) { return Mat::identity(ctx, n); }

}  // namespace

MixedSpec formula_tensor(const ParamSet& params, const MixedSpec& a, const MixedSpec& b) {
  const Ctx& ctx = params.ctx;
  BlockLayout L = layout(a, b);
  Cyc bj = a.b, bk = b.b;
  Cyc bb = bj * bk;
  Cyc bkinv = bk.inv();
  Cyc half = Cyc::rational(ctx, Rat(1, 2));

  MixedSpec out;
  out.j = (a.j + b.j) % params.ell;
  out.b = bb;
  out.p = L.xdim;
  out.q = L.ydim;
  out.r = L.vdim;

  Mat alpha(ctx, L.ydim, L.xdim), beta(ctx, L.xdim, L.ydim);
  Mat dplus(ctx, L.xdim, L.vdim), dminus(ctx, L.ydim, L.vdim);
  Mat eta(ctx, L.vdim, L.xdim), sigma(ctx, L.vdim, L.ydim);
  Mat theta(ctx, L.vdim, L.vdim), tau(ctx, L.vdim, L.vdim);

  Mat Ip = idm(ctx, a.p), Iq = idm(ctx, a.q), Ir = idm(ctx, a.r);
  Mat Ipp = idm(ctx, b.p), Iqq = idm(ctx, b.q), Irr = idm(ctx, b.r);

  // alpha'' : y -> x coefficients of a0
  put_block(alpha, L.y1, L.x1, kron(Ip, b.alpha) * bj);
  put_block(alpha, L.y1, L.x2, kron(a.beta, Iqq));
  put_block(alpha, L.y2, L.x1, kron(a.alpha, Ipp));
  put_block(alpha, L.y2, L.x2, -(kron(Iq, b.beta) * bj));
  put_block(alpha, L.y3, L.x3, kron(a.theta, Irr) - kron(Ir, b.tau) * bb);

  put_block(beta, L.x1, L.y1, kron(Ip, b.beta) * bj);
  put_block(beta, L.x1, L.y2, kron(a.beta, Ipp));
  put_block(beta, L.x2, L.y1, kron(a.alpha, Iqq));
  put_block(beta, L.x2, L.y2, -(kron(Iq, b.alpha) * bj));
  put_block(beta, L.x3, L.y3, kron(a.theta, Irr) + kron(Ir, b.tau) * bb);

  put_block(dplus, L.x1, L.v1, kron(Ip, b.dplus));
  put_block(dplus, L.x1, L.v3, kron(a.dplus, Ipp) * bkinv);
  put_block(dplus, L.x2, L.v2, kron(Iq, b.dminus));
  put_block(dplus, L.x2, L.v4, -(kron(a.dminus, Iqq) * bkinv));
  put_block(dplus, L.x3, L.v1, kron(a.eta, Irr));
  put_block(dplus, L.x3, L.v2, -kron(a.sigma, Irr));
  put_block(dplus, L.x3, L.v3, -(kron(Ir, b.eta) * bj));
  put_block(dplus, L.x3, L.v4, -(kron(Ir, b.sigma) * bj));
  put_block(dplus, L.x3, L.v5, -((kron(a.tau, Irr) - kron(Ir, b.theta)) * bkinv));

  put_block(dminus, L.y1, L.v1, kron(Ip, b.dminus));
  put_block(dminus, L.y1, L.v4, -(kron(a.dplus, Iqq) * bkinv));
  put_block(dminus, L.y2, L.v2, kron(Iq, b.dplus));
  put_block(dminus, L.y2, L.v3, kron(a.dminus, Ipp) * bkinv);
  put_block(dminus, L.y3, L.v1, kron(a.eta, Irr));
  put_block(dminus, L.y3, L.v2, -kron(a.sigma, Irr));
  put_block(dminus, L.y3, L.v3, -(kron(Ir, b.eta) * bj));
  put_block(dminus, L.y3, L.v4, -(kron(Ir, b.sigma) * bj));
  put_block(dminus, L.y3, L.v5, (kron(a.tau, Irr) - kron(Ir, b.theta)) * bkinv);

  put_block(eta, L.v1, L.x1, kron(Ip, b.eta) * bj);
  put_block(eta, L.v1, L.x3, kron(a.dplus, Irr) * (bkinv * half));
  put_block(eta, L.v2, L.x2, -(kron(Iq, b.sigma) * bj));
  put_block(eta, L.v2, L.x3, kron(a.dminus, Irr) * (bkinv * half));
  put_block(eta, L.v3, L.x1, kron(a.eta, Ipp));
  put_block(eta, L.v3, L.x3, -(kron(Ir, b.dplus) * half));
  put_block(eta, L.v4, L.x2, kron(a.sigma, Iqq));
  put_block(eta, L.v4, L.x3, kron(Ir, b.dminus) * half);
  put_block(eta, L.v5, L.x3, -((kron(a.tau, Irr) + kron(Ir, b.theta)) * (bj * half)));

  put_block(sigma, L.v1, L.y1, kron(Ip, b.sigma) * bj);
  put_block(sigma, L.v1, L.y3, -(kron(a.dplus, Irr) * (bkinv * half)));
  put_block(sigma, L.v2, L.y2, -(kron(Iq, b.eta) * bj));
  put_block(sigma, L.v2, L.y3, -(kron(a.dminus, Irr) * (bkinv * half)));
  put_block(sigma, L.v3, L.y2, kron(a.sigma, Ipp));
  put_block(sigma, L.v3, L.y3, kron(Ir, b.dplus) * half);
  put_block(sigma, L.v4, L.y1, kron(a.eta, Iqq));
  put_block(sigma, L.v4, L.y3, -(kron(Ir, b.dminus) * half));
  put_block(sigma, L.v5, L.y3, -((kron(a.tau, Irr) + kron(Ir, b.theta)) * (bj * half)));

  put_block(theta, L.v1, L.v1, kron(Ip, b.theta) * bj);
  put_block(theta, L.v1, L.v2, kron(a.beta, Irr));
  put_block(theta, L.v2, L.v1, kron(a.alpha, Irr));
  put_block(theta, L.v2, L.v2, -(kron(Iq, b.theta) * bj));
  put_block(theta, L.v3, L.v3, kron(a.theta, Ipp));
  put_block(theta, L.v3, L.v5, kron(Ir, b.dplus));
  put_block(theta, L.v4, L.v4, kron(a.theta, Iqq));
  put_block(theta, L.v4, L.v5, kron(Ir, b.dminus));
  put_block(theta, L.v5, L.v3, -(kron(Ir, b.eta) * (bj * bb)));
  put_block(theta, L.v5, L.v4, kron(Ir, b.sigma) * (bj * bb));
  put_block(theta, L.v5, L.v5, -kron(a.theta, Irr));

  Cyc scale_w5 = (bj * bk * bk).inv();
  put_block(tau, L.v1, L.v1, kron(Ip, b.tau));
  put_block(tau, L.v1, L.v5, -(kron(a.dplus, Irr) * scale_w5));
  put_block(tau, L.v2, L.v2, kron(Iq, b.tau));
  put_block(tau, L.v2, L.v5, kron(a.dminus, Irr) * scale_w5);
  put_block(tau, L.v3, L.v3, kron(a.tau, Ipp) * bkinv);
  put_block(tau, L.v3, L.v4, -(kron(Ir, b.beta) * bkinv));
  put_block(tau, L.v4, L.v3, kron(Ir, b.alpha) * bkinv);
  put_block(tau, L.v4, L.v4, -(kron(a.tau, Iqq) * bkinv));
  put_block(tau, L.v5, L.v1, -kron(a.eta, Irr));
  put_block(tau, L.v5, L.v2, -kron(a.sigma, Irr));
  put_block(tau, L.v5, L.v5, -kron(Ir, b.tau));

  out.alpha = std::move(alpha);
  out.beta = std::move(beta);
  out.dplus = std::move(dplus);
  out.dminus = std::move(dminus);
  out.eta = std::move(eta);
  out.sigma = std::move(sigma);
  out.theta = std::move(theta);
  out.tau = std::move(tau);
  return out;
}

TensorWitness check_tensor_formula(const ModuleRep& m, const ModuleRep& n) {
  const ParamSet& p = m.params;
  const Ctx& ctx = p.ctx;
  MixedSpec a = mixed_of(m), b = mixed_of(n);
  TensorWitness w;
  w.left = m;
  w.right = n;
  w.product = tensor(m, n);
  MixedSpec prod = formula_tensor(p, a, b);
  w.formula_product = make_mixed(p, prod, true);
  w.formula_product.label = "formula[" + m.label + "(x)" + n.label + "]";

  // Explicit base change: each formula basis vector written in the
  // Kronecker basis of the plain tensor product.
  int dm = m.dim(), dn = n.dim();
  BlockLayout L = layout(a, b);
  int total = L.xdim + L.ydim + 2 * L.vdim;
  if (total != dm * dn) throw FormulaMismatch("formula dimensions do not add up");
  Mat phi(ctx, dm * dn, total);
  auto xM = [&](int i) { return i; };
  auto yM = [&](int i) { return a.p + i; };
  auto vM = [&](int i) { return a.p + a.q + i; };
  auto wM = [&](int i) { return a.p + a.q + a.r + i; };
  auto xN = [&](int i) { return i; };
  auto yN = [&](int i) { return b.p + i; };
  auto vN = [&](int i) { return b.p + b.q + i; };
  auto wN = [&](int i) { return b.p + b.q + b.r + i; };
  auto put = [&](int col, int um, int un, const Cyc& c) {
    phi.at(um * dn + un, col) = phi.at(um * dn + un, col) + c;
  };
  Cyc one = p.one();
  Cyc bj = a.b, bk = b.b, bb = bj * bk;
  int col = 0;
  for (int i = 0; i < a.p; ++i)
    for (int i2 = 0; i2 < b.p; ++i2) put(col++, xM(i), xN(i2), one);
  for (int i = 0; i < a.q; ++i)
    for (int i2 = 0; i2 < b.q; ++i2) put(col++, yM(i), yN(i2), one);
  for (int i = 0; i < a.r; ++i)
    for (int i2 = 0; i2 < b.r; ++i2) {
      put(col, vM(i), wN(i2), bj);
      put(col++, wM(i), vN(i2), bk);
    }
  for (int i = 0; i < a.p; ++i)
    for (int i2 = 0; i2 < b.q; ++i2) put(col++, xM(i), yN(i2), one);
  for (int i = 0; i < a.q; ++i)
    for (int i2 = 0; i2 < b.p; ++i2) put(col++, yM(i), xN(i2), one);
  for (int i = 0; i < a.r; ++i)
    for (int i2 = 0; i2 < b.r; ++i2) {
      put(col, vM(i), wN(i2), bj);
      put(col++, wM(i), vN(i2), -bk);
    }
  for (int i = 0; i < a.p; ++i)
    for (int i2 = 0; i2 < b.r; ++i2) put(col++, xM(i), vN(i2), one);
  for (int i = 0; i < a.q; ++i)
    for (int i2 = 0; i2 < b.r; ++i2) put(col++, yM(i), vN(i2), one);
  for (int i = 0; i < a.r; ++i)
    for (int i2 = 0; i2 < b.p; ++i2) put(col++, vM(i), xN(i2), one);
  for (int i = 0; i < a.r; ++i)
    for (int i2 = 0; i2 < b.q; ++i2) put(col++, vM(i), yN(i2), one);
  for (int i = 0; i < a.r; ++i)
    for (int i2 = 0; i2 < b.r; ++i2) put(col++, wM(i), wN(i2), one);
  for (int i = 0; i < a.p; ++i)
    for (int i2 = 0; i2 < b.r; ++i2) put(col++, xM(i), wN(i2), bj);
  for (int i = 0; i < a.q; ++i)
    for (int i2 = 0; i2 < b.r; ++i2) put(col++, yM(i), wN(i2), -bj);
  for (int i = 0; i < a.r; ++i)
    for (int i2 = 0; i2 < b.p; ++i2) put(col++, wM(i), xN(i2), bk);
  for (int i = 0; i < a.r; ++i)
    for (int i2 = 0; i2 < b.q; ++i2) put(col++, wM(i), yN(i2), -bk);
  for (int i = 0; i < a.r; ++i)
    for (int i2 = 0; i2 < b.r; ++i2) put(col++, vM(i), vN(i2), bb * bb);

  if (rank(phi) != total) throw FormulaMismatch("formula basis is not a basis");
  auto check = [&](const Mat& big, const Mat& formula, const char* what) {
    if (!(big * phi == phi * formula))
      throw FormulaMismatch(std::string("intertwiner fails on ") + what);
  };
  check(w.product.s, w.formula_product.s, "s");
  check(w.product.t, w.formula_product.t, "t");
  check(w.product.a0, w.formula_product.a0, "a0");
  w.iso = phi;
  return w;
}

// ---- decomposition ---------------------------------------------------------

DecomposeResult decompose(const ModuleRep& m, const Algebra& alg, const SimpleCatalog& catalog,
                          uint64_t seed) {
  DecomposeResult out;

  // catalog pool: covers first (descending dimension), then simples
  std::vector<ModuleRep> pool;
  for (const ModuleRep& s : catalog.simples) {
    ModuleRep c = projective_cover(s, alg, catalog).cover;
    pool.push_back(std::move(c));
  }
  std::stable_sort(pool.begin(), pool.end(),
                   [](const ModuleRep& x, const ModuleRep& y) { return x.dim() > y.dim(); });
  std::vector<ModuleRep> simples = catalog.simples;
  std::stable_sort(simples.begin(), simples.end(),
                   [](const ModuleRep& x, const ModuleRep& y) { return x.dim() > y.dim(); });
  for (ModuleRep& s : simples) pool.push_back(std::move(s));

  std::vector<ModuleRep> stack;
  for (auto& [j, block] : j_component(m)) stack.push_back(std::move(block));

  std::mt19937_64 rng(seed ^ 0x51f15eedcafef00dull);
  std::uniform_int_distribution<int> dist(-2, 2);
  const Ctx& ctx = m.params.ctx;

  while (!stack.empty()) {
    ModuleRep cur = std::move(stack.back());
    stack.pop_back();
    if (cur.dim() == 0) continue;
    bool peeled = false;
    for (const ModuleRep& c : pool) {
      if (c.dim() > cur.dim()) continue;
      auto fs = hom_space(c, cur);
      if (fs.empty()) continue;
      auto gs = hom_space(cur, c);
      if (gs.empty()) continue;
      auto try_pair = [&](const Mat& f, const Mat& g) -> bool {
        Mat gf = g * f;
        if (rank(gf) != c.dim()) return false;
        Mat pi = f * gf.inverse() * g;  // idempotent with image f(C)
        Mat complement = kernel_basis(pi);
        ModuleRep rest = complement.cols() == 0
                             ? ModuleRep{cur.params, Mat(ctx, 0, 0), Mat(ctx, 0, 0),
                                         Mat(ctx, 0, 0), "0"}
                             : submodule(cur, complement, cur.label + "/...");
        out.summands.push_back(c.label);
        if (rest.dim() > 0) stack.push_back(std::move(rest));
        return true;
      };
      for (const Mat& f : fs) {
        for (const Mat& g : gs)
          if (try_pair(f, g)) {
            peeled = true;
            break;
          }
        if (peeled) break;
      }
      if (!peeled) {
        for (int attempt = 0; attempt < 24 && !peeled; ++attempt) {
          Mat f(ctx, cur.dim(), c.dim()), g(ctx, c.dim(), cur.dim());
          for (const Mat& x : fs) f = f + x * Cyc::integer(ctx, dist(rng));
          for (const Mat& x : gs) g = g + x * Cyc::integer(ctx, dist(rng));
          peeled = try_pair(f, g);
        }
      }
      if (peeled) break;
    }
    if (!peeled) {
      // unsplittable leftover relative to the catalog: report, never drop
      if (out.remainder) {
        out.remainder = direct_sum(*out.remainder, cur);
      } else {
        out.remainder = cur;
      }
    }
  }
  if (out.remainder) out.remainder_factors = composition_factors(*out.remainder, catalog);
  std::sort(out.summands.begin(), out.summands.end());
  return out;
}

}  // namespace hopfrep
