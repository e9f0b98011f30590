#include "hopfrep/repmod.hpp"

#include <algorithm>
#include <sstream>

namespace hopfrep {

Mat ModuleRep::a(int i) const {
  switch (((i % 3) + 3) % 3) {
    case 0: return a0;
    case 1: return s * a0 * s.pow(2);
    default: return s.pow(2) * a0 * s;
  }
}

std::vector<std::string> verify(const ModuleRep& m) {
  std::vector<std::string> bad = verify_group(m.restriction());
  const Ctx& ctx = m.params.ctx;
  int n = m.dim();
  if (m.a0.rows() != n || m.a0.cols() != n) {
    bad.push_back("a0 has wrong shape");
    return bad;
  }
  Mat id = Mat::identity(ctx, n);
  Mat a0 = m.a0, a1 = m.a(1), a2 = m.a(2);
  Mat t2 = m.t * m.t;
  if (m.t * a0 != -(a0 * m.t)) bad.push_back("t a0 != -a0 t");
  Cyc mu = m.params.mu, lam = m.params.lambda();
  if (a0 * a0 != (id - t2) * mu) bad.push_back("a0^2 != mu (1 - t^2)");
  if (a0 * a1 + a1 * a2 + a2 * a0 != (id - m.s * t2) * lam)
    bad.push_back("a0 a1 + a1 a2 + a2 a0 != lambda (1 - s t^2)");
  if (a1 * a0 + a2 * a1 + a0 * a2 != (id - m.s.pow(2) * t2) * lam)
    bad.push_back("a1 a0 + a2 a1 + a0 a2 != lambda (1 - s^2 t^2)");
  return bad;
}

bool verified(const ModuleRep& m) { return verify(m).empty(); }

// ---- derived scalars ------------------------------------------------------

DerivedScalars derived_scalars(const ParamSet& params, int j) {
  if (j < 1 || j >= params.ell) throw ParamViolation("degree out of range for derived scalars");
  const Ctx& ctx = params.ctx;
  Cyc lam = params.lambda(), mu = params.mu;
  Cyc one = params.one();
  Cyc zj = params.zeta_pow(j);
  Cyc zmj = params.zeta_pow(params.ell - j);
  Cyc b = params.b(j);
  Cyc third = Cyc::rational(ctx, Rat(1, 3));
  Cyc ninth = Cyc::rational(ctx, Rat(1, 9));

  DerivedScalars d;
  d.f = (lam - Cyc::integer(ctx, 3) * mu) * (one - zj) * ninth * b.inv();
  d.g = (Cyc::integer(ctx, 3) * mu + Cyc::integer(ctx, 2) * lam) * (one - zj) * ninth;
  d.f_plus = mu * third * (one - zj) + lam * ninth * (Cyc::integer(ctx, 2) + zj);
  d.f_minus = mu * third * (one - zmj) + lam * ninth * (Cyc::integer(ctx, 2) + zmj);
  d.h = d.f_plus + b * b * d.f_minus + d.g;
  d.discriminant = d.h * d.h - Cyc::integer(ctx, 4) * d.f_plus * d.g;
  if (d.discriminant.is_zero()) {
    d.sqrt_disc = Cyc(ctx);
  } else if (d.f_plus.is_zero() || d.g.is_zero()) {
    d.sqrt_disc = d.h;  // disc = h^2
  } else {
    d.sqrt_disc = sqrt_in_field(d.discriminant);
  }
  if (d.sqrt_disc) {
    Cyc half = Cyc::rational(ctx, Rat(1, 2));
    d.s_root = (d.h + *d.sqrt_disc) * half;
  }
  return d;
}

std::vector<Upsilon> solve_upsilon(const ParamSet& params, int j) {
  DerivedScalars d = derived_scalars(params, j);
  const Ctx& ctx = params.ctx;
  if (d.g.is_zero() && d.h.is_zero()) {
    // c1 = c2 = 0 forces t1 t2 = f_plus = -lambda/3, one class
    Cyc third = Cyc::rational(ctx, Rat(1, 3));
    return {Upsilon{Cyc(ctx), Cyc(ctx), params.one(), -params.lambda() * third}};
  }
  if (!d.s_root) throw NeedsSquareRoot(d.discriminant);
  Cyc s = *d.s_root;
  if (s.is_zero()) throw Error("degenerate six-dimensional parameters outside the known branch");
  Upsilon u1{params.one(), d.g, s, d.f_plus / s};
  if (d.discriminant.is_zero()) return {u1};
  Upsilon u2{d.g, params.one(), d.f_plus / s, s};
  return {u1, u2};
}

std::vector<Cyc> exceptional_mus(const ParamSet& params, int j) {
  if (j < 1 || j >= params.ell) throw ParamViolation("degree out of range for exceptional slopes");
  const Ctx& ctx = params.ctx;
  Cyc b2 = params.b(j) * params.b(j);
  Cyc one = params.one();
  Cyc rad = b2 * b2 + b2 + one;
  Cyc root = sqrt_or_throw(rad);
  Cyc denom = (b2 - one).inv();
  std::vector<Cyc> out;
  for (int sign : {+1, -1}) {
    Cyc c = (one - b2 + Cyc::integer(ctx, 2 * sign) * root) * denom;
    if (c.is_zero()) continue;
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
  return out;
}

// ---- constructors ---------------------------------------------------------

namespace {

ModuleRep finish(ModuleRep m, const char* who) {
  auto bad = verify(m);
  if (!bad.empty())
    throw ParamViolation(std::string(who) + " does not satisfy the defining relations (" +
                         bad[0] + ") for these parameters");
  return m;
}

std::string sign_char(int s) { return s > 0 ? "+" : "-"; }

}  // namespace

ModuleRep make_one_dim(const ParamSet& params, int sign) {
  const Ctx& ctx = params.ctx;
  ModuleRep m{params, Mat::identity(ctx, 1), Mat(ctx, 1, 1), Mat(ctx, 1, 1)};
  m.t.at(0, 0) = Cyc::integer(ctx, sign > 0 ? 1 : -1);
  m.label = "L0^" + sign_char(sign);
  return finish(std::move(m), "one-dimensional module");
}

ModuleRep make_two_dim(const ParamSet& params, int j, int sa, int sc) {
  const Ctx& ctx = params.ctx;
  Cyc a = params.hbar * Cyc::integer(ctx, sa);
  Cyc c = params.hbar * Cyc::integer(ctx, sc);
  GroupIrrep mj = irrep_of(params, {IrrepLabel::TwoDim, j});
  ModuleRep m{params, mj.s, mj.t, Mat(ctx, 2, 2)};
  m.a0.at(0, 0) = a;
  m.a0.at(0, 1) = -(params.zeta_pow(j) * c);
  m.a0.at(1, 0) = c;
  m.a0.at(1, 1) = -a;
  std::ostringstream os;
  os << "L" << j << "(" << sign_char(sa) << "," << sign_char(sc) << ")";
  m.label = os.str();
  return finish(std::move(m), "two-dimensional module");
}

ModuleRep make_two_dim_zero(const ParamSet& params) {
  if (!params.lambda().is_zero()) throw ParamViolation("the zero-action module needs lambda = 0");
  GroupIrrep m0 = irrep_of(params, {IrrepLabel::TwoDim, 0});
  ModuleRep m{params, m0.s, m0.t, Mat(params.ctx, 2, 2)};
  m.label = "L0(0,0)";
  return finish(std::move(m), "two-dimensional module");
}

ModuleRep make_tj(const ParamSet& params, int j) {
  if (j < 1 || j >= params.ell) throw ParamViolation("T_j needs 1 <= j < l");
  const Ctx& ctx = params.ctx;
  Cyc b = params.b(j);
  ModuleRep m{params, Mat::identity(ctx, 2), Mat(ctx, 2, 2), Mat(ctx, 2, 2)};
  m.t.at(0, 0) = b;
  m.t.at(1, 1) = -b;
  m.a0.at(0, 1) = params.mu * (params.one() - params.zeta_pow(j));
  m.a0.at(1, 0) = params.one();
  m.label = "T" + std::to_string(j);
  return finish(std::move(m), "T_j");
}

ModuleRep make_t0(const ParamSet& params, int sign) {
  const Ctx& ctx = params.ctx;
  ModuleRep m{params, Mat::identity(ctx, 2), Mat(ctx, 2, 2), Mat(ctx, 2, 2)};
  m.t.at(0, 0) = Cyc::integer(ctx, 1);
  m.t.at(1, 1) = Cyc::integer(ctx, -1);
  if (sign > 0)
    m.a0.at(1, 0) = Cyc::integer(ctx, 1);
  else
    m.a0.at(0, 1) = Cyc::integer(ctx, 1);
  m.label = std::string("T0^") + sign_char(sign);
  return finish(std::move(m), "T_0");
}

ModuleRep make_graded(const ParamSet& params, IrrepLabel s) {
  GroupIrrep ir = irrep_of(params, s);
  ModuleRep m{params, ir.s, ir.t, Mat(params.ctx, ir.dim(), ir.dim())};
  m.label = "L[" + s.str() + "]";
  return finish(std::move(m), "zero-action module");
}

ModuleRep make_mixed(const ParamSet& params, const MixedSpec& sp, bool validate) {
  const Ctx& ctx = params.ctx;
  int p = sp.p, q = sp.q, r = sp.r;
  int n = sp.dim();
  Cyc zj = params.zeta_pow(sp.j);
  Cyc b = sp.b;
  if (b * b != zj) throw ParamViolation("mixed form: b^2 != zeta^j");

  if (validate) {
    DerivedScalars d;
    if (sp.j >= 1) {
      d = derived_scalars(params, sp.j);
    } else {
      // degree zero: f = g = 0, f_plus = f_minus = lambda/3, h = 2 lambda/3
      Cyc third = Cyc::rational(ctx, Rat(1, 3));
      d.f = Cyc(ctx);
      d.g = Cyc(ctx);
      d.f_plus = params.lambda() * third;
      d.f_minus = d.f_plus;
      d.h = d.f_plus + d.f_plus;
    }
    auto idp = [&](int k, const Cyc& c) { return Mat::scalar(ctx, k, c); };
    auto expect = [&](bool ok, const char* what) {
      if (!ok) throw ParamViolation(std::string("mixed form: ") + what);
    };
    expect(sp.beta * sp.alpha == idp(p, d.g), "beta alpha != g");
    expect(sp.alpha * sp.beta == idp(q, d.g), "alpha beta != g");
    expect(sp.theta * sp.theta == idp(r, d.f_plus), "theta^2 != f_plus");
    expect(sp.tau * sp.tau == idp(r, d.f_minus), "tau^2 != f_minus");
    expect((sp.dplus * sp.sigma).is_zero(), "dplus sigma != 0");
    expect((sp.dminus * sp.eta).is_zero(), "dminus eta != 0");
    expect(sp.dplus * sp.eta == idp(p, d.f), "dplus eta != f");
    expect(sp.dminus * sp.sigma == -idp(q, d.f), "dminus sigma != -f");
    expect(sp.eta * sp.dplus - sp.sigma * sp.dminus == idp(r, d.f), "eta dplus - sigma dminus != f");
    expect(sp.eta * sp.dplus + sp.sigma * sp.dminus == sp.tau * sp.theta - sp.theta * sp.tau,
           "eta dplus + sigma dminus != [tau, theta]");
    Mat bt_p = sp.tau * b;
    expect((sp.beta * sp.dminus - sp.dplus * (bt_p + sp.theta)).is_zero(),
           "beta dminus != dplus (b tau + theta)");
    expect((sp.alpha * sp.dplus + sp.dminus * (bt_p - sp.theta)).is_zero(),
           "alpha dplus != -dminus (b tau - theta)");
    expect((sp.sigma * sp.alpha - (bt_p - sp.theta) * sp.eta).is_zero(),
           "sigma alpha != (b tau - theta) eta");
    expect((sp.eta * sp.beta + (bt_p + sp.theta) * sp.sigma).is_zero(),
           "eta beta != -(b tau + theta) sigma");
  }

  ModuleRep m{params, Mat(ctx, n, n), Mat(ctx, n, n), Mat(ctx, n, n)};
  Cyc one = params.one();
  Cyc xi = params.xi();
  // s: trivial on the one-dimensional parts, xi / xi^2 on the pair blocks
  for (int i = 0; i < p + q; ++i) m.s.at(i, i) = one;
  for (int i = 0; i < r; ++i) {
    m.s.at(p + q + i, p + q + i) = xi;
    m.s.at(p + q + r + i, p + q + r + i) = xi * xi;
  }
  // t: b on x, -b on y, swap with zeta^j on the (v, w) pairs
  for (int i = 0; i < p; ++i) m.t.at(i, i) = b;
  for (int i = 0; i < q; ++i) m.t.at(p + i, p + i) = -b;
  for (int i = 0; i < r; ++i) {
    m.t.at(p + q + i, p + q + r + i) = zj;
    m.t.at(p + q + r + i, p + q + i) = one;
  }
  // a0 columns: images of the basis vectors
  // a0 x = beta y + dplus (w - b v);  a0 y = alpha x + dminus (w + b v)
  // a0 v = eta x + sigma y + theta v + tau w
  // a0 w = -b eta x + b sigma y - zeta^j tau v - theta w
  for (int i = 0; i < p; ++i) {
    for (int k = 0; k < q; ++k) m.a0.at(p + k, i) = sp.beta.at(i, k);
    for (int k = 0; k < r; ++k) {
      m.a0.at(p + q + k, i) = -(b * sp.dplus.at(i, k));
      m.a0.at(p + q + r + k, i) = sp.dplus.at(i, k);
    }
  }
  for (int i = 0; i < q; ++i) {
    for (int k = 0; k < p; ++k) m.a0.at(k, p + i) = sp.alpha.at(i, k);
    for (int k = 0; k < r; ++k) {
      m.a0.at(p + q + k, p + i) = b * sp.dminus.at(i, k);
      m.a0.at(p + q + r + k, p + i) = sp.dminus.at(i, k);
    }
  }
  for (int i = 0; i < r; ++i) {
    for (int k = 0; k < p; ++k) m.a0.at(k, p + q + i) = sp.eta.at(i, k);
    for (int k = 0; k < q; ++k) m.a0.at(p + k, p + q + i) = sp.sigma.at(i, k);
    for (int k = 0; k < r; ++k) {
      m.a0.at(p + q + k, p + q + i) = sp.theta.at(i, k);
      m.a0.at(p + q + r + k, p + q + i) = sp.tau.at(i, k);
    }
    for (int k = 0; k < p; ++k) m.a0.at(k, p + q + r + i) = -(b * sp.eta.at(i, k));
    for (int k = 0; k < q; ++k) m.a0.at(p + k, p + q + r + i) = b * sp.sigma.at(i, k);
    for (int k = 0; k < r; ++k) {
      m.a0.at(p + q + k, p + q + r + i) = -(zj * sp.tau.at(i, k));
      m.a0.at(p + q + r + k, p + q + r + i) = -sp.theta.at(i, k);
    }
  }
  return finish(std::move(m), "mixed-form module");
}

ModuleRep make_six_dim(const ParamSet& params, int j, const Upsilon& u) {
  if (params.mu_is_lambda_third() && !params.graded())
    throw ParamViolation("no six-dimensional simples on the exponential line");
  DerivedScalars d = derived_scalars(params, j);
  const Ctx& ctx = params.ctx;
  if (u.c1 * u.c2 != d.g || u.t1 * u.t2 != d.f_plus || u.c1 * u.t1 + u.c2 * u.t2 != d.h)
    throw ParamViolation("six-dimensional parameters do not solve the defining equations");
  Cyc b = params.b(j);
  Cyc binv = b.inv();
  MixedSpec sp;
  sp.j = j;
  sp.b = b;
  sp.p = sp.q = 1;
  sp.r = 2;
  sp.alpha = Mat(ctx, 1, 1);
  sp.alpha.at(0, 0) = u.c2;
  sp.beta = Mat(ctx, 1, 1);
  sp.beta.at(0, 0) = u.c1;
  sp.dplus = Mat(ctx, 1, 2);
  sp.dplus.at(0, 0) = params.one();
  sp.dminus = Mat(ctx, 1, 2);
  sp.dminus.at(0, 1) = params.one();
  sp.eta = Mat(ctx, 2, 1);
  sp.eta.at(0, 0) = d.f;
  sp.sigma = Mat(ctx, 2, 1);
  sp.sigma.at(1, 0) = -d.f;
  sp.theta = Mat(ctx, 2, 2);
  sp.theta.at(0, 1) = u.t2;
  sp.theta.at(1, 0) = u.t1;
  sp.tau = Mat(ctx, 2, 2);
  sp.tau.at(0, 1) = (u.c1 - u.t2) * binv;
  sp.tau.at(1, 0) = (u.t1 - u.c2) * binv;
  ModuleRep m = make_mixed(params, sp, true);
  m.label = "N" + std::to_string(j);
  return m;
}

ModuleRep make_cover_six(const ParamSet& params, int j, int sa, int sc, const Rat& qp,
                         const Rat& rp) {
  if (params.lambda().is_zero()) throw ParamViolation("the six-dimensional cover needs lambda != 0");
  if (j >= 1 && !params.mu_is_lambda_third())
    throw ParamViolation("positive-degree cover needs mu = lambda/3");
  const Ctx& ctx = params.ctx;
  Cyc a = params.hbar * Cyc::integer(ctx, sa);
  Cyc b = params.b(j);
  Cyc b2 = b * b;
  Cyc one = params.one();
  Cyc qq = Cyc::rational(ctx, qp), rr = Cyc::rational(ctx, rp);
  Cyc zero = params.zero();

  // basis x, y, v, w, v', w'
  ModuleRep m{params, Mat(ctx, 6, 6), Mat(ctx, 6, 6), Mat(ctx, 6, 6)};
  Cyc xi = params.xi();
  std::vector<Cyc> sdiag = {one, one, xi, xi * xi, xi, xi * xi};
  for (int i = 0; i < 6; ++i) m.s.at(i, i) = sdiag[i];
  m.t.at(0, 0) = b;
  m.t.at(1, 1) = -b;
  m.t.at(2, 3) = b2;
  m.t.at(3, 2) = one;
  m.t.at(4, 5) = b2;
  m.t.at(5, 4) = one;

  auto set_rows = [&](std::vector<std::vector<Cyc>> rows) {
    for (int i = 0; i < 6; ++i)
      for (int k = 0; k < 6; ++k) m.a0.at(i, k) = rows[i][k];
  };
  if (sa == sc) {
    Cyc bq_r = b * qq + rr;
    set_rows({{zero, a * (b - one), -(b * a), b2 * a, bq_r, -(b * bq_r)},
              {-(a * (one + b)), zero, b * a, b2 * a, rr, b * rr},
              {zero, zero, -a, b2 * a, qq, -(b2 * qq)},
              {zero, zero, -a, a, qq, -qq},
              {zero, zero, zero, zero, a, -(b2 * a)},
              {zero, zero, zero, zero, a, -a}});
  } else {
    Cyc two = Cyc::integer(ctx, 2);
    Cyc q2r = two * qq + rr;
    set_rows({{zero, -(a * (one + b)), zero, zero, qq, -(b * qq)},
              {-(a * (one - b)), zero, zero, zero, qq, b * qq},
              {-(two * b * a), two * b * a, -a, -(b2 * a), rr, b2 * q2r},
              {two * a, two * a, a, a, -q2r, -rr},
              {zero, zero, zero, zero, a, b2 * a},
              {zero, zero, zero, zero, -a, -a}});
  }
  std::ostringstream os;
  os << "P" << j << "(" << sign_char(sa) << "," << sign_char(sc) << ")";
  m.label = os.str();
  return finish(std::move(m), "six-dimensional cover");
}

ModuleRep make_pjac(const ParamSet& params, int j, int sa, int sc) {
  return make_cover_six(params, j, sa, sc, Rat(1), Rat(0));
}

// ---- catalog --------------------------------------------------------------

SimpleCatalog enumerate_simples(const ParamSet& params) {
  SimpleCatalog cat;
  const int ell = params.ell;
  Cyc lam = params.lambda();

  if (params.graded()) {
    for (int j = 0; j < ell; ++j) {
      cat.simples.push_back(make_graded(params, {IrrepLabel::SPlus, j}));
      cat.simples.push_back(make_graded(params, {IrrepLabel::SMinus, j}));
      cat.simples.push_back(make_graded(params, {IrrepLabel::TwoDim, j}));
    }
    return cat;
  }

  cat.simples.push_back(make_one_dim(params, +1));
  cat.simples.push_back(make_one_dim(params, -1));

  if (params.mu_is_lambda_third()) {
    // exponential line: four two-dimensionals per degree plus T_j
    for (int j = 0; j < ell; ++j) {
      for (int sa : {+1, -1})
        for (int sc : {+1, -1}) cat.simples.push_back(make_two_dim(params, j, sa, sc));
      if (j >= 1) cat.simples.push_back(make_tj(params, j));
    }
    return cat;
  }

  if (lam.is_zero()) {
    cat.simples.push_back(make_two_dim_zero(params));
  } else {
    for (int sa : {+1, -1})
      for (int sc : {+1, -1}) cat.simples.push_back(make_two_dim(params, 0, sa, sc));
  }
  for (int j = 1; j < ell; ++j) {
    try {
      auto ups = solve_upsilon(params, j);
      for (size_t i = 0; i < ups.size(); ++i) {
        ModuleRep n = make_six_dim(params, j, ups[i]);
        n.label = "N" + std::to_string(j) + "(" + std::to_string(i + 1) + ")";
        cat.simples.push_back(std::move(n));
      }
    } catch (const NeedsSquareRoot& e) {
      cat.complete = false;
      cat.missing.push_back({j, e.radicand});
    }
  }
  return cat;
}

// ---- structure ------------------------------------------------------------

namespace {

// Normal-form words of the twelve-dimensional quadratic algebra on the
// generator letters; the image of the whole algebra on a verified module is
// spanned by these words times the group monomials.
const std::vector<std::vector<int>>& normal_form_words() {
  static const std::vector<std::vector<int>> words = {
      {},        {0},       {1},       {2},          {0, 1},       {0, 2},
      {1, 0},    {1, 2},    {0, 1, 0}, {0, 1, 2},    {1, 0, 2},    {0, 1, 0, 2}};
  return words;
}

}  // namespace

MatAlgebra enveloping_algebra(const ModuleRep& m) {
  const Ctx& ctx = m.params.ctx;
  int n = m.dim();
  MatAlgebra alg;
  alg.ambient_dim = n;
  EchelonSpan span(ctx);
  std::vector<Mat> word_ops;
  for (const auto& w : normal_form_words()) {
    Mat r = Mat::identity(ctx, n);
    for (int l : w) r = r * m.a(l);
    word_ops.push_back(std::move(r));
  }
  Mat spow = Mat::identity(ctx, n);
  for (int a = 0; a < 3; ++a) {
    Mat g = spow;
    for (int b = 0; b < 2 * m.params.ell; ++b) {
      for (const Mat& w : word_ops) {
        Mat el = w * g;
        if (span.add(el.flatten())) alg.basis.push_back(std::move(el));
      }
      g = g * m.t;
    }
    spow = spow * m.s;
  }
  return alg;
}

bool is_simple(const ModuleRep& m) {
  if (m.dim() == 0) return false;
  MatAlgebra alg = enveloping_algebra(m);
  return static_cast<int>(alg.basis.size()) == m.dim() * m.dim();
}

Mat radical_of(const ModuleRep& m) {
  MatAlgebra alg = enveloping_algebra(m);
  std::vector<Mat> rad = jacobson_radical(alg);
  const Ctx& ctx = m.params.ctx;
  int n = m.dim();
  EchelonSpan span(ctx);
  std::vector<std::vector<Cyc>> cols;
  for (const Mat& r : rad)
    for (int c = 0; c < n; ++c) {
      std::vector<Cyc> v(n, Cyc(ctx));
      for (int i = 0; i < n; ++i) v[i] = r.at(i, c);
      std::vector<Cyc> copy = v;
      if (span.add(std::move(copy))) cols.push_back(std::move(v));
    }
  Mat out(ctx, n, static_cast<int>(cols.size()));
  for (size_t c = 0; c < cols.size(); ++c)
    for (int i = 0; i < n; ++i) out.at(i, static_cast<int>(c)) = cols[c][i];
  return out;
}

Mat socle(const ModuleRep& m) {
  MatAlgebra alg = enveloping_algebra(m);
  std::vector<Mat> rad = jacobson_radical(alg);
  const Ctx& ctx = m.params.ctx;
  int n = m.dim();
  if (rad.empty()) return Mat::identity(ctx, n);
  Mat stack = rad[0];
  for (size_t i = 1; i < rad.size(); ++i) stack = stack.vstack(rad[i]);
  return kernel_basis(stack);
}

ModuleRep submodule(const ModuleRep& m, const Mat& basis_cols, const std::string& label) {
  auto restrict_to = [&](const Mat& g) {
    auto x = solve_linear(basis_cols, g * basis_cols);
    if (!x) throw Error("subspace is not invariant");
    return *x;
  };
  ModuleRep r{m.params, restrict_to(m.s), restrict_to(m.t), restrict_to(m.a0), label};
  return r;
}

namespace {

// Extend independent columns to an invertible square matrix with unit vectors.
Mat complete_basis(const Mat& cols) {
  const Ctx& ctx = cols.ctx();
  int n = cols.rows();
  EchelonSpan span(ctx);
  Mat full(ctx, n, n);
  int have = 0;
  for (int c = 0; c < cols.cols(); ++c) {
    std::vector<Cyc> v(n, Cyc(ctx));
    for (int i = 0; i < n; ++i) v[i] = cols.at(i, c);
    if (!span.add(std::move(v))) throw Error("dependent columns in basis completion");
    for (int i = 0; i < n; ++i) full.at(i, have) = cols.at(i, c);
    ++have;
  }
  for (int e = 0; e < n && have < n; ++e) {
    std::vector<Cyc> v(n, Cyc(ctx));
    v[e] = Cyc::integer(ctx, 1);
    if (span.add(std::move(v))) {
      full.at(e, have) = Cyc::integer(ctx, 1);
      ++have;
    }
  }
  if (have != n) throw Error("basis completion failed");
  return full;
}

}  // namespace

ModuleRep quotient(const ModuleRep& m, const Mat& sub_cols, const std::string& label) {
  const Ctx& ctx = m.params.ctx;
  int n = m.dim();
  int k = sub_cols.cols();
  Mat full = complete_basis(sub_cols);
  Mat inv = full.inverse();
  auto project = [&](const Mat& g) {
    Mat conj = inv * g * full;
    return conj.submatrix(k, k, n - k, n - k);
  };
  return ModuleRep{m.params, project(m.s), project(m.t), project(m.a0), label};
}

ModuleRep top(const ModuleRep& m) {
  Mat rad = radical_of(m);
  if (rad.cols() == 0) {
    ModuleRep r = m;
    r.label = "top(" + m.label + ")";
    return r;
  }
  return quotient(m, rad, "top(" + m.label + ")");
}

std::vector<std::pair<std::string, int>> composition_factors(const ModuleRep& m,
                                                             const SimpleCatalog& catalog) {
  std::vector<std::pair<std::string, int>> acc;
  auto add = [&](const std::string& label, int mult) {
    for (auto& [l, c] : acc)
      if (l == label) {
        c += mult;
        return;
      }
    acc.push_back({label, mult});
  };

  std::vector<ModuleRep> stack = {m};
  while (!stack.empty()) {
    ModuleRep cur = std::move(stack.back());
    stack.pop_back();
    if (cur.dim() == 0) continue;
    Mat soc = socle(cur);
    ModuleRep socmod = soc.cols() == cur.dim() ? cur : submodule(cur, soc, "socle");
    // match the semisimple layer against the catalog
    int matched = 0;
    for (const ModuleRep& simple : catalog.simples) {
      if (simple.dim() > socmod.dim()) continue;
      int mult = static_cast<int>(hom_space(simple, socmod).size());
      if (mult > 0) {
        add(simple.label, mult);
        matched += mult * simple.dim();
      }
    }
    if (matched != socmod.dim())
      throw UnmatchedFactor("a composition factor of " + m.label +
                            " matches no catalogued simple module");
    if (soc.cols() < cur.dim()) stack.push_back(quotient(cur, soc, cur.label + "/socle"));
  }
  std::sort(acc.begin(), acc.end());
  return acc;
}

bool is_indecomposable(const ModuleRep& m) {
  std::vector<Mat> ends = hom_space(m, m);
  if (ends.empty()) return false;
  MatAlgebra alg;
  alg.ambient_dim = m.dim();
  alg.basis = ends;
  std::vector<Mat> rad = jacobson_radical(alg);
  return ends.size() - rad.size() == 1;
}

std::vector<Mat> hom_space(const ModuleRep& m, const ModuleRep& n) {
  const Ctx& ctx = m.params.ctx;
  if (!m.params.same(n.params)) throw ParamViolation("hom between different parameter sets");
  std::vector<Mat> gbasis = group_intertwiners(m.restriction(), n.restriction());
  if (gbasis.empty()) return {};

  // impose commutation with the generator a0 on the equivariant span
  int rowsflat = n.dim() * m.dim();
  Mat constraint(ctx, rowsflat, static_cast<int>(gbasis.size()));
  for (size_t c = 0; c < gbasis.size(); ++c) {
    Mat cmat = gbasis[c] * m.a0 - n.a0 * gbasis[c];
    for (int i = 0; i < n.dim(); ++i)
      for (int j = 0; j < m.dim(); ++j)
        constraint.at(i * m.dim() + j, static_cast<int>(c)) = cmat.at(i, j);
  }
  Mat coeffs = kernel_basis(constraint);
  std::vector<Mat> out;
  for (int c = 0; c < coeffs.cols(); ++c) {
    Mat x(ctx, n.dim(), m.dim());
    for (size_t b = 0; b < gbasis.size(); ++b) {
      const Cyc& w = coeffs.at(static_cast<int>(b), c);
      if (w.is_zero()) continue;
      x = x + gbasis[b] * w;
    }
    out.push_back(std::move(x));
  }
  return out;
}

std::optional<Mat> find_isomorphism(const ModuleRep& m, const ModuleRep& n, uint64_t seed) {
  if (m.dim() != n.dim()) return std::nullopt;
  std::vector<Mat> homs = hom_space(m, n);
  if (homs.empty()) return std::nullopt;
  auto invertible = [&](const Mat& x) { return rank(x) == m.dim(); };
  for (const Mat& h : homs)
    if (invertible(h)) return h;
  for (size_t i = 0; i < homs.size(); ++i)
    for (size_t j = i + 1; j < homs.size(); ++j) {
      Mat sum = homs[i] + homs[j];
      if (invertible(sum)) return sum;
      Mat dif = homs[i] - homs[j];
      if (invertible(dif)) return dif;
    }
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::uniform_int_distribution<int> dist(-3, 3);
  const Ctx& ctx = m.params.ctx;
  for (int attempt = 0; attempt < 64; ++attempt) {
    Mat x(ctx, n.dim(), m.dim());
    for (const Mat& h : homs) x = x + h * Cyc::integer(ctx, dist(rng));
    if (invertible(x)) return x;
  }
  return std::nullopt;
}

bool is_isomorphic(const ModuleRep& m, const ModuleRep& n, uint64_t seed) {
  return find_isomorphism(m, n, seed).has_value();
}

std::vector<std::pair<int, ModuleRep>> j_component(const ModuleRep& m) {
  auto blocks = j_split(m.restriction());
  std::vector<std::pair<int, ModuleRep>> out;
  for (auto& [j, cols] : blocks) {
    std::string label = m.label + "[" + std::to_string(j) + "]";
    out.push_back({j, submodule(m, cols, label)});
  }
  return out;
}

ModuleRep direct_sum(const ModuleRep& a, const ModuleRep& b) {
  const Ctx& ctx = a.params.ctx;
  int n = a.dim() + b.dim();
  auto block = [&](const Mat& x, const Mat& y) {
    Mat r(ctx, n, n);
    for (int i = 0; i < x.rows(); ++i)
      for (int j = 0; j < x.cols(); ++j) r.at(i, j) = x.at(i, j);
    for (int i = 0; i < y.rows(); ++i)
      for (int j = 0; j < y.cols(); ++j) r.at(a.dim() + i, a.dim() + j) = y.at(i, j);
    return r;
  };
  return ModuleRep{a.params, block(a.s, b.s), block(a.t, b.t), block(a.a0, b.a0),
                   a.label + "+" + b.label};
}

namespace {

// Smallest invariant subspace containing the given columns.
Mat invariant_closure(const ModuleRep& m, const Mat& seed_cols) {
  const Ctx& ctx = m.params.ctx;
  int n = m.dim();
  EchelonSpan span(ctx);
  std::vector<Mat> cols;
  std::vector<Mat> work;
  auto push = [&](const Mat& v) {
    std::vector<Cyc> flat(n, Cyc(ctx));
    for (int i = 0; i < n; ++i) flat[i] = v.at(i, 0);
    if (span.add(std::move(flat))) {
      cols.push_back(v);
      work.push_back(v);
    }
  };
  for (int c = 0; c < seed_cols.cols(); ++c) push(seed_cols.column(c));
  while (!work.empty()) {
    Mat v = work.back();
    work.pop_back();
    push(m.s * v);
    push(m.t * v);
    push(m.a0 * v);
  }
  Mat out(ctx, n, static_cast<int>(cols.size()));
  for (size_t c = 0; c < cols.size(); ++c)
    for (int i = 0; i < n; ++i) out.at(i, static_cast<int>(c)) = cols[c].at(i, 0);
  return out;
}

}  // namespace

std::optional<ModuleRep> split_summand_with_top(const ModuleRep& m, const ModuleRep& simple,
                                                const SimpleCatalog& catalog) {
  const Ctx& ctx = m.params.ctx;
  int n = m.dim();
  Mat rad = radical_of(m);
  int k = rad.cols();
  Mat full = complete_basis(rad);
  Mat inv = full.inverse();
  ModuleRep topmod = quotient(m, rad, "top");
  Mat proj = inv.submatrix(k, 0, n - k, n);  // M -> top coordinates
  Mat lift = full.submatrix(0, k, n, n - k); // coset representatives

  std::vector<Mat> ends = hom_space(m, m);
  if (ends.empty()) return std::nullopt;

  std::vector<Mat> target = hom_space(simple, topmod);
  if (target.empty()) return std::nullopt;

  // Full decomposition of the semisimple top into simple summands: the
  // target copies first, then every other catalog constituent.
  int dt = topmod.dim();
  int dl = simple.dim();
  Mat u = target[0];
  for (size_t i = 1; i < target.size(); ++i) u = u.hstack(target[i]);
  for (const ModuleRep& other : catalog.simples) {
    if (other.dim() == simple.dim() && is_isomorphic(other, simple)) continue;
    for (const Mat& emb : hom_space(other, topmod)) u = u.hstack(emb);
  }
  if (u.cols() != dt)
    throw UnmatchedFactor("top of " + m.label + " is not covered by the catalog");
  Mat uinv = u.inverse();

  // Module projector onto the first target copy along all other summands.
  Mat pmat = u.submatrix(0, 0, dt, dl) * uinv.submatrix(0, 0, dl, dt);

  // induced maps on the top
  std::vector<Mat> bars;
  bars.reserve(ends.size());
  for (const Mat& e : ends) bars.push_back(proj * e * lift);
  // solve sum x_i bars_i = pmat
  Mat sys(ctx, dt * dt, static_cast<int>(bars.size()));
  for (size_t c = 0; c < bars.size(); ++c)
    for (int i = 0; i < dt; ++i)
      for (int j = 0; j < dt; ++j) sys.at(i * dt + j, static_cast<int>(c)) = bars[c].at(i, j);
  Mat rhs(ctx, dt * dt, 1);
  for (int i = 0; i < dt; ++i)
    for (int j = 0; j < dt; ++j) rhs.at(i * dt + j, 0) = pmat.at(i, j);
  auto sol = solve_linear(sys, rhs);
  if (!sol) return std::nullopt;
  Mat e(ctx, n, n);
  for (size_t c = 0; c < bars.size(); ++c)
    if (!sol->at(static_cast<int>(c), 0).is_zero()) e = e + ends[c] * sol->at(static_cast<int>(c), 0);

  // Newton idempotent refinement: kills the radical error term exactly after
  // a few steps since rad End is nilpotent.
  for (int it = 0; it < 16; ++it) {
    Mat e2 = e * e;
    if (e2 == e) break;
    e = e2 * Cyc::integer(ctx, 3) - e2 * e * Cyc::integer(ctx, 2);
  }
  if (!(e * e == e)) throw Error("idempotent refinement did not converge");
  if (e.is_zero()) return std::nullopt;

  // image of e is a direct summand
  EchelonSpan span(ctx);
  std::vector<int> keep;
  for (int c = 0; c < n; ++c) {
    std::vector<Cyc> v(n, Cyc(ctx));
    for (int i = 0; i < n; ++i) v[i] = e.at(i, c);
    if (span.add(std::move(v))) keep.push_back(c);
  }
  Mat img(ctx, n, static_cast<int>(keep.size()));
  for (size_t c = 0; c < keep.size(); ++c)
    for (int i = 0; i < n; ++i) img.at(i, static_cast<int>(c)) = e.at(i, keep[c]);
  return submodule(m, img, "summand(" + m.label + "->" + simple.label + ")");
}

std::optional<Mat> proper_submodule_witness(const ModuleRep& m) {
  if (m.dim() <= 1) return std::nullopt;
  Mat soc = socle(m);
  if (soc.cols() > 0 && soc.cols() < m.dim()) return soc;
  // semisimple: spin single vectors until one generates a proper submodule
  const Ctx& ctx = m.params.ctx;
  for (int e = 0; e < m.dim(); ++e) {
    Mat seed(ctx, m.dim(), 1);
    seed.at(e, 0) = Cyc::integer(ctx, 1);
    Mat gen = invariant_closure(m, seed);
    if (gen.cols() > 0 && gen.cols() < m.dim()) return gen;
  }
  // singular endomorphism images
  std::vector<Mat> ends = hom_space(m, m);
  for (const Mat& h : ends) {
    int r = rank(h);
    if (r > 0 && r < m.dim()) {
      Mat img = invariant_closure(m, h);
      if (img.cols() < m.dim()) return img;
    }
  }
  return std::nullopt;
}

}  // namespace hopfrep
