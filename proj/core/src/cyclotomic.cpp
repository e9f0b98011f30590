#include "hopfrep/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace hopfrep {

long euler_phi(long n) {
  long result = n;
  long m = n;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

namespace {

// Exact division of polynomials over Q; remainder must vanish.
std::vector<Rat> poly_div_exact(std::vector<Rat> num, const std::vector<Rat>& den) {
  long dn = static_cast<long>(num.size()) - 1;
  long dd = static_cast<long>(den.size()) - 1;
  std::vector<Rat> quot(dn - dd + 1, Rat(0));
  for (long k = dn - dd; k >= 0; --k) {
    Rat c = num[k + dd] / den[dd];
    quot[k] = c;
    for (long i = 0; i <= dd; ++i) num[k + i] -= c * den[i];
  }
  for (const Rat& r : num)
    if (r != 0) throw Error("cyclotomic polynomial division left a remainder");
  return quot;
}

std::vector<Rat> x_pow_minus_one(long n) {
  std::vector<Rat> p(n + 1, Rat(0));
  p[0] = -1;
  p[n] = 1;
  return p;
}

std::vector<Rat> poly_mul(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  std::vector<Rat> r(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

std::mutex g_ctx_mutex;
std::map<long, Ctx> g_ctx_cache;

}  // namespace

std::vector<Rat> cyclotomic_polynomial(long n) {
  if (n == 1) return {Rat(-1), Rat(1)};
  std::vector<Rat> divisor_product = {Rat(1)};
  for (long d = 1; d < n; ++d)
    if (n % d == 0) divisor_product = poly_mul(divisor_product, cyclotomic_polynomial(d));
  return poly_div_exact(x_pow_minus_one(n), divisor_product);
}

Ctx FieldContext::make(long n) {
  if (n < 1) throw Error("conductor must be positive");
  std::lock_guard<std::mutex> lock(g_ctx_mutex);
  auto it = g_ctx_cache.find(n);
  if (it != g_ctx_cache.end()) return it->second;

  auto ctx = std::make_shared<FieldContext>();
  ctx->n = n;
  ctx->cyclo = cyclotomic_polynomial(n);
  ctx->phi = static_cast<long>(ctx->cyclo.size()) - 1;

  // x^{phi+k} mod Phi_n, built incrementally.
  long phi = ctx->phi;
  std::vector<Rat> cur(phi, Rat(0));  // x^phi reduced: -(lower part of Phi)
  for (long i = 0; i < phi; ++i) cur[i] = -ctx->cyclo[i];
  ctx->xred.push_back(cur);
  for (long k = 1; k <= phi - 2; ++k) {
    std::vector<Rat> nxt(phi, Rat(0));
    // multiply by x, reduce the overflow term via xred[0]
    Rat top = cur[phi - 1];
    for (long i = phi - 1; i >= 1; --i) nxt[i] = cur[i - 1];
    nxt[0] = 0;
    if (top != 0)
      for (long i = 0; i < phi; ++i) nxt[i] += top * ctx->xred[0][i];
    ctx->xred.push_back(nxt);
    cur = nxt;
  }

  Ctx out = ctx;
  g_ctx_cache.emplace(n, out);
  return out;
}

void Cyc::check_same(const Cyc& o) const {
  if (!ctx_ || !o.ctx_) throw Error("arithmetic on an empty scalar");
  if (ctx_->n != o.ctx_->n) throw ContextMismatch();
}

Cyc Cyc::rational(const Ctx& ctx, const Rat& q) {
  Cyc r(ctx);
  r.c_[0] = q;
  r.c_[0].canonicalize();
  return r;
}

Cyc Cyc::zeta(const Ctx& ctx, long k) {
  k = ((k % ctx->n) + ctx->n) % ctx->n;
  // zeta^k for k < phi is a basis vector; otherwise reduce x^k mod Phi_n.
  if (k < ctx->phi) {
    Cyc r(ctx);
    r.c_[k] = 1;
    return r;
  }
  std::vector<Rat> p(k + 1, Rat(0));
  p[k] = 1;
  // Peel the top degree via x^d = x^{d-phi} * (x^phi mod Phi_n).
  const auto& xphi = ctx->xred[0];
  for (long d = k; d >= ctx->phi; --d) {
    if (p[d] == 0) continue;
    Rat c = p[d];
    p[d] = 0;
    for (long i = 0; i < ctx->phi; ++i)
      if (xphi[i] != 0) p[d - ctx->phi + i] += c * xphi[i];
  }
  p.resize(ctx->phi);
  return from_coeffs(ctx, std::move(p));
}

Cyc Cyc::from_coeffs(Ctx ctx, std::vector<Rat> c) {
  if (static_cast<long>(c.size()) != ctx->phi) throw Error("coefficient vector has wrong length");
  Cyc r;
  r.ctx_ = std::move(ctx);
  r.c_ = std::move(c);
  for (auto& q : r.c_) q.canonicalize();
  return r;
}

bool Cyc::is_zero() const {
  for (const Rat& q : c_)
    if (q != 0) return false;
  return true;
}

bool Cyc::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Rat Cyc::rational_value() const {
  if (!is_rational()) throw Error("scalar is not rational: " + str());
  return c_[0];
}

Cyc Cyc::operator+(const Cyc& o) const {
  check_same(o);
  Cyc r = *this;
  for (long i = 0; i < ctx_->phi; ++i) r.c_[i] += o.c_[i];
  return r;
}

Cyc Cyc::operator-(const Cyc& o) const {
  check_same(o);
  Cyc r = *this;
  for (long i = 0; i < ctx_->phi; ++i) r.c_[i] -= o.c_[i];
  return r;
}

Cyc Cyc::operator-() const {
  Cyc r = *this;
  for (auto& q : r.c_) q = -q;
  return r;
}

Cyc Cyc::operator*(const Cyc& o) const {
  check_same(o);
  long phi = ctx_->phi;
  std::vector<Rat> prod(2 * phi - 1, Rat(0));
  for (long i = 0; i < phi; ++i) {
    if (c_[i] == 0) continue;
    for (long j = 0; j < phi; ++j) {
      if (o.c_[j] == 0) continue;
      prod[i + j] += c_[i] * o.c_[j];
    }
  }
  std::vector<Rat> red(phi, Rat(0));
  for (long i = 0; i < phi; ++i) red[i] = prod[i];
  for (long k = phi; k <= 2 * phi - 2; ++k) {
    if (prod[k] == 0) continue;
    const auto& row = ctx_->xred[k - phi];
    for (long i = 0; i < phi; ++i) red[i] += prod[k] * row[i];
  }
  Cyc r;
  r.ctx_ = ctx_;
  r.c_ = std::move(red);
  return r;
}

namespace {

long poly_deg(const std::vector<Rat>& p) {
  for (long i = static_cast<long>(p.size()) - 1; i >= 0; --i)
    if (p[i] != 0) return i;
  return -1;
}

// (quotient, remainder) of a by b over Q, b nonzero.
std::pair<std::vector<Rat>, std::vector<Rat>> poly_divmod(std::vector<Rat> a,
                                                          const std::vector<Rat>& b) {
  long db = poly_deg(b);
  long da = poly_deg(a);
  std::vector<Rat> q(std::max<long>(da - db + 1, 1), Rat(0));
  while (da >= db) {
    Rat c = a[da] / b[db];
    q[da - db] = c;
    for (long i = 0; i <= db; ++i) a[da - db + i] -= c * b[i];
    da = poly_deg(a);
  }
  return {std::move(q), std::move(a)};
}

}  // namespace

Cyc Cyc::inv() const {
  if (is_zero()) throw DivisionByZero();
  // Extended Euclid in Q[x] against Phi_n (irreducible, so the gcd is constant).
  std::vector<Rat> r0 = ctx_->cyclo;
  std::vector<Rat> r1 = c_;
  std::vector<Rat> s0 = {Rat(0)}, s1 = {Rat(1)};

  while (poly_deg(r1) > 0) {
    auto [q, rem] = poly_divmod(r0, r1);
    std::vector<Rat> qs = poly_mul(q, s1);
    std::vector<Rat> s2 = s0;
    if (s2.size() < qs.size()) s2.resize(qs.size(), Rat(0));
    for (size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (poly_deg(r1) != 0) throw Error("element not invertible modulo the cyclotomic polynomial");
  Rat lead = r1[0];
  std::vector<Rat> out(ctx_->phi, Rat(0));
  for (size_t i = 0; i < s1.size(); ++i) {
    if (s1[i] == 0) continue;
    if (i >= static_cast<size_t>(ctx_->phi)) throw Error("inverse overflowed the basis");
    out[i] = s1[i] / lead;
  }
  Cyc r;
  r.ctx_ = ctx_;
  r.c_ = std::move(out);
  return r;
}

Cyc Cyc::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  Cyc acc = Cyc::integer(ctx_, 1);
  Cyc base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

bool Cyc::operator==(const Cyc& o) const {
  check_same(o);
  return c_ == o.c_;
}

std::string Cyc::str() const {
  if (!ctx_) return "<empty>";
  std::ostringstream os;
  bool first = true;
  for (long i = 0; i < ctx_->phi; ++i) {
    if (c_[i] == 0) continue;
    Rat q = c_[i];
    if (!first) {
      os << (q < 0 ? " - " : " + ");
      if (q < 0) q = -q;
    } else if (q < 0) {
      os << "-";
      q = -q;
    }
    first = false;
    bool unit_coeff = (q == 1) && i != 0;
    if (!unit_coeff) os << q.get_str();
    if (i > 0) {
      if (!unit_coeff) os << "*";
      os << "z";
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

namespace {

std::optional<Rat> rational_sqrt(const Rat& q) {
  if (q < 0) return std::nullopt;
  if (q == 0) return Rat(0);
  mpz_class num = q.get_num(), den = q.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t())) {
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    return Rat(rn, rd);
  }
  return std::nullopt;
}

}  // namespace

std::optional<Cyc> sqrt_in_field(const Cyc& a) {
  const Ctx& ctx = a.ctx();
  if (a.is_zero()) return Cyc(ctx);
  long n = ctx->n;
  for (long k = 0; k < n; ++k) {
    Cyc q = a * Cyc::zeta(ctx, n - k);  // a * zeta^{-k}
    if (!q.is_rational()) continue;
    Rat qr = q.rational_value();
    if (k % 2 != 0) continue;
    if (auto r = rational_sqrt(qr)) return Cyc::rational(ctx, *r) * Cyc::zeta(ctx, k / 2);
    if (n % 3 == 0) {
      // absorb sqrt(-3) = 1 + 2 zeta_3
      if (auto r = rational_sqrt(-qr / 3)) {
        Cyc root3 = Cyc::integer(ctx, 1) + Cyc::integer(ctx, 2) * Cyc::zeta(ctx, n / 3);
        return Cyc::rational(ctx, *r) * Cyc::zeta(ctx, k / 2) * root3;
      }
    }
  }
  return std::nullopt;
}

Cyc sqrt_or_throw(const Cyc& a) {
  if (auto s = sqrt_in_field(a)) return *s;
  throw NeedsSquareRoot(a);
}

ParamSet ParamSet::make(int ell, const Cyc& hbar, const Cyc& mu) {
  if (ell < 1) throw ParamViolation("ell must be at least 1");
  long n = std::lcm<long>(3, 2L * ell);
  Ctx ctx = FieldContext::make(n);
  if (hbar.ctx()->n != n || mu.ctx()->n != n) throw ContextMismatch();
  ParamSet p;
  p.ell = ell;
  p.ctx = ctx;
  p.hbar = hbar;
  p.mu = mu;
  return p;
}

ParamSet ParamSet::make(int ell, const std::string& hbar, const std::string& mu) {
  long n = std::lcm<long>(3, 2L * ell);
  Ctx ctx = FieldContext::make(n);
  return make(ell, parse_scalar(ctx, hbar), parse_scalar(ctx, mu));
}

Cyc parse_scalar(const Ctx& ctx, const std::string& text) {
  std::string s;
  for (char c : text)
    if (!isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw Error("empty scalar literal");

  bool neg = false;
  size_t pos = 0;
  if (s[pos] == '+' || s[pos] == '-') {
    neg = s[pos] == '-';
    ++pos;
  }

  Rat q(1);
  bool have_q = false;
  if (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) {
    size_t start = pos;
    while (pos < s.size() && (isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/')) ++pos;
    q = Rat(s.substr(start, pos - start));
    q.canonicalize();
    have_q = true;
    if (pos < s.size() && s[pos] == '*') ++pos;
  }

  long k = 0;
  bool have_z = false;
  if (pos < s.size() && s[pos] == 'z') {
    have_z = true;
    ++pos;
    k = 1;
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      size_t start = pos;
      if (pos < s.size() && s[pos] == '-') ++pos;
      while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      k = std::stol(s.substr(start, pos - start));
    }
  }
  if (pos != s.size() || (!have_q && !have_z))
    throw Error("cannot parse scalar literal '" + text + "' (expected q, q/r, q*z^k or z^k)");
  if (neg) q = -q;
  Cyc r = Cyc::rational(ctx, q);
  if (have_z) r = r * Cyc::zeta(ctx, ((k % ctx->n) + ctx->n) % ctx->n);
  return r;
}

}  // namespace hopfrep
