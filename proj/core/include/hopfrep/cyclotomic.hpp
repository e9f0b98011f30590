#pragma once

// Exact arithmetic in the cyclotomic field Q(zeta_n), represented as
// Q[x]/Phi_n(x) with dense rational coordinate vectors in the power basis
// 1, zeta, ..., zeta^{phi(n)-1}. Equality of coordinate vectors is equality
// of field elements, so every value is canonical by construction.

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hopfrep/errors.hpp"

namespace hopfrep {

using Rat = mpq_class;

struct FieldContext;
using Ctx = std::shared_ptr<const FieldContext>;

struct FieldContext {
  long n = 1;                          // conductor
  long phi = 1;                        // deg Phi_n
  std::vector<Rat> cyclo;              // Phi_n, monic, length phi+1
  std::vector<std::vector<Rat>> xred;  // x^{phi+k} mod Phi_n for k = 0..phi-2

  static Ctx make(long n);
};

// Euler totient and Phi_n over Q; exposed for tests.
long euler_phi(long n);
std::vector<Rat> cyclotomic_polynomial(long n);

class Cyc {
 public:
  Cyc() = default;  // empty value; using it in arithmetic is an error
  explicit Cyc(Ctx ctx) : ctx_(std::move(ctx)) { c_.assign(ctx_->phi, Rat(0)); }

  static Cyc rational(const Ctx& ctx, const Rat& q);
  static Cyc integer(const Ctx& ctx, long v) { return rational(ctx, Rat(v)); }
  static Cyc zeta(const Ctx& ctx, long k = 1);  // zeta_n^k

  const Ctx& ctx() const { return ctx_; }
  const std::vector<Rat>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  Rat rational_value() const;  // requires is_rational

  Cyc operator+(const Cyc& o) const;
  Cyc operator-(const Cyc& o) const;
  Cyc operator*(const Cyc& o) const;
  Cyc operator-() const;
  Cyc inv() const;  // throws DivisionByZero on 0
  Cyc operator/(const Cyc& o) const { return *this * o.inv(); }
  Cyc pow(long e) const;  // negative e allowed on units

  Cyc& operator+=(const Cyc& o) { return *this = *this + o; }
  Cyc& operator-=(const Cyc& o) { return *this = *this - o; }
  Cyc& operator*=(const Cyc& o) { return *this = *this * o; }

  bool operator==(const Cyc& o) const;
  bool operator!=(const Cyc& o) const { return !(*this == o); }

  std::string str() const;  // human readable, z = zeta_n

  static Cyc from_coeffs(Ctx ctx, std::vector<Rat> c);

 private:
  Ctx ctx_;
  std::vector<Rat> c_;

  void check_same(const Cyc& o) const;
};

// Square root by monomial search: succeeds when the radicand is q*zeta^k
// with k even and q = r^2 or q = -3 r^2 for rational r (sqrt(-3) = 1+2*xi is
// always in the field since 3 | n). Returns nothing otherwise; callers that
// know a root from elsewhere can supply it themselves.
std::optional<Cyc> sqrt_in_field(const Cyc& a);

struct NeedsSquareRoot : Error {
  Cyc radicand;
  explicit NeedsSquareRoot(Cyc a)
      : Error("square root not available in the working field: " + a.str()),
        radicand(std::move(a)) {}
};

Cyc sqrt_or_throw(const Cyc& a);

// Parameters of one algebra: ell fixes the group, hbar and mu fix the two
// deformation scalars with lambda = 3*hbar^2, so sqrt(lambda/3) = hbar is
// always in the field. Conductor n = lcm(3, 2 ell).
struct ParamSet {
  int ell = 1;
  Ctx ctx;
  Cyc hbar;
  Cyc mu;

  static ParamSet make(int ell, const Cyc& hbar, const Cyc& mu);
  static ParamSet make(int ell, const std::string& hbar, const std::string& mu);

  Cyc lambda() const { return Cyc::integer(ctx, 3) * hbar * hbar; }
  Cyc xi() const { return Cyc::zeta(ctx, ctx->n / 3); }           // order 3
  Cyc eta() const { return Cyc::zeta(ctx, ctx->n / (2 * ell)); }  // order 2 ell
  Cyc zeta_ell() const { return eta().pow(2); }                   // order ell
  Cyc b(long j) const { return eta().pow(((j % (2 * ell)) + 2 * ell) % (2 * ell)); }
  Cyc zeta_pow(long j) const { return zeta_ell().pow(((j % ell) + ell) % ell); }
  Cyc zero() const { return Cyc(ctx); }
  Cyc one() const { return Cyc::integer(ctx, 1); }

  bool graded() const { return hbar.is_zero() && mu.is_zero(); }
  bool mu_is_lambda_third() const { return mu == hbar * hbar; }
  bool same(const ParamSet& o) const { return ell == o.ell && hbar == o.hbar && mu == o.mu; }
};

// Scalar literals: "q", "q/r", "q*z^k", "z^k", "z" with z = zeta_n.
Cyc parse_scalar(const Ctx& ctx, const std::string& text);

}  // namespace hopfrep
