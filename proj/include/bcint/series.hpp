#pragma once

#include <gmpxx.h>

#include <vector>

#include "bcint/padic.hpp"

namespace bcint {

// Dense polynomial over K, coefficients low to high.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Padic> c) : c_(std::move(c)) { trim(); }
  static Poly constant(const Padic& a) { return Poly({a}); }
  static Poly x(const Field& F) { return Poly({Padic::zero(F), Padic::one(F)}); }
  static Poly linear(const Padic& a0, const Padic& a1) { return Poly({a0, a1}); }
  static Poly from_roots(const Field& F, const std::vector<Padic>& roots);

  long degree() const { return (long)c_.size() - 1; }
  bool empty() const { return c_.empty(); }
  const Padic& operator[](long i) const { return c_[i]; }
  Padic coeff(long i, const Field& F) const { return i < (long)c_.size() && i >= 0 ? c_[i] : Padic::zero(F); }
  const std::vector<Padic>& coeffs() const { return c_; }

  Poly operator+(const Poly& b) const;
  Poly operator-(const Poly& b) const;
  Poly operator*(const Poly& b) const;
  Poly operator*(const Padic& a) const;
  Poly operator-() const;
  Poly derivative() const;
  Padic eval(const Padic& x) const;
  // p(a*x + b)
  Poly compose_linear(const Padic& a, const Padic& b) const;
  // quotient and remainder by a monic divisor
  void divmod(const Poly& monic, Poly& q, Poly& r) const;
  // minimum coefficient valuation (Gauss norm exponent)
  long gauss_val() const;
  long min_prec() const;

 private:
  void trim();
  std::vector<Padic> c_;
};

// Rational exponent bound: v(c_n) >= slope*n + icpt for the omitted degrees.
struct TailBound {
  mpq_class slope = 0;
  mpq_class icpt = 0;
  bool known = false;
  mpq_class at(long n) const { return slope * n + icpt; }
};

// Laurent series sum_{n=lo}^{hi} c_n t^n plus an upper tail governed by `tail`.
class Series {
 public:
  Series() = default;
  Series(const Field& F, long lo, std::vector<Padic> c, TailBound tail = {})
      : F_(&F), lo_(lo), c_(std::move(c)), tail_(tail) {}
  static Series zero(const Field& F, long lo, long hi);
  static Series one(const Field& F, long hi);

  const Field& field() const { return *F_; }
  long lo() const { return lo_; }
  long hi() const { return lo_ + (long)c_.size() - 1; }
  const TailBound& tail() const { return tail_; }
  void set_tail(const TailBound& t) { tail_ = t; }
  Padic coeff(long n) const;
  void set(long n, const Padic& v);
  void add_to(long n, const Padic& v);

  Series operator+(const Series& b) const;
  Series operator-(const Series& b) const;
  Series operator*(const Padic& a) const;
  // product truncated to degrees <= hi_out
  Series mul(const Series& b, long hi_out) const;
  Series shift(long k) const;  // times t^k
  Series truncate(long hi_out) const;
  // 1/s for s with unit constant term (lo = 0), truncated at hi_out
  Series inverse(long hi_out) const;
  // f(g) with g(0) = 0, both power series, truncated at hi_out
  Series compose(const Series& g, long hi_out) const;
  Series derivative() const;
  // evaluation with certified precision; throws OutOfConvergenceRegion when the tail diverges at t
  Padic evaluate(const Padic& t) const;

 private:
  const Field* F_ = nullptr;
  long lo_ = 0;
  std::vector<Padic> c_;
  TailBound tail_;
};

// (1 + a t)^s truncated at degree n, s rational; exact binomial coefficients
Series binomial_series(const Field& F, const mpq_class& s, const Padic& a, long n);
// 1/sqrt(u) for u with constant term 1
Series inv_sqrt_binomial(const Series& u, long hi_out);
// binom(s, k) for k = 0..n
std::vector<mpq_class> binomial_coeffs(const mpq_class& s, long n);

// term-by-term primitive: F = sum_{n != -1} a_n t^(n+1)/(n+1), c_log = a_{-1}
struct AnnulusPrimitive {
  Series F;
  Padic c_log;
  // F(t1) - F(t0) + c_log*(Log t1 - Log t0)
  Padic integrate(const Padic& t0, const Padic& t1) const;
};
AnnulusPrimitive antidifferentiate_annulus(const Series& w);

// (1 - t)^(1/2) on the principal branch, |t| < 1
Padic binomial_sqrt(const Padic& one_minus_t);

}  // namespace bcint
