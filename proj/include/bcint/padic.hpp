#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "bcint/errors.hpp"

namespace bcint {

using Residue = std::vector<long>;  // element of F_q as coefficients in zeta, each in [0,p)

// K = Q_q[pi]/(pi^e - p) with Q_q = Q_p[zeta]/(mu(zeta)), mu monic of degree f and
// irreducible mod p. N is the precision cap in pi-digits (see Padic).
class Field {
 public:
  Field(long p, long e, std::vector<long> mu, long N);
  Field(long p, long e, long N) : Field(p, e, {0, 1}, N) {}

  long p, e, f, N;
  long q;                      // p^f
  std::vector<mpz_class> mu;   // low to high, monic
  std::vector<mpz_class> ppow; // p^0 .. p^(N+e+2)

  const mpz_class& pk(long k) const;
  // digits of coefficient i kept for relative precision r
  long coeff_digits(long r, long i) const { return r - i <= 0 ? 0 : (r - i + e - 1) / e; }
  std::string describe() const;
};

class Padic {
 public:
  static constexpr long INF = 1L << 40;

  Padic() = default;
  Padic(const Field& F, long n);
  Padic(const Field& F, const mpz_class& n);
  Padic(const Field& F, const mpq_class& r);

  static Padic zero(const Field& F) { return Padic(F, 0L); }
  static Padic zero(const Field& F, long prec);  // inexact zero, O(pi^prec)
  static Padic one(const Field& F) { return Padic(F, 1L); }
  static Padic pi(const Field& F);
  static Padic zeta(const Field& F);
  // element from its unit coefficient vector (e*f entries, coefficient i*f+j of pi^i zeta^j)
  static Padic from_coeffs(const Field& F, std::vector<mpz_class> c, long shift, long prec);
  // value known exactly mod pi^prec (cap still applies)
  Padic with_prec(long prec) const;

  const Field& field() const { return *F_; }
  bool valid() const { return F_ != nullptr; }
  long val() const { return val_; }
  long prec() const { return prec_; }
  long rel_prec() const { return prec_ - val_; }
  bool is_zero() const { return val_ >= prec_; }
  bool is_exact_zero() const { return prec_ >= INF; }
  const std::vector<mpz_class>& unit() const { return u_; }

  Padic operator-() const;
  Padic operator+(const Padic& b) const;
  Padic operator-(const Padic& b) const;
  Padic operator*(const Padic& b) const;
  Padic operator/(const Padic& b) const;
  Padic& operator+=(const Padic& b) { return *this = *this + b; }
  Padic& operator-=(const Padic& b) { return *this = *this - b; }
  Padic& operator*=(const Padic& b) { return *this = *this * b; }
  Padic& operator/=(const Padic& b) { return *this = *this / b; }
  Padic operator*(long n) const;
  Padic inverse() const;
  Padic pow(long n) const;
  Padic shift(long k) const;  // multiply by pi^k

  // residue of the unit part pi^-val * x in F_q
  Residue unit_residue() const;
  // residue class of x itself, x integral
  Residue residue() const;

  // sign_hint: the residue of the unit part of the wanted root; empty picks the
  // root whose residue has the smaller integer encoding
  Padic sqrt(const Residue& sign_hint = {}) const;
  std::optional<Padic> try_sqrt(const Residue& sign_hint = {}) const;
  bool is_square() const;
  Padic log() const;  // Iwasawa branch, Log(p) = 0

  // x == y modulo the joint precision
  bool equals(const Padic& b) const { return (*this - b).is_zero(); }
  // x == y mod pi^n (also false if not known to that precision)
  bool agrees_to(const Padic& b, long n) const;

  // pi-adic digits d_k for k in [start, prec), start = min(val, 0); each digit has f entries
  std::vector<Residue> digits(long* start) const;
  std::string to_string(const std::string& var = "a") const;
  // base-p string for elements of Q_p (e | val and only multiples of e carry digits)
  bool in_Qp() const;
  // the same Q_p-valued element in another field (precision rounded down to whole p-digits)
  Padic to_field(const Field& G) const;
  std::string to_string_p() const;

 private:
  Padic(const Field* F, long val, long prec, std::vector<mpz_class> u) : F_(F), val_(val), prec_(prec), u_(std::move(u)) {}
  static Padic normalize(const Field* F, long val, long prec, std::vector<mpz_class> c);

  const Field* F_ = nullptr;
  long val_ = INF;
  long prec_ = INF;
  std::vector<mpz_class> u_;  // unit part, e*f coefficients
};

inline Padic operator*(long n, const Padic& x) { return x * n; }

// canonical rational n/d (the two-argument mpq_class constructor does not reduce)
inline mpq_class qq(long n, long d) {
  mpq_class r(n, d);
  r.canonicalize();
  return r;
}

long residue_code(const Residue& r, long p);
long vp(const mpz_class& n, long p);  // p-adic valuation of a nonzero integer

}  // namespace bcint
