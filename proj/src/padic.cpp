#include "bcint/padic.hpp"

#include <algorithm>
#include <sstream>

namespace bcint {

namespace {

using Coeffs = std::vector<mpz_class>;

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// ---- F_p[zeta]/(mu) with small p ----

using Fq = std::vector<long>;

Fq fq_mul(const Fq& a, const Fq& b, const std::vector<long>& mu, long p) {
  long f = (long)mu.size() - 1;
  std::vector<long> c(2 * f - 1, 0);
  for (long i = 0; i < f; ++i)
    for (long j = 0; j < f; ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  for (long k = 2 * f - 2; k >= f; --k) {
    long t = c[k];
    if (!t) continue;
    for (long j = 0; j < f; ++j) c[k - f + j] = ((c[k - f + j] - t * mu[j]) % p + p) % p;
    c[k] = 0;
  }
  c.resize(f);
  return c;
}

Fq fq_pow(Fq a, long n, const std::vector<long>& mu, long p) {
  Fq r(a.size(), 0);
  r[0] = 1;
  while (n > 0) {
    if (n & 1) r = fq_mul(r, a, mu, p);
    a = fq_mul(a, a, mu, p);
    n >>= 1;
  }
  return r;
}

bool fq_is_zero(const Fq& a) {
  return std::all_of(a.begin(), a.end(), [](long v) { return v == 0; });
}

Fq fq_from_code(long code, long p, long f) {
  Fq a(f);
  for (long j = 0; j < f; ++j) {
    a[j] = code % p;
    code /= p;
  }
  return a;
}

// polynomials over F_p for the irreducibility test
using Fp = std::vector<long>;

void fp_trim(Fp& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

long inv_mod(long a, long p) {
  long r = 1, b = ((a % p) + p) % p, n = p - 2;
  while (n) {
    if (n & 1) r = r * b % p;
    b = b * b % p;
    n >>= 1;
  }
  return r;
}

Fp fp_mod(Fp a, const Fp& m, long p) {
  fp_trim(a);
  long dm = (long)m.size() - 1;
  long lead_inv = inv_mod(m.back(), p);
  while ((long)a.size() - 1 >= dm) {
    long k = (long)a.size() - 1 - dm;
    long t = a.back() * lead_inv % p;
    for (long j = 0; j <= dm; ++j) a[k + j] = ((a[k + j] - t * m[j]) % p + p) % p;
    fp_trim(a);
  }
  return a;
}

Fp fp_gcd(Fp a, Fp b, long p) {
  fp_trim(a);
  fp_trim(b);
  while (!b.empty()) {
    Fp r = fp_mod(a, b, p);
    a = b;
    b = r;
  }
  return a;
}

Fp fp_mulmod(const Fp& a, const Fp& b, const Fp& m, long p) {
  if (a.empty() || b.empty()) return {};
  Fp c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  return fp_mod(c, m, p);
}

// x^(p^k) mod m
Fp fp_frob_power(const Fp& m, long p, long k) {
  Fp x = {0, 1};
  x = fp_mod(x, m, p);
  for (long s = 0; s < k; ++s) {
    Fp r = {1}, b = x;
    long n = p;
    while (n) {
      if (n & 1) r = fp_mulmod(r, b, m, p);
      b = fp_mulmod(b, b, m, p);
      n >>= 1;
    }
    x = r;
  }
  return x;
}

bool rabin_irreducible(const Fp& m, long p) {
  long f = (long)m.size() - 1;
  if (f == 1) return true;
  Fp xq = fp_frob_power(m, p, f);
  Fp diff = xq;
  diff.resize(std::max<size_t>(diff.size(), 2), 0);
  diff[1] = ((diff[1] - 1) % p + p) % p;
  fp_trim(diff);
  if (!diff.empty()) return false;
  for (long l = 2; l <= f; ++l) {
    if (f % l || !is_prime(l)) continue;
    Fp h = fp_frob_power(m, p, f / l);
    h.resize(std::max<size_t>(h.size(), 2), 0);
    h[1] = ((h[1] - 1) % p + p) % p;
    Fp g = fp_gcd(m, h, p);
    if (g.size() > 1) return false;
  }
  return true;
}

// ---- raw unit-part arithmetic ----

void zq_mul_add(const Field& F, const mpz_class* a, const mpz_class* b, mpz_class* out, bool times_p) {
  if (F.f == 1) {
    if (times_p)
      out[0] += a[0] * b[0] * F.p;
    else
      mpz_addmul(out[0].get_mpz_t(), a[0].get_mpz_t(), b[0].get_mpz_t());
    return;
  }
  long f = F.f;
  std::vector<mpz_class> c(2 * f - 1);
  for (long i = 0; i < f; ++i) {
    if (a[i] == 0) continue;
    for (long j = 0; j < f; ++j) mpz_addmul(c[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  for (long k = 2 * f - 2; k >= f; --k) {
    if (c[k] == 0) continue;
    for (long j = 0; j < f; ++j) mpz_submul(c[k - f + j].get_mpz_t(), c[k].get_mpz_t(), F.mu[j].get_mpz_t());
  }
  for (long j = 0; j < f; ++j) {
    if (times_p) c[j] *= F.p;
    out[j] += c[j];
  }
}

void raw_reduce(const Field& F, Coeffs& c, long r) {
  for (long i = 0; i < F.e; ++i) {
    long k = F.coeff_digits(r, i);
    for (long j = 0; j < F.f; ++j) {
      mpz_class& x = c[i * F.f + j];
      if (k == 0)
        x = 0;
      else
        mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), F.pk(k).get_mpz_t());
    }
  }
}

Coeffs raw_mul(const Field& F, const Coeffs& a, const Coeffs& b, long r) {
  long e = F.e, f = F.f;
  Coeffs c(e * f);
  for (long i = 0; i < e; ++i)
    for (long j = 0; j < e; ++j) {
      long k = i + j;
      if (k >= r) continue;
      if (k < e)
        zq_mul_add(F, &a[i * f], &b[j * f], &c[k * f], false);
      else
        zq_mul_add(F, &a[i * f], &b[j * f], &c[(k - e) * f], true);
    }
  raw_reduce(F, c, r);
  return c;
}

// multiply a unit-part vector by pi^k (k >= 0)
Coeffs raw_shift(const Field& F, const Coeffs& a, long k) {
  long e = F.e, f = F.f;
  if (k == 0) return a;
  Coeffs c(e * f);
  for (long i = 0; i < e; ++i) {
    long t = i + k;
    long pos = t % e, pp = t / e;
    for (long j = 0; j < f; ++j) c[pos * f + j] += a[i * f + j] * F.pk(pp);
  }
  return c;
}

Fq raw_residue(const Field& F, const Coeffs& a) {
  Fq r(F.f);
  for (long j = 0; j < F.f; ++j) r[j] = mpz_fdiv_ui(a[j].get_mpz_t(), F.p);
  return r;
}

std::vector<long> mu_mod_p(const Field& F) {
  std::vector<long> m(F.f + 1);
  for (long j = 0; j <= F.f; ++j) m[j] = mpz_fdiv_ui(F.mu[j].get_mpz_t(), F.p);
  return m;
}

Coeffs raw_const(const Field& F, const Fq& r) {
  Coeffs c(F.e * F.f);
  for (long j = 0; j < F.f; ++j) c[j] = r[j];
  return c;
}

Coeffs raw_sub_const(const Field& F, long k, const Coeffs& a, long r) {
  Coeffs c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = -a[i];
  c[0] += k;
  raw_reduce(F, c, r);
  return c;
}

Coeffs raw_unit_inverse(const Field& F, const Coeffs& u, long r) {
  auto mu = mu_mod_p(F);
  Fq res = raw_residue(F, u);
  if (fq_is_zero(res)) throw MathError("DivisionByZero", "inverse of a non-unit");
  Fq inv = fq_pow(res, F.q - 2, mu, F.p);
  Coeffs x = raw_const(F, inv);
  long cur = 1;
  while (cur < r) {
    cur = std::min(2 * cur, r);
    Coeffs ux = raw_mul(F, u, x, cur);
    x = raw_mul(F, x, raw_sub_const(F, 2, ux, cur), cur);
  }
  raw_reduce(F, x, r);
  return x;
}

std::vector<Fq> fq_sqrts(const Field& F, const Fq& a) {
  auto mu = mu_mod_p(F);
  std::vector<Fq> roots;
  for (long code = 0; code < F.q; ++code) {
    Fq x = fq_from_code(code, F.p, F.f);
    if (fq_mul(x, x, mu, F.p) == a) roots.push_back(x);
  }
  return roots;
}

}  // namespace

long residue_code(const Residue& r, long p) {
  long code = 0;
  for (long j = (long)r.size() - 1; j >= 0; --j) code = code * p + (((r[j] % p) + p) % p);
  return code;
}

long vp(const mpz_class& n, long p) {
  if (n == 0) return Padic::INF;
  mpz_class t = n;
  return (long)mpz_remove(t.get_mpz_t(), t.get_mpz_t(), mpz_class(p).get_mpz_t());
}

// ---- Field ----

Field::Field(long p_, long e_, std::vector<long> mu_, long N_) : p(p_), e(e_), N(N_) {
  if (p < 3 || !is_prime(p)) throw MathError("InvalidField", "p must be an odd prime");
  if (e < 1) throw MathError("InvalidField", "ramification index must be positive");
  if (mu_.size() < 2 || mu_.back() != 1) throw MathError("InvalidField", "unramified polynomial must be monic of degree >= 1");
  if (N < 1) throw MathError("InvalidField", "precision must be positive");
  f = (long)mu_.size() - 1;
  q = 1;
  for (long j = 0; j < f; ++j) q *= p;
  Fp m;
  for (long c : mu_) {
    mu.emplace_back(c);
    m.push_back(((c % p) + p) % p);
  }
  if (!rabin_irreducible(m, p)) throw MathError("InvalidField", "unramified polynomial is reducible mod p");
  long kmax = N / e + 8 + N;
  ppow.resize(kmax + 1);
  ppow[0] = 1;
  for (long k = 1; k <= kmax; ++k) ppow[k] = ppow[k - 1] * p;
}

const mpz_class& Field::pk(long k) const {
  if (k < 0 || k >= (long)ppow.size()) throw PrecisionError("power of p out of table range");
  return ppow[k];
}

std::string Field::describe() const {
  std::ostringstream os;
  os << "Q_" << p;
  if (f > 1) os << "(zeta), deg " << f;
  if (e > 1) os << "(pi), pi^" << e << " = " << p;
  os << ", N = " << N;
  return os.str();
}

// ---- Padic ----

namespace {
long raw_valuation(const Field& F, const Coeffs& c) {
  if (mpz_fdiv_ui(c[0].get_mpz_t(), F.p) != 0) return 0;
  long w = Padic::INF;
  for (long i = 0; i < F.e; ++i)
    for (long j = 0; j < F.f; ++j) {
      const mpz_class& x = c[i * F.f + j];
      if (x != 0) w = std::min(w, F.e * vp(x, F.p) + i);
    }
  return w;
}
}  // namespace

// value pi^val * sum c_i pi^i known mod pi^prec; prec >= INF means exact input
Padic Padic::normalize(const Field* F, long val, long prec, Coeffs c) {
  long e = F->e, f = F->f;
  if (prec - val > F->N) {
    long w0 = raw_valuation(*F, c);
    if (w0 >= INF) return prec >= INF ? Padic(F, INF, INF, Coeffs(e * f)) : Padic(F, prec, prec, Coeffs(e * f));
    prec = std::min(prec, val + w0 + F->N);
  }
  long r = prec - val;
  if (r <= 0) return Padic(F, prec, prec, Coeffs(e * f));
  raw_reduce(*F, c, r);
  long w = raw_valuation(*F, c);
  if (w >= r) return Padic(F, prec, prec, Coeffs(e * f));
  if (w > 0) {
    long s = w / e, t = w % e;
    if (t != 0) {
      c = raw_shift(*F, c, e - t);
      s += 1;
    }
    for (auto& x : c) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), F->pk(s).get_mpz_t());
    val += w;
    r -= w;
  }
  if (r > F->N) {
    r = F->N;
    prec = val + r;
  }
  raw_reduce(*F, c, r);
  return Padic(F, val, prec, std::move(c));
}

Padic::Padic(const Field& F, long n) : Padic(F, mpz_class(n)) {}

Padic::Padic(const Field& F, const mpz_class& n) : F_(&F) {
  u_.assign(F.e * F.f, 0);
  if (n == 0) {
    val_ = prec_ = INF;
    return;
  }
  mpz_class m = n;
  long v = (long)mpz_remove(m.get_mpz_t(), m.get_mpz_t(), mpz_class(F.p).get_mpz_t());
  u_[0] = m;
  *this = normalize(&F, v * F.e, INF, u_);
}

Padic::Padic(const Field& F, const mpq_class& r) {
  *this = Padic(F, r.get_num()) / Padic(F, r.get_den());
}

Padic Padic::zero(const Field& F, long prec) { return Padic(&F, prec, prec, Coeffs(F.e * F.f)); }

Padic Padic::pi(const Field& F) {
  Coeffs c(F.e * F.f);
  if (F.e == 1)
    c[0] = F.p;
  else
    c[F.f] = 1;
  return normalize(&F, 0, 1 + F.N, c);
}

Padic Padic::zeta(const Field& F) {
  Coeffs c(F.e * F.f);
  if (F.f == 1)
    c[0] = -F.mu[0];
  else
    c[1] = 1;
  return normalize(&F, 0, F.N, c);
}

Padic Padic::from_coeffs(const Field& F, std::vector<mpz_class> c, long shift, long prec) {
  if ((long)c.size() != F.e * F.f) throw MathError("InvalidElement", "coefficient vector has wrong length");
  return normalize(&F, shift, prec, std::move(c));
}

Padic Padic::with_prec(long P) const {
  if (P >= prec_) return *this;
  return normalize(F_, std::min(val_, P), P, u_);
}

Padic Padic::operator-() const {
  if (is_exact_zero()) return *this;
  Coeffs c(u_.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = -u_[i];
  return normalize(F_, val_, prec_, std::move(c));
}

Padic Padic::operator+(const Padic& b) const {
  if (is_exact_zero()) return b;
  if (b.is_exact_zero()) return *this;
  long v = std::min(val_, b.val_);
  long P = std::min(prec_, b.prec_);
  long r = P - v;
  if (r <= 0) return zero(*F_, P);
  Coeffs c(u_.size());
  if (val_ - v < r) {
    Coeffs s = raw_shift(*F_, u_, val_ - v);
    for (size_t i = 0; i < c.size(); ++i) c[i] += s[i];
  }
  if (b.val_ - v < r) {
    Coeffs s = raw_shift(*F_, b.u_, b.val_ - v);
    for (size_t i = 0; i < c.size(); ++i) c[i] += s[i];
  }
  return normalize(F_, v, P, std::move(c));
}

Padic Padic::operator-(const Padic& b) const { return *this + (-b); }

Padic Padic::operator*(const Padic& b) const {
  if (is_exact_zero() || b.is_exact_zero()) return zero(F_ ? *F_ : *b.F_);
  long v = val_ + b.val_;
  long P = std::min(prec_ + b.val_, b.prec_ + val_);
  P = std::min(P, v + F_->N);
  if (P <= v) return zero(*F_, P);
  return normalize(F_, v, P, raw_mul(*F_, u_, b.u_, P - v));
}

Padic Padic::operator*(long n) const { return *this * Padic(*F_, n); }

Padic Padic::inverse() const {
  if (is_zero()) throw MathError("DivisionByZero", "inverse of zero at working precision");
  long v = -val_;
  long P = v + rel_prec();
  P = std::min(P, v + F_->N);
  return normalize(F_, v, P, raw_unit_inverse(*F_, u_, P - v));
}

Padic Padic::operator/(const Padic& b) const {
  if (b.is_zero()) throw MathError("DivisionByZero", "divisor is zero at working precision");
  if (is_exact_zero()) return *this;
  long v = val_ - b.val_;
  long P = std::min(prec_ - b.val_, val_ + b.prec_ - 2 * b.val_);
  P = std::min(P, v + F_->N);
  if (P <= v) return zero(*F_, P);
  long r = P - v;
  return normalize(F_, v, P, raw_mul(*F_, u_, raw_unit_inverse(*F_, b.u_, r), r));
}

Padic Padic::pow(long n) const {
  if (n < 0) return inverse().pow(-n);
  Padic r = one(*F_), b = *this;
  while (n > 0) {
    if (n & 1) r *= b;
    n >>= 1;
    if (n) b *= b;
  }
  return r;
}

Padic Padic::shift(long k) const {
  if (is_exact_zero()) return *this;
  return Padic(F_, val_ + k, prec_ + k, u_);
}

Residue Padic::unit_residue() const {
  if (is_zero()) throw MathError("DivisionByZero", "residue of the unit part of zero");
  return raw_residue(*F_, u_);
}

Residue Padic::residue() const {
  if (val_ < 0) throw MathError("NotIntegral", "residue of a non-integral element");
  if (val_ > 0 || is_zero()) {
    if (prec_ <= 0) throw PrecisionError("residue of an element known to no digits");
    return Residue(F_->f, 0);
  }
  return raw_residue(*F_, u_);
}

std::optional<Padic> Padic::try_sqrt(const Residue& hint) const {
  if (is_exact_zero()) return *this;
  if (is_zero()) throw PrecisionError("square root of an element that is zero at working precision");
  if (val_ % 2 != 0) return std::nullopt;
  Fq res = raw_residue(*F_, u_);
  auto roots = fq_sqrts(*F_, res);
  if (roots.empty()) return std::nullopt;
  Fq pick;
  if (hint.empty()) {
    pick = roots[0];
    for (auto& r : roots)
      if (residue_code(r, F_->p) < residue_code(pick, F_->p)) pick = r;
  } else {
    long want = residue_code(hint, F_->p);
    bool found = false;
    for (auto& r : roots)
      if (residue_code(r, F_->p) == want) {
        pick = r;
        found = true;
      }
    if (!found) throw MathError("SignHintMismatch", "sign hint matches neither square root");
  }
  // inverse square root by Newton: t <- t (3 - u t^2) / 2
  long r = rel_prec();
  auto mu = mu_mod_p(*F_);
  Coeffs t = raw_const(*F_, fq_pow(pick, F_->q - 2, mu, F_->p));
  mpz_class half_big = (F_->pk(F_->coeff_digits(r, 0) + 1) + 1) / 2;
  long cur = 1;
  while (cur < r) {
    cur = std::min(2 * cur, r);
    Coeffs ut2 = raw_mul(*F_, u_, raw_mul(*F_, t, t, cur), cur);
    Coeffs s = raw_sub_const(*F_, 3, ut2, cur);
    t = raw_mul(*F_, t, s, cur);
    for (auto& x : t) x *= half_big;
    raw_reduce(*F_, t, cur);
  }
  Coeffs s = raw_mul(*F_, u_, t, r);
  return normalize(F_, val_ / 2, val_ / 2 + r, std::move(s));
}

Padic Padic::sqrt(const Residue& hint) const {
  if (!is_exact_zero() && !is_zero() && val_ % 2 != 0) throw MathError("OddValuation", "square root of an element of odd valuation");
  auto s = try_sqrt(hint);
  if (!s) throw MathError("NonSquareResidue", "residue of the unit part is not a square");
  return *s;
}

bool Padic::is_square() const {
  if (is_exact_zero()) return true;
  if (val_ % 2 != 0) return false;
  return !fq_sqrts(*F_, raw_residue(*F_, u_)).empty();
}

Padic Padic::log() const {
  if (is_zero()) throw MathError("LogOfZero", "Log of zero");
  long r = rel_prec();
  Padic u = normalize(F_, 0, r, u_);
  Padic w = u.pow(F_->q - 1);
  Padic t = w - one(*F_);
  if (t.is_zero()) return zero(*F_, t.prec());
  long vt = t.val();
  Padic sum = zero(*F_);
  Padic tn = t;
  long target = t.prec();
  for (long n = 1;; ++n) {
    Padic term = tn / Padic(*F_, n);
    sum = (n % 2) ? sum + term : sum - term;
    // later terms t^m/m have valuation >= m*vt - e*log_p(m)
    long lp = 0;
    for (long pw = F_->p; pw <= n; pw *= F_->p) ++lp;
    if (n * vt >= target + F_->e * (lp + 2)) break;
    tn *= t;
  }
  return sum / Padic(*F_, F_->q - 1);
}

bool Padic::agrees_to(const Padic& b, long n) const { return (*this - b).val() >= n; }

std::vector<Residue> Padic::digits(long* start) const {
  long s = std::min(val_, 0L);
  if (is_exact_zero()) s = 0;
  long P = is_exact_zero() ? 0 : prec_;
  std::vector<Residue> out;
  if (start) *start = s;
  for (long k = s; k < P; ++k) out.emplace_back(F_->f, 0);
  if (is_zero()) return out;
  long e = F_->e, f = F_->f;
  for (long i = 0; i < e; ++i)
    for (long j = 0; j < f; ++j) {
      mpz_class x = u_[i * f + j];
      long pos = val_ + i;
      while (x != 0 && pos < P) {
        unsigned long d = mpz_fdiv_q_ui(x.get_mpz_t(), x.get_mpz_t(), F_->p);
        if (pos - s >= 0) out[pos - s][j] = (long)d;
        pos += e;
      }
    }
  return out;
}

namespace {
std::string digit_str(const Residue& d) {
  if (d.size() == 1) return std::to_string(d[0]);
  std::ostringstream os;
  bool first = true;
  os << "(";
  for (size_t j = 0; j < d.size(); ++j) {
    if (!d[j]) continue;
    if (!first) os << " + ";
    first = false;
    os << d[j];
    if (j == 1) os << "*z";
    if (j > 1) os << "*z^" << j;
  }
  os << ")";
  return os.str();
}

bool digit_zero(const Residue& d) {
  return std::all_of(d.begin(), d.end(), [](long v) { return v == 0; });
}

std::string format_series(const std::vector<Residue>& ds, long start, long prec, const std::string& var) {
  std::ostringstream os;
  bool first = true;
  for (size_t k = 0; k < ds.size(); ++k) {
    if (digit_zero(ds[k])) continue;
    long pw = start + (long)k;
    if (!first) os << " + ";
    first = false;
    bool unit = ds[k].size() == 1 && ds[k][0] == 1;
    if (pw == 0) {
      os << digit_str(ds[k]);
    } else {
      if (!unit) os << digit_str(ds[k]) << "*";
      os << var;
      if (pw != 1) os << "^" << pw;
    }
  }
  if (!first) os << " + ";
  os << "O(" << var << "^" << prec << ")";
  return os.str();
}
}  // namespace

std::string Padic::to_string(const std::string& var) const {
  if (is_exact_zero()) return "0";
  long s;
  auto ds = digits(&s);
  return format_series(ds, s, prec_, var);
}

bool Padic::in_Qp() const {
  if (is_exact_zero()) return true;
  long s;
  auto ds = digits(&s);
  for (size_t k = 0; k < ds.size(); ++k) {
    long pw = s + (long)k;
    for (size_t j = 0; j < ds[k].size(); ++j) {
      if (!ds[k][j]) continue;
      if (j > 0) return false;
      if (((pw % F_->e) + F_->e) % F_->e != 0) return false;
    }
  }
  return true;
}

Padic Padic::to_field(const Field& G) const {
  if (is_exact_zero()) return zero(G);
  if (!in_Qp()) throw MathError("NotInField", "element is not in Q_p");
  long e = F_->e;
  auto fdiv = [](long a, long b) { return a >= 0 ? a / b : -((-a + b - 1) / b); };
  long prec_p = fdiv(prec_, e);
  if (is_zero()) return zero(G, prec_p * G.e);
  long s;
  auto ds = digits(&s);
  mpq_class v = 0;
  for (size_t k = 0; k < ds.size(); ++k) {
    long pw = s + (long)k;
    if (!ds[k][0] || pw % e != 0) continue;
    long q = pw / e;
    mpz_class pp;
    mpz_ui_pow_ui(pp.get_mpz_t(), F_->p, std::labs(q));
    v += q >= 0 ? mpq_class(ds[k][0] * pp) : mpq_class(mpz_class(ds[k][0]), pp);
  }
  v.canonicalize();
  return Padic(G, v).with_prec(prec_p * G.e);
}

std::string Padic::to_string_p() const {
  if (is_exact_zero()) return "0";
  long s;
  auto ds = digits(&s);
  std::vector<Residue> pd;
  long e = F_->e;
  long ps = (s >= 0) ? 0 : -((-s + e - 1) / e);
  long pprec = (prec_ >= 0) ? prec_ / e : -((-prec_ + e - 1) / e);
  for (long k = ps; k < pprec; ++k) {
    long pos = k * e - s;
    pd.push_back(pos >= 0 && pos < (long)ds.size() ? ds[pos] : Residue(F_->f, 0));
  }
  return format_series(pd, ps, pprec, std::to_string(F_->p));
}

}  // namespace bcint
