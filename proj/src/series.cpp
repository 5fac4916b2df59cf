#include "bcint/series.hpp"

#include <algorithm>

namespace bcint {

// ---- Poly ----

void Poly::trim() {
  while (!c_.empty() && c_.back().is_exact_zero()) c_.pop_back();
}

Poly Poly::from_roots(const Field& F, const std::vector<Padic>& roots) {
  Poly r = constant(Padic::one(F));
  for (const auto& a : roots) r = r * linear(-a, Padic::one(F));
  return r;
}

Poly Poly::operator+(const Poly& b) const {
  std::vector<Padic> c(std::max(c_.size(), b.c_.size()));
  for (size_t i = 0; i < c.size(); ++i) {
    if (i < c_.size() && i < b.c_.size())
      c[i] = c_[i] + b.c_[i];
    else
      c[i] = i < c_.size() ? c_[i] : b.c_[i];
  }
  return Poly(std::move(c));
}

Poly Poly::operator-() const {
  std::vector<Padic> c(c_.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = -c_[i];
  return Poly(std::move(c));
}

Poly Poly::operator-(const Poly& b) const { return *this + (-b); }

Poly Poly::operator*(const Poly& b) const {
  if (c_.empty() || b.c_.empty()) return Poly();
  const Field& F = c_[0].field();
  std::vector<Padic> c(c_.size() + b.c_.size() - 1, Padic::zero(F));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_exact_zero()) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += c_[i] * b.c_[j];
  }
  return Poly(std::move(c));
}

Poly Poly::operator*(const Padic& a) const {
  std::vector<Padic> c(c_.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = c_[i] * a;
  return Poly(std::move(c));
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly();
  std::vector<Padic> c(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * (long)i;
  return Poly(std::move(c));
}

Padic Poly::eval(const Padic& x) const {
  if (c_.empty()) return Padic::zero(x.field());
  Padic r = c_.back();
  for (long i = (long)c_.size() - 2; i >= 0; --i) r = r * x + c_[i];
  return r;
}

Poly Poly::compose_linear(const Padic& a, const Padic& b) const {
  if (c_.empty()) return Poly();
  Poly lin = linear(b, a);
  Poly r = constant(c_.back());
  for (long i = (long)c_.size() - 2; i >= 0; --i) r = r * lin + constant(c_[i]);
  return r;
}

void Poly::divmod(const Poly& m, Poly& q, Poly& r) const {
  const Field& F = m.c_.back().field();
  long dm = m.degree();
  std::vector<Padic> rem = c_;
  long dq = degree() - dm;
  std::vector<Padic> qc(std::max(dq + 1, 0L), Padic::zero(F));
  for (long k = dq; k >= 0; --k) {
    Padic t = rem[k + dm];
    qc[k] = t;
    if (t.is_exact_zero()) continue;
    for (long j = 0; j <= dm; ++j) rem[k + j] -= t * m.c_[j];
  }
  rem.resize(std::min<long>(rem.size(), dm));
  q = Poly(std::move(qc));
  r = Poly(std::move(rem));
}

long Poly::gauss_val() const {
  long v = Padic::INF;
  for (const auto& a : c_) v = std::min(v, a.val());
  return v;
}

long Poly::min_prec() const {
  long v = Padic::INF;
  for (const auto& a : c_) v = std::min(v, a.prec());
  return v;
}

// ---- Series ----

Series Series::zero(const Field& F, long lo, long hi) {
  return Series(F, lo, std::vector<Padic>(std::max(hi - lo + 1, 0L), Padic::zero(F)));
}

Series Series::one(const Field& F, long hi) {
  Series s = zero(F, 0, hi);
  s.c_[0] = Padic::one(F);
  return s;
}

Padic Series::coeff(long n) const {
  if (n < lo_ || n > hi()) return Padic::zero(*F_);
  return c_[n - lo_];
}

void Series::set(long n, const Padic& v) {
  if (c_.empty()) {
    lo_ = n;
    c_.push_back(v);
    return;
  }
  if (n < lo_) {
    c_.insert(c_.begin(), lo_ - n, Padic::zero(*F_));
    lo_ = n;
  }
  if (n > hi()) c_.resize(n - lo_ + 1, Padic::zero(*F_));
  c_[n - lo_] = v;
}

void Series::add_to(long n, const Padic& v) { set(n, coeff(n) + v); }

namespace {
TailBound tail_min(const TailBound& a, const TailBound& b) {
  if (!a.known) return b;
  if (!b.known) return a;
  // pointwise minimum of two affine bounds is not affine; keep the smaller slope
  // and shift the intercept so it lies under both from degree 0 on
  TailBound t;
  t.known = true;
  t.slope = std::min(a.slope, b.slope);
  t.icpt = std::min(a.icpt, b.icpt);
  return t;
}
}  // namespace

Series Series::operator+(const Series& b) const {
  if (c_.empty()) return b;
  if (b.c_.empty()) return *this;
  long lo = std::min(lo_, b.lo_), hi = std::max(this->hi(), b.hi());
  Series r = zero(*F_, lo, hi);
  for (long n = lo; n <= hi; ++n) r.c_[n - lo] = coeff(n) + b.coeff(n);
  r.tail_ = tail_min(tail_, b.tail_);
  return r;
}

Series Series::operator*(const Padic& a) const {
  Series r = *this;
  for (auto& x : r.c_) x *= a;
  if (r.tail_.known) r.tail_.icpt += a.val();
  return r;
}

Series Series::operator-(const Series& b) const { return *this + b * Padic(*b.F_, -1); }

Series Series::mul(const Series& b, long hi_out) const {
  long lo = lo_ + b.lo_;
  long hi = std::min(hi_out, this->hi() + b.hi());
  Series r = zero(*F_, lo, std::max(hi, lo - 1));
  for (long i = 0; i < (long)c_.size(); ++i) {
    if (c_[i].is_exact_zero()) continue;
    for (long j = 0; j < (long)b.c_.size(); ++j) {
      long n = lo + i + j;
      if (n > hi) break;
      r.c_[n - lo] += c_[i] * b.c_[j];
    }
  }
  return r;
}

Series Series::shift(long k) const {
  Series r = *this;
  r.lo_ += k;
  if (r.tail_.known) r.tail_.icpt -= r.tail_.slope * k;
  return r;
}

Series Series::truncate(long hi_out) const {
  Series r = *this;
  if (hi_out < r.hi()) r.c_.resize(std::max(hi_out - lo_ + 1, 0L));
  return r;
}

Series Series::inverse(long hi_out) const {
  if (lo_ != 0 || c_.empty() || c_[0].is_zero() || c_[0].val() != 0)
    throw MathError("NonUnitConstantTerm", "series inverse needs a unit constant term");
  Padic inv0 = c_[0].inverse();
  Series r = zero(*F_, 0, hi_out);
  r.c_[0] = inv0;
  for (long n = 1; n <= hi_out; ++n) {
    Padic acc = Padic::zero(*F_);
    for (long k = 1; k <= std::min(n, hi()); ++k) acc += c_[k] * r.c_[n - k];
    r.c_[n] = -(acc * inv0);
  }
  return r;
}

Series Series::compose(const Series& g, long hi_out) const {
  if (g.lo_ < 0 || (g.lo_ == 0 && !g.c_.empty() && !g.c_[0].is_zero()))
    throw MathError("InvalidComposition", "inner series must vanish at 0");
  if (lo_ < 0) throw MathError("InvalidComposition", "outer series must be a power series");
  Series r = zero(*F_, 0, hi_out);
  for (long n = hi(); n >= 0; --n) {
    r = r.mul(g, hi_out);
    r.set(0, r.coeff(0) + coeff(n));
  }
  return r.truncate(hi_out);
}

Series Series::derivative() const {
  Series r = zero(*F_, lo_ - 1, hi() - 1);
  for (long n = lo_; n <= hi(); ++n)
    if (n != 0) r.c_[n - 1 - (lo_ - 1)] = c_[n - lo_] * n;
  return r;
}

Padic Series::evaluate(const Padic& t) const {
  Padic sum = Padic::zero(*F_);
  if (c_.empty()) return sum;
  // Horner on the nonnegative part, direct powers on the negative part
  long hi_n = hi();
  if (hi_n >= 0) {
    Padic h = Padic::zero(*F_);
    for (long n = hi_n; n >= std::max(lo_, 0L); --n) h = h * t + c_[n - lo_];
    if (lo_ > 0) h *= t.pow(lo_);
    sum += h;
  }
  if (lo_ < 0) {
    Padic ti = t.inverse();
    Padic h = Padic::zero(*F_);
    long top = std::min(-1L, hi_n);
    for (long n = lo_; n <= top; ++n) h = (h + c_[n - lo_]) * ti;
    if (top < -1) h *= t.pow(top + 1);
    sum += h;
  }
  if (tail_.known) {
    mpq_class rate = tail_.slope + t.val();
    if (rate <= 0) throw MathError("OutOfConvergenceRegion", "series tail does not decay at this point");
    mpq_class bound = tail_.at(hi_n + 1) + mpq_class(t.val()) * (hi_n + 1);
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), bound.get_num_mpz_t(), bound.get_den_mpz_t());
    long cap = fl.get_si();
    if (cap < sum.prec()) sum = sum.with_prec(cap);
  }
  return sum;
}

// ---- binomials ----

std::vector<mpq_class> binomial_coeffs(const mpq_class& s, long n) {
  std::vector<mpq_class> b(n + 1);
  b[0] = 1;
  for (long k = 1; k <= n; ++k) b[k] = b[k - 1] * (s - (k - 1)) / k;
  return b;
}

Series binomial_series(const Field& F, const mpq_class& s, const Padic& a, long n) {
  auto b = binomial_coeffs(s, n);
  std::vector<Padic> c(n + 1);
  Padic ak = Padic::one(F);
  for (long k = 0; k <= n; ++k) {
    c[k] = Padic(F, b[k]) * ak;
    ak *= a;
  }
  Series r(F, 0, std::move(c));
  TailBound t;
  t.known = true;
  t.slope = a.is_exact_zero() ? mpq_class(F.N) : mpq_class(a.val());
  // binom(s,k) for s in Z[1/2] is p-integral (p odd)
  t.icpt = 0;
  if (s.get_den() != 1 && s.get_den() != 2) t.known = false;
  r.set_tail(t);
  return r;
}

Series inv_sqrt_binomial(const Series& u, long hi_out) {
  const Field& F = u.field();
  if (u.lo() < 0 || !u.coeff(0).equals(Padic::one(F)))
    throw MathError("NonUnitConstantTerm", "inv_sqrt_binomial needs constant term 1");
  Series y = u - Series::one(F, 0);  // u = 1 + y
  auto b = binomial_coeffs(mpq_class(-1, 2), hi_out);
  std::vector<Padic> bc;
  for (auto& x : b) bc.emplace_back(F, x);
  Series outer(F, 0, std::move(bc));
  return outer.compose(y, hi_out);
}

Padic binomial_sqrt(const Padic& x) {
  if (x.val() != 0 || (x - Padic::one(x.field())).val() < 1)
    throw MathError("DivergentInput", "principal square root needs an argument congruent to 1");
  Residue one(x.field().f, 0);
  one[0] = 1;
  return x.sqrt(one);
}

AnnulusPrimitive antidifferentiate_annulus(const Series& w) {
  const Field& F = w.field();
  AnnulusPrimitive out;
  out.c_log = w.coeff(-1);
  Series Fs = Series::zero(F, w.lo() + 1, w.hi() + 1);
  for (long n = w.lo(); n <= w.hi(); ++n) {
    if (n == -1) continue;
    Fs.set(n + 1, w.coeff(n) / Padic(F, n + 1));
  }
  TailBound t = w.tail();
  if (t.known) {
    // v_p(m) <= (m-1)/(p-1), so v(a_n/(n+1)) >= (slope - e/(p-1))*n + icpt, re-indexed at m = n+1
    mpq_class loss = qq(F.e, F.p - 1);
    t.slope -= loss;
    t.icpt -= t.slope;
  }
  Fs.set_tail(t);
  out.F = Fs;
  return out;
}

Padic AnnulusPrimitive::integrate(const Padic& t0, const Padic& t1) const {
  Padic r = F.evaluate(t1) - F.evaluate(t0);
  if (!c_log.is_zero()) r += c_log * (t1.log() - t0.log());
  return r;
}

}  // namespace bcint
