#include "bcint/coleman.hpp"

#include <algorithm>

namespace bcint {

namespace {

long log_p_floor(long n, long p) {
  long k = 0;
  for (long q = p; q <= n; q *= p) ++k;
  return k;
}

// smallest n with n*vt - e*(log_p n + 1) >= target
long terms_for(long vt, long target, const Field& F) {
  if (vt <= 0) throw MathError("OutOfConvergenceRegion", "local parameter is not small");
  long n = 1;
  while (n * vt - F.e * (log_p_floor(n, F.p) + 1) < target) ++n;
  return n;
}

Poly poly_pow(Poly a, long n, const Field& F) {
  Poly r = Poly::constant(Padic::one(F));
  while (n > 0) {
    if (n & 1) r = r * a;
    n >>= 1;
    if (n) a = a * a;
  }
  return r;
}

Poly times_xk(const Poly& a, long k, const Field& F) {
  std::vector<Padic> c(k, Padic::zero(F));
  c.insert(c.end(), a.coeffs().begin(), a.coeffs().end());
  return Poly(std::move(c));
}

// P(u) for a power series u
Series horner(const Poly& P, const Series& u, long n) {
  const Field& F = u.field();
  Series r = Series::zero(F, 0, 0);
  for (long k = P.degree(); k >= 0; --k) {
    r = r.mul(u, n);
    r.add_to(0, P[k]);
  }
  return r;
}

Series with_tail(Series s, long icpt) {
  TailBound t;
  t.known = true;
  t.slope = 0;
  t.icpt = icpt;
  s.set_tail(t);
  return s;
}

// g'^-1 mod g for squarefree split g: sum_r g/(x - r) / g'(r)^2
Poly inverse_derivative_mod(const Poly& g, const std::vector<Padic>& roots) {
  const Field& F = g[0].field();
  Poly gp = g.derivative();
  Poly u;
  for (const auto& r : roots) {
    Poly q, rem;
    g.divmod(Poly::linear(-r, Padic::one(F)), q, rem);
    Padic d = gp.eval(r);
    u = u + q * (d * d).inverse();
  }
  return u;
}

// reduce sum_m S[m] dx/(2 y^(2m+1)) to dF + sum_k c_k x^k dx/2y
std::pair<KedlayaPrimitive, std::vector<Padic>> descend(const Poly& g, const Poly& u, std::vector<Poly> S) {
  const Field& F = g[0].field();
  Poly gp = g.derivative();
  KedlayaPrimitive prim;
  prim.B.resize(std::max<size_t>(S.size(), 1));
  for (long m = (long)S.size() - 1; m >= 1; --m) {
    if (S[m].empty()) continue;
    Poly q, r, B, A, rem;
    S[m].divmod(g, q, r);
    (r * u).divmod(g, q, B);
    (S[m] - B * gp).divmod(g, A, rem);
    prim.B[m] = B * Padic(F, qq(1, 1 - 2 * m));
    S[m - 1] = S[m - 1] + A + B.derivative() * Padic(F, qq(2, 2 * m - 1));
  }
  Decomposition D = decompose(ReductionChart{g, {}}, PartialFractions{{}, S.empty() ? std::vector<Padic>{} : S[0].coeffs()});
  prim.top = Poly(D.fx);
  std::vector<Padic> c = D.c;
  c.resize(std::max(g.degree() - 1, 0L), Padic::zero(F));
  return {prim, c};
}

Residue residue_of_one(const Field& F) {
  Residue r(F.f, 0);
  r[0] = 1;
  return r;
}

std::vector<Padic> solve(std::vector<std::vector<Padic>> A, std::vector<Padic> b) {
  size_t n = b.size();
  for (size_t c = 0; c < n; ++c) {
    size_t piv = n;
    for (size_t r = c; r < n; ++r)
      if (!A[r][c].is_zero() && (piv == n || A[r][c].val() < A[piv][c].val())) piv = r;
    if (piv == n) throw MathError("SingularSystem", "Frobenius system is singular");
    std::swap(A[c], A[piv]);
    std::swap(b[c], b[piv]);
    Padic inv = A[c][c].inverse();
    for (size_t r = 0; r < n; ++r) {
      if (r == c || A[r][c].is_exact_zero()) continue;
      Padic t = A[r][c] * inv;
      for (size_t k = c; k < n; ++k) A[r][k] -= t * A[c][k];
      b[r] -= t * b[c];
    }
  }
  for (size_t c = 0; c < n; ++c) b[c] /= A[c][c];
  return b;
}

long coeff_floor(const BasicForm& w) {
  long v = Padic::INF;
  for (const auto& c : w.c)
    if (!c.is_zero()) v = std::min(v, c.val());
  for (const auto& d : w.d)
    if (!d.is_zero()) v = std::min(v, d.val());
  return v >= Padic::INF ? 0 : v;
}

bool form_is_zero(const BasicForm& w) {
  for (const auto& c : w.c)
    if (!c.is_exact_zero()) return false;
  for (const auto& d : w.d)
    if (!d.is_exact_zero()) return false;
  return true;
}

}  // namespace

Padic KedlayaPrimitive::eval(const Poly& g, const ChartPoint& P) const {
  const Field& F = g[0].field();
  Padic s = top.empty() ? Padic::zero(F) : top.eval(P.x);
  Padic gx = g.eval(P.x);
  Padic ginv = gx.inverse(), gm = Padic::one(F);
  for (size_t m = 1; m < B.size(); ++m) {
    gm *= ginv;
    if (!B[m].empty()) s += B[m].eval(P.x) * gm;
  }
  return s * P.y;
}

long kedlaya_terms(long p, long target_p) { return target_p + 2 * (log_p_floor(2 * p * (target_p + 1), p) + 1) + 1; }

namespace {

// p b_k E^k with E = g(x^p) - g(x)^p, k = 0..K
std::vector<Poly> frobenius_terms(const Poly& g, long K) {
  const Field& F = g[0].field();
  long p = F.p;
  std::vector<Padic> gxp(p * g.degree() + 1, Padic::zero(F));
  for (long i = 0; i <= g.degree(); ++i) gxp[p * i] = g[i];
  Poly E = Poly(gxp) - poly_pow(g, p, F);
  auto b = binomial_coeffs(qq(-1, 2), K);
  std::vector<Poly> out;
  Poly Ek = Poly::constant(Padic::one(F));
  for (long k = 0; k <= K; ++k) {
    out.push_back(Ek * (Padic(F, b[k]) * p));
    if (k < K) Ek = Ek * E;
  }
  return out;
}

}  // namespace

FrobeniusData kedlaya(const Poly& g, const std::vector<Padic>& roots, long K) {
  const Field& F = g[0].field();
  long p = F.p, d = g.degree();
  if (d % 2 == 0) throw MathError("EvenDegreeUnhandled", "Frobenius matrix needs an odd-degree model");
  Poly u = inverse_derivative_mod(g, roots);
  auto terms = frobenius_terms(g, K);
  FrobeniusData fd;
  for (long i = 0; i + 1 < d; ++i) {
    std::vector<Poly> S((p - 1) / 2 + p * K + 1);
    for (long k = 0; k <= K; ++k) S[(p - 1) / 2 + p * k] = times_xk(terms[k], p * (i + 1) - 1, F);
    auto [prim, c] = descend(g, u, std::move(S));
    fd.f.push_back(prim);
    fd.M.push_back(c);
  }
  return fd;
}

ThirdKindData third_kind_frobenius(const Poly& g, const std::vector<Padic>& roots, const Padic& beta, long K) {
  const Field& F = g[0].field();
  long p = F.p;
  Poly gb = g.compose_linear(Padic::one(F), beta);
  std::vector<Padic> rb;
  for (const auto& r : roots) rb.push_back(r - beta);
  Poly u = inverse_derivative_mod(gb, rb);
  Padic g0 = gb[0];
  ThirdKindData T;
  T.beta = beta;
  T.eps = g0.pow((p - 1) / 2).residue() == residue_of_one(F) ? 1 : -1;
  auto terms = frobenius_terms(gb, K);
  Poly gpp = poly_pow(gb, p, F);
  Poly Gm = poly_pow(gb, (p - 1) / 2, F);
  Padic g0m = g0.pow((p - 1) / 2);
  std::vector<Poly> S((p - 1) / 2 + p * K + 1);
  for (long k = 0; k <= K; ++k) {
    long m = (p - 1) / 2 + p * k;
    // (T_k/g^m - T_k(0)/g(0)^m)/x, numerator vanishes at 0
    Padic c0 = terms[k].coeff(0, F) / g0m;
    Poly num = terms[k] - Gm * c0;
    std::vector<Padic> q;
    for (long j = 1; j <= num.degree(); ++j) q.push_back(num[j]);
    S[m] = Poly(q);
    if (k < K) {
      Gm = Gm * gpp;
      g0m *= g0.pow(p);
    }
  }
  auto [prim, c] = descend(gb, u, std::move(S));
  T.G = prim;
  T.c = c;
  return T;
}

ChartPoint frobenius_point(const Poly& g, const ChartPoint& P) {
  long p = P.x.field().p;
  Padic xp = P.x.pow(p);
  Padic U = binomial_sqrt(g.eval(xp) / g.eval(P.x).pow(p));
  return {xp, P.y.pow(p) * U};
}

ChartIntegrator::ChartIntegrator(Poly g, std::vector<Padic> roots, std::vector<Padic> betas)
    : g_(std::move(g)), roots_(std::move(roots)), betas_(std::move(betas)) {
  const Field& F = field();
  target_ = F.N;
  long d = g_.degree();
  if (d < 3 || d % 2 == 0) return;
  bool qp = F.f == 1;
  for (const auto& a : g_.coeffs()) qp = qp && (a.is_zero() || a.in_Qp());
  if (!qp) return;  // J_frobenius reports the violated hypothesis when it is needed
  // Frobenius data is Q_p-valued: compute it over Q_p and embed
  long Np = (target_ + F.e - 1) / F.e;
  qp_ = std::make_shared<Field>(F.p, 1, Np + 4);
  const Field& Q = *qp_;
  auto down = [&](const Padic& a) { return a.to_field(Q); };
  auto up = [&](const Padic& a) { return a.to_field(F); };
  auto poly_map = [](const Poly& a, auto fn) {
    std::vector<Padic> c;
    for (const auto& x : a.coeffs()) c.push_back(fn(x));
    return Poly(c);
  };
  auto prim_up = [&](const KedlayaPrimitive& k) {
    KedlayaPrimitive r;
    for (const auto& b : k.B) r.B.push_back(poly_map(b, up));
    r.top = poly_map(k.top, up);
    return r;
  };
  Poly gq = poly_map(g_, down);
  std::vector<Padic> rq;
  for (const auto& r : roots_) rq.push_back(down(r));
  long K = kedlaya_terms(F.p, Np);
  FrobeniusData fq = kedlaya(gq, rq, K);
  for (const auto& row : fq.M) {
    std::vector<Padic> r;
    for (const auto& x : row) r.push_back(up(x));
    frob_.M.push_back(r);
  }
  for (const auto& f : fq.f) frob_.f.push_back(prim_up(f));
  for (const auto& b : betas_) {
    if (!(b.is_zero() || b.in_Qp())) {
      third_.push_back(ThirdKindData{});
      continue;
    }
    ThirdKindData tq = third_kind_frobenius(gq, rq, down(b), K);
    ThirdKindData t;
    t.beta = b;
    t.eps = tq.eps;
    t.G = prim_up(tq.G);
    for (const auto& c : tq.c) t.c.push_back(up(c));
    third_.push_back(t);
  }
}

ChartIntegrator::Disc ChartIntegrator::disc_of(const ChartPoint& P, int* root) const {
  if (!P.x.is_zero() && P.x.val() < 0) return Disc::Infinity;
  for (size_t i = 0; i < roots_.size(); ++i) {
    Padic t = P.x - roots_[i];
    if (t.is_zero() || t.val() > 0) {
      if (root) *root = (int)i;
      return Disc::Weierstrass;
    }
  }
  return Disc::Ordinary;
}

bool ChartIntegrator::same_disc(const ChartPoint& A, const ChartPoint& B) const {
  int ra = -1, rb = -1;
  Disc da = disc_of(A, &ra), db = disc_of(B, &rb);
  if (da != db) return false;
  if (da == Disc::Infinity) return true;
  if (da == Disc::Weierstrass) return ra == rb;
  return A.x.residue() == B.x.residue() && A.y.residue() == B.y.residue();
}

BasicForm ChartIntegrator::basis_form(size_t k) const {
  const Field& F = field();
  BasicForm w;
  size_t nc = std::max(degree() - 1, 0L);
  w.c.assign(nc, Padic::zero(F));
  w.beta = betas_;
  w.d.assign(betas_.size(), Padic::zero(F));
  if (k < nc)
    w.c[k] = Padic::one(F);
  else
    w.d[k - nc] = Padic::one(F);
  return w;
}

Padic ChartIntegrator::tiny(const BasicForm& w, const ChartPoint& A, const ChartPoint& B) const {
  if (!same_disc(A, B)) throw MathError("DifferentResidueDiscs", "tiny integral between different residue discs");
  if (form_is_zero(w)) return Padic::zero(field());
  int r = -1;
  switch (disc_of(A, &r)) {
    case Disc::Infinity:
      return tiny_infinity(w, A, B);
    case Disc::Weierstrass:
      return tiny_weierstrass(w, r, A, B);
    default:
      return tiny_ordinary(w, A, B);
  }
}

Padic ChartIntegrator::tiny_ordinary(const BasicForm& w, const ChartPoint& A, const ChartPoint& B) const {
  const Field& F = field();
  Padic one = Padic::one(F);
  Padic total = Padic::zero(F);
  long floor = coeff_floor(w);
  // poles of w inside this disc
  std::vector<size_t> inside;
  for (size_t j = 0; j < w.beta.size(); ++j) {
    Padic t = A.x - w.beta[j];
    if (t.is_zero()) throw MathError("EndpointAtPole", "endpoint at a pole of the form");
    if (t.val() > 0 && !w.d[j].is_exact_zero()) inside.push_back(j);
  }
  Padic t1 = B.x - A.x;
  if (!t1.is_zero()) {
    long n = terms_for(t1.val(), target_ - floor, F);
    Poly G = g_.compose_linear(one, A.x) * g_.eval(A.x).inverse();
    Series Y = inv_sqrt_binomial(Series(F, 0, G.coeffs()), n) * (Padic(F, 2L) * A.y).inverse();
    Poly Rp;
    for (size_t k = 0; k < w.c.size(); ++k)
      if (!w.c[k].is_exact_zero()) Rp = Rp + poly_pow(Poly::linear(A.x, one), k, F) * w.c[k];
    Series R(F, 0, Rp.empty() ? std::vector<Padic>{Padic::zero(F)} : Rp.coeffs());
    for (size_t j = 0; j < w.beta.size(); ++j) {
      if (w.d[j].is_exact_zero() || std::find(inside.begin(), inside.end(), j) != inside.end()) continue;
      Padic inv = (A.x - w.beta[j]).inverse();
      R = R + binomial_series(F, -1, inv, n) * (inv * w.d[j]);
    }
    Series I = with_tail(R.mul(Y, n), floor);
    total += antidifferentiate_annulus(I).F.evaluate(t1);
  }
  for (size_t j : inside) {
    const Padic& b = w.beta[j];
    Padic ua = A.x - b, ub = B.x - b;
    if (ub.is_zero()) throw MathError("EndpointAtPole", "endpoint at a pole of the form");
    Padic gb = g_.eval(b);
    Padic s = A.y / binomial_sqrt(g_.eval(A.x) / gb);
    long n = terms_for(std::min(ua.val(), ub.val()), target_ - w.d[j].val(), F);
    Poly G = g_.compose_linear(one, b) * gb.inverse();
    Series I = inv_sqrt_binomial(Series(F, 0, G.coeffs()), n).shift(-1) * (w.d[j] / (Padic(F, 2L) * s));
    I = with_tail(I, w.d[j].val());
    total += antidifferentiate_annulus(I).integrate(ua, ub);
  }
  return total;
}

Padic ChartIntegrator::tiny_weierstrass(const BasicForm& w, int ri, const ChartPoint& A, const ChartPoint& B) const {
  const Field& F = field();
  Padic one = Padic::one(F);
  const Padic& r = roots_[ri];
  long vt = std::min(A.y.is_zero() ? Padic::INF : A.y.val(), B.y.is_zero() ? Padic::INF : B.y.val());
  if (vt >= Padic::INF) return Padic::zero(F);
  long floor = coeff_floor(w);
  long nt = terms_for(vt, target_ - floor, F);
  long n = nt / 2 + 1;
  // u(s) with g(r + u) = s
  Poly G = g_.compose_linear(one, r);
  std::vector<Padic> gc = G.coeffs();
  gc[0] = Padic::zero(F);
  G = Poly(gc);
  Poly Gp = G.derivative();
  Series s = Series(F, 1, {one});
  Series u = s * G[1].inverse();
  for (long prec = 2; prec < 2 * n + 2; prec *= 2) {
    Series Gu = horner(G, u, n), Gpu = horner(Gp, u, n);
    u = u - (Gu - s).mul(Gpu.inverse(n), n);
  }
  u = u.truncate(n);
  Series gpx = horner(g_.derivative().compose_linear(one, r), u, n);
  Poly Rp;
  for (size_t k = 0; k < w.c.size(); ++k)
    if (!w.c[k].is_exact_zero()) Rp = Rp + poly_pow(Poly::linear(r, one), k, F) * w.c[k];
  Series R = Rp.empty() ? Series::zero(F, 0, 0) : horner(Rp, u, n);
  for (size_t j = 0; j < w.beta.size(); ++j) {
    if (w.d[j].is_exact_zero()) continue;
    Padic inv = (r - w.beta[j]).inverse();
    R = R + binomial_series(F, -1, inv, n).compose(u, n) * (inv * w.d[j]);
  }
  Series h = R.mul(gpx.inverse(n), n);
  Series ht = Series::zero(F, 0, 2 * n);
  for (long j = 0; j <= n; ++j) ht.set(2 * j, h.coeff(j));
  ht = with_tail(ht, floor);
  auto prim = antidifferentiate_annulus(ht);
  return prim.F.evaluate(B.y) - prim.F.evaluate(A.y);
}

Padic ChartIntegrator::tiny_infinity(const BasicForm& w, const ChartPoint& A, const ChartPoint& B) const {
  const Field& F = field();
  Padic one = Padic::one(F);
  long d = degree(), gg = (d - 1) / 2;
  if (d % 2 == 0) throw MathError("EvenDegreeUnhandled", "points at infinity of an even model");
  Padic ta = A.x.pow(gg) / A.y, tb = B.x.pow(gg) / B.y;
  long floor = coeff_floor(w);
  long nt = terms_for(std::min(ta.val(), tb.val()), target_ - floor, F);
  long n = nt / 2 + gg + 2;
  // w(s) = s G(w(s)), G(w) = w^d g(1/w)
  std::vector<Padic> gw(d + 1);
  for (long j = 0; j <= d; ++j) gw[j] = g_[d - j];
  Poly Gw(gw), Gwp = Gw.derivative();
  Series s(F, 1, {one});
  Series W = s;
  for (long prec = 2; prec < 2 * n + 2; prec *= 2) {
    Series Phi = W - s.mul(horner(Gw, W, n), n);
    Series dPhi = Series::one(F, 0) - s.mul(horner(Gwp, W, n), n);
    W = W - Phi.mul(dPhi.inverse(n), n);
  }
  W = W.truncate(n);
  Series v = horner(Gw, W, n);  // W = s v
  Series vinv = v.inverse(n);
  auto vpow = [&](long m) {
    Series r = Series::one(F, 0);
    const Series& b = m >= 0 ? v : vinv;
    for (long k = 0; k < std::abs(m); ++k) r = r.mul(b, n);
    return r;
  };
  Series Ws = W.derivative();
  Series E = Series::zero(F, -gg - 1, n);
  for (size_t k = 0; k < w.c.size(); ++k) {
    if (w.c[k].is_exact_zero()) continue;
    long m = gg - 2 - (long)k;
    E = E + vpow(m).shift(m + 1) * w.c[k];
  }
  for (size_t j = 0; j < w.beta.size(); ++j) {
    if (w.d[j].is_exact_zero()) continue;
    Series t = vpow(gg - 1).mul(binomial_series(F, -1, -w.beta[j], n).compose(W, n), n).shift(gg);
    E = E + t * w.d[j];
  }
  E = E.mul(Ws, n) * Padic(F, -1L);
  Series Et = Series::zero(F, 2 * E.lo(), 2 * n);
  for (long j = E.lo(); j <= n; ++j) Et.set(2 * j, E.coeff(j));
  Et = with_tail(Et, floor);
  auto prim = antidifferentiate_annulus(Et);
  return prim.F.evaluate(tb) - prim.F.evaluate(ta);
}

std::vector<Padic> ChartIntegrator::J(const ChartPoint& P) const {
  long d = degree();
  if (d < 3 || d % 2 == 0) throw MathError("EvenDegreeUnhandled", "anchor integrals need an odd model of genus >= 1");
  int r = -1;
  Disc k = disc_of(P, &r);
  size_t nb = (size_t)(d - 1) + betas_.size();
  std::vector<Padic> out;
  if (k == Disc::Ordinary) return J_frobenius(P);
  ChartPoint wP{P.x, -P.y};
  for (size_t i = 0; i < nb; ++i) out.push_back(tiny(basis_form(i), wP, P));
  return out;
}

std::vector<Padic> ChartIntegrator::J_frobenius(const ChartPoint& P) const {
  const Field& F = field();
  if (frob_.M.empty())
    throw MathError("HypothesisViolated", "Frobenius lift needs a chart curve over Q_p with residue field F_p");
  long d = degree(), ng = d - 1, p = F.p;
  Padic one = Padic::one(F), two(F, 2L);
  ChartPoint phP = frobenius_point(g_, P);
  bool same = phP.y.residue() == P.y.residue();
  ChartPoint wphP{phP.x, -phP.y};
  std::vector<std::vector<Padic>> A(ng, std::vector<Padic>(ng));
  std::vector<Padic> rhs(ng);
  for (long i = 0; i < ng; ++i) {
    for (long j = 0; j < ng; ++j) A[i][j] = frob_.M[i][j] - (i == j ? (same ? one : -one) : Padic::zero(F));
    Padic t = same ? tiny(basis_form(i), P, phP) : tiny(basis_form(i), wphP, P);
    rhs[i] = two * t - two * frob_.f[i].eval(g_, P);
  }
  std::vector<Padic> Jw = solve(A, rhs);
  std::vector<Padic> out = Jw;
  for (size_t j = 0; j < betas_.size(); ++j) {
    const ThirdKindData& T = third_[j];
    if (T.c.empty()) throw MathError("HypothesisViolated", "third-kind pole is not defined over Q_p");
    const Padic& b = T.beta;
    Poly gb = g_.compose_linear(one, b);
    ChartPoint Pb{P.x - b, P.y};
    Padic xn = Pb.x.pow(p) + b;
    ChartPoint phb{xn, P.y.pow(p) * binomial_sqrt(g_.eval(xn) / g_.eval(P.x).pow(p))};
    bool same_b = phb.y.residue() == P.y.residue();
    // J for (x - beta)^k dx/2y from J for x^i dx/2y
    Padic rhs_b = two * T.G.eval(gb, Pb);
    for (size_t k = 0; k < T.c.size(); ++k) {
      Padic Jk = Padic::zero(F);
      mpz_class binom = 1;
      for (size_t i = 0; i <= k; ++i) {
        Jk += Padic(F, binom) * (-b).pow((long)(k - i)) * Jw[i];
        binom = binom * (long)(k - i) / (long)(i + 1);
      }
      rhs_b += T.c[k] * Jk;
    }
    BasicForm nu = basis_form((size_t)ng + j);
    Padic eps_p = Padic(F, (long)T.eps * p);
    if (same_b)
      out.push_back((rhs_b - two * tiny(nu, P, phb)) / (one - eps_p));
    else
      out.push_back(-(rhs_b + two * tiny(nu, P, ChartPoint{phb.x, -phb.y})) / (one + eps_p));
  }
  return out;
}

Padic ChartIntegrator::genus0(const BasicForm& w, const ChartPoint& A, const ChartPoint& B) const {
  const Field& F = field();
  Padic one = Padic::one(F), two(F, 2L);
  long d = degree();
  Padic total = Padic::zero(F);
  auto logq = [](const Padic& a, const Padic& b) { return b.log() - a.log(); };  // Log(b/a)
  if (d == 0) {
    for (size_t j = 0; j < w.beta.size(); ++j) {
      if (w.d[j].is_exact_zero()) continue;
      if (!A.y.equals(B.y)) throw MathError("ComponentMismatch", "endpoints lie on different components");
      total += w.d[j] / (two * A.y) * logq(A.x - w.beta[j], B.x - w.beta[j]);
    }
    return total;
  }
  if (d == 1) {
    for (size_t j = 0; j < w.beta.size(); ++j) {
      if (w.d[j].is_exact_zero()) continue;
      auto sg = g_.eval(w.beta[j]).try_sqrt();
      if (!sg) throw MathError("NotInField", "logarithmic primitive needs a square root of g(beta)");
      Padic s = *sg;
      total += w.d[j] / (two * s) * (logq(A.y - s, B.y - s) - logq(A.y + s, B.y + s));
    }
    return total;
  }
  // d == 2: T = yt + xt + b/2 parametrises the conic
  Padic half = Padic(F, qq(1, 2));
  Padic Ta = A.y + A.x + g_[1] * half, Tb = B.y + B.x + g_[1] * half;
  if (!w.c.empty() && !w.c[0].is_exact_zero()) total += w.c[0] * half * logq(Ta, Tb);
  for (size_t k = 1; k < w.c.size(); ++k)
    if (!w.c[k].is_zero()) throw MathError("UnsupportedForm", "genus 0 chart form outside the reduced basis");
  for (size_t j = 0; j < w.beta.size(); ++j) {
    if (w.d[j].is_exact_zero()) continue;
    auto sg = g_.eval(w.beta[j]).try_sqrt();
    if (!sg) throw MathError("NotInField", "logarithmic primitive needs a square root of g(beta)");
    Padic s = *sg, lam = w.beta[j] + g_[1] * half;
    total += w.d[j] / (two * s) * (logq(Ta - lam - s, Tb - lam - s) - logq(Ta - lam + s, Tb - lam + s));
  }
  return total;
}

Padic ChartIntegrator::integrate(const BasicForm& w, const ChartPoint& A, const ChartPoint& B) const {
  const Field& F = field();
  long d = degree();
  if (d <= 2) return genus0(w, A, B);
  if (d % 2 == 0) throw MathError("EvenDegreeUnhandled", "even chart model of genus >= 1");
  if (same_disc(A, B)) return tiny(w, A, B);
  auto JA = J(A), JB = J(B);
  Padic s = Padic::zero(F);
  for (size_t k = 0; k < w.c.size(); ++k) {
    if (w.c[k].is_exact_zero()) continue;
    if (k + 1 >= (size_t)d) throw MathError("UnsupportedForm", "form outside the reduced basis");
    s += w.c[k] * (JB[k] - JA[k]);
  }
  for (size_t j = 0; j < w.beta.size(); ++j) {
    if (w.d[j].is_exact_zero()) continue;
    auto it = std::find_if(betas_.begin(), betas_.end(), [&](const Padic& b) { return b.equals(w.beta[j]); });
    if (it == betas_.end()) throw MathError("UnsupportedForm", "third-kind pole not registered with the chart");
    size_t idx = (size_t)(d - 1) + (it - betas_.begin());
    s += w.d[j] * (JB[idx] - JA[idx]);
  }
  return s * Padic(F, qq(1, 2));
}

}  // namespace bcint
