#include "bcint/reduction.hpp"

#include <algorithm>
#include <cmath>

namespace bcint {

namespace {

void grow(std::vector<Padic>& v, size_t n, const Field& F) {
  if (v.size() < n) v.resize(n, Padic::zero(F));
}

// add t * (xt - beta)^j to a polynomial in xt
void add_shifted_power(std::vector<Padic>& reg, const Padic& t, const Padic& beta, long j) {
  const Field& F = t.field();
  grow(reg, j + 1, F);
  mpz_class binom = 1;
  Padic mb = -beta;
  for (long i = 0; i <= j; ++i) {
    reg[i] += t * Padic(F, binom) * mb.pow(j - i);
    binom = binom * (j - i) / (i + 1);
  }
}

long min_val(const std::vector<Padic>& v, size_t from = 0) {
  long m = Padic::INF;
  for (size_t i = from; i < v.size(); ++i)
    if (!v[i].is_zero()) m = std::min(m, v[i].val());
  return m;
}

long log_p_ceil(long n, long p) {
  long k = 0, q = 1;
  while (q < n) q *= p, ++k;
  return k;
}

// v(x) >= floor - loss (pi-units), loss given in p-units
void certify(const Padic& x, long floor, const mpq_class& loss_p, const char* where) {
  if (x.is_zero() || floor >= Padic::INF / 2) return;
  const Field& F = x.field();
  mpq_class loss = loss_p * F.e;
  mpz_class lc = loss.get_num() / loss.get_den() + 1;
  if (x.val() < floor - lc.get_si())
    throw MathError("BoundViolated", std::string("norm certificate failed in ") + where);
}

}  // namespace

Padic residue_coefficient(const ReductionChart& C, const PartialFractions& eta, int c) {
  const Center& ce = C.centers[c];
  const Field& F = ce.beta.field();
  const auto& pp = eta.pp[c];
  long M = (long)pp.size() - 1;
  if (M < 1) return Padic::zero(F);
  // (g(beta + u)/g(beta))^(-1/2) = sum e_j u^j
  Poly gb = C.g.compose_linear(Padic::one(F), ce.beta);
  Padic g0 = gb.coeff(0, F);
  std::vector<Padic> nc;
  for (long k = 0; k <= gb.degree(); ++k) nc.push_back(gb[k] / g0);
  Series e = inv_sqrt_binomial(Series(F, 0, nc), M);
  Padic d = Padic::zero(F);
  for (long m = 1; m <= M; ++m) d += pp[m] * e.coeff(m - 1);
  return d;
}

Decomposition decompose(const ReductionChart& C, PartialFractions eta) {
  const Field& F = C.g[0].field();
  const long p = F.p;
  long d = C.g.degree();
  Decomposition D;
  D.fz.resize(C.centers.size());
  D.d.assign(C.centers.size(), Padic::zero(F));
  eta.pp.resize(C.centers.size());

  // residues first
  for (size_t c = 0; c < C.centers.size(); ++c)
    if (!C.centers[c].weierstrass) D.d[c] = residue_coefficient(C, eta, (int)c);

  // finite centers: non-Weierstrass, then Weierstrass
  for (int pass = 0; pass < 2; ++pass) {
    for (size_t c = 0; c < C.centers.size(); ++c) {
      const Center& ce = C.centers[c];
      if (ce.weierstrass != (pass == 1)) continue;
      auto& pp = eta.pp[c];
      long M = (long)pp.size() - 1;
      long k0 = ce.weierstrass ? 1 : 0;
      long Mmin = ce.weierstrass ? 1 : 2;
      long v_in = min_val(pp, 1);
      Poly gb = C.g.compose_linear(Padic::one(F), ce.beta);
      D.fz[c].assign(std::max(M + 1, 1L), Padic::zero(F));
      for (long Mi = M; Mi >= Mmin; --Mi) {
        if (pp[Mi].is_exact_zero()) continue;
        long m = Mi + k0 - 1;  // exponent of the exact form yt z^m
        Padic top = gb.coeff(k0, F) * (k0 - 2 * m);
        Padic t = pp[Mi] / top;
        D.fz[c][m] += t;
        for (long k = 0; k <= gb.degree(); ++k) {
          long coef = k - 2 * m;
          if (coef == 0 || gb[k].is_exact_zero() || (k == 0 && ce.weierstrass)) continue;
          Padic s = t * gb[k] * coef;
          long pw = m + 1 - k;  // power of z
          if (pw >= 1)
            pp[pw] -= s;
          else
            add_shifted_power(eta.reg, -s, ce.beta, -pw);
        }
        pp[Mi] = Padic::zero(F, pp[Mi].prec());
        mpq_class loss = ce.weierstrass ? mpq_class(1) + qq(Mi, p - 1) + log_p_ceil(Mi, p) : qq(Mi, p - 1);
        certify(t, v_in, loss, ce.weierstrass ? "Weierstrass reduction" : "non-Weierstrass reduction");
      }
      if (!ce.weierstrass && M >= 1) {
        // leftover simple pole must be the residue read off before reducing
        if (!pp[1].agrees_to(D.d[c], std::min(pp[1].prec(), D.d[c].prec())))
          throw MathError("BoundViolated", "residue disagrees with the reduced simple pole");
        certify(D.d[c], v_in, 0, "residue");
      }
    }
  }

  // infinity
  auto& reg = eta.reg;
  long v_inf = min_val(reg);
  for (long n = (long)reg.size() - 1; n >= std::max(d - 1, 0L); --n) {
    if (reg[n].is_exact_zero()) continue;
    long m = n - d + 1;
    Padic t = reg[n] / Padic(F, 2 * m + d);
    grow(D.fx, m + 1, F);
    D.fx[m] += t;
    for (long k = 0; k <= d; ++k) {
      long coef = 2 * m + k, idx = m - 1 + k;
      if (coef == 0 || idx < 0 || C.g[k].is_exact_zero()) continue;
      if (idx == n) continue;
      reg[idx] -= t * C.g[k] * coef;
    }
    reg[n] = Padic::zero(F, reg[n].prec());
    mpq_class loss = mpq_class(2) + qq(m, p - 1) + log_p_ceil(d * (d + m), p);
    certify(t, v_inf, loss, "reduction at infinity");
  }
  D.c.assign(std::max(d - 1, 0L), Padic::zero(F));
  for (long k = 0; k + 1 < d && k < (long)reg.size(); ++k) {
    D.c[k] = reg[k];
    certify(D.c[k], v_inf, mpq_class(2) + qq(std::max<long>((long)reg.size() - d + 1, 0), p - 1) +
                               log_p_ceil(d * (d + (long)reg.size()), p),
            "cohomology coefficient");
  }
  return D;
}

PartialFractions exact_part(const ReductionChart& C, const std::vector<std::vector<Padic>>& fz,
                            const std::vector<Padic>& fx) {
  const Field& F = C.g[0].field();
  PartialFractions out;
  out.pp.resize(C.centers.size());
  long d = C.g.degree();
  for (size_t c = 0; c < C.centers.size() && c < fz.size(); ++c) {
    const Center& ce = C.centers[c];
    Poly gb = C.g.compose_linear(Padic::one(F), ce.beta);
    auto& pp = out.pp[c];
    for (long m = 1; m < (long)fz[c].size(); ++m) {
      if (fz[c][m].is_exact_zero()) continue;
      for (long k = 0; k <= gb.degree(); ++k) {
        long coef = k - 2 * m;
        if (coef == 0 || gb[k].is_exact_zero() || (k == 0 && ce.weierstrass)) continue;
        Padic s = fz[c][m] * gb[k] * coef;
        long pw = m + 1 - k;
        if (pw >= 1) {
          grow(pp, pw + 1, F);
          pp[pw] += s;
        } else {
          add_shifted_power(out.reg, s, ce.beta, -pw);
        }
      }
    }
  }
  for (long m = 0; m < (long)fx.size(); ++m) {
    for (long k = 0; k <= d; ++k) {
      long coef = 2 * m + k, idx = m - 1 + k;
      if (coef == 0 || idx < 0) continue;
      grow(out.reg, idx + 1, F);
      out.reg[idx] += fx[m] * C.g[k] * coef;
    }
  }
  return out;
}

Padic eval_primitive(const ReductionChart& C, const Decomposition& D, const Padic& xt, const Padic& yt) {
  const Field& F = xt.field();
  Padic s = Padic::zero(F);
  for (size_t c = 0; c < D.fz.size(); ++c) {
    if (D.fz[c].size() <= 1) continue;
    Padic z = (xt - C.centers[c].beta).inverse();
    Padic acc = Padic::zero(F);
    for (long m = (long)D.fz[c].size() - 1; m >= 1; --m) acc = (acc + D.fz[c][m]) * z;
    s += acc;
  }
  Padic acc = Padic::zero(F);
  for (long n = (long)D.fx.size() - 1; n >= 0; --n) acc = acc * xt + D.fx[n];
  return yt * (s + acc);
}

}  // namespace bcint
