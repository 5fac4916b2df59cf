#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "bcint/coleman.hpp"
#include "bcint/newton_cover.hpp"
#include "bcint/reduction.hpp"
#include "bcint/tropgraph.hpp"

// Independent checks shared by the unit tests and the acceptance run.
namespace oracles {

using namespace bcint;

// ---- pole reduction: re-expand eta - dF - sum c omega - sum d nu ----

inline Center center(const Padic& beta, bool w) {
  Center c;
  c.beta = beta;
  c.weierstrass = w;
  c.rho = 1;
  return c;
}

// Laurent expansion of a partial-fraction function at center c (variable u = xt - beta)
// or at infinity (c < 0, variable w = 1/xt), degrees lo..hi.
inline Series laurent(const ReductionChart& C, const PartialFractions& A, int c, long lo, long hi) {
  const Field& F = C.g[0].field();
  Series s = Series::zero(F, lo, hi);
  for (size_t j = 0; j < A.pp.size(); ++j) {
    const Padic& b = C.centers[j].beta;
    for (long m = 1; m < (long)A.pp[j].size(); ++m) {
      if (A.pp[j][m].is_exact_zero()) continue;
      Series t(F, 0, {Padic::one(F)});
      if (c < 0) {
        t = binomial_series(F, -m, -b, hi).shift(m);  // w^m (1 - b w)^-m
      } else if ((int)j == c) {
        t = Series(F, -m, {Padic::one(F)});
      } else {
        Padic dl = C.centers[c].beta - b;
        t = binomial_series(F, -m, dl.inverse(), hi) * dl.pow(-m);
      }
      for (long n = t.lo(); n <= std::min(t.hi(), hi); ++n) s.add_to(n, A.pp[j][m] * t.coeff(n));
    }
  }
  for (long n = 0; n < (long)A.reg.size(); ++n) {
    if (A.reg[n].is_exact_zero()) continue;
    if (c < 0) {
      if (-n >= lo) s.add_to(-n, A.reg[n]);
    } else {
      Poly xn = Poly::constant(A.reg[n]);
      for (long k = 0; k < n; ++k) xn = xn * Poly::linear(C.centers[c].beta, Padic::one(F));
      for (long k = 0; k <= xn.degree() && k <= hi; ++k) s.add_to(k, xn[k]);
    }
  }
  return s;
}

// g as a Laurent series in the local variable
inline Series g_local(const ReductionChart& C, int c, long lo, long hi) {
  const Field& F = C.g[0].field();
  Series s = Series::zero(F, lo, hi);
  if (c < 0) {
    for (long k = 0; k <= C.g.degree(); ++k)
      if (-k >= lo) s.add_to(-k, C.g[k]);
  } else {
    Poly gb = C.g.compose_linear(Padic::one(F), C.centers[c].beta);
    for (long k = 0; k <= gb.degree() && k <= hi; ++k) s.add_to(k, gb[k]);
  }
  return s;
}

// eta - dF - sum c omega - sum d nu as a Laurent series, with dF computed by
// differentiating yt R directly: dF/(dxt/2yt) = g' R + 2 g dR/dxt
inline Series residual(const ReductionChart& C, const PartialFractions& eta, const Decomposition& D, int c, long lo,
                       long hi) {
  const Field& F = C.g[0].field();
  long d = C.g.degree();
  long pad = d + 2;
  PartialFractions R{D.fz, D.fx};
  Series Rs = laurent(C, R, c, lo - pad, hi + pad);
  Series gs = g_local(C, c, -d - 1, hi + pad);
  Series dR = Rs.derivative(), dg = gs.derivative();
  if (c < 0) {
    // d/dxt = -w^2 d/dw
    dR = dR.shift(2) * Padic(F, -1L);
    dg = dg.shift(2) * Padic(F, -1L);
  }
  Series dF = dg.mul(Rs, hi + pad) + (gs.mul(dR, hi + pad) * Padic(F, 2L));
  PartialFractions rest;
  rest.pp.resize(C.centers.size());
  for (size_t j = 0; j < C.centers.size(); ++j) rest.pp[j] = {Padic::zero(F), D.d[j]};
  rest.reg = D.c;
  Series r = laurent(C, eta, c, lo, hi) - laurent(C, rest, c, lo, hi);
  Series out = Series::zero(F, lo, hi);
  for (long n = lo; n <= hi; ++n) out.set(n, r.coeff(n) - dF.coeff(n));
  return out;
}

// smallest valuation among residual coefficients at every center and at infinity
inline long residual_floor(const ReductionChart& C, const PartialFractions& eta, const Decomposition& D) {
  long maxpole = 1, worst = Padic::INF;
  for (const auto& v : eta.pp) maxpole = std::max<long>(maxpole, v.size());
  for (int c = -1; c < (int)C.centers.size(); ++c) {
    long lo = c < 0 ? -(long)eta.reg.size() - C.g.degree() - 2 : -maxpole - 1;
    Series r = residual(C, eta, D, c, lo, 6);
    for (long n = lo; n <= 6; ++n) {
      Padic x = r.coeff(n);
      if (!x.is_zero()) worst = std::min(worst, x.val());
    }
  }
  return worst;
}

struct RandomChart {
  ReductionChart C;
  std::vector<PartialFractions> terms;
};

// charts of degree 0..4 over F (f = 1, residue field of size p >= 7) with up to two
// Weierstrass and two ordinary centers, and random elementary terms on each
inline std::vector<RandomChart> random_charts(const Field& F, unsigned seed, int charts, int per_chart) {
  std::mt19937 rng(seed);
  auto rnd = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
  auto unit_int = [&](long residue) { return Padic(F, residue) + Padic(F, rnd(0, 48)) * Padic::pi(F); };
  std::vector<RandomChart> out;
  for (int chart = 0; chart < charts; ++chart) {
    std::vector<long> res(F.p);
    for (long k = 0; k < F.p; ++k) res[k] = k;
    std::shuffle(res.begin(), res.end(), rng);
    long d = chart % 5;
    std::vector<Padic> roots;
    for (long k = 0; k < d; ++k) roots.push_back(unit_int(res[k]));
    RandomChart rc{ReductionChart{Poly::from_roots(F, roots), {}}, {}};
    for (long k = 0; k < d && k < 2; ++k) rc.C.centers.push_back(center(roots[k], true));
    for (long k = d; k < std::min<long>(d + 2, F.p); ++k) rc.C.centers.push_back(center(unit_int(res[k]), false));
    for (int term = 0; term < per_chart; ++term) {
      PartialFractions eta;
      for (size_t c = 0; c < rc.C.centers.size(); ++c) {
        std::vector<Padic> pp(rnd(1, 7), Padic::zero(F));
        for (size_t m = 1; m < pp.size(); ++m) pp[m] = Padic(F, rnd(-20, 20)) * Padic::pi(F).pow(rnd(0, 3));
        eta.pp.push_back(pp);
      }
      for (long n = rnd(0, 9); n > 0; --n) eta.reg.push_back(Padic(F, rnd(-20, 20)));
      rc.terms.push_back(eta);
    }
    out.push_back(std::move(rc));
  }
  return out;
}

// ---- Frobenius trace against point counts ----

inline long legendre(long a, long p) {
  a = ((a % p) + p) % p;
  if (a == 0) return 0;
  long r = 1, b = a, e = (p - 1) / 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r == 1 ? 1 : -1;
}

// p + 1 - #X(F_p) for y^2 = prod (x - r), one point at infinity
inline long trace_by_count(const std::vector<long>& roots, long p) {
  long count = 1;
  for (long x = 0; x < p; ++x) {
    long v = 1;
    for (long r : roots) v = v * (((x - r) % p + p) % p) % p;
    count += 1 + legendre(v, p);
  }
  return p + 1 - count;
}

inline long trace_mod_p(const FrobeniusData& fd, long p) {
  const Field& F = fd.M[0][0].field();
  Padic t = Padic::zero(F);
  for (size_t i = 0; i < fd.M.size(); ++i) t += fd.M[i][i];
  long r = t.residue()[0];
  return ((r % p) + p) % p;
}

struct TraceCase {
  long p;
  std::vector<long> roots;
};

// five elliptic and five genus-2 odd models with good reduction
inline std::vector<TraceCase> trace_cases() {
  return {{7, {1, 2, 3}},       {13, {0, 1, 4}},      {5, {0, 1, 2}},        {11, {0, 3, 5}},
          {7, {0, 2, 3}},       {5, {0, 1, 2, 3, 4}}, {7, {0, 1, 2, 3, 5}},  {11, {1, 2, 5, 7, 9}},
          {13, {0, 2, 3, 7, 11}}, {7, {1, 3, 4, 5, 6}}};
}

// true when the Kedlaya trace reduces to the point-count trace
inline bool trace_agrees(const TraceCase& c) {
  Field F(c.p, 1, 8);
  std::vector<Padic> roots;
  for (long r : c.roots) roots.emplace_back(F, r);
  auto fd = kedlaya(Poly::from_roots(F, roots), roots, kedlaya_terms(c.p, 8));
  long want = ((trace_by_count(c.roots, c.p) % c.p) + c.p) % c.p;
  return trace_mod_p(fd, c.p) == want;
}

// ---- tropical homology on parity-labelled trees ----

inline CoveringTree random_tree(std::mt19937& rng) {
  int n = std::uniform_int_distribution<int>(1, 9)(rng);
  std::vector<int> parent(n, -1), nroots(n, 0);
  for (int i = 1; i < n; ++i) parent[i] = std::uniform_int_distribution<int>(0, i - 1)(rng);
  int total = 0;
  for (int i = 0; i < n; ++i) total += nroots[i] = std::uniform_int_distribution<int>(0, 3)(rng);
  if (total < 2) nroots[0] += 2, total += 2;
  return CoveringTree::shape(parent, nroots, total % 2 == 1);
}

// failed identities: cycles closed, duals harmonic, Kronecker pairing with the
// cycles, doubling of the pairing under iota, kappa inverting iota, genus count
inline std::vector<std::string> tree_failures(const CoveringTree& T) {
  std::vector<std::string> bad;
  DualGraph G(T);
  auto B = homology_basis(G, T);
  auto rel = relative_basis(T);
  if ((int)B.cycles.size() != G.b1()) {
    bad.push_back("basis size");
    return bad;
  }
  for (size_t i = 0; i < B.cycles.size(); ++i) {
    if (!G.is_cycle(B.cycles[i])) bad.push_back("open cycle " + std::to_string(i));
    if (!is_harmonic(G, B.duals[i])) bad.push_back("dual not harmonic " + std::to_string(i));
    for (size_t j = 0; j < B.cycles.size(); ++j) {
      if (pairing(B.cycles[i], B.duals[j]) != (i == j ? 1 : 0)) bad.push_back("dual pairing");
      if (pairing(iota(G, rel[i]), iota(G, rel[j])) != 2 * pairing_tree(rel[i], rel[j])) bad.push_back("doubling");
    }
    if (pairing_tree(kappa(G, T, iota(G, rel[i])), rel[i]) != pairing_tree(rel[i], rel[i])) bad.push_back("kappa");
  }
  for (const auto& c : G.fundamental_cycles()) {
    if (iota(G, kappa(G, T, c)) != c) bad.push_back("iota kappa");
    for (const auto& d : B.duals)
      if (pairing(c, d).get_den() != 1) bad.push_back("non-integral coordinates");
  }
  // even vertices split into two rational components
  int gsum = 0, branch = 0;
  for (const auto& nd : T.nodes()) {
    gsum += nd.even ? 0 : nd.genus;
    branch += (int)nd.roots.size() + (nd.has_infinity ? 1 : 0);
  }
  if (gsum + G.b1() != (branch - 2) / 2) bad.push_back("genus count");
  return bad;
}

}  // namespace oracles
