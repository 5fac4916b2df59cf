#pragma once

#include <vector>

#include "bcint/wideopen.hpp"

namespace bcint {

// eta = A dxt/2yt with A in partial fractions, written as
// eta = dF + sum_k c[k] xt^k dxt/2yt + sum_c d[c] dxt/(2yt (xt - beta_c)),
// F = yt (sum_c sum_m fz[c][m] (xt - beta_c)^-m + sum_n fx[n] xt^n).
struct Decomposition {
  std::vector<std::vector<Padic>> fz;  // index 0 unused
  std::vector<Padic> fx;
  std::vector<Padic> c;  // k = 0 .. d-2
  std::vector<Padic> d;  // one per center, zero at Weierstrass centers
};

// Chart data the reduction needs: g monic and integral, centers with ||g(beta)|| = 1
// (non-Weierstrass) or g(beta) = 0, ||g'(beta)|| = 1 (Weierstrass).
struct ReductionChart {
  Poly g;
  std::vector<Center> centers;
  static ReductionChart of(const Chart& U) { return {U.g(), U.centers()}; }
};

// Residue coefficient d_c of eta at a non-Weierstrass center: Res(eta) / Res(nu_c).
Padic residue_coefficient(const ReductionChart& C, const PartialFractions& eta, int center);

// Throws MathError(BoundViolated) if a coefficient misses its norm certificate.
Decomposition decompose(const ReductionChart& C, PartialFractions eta);

// d(yt R)/(dxt/2yt) = g' R + 2 g R' for R = sum fz z^m + sum fx xt^n, as partial fractions
PartialFractions exact_part(const ReductionChart& C, const std::vector<std::vector<Padic>>& fz,
                            const std::vector<Padic>& fx);

// value of F at a chart point
Padic eval_primitive(const ReductionChart& C, const Decomposition& D, const Padic& xt, const Padic& yt);

}  // namespace bcint
