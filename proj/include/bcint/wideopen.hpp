#pragma once

#include <vector>

#include "bcint/newton_cover.hpp"
#include "bcint/series.hpp"

namespace bcint {

// A point of y^2 = f(x) with finite x.
struct CurvePoint {
  Padic x, y;
};

// Deleted disc of a chart: center beta (chart coordinate), radius |pi|^rho, roots
// alpha = beta + delta inside. L is the pole order of 1/h at beta.
struct Center {
  int child = -1;
  Padic beta;
  long rho = 0;  // radius exponent in pi-digits, >= 1
  int L = 0;
  bool weierstrass = false;
  std::vector<Padic> deltas;  // alpha - beta for the roots other than beta
};

// Meromorphic function on the chart as principal parts plus a regular part:
// A = sum_c sum_{m>=1} pp[c][m] (xt - beta_c)^-m + sum_{n>=0} reg[n] xt^n.
struct PartialFractions {
  std::vector<std::vector<Padic>> pp;  // pp[c][m], index 0 unused
  std::vector<Padic> reg;
};

// One element U of the covering, in its chart xt = (x - mu)/lambda, with
// f(lambda xt + mu) = sigma^2 g(xt) h(xt)^2 k(xt), y = sigma h K yt, K^2 = k, yt^2 = g.
class Chart {
 public:
  Chart(const CoveringTree& T, int node);

  const CoveringTree& tree() const { return *T_; }
  const Field& field() const { return T_->field(); }
  int node() const { return node_; }
  const Padic& lambda() const { return lambda_; }
  const Padic& mu() const { return mu_; }
  const Padic& sigma() const { return sigma_; }
  const Poly& g() const { return g_; }
  const std::vector<Padic>& g_roots() const { return g_roots_; }
  int degree() const { return (int)g_.degree(); }
  const std::vector<Center>& centers() const { return centers_; }
  const std::vector<Padic>& outer_roots() const { return outer_; }
  bool top() const { return outer_rho_ >= Padic::INF; }
  long outer_rho() const { return outer_rho_; }  // region |xt| < |pi|^outer_rho (negative)

  Padic to_chart(const Padic& x) const { return (x - mu_) / lambda_; }
  Padic from_chart(const Padic& xt) const { return lambda_ * xt + mu_; }
  bool contains(const Padic& x) const;
  Padic h_at(const Padic& xt) const;
  Padic K_at(const Padic& xt) const;
  Padic k_at(const Padic& xt) const;
  Padic yt(const CurvePoint& P) const;

  // omega_i = x^i dx/2y = A(xt) dxt/2yt; A = lambda (lambda xt + mu)^i / (sigma h K)
  // depth: number of principal-part coefficients per center, and regular terms
  PartialFractions expand(int i, long depth, long work) const;
  // Laurent coefficients of A on the outer annulus |xt| > 1 in powers xt^n, n in [-nneg, npos]
  std::vector<Padic> outer_laurent(int i, long nneg, long npos, long work) const;

 private:
  Series center_unit_series(int c, int i, long n) const;   // P(u)
  Series center_inner_series(int c, long n) const;         // N(w) without w^L
  Series outer_w_series(long n) const;
  Series outer_x_series(int i, long n) const;

  const CoveringTree* T_;
  int node_;
  Padic lambda_, mu_, sigma_;
  Poly g_;
  std::vector<Padic> g_roots_;
  std::vector<Center> centers_;
  std::vector<Padic> outer_;
  long outer_rho_ = Padic::INF;
};

}  // namespace bcint
