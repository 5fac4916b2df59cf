#pragma once

#include <memory>
#include <vector>

#include "bcint/reduction.hpp"
#include "bcint/series.hpp"

namespace bcint {

// Point on a chart curve yt^2 = g(xt), chart coordinates.
struct ChartPoint {
  Padic x, y;
};

// sum_k c[k] xt^k dxt/2yt + sum_j d[j] dxt/(2 yt (xt - beta[j]))
struct BasicForm {
  std::vector<Padic> c;
  std::vector<Padic> beta, d;
};

// Exact part of a Frobenius reduction: sum_m B[m](x) y^(1-2m) + top(x) y.
struct KedlayaPrimitive {
  std::vector<Poly> B;  // index 0 unused
  Poly top;
  Padic eval(const Poly& g, const ChartPoint& P) const;
};

// phi* omega_i = d f_i + sum_j M[i][j] omega_j for the lift x -> x^p, on an odd model over Q_p.
struct FrobeniusData {
  std::vector<std::vector<Padic>> M;
  std::vector<KedlayaPrimitive> f;
};

// Third-kind data at beta for the lift x - beta -> (x - beta)^p:
// phi* nu - eps p nu = dG + sum_j c[j] (x - beta)^j dx/2y
struct ThirdKindData {
  Padic beta;
  int eps = 1;
  KedlayaPrimitive G;
  std::vector<Padic> c;
};

// number of Frobenius series terms for a target absolute precision (p-units)
long kedlaya_terms(long p, long target_p);
FrobeniusData kedlaya(const Poly& g, const std::vector<Padic>& roots, long terms);
ThirdKindData third_kind_frobenius(const Poly& g, const std::vector<Padic>& roots, const Padic& beta, long terms);
// (x^p, y^p (g(x^p)/g(x)^p)^(1/2)), for |x| <= 1 and |g(x)| = 1
ChartPoint frobenius_point(const Poly& g, const ChartPoint& P);

// Coleman integration on one good-reduction chart curve yt^2 = g(xt).
// Forms are BasicForms whose third-kind poles are among `betas`.
class ChartIntegrator {
 public:
  ChartIntegrator(Poly g, std::vector<Padic> roots, std::vector<Padic> betas);

  const Field& field() const { return g_[0].field(); }
  const Poly& g() const { return g_; }
  long degree() const { return g_.degree(); }
  int genus() const { return (int)((g_.degree() - 1) / 2); }
  const FrobeniusData& frobenius() const { return frob_; }

  Padic integrate(const BasicForm& w, const ChartPoint& A, const ChartPoint& B) const;
  // A and B in one residue disc
  Padic tiny(const BasicForm& w, const ChartPoint& A, const ChartPoint& B) const;
  // J(P) = int_{wP}^P for omega_0 .. omega_{d-2}, then nu_beta for each beta; needs odd d >= 3
  std::vector<Padic> J(const ChartPoint& P) const;

  bool same_disc(const ChartPoint& A, const ChartPoint& B) const;

 private:
  enum class Disc { Infinity, Weierstrass, Ordinary };
  Disc disc_of(const ChartPoint& P, int* root) const;
  std::vector<Padic> J_frobenius(const ChartPoint& P) const;
  Padic genus0(const BasicForm& w, const ChartPoint& A, const ChartPoint& B) const;
  // integrand sum c_k x^k + sum d_j/(x - beta_j) as series in the local parameter of a disc
  Padic tiny_ordinary(const BasicForm& w, const ChartPoint& A, const ChartPoint& B) const;
  Padic tiny_weierstrass(const BasicForm& w, int root, const ChartPoint& A, const ChartPoint& B) const;
  Padic tiny_infinity(const BasicForm& w, const ChartPoint& A, const ChartPoint& B) const;
  BasicForm basis_form(size_t k) const;

  Poly g_;
  std::vector<Padic> roots_, betas_;
  long target_;  // absolute precision in pi-digits
  std::shared_ptr<Field> qp_;  // unramified field for the Frobenius reductions
  FrobeniusData frob_;
  std::vector<ThirdKindData> third_;
};

}  // namespace bcint
