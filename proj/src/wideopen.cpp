#include "bcint/wideopen.hpp"

#include <algorithm>

namespace bcint {

Chart::Chart(const CoveringTree& T, int node) : T_(&T), node_(node) {
  const Field& F = T.field();
  const CoverNode& n = T.node(node);
  lambda_ = n.scale;
  mu_ = n.shift;
  if (n.parent >= 0) outer_rho_ = T.node(n.parent).scale.val() - lambda_.val();
  std::vector<Padic> groots;
  for (int r : n.roots) groots.push_back(to_chart(T.roots()[r]));
  for (int c : n.children) {
    const CoverNode& ch = T.node(c);
    Center ce;
    ce.child = c;
    ce.beta = ch.center_in_parent;
    ce.rho = ch.scale.val() - lambda_.val();
    ce.L = (int)ch.subtree.size() / 2;
    ce.weierstrass = ch.subtree.size() % 2 == 1;
    for (int r : ch.subtree) {
      Padic d = to_chart(T.roots()[r]) - ce.beta;
      if (!d.is_zero()) ce.deltas.push_back(d);
    }
    if (ce.weierstrass) groots.push_back(ce.beta);
    centers_.push_back(ce);
  }
  std::vector<char> inside(T.roots().size(), 0);
  for (int r : n.subtree) inside[r] = 1;
  Padic s2 = T.lead() * lambda_.pow((long)T.roots().size());
  for (size_t r = 0; r < inside.size(); ++r) {
    if (inside[r]) continue;
    Padic a = to_chart(T.roots()[r]);
    outer_.push_back(a);
    s2 *= -a;
  }
  auto s = s2.try_sqrt();
  if (!s) throw MathError("NotInField", "chart normalising constant has no square root in the field");
  sigma_ = *s;
  g_ = Poly::from_roots(F, groots);
  g_roots_ = groots;
}

bool Chart::contains(const Padic& x) const {
  Padic xt = to_chart(x);
  if (!top() && !xt.is_zero() && xt.val() <= outer_rho_) return false;
  for (const auto& c : centers_) {
    Padic u = xt - c.beta;
    if (u.is_zero() || u.val() >= c.rho) return false;
  }
  return true;
}

Padic Chart::h_at(const Padic& xt) const {
  Padic r = Padic::one(field());
  for (const auto& c : centers_) r *= (xt - c.beta).pow(c.L);
  return r;
}

Padic Chart::k_at(const Padic& xt) const {
  Padic r = Padic::one(field());
  for (const auto& c : centers_)
    for (const auto& d : c.deltas) r *= Padic::one(field()) - d / (xt - c.beta);
  for (const auto& a : outer_) r *= Padic::one(field()) - xt / a;
  return r;
}

Padic Chart::K_at(const Padic& xt) const {
  Padic r = Padic::one(field());
  for (const auto& c : centers_)
    for (const auto& d : c.deltas) r *= binomial_sqrt(Padic::one(field()) - d / (xt - c.beta));
  for (const auto& a : outer_) r *= binomial_sqrt(Padic::one(field()) - xt / a);
  return r;
}

Padic Chart::yt(const CurvePoint& P) const {
  Padic xt = to_chart(P.x);
  return P.y / (sigma_ * h_at(xt) * K_at(xt));
}

namespace {

// c * (1 + a t)^s
Series scaled_binomial(const Field& F, const Padic& c, const mpq_class& s, const Padic& a, long n) {
  return binomial_series(F, s, a, n) * c;
}

// (c0 + c1 t)^i
Series linear_power(const Field& F, const Padic& c0, const Padic& c1, int i, long n) {
  Series base = Series::zero(F, 0, 1);
  base.set(0, c0);
  base.set(1, c1);
  Series r = Series::one(F, 0);
  for (int k = 0; k < i; ++k) r = r.mul(base, n);
  return r;
}

}  // namespace

Series Chart::center_unit_series(int ci, int i, long n) const {
  const Field& F = field();
  const Center& c = centers_[ci];
  Padic one = Padic::one(F);
  Series P = linear_power(F, lambda_ * c.beta + mu_, lambda_, i, n) * (lambda_ / sigma_);
  for (size_t cj = 0; cj < centers_.size(); ++cj) {
    if ((int)cj == ci) continue;
    const Center& o = centers_[cj];
    Padic d = c.beta - o.beta;
    P = P.mul(scaled_binomial(F, d.pow(-o.L), -o.L, d.inverse(), n), n);
    for (const auto& del : o.deltas) {
      Padic lead = binomial_sqrt(one - del / d).inverse();
      P = P.mul(scaled_binomial(F, lead, qq(-1, 2), (d - del).inverse(), n), n);
      P = P.mul(binomial_series(F, qq(1, 2), d.inverse(), n), n);
    }
  }
  for (const auto& a : outer_) {
    Padic lead = binomial_sqrt(one - c.beta / a).inverse();
    P = P.mul(scaled_binomial(F, lead, qq(-1, 2), -(a - c.beta).inverse(), n), n);
  }
  return P;
}

Series Chart::center_inner_series(int ci, long n) const {
  const Field& F = field();
  Series N = Series::one(F, n);
  for (const auto& del : centers_[ci].deltas) N = N.mul(binomial_series(F, qq(-1, 2), -del, n), n);
  return N;
}

Series Chart::outer_w_series(long n) const {
  const Field& F = field();
  Series W = Series::one(F, n);
  for (const auto& c : centers_) {
    W = W.mul(binomial_series(F, -c.L, -c.beta, n), n);
    for (const auto& del : c.deltas) {
      W = W.mul(binomial_series(F, qq(-1, 2), -(c.beta + del), n), n);
      W = W.mul(binomial_series(F, qq(1, 2), -c.beta, n), n);
    }
  }
  return W;
}

Series Chart::outer_x_series(int i, long n) const {
  const Field& F = field();
  Series X = linear_power(F, mu_, lambda_, i, n) * (lambda_ / sigma_);
  for (const auto& a : outer_) X = X.mul(binomial_series(F, qq(-1, 2), -a.inverse(), n), n);
  return X;
}

PartialFractions Chart::expand(int i, long depth, long work) const {
  PartialFractions out;
  for (size_t ci = 0; ci < centers_.size(); ++ci) {
    const Center& c = centers_[ci];
    long B = work / std::max(c.rho, 1L) + c.L + 2;
    Series P = center_unit_series((int)ci, i, B);
    Series N = center_inner_series((int)ci, B + depth);
    std::vector<Padic> pp(depth + 1, Padic::zero(field()));
    for (long m = 1; m <= depth; ++m) {
      Padic acc = Padic::zero(field());
      for (long b = std::max(0L, c.L - m); b <= B; ++b) {
        long k = b + m - c.L;
        if (k > N.hi()) break;
        acc += P.coeff(b) * N.coeff(k);
      }
      pp[m] = acc;
    }
    out.pp.push_back(pp);
  }
  long Ltot = 0;
  for (const auto& c : centers_) Ltot += c.L;
  if (top()) {
    long top_deg = i - Ltot;
    if (top_deg >= 0) out.reg = outer_laurent(i, 0, top_deg, work);
  } else {
    out.reg = outer_laurent(i, 0, depth, work);
  }
  return out;
}

std::vector<Padic> Chart::outer_laurent(int i, long nneg, long npos, long work) const {
  long Ltot = 0;
  for (const auto& c : centers_) Ltot += c.L;
  long J;
  if (top())
    J = i + nneg + 1;  // X is a polynomial of degree i
  else
    J = work / std::max(-outer_rho_, 1L) + 2;
  Series X = outer_x_series(i, npos + Ltot + J + 1);
  Series W = outer_w_series(J + nneg + Ltot + 1);
  std::vector<Padic> out;
  for (long n = -nneg; n <= npos; ++n) {
    Padic acc = Padic::zero(field());
    for (long j = std::max(0L, -(n + Ltot)); j <= W.hi(); ++j) {
      long k = n + Ltot + j;
      if (k > X.hi()) break;
      acc += W.coeff(j) * X.coeff(k);
    }
    out.push_back(acc);
  }
  return out;
}

}  // namespace bcint
