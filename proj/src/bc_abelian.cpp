#include "bcint/bc_abelian.hpp"

#include <algorithm>
#include <deque>

namespace bcint {

struct Curve::ElementData {
  Chart chart;
  ReductionChart rc;
  std::vector<int> third;  // centers carrying a third-kind form
  std::unique_ptr<ChartIntegrator> integ;
  ElementData(const CoveringTree& T, int node) : chart(T, node), rc(ReductionChart::of(chart)) {
    std::vector<Padic> betas;
    for (size_t c = 0; c < chart.centers().size(); ++c) {
      if (chart.centers()[c].weierstrass) continue;
      third.push_back((int)c);
      betas.push_back(chart.centers()[c].beta);
    }
    integ = std::make_unique<ChartIntegrator>(chart.g(), chart.g_roots(), betas);
  }
};

Curve::Curve(const Field& F, std::vector<Padic> roots, Padic lead)
    : F_(&F), T_(F, std::move(roots), std::move(lead)), G_(T_), B_(homology_basis(G_, T_)) {}

Curve::~Curve() = default;

const Curve::ElementData& Curve::element(int node) const {
  auto it = cache_.find(node);
  if (it == cache_.end()) it = cache_.emplace(node, std::make_unique<ElementData>(T_, node)).first;
  return *it->second;
}

Padic Curve::f(const Padic& x) const {
  Padic r = T_.lead();
  for (const auto& a : T_.roots()) r *= x - a;
  return r;
}

CurvePoint Curve::point(const Padic& x, const Residue& hint) const {
  auto y = f(x).try_sqrt(hint);
  if (!y) throw MathError("NotOnCurve", "f(x) is not a square in the field");
  return {x, *y};
}

bool Curve::on_curve(const CurvePoint& P) const {
  Padic r = P.y * P.y - f(P.x);
  return r.is_zero() || r.val() >= std::min(P.y.prec(), P.x.prec()) + 2 * std::min(P.y.val(), 0L);
}

int Curve::component(int tnode, const CurvePoint& P, bool annulus) const {
  const Chart& U = element(tnode).chart;
  Padic xt = U.to_chart(P.x), s = U.yt(P);
  if (annulus) {
    // yt / (xt^(d/2) sqrt(g(xt)/xt^d)) is +-1 on the annulus |xt| > 1
    int d = U.degree();
    s /= xt.pow(d / 2);
    for (const auto& r : U.g_roots()) s /= binomial_sqrt(Padic::one(field()) - r / xt);
  }
  Padic one = Padic::one(field());
  if ((s - one).val() > 0) return +1;
  if ((s + one).val() > 0) return -1;
  throw MathError("ComponentAmbiguity", "point does not reduce to either component");
}

int Curve::edge_of(const CurvePoint& P) const {
  for (size_t i = 1; i < T_.nodes().size(); ++i) {
    if (!T_.in_annulus((int)i, P.x)) continue;
    return G_.edge((int)i, T_.node(i).edge_even ? component((int)i, P, true) : 0);
  }
  return -1;
}

int Curve::vertex_of(const CurvePoint& P) const {
  int n = T_.locate(P.x);
  return G_.vertex(n, T_.node(n).even ? component(n, P, false) : 0);
}

bool Curve::in_element(int vertex, const CurvePoint& P) const {
  const GVertex& v = G_.vertices()[vertex];
  if (!element(v.tnode).chart.contains(P.x)) return false;
  return v.sign == 0 || component(v.tnode, P, false) == v.sign;
}

namespace {

// last few principal-part terms are below the target at the endpoint gaps
bool tail_small(const Chart& U, const PartialFractions& A, const std::vector<Padic>& xs, long target) {
  long depth = 0;
  for (size_t c = 0; c < A.pp.size(); ++c) {
    long gap = Padic::INF;
    for (const auto& x : xs) gap = std::min(gap, (x - U.centers()[c].beta).val());
    depth = (long)A.pp[c].size() - 1;
    for (long m = std::max(1L, depth - 2); m <= depth; ++m)
      if (!A.pp[c][m].is_exact_zero() && A.pp[c][m].val() - m * gap < target) return false;
  }
  if (U.top()) return true;
  long u = Padic::INF;
  for (const auto& x : xs) u = std::min(u, x.is_zero() ? Padic::INF : x.val());
  long n = (long)A.reg.size() - 1;
  for (long k = std::max(0L, n - 2); k <= n; ++k)
    if (!A.reg[k].is_exact_zero() && A.reg[k].val() + k * std::min(u, 0L) < target) return false;
  return true;
}

}  // namespace

Padic Curve::element_integral(int node, int i, const CurvePoint& A, const CurvePoint& B, long target) const {
  const ElementData& E = element(node);
  const Chart& U = E.chart;
  if (!U.contains(A.x) || !U.contains(B.x)) throw MathError("PointNotInRegion", "endpoint outside the element");
  ChartPoint a{U.to_chart(A.x), U.yt(A)}, b{U.to_chart(B.x), U.yt(B)};
  const Field& F = field();
  long want = target + 2;
  long depth = 8;
  PartialFractions pf;
  for (;;) {
    // reducing a pole of order m divides by integers up to 2m
    long loss = 0;
    for (long q = F.p; q <= 2 * depth + 2; q *= F.p) loss += F.e;
    pf = U.expand(i, depth, F.N);
    if (tail_small(U, pf, {a.x, b.x}, want + loss)) break;
    depth *= 2;
    if (depth > 1024) throw PrecisionError("partial fraction expansion does not reach the target at the endpoints");
  }
  Decomposition D = decompose(E.rc, pf);
  BasicForm w;
  w.c = D.c;
  for (int c : E.third) {
    w.beta.push_back(U.centers()[c].beta);
    w.d.push_back(D.d[c]);
  }
  Padic exact = eval_primitive(E.rc, D, b.x, b.y) - eval_primitive(E.rc, D, a.x, a.y);
  Padic r = exact + E.integ->integrate(w, a, b);
  // the dropped tail contributes below pi^want
  return r.prec() > want ? r.with_prec(want) : r;
}

Padic Curve::element_integral(int node, const HoloForm& w, const CurvePoint& A, const CurvePoint& B,
                              long target) const {
  Padic s = Padic::zero(field());
  for (size_t i = 0; i < w.size(); ++i) {
    if (w[i].is_exact_zero()) continue;
    s += w[i] * element_integral(node, (int)i, A, B, target - std::min(w[i].val(), 0L));
  }
  return s;
}

BCIntegrator::BCIntegrator(const Curve& X, ReferencePoints refs, long target)
    : X_(X), refs_(std::move(refs)), target_(target) {
  const DualGraph& G = X_.graph();
  if (refs_.vertex.size() != G.vertices().size() || refs_.edge.size() != G.edges().size())
    throw SchemaError("one reference point per vertex and per edge is required");
  for (size_t v = 0; v < refs_.vertex.size(); ++v)
    if (!X_.in_element((int)v, refs_.vertex[v]))
      throw MathError("PointNotInRegion", "vertex reference point outside its element");
  for (size_t e = 0; e < refs_.edge.size(); ++e)
    if (X_.edge_of(refs_.edge[e]) != (int)e)
      throw MathError("PointNotInRegion", "edge reference point outside its annulus component");
}

Padic BCIntegrator::edge_value(const HoloForm& w, int e) const {
  const GEdge& g = X_.graph().edges()[e];
  int parent = X_.tree().node(g.tchild).parent;
  return X_.element_integral(parent, w, refs_.vertex[g.from], refs_.edge[e], target_) +
         X_.element_integral(g.tchild, w, refs_.edge[e], refs_.vertex[g.to], target_);
}

void BCIntegrator::check_path(const PathSpec& path) const {
  const DualGraph& G = X_.graph();
  int v = path.from;
  for (auto [e, dir] : path.steps) {
    const GEdge& g = G.edges()[e];
    int a = dir > 0 ? g.from : g.to, b = dir > 0 ? g.to : g.from;
    if (a != v) throw MathError("PathNotInGraph", "consecutive edges do not share a vertex");
    v = b;
  }
  if (v != path.to) throw MathError("PathNotInGraph", "edge word does not end at the end vertex");
  if (!X_.in_element(path.from, path.start) || !X_.in_element(path.to, path.end))
    throw MathError("PointNotInRegion", "path endpoint outside its element");
}

IntegralValue BCIntegrator::integrate(const HoloForm& w, const PathSpec& path) const {
  check_path(path);
  const DualGraph& G = X_.graph();
  int nf = G.vertices()[path.from].tnode, nt = G.vertices()[path.to].tnode;
  Padic s = X_.element_integral(nf, w, path.start, refs_.vertex[path.from], target_);
  for (auto [e, dir] : path.steps) s += dir > 0 ? edge_value(w, e) : -edge_value(w, e);
  s += X_.element_integral(nt, w, refs_.vertex[path.to], path.end, target_);
  return {s, IntegralKind::BC, s.prec()};
}

IntegralValue BCIntegrator::period(const HoloForm& w, const Chain& cycle) const {
  if (!X_.graph().is_cycle(cycle)) throw MathError("NotClosed", "chain has a boundary");
  Padic s = Padic::zero(X_.field());
  for (size_t e = 0; e < cycle.size(); ++e) {
    if (cycle[e] == 0) continue;
    if (cycle[e].get_den() != 1) throw MathError("NotClosed", "cycle coefficients must be integers");
    s += edge_value(w, (int)e) * Padic(X_.field(), mpz_class(cycle[e].get_num()));
  }
  return {s, IntegralKind::Period, s.prec()};
}

std::vector<IntegralValue> BCIntegrator::periods(const HoloForm& w) const {
  std::vector<IntegralValue> out;
  for (const auto& c : X_.basis().cycles) out.push_back(period(w, c));
  return out;
}

mpq_class BCIntegrator::offset(int j, const CurvePoint& P, int v) const {
  int e = X_.edge_of(P);
  if (e < 0) return 0;
  const GEdge& g = X_.graph().edges()[e];
  mpq_class t = X_.tree().edge_fraction(g.tchild, P.x);
  const mpq_class& eta = X_.basis().duals[j][e];
  if (g.from == v) return -t * eta;
  if (g.to == v) return (1 - t) * eta;
  throw MathError("PointNotInRegion", "annulus of the point is not at the given vertex");
}

mpq_class BCIntegrator::tropical(int j, const PathSpec& path) const {
  const auto& eta = X_.basis().duals[j];
  mpq_class s = offset(j, path.start, path.from) - offset(j, path.end, path.to);
  for (auto [e, dir] : path.steps) s += dir * eta[e];
  return s;
}

IntegralValue BCIntegrator::abelian(const HoloForm& w, const PathSpec& path) const {
  IntegralValue bc = integrate(w, path);
  Padic s = bc.value;
  const Field& F = X_.field();
  for (size_t j = 0; j < X_.basis().cycles.size(); ++j) {
    mpq_class t = tropical((int)j, path);
    if (t == 0) continue;
    s -= period(w, X_.basis().cycles[j]).value * Padic(F, t);
  }
  return {s, IntegralKind::Abelian, s.prec()};
}

PathSpec BCIntegrator::path_between(const CurvePoint& P, const CurvePoint& Q) const {
  const DualGraph& G = X_.graph();
  PathSpec out{P, Q, X_.vertex_of(P), X_.vertex_of(Q), {}};
  std::vector<std::pair<int, int>> via(G.vertices().size(), {-1, 0});
  std::vector<char> seen(G.vertices().size(), 0);
  std::deque<int> q{out.from};
  seen[out.from] = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (size_t e = 0; e < G.edges().size(); ++e) {
      const GEdge& g = G.edges()[e];
      int w = g.from == v ? g.to : (g.to == v ? g.from : -1);
      if (w < 0 || seen[w]) continue;
      seen[w] = 1;
      via[w] = {(int)e, g.from == v ? +1 : -1};
      q.push_back(w);
    }
  }
  for (int v = out.to; v != out.from;) {
    auto [e, dir] = via[v];
    out.steps.insert(out.steps.begin(), {e, dir});
    v = dir > 0 ? G.edges()[e].from : G.edges()[e].to;
  }
  return out;
}

Annihilator chabauty_annihilator(const Curve& X, int node, const CurvePoint& S, const CurvePoint& R, long target) {
  const Field& F = X.field();
  HoloForm w0{Padic::one(F)}, w1{Padic::zero(F), Padic::one(F)};
  return {X.element_integral(node, w0, S, R, target), X.element_integral(node, w1, S, R, target)};
}

EllipticPoint elliptic_add(const mpq_class& a2, const mpq_class& a4, const EllipticPoint& P, const EllipticPoint& Q) {
  if (!P) return Q;
  if (!Q) return P;
  mpq_class lam;
  if (P->x == Q->x) {
    if (P->y + Q->y == 0) return std::nullopt;
    lam = (3 * P->x * P->x + 2 * a2 * P->x + a4) / (2 * P->y);
  } else {
    lam = (Q->y - P->y) / (Q->x - P->x);
  }
  mpq_class x3 = lam * lam - a2 - P->x - Q->x;
  mpq_class y3 = lam * (P->x - x3) - P->y;
  return RationalPoint{x3, y3};
}

EllipticPoint elliptic_mul(const mpq_class& a2, const mpq_class& a4, const EllipticPoint& P, long n) {
  EllipticPoint R, B = P;
  if (n < 0) {
    if (B) B->y = -B->y;
    n = -n;
  }
  for (; n; n >>= 1) {
    if (n & 1) R = elliptic_add(a2, a4, R, B);
    B = elliptic_add(a2, a4, B, B);
  }
  return R;
}

}  // namespace bcint
