#include "bcint/newton_cover.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace bcint {

std::vector<mpq_class> NewtonPolygon::root_valuations() const {
  std::vector<mpq_class> out;
  for (const auto& s : segments)
    for (long k = 0; k < s.length(); ++k) out.push_back(-s.slope);
  return out;
}

NewtonPolygon newton_polygon(const Poly& f) {
  if (f.empty()) throw MathError("ZeroPolynomial", "Newton polygon of the zero polynomial");
  const Field& F = f[0].field();
  std::vector<std::pair<long, mpq_class>> pts;
  std::vector<std::pair<long, mpq_class>> unknown;  // coefficients that are O(pi^prec)
  for (long i = 0; i <= f.degree(); ++i) {
    const Padic& a = f[i];
    if (a.is_exact_zero()) continue;
    if (a.is_zero())
      unknown.push_back({i, qq(a.prec(), F.e)});
    else
      pts.push_back({i, qq(a.val(), F.e)});
  }
  // lower hull, monotone chain
  std::vector<std::pair<long, mpq_class>> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      // drop b if it lies on or above segment a-p
      mpq_class cross = (b.second - a.second) * (p.first - a.first) - (p.second - a.second) * (b.first - a.first);
      if (cross >= 0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(p);
  }
  NewtonPolygon np;
  np.vertices = hull;
  for (size_t k = 0; k + 1 < hull.size(); ++k) {
    NewtonSegment s{hull[k].first, hull[k + 1].first,
                    (hull[k + 1].second - hull[k].second) / mpq_class(hull[k + 1].first - hull[k].first)};
    np.segments.push_back(s);
  }
  for (const auto& u : unknown) {
    if (u.first < hull.front().first || u.first > hull.back().first) continue;
    for (const auto& s : np.segments) {
      if (u.first < s.x0 || u.first > s.x1) continue;
      mpq_class y0;
      for (const auto& v : hull)
        if (v.first == s.x0) y0 = v.second;
      if (u.second < y0 + s.slope * (u.first - s.x0))
        throw MathError("IndeterminateCoefficient", "coefficient of degree " + std::to_string(u.first) +
                                                        " is not known well enough to fix the Newton polygon");
    }
  }
  return np;
}

CoveringTree::CoveringTree(const Field& F, std::vector<Padic> roots, Padic lead)
    : F_(&F), roots_(std::move(roots)), lead_(std::move(lead)) {
  if (roots_.size() < 2) throw MathError("DegenerateCurve", "need at least two finite roots");
  for (size_t i = 0; i < roots_.size(); ++i)
    for (size_t j = 0; j < i; ++j) {
      Padic d = roots_[i] - roots_[j];
      if (d.is_exact_zero()) throw MathError("CoincidentRoots", "roots must be distinct");
      if (d.is_zero()) throw MathError("PrecisionTooLowToSeparate", "two roots agree to the working precision");
    }
  CoverNode top;
  bool integral = true;
  for (const auto& a : roots_) integral = integral && a.val() >= 0;
  bool spread = false;
  if (integral)
    for (const auto& a : roots_) spread = spread || a.residue() != roots_[0].residue();
  if (integral && spread) {
    top.scale = Padic::one(F);
    top.shift = Padic::zero(F);
  } else {
    long w = Padic::INF;
    for (size_t i = 1; i < roots_.size(); ++i) w = std::min(w, (roots_[i] - roots_[0]).val());
    top.scale = Padic::pi(F).pow(w);
    top.shift = roots_[0];
  }
  top.has_infinity = odd_degree();
  nodes_.push_back(top);
  std::vector<int> all(roots_.size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = (int)i;
  build(0, all);
  label();
}

CoveringTree CoveringTree::shape(const std::vector<int>& parent, const std::vector<int>& nroots, bool inf) {
  CoveringTree T;
  int next = 0;
  T.nodes_.resize(parent.size());
  for (size_t i = 0; i < parent.size(); ++i) {
    T.nodes_[i].parent = parent[i];
    if (parent[i] >= 0) T.nodes_[parent[i]].children.push_back((int)i);
    for (int k = 0; k < nroots[i]; ++k) T.nodes_[i].roots.push_back(next++);
  }
  T.nodes_[0].has_infinity = inf;
  for (long i = (long)parent.size() - 1; i >= 0; --i) {
    auto& n = T.nodes_[i];
    n.subtree.insert(n.subtree.end(), n.roots.begin(), n.roots.end());
    if (n.parent >= 0) {
      auto& up = T.nodes_[n.parent].subtree;
      up.insert(up.end(), n.subtree.begin(), n.subtree.end());
    }
  }
  T.label();
  return T;
}

void CoveringTree::build(int id, const std::vector<int>& idx) {
  nodes_[id].subtree = idx;
  // group by residue class in the chart; insertion order follows the input order
  std::vector<std::pair<Residue, std::vector<int>>> groups;
  for (int i : idx) {
    Residue r = to_chart(id, roots_[i]).residue();
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == r; });
    if (it == groups.end())
      groups.push_back({r, {i}});
    else
      it->second.push_back(i);
  }
  if (groups.size() == 1 && idx.size() > 1 && id != 0)
    throw MathError("PrecisionTooLowToSeparate", "recursive covering did not split the roots");
  std::vector<std::pair<int, std::vector<int>>> pending;
  for (auto& g : groups) {
    if (g.second.size() == 1) {
      nodes_[id].roots.push_back(g.second[0]);
      continue;
    }
    const Padic& beta = roots_[g.second[0]];
    long w = Padic::INF;
    for (size_t k = 1; k < g.second.size(); ++k) w = std::min(w, (roots_[g.second[k]] - beta).val());
    CoverNode ch;
    ch.parent = id;
    ch.scale = Padic::pi(*F_).pow(w);
    ch.shift = beta;
    ch.center_in_parent = to_chart(id, beta);
    ch.inner_val = qq(w - nodes_[id].scale.val(), F_->e);
    int cid = (int)nodes_.size();
    nodes_.push_back(ch);
    nodes_[id].children.push_back(cid);
    pending.push_back({cid, g.second});
  }
  for (auto& [cid, sub] : pending) build(cid, sub);
}

void CoveringTree::label() {
  for (auto& n : nodes_) n.edge_even = n.parent >= 0 && n.subtree.size() % 2 == 0;
  for (auto& n : nodes_) {
    n.n_odd = (int)n.roots.size() + (n.has_infinity ? 1 : 0);
    if (n.parent >= 0 && !n.edge_even) ++n.n_odd;
    for (int c : n.children)
      if (!nodes_[c].edge_even) ++n.n_odd;
    n.even = n.n_odd == 0;
    n.genus = (n.n_odd - 2) / 2;
  }
}

Poly CoveringTree::f() const { return Poly::from_roots(*F_, roots_) * lead_; }

Padic CoveringTree::to_chart(int i, const Padic& x) const { return (x - nodes_[i].shift) / nodes_[i].scale; }

Padic CoveringTree::from_chart(int i, const Padic& xt) const { return nodes_[i].scale * xt + nodes_[i].shift; }

int CoveringTree::locate(const Padic& x) const {
  int cur = 0;
  for (;;) {
    int next = -1;
    for (int c : nodes_[cur].children) {
      Padic d = x - nodes_[c].shift;
      if (d.is_zero() || d.val() > nodes_[cur].scale.val()) next = c;
    }
    if (next < 0) return cur;
    cur = next;
  }
}

bool CoveringTree::in_annulus(int i, const Padic& x) const {
  const CoverNode& n = nodes_[i];
  if (n.parent < 0) return false;
  Padic d = x - n.shift;
  if (d.is_zero()) return false;
  return d.val() > nodes_[n.parent].scale.val() && d.val() < n.scale.val();
}

mpq_class CoveringTree::edge_fraction(int i, const Padic& x) const {
  const CoverNode& n = nodes_[i];
  long v0 = nodes_[n.parent].scale.val(), v1 = n.scale.val();
  Padic d = x - n.shift;
  long v = d.is_zero() ? v1 : std::clamp(d.val(), v0, v1);
  return qq(v - v0, v1 - v0);
}

std::string CoveringTree::to_dot() const {
  std::ostringstream os;
  os << "graph T {\n";
  for (size_t i = 0; i < nodes_.size(); ++i) {
    const auto& n = nodes_[i];
    os << "  U" << i + 1 << " [label=\"U" << i + 1 << "\\n" << (n.even ? "even" : "odd") << ", g=" << n.genus
       << "\"];\n";
  }
  for (size_t i = 0; i < nodes_.size(); ++i) {
    const auto& n = nodes_[i];
    if (n.parent >= 0)
      os << "  U" << n.parent + 1 << " -- U" << i + 1 << " [label=\"" << (n.edge_even ? "even" : "odd") << "\"];\n";
    for (int r : n.roots) {
      os << "  r" << r << " [shape=point, xlabel=\"" << roots_[r].to_string() << "\"];\n";
      os << "  U" << i + 1 << " -- r" << r << ";\n";
    }
    if (n.has_infinity) {
      os << "  rinf [shape=point, xlabel=\"inf\"];\n";
      os << "  U" << i + 1 << " -- rinf;\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace bcint
