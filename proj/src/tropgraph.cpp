#include "bcint/tropgraph.hpp"

#include <deque>
#include <sstream>

namespace bcint {

DualGraph::DualGraph(const CoveringTree& T) {
  const auto& nodes = T.nodes();
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].even) {
      V_.push_back({(int)i, +1});
      V_.push_back({(int)i, -1});
    } else {
      V_.push_back({(int)i, 0});
    }
  }
  for (size_t i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    if (n.parent < 0) continue;
    const auto& par = nodes[n.parent];
    auto end = [&](int tnode, bool even, int sign) { return vertex(tnode, even ? sign : 0); };
    if (n.edge_even) {
      for (int s : {+1, -1}) E_.push_back({(int)i, s, end(n.parent, par.even, s), end((int)i, n.even, s)});
    } else {
      E_.push_back({(int)i, 0, vertex(n.parent, 0), vertex((int)i, 0)});
    }
  }
  for (size_t i = 0; i < nodes.size(); ++i) {
    for (int r : nodes[i].roots) H_.push_back({vertex((int)i, 0), r});
    if (nodes[i].has_infinity) H_.push_back({vertex((int)i, 0), -1});
  }
}

int DualGraph::vertex(int tnode, int sign) const {
  for (size_t i = 0; i < V_.size(); ++i)
    if (V_[i].tnode == tnode && V_[i].sign == sign) return (int)i;
  throw MathError("PathNotInGraph", "no vertex over tree node " + std::to_string(tnode));
}

int DualGraph::edge(int tchild, int sign) const {
  for (size_t i = 0; i < E_.size(); ++i)
    if (E_[i].tchild == tchild && E_[i].sign == sign) return (int)i;
  throw MathError("PathNotInGraph", "no edge over tree edge " + std::to_string(tchild));
}

std::string DualGraph::name(int e) const {
  const GEdge& g = E_[e];
  std::string s = "e" + std::to_string(g.tchild);
  if (g.sign > 0) s += "+";
  if (g.sign < 0) s += "-";
  return s;
}

std::string DualGraph::to_dot() const {
  std::ostringstream os;
  os << "multigraph Gamma {\n";
  auto vname = [&](int v) {
    std::string s = "v" + std::to_string(V_[v].tnode + 1);
    if (V_[v].sign > 0) s += "p";
    if (V_[v].sign < 0) s += "m";
    return s;
  };
  for (size_t v = 0; v < V_.size(); ++v) os << "  " << vname((int)v) << ";\n";
  for (size_t e = 0; e < E_.size(); ++e)
    os << "  " << vname(E_[e].from) << " -> " << vname(E_[e].to) << " [label=\"" << name((int)e) << "\"];\n";
  os << "}\n";
  std::string s = os.str();
  // DOT has no multigraph keyword; digraph keeps parallel edges and orientation
  s.replace(0, 10, "digraph");
  return s;
}

std::vector<Chain> DualGraph::fundamental_cycles() const {
  int nv = (int)V_.size();
  std::vector<int> parent_edge(nv, -1), seen(nv, 0);
  std::vector<char> tree_edge(E_.size(), 0);
  std::deque<int> q{0};
  seen[0] = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (size_t e = 0; e < E_.size(); ++e) {
      int w = E_[e].from == v ? E_[e].to : (E_[e].to == v ? E_[e].from : -1);
      if (w < 0 || seen[w]) continue;
      seen[w] = 1;
      parent_edge[w] = (int)e;
      tree_edge[e] = 1;
      q.push_back(w);
    }
  }
  // path from the BFS root to v as a chain
  auto root_path = [&](int v) {
    Chain c(E_.size(), 0);
    while (parent_edge[v] >= 0) {
      int e = parent_edge[v];
      if (E_[e].to == v) {
        c[e] += 1;
        v = E_[e].from;
      } else {
        c[e] -= 1;
        v = E_[e].to;
      }
    }
    return c;
  };
  std::vector<Chain> out;
  for (size_t e = 0; e < E_.size(); ++e) {
    if (tree_edge[e]) continue;
    Chain a = root_path(E_[e].from), b = root_path(E_[e].to);
    Chain c(E_.size(), 0);
    for (size_t k = 0; k < c.size(); ++k) c[k] = a[k] - b[k];
    c[e] += 1;
    out.push_back(c);
  }
  return out;
}

bool DualGraph::is_cycle(const Chain& c) const {
  std::vector<mpq_class> div(V_.size(), 0);
  for (size_t e = 0; e < E_.size(); ++e) {
    div[E_[e].to] += c[e];
    div[E_[e].from] -= c[e];
  }
  for (const auto& d : div)
    if (d != 0) return false;
  return true;
}

std::vector<RelativeCycle> relative_basis(const CoveringTree& T) {
  const auto& nodes = T.nodes();
  int n = (int)nodes.size();
  // components of the even-edge forest
  std::vector<int> comp(n, -1);
  int nc = 0;
  for (int i = 0; i < n; ++i) {
    if (comp[i] >= 0) continue;
    std::deque<int> q{i};
    comp[i] = nc;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      std::vector<int> nb;
      if (nodes[v].parent >= 0 && nodes[v].edge_even) nb.push_back(nodes[v].parent);
      for (int c : nodes[v].children)
        if (nodes[c].edge_even) nb.push_back(c);
      for (int w : nb)
        if (comp[w] < 0) {
          comp[w] = nc;
          q.push_back(w);
        }
    }
    ++nc;
  }
  auto depth = [&](int v) {
    int d = 0;
    while (nodes[v].parent >= 0) v = nodes[v].parent, ++d;
    return d;
  };
  // chain of the tree path a -> b
  auto tree_path = [&](int a, int b) {
    RelativeCycle c;
    c.coeff.assign(n, 0);
    int da = depth(a), db = depth(b);
    while (da > db) c.coeff[a] -= 1, a = nodes[a].parent, --da;
    while (db > da) c.coeff[b] += 1, b = nodes[b].parent, --db;
    while (a != b) {
      c.coeff[a] -= 1;
      c.coeff[b] += 1;
      a = nodes[a].parent;
      b = nodes[b].parent;
    }
    return c;
  };
  std::vector<RelativeCycle> out;
  for (int k = 0; k < nc; ++k) {
    std::vector<int> odd;
    for (int i = 0; i < n; ++i)
      if (comp[i] == k && !nodes[i].even) odd.push_back(i);
    for (size_t j = 1; j < odd.size(); ++j) out.push_back(tree_path(odd[0], odd[j]));
  }
  return out;
}

Chain iota(const DualGraph& G, const RelativeCycle& c) {
  Chain out(G.edges().size(), 0);
  for (size_t t = 0; t < c.coeff.size(); ++t) {
    if (c.coeff[t] == 0) continue;
    out[G.edge((int)t, +1)] += c.coeff[t];
    out[G.edge((int)t, -1)] -= c.coeff[t];
  }
  return out;
}

RelativeCycle kappa(const DualGraph& G, const CoveringTree& T, const Chain& c) {
  RelativeCycle r;
  r.coeff.assign(T.nodes().size(), 0);
  for (size_t e = 0; e < G.edges().size(); ++e)
    if (G.edges()[e].sign > 0) r.coeff[G.edges()[e].tchild] = c[e];
  return r;
}

mpq_class pairing(const Chain& a, const Chain& b) {
  mpq_class s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

mpq_class pairing_tree(const RelativeCycle& a, const RelativeCycle& b) {
  mpq_class s = 0;
  for (size_t i = 0; i < a.coeff.size(); ++i) s += a.coeff[i] * b.coeff[i];
  return s;
}

namespace {
std::vector<std::vector<mpq_class>> invert(std::vector<std::vector<mpq_class>> m) {
  size_t n = m.size();
  std::vector<std::vector<mpq_class>> inv(n, std::vector<mpq_class>(n, 0));
  for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) throw MathError("SingularSystem", "cycle pairing is degenerate");
    std::swap(m[c], m[piv]);
    std::swap(inv[c], inv[piv]);
    mpq_class d = m[c][c];
    for (size_t k = 0; k < n; ++k) m[c][k] /= d, inv[c][k] /= d;
    for (size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      mpq_class t = m[r][c];
      for (size_t k = 0; k < n; ++k) m[r][k] -= t * m[c][k], inv[r][k] -= t * inv[c][k];
    }
  }
  return inv;
}
}  // namespace

CycleBasis homology_basis(const DualGraph& G, const CoveringTree& T) {
  CycleBasis B;
  for (const auto& rc : relative_basis(T)) B.cycles.push_back(iota(G, rc));
  size_t h = B.cycles.size();
  if (h == 0) return B;
  std::vector<std::vector<mpq_class>> gram(h, std::vector<mpq_class>(h));
  for (size_t i = 0; i < h; ++i)
    for (size_t j = 0; j < h; ++j) gram[i][j] = pairing(B.cycles[i], B.cycles[j]);
  auto inv = invert(gram);
  for (size_t i = 0; i < h; ++i) {
    TropicalForm eta(G.edges().size(), 0);
    for (size_t j = 0; j < h; ++j)
      for (size_t e = 0; e < eta.size(); ++e) eta[e] += inv[i][j] * B.cycles[j][e];
    B.duals.push_back(eta);
  }
  return B;
}

mpq_class tropical_integral(const DualGraph& G, const TropicalForm& eta, const TropicalPath& path) {
  mpq_class s = 0;
  int at = -1;
  for (size_t k = 0; k < path.steps.size(); ++k) {
    auto [e, dir] = path.steps[k];
    if (e < 0 || e >= (int)G.edges().size() || (dir != 1 && dir != -1))
      throw MathError("PathNotInGraph", "bad edge step");
    const GEdge& g = G.edges()[e];
    int from = dir > 0 ? g.from : g.to, to = dir > 0 ? g.to : g.from;
    if (at >= 0 && from != at) throw MathError("PathNotInGraph", "consecutive edges do not meet");
    at = to;
    mpq_class w = 1;
    if (k == 0) w = path.first_weight;
    if (k + 1 == path.steps.size()) w = path.steps.size() == 1 ? path.first_weight + path.last_weight - 1 : path.last_weight;
    s += w * dir * eta[e];
  }
  return s;
}

bool is_harmonic(const DualGraph& G, const TropicalForm& eta) {
  std::vector<mpq_class> flow(G.vertices().size(), 0);
  for (size_t e = 0; e < G.edges().size(); ++e) {
    flow[G.edges()[e].from] += eta[e];
    flow[G.edges()[e].to] -= eta[e];
  }
  for (const auto& f : flow)
    if (f != 0) return false;
  return true;
}

}  // namespace bcint
