#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

#include "bcint/newton_cover.hpp"

namespace bcint {

using Chain = std::vector<mpq_class>;  // coefficient per edge of the graph

struct GVertex {
  int tnode;
  int sign;  // 0 for an odd vertex, +1 / -1 for the two copies of an even vertex
};

// oriented from the parent copy to the child copy
struct GEdge {
  int tchild;  // tree edge (parent(tchild), tchild)
  int sign;    // 0 for odd edges
  int from, to;
};

class DualGraph {
 public:
  explicit DualGraph(const CoveringTree& T);

  const std::vector<GVertex>& vertices() const { return V_; }
  const std::vector<GEdge>& edges() const { return E_; }
  // half-open edges: (vertex, root index), root index -1 for infinity
  const std::vector<std::pair<int, int>>& half_edges() const { return H_; }
  int vertex(int tnode, int sign) const;
  int edge(int tchild, int sign) const;
  int b1() const { return (int)E_.size() - (int)V_.size() + 1; }
  std::string name(int e) const;
  std::string to_dot() const;

  // fundamental cycles of a BFS spanning tree
  std::vector<Chain> fundamental_cycles() const;
  bool is_cycle(const Chain& c) const;

 private:
  std::vector<GVertex> V_;
  std::vector<GEdge> E_;
  std::vector<std::pair<int, int>> H_;
};

// relative cycles of (T_e, V_o): chains on tree edges (indexed by child node)
struct RelativeCycle {
  std::vector<mpq_class> coeff;  // per tree node (edge to its parent); zero on the root
};

std::vector<RelativeCycle> relative_basis(const CoveringTree& T);
Chain iota(const DualGraph& G, const RelativeCycle& c);
RelativeCycle kappa(const DualGraph& G, const CoveringTree& T, const Chain& c);

mpq_class pairing(const Chain& a, const Chain& b);
mpq_class pairing_tree(const RelativeCycle& a, const RelativeCycle& b);

using TropicalForm = Chain;  // value on each edge in its orientation

struct CycleBasis {
  std::vector<Chain> cycles;
  std::vector<TropicalForm> duals;  // integral of duals[j] over cycles[i] is delta_ij
};

CycleBasis homology_basis(const DualGraph& G, const CoveringTree& T);

// sum over a walk of (edge, direction) with rational weights at the two ends
struct TropicalPath {
  std::vector<std::pair<int, int>> steps;  // (edge, +1 along orientation / -1 against)
  mpq_class first_weight = 1, last_weight = 1;
};

mpq_class tropical_integral(const DualGraph& G, const TropicalForm& eta, const TropicalPath& path);
bool is_harmonic(const DualGraph& G, const TropicalForm& eta);

}  // namespace bcint
