#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "bcint/padic.hpp"
#include "bcint/series.hpp"

namespace bcint {

struct NewtonSegment {
  long x0, x1;          // degree range
  mpq_class slope;      // in p-units (valuation of p is 1)
  long length() const { return x1 - x0; }
};

struct NewtonPolygon {
  std::vector<std::pair<long, mpq_class>> vertices;
  std::vector<NewtonSegment> segments;
  // valuations of the roots with multiplicity (negated slopes)
  std::vector<mpq_class> root_valuations() const;
};

NewtonPolygon newton_polygon(const Poly& f);

// One element of the covering of P^1. Chart coordinate xt with x = scale*xt + shift.
// Region in chart coordinates: the open disc |xt| < p^outer (outer = +inf for the top
// node) minus the closed discs |xt - child.center_chart| <= |child.scale / scale|.
struct CoverNode {
  int parent = -1;
  std::vector<int> children;
  Padic scale, shift;
  Padic center_in_parent;     // child center beta in the parent chart
  mpq_class inner_val;        // v(child.scale / parent.scale) > 0, thickness of the edge annulus
  std::vector<int> roots;     // roots lying in this node, not in a child disc
  std::vector<int> subtree;   // all roots under this node including children
  bool has_infinity = false;  // infinity is a branch point attached here
  bool edge_even = false;     // edge to the parent
  bool even = false;
  int genus = 0;
  int n_odd = 0;
};

class CoveringTree {
 public:
  CoveringTree(const Field& F, std::vector<Padic> roots, Padic lead);
  // combinatorial tree only (no charts): parent[i] < i, branch points per node
  static CoveringTree shape(const std::vector<int>& parent, const std::vector<int>& nroots, bool infinity_at_top);

  const Field& field() const { return *F_; }
  const std::vector<Padic>& roots() const { return roots_; }
  const Padic& lead() const { return lead_; }
  const std::vector<CoverNode>& nodes() const { return nodes_; }
  const CoverNode& node(int i) const { return nodes_[i]; }
  Poly f() const;
  long degree() const { return (long)roots_.size(); }
  bool odd_degree() const { return roots_.size() % 2 == 1; }
  int curve_genus() const { return (int)((roots_.size() - 1) / 2); }

  // chart coordinate of x in node i
  Padic to_chart(int i, const Padic& x) const;
  Padic from_chart(int i, const Padic& xt) const;
  // node whose region contains x (deepest node whose disc contains it and not in the
  // interior of a deleted disc); -1 for infinity is the top node
  int locate(const Padic& x) const;
  // position of x on the edge (parent(i), i): 0 at the parent end, 1 at the child end,
  // valid when x lies in that annulus
  mpq_class edge_fraction(int i, const Padic& x) const;
  bool in_annulus(int i, const Padic& x) const;

  std::string to_dot() const;

 private:
  CoveringTree() = default;
  void build(int node, const std::vector<int>& idx);
  void label();

  const Field* F_ = nullptr;
  std::vector<Padic> roots_;
  Padic lead_;
  std::vector<CoverNode> nodes_;
};

}  // namespace bcint
