#pragma once

#include <map>
#include <optional>
#include <memory>
#include <vector>

#include "bcint/coleman.hpp"
#include "bcint/reduction.hpp"
#include "bcint/tropgraph.hpp"
#include "bcint/wideopen.hpp"

namespace bcint {

// Holomorphic form sum_i w[i] x^i dx/2y.
using HoloForm = std::vector<Padic>;

// One reference point per vertex and per edge of the dual graph.
struct ReferencePoints {
  std::vector<CurvePoint> vertex;
  std::vector<CurvePoint> edge;
};

struct PathSpec {
  CurvePoint start, end;
  int from = -1, to = -1;                  // graph vertices holding start and end
  std::vector<std::pair<int, int>> steps;  // (edge, +1 along its orientation / -1 against)
};

enum class IntegralKind { BC, Abelian, Period };

struct IntegralValue {
  Padic value;
  IntegralKind kind = IntegralKind::BC;
  long certified = 0;  // absolute precision in pi-digits
};

// y^2 = lead * prod (x - roots) with its semistable covering, dual graph and
// homology basis; integrates holomorphic forms chart by chart.
class Curve {
 public:
  Curve(const Field& F, std::vector<Padic> roots, Padic lead);
  ~Curve();

  const Field& field() const { return *F_; }
  const CoveringTree& tree() const { return T_; }
  const DualGraph& graph() const { return G_; }
  const CycleBasis& basis() const { return B_; }
  int genus() const { return T_.curve_genus(); }
  Padic f(const Padic& x) const;
  // the point with this x and y = +-sqrt(f(x)), chosen by the residue hint
  CurvePoint point(const Padic& x, const Residue& hint = {}) const;
  bool on_curve(const CurvePoint& P) const;

  // graph vertex of the element that holds P away from its annuli, or the
  // parent-side vertex when P is in an annulus
  int vertex_of(const CurvePoint& P) const;
  // graph edge whose annulus holds P, or -1
  int edge_of(const CurvePoint& P) const;
  // +1 / -1: which of the two components over an even annulus or vertex holds P
  int component(int tnode, const CurvePoint& P, bool annulus) const;
  bool in_element(int vertex, const CurvePoint& P) const;

  // integral of x^i dx/2y from A to B inside the element over tree node `node`
  Padic element_integral(int node, int i, const CurvePoint& A, const CurvePoint& B, long target) const;
  Padic element_integral(int node, const HoloForm& w, const CurvePoint& A, const CurvePoint& B, long target) const;

 private:
  struct ElementData;
  const ElementData& element(int node) const;

  const Field* F_;
  CoveringTree T_;
  DualGraph G_;
  CycleBasis B_;
  mutable std::map<int, std::unique_ptr<ElementData>> cache_;
};

class BCIntegrator {
 public:
  BCIntegrator(const Curve& X, ReferencePoints refs, long target);

  const Curve& curve() const { return X_; }
  long target() const { return target_; }
  const ReferencePoints& refs() const { return refs_; }

  // int_{P_i(e)}^{P_e} on U_i(e) plus int_{P_e}^{P_t(e)} on U_t(e)
  Padic edge_value(const HoloForm& w, int e) const;
  IntegralValue integrate(const HoloForm& w, const PathSpec& path) const;
  // period over a closed chain of edges; depends only on its homology class
  IntegralValue period(const HoloForm& w, const Chain& cycle) const;
  std::vector<IntegralValue> periods(const HoloForm& w) const;
  // tropical integral of the dual form j along the path tropicalization
  mpq_class tropical(int j, const PathSpec& path) const;
  IntegralValue abelian(const HoloForm& w, const PathSpec& path) const;
  // shortest edge word between the elements holding P and Q
  PathSpec path_between(const CurvePoint& P, const CurvePoint& Q) const;

 private:
  void check_path(const PathSpec& path) const;
  mpq_class offset(int j, const CurvePoint& P, int v) const;

  const Curve& X_;
  ReferencePoints refs_;
  long target_;
};

// (b, -a) with a = int omega_0, b = int omega_1 between two points of one element
struct Annihilator {
  Padic a, b;
};
Annihilator chabauty_annihilator(const Curve& X, int node, const CurvePoint& S, const CurvePoint& R, long target);

// chord-tangent law over Q on y^2 = x^3 + a2 x^2 + a4 x + a6; nullopt is the origin
struct RationalPoint {
  mpq_class x, y;
};
using EllipticPoint = std::optional<RationalPoint>;
EllipticPoint elliptic_add(const mpq_class& a2, const mpq_class& a4, const EllipticPoint& P, const EllipticPoint& Q);
EllipticPoint elliptic_mul(const mpq_class& a2, const mpq_class& a4, const EllipticPoint& P, long n);

}  // namespace bcint
