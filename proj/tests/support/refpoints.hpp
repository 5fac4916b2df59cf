#pragma once

#include <functional>
#include <vector>

#include "bcint/bc_abelian.hpp"

namespace refpoints {

using namespace bcint;

// Points near P in the same region, found by moving x by pi^k t (one point per k)
// and keeping the branch for which `same` holds.
inline std::vector<CurvePoint> nearby(const Curve& X, const CurvePoint& P,
                                      const std::function<bool(const CurvePoint&)>& same, int count) {
  const Field& F = X.field();
  std::vector<CurvePoint> out;
  for (long k = 0; k <= 3 * F.e && (int)out.size() < count; ++k) {
    for (long t = 1; t < F.p; ++t) {
      Padic x = P.x + Padic::pi(F).pow(k) * Padic(F, t);
      Padic fx = X.f(x);
      if (fx.is_zero()) continue;
      auto y = fx.try_sqrt();
      if (!y) continue;
      bool found = false;
      for (const Padic& yy : {*y, -*y}) {
        CurvePoint Q{x, yy};
        try {
          found = same(Q);
        } catch (const MathError&) {
        }
        if (found) {
          out.push_back(Q);
          break;
        }
      }
      if (found) break;
    }
  }
  return out;
}

inline std::vector<CurvePoint> nearby_in_vertex(const Curve& X, const CurvePoint& P, int v, int count) {
  return nearby(X, P, [&](const CurvePoint& Q) { return X.in_element(v, Q) && X.edge_of(Q) < 0; }, count);
}

// `count` further assignments, each moving every reference point of the base;
// empty if some region has too few candidates
inline std::vector<ReferencePoints> moved(const Curve& X, const ReferencePoints& base, int count) {
  std::vector<ReferencePoints> out(count, base);
  for (size_t v = 0; v < base.vertex.size(); ++v) {
    auto alt = nearby_in_vertex(X, base.vertex[v], (int)v, count);
    if ((int)alt.size() < count) return {};
    for (int i = 0; i < count; ++i) out[i].vertex[v] = alt[i];
  }
  for (size_t e = 0; e < base.edge.size(); ++e) {
    auto alt = nearby(X, base.edge[e], [&](const CurvePoint& Q) { return X.edge_of(Q) == (int)e; }, count);
    if ((int)alt.size() < count) return {};
    for (int i = 0; i < count; ++i) out[i].edge[e] = alt[i];
  }
  return out;
}

}  // namespace refpoints
