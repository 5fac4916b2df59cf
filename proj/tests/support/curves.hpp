#pragma once

#include <memory>

#include "bcint/newton_cover.hpp"

// The four worked curves, built with a chosen precision cap.
namespace curves {

using namespace bcint;

struct Example {
  std::unique_ptr<Field> F;
  std::unique_ptr<CoveringTree> T;
};

inline std::vector<Padic> ints(const Field& F, std::vector<long> v) {
  std::vector<Padic> out;
  for (long x : v) out.emplace_back(F, x);
  return out;
}

inline Example genus1(long N = 40) {
  Example ex{std::make_unique<Field>(17, 2, N), nullptr};
  ex.T = std::make_unique<CoveringTree>(*ex.F, ints(*ex.F, {6, 5, -11}), Padic::one(*ex.F));
  return ex;
}

inline Example genus2(long N = 40) {
  Example ex{std::make_unique<Field>(7, 2, N), nullptr};
  ex.T = std::make_unique<CoveringTree>(*ex.F, ints(*ex.F, {0, 1, 2, 3, 7}), Padic::one(*ex.F));
  return ex;
}

inline Example genus3(long N = 60) {
  Example ex{std::make_unique<Field>(13, 4, N), nullptr};
  ex.T = std::make_unique<CoveringTree>(*ex.F, ints(*ex.F, {0, 13, 169, 1, 14, 27, 4}), Padic::one(*ex.F));
  return ex;
}

inline Example chabauty(long N = 40) {
  Example ex{std::make_unique<Field>(5, 2, std::vector<long>{-2, 0, 1}, N), nullptr};
  const Field& F = *ex.F;
  Padic s5 = Padic::pi(F), s2 = Padic::zeta(F), half(F, mpq_class(1, 2));
  std::vector<Padic> roots = {s2, -s2, half * (Padic::one(F) + s5), half * (Padic::one(F) - s5),
                              half * (Padic(F, -1) + s5), half * (Padic(F, -1) - s5)};
  ex.T = std::make_unique<CoveringTree>(F, roots, Padic::one(F));
  return ex;
}

}  // namespace curves
