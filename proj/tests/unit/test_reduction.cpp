#include <algorithm>

#include "bcint/reduction.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace bcint;

namespace {

struct Fixture {
  Field F{7, 2, 40};
};

using oracles::center;

void check_exact(const ReductionChart& C, const PartialFractions& eta, const Decomposition& D, long tol) {
  CHECK(oracles::residual_floor(C, eta, D) >= tol);
}

}  // namespace

TEST_CASE("trivial decompositions") {
  Fixture fx;
  const Field& F = fx.F;
  ReductionChart C{Poly::from_roots(F, {Padic(F, 1), Padic(F, 2), Padic(F, 3)}), {center(Padic(F, 0L), false)}};
  PartialFractions om1{{{Padic::zero(F)}}, {Padic::zero(F), Padic::one(F)}};
  auto D = decompose(C, om1);
  CHECK(D.c.size() == 2);
  CHECK(D.c[0].is_zero());
  CHECK(D.c[1].equals(Padic::one(F)));
  CHECK(D.d[0].is_zero());
  for (const auto& q : D.fx) CHECK(q.is_zero());

  PartialFractions nu{{{Padic::zero(F), Padic::one(F)}}, {}};
  D = decompose(C, nu);
  CHECK(D.d[0].equals(Padic::one(F)));
  for (const auto& q : D.c) CHECK(q.is_zero());

  // exact forms come back as their primitives
  for (long m = 1; m <= 4; ++m) {
    std::vector<std::vector<Padic>> fz{std::vector<Padic>(m + 1, Padic::zero(F))};
    fz[0][m] = Padic::one(F);
    auto D2 = decompose(C, exact_part(C, fz, {}));
    CHECK(D2.fz[0][m].equals(Padic::one(F)));
    for (long j = 1; j < m; ++j) CHECK(D2.fz[0][j].is_zero());
    for (const auto& q : D2.c) CHECK(q.is_zero());
    CHECK(D2.d[0].is_zero());
    std::vector<Padic> xm(m + 1, Padic::zero(F));
    xm[m] = Padic::one(F);
    auto D3 = decompose(C, exact_part(C, {{}}, xm));
    CHECK(D3.fx[m].equals(Padic::one(F)));
    for (const auto& q : D3.c) CHECK(q.is_zero());
  }
}

TEST_CASE("leading symbols of the exact forms") {
  Fixture fx;
  const Field& F = fx.F;
  Poly g = Poly::from_roots(F, {Padic(F, 1), Padic(F, 2), Padic(F, 3)});
  ReductionChart C{g, {center(Padic(F, 0L), false), center(Padic(F, 1), true)}};
  for (long m = 1; m <= 5; ++m) {
    std::vector<std::vector<Padic>> fz(2);
    fz[0].assign(m + 1, Padic::zero(F));
    fz[0][m] = Padic::one(F);
    auto A = exact_part(C, fz, {});
    CHECK(A.pp[0][m + 1].equals(g.eval(Padic(F, 0L)) * (-2 * m)));
    fz[0].clear();
    fz[1].assign(m + 1, Padic::zero(F));
    fz[1][m] = Padic::one(F);
    A = exact_part(C, fz, {});
    CHECK(A.pp[1][m].equals(g.derivative().eval(Padic(F, 1)) * (1 - 2 * m)));
    if (A.pp[1].size() > (size_t)m + 1) CHECK(A.pp[1][m + 1].is_zero());
  }
}

TEST_CASE("genus 2 chart with a double pole at a non-Weierstrass point") {
  Fixture fx;
  const Field& F = fx.F;
  ReductionChart C{Poly::from_roots(F, {Padic(F, 1), Padic(F, 2), Padic(F, 3)}), {center(Padic(F, 0L), false)}};
  // x^3/x^2 has no pole; add a genuine one: x^3/x^2 + 5/x^2 + x^5
  PartialFractions eta{{{Padic::zero(F), Padic::zero(F), Padic(F, 5)}},
                       {Padic::zero(F), Padic::one(F), Padic::zero(F), Padic::zero(F), Padic::zero(F), Padic::one(F)}};
  auto D = decompose(C, eta);
  check_exact(C, eta, D, 30);
}

TEST_CASE("random decompositions re-expand to zero") {
  Fixture fx;
  for (const auto& rc : oracles::random_charts(fx.F, 2024, 5, 40)) {
    const ReductionChart& C = rc.C;
    for (const auto& eta : rc.terms) {
      Decomposition D;
      CHECK_NOTHROW(D = decompose(C, eta));
      check_exact(C, eta, D, 24);
      // order of the finite centers does not matter
      ReductionChart Cr = C;
      PartialFractions er = eta;
      std::reverse(Cr.centers.begin(), Cr.centers.end());
      std::reverse(er.pp.begin(), er.pp.end());
      auto Dr = decompose(Cr, er);
      for (size_t k = 0; k < D.c.size(); ++k) CHECK(D.c[k].agrees_to(Dr.c[k], 24));
      for (size_t j = 0; j < D.d.size(); ++j) CHECK(D.d[j].agrees_to(Dr.d[D.d.size() - 1 - j], 24));
    }
  }
}

TEST_CASE("residue of a form equals the residue read from its simple pole") {
  Fixture fx;
  const Field& F = fx.F;
  ReductionChart C{Poly::from_roots(F, {Padic(F, 1), Padic(F, 3)}), {center(Padic(F, 0L), false)}};
  // 1/x^2 dx/2y near 0: 1/y = s^-1 (1 - (g'(0)/2g(0)) x + ...), residue coefficient -g'(0)/(2 g(0))
  PartialFractions eta{{{Padic::zero(F), Padic::zero(F), Padic::one(F)}}, {}};
  Padic want = -Padic(F, -4) / (Padic(F, 2) * Padic(F, 3));
  CHECK(residue_coefficient(C, eta, 0).equals(want));
}
