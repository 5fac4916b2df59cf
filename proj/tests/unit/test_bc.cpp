#include <fstream>

#include "bcint/problem.hpp"
#include "doctest.h"
#include "support/refpoints.hpp"

using namespace bcint;

namespace {

Problem load(const std::string& name) {
  std::ifstream in(std::string(BCINT_DATA_DIR) + "/" + name);
  REQUIRE(in);
  return Problem(json::parse(in));
}

const json& entry(const Problem& P, const std::string& name) {
  for (const auto& it : P.spec()["integrals"])
    if (it["name"] == name) return it;
  FAIL("no integral named " << name);
  throw 0;
}

IntegralValue bc(const Problem& P, const BCIntegrator& I, const std::string& name) {
  const json& it = entry(P, name);
  return I.integrate(P.form(it["form"]), P.path(it));
}

IntegralValue ab(const Problem& P, const BCIntegrator& I, const std::string& name) {
  const json& it = entry(P, name);
  return I.abelian(P.form(it["form"]), P.path(it));
}

bool matches(const Padic& v, const Problem& P, const std::string& want, long n) {
  Padic w = parse_element(P.field(), want);
  INFO(v.to_string() << " vs " << want << " mod a^" << n);
  return v.prec() >= n && v.agrees_to(w, n);
}

// integral of the dual forms over a closed chain: its coordinates in the cycle basis
std::vector<mpq_class> coordinates(const Curve& X, const Chain& c) {
  std::vector<mpq_class> n;
  for (const auto& d : X.basis().duals) n.push_back(pairing(c, d));
  return n;
}

Chain chain_of(const Curve& X, const PathSpec& p) {
  Chain c(X.graph().edges().size(), 0);
  for (auto [e, dir] : p.steps) c[e] += dir;
  return c;
}

}  // namespace

TEST_CASE("genus 1 curve over Q_17(sqrt 17)") {
  Problem P = load("genus1.json");
  const BCIntegrator& I = P.integrator();
  HoloForm w0{Padic::one(P.field())};
  auto plus = bc(P, I, "BC S->R along e1+");
  CHECK(matches(plus.value, P, "15*a^4+11*a^6+12*a^8+a^10+11*a^12", 14));
  auto per = I.periods(w0);
  REQUIRE(per.size() == 1);
  CHECK(matches(per[0].value, P, "10*a^2+12*a^4+9*a^6+5*a^8+4*a^10+4*a^12", 14));
  auto A = ab(P, I, "Ab S->R along e1+");
  CHECK(matches(A.value, P, "12*17+8*17^2+15*17^3+9*17^4+16*17^5+8*17^6", 14));
  CHECK(I.tropical(0, P.path(entry(P, "Ab S->R along e1+"))) == mpq_class(1, 2));

  SUBCASE("the other homotopy class changes BC by a period and leaves Ab alone") {
    auto minus = bc(P, I, "BC S->R along e1-");
    PathSpec p1 = P.path(entry(P, "BC S->R along e1+")), p2 = P.path(entry(P, "BC S->R along e1-"));
    Chain diff = chain_of(P.curve(), p1);
    Chain c2 = chain_of(P.curve(), p2);
    for (size_t e = 0; e < diff.size(); ++e) diff[e] -= c2[e];
    auto n = coordinates(P.curve(), diff);
    REQUIRE(n[0].get_den() == 1);
    CHECK(n[0] != 0);
    CHECK(minus.value.agrees_to(plus.value - per[0].value * Padic(P.field(), mpz_class(n[0].get_num())), 14));
    CHECK(ab(P, I, "Ab S->R along e1-").value.agrees_to(A.value, 14));
  }
}

TEST_CASE("genus 1 torsion differences have vanishing abelian integral") {
  Problem P = load("genus1.json");
  const BCIntegrator& I = P.integrator();
  const Field& F = P.field();
  HoloForm w0{Padic::one(F)};
  EllipticPoint Pt = RationalPoint{-3, 24};
  auto cp = [&](const EllipticPoint& Q) { return CurvePoint{Padic(F, Q->x), Padic(F, Q->y)}; };
  for (long i = 0; i <= 3; ++i) {
    auto iP = elliptic_mul(0, -91, Pt, i);
    auto A = elliptic_add(0, -91, RationalPoint{5, 0}, iP);
    for (long b : {6, -11}) {
      auto B = elliptic_add(0, -91, RationalPoint{b, 0}, iP);
      INFO("i = " << i << ", (" << b << ",0)");
      REQUIRE(P.curve().on_curve(cp(B)));
      auto v = I.abelian(w0, I.path_between(cp(A), cp(B)));
      CHECK(v.value.prec() >= 14);
      CHECK(v.value.val() >= 14);
    }
  }
}

TEST_CASE("elliptic group law") {
  // 2-torsion, doubling and a known multiple on x^3 - 91 x + 330
  EllipticPoint T = RationalPoint{5, 0}, Pt = RationalPoint{-3, 24};
  CHECK(!elliptic_add(0, -91, T, T));
  CHECK(!elliptic_mul(0, -91, T, 2));
  auto P2 = elliptic_mul(0, -91, Pt, 2), P3 = elliptic_mul(0, -91, Pt, 3);
  REQUIRE(P2);
  REQUIRE(P3);
  auto sum = elliptic_add(0, -91, *P2, Pt);
  REQUIRE(sum);
  CHECK(sum->x == P3->x);
  CHECK(sum->y == P3->y);
  for (const auto& Q : {*P2, *P3}) CHECK(Q.y * Q.y == Q.x * Q.x * Q.x - 91 * Q.x + 330);
}

TEST_CASE("genus 2 curve over Q_7(sqrt 7)") {
  Problem P = load("genus2.json");
  const BCIntegrator& I = P.integrator();
  const Field& F = P.field();
  CHECK(matches(bc(P, I, "BC omega_0").value, P, "4*a^6+2*a^8+2*a^10+5*a^12", 14));
  CHECK(matches(bc(P, I, "BC omega_1").value, P, "6*a^2+6*a^6+4*a^10+6*a^12", 14));
  auto p0 = I.periods({Padic::one(F)}), p1 = I.periods({Padic::zero(F), Padic::one(F)});
  REQUIRE(p0.size() == 1);
  CHECK(matches(p0[0].value, P, "a^6+5*a^8+4*a^10+3*a^12", 14));
  CHECK(matches(p1[0].value, P, "5*a^2+a^4+5*a^6+a^8+a^10+6*a^12", 14));
  CHECK(matches(ab(P, I, "Ab omega_0").value, P, "0", 14));
  CHECK(matches(ab(P, I, "Ab omega_1").value, P, "0", 14));
}

TEST_CASE("genus 3 curve over Q_13(13^(1/4))") {
  Problem P = load("genus3.json");
  const Curve& X = P.curve();
  const Field& F = P.field();
  HoloForm w0{Padic::one(F)};
  Padic a2 = Padic::pi(F).pow(2);
  CurvePoint W1 = P.point("W1"), W13 = P.point("W13");
  CurvePoint E1 = X.point(a2 + Padic::one(F)), E2 = X.point(a2);
  // elements over (x-1)/13, the top node and x/13
  Padic i1 = X.element_integral(2, w0, W1, E1, 13), i2 = X.element_integral(0, w0, E1, E2, 13),
        i3 = X.element_integral(1, w0, E2, W13, 13);
  CHECK(matches(i1, P, "2*a^-1+8*a+6*a^3+9*a^5+8*a^7+3*a^9+5*a^11", 13));
  CHECK(matches(i2, P, "4*a^-1+6*a+3*a^3+10*a^5+8*a^7+9*a^9+11*a^11", 13));
  CHECK(matches(i3, P, "7*a^-1+12*a+3*a^3+5*a^5+9*a^7+12*a^9+8*a^11", 13));
  CHECK(matches(i1 + i2 + i3, P, "0", 13));

  const BCIntegrator& I = P.integrator();
  CHECK(matches(ab(P, I, "Ab omega_0 between Weierstrass points").value, P, "0", 28));
  CHECK(matches(bc(P, I, "BC omega_1+omega_2").value, P,
                "11+4*a^2+2*a^4+10*a^6+6*a^8+7*a^10+8*a^12+9*a^14+9*a^16+11*a^18+9*a^20+6*a^22+4*a^24+10*a^26", 28));
  auto per = I.periods({Padic::zero(F), Padic::one(F), Padic::one(F)});
  REQUIRE(per.size() == 1);
  CHECK(matches(per[0].value, P, "8*a^2+7*a^6+2*a^10+6*a^14+10*a^18+8*a^26", 28));
  CHECK(I.tropical(0, P.path(entry(P, "Ab omega_1+omega_2"))) == mpq_class(1, 2));
  CHECK(matches(ab(P, I, "Ab omega_1+omega_2").value, P, "11+2*13+6*13^2+8*13^3+9*13^4+9*13^5+4*13^6", 28));
}

TEST_CASE("walks: backtracking cancels and concatenation adds") {
  Problem P = load("genus3.json");
  const Curve& X = P.curve();
  const BCIntegrator& I = P.integrator();
  HoloForm w{Padic::zero(P.field()), Padic::one(P.field()), Padic::one(P.field())};
  PathSpec full = P.path(entry(P, "BC omega_1+omega_2"));
  REQUIRE(full.steps.size() == 2);
  const GEdge& first = X.graph().edges()[full.steps[0].first];
  int mid = full.steps[0].second > 0 ? first.to : first.from;
  auto Ms = refpoints::nearby_in_vertex(X, I.refs().vertex[mid], mid, 1);
  REQUIRE(Ms.size() == 1);
  CurvePoint M = Ms[0];
  PathSpec a{full.start, M, full.from, mid, {full.steps[0]}}, b{M, full.end, mid, full.to, {full.steps[1]}};
  Padic whole = I.integrate(w, full).value;
  CHECK((I.integrate(w, a).value + I.integrate(w, b).value).agrees_to(whole, 28));
  CHECK((I.abelian(w, a).value + I.abelian(w, b).value).agrees_to(I.abelian(w, full).value, 28));

  auto [e2, d2] = full.steps[1];
  PathSpec there_and_back{full.start, M, full.from, mid, {full.steps[0], {e2, d2}, {e2, -d2}}};
  CHECK(I.integrate(w, there_and_back).value.agrees_to(I.integrate(w, a).value, 28));

  PathSpec bad = a;
  bad.steps = {full.steps[1]};
  CHECK_THROWS_AS(I.integrate(w, bad), MathError);
}

TEST_CASE("reference points do not change periods, BC or abelian values") {
  for (const char* name : {"genus1.json", "genus2.json", "genus3.json"}) {
    INFO(std::string(name));
    Problem P = load(name);
    const Curve& X = P.curve();
    const BCIntegrator& I0 = P.integrator();
    long N = P.precision();
    std::vector<HoloForm> forms;
    for (int i = 0; i < X.genus(); ++i) {
      HoloForm w(i + 1, Padic::zero(P.field()));
      w[i] = Padic::one(P.field());
      forms.push_back(w);
    }
    std::vector<const json*> paths;
    for (const auto& it : P.spec()["integrals"])
      if (it.contains("path")) paths.push_back(&it);
    auto alt = refpoints::moved(X, I0.refs(), 2);
    REQUIRE(alt.size() == 2);
    for (const auto& refs : alt) {
      BCIntegrator I(X, refs, N);
      for (const auto& w : forms) {
        auto a = I0.periods(w), b = I.periods(w);
        for (size_t j = 0; j < a.size(); ++j) CHECK(a[j].value.agrees_to(b[j].value, N));
        for (const json* it : paths) {
          PathSpec p = P.path(*it);
          CHECK(I0.integrate(w, p).value.agrees_to(I.integrate(w, p).value, N));
          CHECK(I0.abelian(w, p).value.agrees_to(I.abelian(w, p).value, N));
        }
      }
    }
  }
}

TEST_CASE("reference points must sit in their regions") {
  Problem P = load("genus1.json");
  ReferencePoints refs = P.integrator().refs();
  std::swap(refs.vertex[0], refs.vertex[1]);
  CHECK_THROWS_AS(BCIntegrator(P.curve(), refs, 14), MathError);
  refs = P.integrator().refs();
  std::swap(refs.edge[0], refs.edge[1]);
  CHECK_THROWS_AS(BCIntegrator(P.curve(), refs, 14), MathError);
  refs.edge.pop_back();
  CHECK_THROWS_AS(BCIntegrator(P.curve(), refs, 14), SchemaError);
}

TEST_CASE("chabauty annihilator for the sextic at 5") {
  Problem P = load("chabauty.json");
  const Curve& X = P.curve();
  CurvePoint S = P.point("S"), R = P.point("R");
  int v = P.vertex("v1");
  int node = X.graph().vertices()[v].tnode;
  Annihilator A = chabauty_annihilator(X, node, S, R, 20);
  CHECK(matches(A.a, P, "2*5+5^4+3*5^6+2*5^7+2*5^8+4*5^9", 20));
  CHECK(matches(A.b, P, "0", 20));

  Annihilator B = chabauty_annihilator(X, node, R, S, 20);
  CHECK(B.a.agrees_to(-A.a, 20));
  CHECK(B.b.agrees_to(-A.b, 20));

  auto Ms = refpoints::nearby(X, S, [&](const CurvePoint& Q) { return X.in_element(v, Q); }, 1);
  REQUIRE(Ms.size() == 1);
  Annihilator A1 = chabauty_annihilator(X, node, S, Ms[0], 20), A2 = chabauty_annihilator(X, node, Ms[0], R, 20);
  CHECK((A1.a + A2.a).agrees_to(A.a, 20));
  CHECK((A1.b + A2.b).agrees_to(A.b, 20));
}

TEST_CASE("certified precision covers the printed precision") {
  struct Want {
    const char* file;
    long printed;
  };
  for (auto [file, printed] : {Want{"genus1.json", 14}, Want{"genus2.json", 14}, Want{"genus3.json", 28}}) {
    INFO(file);
    Problem P = load(file);
    for (const char* task : {"bc-integrate", "abelian-integrate", "periods"}) {
      json out = P.run(task);
      for (const auto& r : out["results"]) {
        if (r.contains("periods")) {
          for (const auto& q : r["periods"]) CHECK(q["precision"].get<long>() >= printed);
        } else {
          CHECK(r["certified"].get<long>() >= printed);
        }
      }
    }
  }
}
