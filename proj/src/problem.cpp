#include "bcint/problem.hpp"

#include <cctype>

namespace bcint {

namespace {

class ExprParser {
 public:
  ExprParser(const Field& F, const std::string& s) : F_(F), s_(s) {}

  Padic parse() {
    Padic v = sum();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return v;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace((unsigned char)s_[i_])) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw SchemaError("bad field element \"" + s_ + "\": " + why);
  }
  Padic sum() {
    Padic v = product();
    for (;;) {
      if (eat('+'))
        v += product();
      else if (eat('-'))
        v -= product();
      else
        return v;
    }
  }
  Padic product() {
    Padic v = unary();
    for (;;) {
      if (eat('*')) {
        v *= unary();
      } else if (eat('/')) {
        Padic d = unary();
        if (d.is_zero()) fail("division by zero");
        v /= d;
      } else {
        return v;
      }
    }
  }
  Padic unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  Padic power() {
    Padic b = atom();
    if (!eat('^')) return b;
    bool neg = eat('-');
    mpz_class n = integer();
    if (!n.fits_slong_p()) fail("exponent too large");
    long k = n.get_si();
    return b.pow(neg ? -k : k);
  }
  mpz_class integer() {
    skip();
    size_t j = i_;
    while (i_ < s_.size() && std::isdigit((unsigned char)s_[i_])) ++i_;
    if (j == i_) fail("expected a number");
    return mpz_class(s_.substr(j, i_ - j));
  }
  Padic atom() {
    if (eat('(')) {
      Padic v = sum();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    skip();
    if (i_ < s_.size() && s_[i_] == 'a') {
      ++i_;
      return Padic::pi(F_);
    }
    if (i_ < s_.size() && s_[i_] == 'z') {
      ++i_;
      return Padic::zeta(F_);
    }
    return Padic(F_, integer());
  }

  const Field& F_;
  const std::string& s_;
  size_t i_ = 0;
};

template <class T>
T get(const json& j, const char* key) {
  if (!j.contains(key)) throw SchemaError(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw SchemaError(std::string("field \"") + key + "\" has the wrong type");
  }
}

std::string element_text(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long>());
  throw SchemaError("field elements are strings or integers");
}

json residue_json(const Residue& r) {
  if (r.size() == 1) return r[0];
  return json(r);
}

}  // namespace

Padic parse_element(const Field& F, const std::string& s) { return ExprParser(F, s).parse(); }

json value_json(const Padic& v) {
  const Field& F = v.field();
  json out;
  out["value"] = v.to_string();
  out["valuation"] = v.is_zero() ? json(nullptr) : json(v.val());
  out["precision"] = v.prec();
  long start = 0;
  json digits = json::array();
  for (const auto& d : v.digits(&start)) digits.push_back(residue_json(d));
  out["digits_start"] = start;
  out["digits"] = digits;
  if (F.f == 1 && v.in_Qp()) {
    out["p_value"] = v.to_string_p();
    out["p_precision"] = v.prec() / F.e;
    json pd = json::array();
    for (size_t k = 0; k < digits.size(); ++k)
      if ((start + (long)k) % F.e == 0) pd.push_back(digits[k]);
    out["p_digits_start"] = start / F.e;
    out["p_digits"] = pd;
  }
  return out;
}

json value_json(const IntegralValue& v) {
  json out = value_json(v.value);
  static const char* kinds[] = {"bc", "abelian", "period"};
  out["kind"] = kinds[(int)v.kind];
  out["certified"] = v.certified;
  return out;
}

Problem::Problem(const json& j, std::optional<long> precision) : j_(j) {
  if (!j_.is_object()) throw SchemaError("problem file must be a JSON object");
  task_ = j_.value("task", "");
  target_ = precision ? *precision : get<long>(j_, "precision");
  if (target_ <= 0) throw SchemaError("precision must be positive");
  const json& fj = j_.contains("field") ? j_["field"] : throw SchemaError("missing field \"field\"");
  long p = get<long>(fj, "p"), e = fj.value("e", 1L);
  std::vector<long> mu = fj.value("mu", std::vector<long>{0, 1});
  long N = fj.value("cap", target_ + 16);
  if (precision) N = std::max(N, target_ + 16);
  if (p < 2 || e < 1 || mu.size() < 2) throw SchemaError("bad field descriptor");
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) throw SchemaError("p must be prime");
  F_ = std::make_unique<Field>(p, e, mu, N);
  const json& cj = j_.contains("curve") ? j_["curve"] : throw SchemaError("missing field \"curve\"");
  Padic lead = parse_element(*F_, element_text(cj.value("lead", json("1"))));
  std::vector<Padic> roots;
  if (!cj.contains("roots") || !cj["roots"].is_array()) throw SchemaError("curve.roots must be an array");
  for (const auto& r : cj["roots"]) roots.push_back(parse_element(*F_, element_text(r)));
  if (roots.size() < 3) throw SchemaError("need at least three roots");
  if (cj.contains("f")) {
    // optional coefficient list, low to high: must agree with lead * prod (x - r)
    std::vector<Padic> c;
    for (const auto& x : cj["f"]) c.push_back(parse_element(*F_, element_text(x)));
    Poly f(c), g = Poly::from_roots(*F_, roots) * lead;
    if (f.degree() != g.degree()) throw SchemaError("curve.f disagrees with curve.roots");
    for (long k = 0; k <= f.degree(); ++k)
      if (!(f[k] - g[k]).is_zero() && (f[k] - g[k]).val() < target_)
        throw SchemaError("curve.f disagrees with curve.roots");
  }
  X_ = std::make_unique<Curve>(*F_, roots, lead);
}

CurvePoint Problem::point(const json& s) const {
  if (s.is_string()) return point(s.get<std::string>());
  if (!s.is_object()) throw SchemaError("points are objects or names");
  Padic x = parse_element(*F_, element_text(s.contains("x") ? s["x"] : throw SchemaError("point without x")));
  CurvePoint P;
  if (s.contains("y")) {
    P = {x, parse_element(*F_, element_text(s["y"]))};
    if (!X_->on_curve(P)) throw MathError("NotOnCurve", "point does not satisfy y^2 = f(x)");
  } else {
    Residue hint;
    if (s.contains("hint")) {
      if (s["hint"].is_array())
        hint = s["hint"].get<std::vector<long>>();
      else
        hint = {s["hint"].get<long>()};
    }
    P = X_->point(x, hint);
    if (s.value("sign", 1) < 0) P.y = -P.y;
  }
  return P;
}

CurvePoint Problem::point(const std::string& name) const {
  if (!j_.contains("points") || !j_["points"].contains(name)) throw SchemaError("unknown point \"" + name + "\"");
  return point(j_["points"][name]);
}

int Problem::vertex(const std::string& name) const {
  const DualGraph& G = X_->graph();
  for (size_t v = 0; v < G.vertices().size(); ++v) {
    std::string s = "v" + std::to_string(G.vertices()[v].tnode + 1);
    if (G.vertices()[v].sign > 0) s += "p";
    if (G.vertices()[v].sign < 0) s += "m";
    if (s == name) return (int)v;
  }
  throw SchemaError("unknown vertex \"" + name + "\"");
}

std::pair<int, int> Problem::step(const std::string& s) const {
  int dir = s.size() > 1 && s[0] == '-' ? -1 : +1;
  std::string name = dir < 0 ? s.substr(1) : s;
  const DualGraph& G = X_->graph();
  for (size_t e = 0; e < G.edges().size(); ++e)
    if (G.name((int)e) == name) return {(int)e, dir};
  throw SchemaError("unknown edge \"" + name + "\"");
}

HoloForm Problem::form(const json& s) const {
  if (!s.is_array() || s.empty()) throw SchemaError("form is a nonempty coefficient array");
  if ((int)s.size() > X_->genus()) throw SchemaError("form has more coefficients than the genus");
  HoloForm w;
  for (const auto& c : s) w.push_back(parse_element(*F_, element_text(c)));
  return w;
}

const BCIntegrator& Problem::integrator() const {
  if (I_) return *I_;
  const DualGraph& G = X_->graph();
  ReferencePoints refs;
  refs.vertex.resize(G.vertices().size());
  refs.edge.resize(G.edges().size());
  std::vector<char> vset(refs.vertex.size(), 0), eset(refs.edge.size(), 0);
  const json& rj = j_.contains("reference_points") ? j_["reference_points"]
                                                   : throw SchemaError("missing field \"reference_points\"");
  for (const auto& item : rj.value("vertices", json::array())) {
    int v = vertex(get<std::string>(item, "vertex"));
    CurvePoint P = point(item);
    // pick the branch on the named component when the vertex is even
    if (!item.contains("y") && !X_->in_element(v, P)) P.y = -P.y;
    refs.vertex[v] = P;
    vset[v] = 1;
  }
  for (const auto& item : rj.value("edges", json::array())) {
    int e = step(get<std::string>(item, "edge")).first;
    CurvePoint P = point(item);
    if (!item.contains("y") && X_->edge_of(P) != e) P.y = -P.y;
    refs.edge[e] = P;
    eset[e] = 1;
  }
  for (char c : vset)
    if (!c) throw SchemaError("a vertex has no reference point");
  for (char c : eset)
    if (!c) throw SchemaError("an edge has no reference point");
  I_ = std::make_unique<BCIntegrator>(*X_, refs, target_);
  return *I_;
}

PathSpec Problem::path(const json& item) const {
  const BCIntegrator& I = integrator();
  CurvePoint S = point(item.contains("from") ? item["from"] : throw SchemaError("integral without \"from\""));
  CurvePoint R = point(item.contains("to") ? item["to"] : throw SchemaError("integral without \"to\""));
  if (!item.contains("path")) return I.path_between(S, R);
  PathSpec p{S, R, -1, -1, {}};
  for (const auto& s : item["path"]) p.steps.push_back(step(s.get<std::string>()));
  const DualGraph& G = X_->graph();
  if (item.contains("from_vertex")) {
    p.from = vertex(item["from_vertex"].get<std::string>());
  } else if (!p.steps.empty()) {
    auto [e, dir] = p.steps.front();
    p.from = dir > 0 ? G.edges()[e].from : G.edges()[e].to;
  } else {
    p.from = X_->vertex_of(S);
  }
  if (item.contains("to_vertex")) {
    p.to = vertex(item["to_vertex"].get<std::string>());
  } else if (!p.steps.empty()) {
    auto [e, dir] = p.steps.back();
    p.to = dir > 0 ? G.edges()[e].to : G.edges()[e].from;
  } else {
    p.to = p.from;
  }
  return p;
}

json Problem::run(const std::string& task, std::string* dot) const {
  // every emitted value must reach the requested absolute precision
  auto reached = [this](const Padic& v, const std::string& what) {
    if (v.prec() < target_)
      throw PrecisionError(what + " reached O(a^" + std::to_string(v.prec()) + "), requested O(a^" +
                           std::to_string(target_) + ")");
    return value_json(v);
  };
  json out;
  out["task"] = task;
  out["field"] = F_->describe();
  out["precision"] = target_;
  const DualGraph& G = X_->graph();
  if (task == "cover") {
    const CoveringTree& T = X_->tree();
    json nodes = json::array();
    for (size_t i = 0; i < T.nodes().size(); ++i) {
      const CoverNode& n = T.node(i);
      json r = json::array();
      for (int k : n.roots) r.push_back(k);
      nodes.push_back({{"name", "U" + std::to_string(i + 1)},
                       {"parent", n.parent < 0 ? json(nullptr) : json("U" + std::to_string(n.parent + 1))},
                       {"roots", r},
                       {"infinity", n.has_infinity},
                       {"radius_valuation", n.scale.val()},
                       {"genus", n.genus},
                       {"even", n.even},
                       {"edge_even", n.edge_even}});
    }
    out["nodes"] = nodes;
    if (dot) *dot = T.to_dot();
    return out;
  }
  if (task == "skeleton") {
    json edges = json::array();
    for (size_t e = 0; e < G.edges().size(); ++e) edges.push_back(G.name((int)e));
    out["edges"] = edges;
    out["b1"] = G.b1();
    json cyc = json::array(), duals = json::array();
    auto chain = [](const Chain& c) {
      json a = json::array();
      for (const auto& x : c) a.push_back(x.get_str());
      return a;
    };
    for (const auto& c : X_->basis().cycles) cyc.push_back(chain(c));
    for (const auto& d : X_->basis().duals) duals.push_back(chain(d));
    out["cycles"] = cyc;
    out["dual_forms"] = duals;
    if (dot) *dot = G.to_dot();
    return out;
  }
  if (task == "chabauty") {
    const json& c = j_.contains("chabauty") ? j_["chabauty"] : throw SchemaError("missing field \"chabauty\"");
    int v = vertex(get<std::string>(c, "vertex"));
    CurvePoint S = point(c.at("from")), R = point(c.at("to"));
    if (!X_->in_element(v, S) || !X_->in_element(v, R))
      throw MathError("PointNotInRegion", "both points must lie in the chosen element");
    if (X_->genus() < 2) throw MathError("GenusTooSmall", "the annihilator needs genus at least 2");
    Annihilator A = chabauty_annihilator(*X_, G.vertices()[v].tnode, S, R, target_);
    out["a"] = reached(A.a, "a");
    out["b"] = reached(A.b, "b");
    out["annihilator"] = {value_json(A.b), value_json(-A.a)};
    return out;
  }
  const BCIntegrator& I = integrator();
  json results = json::array();
  if (task == "periods") {
    for (const auto& item : j_.value("integrals", json::array())) {
      if (item.value("kind", "") != "period") continue;
      HoloForm w = form(get<json>(item, "form"));
      json per = json::array();
      for (const auto& v : I.periods(w)) {
        reached(v.value, item.value("name", "period"));
        per.push_back(value_json(v));
      }
      results.push_back({{"name", item.value("name", "")}, {"periods", per}});
    }
    out["results"] = results;
    return out;
  }
  std::string kind = task == "bc-integrate" ? "bc" : task == "abelian-integrate" ? "abelian" : "";
  if (kind.empty()) throw SchemaError("unknown task \"" + task + "\"");
  for (const auto& item : j_.value("integrals", json::array())) {
    if (item.value("kind", "") != kind) continue;
    HoloForm w = form(get<json>(item, "form"));
    PathSpec p = path(item);
    IntegralValue v = kind == "bc" ? I.integrate(w, p) : I.abelian(w, p);
    reached(v.value, item.value("name", kind));
    json r = value_json(v);
    r["name"] = item.value("name", "");
    json word = json::array();
    for (auto [e, dir] : p.steps) word.push_back((dir < 0 ? "-" : "") + G.name(e));
    r["path"] = word;
    if (kind == "abelian") {
      json trop = json::array();
      for (size_t j = 0; j < X_->basis().cycles.size(); ++j) trop.push_back(I.tropical((int)j, p).get_str());
      r["tropical"] = trop;
    }
    results.push_back(r);
  }
  out["results"] = results;
  return out;
}

}  // namespace bcint
