#pragma once

#include <memory>
#include <optional>
#include <string>

#include "bcint/bc_abelian.hpp"
#include "json.hpp"

namespace bcint {

using json = nlohmann::json;

// Field element from text: integers, fractions, `a` (uniformiser), `z` (generator
// of the unramified part), + - * / ^ and parentheses. "a^2+1", "20/7", "(1+a)/2".
Padic parse_element(const Field& F, const std::string& s);

json value_json(const Padic& v);
json value_json(const IntegralValue& v);

// A parsed problem file. Owns the field and the curve; reference points and
// named points are resolved lazily because they need the covering.
class Problem {
 public:
  // precision overrides the file's target precision
  Problem(const json& j, std::optional<long> precision = std::nullopt);

  const Field& field() const { return *F_; }
  const Curve& curve() const { return *X_; }
  long precision() const { return target_; }
  const std::string& task() const { return task_; }
  const json& spec() const { return j_; }

  CurvePoint point(const std::string& name) const;
  CurvePoint point(const json& spec) const;
  CurvePoint point(const char* name) const { return point(std::string(name)); }
  int vertex(const std::string& name) const;
  // "e1+" along the orientation, "-e1+" against
  std::pair<int, int> step(const std::string& s) const;
  HoloForm form(const json& spec) const;
  const BCIntegrator& integrator() const;
  PathSpec path(const json& item) const;

  // runs one task; DOT text for cover / skeleton goes to *dot
  json run(const std::string& task, std::string* dot = nullptr) const;

 private:
  json j_;
  std::string task_;
  long target_ = 0;
  std::unique_ptr<Field> F_;
  std::unique_ptr<Curve> X_;
  mutable std::unique_ptr<BCIntegrator> I_;
};

}  // namespace bcint
