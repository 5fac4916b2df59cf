#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "bcint/problem.hpp"

using namespace bcint;

namespace {

int run(const std::string& input, const std::string& outdir, std::optional<long> precision, std::string task) {
  std::ifstream in(input);
  if (!in) throw SchemaError("cannot read " + input);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
  Problem P(j, precision);
  if (task.empty()) task = P.task();
  if (task.empty()) throw SchemaError("no task given");
  std::string dot;
  json out = P.run(task, &dot);
  std::string text = out.dump(2) + "\n";
  if (outdir.empty()) {
    std::cout << text;
    if (!dot.empty()) std::cout << dot;
    return 0;
  }
  std::filesystem::create_directories(outdir);
  std::string stem = std::filesystem::path(input).stem().string() + "." + task;
  std::ofstream(std::filesystem::path(outdir) / (stem + ".json")) << text;
  if (!dot.empty()) std::ofstream(std::filesystem::path(outdir) / (stem + ".dot")) << dot;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Berkovich-Coleman and abelian integrals on hyperelliptic curves"};
  app.require_subcommand(0, 1);
  std::string input, outdir, task;
  std::optional<long> precision;
  app.add_option("--input", input, "problem file (JSON)")->required();
  app.add_option("--output-dir", outdir, "write <input>.<task>.json (and .dot) here instead of stdout");
  app.add_option("--precision", precision, "target precision in uniformiser digits");
  app.add_option("--task", task, "cover | skeleton | bc-integrate | abelian-integrate | periods | chabauty");
  for (const char* name : {"cover", "skeleton", "bc-integrate", "abelian-integrate", "periods", "chabauty"})
    app.add_subcommand(name, std::string("run the ") + name + " task")->callback([&task, name] { task = name; });
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  try {
    return run(input, outdir, precision, task);
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 2;
  } catch (const MathError& e) {
    std::cerr << "math error: " << e.what() << "\n";
    return 3;
  } catch (const PrecisionError& e) {
    std::cerr << "precision error: " << e.what() << "\n";
    return 4;
  }
}
