// wickcalc: command-line front end for the Wick/chaos expression language.
//
//   wickcalc [options] [script]        run a script file
//   wickcalc [options] -e 'stmt' ...   run statements given on the command line
//   wickcalc [options]                 read statements from stdin

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wick/dsl.hpp"

int main(int argc, char** argv) {
  using namespace wick::dsl;

  CLI::App app{"Wiener chaos calculator: Wick products, S-transforms, renormalization, checks"};
  Options opt;
  std::vector<std::string> statements;
  std::string script;
  bool json = false, csv = false;

  app.add_option("--dim", opt.dim, "Cameron-Martin dimension d")->check(CLI::Range(1, 64));
  app.add_option("--order", opt.order, "Chaos truncation order")->check(CLI::Range(0, wick::kMaxSupportedOrder));
  app.add_option("--seed", opt.seed, "Seed of the counter-based Gaussian stream");
  app.add_option("--samples", opt.samples, "Monte Carlo sample count")->check(CLI::PositiveNumber);
  app.add_option("--check-tolerance", opt.check_tolerance, "Tolerance of exact checks")->check(CLI::PositiveNumber);
  auto* json_flag = app.add_flag("--json", json, "Emit JSON lines");
  app.add_flag("--csv", csv, "Emit CSV rows")->excludes(json_flag);
  app.add_option("-e,--eval", statements, "Statement to execute (repeatable)");
  app.add_option("script", script, "Script file")->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitError;
  }
  if (!script.empty() && !statements.empty()) {
    std::cerr << "error: give either a script file or -e statements, not both\n";
    return kExitError;
  }
  opt.format = json ? OutputFormat::Json : csv ? OutputFormat::Csv : OutputFormat::Text;

  std::string source;
  if (!statements.empty()) {
    for (const auto& s : statements) source += s + "\n";
  } else if (!script.empty()) {
    std::ifstream in(script);
    if (!in) {
      std::cerr << "error: cannot open " << script << "\n";
      return kExitError;
    }
    source.assign(std::istreambuf_iterator<char>(in), {});
  } else {
    source.assign(std::istreambuf_iterator<char>(std::cin), {});
  }

  try {
    Session session(opt, std::cout, std::cerr);
    return session.run(source);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
