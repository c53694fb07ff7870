// Acceptance run: one PASS/FAIL line per criterion, tolerances pinned below.
//
//   acceptance <path-to-wickcalc> <golden-dir>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "wick/checks.hpp"
#include "wick/dsl.hpp"
#include "wick/random_instances.hpp"
#include "wick/serialize.hpp"

using namespace wick;

namespace {

constexpr double kExactTol = 1e-9;       // coefficientwise algebra identities
constexpr double kPointwiseTol = 1e-8;   // evaluations at sample points
constexpr double kMomentTol = 1e-12;     // moment identity, relative
constexpr double kSeriesTol = 1e-6;      // truncated Wick-exponential series vs closed form
constexpr double kProbeTol = 1e-12;      // near-tight hypercontractivity ratio
constexpr double kMaxZ = 3.0;            // Monte Carlo agreement, in standard errors
constexpr int kSeriesTerms = 40;         // K for the Wick-exponential series
constexpr std::int64_t kSamples = 1'000'000;
constexpr std::uint64_t kSeed = 20261016;

struct Verdict {
  bool ok = true;
  std::string summary;
  std::vector<std::string> failures;
};

bool contains(const std::string& s, const char* needle) { return s.find(needle) != std::string::npos; }

double pinned_tolerance(const std::string& identity) {
  if (contains(identity, "pointwise") || contains(identity, "sample points") || contains(identity, "at 20 points"))
    return kPointwiseTol;
  if (contains(identity, "moment_identity")) return kMomentTol;
  if (contains(identity, "series K=")) return kSeriesTol;
  if (contains(identity, "near-tight")) return kProbeTol;
  return kExactTol;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

// Re-judges every line of a battery against the pinned tolerances above; the
// battery's own pass flag is only trusted for pure predicates (tolerance 0).
Verdict judge(const std::vector<CheckResult>& results) {
  Verdict v;
  double worst_err = 0.0, worst_z = 0.0;
  int exact = 0, stat = 0, pred = 0;
  for (const auto& r : results) {
    bool ok;
    std::string why;
    if (r.statistical) {
      ++stat;
      worst_z = std::max(worst_z, std::fabs(r.zscore));
      ok = std::isfinite(r.zscore) && std::fabs(r.zscore) <= kMaxZ;
      why = "z=" + fmt(r.zscore);
    } else if (r.tolerance == 0.0) {
      ++pred;
      ok = r.passed;
      why = r.detail.empty() ? "predicate false" : r.detail;
    } else {
      ++exact;
      const double tol = pinned_tolerance(r.identity);
      worst_err = std::max(worst_err, r.max_error);
      ok = std::isfinite(r.max_error) && r.max_error <= tol;
      why = "err=" + fmt(r.max_error) + " > " + fmt(tol);
    }
    if (!ok) {
      v.ok = false;
      v.failures.push_back(r.identity + " (" + why + ")");
    }
  }
  v.summary = std::to_string(results.size()) + " lines";
  if (exact) v.summary += ", max err " + fmt(worst_err);
  if (stat) v.summary += ", max |z| " + fmt(worst_z);
  if (pred) v.summary += ", " + std::to_string(pred) + " predicates";
  return v;
}

std::vector<CheckResult> battery(const std::string& name, int series_terms = kSeriesTerms) {
  CheckConfig cfg;
  cfg.seed = kSeed;
  cfg.samples = kSamples;
  cfg.tolerance = kExactTol;
  cfg.wick_exp_terms = series_terms;
  return run_check(name, cfg);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

dsl::Options golden_options(const std::string& source) {
  dsl::Options opt;
  std::istringstream lines(source);
  for (std::string line; std::getline(lines, line);) {
    if (line.rfind("#!", 0) != 0) continue;
    std::istringstream kv(line.substr(2));
    for (std::string item; kv >> item;) {
      const auto eq = item.find('=');
      const std::string key = item.substr(0, eq), value = item.substr(eq + 1);
      if (key == "dim") opt.dim = std::stoi(value);
      else if (key == "order") opt.order = std::stoi(value);
      else if (key == "format") opt.format = value == "json" ? dsl::OutputFormat::Json : dsl::OutputFormat::Csv;
    }
  }
  return opt;
}

Verdict cli_dsl(const std::string& wickcalc, const std::filesystem::path& golden_dir) {
  Verdict v;
  std::vector<std::string> parts;

  // Golden scripts: grammar, precedence, every command and output format.
  int goldens = 0;
  for (const auto& entry : std::filesystem::directory_iterator(golden_dir)) {
    if (entry.path().extension() != ".wick") continue;
    auto out_path = entry.path();
    out_path.replace_extension(".out");
    const std::string source = slurp(entry.path());
    std::ostringstream out, err;
    dsl::Session s(golden_options(source), out, err);
    const int rc = s.run(source);
    ++goldens;
    if (rc != dsl::kExitOk || out.str() != slurp(out_path)) {
      v.ok = false;
      v.failures.push_back("golden " + entry.path().filename().string() + " differs");
    }
  }
  const auto precedence = dsl::to_source(*dsl::parse_expression("a + b <> c ^ 2"));
  if (precedence != "(a + (b <> (c ^ 2)))") {
    v.ok = false;
    v.failures.push_back("precedence: " + precedence);
  }
  if (goldens == 0) {
    v.ok = false;
    v.failures.push_back("no golden scripts found in " + golden_dir.string());
  }
  parts.push_back(std::to_string(goldens) + " goldens");

  // JSON roundtrip, bitwise.
  InstanceGenerator gen(kSeed + 16);
  int mismatches = 0;
  for (int t = 0; t < 1000; ++t) {
    const int dim = gen.integer(1, 4);
    const ChaosVector F = gen.chaos(dim, 6, 8, gen.integer(0, 8));
    const ChaosVector G = deserialize_chaos(serialize(F));
    bool same = F.dim() == G.dim() && F.max_order() == G.max_order() && F.size() == G.size();
    for (auto a = F.terms().begin(), b = G.terms().begin(); same && a != F.terms().end(); ++a, ++b)
      same = a->first == b->first && std::memcmp(&a->second, &b->second, sizeof(double)) == 0;
    if (!same) ++mismatches;
  }
  if (mismatches) {
    v.ok = false;
    v.failures.push_back(std::to_string(mismatches) + " JSON roundtrips not bitwise");
  }
  parts.push_back("1000 bitwise JSON roundtrips");

  // `wickcalc check all`: exit code 0 and a complete JSON-lines report.
  const std::string cmd = "'" + wickcalc + "' -e 'check all' 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    v.ok = false;
    v.failures.push_back("cannot start " + wickcalc);
    return v;
  }
  std::string report;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe)) report += buf;
  const int status = pclose(pipe);
  const int rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  if (rc != 0) {
    v.ok = false;
    v.failures.push_back("check all exited " + std::to_string(rc));
  }
  std::istringstream lines(report);
  std::size_t n_lines = 0, declared = 0;
  bool summary = false;
  std::vector<bool> covered(check_names().size(), false);
  try {
    for (std::string line; std::getline(lines, line);) {
      const auto j = nlohmann::json::parse(line);
      if (j.contains("summary")) {
        summary = true;
        declared = j.at("checks").get<std::size_t>();
        if (j.at("failed").get<int>() != 0) {
          v.ok = false;
          v.failures.push_back("check all reports failures");
        }
        continue;
      }
      ++n_lines;
      const auto id = j.at("identity").get<std::string>();
      for (std::size_t k = 0; k < covered.size(); ++k)
        if (id.rfind(check_names()[k] + ":", 0) == 0) covered[k] = true;
      j.at("passed").get<bool>();
      j.at("seed").get<std::uint64_t>();
    }
  } catch (const std::exception& e) {
    v.ok = false;
    v.failures.push_back(std::string("malformed report line: ") + e.what());
  }
  if (!summary || declared != n_lines) {
    v.ok = false;
    v.failures.push_back("report incomplete: " + std::to_string(n_lines) + " lines, summary declares " +
                         std::to_string(declared));
  }
  for (std::size_t k = 0; k < covered.size(); ++k)
    if (!covered[k]) {
      v.ok = false;
      v.failures.push_back("no report line for " + check_names()[k]);
    }
  parts.push_back("check all: exit " + std::to_string(rc) + ", " + std::to_string(n_lines) + " JSON lines");

  for (std::size_t i = 0; i < parts.size(); ++i) v.summary += (i ? ", " : "") + parts[i];
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: acceptance <wickcalc> <golden-dir>\n";
    return 2;
  }
  const std::string wickcalc = argv[1];
  const std::filesystem::path golden_dir = argv[2];

  struct Criterion {
    int id;
    const char* title;
    const char* battery;
  };
  const Criterion criteria[] = {
      {1, "Wick product: multi-index convolution == alternating Malliavin sum", "wick_malliavin"},
      {2, "ordinary product: Hermite linearization == Wick-gradient formula == pointwise", "product_wick_gradients"},
      {3, "isometry: E[F^2] == sum alpha! c_alpha^2", "isometry"},
      {4, "exponential vectors: eps(f) <> eps(g) == eps(f+g)", "exponential_law"},
      {5, "S-transform multiplicativity and Cameron-Martin Monte Carlo", "stransform"},
      {6, "Wick product with a Gaussian: four representations agree", "wick_gaussian_chain"},
      {7, "Stratonovich -> Ito roundtrip and S_4 == x^4", "humeyer"},
      {8, ":exp(lambda X^2/2): series (K=40), independent-copy MC, divergence", "wick_exp_square"},
      {9, "moment identity |:f:|^2 == series condition", "moment_identity"},
      {10, "independent-copy Wick ordering == symbolic Wick ordering", "icopy"},
      {11, "hypercontractivity at (2, 4, 1/sqrt3) and near-tight probe", "hypercontractivity"},
      {12, "independence iff zero contraction", "independence"},
      {13, "Wick product norm inequality at (sqrt2, sqrt2, 1)", "norm_inequality"},
      {14, "translation laws and Wick Leibniz rule", "translation"},
      {15, "renormalized product :fg: == :f: <> :g:", "renorm_product"},
  };

  int failed = 0;
  const auto report = [&](int id, const char* title, const Verdict& v) {
    std::cout << (v.ok ? "PASS" : "FAIL") << " " << id << " " << title << " [" << v.summary << "]\n";
    for (const auto& f : v.failures) std::cout << "     - " << f << "\n";
    if (!v.ok) ++failed;
  };

  for (const auto& c : criteria) {
    Verdict v;
    try {
      v = judge(battery(c.battery));
    } catch (const std::exception& e) {
      v.ok = false;
      v.summary = "exception";
      v.failures.push_back(e.what());
    }
    report(c.id, c.title, v);
    if (c.id == 8) {
      // Same grid with a longer series, to show the K=40 failures are truncation only.
      std::vector<CheckResult> series;
      for (auto& r : battery(c.battery, 80))
        if (contains(r.identity, "series K=")) series.push_back(std::move(r));
      const Verdict longer = judge(series);
      std::cout << "INFO 8 same grid with K=80: " << (longer.ok ? "within" : "outside") << " " << fmt(kSeriesTol)
                << " [" << longer.summary << "]\n";
    }
  }

  Verdict v16;
  try {
    v16 = cli_dsl(wickcalc, golden_dir);
  } catch (const std::exception& e) {
    v16.ok = false;
    v16.summary = "exception";
    v16.failures.push_back(e.what());
  }
  report(16, "CLI/DSL: goldens, bitwise JSON roundtrip, check all report", v16);

  for (const char* extra : {"pairing", "stratonovich_link", "sampling"}) {
    const Verdict v = judge(battery(extra));
    std::cout << "INFO extra " << extra << ": " << (v.ok ? "ok" : "FAILED") << " [" << v.summary << "]\n";
    for (const auto& f : v.failures) std::cout << "     - " << f << "\n";
  }

  std::cout << (16 - failed) << "/16 criteria passed\n";
  return failed ? 1 : 0;
}
