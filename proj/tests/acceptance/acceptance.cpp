// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sponge/cli.hpp"
#include "sponge/count_oracle.hpp"
#include "sponge/dimension_engine.hpp"
#include "sponge/random_spec.hpp"
#include "sponge/ratio_check.hpp"
#include "sponge/spec_io.hpp"
#include "sponge/sponge_model.hpp"
#include "sponge/symbolic_measure.hpp"
#include "sponge/tangent_lab.hpp"

using namespace sponge;
using Json = nlohmann::json;

namespace {

const std::string kData = SPONGE_TEST_DATA;

struct Outcome {
  bool pass = false;
  std::string detail;
};

Json cli_json(const std::vector<std::string>& args, int& status) {
  std::ostringstream out, err;
  status = run_cli(args, out, err);
  if (status != kExitOk) return Json();
  return Json::parse(out.str());
}

SpongeSpec load(const std::string& name) { return std::get<SpongeSpec>(load_spec(kData + "/" + name)); }

std::string fmt(double v) { return format_number(v); }

Outcome dims_value(const std::string& file, double expected, double tol) {
  int status = 0;
  const Json doc = cli_json({"dims", "--input", kData + "/" + file, "--format", "json"}, status);
  if (status != kExitOk) return {false, "exit " + std::to_string(status)};
  const double value = std::stod(doc["assouad_decimal"].get<std::string>());
  return {std::abs(value - expected) <= tol, "assouad " + doc["assouad_decimal"].get<std::string>()};
}

Outcome criterion3() {
  int status = 0;
  const Json doc = cli_json({"compare", "--input", kData + "/modified.json", "--format", "json"}, status);
  if (status != kExitOk) return {false, "exit " + std::to_string(status)};
  const double old = std::stod(doc["bm-per-coordinate"]["assouad_decimal"].get<std::string>());
  const double drop = std::stod(doc["drop_decimal"].get<std::string>());
  const bool holds = doc["equality_condition_holds"].get<bool>();
  const double expected = 2.0 + std::log(2.0) / std::log(3.0);
  return {std::abs(old - expected) <= 1e-9 && drop > 0 && !holds,
          "old " + fmt(old) + ", drop " + fmt(drop) + ", equality " + (holds ? "true" : "false")};
}

Outcome criterion4() {
  std::mt19937_64 engine(20240601);
  double worst = 0;
  for (int i = 0; i < 50; ++i) {
    const SpongeSpec spec = random_spec(engine, {4, 5, 12});
    const DimensionReport bm = assouad_lower_bm(spec);
    const DimensionReport lg = assouad_lower_lg(uniform_grid_encoding(spec));
    worst = std::max({worst, std::abs(bm.assouad - lg.assouad), std::abs(bm.lower - lg.lower)});
  }
  return {worst <= 1e-9, "50 specs, max difference " + fmt(worst)};
}

Outcome criterion5() {
  std::size_t violations = 0;
  std::string detail;
  for (const char* name : {"fig1.json", "modified.json"}) {
    const SpongeSpec spec = load(name);
    const RatioBoundReport report = ratio_bound_check(spec, pcu_weights(spec), 10000, 42);
    violations += report.violations.size();
    detail += std::string(detail.empty() ? "" : "; ") + name + " " + std::to_string(report.violations.size()) +
              " violations, max normalized " + fmt(report.max_normalized_upper) + " <= " +
              fmt(report.upper_constant) + ", min normalized " + fmt(report.min_normalized_lower) +
              " >= " + fmt(report.lower_constant);
  }
  return {violations == 0, detail};
}

Outcome criterion6() {
  bool ok = true;
  std::size_t witnesses = 0;
  int checks = 0;
  for (const char* name : {"fig1.json", "modified.json"}) {
    const SpongeSpec spec = load(name);
    for (int k : {4, 5, 6}) {
      const ContainmentResult result = containment_check(spec, inverse_power(3, k));
      ok = ok && result.contained;
      witnesses += result.witness ? 1 : 0;
      ++checks;
    }
  }
  return {ok && witnesses == 0, std::to_string(checks) + " checks, " + std::to_string(witnesses) + " witnesses"};
}

Outcome criterion7() {
  const SpongeSpec spec = load("fig1.json");
  const SweepReport sweep =
      convergence_sweep(spec, {inverse_power(3, 4), inverse_power(3, 6), inverse_power(3, 8)});
  std::string detail = "resolution";
  for (int e : sweep.resolution) detail += " " + std::to_string(e);
  detail += ", d_H upper";
  for (const SweepRow& row : sweep.rows) detail += " " + fmt(row.distance.upper);
  return {sweep.nonincreasing, detail};
}

Outcome criterion8() {
  const std::vector<int> ms{4, 5, 6, 7, 8, 9, 10};
  const ExponentFit fig = fit_exponent(build_count_table(load("fig1.json"), ms));
  const ExponentFit mod = fit_exponent(build_count_table(load("modified.json"), ms));
  const double target = 1.0 + std::log(4.0) / std::log(3.0);
  std::cout << "  m   fig1 incremental  fig1 cumulative  modified incremental  modified cumulative\n";
  for (std::size_t i = 1; i < ms.size(); ++i) {
    std::printf("  %-3d %-17s %-16s %-21s %s\n", ms[i], fmt(fig.rows[i].incremental_max).c_str(),
                fmt(fig.rows[i].cumulative_max).c_str(), fmt(mod.rows[i].incremental_max).c_str(),
                fmt(mod.rows[i].cumulative_max).c_str());
  }
  return {std::abs(fig.assouad_estimate - 2.0) <= 0.2 && std::abs(mod.assouad_estimate - target) <= 0.2,
          "fig1 " + fmt(fig.assouad_estimate) + ", modified " + fmt(mod.assouad_estimate)};
}

Outcome criterion9() {
  std::mt19937_64 engine(99);
  std::uniform_int_distribution<int> count(2, 10);
  std::uniform_int_distribution<int> numerator(1, 999);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    std::vector<Rational> ratios;
    const int n = count(engine);
    for (int j = 0; j < n; ++j) ratios.emplace_back(numerator(engine), 1000);
    worst = std::max(worst, moran_solve(ratios).residual);
  }
  const double half = moran_solve(std::vector<Rational>{Rational(1, 2), Rational(1, 2)}).exponent;
  const double quarter =
      moran_solve(std::vector<Rational>{Rational(1, 4), Rational(1, 4), Rational(1, 4)}).exponent;
  const bool analytic = std::abs(half - 1.0) <= 1e-12 && std::abs(quarter - std::log(3.0) / std::log(4.0)) <= 1e-12;
  return {worst <= 1e-12 && analytic, "max residual " + fmt(worst) + ", analytic " + fmt(half) + " " + fmt(quarter)};
}

Outcome criterion10() {
  std::mt19937_64 engine(314159);
  int specs = 0;
  int comparisons = 0;
  int mismatches = 0;
  for (; specs < 240; ++specs) {
    const SpongeSpec spec = random_spec(engine, {3, 3, 5});
    for (int k = 0; k <= 3; ++k) {
      for (int m = 0; k + m <= 3; ++m) {
        const SubcubeCounts dp = subcube_counts(spec, k, m);
        const SubcubeCounts naive = subcube_counts_naive(spec, k, m);
        ++comparisons;
        if (dp.max_count != naive.max_count || dp.min_count != naive.min_count) ++mismatches;
      }
    }
  }
  return {mismatches == 0, std::to_string(specs) + " specs, " + std::to_string(comparisons) + " comparisons, " +
                               std::to_string(mismatches) + " mismatches"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, 1, [] { return dims_value("fig1.json", 2.0, 1e-12); }},
      {2, 1, [] { return dims_value("modified.json", 1.0 + std::log(4.0) / std::log(3.0), 1e-9); }},
      {3, 1, criterion3},
      {4, 30, criterion4},
      {5, 60, criterion5},
      {6, 60, criterion6},
      {7, 120, criterion7},
      {8, 120, criterion8},
      {9, 10, criterion9},
      {10, 120, criterion10},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("threw: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = outcome.pass && seconds < c.limit_seconds;
    if (!pass) ++failures;
    std::printf("criterion %2d: %s (%s; %.2fs, limit %.0fs)\n", c.id, pass ? "PASS" : "FAIL", outcome.detail.c_str(),
                seconds, c.limit_seconds);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
