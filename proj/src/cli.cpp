#include "sponge/cli.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sponge/box_set.hpp"
#include "sponge/count_oracle.hpp"
#include "sponge/dimension_engine.hpp"
#include "sponge/errors.hpp"
#include "sponge/random_spec.hpp"
#include "sponge/ratio_check.hpp"
#include "sponge/spec_io.hpp"
#include "sponge/symbolic_measure.hpp"
#include "sponge/tangent_lab.hpp"

namespace sponge {

using Json = nlohmann::ordered_json;

std::string format_number(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.10g", value);
  return buffer;
}

namespace {

// Numbers in JSON carry 10 significant digits, like the text reports.
double rounded(double value) { return std::strtod(format_number(value).c_str(), nullptr); }

std::string full_decimal(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::string ieee_bits(double value) {
  std::uint64_t bits = 0;
  std::memcpy(&bits, &value, sizeof bits);
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "0x%016" PRIx64, bits);
  return buffer;
}

// value, value_decimal and value_bits.
void put_exact(Json& doc, const std::string& key, double value) {
  doc[key] = rounded(value);
  doc[key + "_decimal"] = full_decimal(value);
  doc[key + "_bits"] = ieee_bits(value);
}

std::string yes_no(bool value) { return value ? "yes" : "no"; }

Json violations_json(const ValidationReport& report) {
  Json list = Json::array();
  for (const Violation& v : report.violations) list.push_back({{"rule", v.rule}, {"detail", v.detail}});
  return list;
}

ValidationReport validate_any(const AnySpec& spec) {
  return std::visit(
      [](const auto& s) {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, SpongeSpec>) {
          return validate_bm(s);
        } else {
          return validate_lg(s);
        }
      },
      spec);
}

void require_valid(const AnySpec& spec) {
  const ValidationReport report = validate_any(spec);
  if (!report.ok()) {
    throw InvalidSpec(report.violations.front().rule + ": " + report.violations.front().detail);
  }
}

const SpongeSpec& require_bm(const AnySpec& spec, const std::string& command) {
  if (!std::holds_alternative<SpongeSpec>(spec)) {
    throw InvalidSpec(command + " needs a Bedford-McMullen spec");
  }
  return std::get<SpongeSpec>(spec);
}

std::vector<Rational> parse_scales(const std::vector<std::string>& texts) {
  std::vector<Rational> out;
  for (const std::string& text : texts) out.push_back(parse_rational(text));
  return out;
}

std::string digits_text(const Digit& digit) { return digit.empty() ? "()" : to_string(digit); }

Json terms_json(const DimensionReport& report) {
  Json terms = Json::array();
  for (const ClusterTerm& term : report.terms) {
    terms.push_back({{"index", term.index + 1},
                     {"max_term", rounded(term.max_term)},
                     {"min_term", rounded(term.min_term)},
                     {"argmax_prefix", term.argmax_prefix},
                     {"argmin_prefix", term.argmin_prefix}});
  }
  return terms;
}

void write_terms(std::ostream& out, const DimensionReport& report) {
  for (const ClusterTerm& term : report.terms) {
    out << "  term " << term.index + 1 << ": max " << format_number(term.max_term) << " at "
        << digits_text(term.argmax_prefix) << ", min " << format_number(term.min_term) << " at "
        << digits_text(term.argmin_prefix) << '\n';
  }
}

int cmd_validate(const RunConfig& config, const AnySpec& spec, std::ostream& out) {
  const ValidationReport report = validate_any(spec);
  const std::string type = std::holds_alternative<SpongeSpec>(spec) ? "bedford-mcmullen" : "lalley-gatzouras";
  if (config.format == "json") {
    Json doc;
    doc["type"] = type;
    doc["valid"] = report.ok();
    doc["violations"] = violations_json(report);
    doc["warnings"] = report.warnings;
    out << doc.dump(2) << '\n';
  } else {
    out << type << ": " << (report.ok() ? "valid" : "invalid") << '\n';
    for (const Violation& v : report.violations) out << "violation " << v.rule << ": " << v.detail << '\n';
    for (const std::string& w : report.warnings) out << "warning: " << w << '\n';
  }
  return report.ok() ? kExitOk : kExitValidation;
}

int cmd_dims(const RunConfig& config, const AnySpec& spec, std::ostream& out) {
  require_valid(spec);
  const DimensionReport report = std::holds_alternative<SpongeSpec>(spec)
                                     ? assouad_lower_bm(std::get<SpongeSpec>(spec))
                                     : assouad_lower_lg(std::get<LgSpongeSpec>(spec));
  if (config.format == "json") {
    Json doc;
    doc["formula"] = to_string(report.formula);
    put_exact(doc, "assouad", report.assouad);
    put_exact(doc, "lower", report.lower);
    doc["terms"] = terms_json(report);
    out << doc.dump(2) << '\n';
  } else {
    out << "formula: " << to_string(report.formula) << '\n';
    out << "assouad: " << format_number(report.assouad) << '\n';
    out << "lower: " << format_number(report.lower) << '\n';
    write_terms(out, report);
  }
  return kExitOk;
}

int cmd_compare(const RunConfig& config, const AnySpec& any, std::ostream& out) {
  const SpongeSpec& spec = require_bm(any, "compare");
  require_valid(any);
  const DimensionReport clustered = assouad_lower_bm(spec);
  const DimensionReport strict = assouad_lower_strict_order(spec);
  const DimensionDrop drop = dimension_drop(spec);
  OrderSpread spread;
  if (config.permutations) spread = strict_order_spread(spec);
  if (config.format == "json") {
    Json doc;
    Json fresh;
    put_exact(fresh, "assouad", clustered.assouad);
    put_exact(fresh, "lower", clustered.lower);
    Json old;
    put_exact(old, "assouad", strict.assouad);
    put_exact(old, "lower", strict.lower);
    old["order_dependent"] = strict.order_dependent;
    doc[to_string(clustered.formula)] = fresh;
    doc[to_string(strict.formula)] = old;
    put_exact(doc, "drop", drop.drop);
    doc["equality_condition_holds"] = drop.equality_condition_holds;
    doc["cluster_condition"] = drop.cluster_condition;
    if (config.permutations) {
      doc["orderings"] = spread.orderings;
      doc["assouad_range"] = {rounded(spread.min_assouad), rounded(spread.max_assouad)};
      doc["lower_range"] = {rounded(spread.min_lower), rounded(spread.max_lower)};
    }
    out << doc.dump(2) << '\n';
  } else {
    out << to_string(clustered.formula) << ": assouad " << format_number(clustered.assouad) << ", lower "
        << format_number(clustered.lower) << '\n';
    out << to_string(strict.formula) << ": assouad " << format_number(strict.assouad) << ", lower "
        << format_number(strict.lower) << (strict.order_dependent ? " (order dependent)" : "") << '\n';
    out << "drop: " << format_number(drop.drop) << '\n';
    out << "equality_condition_holds: " << yes_no(drop.equality_condition_holds) << '\n';
    for (std::size_t l = 0; l < drop.cluster_condition.size(); ++l) {
      out << "  cluster " << l + 1 << ": " << yes_no(drop.cluster_condition[l]) << '\n';
    }
    if (config.permutations) {
      out << "orderings: " << spread.orderings << '\n';
      out << "assouad range: [" << format_number(spread.min_assouad) << ", " << format_number(spread.max_assouad)
          << "]\n";
      out << "lower range: [" << format_number(spread.min_lower) << ", " << format_number(spread.max_lower) << "]\n";
    }
  }
  return kExitOk;
}

int cmd_measure_check(const RunConfig& config, const AnySpec& any, std::ostream& out) {
  require_valid(any);
  if (config.trials < 1) throw InvalidScale("--trials must be positive");
  RatioBoundReport report;
  if (const auto* bm = std::get_if<SpongeSpec>(&any)) {
    report = ratio_bound_check(*bm, pcu_weights(*bm), config.trials, config.seed);
  } else {
    const auto& lg = std::get<LgSpongeSpec>(any);
    const ClusterStructure clusters = lg_cluster(lg);
    report = ratio_bound_check(lg, lg_weights(lg, clusters, lg_moran_exponents(lg, clusters)), config.trials,
                               config.seed);
  }
  if (config.format == "csv") {
    out << "# seed=" << report.seed << " trials=" << report.trials << '\n' << ratio_csv(report);
  } else if (config.format == "json") {
    Json doc;
    doc["seed"] = report.seed;
    doc["trials"] = report.trials;
    doc["assouad"] = rounded(report.assouad);
    doc["lower"] = rounded(report.lower);
    doc["upper_constant"] = rounded(report.upper_constant);
    doc["lower_constant"] = rounded(report.lower_constant);
    doc["max_normalized_upper"] = rounded(report.max_normalized_upper);
    doc["min_normalized_lower"] = rounded(report.min_normalized_lower);
    doc["violations"] = report.violations;
    out << doc.dump(2) << '\n';
  } else {
    out << "seed: " << report.seed << '\n';
    out << "trials: " << report.trials << '\n';
    out << "upper: ratio <= " << format_number(report.upper_constant) << " (R/r)^" << format_number(report.assouad)
        << ", worst " << format_number(report.max_normalized_upper) << '\n';
    out << "lower: ratio >= " << format_number(report.lower_constant) << " (R/r)^" << format_number(report.lower)
        << ", worst " << format_number(report.min_normalized_lower) << '\n';
    out << "violations: " << report.violations.size() << '\n';
  }
  return report.violations.empty() ? kExitOk : kExitInternal;
}

int tangent_lg(const RunConfig& config, const LgSpongeSpec& spec, std::ostream& out) {
  std::vector<Rational> scales = parse_scales(config.scales);
  if (scales.empty()) {
    const Rational c = spec.min_contraction();
    scales = {c * c, c * c * c, c * c * c * c};
  }
  const ClusterStructure clusters = lg_cluster(spec);
  const std::vector<Digit> twists = select_twists(spec, clusters);
  Json rows = Json::array();
  for (const Rational& r : scales) {
    const TangentWord omega = omega_R(spec, r);
    const std::size_t length = std::max<std::size_t>(omega.word.head().size(), 1);
    std::vector<Digit> symbols = omega.word.prefix(length);
    rows.push_back({{"R", to_string(r)},
                    {"cluster_depths", omega.depths.cluster},
                    {"twist_prefix", omega.twist_prefix},
                    {"word", symbols}});
  }
  if (config.format == "json") {
    Json doc;
    doc["twists"] = twists;
    doc["scales"] = rows;
    out << doc.dump(2) << '\n';
  } else {
    out << "twists:";
    for (const Digit& twist : twists) out << ' ' << to_string(twist);
    out << '\n';
    for (const Json& row : rows) {
      out << "R " << row["R"].get<std::string>() << ": depths";
      for (int k : row["cluster_depths"]) out << ' ' << k;
      out << ", twist prefix " << row["twist_prefix"].get<std::size_t>() << '\n';
    }
  }
  return kExitOk;
}

int cmd_tangent(const RunConfig& config, const AnySpec& any, std::ostream& out) {
  require_valid(any);
  if (const auto* lg = std::get_if<LgSpongeSpec>(&any)) return tangent_lg(config, *lg, out);
  const SpongeSpec& spec = std::get<SpongeSpec>(any);
  std::vector<Rational> scales = parse_scales(config.scales);
  if (scales.empty()) {
    for (int k : {4, 6, 8}) scales.push_back(inverse_power(spec.bases.back(), k));
  }
  const int level = config.depths.empty() ? 0 : config.depths.front();
  const SweepReport sweep = convergence_sweep(spec, scales, level, kDefaultSweepBudget, config.budget);
  std::vector<ContainmentResult> checks;
  bool all_contained = true;
  for (const Rational& r : scales) {
    checks.push_back(containment_check(spec, r, 4, config.budget));
    all_contained = all_contained && checks.back().contained;
  }
  if (config.format == "json") {
    Json doc;
    doc["resolution"] = sweep.resolution;
    Json rows = Json::array();
    for (std::size_t i = 0; i < scales.size(); ++i) {
      const SweepRow& row = sweep.rows[i];
      const ContainmentResult& check = checks[i];
      Json item;
      item["R"] = to_string(row.big_r);
      item["cluster_depths"] = row.cluster_depths;
      item["contained"] = check.contained;
      item["witness"] = check.witness ? Json(*check.witness) : Json(nullptr);
      item["zoomed_cells"] = row.zoomed_cells;
      item["product_cells"] = row.product_cells;
      item["distance_lower"] = rounded(row.distance.lower);
      item["distance_upper"] = rounded(row.distance.upper);
      rows.push_back(item);
    }
    doc["scales"] = rows;
    doc["nonincreasing"] = sweep.nonincreasing;
    doc["contained_every_stage"] = all_contained && sweep.contained_every_stage;
    out << doc.dump(2) << '\n';
  } else {
    out << "resolution:";
    for (int e : sweep.resolution) out << ' ' << e;
    out << '\n';
    for (std::size_t i = 0; i < scales.size(); ++i) {
      const SweepRow& row = sweep.rows[i];
      out << "R " << to_string(row.big_r) << ": depths";
      for (int k : row.cluster_depths) out << ' ' << k;
      out << ", contained " << yes_no(checks[i].contained) << ", d_H in [" << format_number(row.distance.lower)
          << ", " << format_number(row.distance.upper) << "] over " << row.zoomed_cells << " and "
          << row.product_cells << " cells\n";
    }
    out << "nonincreasing: " << yes_no(sweep.nonincreasing) << '\n';
  }
  return all_contained && sweep.contained_every_stage ? kExitOk : kExitInternal;
}

int cmd_oracle(const RunConfig& config, const AnySpec& any, std::ostream& out) {
  const SpongeSpec& spec = require_bm(any, "oracle");
  require_valid(any);
  std::vector<int> refinements = config.depths;
  if (refinements.empty()) refinements = {4, 5, 6, 7, 8, 9, 10};
  const CountTable table = build_count_table(spec, refinements);
  if (config.format == "csv") {
    out << count_csv(table);
    return kExitOk;
  }
  const ExponentFit fit = fit_exponent(table);
  const DimensionReport formula = assouad_lower_bm(spec);
  if (config.format == "json") {
    Json doc;
    doc["assouad_estimate"] = rounded(fit.assouad_estimate);
    doc["lower_estimate"] = rounded(fit.lower_estimate);
    doc["assouad_formula"] = rounded(formula.assouad);
    doc["lower_formula"] = rounded(formula.lower);
    Json rows = Json::array();
    for (const FitRow& row : fit.rows) {
      rows.push_back({{"m", row.m},
                      {"log_max", rounded(row.log_max)},
                      {"log_min", rounded(row.log_min)},
                      {"incremental_max", rounded(row.incremental_max)},
                      {"incremental_min", rounded(row.incremental_min)},
                      {"cumulative_max", rounded(row.cumulative_max)},
                      {"cumulative_min", rounded(row.cumulative_min)},
                      {"residual_max", rounded(row.residual_max)},
                      {"residual_min", rounded(row.residual_min)}});
    }
    doc["rows"] = rows;
    out << doc.dump(2) << '\n';
  } else {
    out << "assouad estimate: " << format_number(fit.assouad_estimate) << " (formula "
        << format_number(formula.assouad) << ")\n";
    out << "lower estimate: " << format_number(fit.lower_estimate) << " (formula " << format_number(formula.lower)
        << ")\n";
    out << "m, incremental max slope, incremental min slope, cumulative max slope, cumulative min slope\n";
    for (const FitRow& row : fit.rows) {
      out << row.m << ", " << format_number(row.incremental_max) << ", " << format_number(row.incremental_min) << ", "
          << format_number(row.cumulative_max) << ", " << format_number(row.cumulative_min) << '\n';
    }
  }
  return kExitOk;
}

int cmd_export(const RunConfig& config, const AnySpec& any, std::ostream& out) {
  const SpongeSpec& spec = require_bm(any, "export-geometry");
  require_valid(any);
  const int depth = config.depths.empty() ? 2 : config.depths.front();
  BoxSet set = prefractal(spec, depth, config.budget);
  set.normalize();
  if (config.format == "voxel") {
    out << export_voxels(set);
  } else if (config.format == "json") {
    Json doc;
    doc["depth"] = depth;
    Json axes = Json::array();
    for (const AxisGrid& axis : set.axes()) axes.push_back({{"base", axis.base}, {"depth", axis.depth}});
    doc["axes"] = axes;
    Json cells = Json::array();
    for (std::size_t box = 0; box < set.size(); ++box) {
      Json cell = Json::array();
      for (int a = 0; a < set.dims(); ++a) cell.push_back(set.lo(box, a));
      cells.push_back(cell);
    }
    doc["cells"] = cells;
    out << doc.dump() << '\n';
  } else if (config.format == "csv") {
    std::string text = export_intervals(set);
    for (char& c : text) {
      if (c == ' ') c = ',';
    }
    out << text;
  } else {
    out << export_intervals(set);
  }
  return kExitOk;
}

int cmd_generate(const RunConfig& config, std::ostream& out) {
  out << spec_to_json(random_spec(config.seed)) << '\n';
  return kExitOk;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::ofstream file;
  std::ostringstream buffer;
  try {
    int status = kExitOk;
    if (config.command == "generate") {
      status = cmd_generate(config, buffer);
    } else {
      if (config.input.empty()) throw ParseError("--input is required");
      const AnySpec spec = load_spec(config.input);
      if (config.command == "validate") {
        status = cmd_validate(config, spec, buffer);
      } else if (config.command == "dims") {
        status = cmd_dims(config, spec, buffer);
      } else if (config.command == "compare") {
        status = cmd_compare(config, spec, buffer);
      } else if (config.command == "measure-check") {
        status = cmd_measure_check(config, spec, buffer);
      } else if (config.command == "tangent") {
        status = cmd_tangent(config, spec, buffer);
      } else if (config.command == "oracle") {
        status = cmd_oracle(config, spec, buffer);
      } else if (config.command == "export-geometry") {
        status = cmd_export(config, spec, buffer);
      } else {
        throw ParseError("unknown command " + config.command);
      }
    }
    if (config.output.empty()) {
      out << buffer.str();
    } else {
      file.open(config.output, std::ios::binary);
      if (!file) throw Error("cannot write " + config.output);
      file << buffer.str();
    }
    if (status == kExitValidation) err << "error: validation failed\n";
    if (status == kExitInternal) err << "error: a checked property failed\n";
    return status;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const InvalidSpec& e) {
    err << "invalid spec: " << e.what() << '\n';
    return kExitValidation;
  } catch (const InvalidScale& e) {
    err << "invalid scale: " << e.what() << '\n';
    return kExitValidation;
  } catch (const RTooLarge& e) {
    err << "invalid scale: " << e.what() << '\n';
    return kExitValidation;
  } catch (const InsufficientData& e) {
    err << "invalid request: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Assouad and lower dimensions of self-affine sponges", "sponge"};
  app.require_subcommand(1);
  RunConfig config;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"validate", "check a spec file against the model rules"},
      {"dims", "Assouad and lower dimension"},
      {"compare", "clustered against per-coordinate formula"},
      {"measure-check", "sample the measure ratio bounds"},
      {"tangent", "weak tangent containment and convergence"},
      {"oracle", "brute-force sub-cube counts and fitted exponents"},
      {"export-geometry", "write a pre-fractal"},
      {"generate", "print a random valid Bedford-McMullen spec"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("-i,--input", config.input, "spec file (JSON)");
    sub->add_option("-o,--output", config.output, "write the report here instead of stdout");
    sub->add_option("--seed", config.seed, "random seed")->capture_default_str();
    sub->add_option("--trials", config.trials, "number of sampled trials")->capture_default_str();
    sub->add_option("--depths", config.depths, "depth list (oracle refinements, export depth, tangent resolution)")
        ->delimiter(',');
    sub->add_option("--scales", config.scales, "scales R as p/q or decimals")->delimiter(',');
    sub->add_option("--budget", config.budget, "box budget")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--format", config.format, "text, json, csv (voxel for export-geometry)")
        ->check(CLI::IsMember({"text", "json", "csv", "voxel"}))
        ->capture_default_str();
    if (name == "compare") sub->add_flag("--permutations", config.permutations, "range over in-cluster orderings");
    sub->callback([&config, name = name] { config.command = name; });
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "parse error: " << e.what() << '\n';
    return kExitParse;
  }
  if (config.format == "voxel" && config.command != "export-geometry") {
    err << "parse error: --format voxel applies to export-geometry only\n";
    return kExitParse;
  }
  return run(config, out, err);
}

}  // namespace sponge
