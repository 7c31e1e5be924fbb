#include "sponge/count_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "sponge/errors.hpp"
#include "sponge/symbolic_measure.hpp"

namespace sponge {
namespace {

constexpr int kMaxPositions = 100000;

void require_valid(const SpongeSpec& spec) {
  const ValidationReport report = validate_bm(spec);
  if (!report.ok()) throw InvalidSpec(report.violations.front().rule + ": " + report.violations.front().detail);
}

// For each symbol position, the number of clusters resolved by the anchor
// cube and by the sub-cubes.
struct PositionLevels {
  std::vector<int> anchor;
  std::vector<int> refined;
};

PositionLevels position_levels(const SpongeSpec& spec, int k, int m) {
  if (k < 0 || m < 0) throw Error("depths must be nonnegative");
  if (k + m > kMaxPositions) throw BudgetExceeded("depth " + std::to_string(k + m) + " is too large");
  const int n1 = spec.bases.front();
  const std::vector<int> at_big = depths_bm(spec, inverse_power(n1, k)).cluster;
  const std::vector<int> at_small = depths_bm(spec, inverse_power(n1, k + m)).cluster;
  PositionLevels out;
  for (int t = 1; t <= at_small.front(); ++t) {
    out.anchor.push_back(static_cast<int>(std::count_if(at_big.begin(), at_big.end(), [t](int d) { return d >= t; })));
    out.refined.push_back(
        static_cast<int>(std::count_if(at_small.begin(), at_small.end(), [t](int d) { return d >= t; })));
  }
  return out;
}

double log_big(const BigInt& value) {
  // Split off a power of two so huge counts stay finite.
  const std::size_t bits = msb(value);
  if (bits < 1000) return std::log(value.convert_to<double>());
  const std::size_t shift = bits - 60;
  const BigInt top = value >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

}  // namespace

SubcubeCounts subcube_counts(const SpongeSpec& spec, int k, int m) {
  require_valid(spec);
  const ClusterStructure clusters = cluster(spec);
  const DigitTree tree = digit_tree(spec, clusters);
  const PositionLevels levels = position_levels(spec, k, m);
  // Positions are independent, so each factor is an extreme over D_anchor of
  // the number of extensions into D_refined.
  std::map<std::pair<int, int>, std::pair<long, long>> memo;
  SubcubeCounts out{1, 1};
  for (std::size_t t = 0; t < levels.anchor.size(); ++t) {
    const std::pair<int, int> key{levels.anchor[t], levels.refined[t]};
    auto it = memo.find(key);
    if (it == memo.end()) {
      long best = 0;
      long worst = -1;
      for (const auto& entry : tree.nodes(key.first)) {
        const long count = tree.extension_count(entry.first, key.second);
        best = std::max(best, count);
        worst = worst < 0 ? count : std::min(worst, count);
      }
      it = memo.emplace(key, std::make_pair(best, worst)).first;
    }
    out.max_count *= it->second.first;
    out.min_count *= it->second.second;
  }
  return out;
}

SubcubeCounts subcube_counts_naive(const SpongeSpec& spec, int k, int m, std::size_t budget) {
  require_valid(spec);
  const ClusterStructure clusters = cluster(spec);
  const std::vector<Digit> leaves = digit_tree(spec, clusters).leaves();
  const PositionLevels levels = position_levels(spec, k, m);
  const std::size_t length = levels.anchor.size();
  double words = std::pow(static_cast<double>(leaves.size()), static_cast<double>(length));
  if (words > static_cast<double>(budget)) {
    throw BudgetExceeded("naive enumeration of " + std::to_string(static_cast<long double>(words)) + " words");
  }
  std::map<std::vector<Digit>, std::set<std::vector<Digit>>> inside;
  std::vector<std::size_t> choice(length, 0);
  while (true) {
    std::vector<Digit> anchor;
    std::vector<Digit> sub;
    for (std::size_t t = 0; t < length; ++t) {
      const Digit& symbol = leaves[choice[t]];
      anchor.push_back(prefix_of(symbol, clusters.begin(levels.anchor[t])));
      sub.push_back(prefix_of(symbol, clusters.begin(levels.refined[t])));
    }
    inside[anchor].insert(sub);
    std::size_t t = 0;
    while (t < length && ++choice[t] == leaves.size()) choice[t++] = 0;
    if (t == length) break;
  }
  SubcubeCounts out{0, 0};
  bool first = true;
  for (const auto& entry : inside) {
    const BigInt count = entry.second.size();
    out.max_count = first ? count : std::max(out.max_count, count);
    out.min_count = first ? count : std::min(out.min_count, count);
    first = false;
  }
  return out;
}

CountTable build_count_table(const SpongeSpec& spec, const std::vector<int>& refinements, int anchor_factor,
                             int anchor_offset) {
  CountTable table;
  table.base = spec.bases.front();
  for (int m : refinements) {
    for (int k = 0; k <= anchor_factor * m + anchor_offset; ++k) table.entries[{k, m}] = subcube_counts(spec, k, m);
  }
  return table;
}

ExponentFit fit_exponent(const CountTable& table) {
  std::map<int, std::pair<BigInt, BigInt>> by_m;
  for (const auto& [key, counts] : table.entries) {
    auto it = by_m.find(key.second);
    if (it == by_m.end()) {
      by_m.emplace(key.second, std::make_pair(counts.max_count, counts.min_count));
    } else {
      it->second.first = std::max(it->second.first, counts.max_count);
      it->second.second = std::min(it->second.second, counts.min_count);
    }
  }
  if (by_m.size() < 3) throw InsufficientData("need at least three refinement levels, have " + std::to_string(by_m.size()));
  ExponentFit fit;
  const double log_base = std::log(static_cast<double>(table.base));
  for (const auto& [m, counts] : by_m) {
    FitRow row;
    row.m = m;
    row.log_scale_ratio = m * log_base;
    row.log_max = log_big(counts.first);
    row.log_min = log_big(counts.second);
    if (!fit.rows.empty()) {
      const FitRow& prev = fit.rows.back();
      const double run = row.log_scale_ratio - prev.log_scale_ratio;
      row.incremental_max = (row.log_max - prev.log_max) / run;
      row.incremental_min = (row.log_min - prev.log_min) / run;
      const FitRow& first = fit.rows.front();
      const double span = row.log_scale_ratio - first.log_scale_ratio;
      row.cumulative_max = (row.log_max - first.log_max) / span;
      row.cumulative_min = (row.log_min - first.log_min) / span;
    }
    fit.rows.push_back(row);
  }
  const double n = static_cast<double>(fit.rows.size());
  double mean_x = 0, mean_max = 0, mean_min = 0;
  for (const FitRow& row : fit.rows) {
    mean_x += row.log_scale_ratio / n;
    mean_max += row.log_max / n;
    mean_min += row.log_min / n;
  }
  double sxx = 0, sxy_max = 0, sxy_min = 0;
  for (const FitRow& row : fit.rows) {
    const double dx = row.log_scale_ratio - mean_x;
    sxx += dx * dx;
    sxy_max += dx * (row.log_max - mean_max);
    sxy_min += dx * (row.log_min - mean_min);
  }
  if (sxx == 0) throw InsufficientData("refinement levels must differ");
  fit.assouad_estimate = sxy_max / sxx;
  fit.lower_estimate = sxy_min / sxx;
  for (FitRow& row : fit.rows) {
    const double dx = row.log_scale_ratio - mean_x;
    row.residual_max = row.log_max - (mean_max + fit.assouad_estimate * dx);
    row.residual_min = row.log_min - (mean_min + fit.lower_estimate * dx);
  }
  return fit;
}

std::string count_csv(const CountTable& table) {
  std::ostringstream out;
  out.precision(10);
  out << "k,m,max_count,min_count,incremental_slope\n";
  const double log_base = std::log(static_cast<double>(table.base));
  const std::pair<int, int>* previous = nullptr;
  const SubcubeCounts* previous_counts = nullptr;
  for (const auto& [key, counts] : table.entries) {
    out << key.first << ',' << key.second << ',' << counts.max_count << ',' << counts.min_count << ',';
    if (previous && previous->first == key.first) {
      out << (log_big(counts.max_count) - log_big(previous_counts->max_count)) /
                 ((key.second - previous->second) * log_base);
    }
    out << '\n';
    previous = &key;
    previous_counts = &counts;
  }
  return out.str();
}

}  // namespace sponge
