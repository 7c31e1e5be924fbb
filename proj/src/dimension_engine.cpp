#include "sponge/dimension_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sponge/errors.hpp"

namespace sponge {

std::string to_string(Formula formula) {
  switch (formula) {
    case Formula::kClusteredCounts: return "bm-clustered";
    case Formula::kClusteredMoran: return "lg-clustered";
    case Formula::kPerCoordinate: return "bm-per-coordinate";
  }
  return "unknown";
}

namespace {

void require_valid(const SpongeSpec& spec) {
  ValidationReport report = validate_bm(spec);
  if (!report.ok()) throw InvalidSpec(report.violations.front().rule + ": " + report.violations.front().detail);
}

// Picks the extreme value over an ordered map; ties keep the first
// (lexicographically smallest) key.
template <typename Value>
struct Extremes {
  Value max{};
  Value min{};
  Digit argmax;
  Digit argmin;
};

template <typename Value>
Extremes<Value> extremes(const std::map<Digit, Value>& values) {
  Extremes<Value> out;
  bool first = true;
  for (const auto& [prefix, value] : values) {
    if (first || value > out.max) {
      out.max = value;
      out.argmax = prefix;
    }
    if (first || value < out.min) {
      out.min = value;
      out.argmin = prefix;
    }
    first = false;
  }
  return out;
}

DimensionReport finish(DimensionReport report) {
  for (const ClusterTerm& term : report.terms) {
    report.assouad += term.max_term;
    report.lower += term.min_term;
  }
  return report;
}

double strict_order_assouad(const std::vector<int>& bases, const CoordinateCounts& counts, double* lower) {
  double upper = 0;
  double low = 0;
  for (std::size_t l = 0; l < bases.size(); ++l) {
    const double scale = std::log(static_cast<double>(bases[l]));
    upper += std::log(static_cast<double>(counts.max_at(static_cast<int>(l)))) / scale;
    low += std::log(static_cast<double>(counts.min_at(static_cast<int>(l)))) / scale;
  }
  if (lower) *lower = low;
  return upper;
}

}  // namespace

DimensionReport assouad_lower_bm(const SpongeSpec& spec) {
  require_valid(spec);
  const ClusterStructure clusters = cluster(spec);
  const DigitTree tree = digit_tree(spec, clusters);
  DimensionReport report;
  report.formula = Formula::kClusteredCounts;
  for (int l = 0; l < clusters.count(); ++l) {
    std::map<Digit, int> counts;
    for (const auto& [prefix, node] : tree.nodes(l)) counts[prefix] = node.child_count();
    const auto ext = extremes(counts);
    const double scale = std::log(static_cast<double>(clusters.bases[l]));
    report.terms.push_back({l, std::log(static_cast<double>(ext.max)) / scale,
                            std::log(static_cast<double>(ext.min)) / scale, ext.argmax, ext.argmin});
  }
  return finish(std::move(report));
}

DimensionReport assouad_lower_strict_order(const SpongeSpec& spec) {
  require_valid(spec);
  const CoordinateCounts counts = per_coordinate_counts(spec);
  DimensionReport report;
  report.formula = Formula::kPerCoordinate;
  for (int l = 0; l < spec.dims(); ++l) {
    const auto ext = extremes(counts.counts[l]);
    const double scale = std::log(static_cast<double>(spec.bases[l]));
    report.terms.push_back({l, std::log(static_cast<double>(ext.max)) / scale,
                            std::log(static_cast<double>(ext.min)) / scale, ext.argmax, ext.argmin});
    if (l > 0 && spec.bases[l] == spec.bases[l - 1]) report.order_dependent = true;
  }
  return finish(std::move(report));
}

OrderSpread strict_order_spread(const SpongeSpec& spec) {
  require_valid(spec);
  const ClusterStructure clusters = cluster(spec);
  std::vector<std::vector<int>> orders(clusters.count());
  for (int l = 0; l < clusters.count(); ++l) {
    orders[l].resize(clusters.sizes[l]);
    std::iota(orders[l].begin(), orders[l].end(), clusters.begin(l));
  }
  OrderSpread spread;
  bool first = true;
  // Odometer over the per-cluster permutations.
  while (true) {
    std::vector<int> order;
    for (const auto& block : orders) order.insert(order.end(), block.begin(), block.end());
    SpongeSpec permuted = spec;
    for (Digit& digit : permuted.digits) {
      Digit copy(digit.size());
      for (std::size_t l = 0; l < order.size(); ++l) copy[l] = digit[order[l]];
      digit = std::move(copy);
    }
    double lower = 0;
    const double upper = strict_order_assouad(permuted.bases, per_coordinate_counts(permuted), &lower);
    if (first) {
      spread = {upper, upper, lower, lower, 0};
      first = false;
    }
    spread.min_assouad = std::min(spread.min_assouad, upper);
    spread.max_assouad = std::max(spread.max_assouad, upper);
    spread.min_lower = std::min(spread.min_lower, lower);
    spread.max_lower = std::max(spread.max_lower, lower);
    ++spread.orderings;
    int l = clusters.count() - 1;
    while (l >= 0 && !std::next_permutation(orders[l].begin(), orders[l].end())) --l;
    if (l < 0) break;
  }
  return spread;
}

DimensionDrop dimension_drop(const SpongeSpec& spec) {
  const DimensionReport clustered = assouad_lower_bm(spec);
  const DimensionReport strict = assouad_lower_strict_order(spec);
  const ClusterStructure clusters = cluster(spec);
  const DigitTree tree = digit_tree(spec, clusters);
  const CoordinateCounts counts = per_coordinate_counts(spec);
  DimensionDrop out;
  out.drop = strict.assouad - clustered.assouad;
  out.equality_condition_holds = true;
  for (int l = 0; l < clusters.count(); ++l) {
    long best = 0;
    for (const auto& entry : tree.nodes(l)) best = std::max<long>(best, entry.second.child_count());
    long product = 1;
    for (int coordinate = clusters.begin(l); coordinate < clusters.end(l); ++coordinate) {
      product *= counts.max_at(coordinate);
    }
    out.cluster_condition.push_back(best == product);
    out.equality_condition_holds = out.equality_condition_holds && best == product;
  }
  return out;
}

MoranSolution moran_solve(std::span<const Rational> ratios) {
  if (ratios.empty()) throw InvalidRatio("moran_solve: empty ratio list");
  std::vector<double> c;
  c.reserve(ratios.size());
  for (const Rational& ratio : ratios) {
    if (ratio <= 0 || ratio > 1) throw InvalidRatio("moran_solve: ratio " + to_string(ratio) + " outside (0,1]");
    c.push_back(to_double(ratio));
  }
  if (c.size() == 1) return {0.0, 0.0, 0};
  if (std::any_of(ratios.begin(), ratios.end(), [](const Rational& r) { return r == 1; })) {
    throw NoSolution("moran_solve: a ratio equal to 1 among several maps keeps the sum above 1");
  }
  std::sort(c.begin(), c.end());
  auto excess = [&](double s) {
    double sum = 0;
    for (double value : c) sum += std::pow(value, s);
    return sum - 1.0;
  };
  double lo = 0;
  double hi = 1;
  int iterations = 0;
  while (excess(hi) > 0) {
    lo = hi;
    hi *= 2;
    if (++iterations > kMoranMaxIterations) throw NoSolution("moran_solve: could not bracket the root");
  }
  // Bisect to full double precision; the tolerance is then checked on the residual.
  while (iterations < kMoranMaxIterations) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    ++iterations;
    const double value = excess(mid);
    if (value == 0) {
      lo = hi = mid;
      break;
    }
    (value > 0 ? lo : hi) = mid;
  }
  const double best = std::abs(excess(lo)) <= std::abs(excess(hi)) ? lo : hi;
  MoranSolution solution{best, std::abs(excess(best)), iterations};
  if (solution.residual > kMoranTolerance) {
    throw NoSolution("moran_solve: residual " + std::to_string(solution.residual) + " above tolerance");
  }
  return solution;
}

MoranExponents lg_moran_exponents(const LgSpongeSpec& spec, const ClusterStructure& clusters) {
  const DigitTree tree(spec.digits(), clusters);
  MoranExponents out;
  auto solve_children = [&](const Digit& prefix, int level) {
    std::vector<Rational> ratios;
    for (const Digit& block : tree.nodes(level).at(prefix).children) {
      Digit child = prefix;
      child.insert(child.end(), block.begin(), block.end());
      ratios.push_back(spec.node(child).contraction);
    }
    try {
      return moran_solve(ratios).exponent;
    } catch (const Error& e) {
      throw NoSolution(std::string(e.what()) + " (children of prefix " + to_string(prefix) + ")");
    }
  };
  out.root = solve_children(Digit{}, 0);
  for (int level = 1; level < clusters.count(); ++level) {
    std::map<Digit, double> exponents;
    for (const auto& entry : tree.nodes(level)) exponents[entry.first] = solve_children(entry.first, level);
    out.by_prefix.push_back(std::move(exponents));
  }
  return out;
}

DimensionReport assouad_lower_lg(const LgSpongeSpec& spec) {
  ValidationReport report = validate_lg(spec);
  if (!report.ok()) throw InvalidSpec(report.violations.front().rule + ": " + report.violations.front().detail);
  const ClusterStructure clusters = lg_cluster(spec);
  const MoranExponents exponents = lg_moran_exponents(spec, clusters);
  DimensionReport out;
  out.formula = Formula::kClusteredMoran;
  out.terms.push_back({0, exponents.root, exponents.root, {}, {}});
  for (std::size_t l = 0; l < exponents.by_prefix.size(); ++l) {
    const auto ext = extremes(exponents.by_prefix[l]);
    out.terms.push_back({static_cast<int>(l) + 1, ext.max, ext.min, ext.argmax, ext.argmin});
  }
  return finish(std::move(out));
}

}  // namespace sponge
