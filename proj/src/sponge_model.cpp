#include "sponge/sponge_model.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "sponge/errors.hpp"

namespace sponge {

std::string to_string(const Digit& digit) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < digit.size(); ++i) {
    if (i) out << ',';
    out << digit[i];
  }
  out << ')';
  return out.str();
}

Digit prefix_of(const Digit& digit, int length) {
  return Digit(digit.begin(), digit.begin() + length);
}

SpongeSpec SpongeSpec::canonical(std::vector<int> bases, std::vector<Digit> digits) {
  std::vector<int> order(bases.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return bases[a] < bases[b]; });
  SpongeSpec spec;
  spec.permutation = order;
  for (int source : order) spec.bases.push_back(bases[source]);
  spec.digits.reserve(digits.size());
  for (const Digit& digit : digits) {
    if (digit.size() != bases.size()) {
      // Left untouched; validate_bm reports the length mismatch.
      spec.digits.push_back(digit);
      continue;
    }
    Digit permuted(digit.size());
    for (std::size_t l = 0; l < order.size(); ++l) permuted[l] = digit[order[l]];
    spec.digits.push_back(std::move(permuted));
  }
  std::sort(spec.digits.begin(), spec.digits.end());
  return spec;
}

ValidationReport validate_bm(const SpongeSpec& spec) {
  ValidationReport report;
  auto fail = [&](std::string rule, std::string detail) {
    report.violations.push_back({std::move(rule), std::move(detail)});
  };
  const int d = spec.dims();
  if (d < 1) fail("dimension", "at least one coordinate is required");
  for (int l = 0; l < d; ++l) {
    if (spec.bases[l] < 2) {
      fail("base", "base of coordinate " + std::to_string(l + 1) + " is " +
                       std::to_string(spec.bases[l]) + ", must be at least 2");
    }
    if (l > 0 && spec.bases[l] < spec.bases[l - 1]) {
      fail("ordering", "bases must be nondecreasing in canonical order");
    }
  }
  std::set<Digit> distinct;
  for (const Digit& digit : spec.digits) {
    if (static_cast<int>(digit.size()) != d) {
      fail("digit-length", "digit " + to_string(digit) + " has " + std::to_string(digit.size()) +
                               " entries, expected " + std::to_string(d));
      continue;
    }
    for (int l = 0; l < d; ++l) {
      if (digit[l] < 0 || digit[l] >= spec.bases[l]) {
        fail("digit-range", "digit " + to_string(digit) + ": entry " + std::to_string(digit[l]) +
                                " outside [0, " + std::to_string(spec.bases[l] - 1) + "] in coordinate " +
                                std::to_string(l + 1));
      }
    }
    if (!distinct.insert(digit).second) fail("duplicate", "digit " + to_string(digit) + " listed twice");
  }
  if (distinct.size() < 2) {
    fail("cardinality", "digit set has " + std::to_string(distinct.size()) + " element(s), needs at least 2");
  }
  if (report.ok()) {
    for (int l = 0; l < d; ++l) {
      std::set<int> values;
      for (const Digit& digit : spec.digits) values.insert(digit[l]);
      if (values.size() == 1) {
        report.warnings.push_back("sponge lies in the hyperplane x_" + std::to_string(l + 1) +
                                  " = const (single digit " + std::to_string(*values.begin()) + ")");
      }
    }
  }
  return report;
}

int ClusterStructure::begin(int l) const {
  return std::accumulate(sizes.begin(), sizes.begin() + l, 0);
}

ClusterStructure cluster(const SpongeSpec& spec) {
  ClusterStructure clusters;
  for (int l = 0; l < spec.dims(); ++l) {
    if (l == 0 || spec.bases[l] != spec.bases[l - 1]) {
      clusters.sizes.push_back(0);
      clusters.bases.push_back(spec.bases[l]);
    }
    ++clusters.sizes.back();
    clusters.cluster_of.push_back(clusters.count() - 1);
  }
  return clusters;
}

DigitTree::DigitTree(const std::vector<Digit>& digits, ClusterStructure clusters)
    : clusters_(std::move(clusters)), levels_(clusters_.count() + 1) {
  std::set<Digit> distinct(digits.begin(), digits.end());
  leaves_.assign(distinct.begin(), distinct.end());
  for (int level = 0; level < levels(); ++level) {
    const int from = clusters_.begin(level);
    const int to = clusters_.end(level);
    std::map<Digit, std::set<Digit>> blocks;
    for (const Digit& digit : leaves_) {
      blocks[prefix_of(digit, from)].insert(Digit(digit.begin() + from, digit.begin() + to));
    }
    for (auto& [prefix, children] : blocks) {
      levels_[level][prefix] = DigitTreeNode{prefix, {children.begin(), children.end()}};
    }
  }
  for (const Digit& digit : leaves_) levels_[levels()][digit] = DigitTreeNode{digit, {}};
}

std::vector<Digit> DigitTree::prefixes(int level) const {
  std::vector<Digit> out;
  out.reserve(levels_[level].size());
  for (const auto& entry : levels_[level]) out.push_back(entry.first);
  return out;
}

int DigitTree::level_of(const Digit& prefix) const {
  for (int level = 0; level <= levels(); ++level) {
    if (clusters_.begin(level) == static_cast<int>(prefix.size())) return level;
  }
  throw Error("prefix " + to_string(prefix) + " does not end on a cluster boundary");
}

int DigitTree::child_count(const Digit& prefix) const {
  const int level = level_of(prefix);
  auto it = levels_[level].find(prefix);
  if (it == levels_[level].end()) throw Error("prefix " + to_string(prefix) + " not in the digit tree");
  return it->second.child_count();
}

long DigitTree::extension_count(const Digit& prefix, int to_level) const {
  const int level = level_of(prefix);
  if (to_level < level) throw Error("extension_count: target level above prefix level");
  if (!levels_[level].count(prefix)) return 0;
  if (to_level == level) return 1;
  long total = 0;
  for (const Digit& block : levels_[level].at(prefix).children) {
    Digit next = prefix;
    next.insert(next.end(), block.begin(), block.end());
    total += extension_count(next, to_level);
  }
  return total;
}

std::vector<Digit> DigitTree::leaves() const { return leaves_; }

DigitTree digit_tree(const SpongeSpec& spec, const ClusterStructure& clusters) {
  return DigitTree(spec.digits, clusters);
}

int CoordinateCounts::max_at(int coordinate) const {
  int best = 0;
  for (const auto& entry : counts[coordinate]) best = std::max(best, entry.second);
  return best;
}

int CoordinateCounts::min_at(int coordinate) const {
  int best = -1;
  for (const auto& entry : counts[coordinate]) best = best < 0 ? entry.second : std::min(best, entry.second);
  return best;
}

CoordinateCounts per_coordinate_counts(const SpongeSpec& spec) {
  CoordinateCounts out;
  out.counts.resize(spec.dims());
  for (int l = 0; l < spec.dims(); ++l) {
    std::map<Digit, std::set<int>> next;
    for (const Digit& digit : spec.digits) next[prefix_of(digit, l)].insert(digit[l]);
    for (const auto& [prefix, values] : next) out.counts[l][prefix] = static_cast<int>(values.size());
  }
  return out;
}

LgSpongeSpec::LgSpongeSpec(int dims, const std::vector<std::pair<Digit, LgNode>>& nodes) : dims_(dims) {
  for (const auto& [prefix, node] : nodes) {
    if (!nodes_.emplace(prefix, node).second) duplicates_.push_back(prefix);
    if (static_cast<int>(prefix.size()) == dims_) digits_.push_back(prefix);
  }
  std::sort(digits_.begin(), digits_.end());
  digits_.erase(std::unique(digits_.begin(), digits_.end()), digits_.end());
}

std::vector<int> LgSpongeSpec::bases() const {
  std::vector<int> bases(dims_, 2);
  for (const Digit& digit : digits_) {
    for (int l = 0; l < dims_; ++l) bases[l] = std::max(bases[l], digit[l] + 1);
  }
  return bases;
}

const LgNode& LgSpongeSpec::node(const Digit& prefix) const {
  auto it = nodes_.find(prefix);
  if (it == nodes_.end()) throw InvalidSpec("no contraction for prefix " + to_string(prefix));
  return it->second;
}

const Rational& LgSpongeSpec::contraction(const Digit& digit, int length) const {
  return node(prefix_of(digit, length)).contraction;
}

Rational LgSpongeSpec::min_contraction() const {
  Rational best = 1;
  for (const Digit& digit : digits_) best = std::min(best, contraction(digit, dims_));
  return best;
}

ValidationReport validate_lg(const LgSpongeSpec& spec) {
  ValidationReport report;
  auto fail = [&](std::string rule, std::string detail) {
    report.violations.push_back({std::move(rule), std::move(detail)});
  };
  const int d = spec.dims();
  if (d < 1) {
    fail("dimension", "at least one coordinate is required");
    return report;
  }
  for (const Digit& prefix : spec.duplicates()) fail("duplicate-prefix", "prefix " + to_string(prefix) + " listed twice");
  if (spec.digits().empty()) fail("cardinality", "no full-length digit present");

  std::set<Digit> reachable;
  for (const Digit& digit : spec.digits()) {
    for (int len = 1; len <= d; ++len) reachable.insert(prefix_of(digit, len));
  }
  for (const auto& [prefix, node] : spec.nodes()) {
    const std::string where = "prefix " + to_string(prefix);
    if (prefix.empty() || static_cast<int>(prefix.size()) > d) {
      fail("prefix-length", where + " must have between 1 and " + std::to_string(d) + " entries");
      continue;
    }
    if (std::any_of(prefix.begin(), prefix.end(), [](int v) { return v < 0; })) {
      fail("digit-range", where + " has a negative entry");
    }
    if (!reachable.count(prefix)) fail("orphan-node", where + " is not a prefix of any full-length digit");
    if (node.contraction <= 0 || node.contraction >= 1) {
      fail("contraction-range", where + ": c = " + to_string(node.contraction) + " not in (0,1)");
    }
    if (node.translation < 0 || node.translation >= 1) {
      fail("translation-range", where + ": t = " + to_string(node.translation) + " not in [0,1)");
    }
  }
  for (const Digit& prefix : reachable) {
    if (!spec.has_node(prefix)) fail("missing-node", "prefix " + to_string(prefix) + " has no contraction");
  }
  if (!report.ok()) return report;

  // Monotonicity and prefix consistency (the latter is structural: one node per prefix).
  for (const Digit& digit : spec.digits()) {
    for (int len = 1; len < d; ++len) {
      const Rational& outer = spec.contraction(digit, len);
      const Rational& inner = spec.contraction(digit, len + 1);
      if (inner > outer) {
        fail("monotonicity", "c" + to_string(prefix_of(digit, len + 1)) + " = " + to_string(inner) +
                                 " exceeds c" + to_string(prefix_of(digit, len)) + " = " + to_string(outer));
      }
    }
  }

  // Sibling groups: all nodes sharing a parent prefix, ordered by last digit.
  std::map<Digit, std::vector<Digit>> siblings;
  for (const Digit& prefix : reachable) siblings[prefix_of(prefix, static_cast<int>(prefix.size()) - 1)].push_back(prefix);
  for (auto& [parent, group] : siblings) {
    std::sort(group.begin(), group.end());
    Rational sum = 0;
    for (const Digit& child : group) sum += spec.node(child).contraction;
    const std::string where = parent.empty() ? std::string("level 1") : "children of " + to_string(parent);
    if (sum > 1) fail("packing-sum", where + ": contractions sum to " + to_string(sum) + " > 1");
    for (std::size_t k = 0; k + 1 < group.size(); ++k) {
      const LgNode& lo = spec.node(group[k]);
      const LgNode& hi = spec.node(group[k + 1]);
      if (lo.translation + lo.contraction > hi.translation) {
        fail("separation", where + ": t" + to_string(group[k]) + " + c" + to_string(group[k]) + " = " +
                               to_string(Rational(lo.translation + lo.contraction)) + " > t" +
                               to_string(group[k + 1]) + " = " + to_string(hi.translation));
      }
    }
    const LgNode& last = spec.node(group.back());
    if (last.translation + last.contraction > 1) {
      fail("terminal-bound", where + ": t" + to_string(group.back()) + " + c" + to_string(group.back()) +
                                 " = " + to_string(Rational(last.translation + last.contraction)) + " > 1");
    }
  }
  if (spec.digits().size() < 2) report.warnings.push_back("single map: the attractor is a point");
  return report;
}

ClusterStructure lg_cluster(const LgSpongeSpec& spec) {
  ClusterStructure clusters;
  const int d = spec.dims();
  for (int l = 0; l < d; ++l) {
    bool merge = l > 0;
    if (merge) {
      for (const Digit& digit : spec.digits()) {
        if (spec.contraction(digit, l) != spec.contraction(digit, l + 1)) {
          merge = false;
          break;
        }
      }
    }
    if (!merge) clusters.sizes.push_back(0);
    ++clusters.sizes.back();
    clusters.cluster_of.push_back(clusters.count() - 1);
  }
  return clusters;
}

LgSpongeSpec uniform_grid_encoding(const SpongeSpec& spec) {
  std::set<Digit> prefixes;
  for (const Digit& digit : spec.digits) {
    for (int len = 1; len <= spec.dims(); ++len) prefixes.insert(prefix_of(digit, len));
  }
  std::vector<std::pair<Digit, LgNode>> nodes;
  nodes.reserve(prefixes.size());
  for (const Digit& prefix : prefixes) {
    const int l = static_cast<int>(prefix.size()) - 1;
    const int n = spec.bases[l];
    nodes.emplace_back(prefix, LgNode{Rational(1, n), Rational(prefix[l], n)});
  }
  return LgSpongeSpec(spec.dims(), nodes);
}

}  // namespace sponge
