#ifndef SPONGE_SPONGE_MODEL_HPP_
#define SPONGE_SPONGE_MODEL_HPP_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sponge/rational.hpp"

namespace sponge {

// One symbol of the IFS: a digit per coordinate. Prefixes of digits (the
// first few coordinates) use the same type.
using Digit = std::vector<int>;

std::string to_string(const Digit& digit);

Digit prefix_of(const Digit& digit, int length);

// Bedford-McMullen sponge in canonical coordinate order (bases nondecreasing).
struct SpongeSpec {
  std::vector<int> bases;
  // Sorted lexicographically. Duplicates are kept so validation can report them.
  std::vector<Digit> digits;
  // permutation[l] is the input coordinate that became canonical coordinate l.
  std::vector<int> permutation;

  int dims() const { return static_cast<int>(bases.size()); }

  // Stable-sorts coordinates by base and permutes every digit to match.
  static SpongeSpec canonical(std::vector<int> bases, std::vector<Digit> digits);
};

struct Violation {
  std::string rule;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<std::string> warnings;

  bool ok() const { return violations.empty(); }
};

ValidationReport validate_bm(const SpongeSpec& spec);

// Partition of coordinates into clusters of consecutive coordinates that
// share a contraction. Cluster indices are zero based.
struct ClusterStructure {
  std::vector<int> sizes;
  // Common base of each cluster; empty for Lalley-Gatzouras clusterings.
  std::vector<int> bases;
  std::vector<int> cluster_of;

  int count() const { return static_cast<int>(sizes.size()); }
  int dims() const { return static_cast<int>(cluster_of.size()); }
  // Number of coordinates in clusters 0..l-1, i.e. the prefix length that
  // ends just before cluster l.
  int begin(int l) const;
  // Prefix length through cluster l.
  int end(int l) const { return begin(l) + sizes[l]; }
};

ClusterStructure cluster(const SpongeSpec& spec);

struct DigitTreeNode {
  Digit prefix;
  // Blocks of the next cluster's digits that extend prefix, sorted.
  std::vector<Digit> children;

  int child_count() const { return static_cast<int>(children.size()); }
};

// Projections D_0 = {()}, D_1 = pi_1 D, ..., D_{d*} = D, with each prefix
// linked to the blocks that extend it.
class DigitTree {
 public:
  DigitTree(const std::vector<Digit>& digits, ClusterStructure clusters);

  const ClusterStructure& clusters() const { return clusters_; }
  int levels() const { return clusters_.count(); }

  // Sorted D_level; level 0 holds the empty prefix.
  std::vector<Digit> prefixes(int level) const;
  const std::map<Digit, DigitTreeNode>& nodes(int level) const { return levels_[level]; }
  // N(prefix) for a prefix in D_level, level < levels().
  int child_count(const Digit& prefix) const;
  // N = #(pi_1 D).
  int root_count() const { return levels_[0].begin()->second.child_count(); }
  // Number of elements of D_to extending prefix (a member of D_level).
  long extension_count(const Digit& prefix, int to_level) const;
  // Root-to-leaf paths, i.e. the distinct digits.
  std::vector<Digit> leaves() const;

 private:
  int level_of(const Digit& prefix) const;

  ClusterStructure clusters_;
  std::vector<std::map<Digit, DigitTreeNode>> levels_;
  std::vector<Digit> leaves_;
};

DigitTree digit_tree(const SpongeSpec& spec, const ClusterStructure& clusters);

// counts[l] maps each length-l coordinate prefix occurring in D to the
// number of distinct digits that follow it in coordinate l.
struct CoordinateCounts {
  std::vector<std::map<Digit, int>> counts;

  int max_at(int coordinate) const;
  int min_at(int coordinate) const;
};

CoordinateCounts per_coordinate_counts(const SpongeSpec& spec);

struct LgNode {
  Rational contraction;
  Rational translation;
};

// Lalley-Gatzouras sponge: a contraction and translation for every prefix of
// every digit. The digits themselves are the full-length prefixes.
class LgSpongeSpec {
 public:
  LgSpongeSpec() = default;
  LgSpongeSpec(int dims, const std::vector<std::pair<Digit, LgNode>>& nodes);

  int dims() const { return dims_; }
  const std::map<Digit, LgNode>& nodes() const { return nodes_; }
  const std::vector<Digit>& digits() const { return digits_; }
  // Symbol-grid bases implied by the digits (largest digit + 1, at least 2).
  std::vector<int> bases() const;
  // Prefixes that appeared more than once in the input.
  const std::vector<Digit>& duplicates() const { return duplicates_; }

  bool has_node(const Digit& prefix) const { return nodes_.count(prefix) != 0; }
  const LgNode& node(const Digit& prefix) const;
  // c_{i_1..i_length} for the digit's own prefix.
  const Rational& contraction(const Digit& digit, int length) const;
  // Smallest full-depth contraction over D.
  Rational min_contraction() const;

 private:
  int dims_ = 0;
  std::map<Digit, LgNode> nodes_;
  std::vector<Digit> digits_;
  std::vector<Digit> duplicates_;
};

ValidationReport validate_lg(const LgSpongeSpec& spec);

// Merges consecutive coordinates whose contractions agree on every digit.
ClusterStructure lg_cluster(const LgSpongeSpec& spec);

// The LG sponge with c = 1/n_l and t = i_l/n_l at every prefix, whose
// attractor is the given Bedford-McMullen sponge.
LgSpongeSpec uniform_grid_encoding(const SpongeSpec& spec);

}  // namespace sponge

#endif  // SPONGE_SPONGE_MODEL_HPP_
