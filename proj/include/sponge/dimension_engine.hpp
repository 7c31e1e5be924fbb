#ifndef SPONGE_DIMENSION_ENGINE_HPP_
#define SPONGE_DIMENSION_ENGINE_HPP_

#include <map>
#include <span>
#include <string>
#include <vector>

#include "sponge/rational.hpp"
#include "sponge/sponge_model.hpp"

namespace sponge {

enum class Formula {
  kClusteredCounts,    // Bedford-McMullen, clusters of equal bases
  kClusteredMoran,     // Lalley-Gatzouras, clusters of equal contractions
  kPerCoordinate,      // strict-ordering formula, one coordinate at a time
};

std::string to_string(Formula formula);

// Contribution of one cluster (or, for kPerCoordinate, one coordinate).
struct ClusterTerm {
  int index = 0;
  double max_term = 0;
  double min_term = 0;
  Digit argmax_prefix;
  Digit argmin_prefix;
};

struct DimensionReport {
  double assouad = 0;
  double lower = 0;
  std::vector<ClusterTerm> terms;
  Formula formula = Formula::kClusteredCounts;
  // Set by the per-coordinate formula when two coordinates share a base, in
  // which case its value depends on how those coordinates are ordered.
  bool order_dependent = false;
};

// Sum over clusters of log(count)/log(base), with the max (Assouad) or min
// (lower) child count N(prefix) taken over the previous clusters' prefixes.
DimensionReport assouad_lower_bm(const SpongeSpec& spec);

// The same sum taken coordinate by coordinate with the single-digit counts
// N'(prefix), in canonical order. Valid only for strictly ordered bases.
DimensionReport assouad_lower_strict_order(const SpongeSpec& spec);

struct OrderSpread {
  double min_assouad = 0;
  double max_assouad = 0;
  double min_lower = 0;
  double max_lower = 0;
  long orderings = 0;
};

// Evaluates assouad_lower_strict_order over every reordering of coordinates
// inside each cluster.
OrderSpread strict_order_spread(const SpongeSpec& spec);

struct DimensionDrop {
  double drop = 0;
  bool equality_condition_holds = false;
  // max N(prefix) == prod over the cluster's coordinates of max N'(prefix).
  std::vector<bool> cluster_condition;
};

DimensionDrop dimension_drop(const SpongeSpec& spec);

struct MoranSolution {
  double exponent = 0;
  double residual = 0;
  int iterations = 0;
};

inline constexpr double kMoranTolerance = 1e-12;
inline constexpr int kMoranMaxIterations = 200;

// Solves sum_j c_j^s = 1 for s >= 0 by bisection.
MoranSolution moran_solve(std::span<const Rational> ratios);

// Moran exponents of a Lalley-Gatzouras sponge: `root` solves the equation
// over pi_1 D; by_prefix[l] maps every prefix in D_{l+1} to the exponent of
// its children in cluster l+1.
struct MoranExponents {
  double root = 0;
  std::vector<std::map<Digit, double>> by_prefix;
};

MoranExponents lg_moran_exponents(const LgSpongeSpec& spec, const ClusterStructure& clusters);

DimensionReport assouad_lower_lg(const LgSpongeSpec& spec);

}  // namespace sponge

#endif  // SPONGE_DIMENSION_ENGINE_HPP_
