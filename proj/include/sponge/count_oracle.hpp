#ifndef SPONGE_COUNT_ORACLE_HPP_
#define SPONGE_COUNT_ORACLE_HPP_

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sponge/rational.hpp"
#include "sponge/sponge_model.hpp"

namespace sponge {

// Extremes over anchor cubes at R = n_1^-k of the number of distinct
// approximate cubes at r = n_1^-(k+m) inside them.
struct SubcubeCounts {
  BigInt max_count;
  BigInt min_count;
};

SubcubeCounts subcube_counts(const SpongeSpec& spec, int k, int m);

// Reference: enumerates every word of the required length and groups the
// sub-cube identifiers by anchor. Throws BudgetExceeded past `budget` words.
SubcubeCounts subcube_counts_naive(const SpongeSpec& spec, int k, int m, std::size_t budget = 2'000'000);

struct CountTable {
  int base = 2;  // n_1
  std::map<std::pair<int, int>, SubcubeCounts> entries;
};

// Every (k, m) with m in `refinements` and 0 <= k <= anchor_factor * m + anchor_offset.
CountTable build_count_table(const SpongeSpec& spec, const std::vector<int>& refinements, int anchor_factor = 8,
                             int anchor_offset = 8);

struct FitRow {
  int m = 0;
  double log_scale_ratio = 0;  // m log n_1
  double log_max = 0;          // log of max over k of max_count
  double log_min = 0;          // log of min over k of min_count
  double residual_max = 0;
  double residual_min = 0;
  // Slope between this row and the previous one; 0 on the first row.
  double incremental_max = 0;
  double incremental_min = 0;
  // Slope from the first row to this one; 0 on the first row.
  double cumulative_max = 0;
  double cumulative_min = 0;
};

struct ExponentFit {
  double assouad_estimate = 0;
  double lower_estimate = 0;
  std::vector<FitRow> rows;
};

// Least-squares slopes of log count against log(R/r). Needs at least three
// refinement levels.
ExponentFit fit_exponent(const CountTable& table);

// k,m,max_count,min_count,incremental_slope
std::string count_csv(const CountTable& table);

}  // namespace sponge

#endif  // SPONGE_COUNT_ORACLE_HPP_
