#ifndef SPONGE_RATIO_CHECK_HPP_
#define SPONGE_RATIO_CHECK_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "sponge/rational.hpp"
#include "sponge/symbolic_measure.hpp"

namespace sponge {

struct RatioSample {
  long trial = 0;
  Rational r;
  Rational big_r;
  // mu(Q(w,R)) / mu(Q(w,r))
  double ratio = 1;
  // ratio / (R/r)^assouad and ratio / (R/r)^lower
  double normalized_upper = 1;
  double normalized_lower = 1;
  bool violation = false;
};

struct RatioBoundReport {
  long trials = 0;
  std::uint64_t seed = 0;
  double assouad = 0;
  double lower = 0;
  // ratio <= upper_constant (R/r)^assouad and >= lower_constant (R/r)^lower.
  double upper_constant = 0;
  double lower_constant = 0;
  double max_normalized_upper = 0;
  double min_normalized_lower = 0;
  std::vector<RatioSample> samples;
  std::vector<long> violations;
};

// Relative slack allowed on the constants for floating-point rounding.
inline constexpr double kRatioSlack = 1e-9;

// Samples (w, r, R) and checks the two-sided measure ratio bound with
// constants n_d^d and n_d^-d. Trials run in parallel; trial t draws from an
// engine seeded with (seed, t), so the report does not depend on the thread
// count.
RatioBoundReport ratio_bound_check(const SpongeSpec& spec, const BernoulliWeights& weights, long trials,
                                   std::uint64_t seed);
RatioBoundReport ratio_bound_check_serial(const SpongeSpec& spec, const BernoulliWeights& weights,
                                          long trials, std::uint64_t seed);

// Lalley-Gatzouras variant: scales below the smallest contraction c_min and
// constants c_min^-d, c_min^d.
RatioBoundReport ratio_bound_check(const LgSpongeSpec& spec, const BernoulliWeights& weights, long trials,
                                   std::uint64_t seed);
RatioBoundReport ratio_bound_check_serial(const LgSpongeSpec& spec, const BernoulliWeights& weights,
                                          long trials, std::uint64_t seed);

// trial,r,R,ratio,normalized_upper,normalized_lower
std::string ratio_csv(const RatioBoundReport& report);

// Exact binary value of a finite double.
Rational exact_rational(double value);

}  // namespace sponge

#endif  // SPONGE_RATIO_CHECK_HPP_
