#include "sponge/ratio_check.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "sponge/errors.hpp"

namespace sponge {

Rational exact_rational(double value) {
  if (!std::isfinite(value)) throw InvalidScale("non-finite scale");
  int exponent = 0;
  const double mantissa = std::frexp(value, &exponent);
  // mantissa * 2^53 is an integer for every double.
  const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  exponent -= 53;
  Rational out(scaled);
  if (exponent >= 0) {
    out *= boost::multiprecision::pow(BigInt(2), static_cast<unsigned>(exponent));
  } else {
    out /= boost::multiprecision::pow(BigInt(2), static_cast<unsigned>(-exponent));
  }
  return out;
}

namespace {

// Everything a trial needs, independent of the sponge family.
struct TrialModel {
  std::vector<Digit> digits;
  const BernoulliWeights* weights = nullptr;
  Rational cap;               // largest admissible R
  double log_span = 0;        // R and R/r range over [cap e^-span, cap]
  double log_step = 0;        // smallest per-symbol log contraction, for word length
  std::vector<int> snap_bases;
  std::function<Depths(const Word&, const Rational&)> depths;
  double assouad = 0;
  double lower = 0;
  double upper_constant = 0;
  double lower_constant = 0;
};

Rational snapped(int base, double log_scale) {
  const int k = std::max(0, static_cast<int>(std::lround(log_scale / std::log(static_cast<double>(base)))));
  return inverse_power(base, k);
}

RatioSample run_trial(const TrialModel& model, std::uint64_t seed, long trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(static_cast<std::uint64_t>(trial) >> 32)};
  std::mt19937_64 engine(seq);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, model.digits.size() - 1);
  std::uniform_int_distribution<int> mode_pick(0, 7);

  const double log_big = unit(engine) * model.log_span;
  const double log_gap = unit(engine) * model.log_span;
  const int mode = mode_pick(engine);
  RatioSample sample;
  sample.trial = trial;
  sample.big_r = model.cap * exact_rational(std::exp(-log_big));
  sample.r = sample.big_r * exact_rational(std::exp(-log_gap));
  if (!model.snap_bases.empty() && (mode == 1 || mode == 2)) {
    // Scales that sit exactly on a grid boundary n^-k.
    std::uniform_int_distribution<std::size_t> base_pick(0, model.snap_bases.size() - 1);
    sample.big_r = snapped(model.snap_bases[base_pick(engine)], log_big);
    sample.r = snapped(model.snap_bases[base_pick(engine)], log_big + log_gap);
    if (sample.r > sample.big_r) std::swap(sample.r, sample.big_r);
  }
  if (mode == 0) sample.r = sample.big_r;

  const double log_inv_r = -std::log(to_double(sample.r));
  const auto length = static_cast<std::size_t>(std::ceil(log_inv_r / model.log_step)) + 2;
  std::vector<Digit> symbols;
  symbols.reserve(length);
  for (std::size_t i = 0; i < length; ++i) symbols.push_back(model.digits[pick(engine)]);
  const Word word(symbols);

  const Depths at_big = model.depths(word, sample.big_r);
  const Depths at_small = model.depths(word, sample.r);
  const ClusterStructure& clusters = model.weights->clusters;
  double log_ratio = 0;
  for (int l = 0; l < clusters.count(); ++l) {
    const int end = clusters.end(l);
    for (int j = at_big.cluster[l]; j < at_small.cluster[l]; ++j) {
      log_ratio -= std::log(model.weights->conditional[l].at(prefix_of(symbols[j], end)));
    }
  }
  const double log_scale_ratio = std::log(to_double(Rational(sample.big_r / sample.r)));
  sample.ratio = std::exp(log_ratio);
  sample.normalized_upper = std::exp(log_ratio - model.assouad * log_scale_ratio);
  sample.normalized_lower = std::exp(log_ratio - model.lower * log_scale_ratio);
  sample.violation = sample.normalized_upper > model.upper_constant * (1 + kRatioSlack) ||
                     sample.normalized_lower < model.lower_constant * (1 - kRatioSlack);
  return sample;
}

RatioBoundReport summarize(const TrialModel& model, std::vector<RatioSample> samples, std::uint64_t seed) {
  RatioBoundReport report;
  report.trials = static_cast<long>(samples.size());
  report.seed = seed;
  report.assouad = model.assouad;
  report.lower = model.lower;
  report.upper_constant = model.upper_constant;
  report.lower_constant = model.lower_constant;
  report.max_normalized_upper = 0;
  report.min_normalized_lower = samples.empty() ? 0 : samples.front().normalized_lower;
  for (const RatioSample& sample : samples) {
    report.max_normalized_upper = std::max(report.max_normalized_upper, sample.normalized_upper);
    report.min_normalized_lower = std::min(report.min_normalized_lower, sample.normalized_lower);
    if (sample.violation) report.violations.push_back(sample.trial);
  }
  report.samples = std::move(samples);
  return report;
}

RatioBoundReport run_parallel(const TrialModel& model, long trials, std::uint64_t seed) {
  std::vector<RatioSample> samples(static_cast<std::size_t>(std::max(0L, trials)));
#pragma omp parallel for schedule(dynamic, 64)
  for (long t = 0; t < trials; ++t) samples[static_cast<std::size_t>(t)] = run_trial(model, seed, t);
  return summarize(model, std::move(samples), seed);
}

RatioBoundReport run_serial(const TrialModel& model, long trials, std::uint64_t seed) {
  std::vector<RatioSample> samples;
  for (long t = 0; t < trials; ++t) samples.push_back(run_trial(model, seed, t));
  return summarize(model, std::move(samples), seed);
}

TrialModel bm_model(const SpongeSpec& spec, const BernoulliWeights& weights) {
  const DimensionReport dims = assouad_lower_bm(spec);
  TrialModel model;
  model.digits = DigitTree(spec.digits, cluster(spec)).leaves();
  model.weights = &weights;
  model.cap = 1;
  const double n_d = spec.bases.back();
  model.log_span = 12 * std::log(n_d);
  model.log_step = std::log(static_cast<double>(spec.bases.front()));
  model.snap_bases = spec.bases;
  model.depths = [&spec](const Word&, const Rational& r) { return depths_bm(spec, r); };
  model.assouad = dims.assouad;
  model.lower = dims.lower;
  model.upper_constant = std::pow(n_d, spec.dims());
  model.lower_constant = std::pow(n_d, -spec.dims());
  return model;
}

TrialModel lg_model(const LgSpongeSpec& spec, const BernoulliWeights& weights) {
  const DimensionReport dims = assouad_lower_lg(spec);
  TrialModel model;
  model.digits = spec.digits();
  model.weights = &weights;
  model.cap = spec.min_contraction();
  const double c_min = to_double(model.cap);
  double c_max = 0;
  for (const auto& entry : spec.nodes()) c_max = std::max(c_max, to_double(entry.second.contraction));
  model.log_span = -12 * std::log(c_min);
  model.log_step = -std::log(c_max);
  const ClusterStructure clusters = weights.clusters;
  model.depths = [&spec, clusters](const Word& word, const Rational& r) { return depths_lg(spec, clusters, word, r); };
  model.assouad = dims.assouad;
  model.lower = dims.lower;
  model.upper_constant = std::pow(c_min, -spec.dims());
  model.lower_constant = std::pow(c_min, spec.dims());
  return model;
}

}  // namespace

RatioBoundReport ratio_bound_check(const SpongeSpec& spec, const BernoulliWeights& weights, long trials,
                                   std::uint64_t seed) {
  return run_parallel(bm_model(spec, weights), trials, seed);
}

RatioBoundReport ratio_bound_check_serial(const SpongeSpec& spec, const BernoulliWeights& weights,
                                          long trials, std::uint64_t seed) {
  return run_serial(bm_model(spec, weights), trials, seed);
}

RatioBoundReport ratio_bound_check(const LgSpongeSpec& spec, const BernoulliWeights& weights, long trials,
                                   std::uint64_t seed) {
  return run_parallel(lg_model(spec, weights), trials, seed);
}

RatioBoundReport ratio_bound_check_serial(const LgSpongeSpec& spec, const BernoulliWeights& weights,
                                          long trials, std::uint64_t seed) {
  return run_serial(lg_model(spec, weights), trials, seed);
}

std::string ratio_csv(const RatioBoundReport& report) {
  std::ostringstream out;
  out.precision(10);
  out << "trial,r,R,ratio,normalized_upper,normalized_lower\n";
  for (const RatioSample& s : report.samples) {
    out << s.trial << ',' << to_double(s.r) << ',' << to_double(s.big_r) << ',' << s.ratio << ','
        << s.normalized_upper << ',' << s.normalized_lower << '\n';
  }
  return out.str();
}

}  // namespace sponge
