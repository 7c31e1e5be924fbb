#ifndef SPONGE_SYMBOLIC_MEASURE_HPP_
#define SPONGE_SYMBOLIC_MEASURE_HPP_

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "sponge/dimension_engine.hpp"
#include "sponge/rational.hpp"
#include "sponge/sponge_model.hpp"

namespace sponge {

// A finite word, or an eventually periodic infinite word head + period^inf.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Digit> head, std::vector<Digit> period = {});

  static Word periodic(std::vector<Digit> block) { return Word({}, std::move(block)); }

  bool infinite() const { return !period_.empty(); }
  const std::vector<Digit>& head() const { return head_; }
  const std::vector<Digit>& period() const { return period_; }

  // True when at least `count` symbols exist.
  bool has(std::size_t count) const { return infinite() || count <= head_.size(); }
  // Zero-based symbol access; throws InsufficientLength past the end.
  const Digit& at(std::size_t index) const;
  std::vector<Digit> prefix(std::size_t count) const;

  bool operator==(const Word&) const = default;

 private:
  std::vector<Digit> head_;
  std::vector<Digit> period_;
};

// Drops the first j symbols.
Word shift(const Word& word, std::size_t j);

// Throws InvalidSpec naming the first symbol outside `digits`.
void check_word(const Word& word, const std::vector<Digit>& digits);

struct Depths {
  std::vector<int> coordinate;
  std::vector<int> cluster;

  int max() const;
};

// k_l(r): the integer with n_l^-(k+1) < r <= n_l^-k, by exact comparison.
Depths depths_bm(const SpongeSpec& spec, const Rational& r);

// k_l(r, w): products of the word's level-l contractions bracket r. Requires
// 0 < r <= min full-depth contraction.
Depths depths_lg(const LgSpongeSpec& spec, const ClusterStructure& clusters, const Word& word,
                 const Rational& r);

struct RationalInterval {
  Rational lo;
  Rational hi;

  Rational length() const { return hi - lo; }
};

struct ApproximateCube {
  Word word;
  Rational scale;
  Depths depths;
  // Closed axis-aligned rectangle containing the cube's image.
  std::vector<RationalInterval> rectangle;
};

ApproximateCube approximate_cube(const SpongeSpec& spec, const Word& word, const Rational& r);
ApproximateCube approximate_cube(const LgSpongeSpec& spec, const ClusterStructure& clusters,
                                 const Word& word, const Rational& r);

// Bernoulli weights together with their cluster-wise conditional
// probabilities. conditional[l] maps each prefix through cluster l (an
// element of D_{l+1}) to the probability of its last block given the rest.
struct BernoulliWeights {
  ClusterStructure clusters;
  std::map<Digit, double> weight;
  std::vector<std::map<Digit, double>> conditional;
  // Exact values; filled for Bedford-McMullen weights only.
  std::map<Digit, Rational> exact_weight;
  std::vector<std::map<Digit, Rational>> exact_conditional;

  bool exact() const { return !exact_weight.empty(); }
};

// p_i = 1 / (N * prod_l N(prefix_l(i))).
BernoulliWeights pcu_weights(const SpongeSpec& spec);

// p_i = prod_l c_{prefix through cluster l}^{s(previous prefix)}.
BernoulliWeights lg_weights(const LgSpongeSpec& spec, const ClusterStructure& clusters,
                            const MoranExponents& exponents);

// Measure of an approximate cube: product over clusters l and positions
// j < k_l* of the cluster-l conditional probability of symbol j.
double cube_measure(const BernoulliWeights& weights, const ApproximateCube& cube);
Rational cube_measure_exact(const BernoulliWeights& weights, const ApproximateCube& cube);

// Same product for an explicit symbol sequence and cluster depths.
double cube_measure(const BernoulliWeights& weights, std::span<const Digit> symbols,
                    std::span<const int> cluster_depths);

}  // namespace sponge

#endif  // SPONGE_SYMBOLIC_MEASURE_HPP_
