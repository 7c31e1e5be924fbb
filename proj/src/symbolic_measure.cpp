#include "sponge/symbolic_measure.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "sponge/errors.hpp"

namespace sponge {

Word::Word(std::vector<Digit> head, std::vector<Digit> period)
    : head_(std::move(head)), period_(std::move(period)) {}

const Digit& Word::at(std::size_t index) const {
  if (index < head_.size()) return head_[index];
  if (period_.empty()) {
    throw InsufficientLength("word has " + std::to_string(head_.size()) + " symbols, index " +
                             std::to_string(index) + " requested");
  }
  return period_[(index - head_.size()) % period_.size()];
}

std::vector<Digit> Word::prefix(std::size_t count) const {
  std::vector<Digit> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(at(i));
  return out;
}

Word shift(const Word& word, std::size_t j) {
  if (j <= word.head().size()) {
    return Word({word.head().begin() + static_cast<std::ptrdiff_t>(j), word.head().end()}, word.period());
  }
  if (!word.infinite()) {
    throw InsufficientLength("cannot shift a word of " + std::to_string(word.head().size()) + " symbols by " +
                             std::to_string(j));
  }
  const std::size_t offset = (j - word.head().size()) % word.period().size();
  std::vector<Digit> period(word.period().begin() + static_cast<std::ptrdiff_t>(offset), word.period().end());
  period.insert(period.end(), word.period().begin(), word.period().begin() + static_cast<std::ptrdiff_t>(offset));
  return Word::periodic(std::move(period));
}

void check_word(const Word& word, const std::vector<Digit>& digits) {
  const std::set<Digit> allowed(digits.begin(), digits.end());
  for (const auto* part : {&word.head(), &word.period()}) {
    for (const Digit& symbol : *part) {
      if (!allowed.count(symbol)) throw InvalidSpec("symbol " + to_string(symbol) + " is not in the digit set");
    }
  }
}

int Depths::max() const {
  return coordinate.empty() ? 0 : *std::max_element(coordinate.begin(), coordinate.end());
}

namespace {

void require_scale(const Rational& r, const Rational& upper) {
  if (r <= 0 || r > upper) {
    throw InvalidScale("scale " + to_string(r) + " outside (0, " + to_string(upper) + "]");
  }
}

std::vector<int> cluster_depths(const ClusterStructure& clusters, const std::vector<int>& coordinate) {
  std::vector<int> out;
  for (int l = 0; l < clusters.count(); ++l) out.push_back(coordinate[clusters.end(l) - 1]);
  return out;
}

}  // namespace

Depths depths_bm(const SpongeSpec& spec, const Rational& r) {
  require_scale(r, 1);
  const BigInt& p = numerator(r);
  const BigInt& q = denominator(r);
  Depths out;
  std::map<int, int> by_base;
  for (int n : spec.bases) {
    auto it = by_base.find(n);
    if (it == by_base.end()) {
      // Largest k with n^k * p <= q, i.e. r <= n^-k.
      int k = 0;
      BigInt power = p;
      while (power * n <= q) {
        power *= n;
        ++k;
      }
      it = by_base.emplace(n, k).first;
    }
    out.coordinate.push_back(it->second);
  }
  out.cluster = cluster_depths(cluster(spec), out.coordinate);
  return out;
}

Depths depths_lg(const LgSpongeSpec& spec, const ClusterStructure& clusters, const Word& word,
                 const Rational& r) {
  require_scale(r, spec.min_contraction());
  Depths out;
  for (int l = 0; l < spec.dims(); ++l) {
    Rational product = 1;
    int k = 0;
    while (true) {
      if (!word.has(static_cast<std::size_t>(k) + 1)) {
        throw WordTooShort("word too short to bracket r = " + to_string(r) + " in coordinate " +
                           std::to_string(l + 1));
      }
      Rational next = product * spec.contraction(word.at(k), l + 1);
      if (next < r) break;
      product = std::move(next);
      ++k;
    }
    out.coordinate.push_back(k);
  }
  out.cluster = cluster_depths(clusters, out.coordinate);
  return out;
}

ApproximateCube approximate_cube(const SpongeSpec& spec, const Word& word, const Rational& r) {
  ApproximateCube cube{word, r, depths_bm(spec, r), {}};
  if (!word.has(cube.depths.max())) {
    throw WordTooShort("approximate cube needs " + std::to_string(cube.depths.max()) + " symbols");
  }
  for (int l = 0; l < spec.dims(); ++l) {
    const int n = spec.bases[l];
    Rational lo = 0;
    Rational side = 1;
    for (int t = 0; t < cube.depths.coordinate[l]; ++t) {
      side /= n;
      lo += side * word.at(t)[l];
    }
    cube.rectangle.push_back({lo, lo + side});
  }
  return cube;
}

ApproximateCube approximate_cube(const LgSpongeSpec& spec, const ClusterStructure& clusters,
                                 const Word& word, const Rational& r) {
  ApproximateCube cube{word, r, depths_lg(spec, clusters, word, r), {}};
  for (int l = 0; l < spec.dims(); ++l) {
    Rational lo = 0;
    Rational width = 1;
    for (int t = 0; t < cube.depths.coordinate[l]; ++t) {
      const LgNode& node = spec.node(prefix_of(word.at(t), l + 1));
      lo += width * node.translation;
      width *= node.contraction;
    }
    cube.rectangle.push_back({lo, lo + width});
  }
  return cube;
}

BernoulliWeights pcu_weights(const SpongeSpec& spec) {
  ValidationReport report = validate_bm(spec);
  if (!report.ok()) throw InvalidSpec(report.violations.front().detail);
  BernoulliWeights out;
  out.clusters = cluster(spec);
  const DigitTree tree = digit_tree(spec, out.clusters);
  out.conditional.resize(out.clusters.count());
  out.exact_conditional.resize(out.clusters.count());
  for (const Digit& digit : tree.leaves()) {
    Rational weight = 1;
    for (int l = 0; l < out.clusters.count(); ++l) {
      const Rational p(1, tree.child_count(prefix_of(digit, out.clusters.begin(l))));
      const Digit through = prefix_of(digit, out.clusters.end(l));
      out.exact_conditional[l][through] = p;
      out.conditional[l][through] = to_double(p);
      weight *= p;
    }
    out.exact_weight[digit] = weight;
    out.weight[digit] = to_double(weight);
  }
  return out;
}

BernoulliWeights lg_weights(const LgSpongeSpec& spec, const ClusterStructure& clusters,
                            const MoranExponents& exponents) {
  BernoulliWeights out;
  out.clusters = clusters;
  out.conditional.resize(clusters.count());
  if (static_cast<int>(exponents.by_prefix.size()) + 1 != clusters.count()) {
    throw NoSolution("Moran exponents do not match the clustering");
  }
  for (const Digit& digit : spec.digits()) {
    double weight = 1;
    for (int l = 0; l < clusters.count(); ++l) {
      double s = exponents.root;
      if (l > 0) {
        const auto& level = exponents.by_prefix[l - 1];
        auto it = level.find(prefix_of(digit, clusters.begin(l)));
        if (it == level.end()) throw NoSolution("no Moran exponent for prefix " + to_string(prefix_of(digit, clusters.begin(l))));
        s = it->second;
      }
      const Digit through = prefix_of(digit, clusters.end(l));
      const double p = std::pow(to_double(spec.node(through).contraction), s);
      out.conditional[l][through] = p;
      weight *= p;
    }
    out.weight[digit] = weight;
  }
  return out;
}

double cube_measure(const BernoulliWeights& weights, std::span<const Digit> symbols,
                    std::span<const int> cluster_depths) {
  double measure = 1;
  for (int l = 0; l < weights.clusters.count(); ++l) {
    const int k = cluster_depths[l];
    if (static_cast<std::size_t>(k) > symbols.size()) {
      throw WordTooShort("cube measure needs " + std::to_string(k) + " symbols");
    }
    const int end = weights.clusters.end(l);
    for (int j = 0; j < k; ++j) measure *= weights.conditional[l].at(prefix_of(symbols[j], end));
  }
  return measure;
}

double cube_measure(const BernoulliWeights& weights, const ApproximateCube& cube) {
  const std::vector<Digit> symbols = cube.word.prefix(cube.depths.max());
  return cube_measure(weights, symbols, cube.depths.cluster);
}

Rational cube_measure_exact(const BernoulliWeights& weights, const ApproximateCube& cube) {
  if (!weights.exact()) throw Error("cube_measure_exact requires exact weights");
  Rational measure = 1;
  for (int l = 0; l < weights.clusters.count(); ++l) {
    const int end = weights.clusters.end(l);
    for (int j = 0; j < cube.depths.cluster[l]; ++j) {
      measure *= weights.exact_conditional[l].at(prefix_of(cube.word.at(j), end));
    }
  }
  return measure;
}

}  // namespace sponge
