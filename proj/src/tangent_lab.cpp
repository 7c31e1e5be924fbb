#include "sponge/tangent_lab.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "sponge/errors.hpp"

namespace sponge {
namespace {

void require_valid(const SpongeSpec& spec) {
  const ValidationReport report = validate_bm(spec);
  if (!report.ok()) throw InvalidSpec(report.violations.front().rule + ": " + report.violations.front().detail);
}

void require_valid(const LgSpongeSpec& spec) {
  const ValidationReport report = validate_lg(spec);
  if (!report.ok()) throw InvalidSpec(report.violations.front().rule + ": " + report.violations.front().detail);
}

// One symbol position of a cell enumeration: the axes it refines and the
// distinct digit values it can put there.
struct Position {
  std::vector<int> axes;
  std::set<std::vector<int>> options;
};

double cell_count(const std::vector<Position>& positions) {
  double count = 1;
  for (const Position& p : positions) {
    if (!p.axes.empty()) count *= static_cast<double>(p.options.size());
  }
  return count;
}

// Every cell obtained by choosing one option per position; each axis takes
// the digits of the positions that refine it, most significant first.
BoxSet spell_cells(const std::vector<AxisGrid>& axes, const std::vector<Position>& positions, std::size_t budget) {
  const double count = cell_count(positions);
  if (count > static_cast<double>(budget)) {
    throw BudgetExceeded(std::to_string(static_cast<long double>(count)) + " cells exceed the budget of " +
                         std::to_string(budget));
  }
  BoxSet out(axes);
  std::vector<std::int64_t> index(axes.size(), 0);
  std::function<void(std::size_t)> walk = [&](std::size_t at) {
    if (at == positions.size()) {
      out.add_cell(index);
      return;
    }
    const Position& p = positions[at];
    if (p.axes.empty()) {
      walk(at + 1);
      return;
    }
    const std::vector<std::int64_t> saved = index;
    for (const std::vector<int>& option : p.options) {
      for (std::size_t k = 0; k < p.axes.size(); ++k) {
        const int a = p.axes[k];
        index[a] = index[a] * axes[a].base + option[k];
      }
      walk(at + 1);
      index = saved;
    }
  };
  walk(0);
  return out;
}

std::vector<AxisGrid> cluster_axes(const SpongeSpec& spec, const ClusterStructure& clusters,
                                   const std::vector<int>& depths) {
  std::vector<AxisGrid> axes;
  for (int a = 0; a < spec.dims(); ++a) axes.push_back({spec.bases[a], depths[clusters.cluster_of[a]]});
  return axes;
}

// Cells of the m-th pre-fractal of the self-similar set in `count` axes with
// the given blocks as digits.
BoxSet block_prefractal(int base, int count, const std::vector<Digit>& blocks, int m, std::size_t budget) {
  std::vector<int> axes(count);
  for (int a = 0; a < count; ++a) axes[a] = a;
  Position position{axes, {blocks.begin(), blocks.end()}};
  return spell_cells(std::vector<AxisGrid>(count, AxisGrid{base, m}), std::vector<Position>(m, position), budget);
}

Digit first_extension(const std::vector<Digit>& sorted_digits, const Digit& prefix) {
  for (const Digit& digit : sorted_digits) {
    if (std::equal(prefix.begin(), prefix.end(), digit.begin())) return digit;
  }
  throw Error("no digit extends prefix " + to_string(prefix));
}

std::vector<std::vector<std::int64_t>> corners(const BoxSet& set) {
  std::vector<std::vector<std::int64_t>> out(set.size(), std::vector<std::int64_t>(set.dims()));
  for (std::size_t box = 0; box < set.size(); ++box) {
    for (int a = 0; a < set.dims(); ++a) out[box][a] = set.lo(box, a);
  }
  return out;
}

}  // namespace

std::vector<Rational> AffineZoom::apply(const std::vector<Rational>& point) const {
  std::vector<Rational> out;
  for (std::size_t l = 0; l < point.size(); ++l) out.push_back(scale[l] * (point[l] - offset[l]));
  return out;
}

AffineZoom zoom_map(const ApproximateCube& cube) {
  AffineZoom zoom;
  for (const RationalInterval& side : cube.rectangle) {
    zoom.scale.push_back(Rational(1) / side.length());
    zoom.offset.push_back(side.lo);
  }
  zoom.lipschitz_lo = *std::min_element(zoom.scale.begin(), zoom.scale.end());
  zoom.lipschitz_hi = *std::max_element(zoom.scale.begin(), zoom.scale.end());
  return zoom;
}

std::vector<Digit> select_maximizers(const SpongeSpec& spec) {
  require_valid(spec);
  const ClusterStructure clusters = cluster(spec);
  const DigitTree tree = digit_tree(spec, clusters);
  const DimensionReport report = assouad_lower_bm(spec);
  const std::vector<Digit> leaves = tree.leaves();
  std::vector<Digit> out(clusters.count());
  for (int l = 1; l < clusters.count(); ++l) out[l] = first_extension(leaves, report.terms[l].argmax_prefix);
  return out;
}

std::vector<Digit> select_maximizers(const LgSpongeSpec& spec, const ClusterStructure& clusters,
                                     const MoranExponents& exponents) {
  std::vector<Digit> out(clusters.count());
  for (int l = 1; l < clusters.count(); ++l) {
    const std::map<Digit, double>& by_prefix = exponents.by_prefix[l - 1];
    auto best = by_prefix.begin();
    for (auto it = by_prefix.begin(); it != by_prefix.end(); ++it) {
      if (it->second > best->second) best = it;
    }
    out[l] = first_extension(spec.digits(), best->first);
  }
  return out;
}

std::vector<Digit> select_twists(const LgSpongeSpec& spec, const ClusterStructure& clusters) {
  std::vector<Digit> out;
  for (int l = 1; l < clusters.count(); ++l) {
    const auto found = std::find_if(spec.digits().begin(), spec.digits().end(), [&](const Digit& digit) {
      return spec.contraction(digit, clusters.end(l - 1)) > spec.contraction(digit, clusters.end(l));
    });
    if (found == spec.digits().end()) {
      throw NoTwistAvailable("no digit separates clusters " + std::to_string(l) + " and " + std::to_string(l + 1));
    }
    out.push_back(*found);
  }
  return out;
}

TangentWord omega_R(const SpongeSpec& spec, const Rational& big_r) {
  TangentWord out;
  out.maximizers = select_maximizers(spec);
  out.depths = depths_bm(spec, big_r);
  const ClusterStructure clusters = cluster(spec);
  const Digit fill = clusters.count() > 1 ? out.maximizers.back() : digit_tree(spec, clusters).leaves().front();
  std::vector<Digit> head(static_cast<std::size_t>(out.depths.cluster.front()), fill);
  for (int l = 1; l < clusters.count(); ++l) {
    for (int t = out.depths.cluster[l]; t < out.depths.cluster[l - 1]; ++t) head[t] = out.maximizers[l];
  }
  out.word = Word(std::move(head), {fill});
  return out;
}

TangentWord omega_R(const LgSpongeSpec& spec, const Rational& big_r) {
  require_valid(spec);
  if (big_r <= 0) throw InvalidScale("scale must be positive");
  if (big_r > spec.min_contraction()) {
    throw RTooLarge("R = " + to_string(big_r) + " exceeds the smallest contraction " +
                    to_string(spec.min_contraction()));
  }
  const ClusterStructure clusters = lg_cluster(spec);
  const MoranExponents exponents = lg_moran_exponents(spec, clusters);
  const int count = clusters.count();
  TangentWord out;
  out.maximizers = select_maximizers(spec, clusters, exponents);
  const std::vector<Digit> twists = select_twists(spec, clusters);
  const Digit fill = count > 1 ? out.maximizers.back() : spec.digits().front();
  // The first cycle slot has no boundary of its own; it repeats the first twist.
  std::vector<Digit> cycle;
  if (count > 1) {
    cycle.push_back(twists.front());
    cycle.insert(cycle.end(), twists.begin(), twists.end());
  }

  auto build = [&](const Depths& depths, std::size_t& prefix) {
    prefix = count > 1 ? static_cast<std::size_t>(depths.cluster.back() / count) * count : 0;
    const std::size_t length = std::max<std::size_t>(prefix, static_cast<std::size_t>(depths.cluster.front()));
    std::vector<Digit> head(length, fill);
    for (std::size_t t = 0; t < prefix; ++t) head[t] = cycle[t % cycle.size()];
    for (int l = 1; l < count; ++l) {
      for (int t = depths.cluster[l]; t < depths.cluster[l - 1]; ++t) head[t] = out.maximizers[l];
    }
    return Word(std::move(head), {fill});
  };

  std::set<std::vector<Digit>> seen;
  Word word({}, {fill});
  for (int iteration = 0; iteration < 1000; ++iteration) {
    const Depths depths = depths_lg(spec, clusters, word, big_r);
    std::size_t prefix = 0;
    Word next = build(depths, prefix);
    if (next == word) {
      out.word = std::move(word);
      out.depths = depths;
      out.twist_prefix = prefix;
      return out;
    }
    if (!seen.insert(next.head()).second) break;
    word = std::move(next);
  }
  throw Error("omega(R) has no self-consistent word at R = " + to_string(big_r));
}

BoxSet prefractal(const SpongeSpec& spec, int m, std::size_t budget) {
  require_valid(spec);
  if (m < 0) throw Error("negative pre-fractal depth");
  std::vector<int> axes(spec.dims());
  std::vector<AxisGrid> grid;
  for (int a = 0; a < spec.dims(); ++a) {
    axes[a] = a;
    grid.push_back({spec.bases[a], m});
  }
  Position position{axes, {spec.digits.begin(), spec.digits.end()}};
  return spell_cells(grid, std::vector<Position>(m, position), budget);
}

BoxSet cluster_prefractal(const SpongeSpec& spec, int l, const Digit& prefix, int m, std::size_t budget) {
  require_valid(spec);
  if (m < 0) throw Error("negative pre-fractal depth");
  const ClusterStructure clusters = cluster(spec);
  if (l < 0 || l >= clusters.count()) throw Error("cluster index out of range");
  const DigitTree tree = digit_tree(spec, clusters);
  const auto it = tree.nodes(l).find(prefix);
  if (it == tree.nodes(l).end()) throw Error("prefix " + to_string(prefix) + " is not in the digit tree");
  return block_prefractal(clusters.bases[l], clusters.sizes[l], it->second.children, m, budget);
}

BoxSet projection_prefractal(const SpongeSpec& spec, int m, std::size_t budget) {
  return cluster_prefractal(spec, 0, {}, m, budget);
}

BoxSet tangent_product(const SpongeSpec& spec, const std::vector<int>& depths, std::size_t budget) {
  const ClusterStructure clusters = cluster(spec);
  if (static_cast<int>(depths.size()) != clusters.count()) throw Error("need one depth per cluster");
  const std::vector<Digit> maximizers = select_maximizers(spec);
  BoxSet out = projection_prefractal(spec, depths[0], budget);
  for (int l = 1; l < clusters.count(); ++l) {
    out = product(out, cluster_prefractal(spec, l, prefix_of(maximizers[l], clusters.begin(l)), depths[l], budget),
                  budget);
  }
  return out;
}

namespace {

std::vector<Position> zoomed_positions(const SpongeSpec& spec, const TangentWord& omega,
                                       const std::vector<int>& depths) {
  const ClusterStructure clusters = cluster(spec);
  if (static_cast<int>(depths.size()) != clusters.count()) throw Error("need one depth per cluster");
  const std::vector<int>& k = omega.depths.cluster;
  int length = 0;
  for (int l = 0; l < clusters.count(); ++l) length = std::max(length, k[l] + depths[l]);
  const std::vector<Digit> leaves = digit_tree(spec, clusters).leaves();
  std::vector<Position> positions(length);
  for (int t = 0; t < length; ++t) {
    int fixed = 0;
    while (fixed < clusters.count() && k[fixed] > t) ++fixed;
    Position& p = positions[t];
    for (int a = 0; a < spec.dims(); ++a) {
      const int l = clusters.cluster_of[a];
      if (k[l] <= t && t < k[l] + depths[l]) p.axes.push_back(a);
    }
    const Digit pinned = prefix_of(omega.word.at(t), clusters.begin(fixed));
    for (const Digit& digit : leaves) {
      if (!std::equal(pinned.begin(), pinned.end(), digit.begin())) continue;
      std::vector<int> option;
      for (int a : p.axes) option.push_back(digit[a]);
      p.options.insert(std::move(option));
    }
  }
  return positions;
}

}  // namespace

BoxSet zoomed_cover(const SpongeSpec& spec, const TangentWord& omega, const std::vector<int>& depths,
                    std::size_t budget) {
  return spell_cells(cluster_axes(spec, cluster(spec), depths), zoomed_positions(spec, omega, depths), budget);
}

double zoomed_cover_size(const SpongeSpec& spec, const TangentWord& omega, const std::vector<int>& depths) {
  return cell_count(zoomed_positions(spec, omega, depths));
}

ContainmentResult containment_check(const SpongeSpec& spec, const Rational& big_r, int projection_depth,
                                    std::size_t budget) {
  if (projection_depth < 0) throw Error("negative projection depth");
  const TangentWord omega = omega_R(spec, big_r);
  const ClusterStructure clusters = cluster(spec);
  ContainmentResult result;
  result.cluster_depths = omega.depths.cluster;
  result.cover_depths.push_back(projection_depth);
  for (int l = 1; l < clusters.count(); ++l) {
    result.cover_depths.push_back(omega.depths.cluster[l - 1] - omega.depths.cluster[l]);
  }
  const BoxSet cover = zoomed_cover(spec, omega, result.cover_depths, budget);
  const BoxSet target = tangent_product(spec, result.cover_depths, budget);
  if (cover.axes() != target.axes()) throw Error("containment check grids disagree");
  std::vector<std::vector<std::int64_t>> allowed = corners(target);
  std::sort(allowed.begin(), allowed.end());
  allowed.erase(std::unique(allowed.begin(), allowed.end()), allowed.end());
  result.cover_cells = cover.size();
  result.target_cells = allowed.size();
  result.contained = true;
  for (const std::vector<std::int64_t>& cell : corners(cover)) {
    if (!std::binary_search(allowed.begin(), allowed.end(), cell)) {
      result.contained = false;
      result.witness = cell;
      break;
    }
  }
  return result;
}

SweepReport convergence_sweep(const SpongeSpec& spec, const std::vector<Rational>& scales, int resolution_level,
                              std::size_t sweep_budget, std::size_t budget) {
  require_valid(spec);
  if (scales.empty()) throw Error("convergence sweep needs at least one scale");
  const ClusterStructure clusters = cluster(spec);
  const DigitTree tree = digit_tree(spec, clusters);
  const std::vector<Digit> maximizers = select_maximizers(spec);
  std::vector<TangentWord> words;
  for (const Rational& r : scales) words.push_back(omega_R(spec, r));

  auto resolution = [&](int level) { return depths_bm(spec, inverse_power(spec.bases.back(), level)).cluster; };
  auto product_size = [&](const std::vector<int>& e) {
    double count = std::pow(static_cast<double>(tree.root_count()), e[0]);
    for (int l = 1; l < clusters.count(); ++l) {
      count *= std::pow(static_cast<double>(tree.child_count(prefix_of(maximizers[l], clusters.begin(l)))), e[l]);
    }
    return count;
  };
  auto fits = [&](int level) {
    const std::vector<int> e = resolution(level);
    if (product_size(e) > static_cast<double>(sweep_budget)) return false;
    for (const TangentWord& w : words) {
      if (zoomed_cover_size(spec, w, e) > static_cast<double>(sweep_budget)) return false;
    }
    return true;
  };
  if (resolution_level <= 0) {
    resolution_level = 1;
    while (resolution_level < 64 && fits(resolution_level + 1)) ++resolution_level;
  }

  SweepReport report;
  report.resolution = resolution(resolution_level);
  const BoxSet target = tangent_product(spec, report.resolution, budget);
  report.nonincreasing = true;
  report.contained_every_stage = true;
  for (std::size_t i = 0; i < scales.size(); ++i) {
    SweepRow row;
    row.big_r = scales[i];
    row.cluster_depths = words[i].depths.cluster;
    const BoxSet cover = zoomed_cover(spec, words[i], report.resolution, budget);
    row.zoomed_cells = cover.size();
    row.product_cells = target.size();
    row.distance = hausdorff_bounds(target, cover);
    row.contained = containment_check(spec, scales[i], report.resolution[0], budget).contained;
    if (!report.rows.empty() && row.distance.upper > report.rows.back().distance.upper + 2 * kHausdorffTolerance) {
      report.nonincreasing = false;
    }
    report.contained_every_stage = report.contained_every_stage && row.contained;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace sponge
