#ifndef SPONGE_TANGENT_LAB_HPP_
#define SPONGE_TANGENT_LAB_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "sponge/box_set.hpp"
#include "sponge/dimension_engine.hpp"
#include "sponge/rational.hpp"
#include "sponge/sponge_model.hpp"
#include "sponge/symbolic_measure.hpp"

namespace sponge {

inline constexpr std::size_t kDefaultBoxBudget = 10'000'000;
inline constexpr std::size_t kDefaultSweepBudget = 200'000;

// x -> scale * (x - offset), coordinatewise.
struct AffineZoom {
  std::vector<Rational> scale;
  std::vector<Rational> offset;
  Rational lipschitz_lo;
  Rational lipschitz_hi;

  std::vector<Rational> apply(const std::vector<Rational>& point) const;
};

AffineZoom zoom_map(const ApproximateCube& cube);

// Entry l (zero-based cluster, l >= 1) is the lexicographically smallest
// digit whose prefix through cluster l-1 maximises N(prefix). Entry 0 is
// empty.
std::vector<Digit> select_maximizers(const SpongeSpec& spec);
// The same with the Moran exponent s(prefix) in place of N(prefix).
std::vector<Digit> select_maximizers(const LgSpongeSpec& spec, const ClusterStructure& clusters,
                                     const MoranExponents& exponents);

// One digit per cluster boundary: entry l-1 has c(prefix through cluster l-1)
// > c(prefix through cluster l). Empty for a single cluster.
std::vector<Digit> select_twists(const LgSpongeSpec& spec, const ClusterStructure& clusters);

struct TangentWord {
  Word word;
  Depths depths;
  std::vector<Digit> maximizers;
  // Positions (zero-based, half-open) filled with the twist cycle; LG only.
  std::size_t twist_prefix = 0;
};

// Symbols k_l*(R)+1 .. k_{l-1}*(R) equal i(l); all other positions hold
// i(d*), or the smallest digit when there is a single cluster.
TangentWord omega_R(const SpongeSpec& spec, const Rational& big_r);
// Twist cycle first, then the maximiser blocks. The depths depend on the word,
// so the word is rebuilt from its own depths until it stops changing.
TangentWord omega_R(const LgSpongeSpec& spec, const Rational& big_r);

// |D|^m cells with side n_l^-m in coordinate l.
BoxSet prefractal(const SpongeSpec& spec, int m, std::size_t budget = kDefaultBoxBudget);
// m-th pre-fractal of the self-similar set in cluster l (zero-based, l >= 1)
// generated by the blocks extending `prefix` (a member of D_l).
BoxSet cluster_prefractal(const SpongeSpec& spec, int l, const Digit& prefix, int m,
                          std::size_t budget = kDefaultBoxBudget);
// m-th pre-fractal of the projection onto cluster 0.
BoxSet projection_prefractal(const SpongeSpec& spec, int m, std::size_t budget = kDefaultBoxBudget);

// pi_1 K x prod_l K_l with cluster l at depth `depths[l]`.
BoxSet tangent_product(const SpongeSpec& spec, const std::vector<int>& depths,
                       std::size_t budget = kDefaultBoxBudget);

// Cover of T^Q(tau(Q(omega(R), R))) by grid cells: cluster l is resolved to
// depth depths[l] below the cube, i.e. k_l*(R) + depths[l] in the original
// coordinates.
BoxSet zoomed_cover(const SpongeSpec& spec, const TangentWord& omega, const std::vector<int>& depths,
                    std::size_t budget = kDefaultBoxBudget);
// Number of cells zoomed_cover would produce.
double zoomed_cover_size(const SpongeSpec& spec, const TangentWord& omega, const std::vector<int>& depths);

struct ContainmentResult {
  bool contained = false;
  std::vector<int> cluster_depths;  // k_l*(R)
  std::vector<int> cover_depths;    // zoomed depth per cluster
  std::size_t cover_cells = 0;
  std::size_t target_cells = 0;
  // Lower-corner cell indices of an offending cell.
  std::optional<std::vector<std::int64_t>> witness;
};

// Checks T^Q(tau(Q)) inside pi_1 K x prod_{l>=1} K_l^{k_{l-1}* - k_l*} cell by
// cell. Cluster 0 is compared at `projection_depth` levels below the cube,
// against the pre-fractal of pi_1 K at that depth.
ContainmentResult containment_check(const SpongeSpec& spec, const Rational& big_r, int projection_depth = 4,
                                    std::size_t budget = kDefaultBoxBudget);

struct SweepRow {
  Rational big_r;
  std::vector<int> cluster_depths;
  std::size_t zoomed_cells = 0;
  std::size_t product_cells = 0;
  HausdorffBounds distance;
  bool contained = false;
};

struct SweepReport {
  // Zoomed depth per cluster shared by every row.
  std::vector<int> resolution;
  std::vector<SweepRow> rows;
  bool nonincreasing = false;
  bool contained_every_stage = false;
};

// d_H between the product set and the zoomed cube at a common resolution,
// for each R. resolution_level j resolves cluster l to depth k_l(n_d^-j); 0
// picks the largest j whose covers fit in `sweep_budget` cells.
SweepReport convergence_sweep(const SpongeSpec& spec, const std::vector<Rational>& scales, int resolution_level = 0,
                              std::size_t sweep_budget = kDefaultSweepBudget,
                              std::size_t budget = kDefaultBoxBudget);

}  // namespace sponge

#endif  // SPONGE_TANGENT_LAB_HPP_
