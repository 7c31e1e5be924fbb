#ifndef SPONGE_BOX_SET_HPP_
#define SPONGE_BOX_SET_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace sponge {

// Axis grid with spacing base^-depth; box endpoints are integer multiples of it.
struct AxisGrid {
  int base = 2;
  int depth = 0;

  std::int64_t denominator() const;
  bool operator==(const AxisGrid&) const = default;
};

// Finite union of closed axis-aligned boxes inside [0,1]^d with exact
// endpoints lo/denominator and hi/denominator.
class BoxSet {
 public:
  BoxSet() = default;
  explicit BoxSet(std::vector<AxisGrid> axes);

  int dims() const { return static_cast<int>(axes_.size()); }
  const std::vector<AxisGrid>& axes() const { return axes_; }
  std::int64_t denominator(int axis) const { return denominators_[axis]; }
  std::size_t size() const { return dims() == 0 ? 0 : coords_.size() / (2 * dims()); }
  bool empty() const { return size() == 0; }

  void add(std::span<const std::int64_t> lo, std::span<const std::int64_t> hi);
  // The unit grid cell with lower corner `index`.
  void add_cell(std::span<const std::int64_t> index);

  std::int64_t lo(std::size_t box, int axis) const { return coords_[box * 2 * dims() + axis]; }
  std::int64_t hi(std::size_t box, int axis) const { return coords_[box * 2 * dims() + dims() + axis]; }
  double lo_value(std::size_t box, int axis) const;
  double hi_value(std::size_t box, int axis) const;

  // Sorts boxes and removes duplicates.
  void normalize();
  // Every box is a single grid cell.
  bool unit_cells() const;
  // True when the box [lo, hi] (in this set's grid units) lies inside one box of the set.
  bool covers(std::span<const std::int64_t> lo, std::span<const std::int64_t> hi) const;

  bool operator==(const BoxSet&) const = default;

 private:
  std::vector<AxisGrid> axes_;
  std::vector<std::int64_t> denominators_;
  std::vector<std::int64_t> coords_;
};

// Cartesian product; the result has a.size() * b.size() boxes.
BoxSet product(const BoxSet& a, const BoxSet& b, std::size_t budget);

// One box per line: d pairs "lo hi" of decimal endpoints.
std::string export_intervals(const BoxSet& set);
// Lossless: a header naming each axis base and depth, then one line of
// integer lower-corner indices per unit cell.
std::string export_voxels(const BoxSet& set);
BoxSet parse_voxels(const std::string& text);

struct HausdorffBounds {
  double lower = 0;
  double upper = 0;
};

inline constexpr double kHausdorffTolerance = 1e-9;

// Hausdorff distance between the unions of boxes. Per-box suprema of the
// distance function are bracketed by vertex bounds and refined by bisection
// until they agree to `tolerance`; the returned interval always contains
// the exact distance. Parallel over boxes, with a bounding-volume tree for
// nearest-box queries.
HausdorffBounds hausdorff_bounds(const BoxSet& a, const BoxSet& b, double tolerance = kHausdorffTolerance);
double hausdorff_distance(const BoxSet& a, const BoxSet& b);

// Reference version: the same refinement with linear scans, single thread.
HausdorffBounds hausdorff_bounds_serial(const BoxSet& a, const BoxSet& b,
                                        double tolerance = kHausdorffTolerance);

}  // namespace sponge

#endif  // SPONGE_BOX_SET_HPP_
