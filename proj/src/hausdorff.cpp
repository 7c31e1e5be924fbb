#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <vector>

#include "sponge/box_set.hpp"
#include "sponge/errors.hpp"

namespace sponge {
namespace {

constexpr int kLeafSize = 4;
constexpr long kPieceLimit = 20000;

// Boxes as doubles, d lows followed by d highs per box.
struct FlatBoxes {
  int dims = 0;
  std::vector<double> coords;

  explicit FlatBoxes(const BoxSet& set) : dims(set.dims()) {
    coords.reserve(set.size() * 2 * dims);
    for (std::size_t box = 0; box < set.size(); ++box) {
      for (int axis = 0; axis < dims; ++axis) coords.push_back(set.lo_value(box, axis));
      for (int axis = 0; axis < dims; ++axis) coords.push_back(set.hi_value(box, axis));
    }
  }
  std::size_t size() const { return coords.size() / (2 * dims); }
  const double* lo(std::size_t box) const { return coords.data() + box * 2 * dims; }
  const double* hi(std::size_t box) const { return lo(box) + dims; }
};

double gap(double x, double lo, double hi) {
  if (x < lo) return lo - x;
  if (x > hi) return x - hi;
  return 0.0;
}

double point_box_sq(int d, const double* p, const double* lo, const double* hi) {
  double sum = 0;
  for (int axis = 0; axis < d; ++axis) {
    const double g = gap(p[axis], lo[axis], hi[axis]);
    sum += g * g;
  }
  return sum;
}

// Squared max over the vertices of box q of the distance to box b. The
// distance to a box is convex, so this is the max over all of q.
double far_box_sq(int d, const double* q_lo, const double* q_hi, const double* lo, const double* hi) {
  double sum = 0;
  for (int axis = 0; axis < d; ++axis) {
    const double a = gap(q_lo[axis], lo[axis], hi[axis]);
    const double b = gap(q_hi[axis], lo[axis], hi[axis]);
    sum += std::max(a * a, b * b);
  }
  return sum;
}

// Nearest-box queries over one set.
class Oracle {
 public:
  virtual ~Oracle() = default;
  virtual double point_sq(const double* p) const = 0;
  virtual double far_sq(const double* lo, const double* hi) const = 0;
};

class LinearOracle : public Oracle {
 public:
  explicit LinearOracle(const FlatBoxes& boxes) : boxes_(boxes) {}

  double point_sq(const double* p) const override {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < boxes_.size(); ++i) best = std::min(best, point_box_sq(boxes_.dims, p, boxes_.lo(i), boxes_.hi(i)));
    return best;
  }
  double far_sq(const double* lo, const double* hi) const override {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < boxes_.size(); ++i) {
      best = std::min(best, far_box_sq(boxes_.dims, lo, hi, boxes_.lo(i), boxes_.hi(i)));
    }
    return best;
  }

 private:
  const FlatBoxes& boxes_;
};

// Bounding-volume tree; a node's bounds give lower bounds for both queries.
class TreeOracle : public Oracle {
 public:
  explicit TreeOracle(const FlatBoxes& boxes) : boxes_(boxes), order_(boxes.size()) {
    std::iota(order_.begin(), order_.end(), 0);
    if (!order_.empty()) build(0, order_.size());
  }

  double point_sq(const double* p) const override {
    return search([&](const double* lo, const double* hi) { return point_box_sq(boxes_.dims, p, lo, hi); });
  }
  double far_sq(const double* q_lo, const double* q_hi) const override {
    return search([&](const double* lo, const double* hi) { return far_box_sq(boxes_.dims, q_lo, q_hi, lo, hi); });
  }

 private:
  struct Node {
    std::size_t begin = 0;
    std::size_t end = 0;
    int left = -1;
    int right = -1;
    std::vector<double> bounds;  // d lows then d highs
  };

  int build(std::size_t begin, std::size_t end) {
    const int d = boxes_.dims;
    Node node;
    node.begin = begin;
    node.end = end;
    node.bounds.assign(2 * d, 0.0);
    for (int axis = 0; axis < d; ++axis) {
      node.bounds[axis] = std::numeric_limits<double>::infinity();
      node.bounds[d + axis] = -std::numeric_limits<double>::infinity();
    }
    for (std::size_t k = begin; k < end; ++k) {
      for (int axis = 0; axis < d; ++axis) {
        node.bounds[axis] = std::min(node.bounds[axis], boxes_.lo(order_[k])[axis]);
        node.bounds[d + axis] = std::max(node.bounds[d + axis], boxes_.hi(order_[k])[axis]);
      }
    }
    const int index = static_cast<int>(nodes_.size());
    nodes_.push_back(node);
    if (end - begin <= kLeafSize) return index;
    int split_axis = 0;
    for (int axis = 1; axis < d; ++axis) {
      if (node.bounds[d + axis] - node.bounds[axis] > node.bounds[d + split_axis] - node.bounds[split_axis]) {
        split_axis = axis;
      }
    }
    const std::size_t mid = begin + (end - begin) / 2;
    auto center = [&](std::size_t box) { return boxes_.lo(box)[split_axis] + boxes_.hi(box)[split_axis]; };
    std::nth_element(order_.begin() + static_cast<std::ptrdiff_t>(begin), order_.begin() + static_cast<std::ptrdiff_t>(mid),
                     order_.begin() + static_cast<std::ptrdiff_t>(end),
                     [&](std::size_t a, std::size_t b) { return center(a) < center(b); });
    const int left = build(begin, mid);
    const int right = build(mid, end);
    nodes_[index].left = left;
    nodes_[index].right = right;
    return index;
  }

  template <typename Metric>
  double search(Metric metric) const {
    double best = std::numeric_limits<double>::infinity();
    if (nodes_.empty()) return best;
    const int d = boxes_.dims;
    std::vector<std::pair<double, int>> stack{{0.0, 0}};
    while (!stack.empty()) {
      auto [bound, index] = stack.back();
      stack.pop_back();
      if (bound >= best) continue;
      const Node& node = nodes_[index];
      if (node.left < 0) {
        for (std::size_t k = node.begin; k < node.end; ++k) {
          best = std::min(best, metric(boxes_.lo(order_[k]), boxes_.hi(order_[k])));
        }
        continue;
      }
      const Node& l = nodes_[node.left];
      const Node& r = nodes_[node.right];
      const double bl = metric(l.bounds.data(), l.bounds.data() + d);
      const double br = metric(r.bounds.data(), r.bounds.data() + d);
      // Nearer child on top of the stack.
      if (bl < br) {
        stack.emplace_back(br, node.right);
        stack.emplace_back(bl, node.left);
      } else {
        stack.emplace_back(bl, node.left);
        stack.emplace_back(br, node.right);
      }
    }
    return best;
  }

  const FlatBoxes& boxes_;
  std::vector<std::size_t> order_;
  std::vector<Node> nodes_;
};

struct Piece {
  std::vector<double> lo;
  std::vector<double> hi;
  double upper = 0;

  bool operator<(const Piece& other) const { return upper < other.upper; }
};

// Largest distance to the vertices and center of [lo, hi].
double sample_lower(int d, const std::vector<double>& lo, const std::vector<double>& hi, const Oracle& oracle) {
  std::vector<double> p(d);
  double best = 0;
  for (int a = 0; a < d; ++a) p[a] = 0.5 * (lo[a] + hi[a]);
  best = std::max(best, oracle.point_sq(p.data()));
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    for (int a = 0; a < d; ++a) p[a] = (mask >> a) & 1u ? hi[a] : lo[a];
    best = std::max(best, oracle.point_sq(p.data()));
  }
  return std::sqrt(best);
}

// Brackets sup over box of dist(x, other set). Pieces whose upper bound is
// within tolerance of max(floor, own lower) are settled without splitting.
HausdorffBounds box_supremum(int d, const double* lo, const double* hi, const Oracle& oracle, double floor,
                             double tolerance) {
  Piece root{{lo, lo + d}, {hi, hi + d}, std::sqrt(oracle.far_sq(lo, hi))};
  double best_lower = sample_lower(d, root.lo, root.hi, oracle);
  double settled_upper = 0;
  auto settled = [&](double upper) { return upper <= std::max(best_lower, floor) + tolerance; };
  std::priority_queue<Piece> queue;
  queue.push(std::move(root));
  long pieces = 0;
  while (!queue.empty()) {
    if (settled(queue.top().upper) || pieces > kPieceLimit) {
      settled_upper = std::max(settled_upper, queue.top().upper);
      break;
    }
    Piece top = queue.top();
    queue.pop();
    std::vector<int> split_axes;
    for (int a = 0; a < d; ++a) {
      if (top.hi[a] > top.lo[a]) split_axes.push_back(a);
    }
    if (split_axes.empty()) {
      // A point: the vertex sample is exact.
      settled_upper = std::max(settled_upper, sample_lower(d, top.lo, top.hi, oracle));
      continue;
    }
    const unsigned children = 1u << split_axes.size();
    for (unsigned mask = 0; mask < children; ++mask) {
      Piece child{top.lo, top.hi, 0};
      for (std::size_t k = 0; k < split_axes.size(); ++k) {
        const int a = split_axes[k];
        const double mid = 0.5 * (top.lo[a] + top.hi[a]);
        ((mask >> k) & 1u ? child.lo[a] : child.hi[a]) = mid;
      }
      child.upper = std::min(top.upper, std::sqrt(oracle.far_sq(child.lo.data(), child.hi.data())));
      ++pieces;
      if (settled(child.upper)) {
        settled_upper = std::max(settled_upper, child.upper);
        continue;
      }
      best_lower = std::max(best_lower, sample_lower(d, child.lo, child.hi, oracle));
      queue.push(std::move(child));
    }
  }
  return {best_lower, std::max(best_lower, settled_upper)};
}

void check_inputs(const BoxSet& a, const BoxSet& b) {
  if (a.empty() || b.empty()) throw EmptySet("Hausdorff distance needs two nonempty sets");
  if (a.dims() != b.dims()) throw Error("Hausdorff distance between sets of different dimension");
}

// Box indices by decreasing upper bound, paired with that bound.
std::vector<std::pair<double, std::size_t>> by_upper(const FlatBoxes& from, const Oracle& to) {
  std::vector<std::pair<double, std::size_t>> out(from.size());
  const long count = static_cast<long>(from.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < count; ++i) {
    const auto box = static_cast<std::size_t>(i);
    out[box] = {std::sqrt(to.far_sq(from.lo(box), from.hi(box))), box};
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

HausdorffBounds directed_parallel(const FlatBoxes& from, const Oracle& to, double tolerance) {
  const auto order = by_upper(from, to);
  double lower = 0;
  double upper = 0;
  const long count = static_cast<long>(order.size());
  const int d = from.dims;
#pragma omp parallel
  {
    double local_upper = 0;
#pragma omp for schedule(static, 16)
    for (long i = 0; i < count; ++i) {
      double floor;
#pragma omp atomic read
      floor = lower;
      const auto [bound, box] = order[static_cast<std::size_t>(i)];
      // Boxes that cannot beat the running lower bound are skipped.
      if (bound <= floor + tolerance) {
        local_upper = std::max(local_upper, bound);
        continue;
      }
      const HausdorffBounds bounds = box_supremum(d, from.lo(box), from.hi(box), to, floor, tolerance);
      local_upper = std::max(local_upper, bounds.upper);
#pragma omp critical
      lower = std::max(lower, bounds.lower);
    }
#pragma omp critical
    upper = std::max(upper, local_upper);
  }
  return {lower, std::max(lower, upper)};
}

HausdorffBounds directed_serial(const FlatBoxes& from, const Oracle& to, double tolerance) {
  const auto order = by_upper(from, to);
  HausdorffBounds out;
  for (const auto& [bound, box] : order) {
    if (bound <= out.lower + tolerance) {
      out.upper = std::max(out.upper, bound);
      break;
    }
    const HausdorffBounds bounds = box_supremum(from.dims, from.lo(box), from.hi(box), to, out.lower, tolerance);
    out.lower = std::max(out.lower, bounds.lower);
    out.upper = std::max(out.upper, bounds.upper);
  }
  return out;
}

}  // namespace

HausdorffBounds hausdorff_bounds(const BoxSet& a, const BoxSet& b, double tolerance) {
  check_inputs(a, b);
  const FlatBoxes flat_a(a);
  const FlatBoxes flat_b(b);
  const TreeOracle tree_a(flat_a);
  const TreeOracle tree_b(flat_b);
  const HausdorffBounds ab = directed_parallel(flat_a, tree_b, tolerance);
  const HausdorffBounds ba = directed_parallel(flat_b, tree_a, tolerance);
  return {std::max(ab.lower, ba.lower), std::max(ab.upper, ba.upper)};
}

double hausdorff_distance(const BoxSet& a, const BoxSet& b) { return hausdorff_bounds(a, b).upper; }

HausdorffBounds hausdorff_bounds_serial(const BoxSet& a, const BoxSet& b, double tolerance) {
  check_inputs(a, b);
  const FlatBoxes flat_a(a);
  const FlatBoxes flat_b(b);
  const LinearOracle linear_a(flat_a);
  const LinearOracle linear_b(flat_b);
  const HausdorffBounds ab = directed_serial(flat_a, linear_b, tolerance);
  const HausdorffBounds ba = directed_serial(flat_b, linear_a, tolerance);
  return {std::max(ab.lower, ba.lower), std::max(ab.upper, ba.upper)};
}

}  // namespace sponge
