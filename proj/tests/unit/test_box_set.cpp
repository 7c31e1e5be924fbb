#include <doctest.h>

#include <cmath>
#include <random>

#include "sponge/box_set.hpp"
#include "sponge/errors.hpp"

using namespace sponge;

namespace {

BoxSet random_cells(std::mt19937_64& engine, int dims, int base, int depth, int count) {
  std::vector<AxisGrid> axes(dims, AxisGrid{base, depth});
  BoxSet set(axes);
  const std::int64_t side = static_cast<std::int64_t>(std::pow(base, depth));
  std::uniform_int_distribution<std::int64_t> pick(0, side - 1);
  for (int k = 0; k < count; ++k) {
    std::vector<std::int64_t> index(dims);
    for (auto& v : index) v = pick(engine);
    set.add_cell(index);
  }
  return set;
}

// Distance from p to the union, by brute force over boxes.
double distance_to(const BoxSet& set, const std::vector<double>& p) {
  double best = INFINITY;
  for (std::size_t b = 0; b < set.size(); ++b) {
    double sum = 0;
    for (int a = 0; a < set.dims(); ++a) {
      const double g = std::max({set.lo_value(b, a) - p[a], 0.0, p[a] - set.hi_value(b, a)});
      sum += g * g;
    }
    best = std::min(best, std::sqrt(sum));
  }
  return best;
}

}  // namespace

TEST_CASE("two points on a line") {
  BoxSet a({AxisGrid{2, 0}});
  BoxSet b({AxisGrid{2, 0}});
  const std::vector<std::int64_t> zero{0};
  const std::vector<std::int64_t> one{1};
  a.add(zero, zero);
  b.add(one, one);
  const HausdorffBounds d = hausdorff_bounds(a, b);
  CHECK(d.lower == doctest::Approx(1.0));
  CHECK(d.upper == doctest::Approx(1.0));
  CHECK(hausdorff_distance(a, b) == doctest::Approx(1.0));
}

TEST_CASE("distance of a set to itself is zero") {
  std::mt19937_64 engine(3);
  const BoxSet a = random_cells(engine, 3, 3, 3, 200);
  CHECK(hausdorff_distance(a, a) == 0.0);
  CHECK(hausdorff_bounds_serial(a, a).upper == 0.0);
}

TEST_CASE("empty sets are rejected") {
  BoxSet a({AxisGrid{2, 1}});
  BoxSet b({AxisGrid{2, 1}});
  const std::vector<std::int64_t> cell{0};
  b.add_cell(cell);
  CHECK_THROWS_AS(hausdorff_bounds(a, b), EmptySet);
  CHECK_THROWS_AS(hausdorff_bounds_serial(b, a), EmptySet);
}

TEST_CASE("interval against a point has its supremum at the far end") {
  BoxSet a({AxisGrid{4, 1}});
  BoxSet b({AxisGrid{4, 1}});
  a.add(std::vector<std::int64_t>{0}, std::vector<std::int64_t>{4});
  b.add(std::vector<std::int64_t>{1}, std::vector<std::int64_t>{1});
  CHECK(hausdorff_distance(a, b) == doctest::Approx(0.75));
}

TEST_CASE("supremum between lattice points is found") {
  // A square against two corner cells: the farthest point is off every vertex.
  BoxSet a({AxisGrid{8, 1}, AxisGrid{8, 1}});
  a.add(std::vector<std::int64_t>{0, 0}, std::vector<std::int64_t>{8, 8});
  BoxSet b({AxisGrid{8, 1}, AxisGrid{8, 1}});
  b.add_cell(std::vector<std::int64_t>{0, 0});
  b.add_cell(std::vector<std::int64_t>{7, 0});
  const HausdorffBounds d = hausdorff_bounds(a, b);
  // Farthest points lie on the top edge above the gap between the cells.
  const double expected = std::hypot(0.5 - 0.125, 1 - 0.125);
  CHECK(d.lower <= expected + 1e-12);
  CHECK(d.upper >= expected - 1e-12);
  CHECK(d.upper - d.lower <= 2e-9);
}

TEST_CASE("parallel and serial bounds agree and bracket sampled distances") {
  std::mt19937_64 engine(12);
  for (int trial = 0; trial < 10; ++trial) {
    const int dims = 1 + trial % 3;
    const BoxSet a = random_cells(engine, dims, 3, 2, 12);
    const BoxSet b = random_cells(engine, dims, 3, 2, 12);
    const HausdorffBounds fast = hausdorff_bounds(a, b);
    const HausdorffBounds slow = hausdorff_bounds_serial(a, b);
    CHECK(fast.lower <= fast.upper);
    CHECK(fast.upper - fast.lower <= 1e-8);
    CHECK(std::abs(fast.upper - slow.upper) <= 2e-9);
    // Sampled points of each set lower-bound the directed distances.
    std::uniform_real_distribution<double> unit(0, 1);
    double sampled = 0;
    for (const BoxSet* from : {&a, &b}) {
      const BoxSet& to = from == &a ? b : a;
      for (std::size_t box = 0; box < from->size(); ++box) {
        for (int s = 0; s < 20; ++s) {
          std::vector<double> p(dims);
          for (int ax = 0; ax < dims; ++ax) {
            p[ax] = from->lo_value(box, ax) + unit(engine) * (from->hi_value(box, ax) - from->lo_value(box, ax));
          }
          sampled = std::max(sampled, distance_to(to, p));
        }
      }
    }
    CHECK(sampled <= fast.upper + 1e-12);
  }
}

TEST_CASE("products and voxel exchange") {
  BoxSet a({AxisGrid{2, 1}});
  a.add_cell(std::vector<std::int64_t>{0});
  a.add_cell(std::vector<std::int64_t>{1});
  BoxSet b({AxisGrid{3, 1}, AxisGrid{3, 1}});
  b.add_cell(std::vector<std::int64_t>{2, 1});
  const BoxSet p = product(a, b, 100);
  CHECK(p.size() == 2);
  CHECK(p.dims() == 3);
  CHECK_THROWS_AS(product(a, b, 1), BudgetExceeded);
  const BoxSet back = parse_voxels(export_voxels(p));
  CHECK(back == p);
  CHECK(export_intervals(b) == "0.66666666666666663 1 0.33333333333333331 0.66666666666666663\n");
  CHECK_THROWS_AS(parse_voxels("not voxels"), ParseError);
  CHECK_THROWS(a.add(std::vector<std::int64_t>{0}, std::vector<std::int64_t>{3}));
  CHECK_THROWS_AS(AxisGrid({3, 60}).denominator(), BudgetExceeded);
}

TEST_CASE("normalize sorts and removes duplicates") {
  BoxSet a({AxisGrid{2, 2}});
  a.add_cell(std::vector<std::int64_t>{3});
  a.add_cell(std::vector<std::int64_t>{1});
  a.add_cell(std::vector<std::int64_t>{3});
  a.normalize();
  CHECK(a.size() == 2);
  CHECK(a.lo(0, 0) == 1);
  CHECK(a.covers(std::vector<std::int64_t>{3}, std::vector<std::int64_t>{4}));
  CHECK_FALSE(a.covers(std::vector<std::int64_t>{2}, std::vector<std::int64_t>{3}));
}
