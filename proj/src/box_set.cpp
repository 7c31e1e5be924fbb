#include "sponge/box_set.hpp"

#include <algorithm>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>

#include "sponge/errors.hpp"

namespace sponge {

std::int64_t AxisGrid::denominator() const {
  std::int64_t value = 1;
  for (int i = 0; i < depth; ++i) {
    if (value > std::numeric_limits<std::int64_t>::max() / base) {
      throw BudgetExceeded("grid " + std::to_string(base) + "^" + std::to_string(depth) + " exceeds 64-bit range");
    }
    value *= base;
  }
  return value;
}

BoxSet::BoxSet(std::vector<AxisGrid> axes) : axes_(std::move(axes)) {
  for (const AxisGrid& axis : axes_) denominators_.push_back(axis.denominator());
}

void BoxSet::add(std::span<const std::int64_t> lo, std::span<const std::int64_t> hi) {
  const int d = dims();
  if (static_cast<int>(lo.size()) != d || static_cast<int>(hi.size()) != d) throw Error("box dimension mismatch");
  for (int axis = 0; axis < d; ++axis) {
    if (lo[axis] < 0 || lo[axis] > hi[axis] || hi[axis] > denominators_[axis]) {
      throw Error("box leaves the unit cube on axis " + std::to_string(axis));
    }
  }
  coords_.insert(coords_.end(), lo.begin(), lo.end());
  coords_.insert(coords_.end(), hi.begin(), hi.end());
}

void BoxSet::add_cell(std::span<const std::int64_t> index) {
  std::vector<std::int64_t> hi(index.begin(), index.end());
  for (auto& value : hi) ++value;
  add(index, hi);
}

double BoxSet::lo_value(std::size_t box, int axis) const {
  return static_cast<double>(lo(box, axis)) / static_cast<double>(denominators_[axis]);
}

double BoxSet::hi_value(std::size_t box, int axis) const {
  return static_cast<double>(hi(box, axis)) / static_cast<double>(denominators_[axis]);
}

void BoxSet::normalize() {
  const std::size_t width = 2 * static_cast<std::size_t>(dims());
  if (width == 0) return;
  std::vector<std::size_t> order(size());
  std::iota(order.begin(), order.end(), 0);
  auto row = [&](std::size_t i) { return coords_.begin() + static_cast<std::ptrdiff_t>(i * width); };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(row(a), row(a) + static_cast<std::ptrdiff_t>(width), row(b),
                                        row(b) + static_cast<std::ptrdiff_t>(width));
  });
  std::vector<std::int64_t> sorted;
  sorted.reserve(coords_.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k > 0 && std::equal(row(order[k]), row(order[k]) + static_cast<std::ptrdiff_t>(width),
                            row(order[k - 1]))) {
      continue;
    }
    sorted.insert(sorted.end(), row(order[k]), row(order[k]) + static_cast<std::ptrdiff_t>(width));
  }
  coords_ = std::move(sorted);
}

bool BoxSet::unit_cells() const {
  for (std::size_t box = 0; box < size(); ++box) {
    for (int axis = 0; axis < dims(); ++axis) {
      if (hi(box, axis) != lo(box, axis) + 1) return false;
    }
  }
  return true;
}

bool BoxSet::covers(std::span<const std::int64_t> lo_q, std::span<const std::int64_t> hi_q) const {
  for (std::size_t box = 0; box < size(); ++box) {
    bool inside = true;
    for (int axis = 0; axis < dims() && inside; ++axis) {
      inside = lo(box, axis) <= lo_q[axis] && hi_q[axis] <= hi(box, axis);
    }
    if (inside) return true;
  }
  return false;
}

BoxSet product(const BoxSet& a, const BoxSet& b, std::size_t budget) {
  if (a.size() != 0 && b.size() > budget / a.size()) {
    throw BudgetExceeded("product of " + std::to_string(a.size()) + " and " + std::to_string(b.size()) +
                         " boxes exceeds the budget of " + std::to_string(budget));
  }
  std::vector<AxisGrid> axes = a.axes();
  axes.insert(axes.end(), b.axes().begin(), b.axes().end());
  BoxSet out(axes);
  std::vector<std::int64_t> lo(axes.size());
  std::vector<std::int64_t> hi(axes.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (int axis = 0; axis < a.dims(); ++axis) {
      lo[axis] = a.lo(i, axis);
      hi[axis] = a.hi(i, axis);
    }
    for (std::size_t j = 0; j < b.size(); ++j) {
      for (int axis = 0; axis < b.dims(); ++axis) {
        lo[a.dims() + axis] = b.lo(j, axis);
        hi[a.dims() + axis] = b.hi(j, axis);
      }
      out.add(lo, hi);
    }
  }
  return out;
}

std::string export_intervals(const BoxSet& set) {
  std::ostringstream out;
  out << std::setprecision(17);
  for (std::size_t box = 0; box < set.size(); ++box) {
    for (int axis = 0; axis < set.dims(); ++axis) {
      if (axis) out << ' ';
      out << set.lo_value(box, axis) << ' ' << set.hi_value(box, axis);
    }
    out << '\n';
  }
  return out.str();
}

std::string export_voxels(const BoxSet& set) {
  if (!set.unit_cells()) throw Error("voxel export needs unit grid cells");
  std::ostringstream out;
  out << "# voxel-boxset 1\n";
  out << "dims " << set.dims() << '\n';
  for (int axis = 0; axis < set.dims(); ++axis) {
    out << "axis " << axis << " base " << set.axes()[axis].base << " depth " << set.axes()[axis].depth << '\n';
  }
  out << "cells " << set.size() << '\n';
  for (std::size_t box = 0; box < set.size(); ++box) {
    for (int axis = 0; axis < set.dims(); ++axis) out << (axis ? " " : "") << set.lo(box, axis);
    out << '\n';
  }
  return out.str();
}

BoxSet parse_voxels(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::string word;
  if (!std::getline(in, line) || line.rfind("# voxel-boxset", 0) != 0) throw ParseError("missing voxel header");
  int dims = 0;
  if (!(in >> word >> dims) || word != "dims" || dims < 1) throw ParseError("bad dims line");
  std::vector<AxisGrid> axes(dims);
  for (int axis = 0; axis < dims; ++axis) {
    int index = 0;
    std::string base_word;
    std::string depth_word;
    if (!(in >> word >> index >> base_word >> axes[axis].base >> depth_word >> axes[axis].depth) ||
        word != "axis" || index != axis || base_word != "base" || depth_word != "depth") {
      throw ParseError("bad axis line " + std::to_string(axis));
    }
  }
  std::size_t count = 0;
  if (!(in >> word >> count) || word != "cells") throw ParseError("bad cells line");
  BoxSet set(axes);
  std::vector<std::int64_t> index(dims);
  for (std::size_t k = 0; k < count; ++k) {
    for (auto& value : index) {
      if (!(in >> value)) throw ParseError("truncated voxel list");
    }
    set.add_cell(index);
  }
  return set;
}

}  // namespace sponge
