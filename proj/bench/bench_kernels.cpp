// Serial reference against the OpenMP kernels.
#include <chrono>
#include <cstdio>
#include <omp.h>

#include "sponge/box_set.hpp"
#include "sponge/ratio_check.hpp"
#include "sponge/symbolic_measure.hpp"
#include "sponge/tangent_lab.hpp"

using namespace sponge;

namespace {

template <typename F>
double seconds(F&& body) {
  const auto start = std::chrono::steady_clock::now();
  body();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main() {
  const SpongeSpec fig1 = SpongeSpec::canonical({2, 3, 3}, {{0, 0, 0}, {0, 1, 1}, {0, 2, 2}, {1, 0, 1}});
  std::printf("threads: %d\n", omp_get_max_threads());

  const BernoulliWeights weights = pcu_weights(fig1);
  RatioBoundReport serial_ratio, parallel_ratio;
  const double ratio_serial = seconds([&] { serial_ratio = ratio_bound_check_serial(fig1, weights, 20000, 0); });
  const double ratio_parallel = seconds([&] { parallel_ratio = ratio_bound_check(fig1, weights, 20000, 0); });
  std::printf("ratio check, 20000 trials: serial %.3fs, parallel %.3fs, same result: %s\n", ratio_serial,
              ratio_parallel,
              serial_ratio.max_normalized_upper == parallel_ratio.max_normalized_upper ? "yes" : "no");

  const std::vector<int> resolution{5, 3};
  const BoxSet product_set = tangent_product(fig1, resolution);
  const BoxSet cover = zoomed_cover(fig1, omega_R(fig1, inverse_power(3, 4)), resolution);
  HausdorffBounds serial_d, parallel_d;
  const double hd_serial = seconds([&] { serial_d = hausdorff_bounds_serial(product_set, cover); });
  const double hd_parallel = seconds([&] { parallel_d = hausdorff_bounds(product_set, cover); });
  std::printf("hausdorff, %zu x %zu boxes: serial %.3fs [%.12f, %.12f], parallel %.3fs [%.12f, %.12f]\n",
              product_set.size(), cover.size(), hd_serial, serial_d.lower, serial_d.upper, hd_parallel,
              parallel_d.lower, parallel_d.upper);
  return 0;
}
