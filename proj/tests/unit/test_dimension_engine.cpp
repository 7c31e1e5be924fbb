#include <doctest.h>

#include <cmath>
#include <algorithm>
#include <numeric>
#include <random>

#include "fixtures.hpp"
#include "sponge/dimension_engine.hpp"
#include "sponge/errors.hpp"
#include "sponge/random_spec.hpp"

using namespace sponge;

TEST_CASE("clustered formula on the two carpets") {
  const DimensionReport fig = assouad_lower_bm(fixtures::fig1());
  CHECK(fig.assouad == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(fig.lower == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(fig.terms[1].argmax_prefix == Digit{0});
  CHECK(fig.terms[1].argmin_prefix == Digit{1});
  const DimensionReport mod = assouad_lower_bm(fixtures::modified());
  CHECK(std::abs(mod.assouad - (1 + std::log(4.0) / std::log(3.0))) < 1e-12);
  CHECK(std::abs(mod.assouad - 2.2618595071) < 1e-9);
  const DimensionReport self_similar =
      assouad_lower_bm(SpongeSpec::canonical({2, 2, 2}, {{0, 0, 0}, {1, 1, 0}, {0, 1, 1}, {1, 0, 1}}));
  CHECK(self_similar.assouad == doctest::Approx(2.0));
  CHECK(self_similar.lower == doctest::Approx(2.0));
}

TEST_CASE("per-coordinate formula and the drop") {
  const DimensionReport old_mod = assouad_lower_strict_order(fixtures::modified());
  CHECK(std::abs(old_mod.assouad - (2 + std::log(2.0) / std::log(3.0))) < 1e-12);
  CHECK(old_mod.order_dependent);
  CHECK(assouad_lower_strict_order(fixtures::fig1()).assouad == doctest::Approx(2.0));
  const DimensionDrop drop = dimension_drop(fixtures::modified());
  CHECK(std::abs(drop.drop - (1 - std::log(2.0) / std::log(3.0))) < 1e-12);
  CHECK_FALSE(drop.equality_condition_holds);
  const DimensionDrop none = dimension_drop(fixtures::fig1());
  CHECK(std::abs(none.drop) < 1e-12);
  CHECK(none.equality_condition_holds);
}

TEST_CASE("equality condition includes the first cluster") {
  const SpongeSpec spec = SpongeSpec::canonical({2, 2, 3}, {{0, 0, 0}, {0, 1, 0}, {1, 0, 0}});
  const DimensionDrop drop = dimension_drop(spec);
  CHECK(drop.drop > 1e-6);
  CHECK_FALSE(drop.equality_condition_holds);
  CHECK_FALSE(drop.cluster_condition[0]);
}

TEST_CASE("formula properties on random specs") {
  std::mt19937_64 engine(2024);
  for (int trial = 0; trial < 400; ++trial) {
    const SpongeSpec spec = random_spec(engine, {4, 4, 8});
    const DimensionReport clustered = assouad_lower_bm(spec);
    const DimensionReport strict = assouad_lower_strict_order(spec);
    CHECK(clustered.lower <= clustered.assouad + 1e-12);
    CHECK(clustered.assouad <= spec.dims() + 1e-12);
    double sum = 0;
    for (const ClusterTerm& term : clustered.terms) sum += term.max_term;
    CHECK(std::abs(sum - clustered.assouad) < 1e-12);
    CHECK(strict.assouad >= clustered.assouad - 1e-12);
    const DimensionDrop drop = dimension_drop(spec);
    CHECK((drop.drop < 1e-12) == drop.equality_condition_holds);
    if (cluster(spec).count() == spec.dims()) {
      CHECK(std::abs(strict.assouad - clustered.assouad) < 1e-12);
      CHECK(std::abs(strict.lower - clustered.lower) < 1e-12);
    }
    const OrderSpread spread = strict_order_spread(spec);
    CHECK(spread.min_assouad <= strict.assouad + 1e-12);
    CHECK(spread.max_assouad >= strict.assouad - 1e-12);
    CHECK(spread.min_assouad >= clustered.assouad - 1e-12);
  }
}

TEST_CASE("permuting coordinates leaves the dimensions unchanged") {
  std::mt19937_64 engine(99);
  for (int trial = 0; trial < 100; ++trial) {
    const SpongeSpec spec = random_spec(engine);
    std::vector<int> order(spec.dims());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), engine);
    std::vector<int> bases;
    for (int l : order) bases.push_back(spec.bases[l]);
    std::vector<Digit> digits;
    for (const Digit& digit : spec.digits) {
      Digit moved;
      for (int l : order) moved.push_back(digit[l]);
      digits.push_back(moved);
    }
    const DimensionReport a = assouad_lower_bm(spec);
    const DimensionReport b = assouad_lower_bm(SpongeSpec::canonical(bases, digits));
    CHECK(std::abs(a.assouad - b.assouad) < 1e-12);
    CHECK(std::abs(a.lower - b.lower) < 1e-12);
  }
}

TEST_CASE("moran solver analytic cases") {
  const std::vector<Rational> halves{Rational(1, 2), Rational(1, 2)};
  CHECK(std::abs(moran_solve(halves).exponent - 1.0) < 1e-12);
  const std::vector<Rational> quarters(3, Rational(1, 4));
  CHECK(std::abs(moran_solve(quarters).exponent - std::log(3.0) / std::log(4.0)) < 1e-12);
  const std::vector<Rational> mixed{Rational(1, 2), Rational(1, 4), Rational(1, 4)};
  CHECK(std::abs(moran_solve(mixed).exponent - 1.0) < 1e-12);
  const std::vector<Rational> single{Rational(1, 3)};
  CHECK(moran_solve(single).exponent == 0.0);
  const std::vector<Rational> unit{Rational(1)};
  CHECK(moran_solve(unit).exponent == 0.0);
}

TEST_CASE("moran solver errors") {
  CHECK_THROWS_AS(moran_solve(std::vector<Rational>{}), InvalidRatio);
  CHECK_THROWS_AS(moran_solve(std::vector<Rational>{Rational(0), Rational(1, 2)}), InvalidRatio);
  CHECK_THROWS_AS(moran_solve(std::vector<Rational>{Rational(3, 2)}), InvalidRatio);
  CHECK_THROWS_AS(moran_solve(std::vector<Rational>{Rational(1), Rational(1, 2)}), NoSolution);
}

TEST_CASE("moran solver residual and monotonicity") {
  std::mt19937_64 engine(7);
  std::uniform_int_distribution<int> count(2, 8);
  std::uniform_int_distribution<int> numerator(1, 99);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Rational> ratios;
    const int n = count(engine);
    for (int j = 0; j < n; ++j) ratios.emplace_back(numerator(engine), 100);
    const MoranSolution s = moran_solve(ratios);
    CHECK(s.residual <= kMoranTolerance);
    CHECK(s.exponent >= 0);
    std::vector<Rational> smaller = ratios;
    smaller[0] /= 2;
    CHECK(moran_solve(smaller).exponent <= s.exponent + 1e-12);
  }
}

TEST_CASE("Lalley-Gatzouras formula reduces to the carpet formula") {
  const DimensionReport fig = assouad_lower_lg(uniform_grid_encoding(fixtures::fig1()));
  CHECK(fig.assouad == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fig.lower == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(to_string(fig.formula) == "lg-clustered");
  const DimensionReport mod = assouad_lower_lg(uniform_grid_encoding(fixtures::modified()));
  CHECK(std::abs(mod.assouad - 2.2618595071) < 1e-9);
  const LgSpongeSpec point(1, {{{0}, {Rational(1, 2), Rational(0)}}});
  const DimensionReport single = assouad_lower_lg(point);
  CHECK(single.assouad == 0.0);
  CHECK(single.lower == 0.0);
  std::mt19937_64 engine(17);
  for (int trial = 0; trial < 100; ++trial) {
    const SpongeSpec spec = random_spec(engine);
    const DimensionReport bm = assouad_lower_bm(spec);
    const DimensionReport lg = assouad_lower_lg(uniform_grid_encoding(spec));
    CHECK(std::abs(bm.assouad - lg.assouad) < 1e-9);
    CHECK(std::abs(bm.lower - lg.lower) < 1e-9);
  }
}

TEST_CASE("Lalley-Gatzouras exponents on a non-grid carpet") {
  const LgSpongeSpec spec(2, {{{0}, {Rational(1, 2), Rational(0)}},
                              {{1}, {Rational(1, 3), Rational(1, 2)}},
                              {{0, 0}, {Rational(1, 4), Rational(0)}},
                              {{0, 1}, {Rational(1, 5), Rational(1, 2)}},
                              {{1, 0}, {Rational(1, 5), Rational(1, 4)}}});
  const ClusterStructure clusters = lg_cluster(spec);
  REQUIRE(clusters.count() == 2);
  const MoranExponents s = lg_moran_exponents(spec, clusters);
  CHECK(std::abs(std::pow(0.5, s.root) + std::pow(1.0 / 3, s.root) - 1) < 1e-12);
  const double s0 = s.by_prefix[0].at({0});
  CHECK(std::abs(std::pow(0.25, s0) + std::pow(0.2, s0) - 1) < 1e-12);
  CHECK(s.by_prefix[0].at({1}) == 0.0);
  const DimensionReport report = assouad_lower_lg(spec);
  CHECK(report.assouad == doctest::Approx(s.root + s0));
  CHECK(report.lower == doctest::Approx(s.root));
}
