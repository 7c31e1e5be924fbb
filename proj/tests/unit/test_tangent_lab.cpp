#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "sponge/errors.hpp"
#include "sponge/random_spec.hpp"
#include "sponge/tangent_lab.hpp"

using namespace sponge;

TEST_CASE("maximising digits") {
  CHECK(select_maximizers(fixtures::fig1())[1] == Digit{0, 0, 0});
  CHECK(select_maximizers(fixtures::modified())[1] == Digit{0, 0, 0});
  const std::vector<Digit> flat = select_maximizers(SpongeSpec::canonical({2, 3}, {{1, 2}, {0, 1}}));
  CHECK(flat[1] == Digit{0, 1});
  CHECK(select_maximizers(SpongeSpec::canonical({2, 2}, {{0, 0}, {1, 1}})).size() == 1);
}

TEST_CASE("twist digits") {
  const LgSpongeSpec grid = uniform_grid_encoding(fixtures::fig1());
  const std::vector<Digit> twists = select_twists(grid, lg_cluster(grid));
  REQUIRE(twists.size() == 1);
  CHECK(twists[0] == Digit{0, 0, 0});
  const LgSpongeSpec square = uniform_grid_encoding(SpongeSpec::canonical({2, 2}, {{0, 0}, {1, 1}}));
  CHECK(select_twists(square, lg_cluster(square)).empty());
  // Only digit (1,0) has a strictly smaller second contraction.
  const LgSpongeSpec one(2, {{{0}, {Rational(1, 3), Rational(0)}},
                             {{1}, {Rational(1, 3), Rational(1, 2)}},
                             {{0, 0}, {Rational(1, 3), Rational(0)}},
                             {{1, 0}, {Rational(1, 4), Rational(0)}}});
  REQUIRE(validate_lg(one).ok());
  CHECK(select_twists(one, lg_cluster(one)) == std::vector<Digit>{{1, 0}});
}

TEST_CASE("omega(R) on the figure-one carpet") {
  const TangentWord w = omega_R(fixtures::fig1(), Rational(1, 81));
  CHECK(w.depths.cluster == std::vector<int>{6, 4});
  CHECK(w.word.at(4) == Digit{0, 0, 0});
  CHECK(w.word.at(5) == Digit{0, 0, 0});
  const TangentWord trivial = omega_R(fixtures::fig1(), Rational(1));
  CHECK(trivial.depths.cluster == std::vector<int>{0, 0});
  CHECK(trivial.word.at(0) == Digit{0, 0, 0});
  // The modified carpet maximiser is (0,0,0) as well; check a non-trivial one.
  const SpongeSpec shifted = SpongeSpec::canonical({2, 3}, {{0, 0}, {1, 1}, {1, 2}});
  const TangentWord s = omega_R(shifted, Rational(1, 9));
  CHECK(s.depths.cluster == std::vector<int>{3, 2});
  CHECK(s.word.at(2) == Digit{1, 1});
}

TEST_CASE("omega(R) for Lalley-Gatzouras agrees with the grid after the twist prefix") {
  const SpongeSpec spec = fixtures::fig1();
  const LgSpongeSpec grid = uniform_grid_encoding(spec);
  for (int k : {4, 5, 6}) {
    const Rational r = inverse_power(3, k);
    const TangentWord bm = omega_R(spec, r);
    const TangentWord lg = omega_R(grid, r);
    CHECK(lg.depths.cluster == bm.depths.cluster);
    CHECK(lg.twist_prefix == static_cast<std::size_t>(bm.depths.cluster.back() / 2 * 2));
    for (int t = bm.depths.cluster[1]; t < bm.depths.cluster[0]; ++t) CHECK(lg.word.at(t) == bm.word.at(t));
  }
  CHECK_THROWS_AS(omega_R(grid, Rational(1, 2)), RTooLarge);
}

TEST_CASE("omega(R) with non-uniform contractions is self-consistent") {
  const LgSpongeSpec carpet(2, {{{0}, {Rational(1, 2), Rational(0)}},
                                {{1}, {Rational(1, 3), Rational(1, 2)}},
                                {{0, 0}, {Rational(1, 4), Rational(0)}},
                                {{0, 1}, {Rational(1, 5), Rational(1, 2)}},
                                {{1, 0}, {Rational(1, 5), Rational(1, 4)}}});
  const ClusterStructure clusters = lg_cluster(carpet);
  for (int k = 3; k <= 12; ++k) {
    const Rational r = inverse_power(5, k);
    const TangentWord w = omega_R(carpet, r);
    const Depths again = depths_lg(carpet, clusters, w.word, r);
    CHECK(again.cluster == w.depths.cluster);
    CHECK(w.depths.cluster[1] <= w.depths.cluster[0]);
    for (int t = w.depths.cluster[1]; t < w.depths.cluster[0]; ++t) CHECK(w.word.at(t) == w.maximizers[1]);
  }
}

TEST_CASE("zoom maps the cube rectangle onto the unit cube") {
  const SpongeSpec spec = fixtures::fig1();
  const AffineZoom zoom = zoom_map(approximate_cube(spec, Word::periodic({{0, 0, 0}}), Rational(1, 3)));
  CHECK(zoom.scale == std::vector<Rational>{2, 3, 3});
  CHECK(zoom.offset == std::vector<Rational>{0, 0, 0});
  const AffineZoom identity = zoom_map(approximate_cube(spec, Word::periodic({{0, 0, 0}}), Rational(1)));
  CHECK(identity.lipschitz_lo == 1);
  CHECK(identity.lipschitz_hi == 1);

  std::mt19937_64 engine(10);
  std::uniform_int_distribution<int> pick(0, 3);
  std::uniform_int_distribution<int> denominator(1, 100000);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<Digit> symbols;
    for (int t = 0; t < 20; ++t) symbols.push_back(spec.digits[pick(engine)]);
    const ApproximateCube cube = approximate_cube(spec, Word(symbols), Rational(1, denominator(engine)));
    const AffineZoom z = zoom_map(cube);
    CHECK(z.lipschitz_hi / z.lipschitz_lo <= 3);
    std::vector<Rational> lo, hi;
    for (const RationalInterval& side : cube.rectangle) {
      lo.push_back(side.lo);
      hi.push_back(side.hi);
    }
    CHECK(z.apply(lo) == std::vector<Rational>(3, 0));
    CHECK(z.apply(hi) == std::vector<Rational>(3, 1));
  }
}

TEST_CASE("pre-fractal box counts") {
  const SpongeSpec spec = fixtures::fig1();
  const BoxSet level1 = prefractal(spec, 1);
  CHECK(level1.size() == 4);
  CHECK(level1.axes()[0].base == 2);
  CHECK(level1.hi_value(0, 0) - level1.lo_value(0, 0) == doctest::Approx(0.5));
  CHECK(level1.hi_value(0, 2) - level1.lo_value(0, 2) == doctest::Approx(1.0 / 3));
  CHECK(prefractal(spec, 0).size() == 1);
  CHECK(prefractal(spec, 3).size() == 64);
  const BoxSet k2 = cluster_prefractal(spec, 1, {0}, 2);
  CHECK(k2.size() == 9);
  CHECK(k2.dims() == 2);
  CHECK(k2.denominator(0) == 9);
  CHECK(projection_prefractal(spec, 3).size() == 8);
  CHECK_THROWS_AS(prefractal(spec, 12, 1000), BudgetExceeded);
}

TEST_CASE("tangent product counts") {
  const SpongeSpec spec = fixtures::fig1();
  const BoxSet k = tangent_product(spec, {3, 2});
  CHECK(k.size() == 8 * 9);
  CHECK(k.dims() == 3);
  const SpongeSpec single = SpongeSpec::canonical({3, 3}, {{0, 0}, {1, 1}, {2, 0}});
  CHECK(tangent_product(single, {2}) == [&] {
    BoxSet p = prefractal(single, 2);
    return p;
  }());
  const BoxSet mod = tangent_product(fixtures::modified(), {2, 3});
  CHECK(mod.size() == 4 * 64);
}

TEST_CASE("containment of the zoomed cube") {
  for (const SpongeSpec& spec : {fixtures::fig1(), fixtures::modified()}) {
    for (int k : {4, 5, 6}) {
      const ContainmentResult result = containment_check(spec, inverse_power(3, k));
      CHECK(result.contained);
      CHECK_FALSE(result.witness.has_value());
      CHECK(result.cover_cells > 0);
    }
  }
  CHECK(containment_check(fixtures::fig1(), Rational(1)).contained);
  std::mt19937_64 engine(31);
  for (int trial = 0; trial < 30; ++trial) {
    const SpongeSpec spec = random_spec(engine, {3, 4, 6});
    CHECK(containment_check(spec, inverse_power(spec.bases.back(), 3), 2).contained);
  }
}

TEST_CASE("convergence sweep on the figure-one carpet") {
  const SweepReport sweep = convergence_sweep(
      fixtures::fig1(), {inverse_power(3, 4), inverse_power(3, 6), inverse_power(3, 8)}, 3);
  REQUIRE(sweep.rows.size() == 3);
  CHECK(sweep.resolution == std::vector<int>{4, 3});
  CHECK(sweep.nonincreasing);
  CHECK(sweep.contained_every_stage);
  // At R = 3^-8 the maximiser block is deeper than the resolution.
  CHECK(sweep.rows[2].distance.upper < 1e-9);
  CHECK(sweep.rows[0].distance.upper >= sweep.rows[2].distance.upper);
}
