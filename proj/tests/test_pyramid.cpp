#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "expofuse/pyramid.hpp"
#include "support/oracles.hpp"

using namespace expofuse;
using testing::random_plane;

TEST_CASE("generating kernel")
{
  const auto w = generating_kernel<double>(0.4);
  CHECK(w[0] == doctest::Approx(0.05));
  CHECK(w[1] == 0.25);
  CHECK(w[2] == 0.4);
  CHECK(w[3] == 0.25);
  CHECK(w[4] == doctest::Approx(0.05));
  // DC gain: full kernel sums to 1; each polyphase component sums to 1/2.
  CHECK(w[0] + w[1] + w[2] + w[3] + w[4] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(w[0] + w[2] + w[4] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(w[1] + w[3] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("mirrored indexing")
{
  CHECK(reflect_index(-1, 5) == 1);
  CHECK(reflect_index(-2, 5) == 2);
  CHECK(reflect_index(5, 5) == 3);
  CHECK(reflect_index(6, 5) == 2);
  CHECK(reflect_index(-1, 2) == 1);
  CHECK(reflect_index(-2, 2) == 0);
  CHECK(reflect_index(3, 2) == 1);
  CHECK(reflect_index(-2, 1) == 0);
}

TEST_CASE("reduce of a 5-sample impulse")
{
  // Hand convolution with mirrored borders: sample 0 sees the impulse twice
  // (at +2 and, mirrored, at -2), so the outer outputs are 0.1.
  PlaneD p(1, 5);
  p << 0, 0, 1, 0, 0;
  const PlaneD out = reduce(p);
  REQUIRE(out.cols() == 3);
  REQUIRE(out.rows() == 1);
  CHECK(out(0, 0) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(out(0, 1) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(out(0, 2) == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("reduce and expand match the direct 2-D oracles (property)")
{
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto rows = static_cast<Eigen::Index>(2 + seed % 11);
    const auto cols = static_cast<Eigen::Index>(2 + (seed * 7) % 13);
    const PlaneD p = random_plane(rows, cols, seed);
    const PlaneD r = reduce(p);
    CHECK(testing::max_abs_diff(r, testing::reduce_oracle(testing::to_grid(p))) <= 1e-14);
    const PlaneD e = expand(r, cols, rows);
    CHECK(testing::max_abs_diff(e, testing::expand_oracle(testing::to_grid(r), static_cast<int>(rows),
                                                          static_cast<int>(cols))) <= 1e-14);
  }
}

TEST_CASE("constant preservation for every parity")
{
  for (Eigen::Index h = 1; h <= 9; ++h) {
    for (Eigen::Index w = 1; w <= 9; ++w) {
      const PlaneD c = PlaneD::Constant(h, w, 0.3);
      if (h > 1 || w > 1) {
        const PlaneD r = reduce(c);
        CHECK(r.rows() == (h + 1) / 2);
        CHECK(r.cols() == (w + 1) / 2);
        CHECK((r - 0.3).abs().maxCoeff() <= 1e-15);
      }
      const PlaneD small = PlaneD::Constant((h + 1) / 2, (w + 1) / 2, 0.3);
      CHECK((expand(small, w, h) - 0.3).abs().maxCoeff() <= 1e-15);
    }
  }
}

TEST_CASE("expand of a single sample")
{
  const PlaneD one = PlaneD::Constant(1, 1, 0.8);
  const PlaneD out = expand(one, 2, 1);
  CHECK(out.cols() == 2);
  CHECK(out(0, 0) == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(out(0, 1) == doctest::Approx(0.8).epsilon(1e-15));
}

TEST_CASE("shape errors")
{
  CHECK_THROWS_AS(reduce(PlaneD::Zero(1, 1)), DimensionError);
  CHECK_THROWS_AS(expand(PlaneD::Zero(3, 3), 7, 7), DimensionError);
  CHECK_THROWS_AS(expand(PlaneD::Zero(3, 3), 5, 7), DimensionError);
}

TEST_CASE("depth rules")
{
  CHECK(max_depth(8, 8) == 1);
  CHECK(max_depth(9, 9) == 1);
  CHECK(max_depth(64, 64) == 4);
  CHECK(max_depth(7, 5) == 0);
  CHECK(max_depth(33, 17) == 2);
  CHECK(default_depth(64, 64) == 3);
  CHECK(default_depth(128, 128) == 4);
  CHECK(default_depth(8, 8) == 1);
  CHECK(default_depth(1000, 9) == 1);
  CHECK(default_depth(7, 7) == 1);
  CHECK_THROWS_AS(default_depth(6, 6), ConfigError);

  const auto g = analyze_gaussian(random_plane(8, 8, 1), 1);
  REQUIRE(g.levels.size() == 2);
  CHECK(g.levels[1].rows() == 4);
  CHECK(g.levels[1].cols() == 4);

  CHECK_THROWS_AS(analyze_gaussian(random_plane(9, 9, 1), 2), ConfigError);
  CHECK_NOTHROW(analyze_gaussian(random_plane(9, 9, 1), 1));
  CHECK_THROWS_AS(analyze_gaussian(random_plane(9, 9, 1), 0), ConfigError);
}

TEST_CASE("Gaussian and Laplacian pyramids of a constant")
{
  const PlaneD c = PlaneD::Constant(32, 24, 0.42);
  const auto g = analyze_gaussian(c, 2);
  for (const auto& level : g.levels)
    CHECK((level - 0.42).abs().maxCoeff() <= 1e-15);
  const auto l = analyze_laplacian(c, 2);
  CHECK(l.kind == PyramidKind::Laplacian);
  CHECK(l.levels[0].abs().maxCoeff() <= 1e-15);
  CHECK(l.levels[1].abs().maxCoeff() <= 1e-15);
  CHECK((l.levels[2] - 0.42).abs().maxCoeff() <= 1e-15);

  Pyramid<double> top_only = l;
  top_only.levels[0].setZero();
  top_only.levels[1].setZero();
  CHECK((collapse(top_only) - 0.42).abs().maxCoeff() <= 1e-15);
}

TEST_CASE("perfect reconstruction (property)")
{
  const std::pair<Eigen::Index, Eigen::Index> sizes[] = {{16, 16}, {17, 33}, {64, 64}, {23, 41}, {8, 9}};
  std::uint64_t seed = 0;
  for (const auto& [rows, cols] : sizes) {
    for (int d = 1; d <= max_depth(cols, rows); ++d) {
      const PlaneD p = random_plane(rows, cols, ++seed);
      CHECK((collapse(analyze_laplacian(p, d)) - p).abs().maxCoeff() <= 1e-9);
    }
  }
}

TEST_CASE("impulse: summing fully expanded levels equals iterative collapse")
{
  PlaneD impulse = PlaneD::Zero(16, 16);
  impulse(7, 9) = 1.0;
  const auto pyr = analyze_laplacian(impulse, 2);

  // Literal form: expand every level up to full size, then add.
  PlaneD total = PlaneD::Zero(16, 16);
  for (int l = 0; l <= pyr.depth(); ++l) {
    PlaneD level = pyr.levels[l];
    for (int k = l - 1; k >= 0; --k)
      level = expand(level, pyr.levels[k].cols(), pyr.levels[k].rows());
    total += level;
  }
  CHECK((total - impulse).abs().maxCoeff() <= 1e-12);
  CHECK((collapse(pyr) - total).abs().maxCoeff() <= 1e-12);

  // Every band carries part of the impulse.
  for (const auto& level : pyr.levels)
    CHECK(level.square().sum() > 0.0);
}

TEST_CASE("linearity (property)")
{
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const PlaneD x = random_plane(16, 16, seed);
    const PlaneD y = random_plane(16, 16, seed + 50);
    const double a = 0.7, b = -1.3;
    const PlaneD mix = a * x + b * y;
    CHECK((reduce(mix) - (a * reduce(x) + b * reduce(y))).abs().maxCoeff() <= 1e-9);
    const PlaneD xs = reduce(x), ys = reduce(y);
    CHECK((expand((a * xs + b * ys).eval(), 16, 16) - (a * expand(xs, 16, 16) + b * expand(ys, 16, 16)))
            .abs()
            .maxCoeff() <= 1e-9);

    const auto px = analyze_laplacian(x, 2);
    const auto py = analyze_laplacian(y, 2);
    const auto pm = analyze_laplacian(mix, 2);
    Pyramid<double> sum = px;
    for (int l = 0; l <= 2; ++l) {
      CHECK((pm.levels[l] - (a * px.levels[l] + b * py.levels[l])).abs().maxCoeff() <= 1e-9);
      sum.levels[l] = px.levels[l] + py.levels[l];
    }
    CHECK((collapse(sum) - (collapse(px) + collapse(py))).abs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("collapse rejects a Gaussian pyramid")
{
  CHECK_THROWS_AS(collapse(analyze_gaussian(random_plane(8, 8, 3), 1)), ConfigError);
}

TEST_CASE("thread split does not change results")
{
  const PlaneD p = random_plane(130, 77, 8);
  set_thread_count(1);
  const auto one = analyze_laplacian(p, 3);
  set_thread_count(5);
  const auto many = analyze_laplacian(p, 3);
  set_thread_count(0);
  for (int l = 0; l <= 3; ++l)
    CHECK((one.levels[l] == many.levels[l]).all());
}
