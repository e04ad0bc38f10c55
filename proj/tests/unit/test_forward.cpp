#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "smrt/error.hpp"
#include "smrt/forward.hpp"

using namespace smrt;

TEST_SUITE("forward") {

TEST_CASE("2D means against a dense trapezoid rule") {
  const Phantom ph = phantoms::three_bump_2d();
  const auto f = [&](const Point& x) { return ph(x); };
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 40; ++i) {
    const double a = 6.283185307179586 * u(rng);
    const Point c{std::cos(a), std::sin(a), 0.0};
    const double t = 0.05 + 1.85 * u(rng);
    CHECK(spherical_mean(ph, c, t) == doctest::Approx(oracle::surface_mean(f, 2, c, t, 0, 8192)).scale(1.0).epsilon(1e-12));
  }
}

TEST_CASE("3D means against a tensor surface rule") {
  const Phantom ph = phantoms::three_bump_3d();
  const auto f = [&](const Point& x) { return ph(x); };
  for (const Point& c : {Point{1, 0, 0}, Point{0, 0.6, 0.8}, Point{-0.48, 0.6, -0.64}}) {
    for (double t : {0.3, 0.9, 1.2, 1.6}) {
      INFO("t=" << t);
      CHECK(spherical_mean(ph, c, t) == doctest::Approx(oracle::surface_mean(f, 3, c, t, 12, 256)).scale(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("generic integrand path agrees with the phantom path") {
  for (int dim : {2, 3}) {
    const Phantom ph = dim == 2 ? phantoms::three_bump_2d() : phantoms::three_bump_3d();
    const SphericalMeanEvaluator eval(48);
    const auto f = [&](const Point& x) { return ph(x); };
    for (double t : {0.2, 0.7, 1.3}) {
      const Point c = dim == 2 ? Point{0.6, 0.8, 0} : Point{0.0, 0.6, 0.8};
      CHECK(eval(f, dim, ph.support_radius(), c, t) == doctest::Approx(eval(ph, c, t)).scale(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("boundary data layout and vanishing ends") {
  const Phantom ph = phantoms::three_bump_2d();
  const auto g = forward_transform(ph, CenterGrid::circle(16), uniform_grid(101, 2.0), 24);
  CHECK(g.n_centers() == 16);
  CHECK(g.n_t() == 101);
  CHECK(g.dt() == doctest::Approx(0.02));
  for (std::size_t c = 0; c < g.n_centers(); ++c) {
    CHECK(g.at(c, 0) == 0.0);
    for (std::size_t j = 0; j < g.n_t(); ++j)
      if (g.t_grid[j] >= 1.9) CHECK(g.at(c, j) == 0.0);
    CHECK(g.row(c)[50] == g.at(c, 50));
  }
  CHECK_THROWS_AS(forward_transform(ph, CenterGrid::gauss_sphere(4, 8), uniform_grid(10, 2.0)), GridError);
  CHECK_THROWS_AS(SphericalMeanEvaluator(3), GridError);
  CHECK_THROWS_AS(spherical_mean(ph, {1, 0, 0}, -0.1), Error);
}

TEST_CASE("interior means satisfy the Darboux equation to second order") {
  const Phantom ph = phantoms::radial(3, 0.25);
  ProjectionOptions po;
  po.n_polar = 4;
  po.n_azimuth = 8;
  DarbouxResidualOptions o;
  o.r_min = 0.25;
  o.r_max = 0.75;
  o.t_min = 0.25;
  o.t_max = 1.5;
  double res[2];
  for (int s = 0; s < 2; ++s) {
    const int n = 32 << s;
    const auto F = interior_means(ph, uniform_grid(n + 1, 1.0), uniform_grid(5 * n / 2 + 1, 2.0), 0, po, 32);
    res[s] = darboux_residual(F, 0, o);
  }
  CHECK(res[0] / res[1] == doctest::Approx(4.0).epsilon(0.12));
  CHECK_THROWS_AS(interior_means(ph, uniform_grid(9, 1.0), uniform_grid(9, 2.0), 8, po), GridError);
}

TEST_CASE("residual of a synthetic field and grid guard") {
  // r^2 + t^2 solves the m = 0 equation exactly in any dimension.
  const auto F = darboux_field_from({3, 0, 1}, uniform_grid(21, 1.0), uniform_grid(41, 2.0),
                                    [](double r, double t) { return r * r + t * t; });
  CHECK(darboux_residual(F, 0) < 1e-10);
  const auto small = darboux_field_from({3, 0, 1}, uniform_grid(5, 1.0), uniform_grid(41, 2.0),
                                        [](double r, double t) { return r + t; });
  CHECK_THROWS_AS(darboux_residual(small, 0), GridError);
}

}
