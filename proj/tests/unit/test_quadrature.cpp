#include <doctest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <numbers>

#include "smrt/error.hpp"
#include "smrt/quadrature.hpp"

using namespace smrt;

TEST_SUITE("quadrature") {

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1 exactly") {
  for (int n : {1, 4, 11, 32}) {
    const auto q = gauss_legendre(n, -0.5, 2.0);
    for (int k = 0; k < 2 * n; ++k) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += q.weights[i] * std::pow(q.nodes[i], k);
      const double ref = (std::pow(2.0, k + 1) - std::pow(-0.5, k + 1)) / (k + 1);
      CHECK(s == doctest::Approx(ref).epsilon(1e-13));
    }
  }
  CHECK_THROWS_AS(gauss_legendre(0), GridError);
}

TEST_CASE("Gauss-Jacobi moments against Beta integrals") {
  boost::math::quadrature::tanh_sinh<double> ts;
  for (auto [a, b] : {std::pair{-0.5, -0.5}, std::pair{0.5, 0.5}, std::pair{1.0, 2.5}, std::pair{-0.3, 0.0}}) {
    const auto q = gauss_jacobi(12, a, b);
    double w = 0.0;
    for (double x : q.weights) w += x;
    CHECK(w == doctest::Approx(std::pow(2.0, a + b + 1) * boost::math::beta(a + 1, b + 1)).epsilon(1e-12));
    for (int k : {1, 5, 23}) {
      double s = 0.0;
      for (std::size_t i = 0; i < q.nodes.size(); ++i) s += q.weights[i] * std::pow(q.nodes[i], k);
      const double ref =
          ts.integrate([&](double x) { return std::pow(1 - x, a) * std::pow(1 + x, b) * std::pow(x, k); }, -1.0, 1.0);
      CHECK(s == doctest::Approx(ref).epsilon(1e-10).scale(1.0));
    }
  }
  CHECK_THROWS_AS(gauss_jacobi(4, -1.0, 0.0), GridError);
}

TEST_CASE("composite rule and uniform grid") {
  const auto q = composite_gauss_legendre(0.0, 3.0, 5, 8);
  CHECK(q.nodes.size() == 40);
  double s = 0.0;
  for (std::size_t i = 0; i < q.nodes.size(); ++i) s += q.weights[i] * std::exp(q.nodes[i]);
  CHECK(s == doctest::Approx(std::exp(3.0) - 1.0).epsilon(1e-12));
  const auto g = uniform_grid(5, 2.0);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 2.0);
  CHECK(g[1] == 0.5);
}

TEST_CASE("Simpson weights are exact for cubics with even and odd interval counts") {
  for (int n : {5, 6, 9, 10, 101}) {
    const double h = 1.5 / (n - 1);
    const auto w = simpson_weights(n, h);
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      const double t = i * h;
      s += w[i] * (t * t * t - 2 * t + 1);
    }
    CHECK(s == doctest::Approx(std::pow(1.5, 4) / 4 - 1.5 * 1.5 + 1.5).epsilon(1e-13));
  }
  const auto tw = trapezoid_weights(3, 0.5);
  CHECK(tw[0] == 0.25);
  CHECK(tw[1] == 0.5);
}

TEST_CASE("six-point interpolation reproduces quintics") {
  std::vector<double> v(40);
  const double h = 0.1;
  auto p = [](double x) { return 1 - x + 0.5 * x * x * x - 0.02 * std::pow(x, 5); };
  for (int i = 0; i < 40; ++i) v[i] = p(i * h);
  for (double x : {0.0, 0.05, 0.77, 2.0, 3.81, 3.9})
    CHECK(interpolate_uniform(v, h, x) == doctest::Approx(p(x)).epsilon(1e-12));
  CHECK(interpolate_uniform(v, h, 4.5, 6, -7.0) == -7.0);
}

TEST_CASE("center grids") {
  const auto c = CenterGrid::circle(16);
  CHECK(c.total_weight() == doctest::Approx(2 * std::numbers::pi));
  CHECK(c.exact_degree() == 7);
  const auto s = CenterGrid::gauss_sphere(10, 21);
  CHECK(s.size() == 210);
  CHECK(s.total_weight() == doctest::Approx(4 * std::numbers::pi));
  CHECK(s.exact_degree() == 9);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto& x = s.points[i];
    CHECK(x[0] * x[0] + x[1] * x[1] + x[2] * x[2] == doctest::Approx(1.0));
    CHECK(s.normals[i] == x);
  }
  CHECK(sphere_area(3) == doctest::Approx(4 * std::numbers::pi));
  CHECK_THROWS_AS(CenterGrid::circle(2), GridError);
  CHECK_THROWS_AS(CenterGrid::custom(2, {{1, 0, 0}}, {}, {1.0}), GridError);
  CHECK(CenterGrid::custom(2, {{1, 0, 0}}, {{1, 0, 0}}, {1.0}).exact_degree() == -1);
}

}
