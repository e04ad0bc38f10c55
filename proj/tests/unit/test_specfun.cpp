#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "smrt/error.hpp"
#include "smrt/specfun.hpp"

using namespace smrt;

TEST_SUITE("specfun") {

TEST_CASE("bessel_j agrees with Boost across orders and arguments") {
  for (double p : {-0.5, 0.0, 0.5, 1.0, 2.5, 7.0, 8.5, 20.0, 40.0}) {
    for (double x = p < 0 ? 0.01 : 0.0; x <= 120.0; x += 0.173) {
      const double ref = oracle::bessel_j(p, x);
      INFO("p=" << p << " x=" << x);
      CHECK(std::abs(bessel_j(Order(p), x) - ref) <= 1e-12);
    }
  }
}

TEST_CASE("bessel_j in the transition band of high orders") {
  for (double p : {12.5, 30.0, 60.5}) {
    for (double x : {0.5 * p, p, 1.5 * p, 2.0 * p, 3.0 * p}) {
      const double ref = oracle::bessel_j(p, x);
      INFO("p=" << p << " x=" << x);
      CHECK(std::abs(bessel_j(Order(p), x) - ref) <= 1e-12 * std::max(1.0, std::abs(ref) * 1e3));
    }
  }
}

TEST_CASE("derivative matches the recurrence through Boost") {
  for (double p : {0.0, 0.5, 3.0, 9.5}) {
    for (double x = 0.05; x < 40.0; x += 0.61) {
      const double ref = 0.5 * (oracle::bessel_j(p - 1.0, x) - oracle::bessel_j(p + 1.0, x));
      CHECK(bessel_j_derivative(Order(p), x) == doctest::Approx(ref).epsilon(1e-9).scale(1.0));
    }
  }
}

TEST_CASE("normalized_j closed forms and symmetry") {
  for (double x : {0.0, 0.3, 1.0, 5.0, 17.0}) {
    CHECK(normalized_j(Order(-0.5), x) == doctest::Approx(std::cos(x)).epsilon(1e-13));
    const double sinc = x == 0.0 ? 1.0 : std::sin(x) / x;
    CHECK(normalized_j(Order(0.5), x) == doctest::Approx(sinc).epsilon(1e-13).scale(1.0));
    CHECK(normalized_j(Order(2.0), x) == doctest::Approx(normalized_j(Order(2.0), -x)));
  }
  CHECK(normalized_j(Order(7.5), 0.0) == 1.0);
}

TEST_CASE("series coefficients") {
  for (double p : {0.0, 0.5, 3.5}) {
    const auto c = series_coeffs(Order(p), 8);
    for (int k = 0; k < 8; ++k) {
      const double ref = (k % 2 ? -1.0 : 1.0) * std::tgamma(p + 1.0) /
                         (std::pow(4.0, k) * std::tgamma(k + 1.0) * std::tgamma(k + p + 1.0));
      CHECK(c[k] == doctest::Approx(ref).epsilon(1e-14));
    }
  }
}

TEST_CASE("zeros agree with Boost") {
  for (double p : {0.0, 0.5, 1.0, 3.5, 8.5, 10.0, 24.0}) {
    const auto z = bessel_zeros(Order(p), 12);
    REQUIRE(z.size() == 12);
    for (int k = 0; k < 12; ++k) CHECK(z[k] == doctest::Approx(oracle::bessel_zero(p, k + 1)).epsilon(1e-12));
  }
}

TEST_CASE("order validation") {
  CHECK_THROWS_AS(Order(-0.6), UnsupportedOrderError);
  CHECK_THROWS_AS(Order(kMaxBesselOrder + 1.0), UnsupportedOrderError);
  CHECK(Order::from_dim_degree(3, 2).value() == 2.5);
  CHECK(Order::from_dim_degree(2, 0).value() == 0.0);
  CHECK_THROWS_AS(bessel_j(Order(1.0), -1.0), Error);
  CHECK_THROWS_AS(bessel_zeros(Order(1.0), 0), Error);
}

TEST_CASE("harmonic counting and indexing") {
  CHECK(harmonic_count(2, 0) == 1);
  CHECK(harmonic_count(2, 5) == 2);
  CHECK(harmonic_count(3, 4) == 9);
  const auto idx = harmonic_indices(3, 4);
  CHECK(idx.size() == 25);
  for (std::size_t i = 0; i < idx.size(); ++i) CHECK(harmonic_position(idx[i]) == i);
  CHECK(harmonic_indices(2, 3).size() == 7);
  CHECK_THROWS_AS(eval_harmonic({3, 2, 6}, {0.0, 0.0, 1.0}), IndexError);
  CHECK_THROWS_AS(eval_harmonic({2, 1, 1}, {2.0, 0.0, 0.0}), Error);
}

TEST_CASE("3D harmonics match associated Legendre functions") {
  const double pi = std::numbers::pi;
  for (double theta : {0.3, 1.1, 2.5}) {
    for (double phi : {0.2, 2.0, -1.3}) {
      const Point d{std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
      for (unsigned m = 0; m <= 6; ++m) {
        for (int mu = -static_cast<int>(m); mu <= static_cast<int>(m); ++mu) {
          const unsigned a = static_cast<unsigned>(std::abs(mu));
          double norm = std::sqrt((2.0 * m + 1.0) / (4.0 * pi) * std::tgamma(m - a + 1.0) / std::tgamma(m + a + 1.0));
          if (mu != 0) norm *= std::sqrt(2.0);
          const double ang = mu > 0 ? std::cos(a * phi) : mu < 0 ? std::sin(a * phi) : 1.0;
          const double ref = norm * std::assoc_legendre(m, a, std::cos(theta)) * ang;
          const HarmonicIndex idx{3, static_cast<int>(m), static_cast<int>(m) + 1 + mu};
          CHECK(eval_harmonic(idx, d) == doctest::Approx(ref).epsilon(1e-12).scale(1.0));
        }
      }
    }
  }
}

TEST_CASE("harmonics are orthonormal under an independent surface rule") {
  for (int dim : {2, 3}) {
    const auto idx = harmonic_indices(dim, 4);
    for (std::size_t a = 0; a < idx.size(); ++a) {
      for (std::size_t b = a; b < idx.size(); ++b) {
        const double mean = oracle::surface_mean(
            [&](const Point& x) { return eval_harmonic(idx[a], x) * eval_harmonic(idx[b], x); }, dim, {0, 0, 0}, 1.0,
            4, 64);
        const double gram = mean * (dim == 2 ? 2.0 : 4.0) * std::numbers::pi;
        CHECK(gram == doctest::Approx(a == b ? 1.0 : 0.0).scale(1.0).epsilon(1e-12));
      }
    }
  }
}

}
