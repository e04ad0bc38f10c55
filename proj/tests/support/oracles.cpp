#include "oracles.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace oracle {

double bessel_j(double p, double x) { return boost::math::cyl_bessel_j(p, x); }

double bessel_zero(double p, int k) { return boost::math::cyl_bessel_j_zero(p, k); }

double radial_mean_abel(const std::function<double(double)>& F, double a, double t,
                        std::initializer_list<double> breaks) {
  if (a == 0.0) return F(t);
  const double lo = std::abs(a - t);
  const double hi = a + t;
  std::vector<double> cuts{lo};
  for (double b : breaks)
    if (b > lo && b < hi) cuts.push_back(b);
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    auto integrand = [&](double rho) { return F(rho) * rho; };
    sum += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, cuts[i], cuts[i + 1], 15, 1e-14);
  }
  return sum / (2.0 * a * t);
}

double surface_mean(const std::function<double(const smrt::Point&)>& f, int dim, const smrt::Point& center, double t,
                    int panels, int azimuth) {
  using boost::math::quadrature::gauss;
  const double pi = std::numbers::pi;
  if (dim == 2) {
    double s = 0.0;
    for (int k = 0; k < azimuth; ++k) {
      const double phi = 2.0 * pi * k / azimuth;
      s += f({center[0] + t * std::cos(phi), center[1] + t * std::sin(phi), 0.0});
    }
    return s / azimuth;
  }
  double s = 0.0;
  const double h = pi / panels;
  for (int p = 0; p < panels; ++p) {
    auto ring = [&](double theta) {
      double r = 0.0;
      for (int k = 0; k < azimuth; ++k) {
        const double phi = 2.0 * pi * k / azimuth;
        r += f({center[0] + t * std::sin(theta) * std::cos(phi), center[1] + t * std::sin(theta) * std::sin(phi),
                center[2] + t * std::cos(theta)});
      }
      return r / azimuth * std::sin(theta);
    };
    s += gauss<double, 20>::integrate(ring, p * h, (p + 1) * h);
  }
  return 0.5 * s;
}

std::function<double(double)> radial_profile(const smrt::Phantom& ph) {
  return [ph](double rho) { return ph({rho, 0.0, 0.0}); };
}

}  // namespace oracle
