#pragma once

#include <functional>
#include <span>
#include <vector>

#include "smrt/phantom.hpp"
#include "smrt/quadrature.hpp"
#include "smrt/specfun.hpp"

namespace smrt {

/// Sampled g(x, t) = Rf(x, t) on centers x (rows) times t_grid (columns).
/// Carries the 1/omega factor: g is a mean, not a surface integral.
struct BoundaryData {
  int dim = 2;
  double T = 2.0;
  CenterGrid centers;
  std::vector<double> t_grid;
  std::vector<double> values;

  static BoundaryData zeros(CenterGrid centers, std::vector<double> t_grid);

  std::size_t n_centers() const noexcept { return centers.size(); }
  std::size_t n_t() const noexcept { return t_grid.size(); }
  double dt() const noexcept { return t_grid.size() > 1 ? t_grid[1] - t_grid[0] : 0.0; }

  double& at(std::size_t c, std::size_t j) { return values[c * t_grid.size() + j]; }
  double at(std::size_t c, std::size_t j) const { return values[c * t_grid.size() + j]; }
  std::span<const double> row(std::size_t c) const { return {values.data() + c * t_grid.size(), t_grid.size()}; }
};

/// Harmonic representation of the interior means G(x, t):
/// values[channel][i * N_t + j] = G_{l,m}(r_i, t_j).
struct DarbouxField {
  int dim = 2;
  int m_max = 0;
  std::vector<double> r_grid;
  std::vector<double> t_grid;
  std::vector<HarmonicIndex> channels;
  std::vector<std::vector<double>> values;

  double at(std::size_t ch, std::size_t i, std::size_t j) const { return values[ch][i * t_grid.size() + j]; }
};

/// Evaluates spherical means of a phantom with a reusable Gauss-Legendre rule.
///
/// The integration sphere is parametrized around the axis through its center
/// and the origin, so the radial cutoff is constant on each parallel. Only the
/// part of the sphere meeting the support ball is integrated, split where the
/// cutoff starts to vary. In 3D the azimuthal average of each Gaussian is
/// analytic (a scaled I_0), leaving a 1D Gauss-Legendre integral in cos(alpha).
class SphericalMeanEvaluator {
 public:
  explicit SphericalMeanEvaluator(int quad_order = 48);

  double operator()(const Phantom& ph, const Point& center, double t) const;

  /// Generic integrand supported in |x| < support_radius; product
  /// Gauss-Legendre x uniform-azimuth quadrature on the intersecting cap.
  double operator()(const std::function<double(const Point&)>& f, int dim, double support_radius,
                    const Point& center, double t) const;

  int quad_order() const noexcept { return order_; }

 private:
  int order_;
  QuadratureRule rule_;  // on [-1, 1]
};

/// (1/omega) int_S f(center + t y) dS(y).
double spherical_mean(const Phantom& ph, const Point& center, double t, int quad_order = 48);

BoundaryData forward_transform(const Phantom& ph, const CenterGrid& centers, const std::vector<double>& t_grid,
                               int quad_order = 48);

BoundaryData forward_transform(const std::function<double(const Point&)>& f, int dim, double support_radius,
                               const CenterGrid& centers, const std::vector<double>& t_grid, int quad_order = 48);

/// G_{l,m}(r_i, t_j) by harmonic projection of spherical means over centers r_i theta.
DarbouxField interior_means(const Phantom& ph, const std::vector<double>& r_grid, const std::vector<double>& t_grid,
                            int m_max, const ProjectionOptions& angular = {}, int quad_order = 48);

/// Single-channel field sampled from G(r, t) (used for analytic solutions).
DarbouxField darboux_field_from(const HarmonicIndex& channel, const std::vector<double>& r_grid,
                                const std::vector<double>& t_grid,
                                const std::function<double(double, double)>& g);

struct DarbouxResidualOptions {
  double r_min = 0.0;  ///< evaluate on r >= max(r_min, 2 h_r)
  double t_min = 0.0;  ///< evaluate on t >= max(t_min, 2 h_t)
  double r_max = 1.0;
  double t_max = 1e300;
};

/// Max-norm residual of Psi_tt + ((n-1)/t) Psi_t - Psi_rr - ((n-1+2m)/r) Psi_r
/// over every channel of degree m, with Psi = G_{l,m} / r^m and centered differences.
double darboux_residual(const DarbouxField& field, int m, const DarbouxResidualOptions& opt = {});

}  // namespace smrt
