#pragma once

#include <array>
#include <span>
#include <vector>

namespace smrt {

using Point = std::array<double, 3>;

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule on [a, b].
QuadratureRule gauss_legendre(int count, double a = -1.0, double b = 1.0);

/// Gauss-Jacobi rule on [-1, 1] for the weight (1-x)^alpha (1+x)^beta (Golub-Welsch).
QuadratureRule gauss_jacobi(int count, double alpha, double beta);

/// Composite Gauss-Legendre: [a, b] split into `panels` equal panels of `per_panel` nodes.
QuadratureRule composite_gauss_legendre(double a, double b, int panels, int per_panel);

/// Uniform grid of `count` samples covering [0, length] inclusive.
std::vector<double> uniform_grid(int count, double length);

/// Composite Simpson weights for `count` equally spaced samples with spacing h.
/// An even number of intervals uses plain Simpson; an odd number closes with
/// the 3/8 rule on the last three intervals. Two samples fall back to trapezoid.
std::vector<double> simpson_weights(int count, double h);

std::vector<double> trapezoid_weights(int count, double h);

/// Local Lagrange interpolation of uniformly sampled data (spacing h, first
/// sample at 0) using `order` points around x. Outside [0, (N-1)h] returns
/// `outside`.
double interpolate_uniform(std::span<const double> values, double h, double x,
                           int order = 6, double outside = 0.0);

enum class CenterGridKind { Circle, GaussSphere, Custom };

/// Quadrature nodes on the set of centers: the unit circle, the unit sphere
/// (Gauss-Legendre in cos(polar) times uniform azimuth), or a custom curve or
/// surface with explicit weights and outward normals.
struct CenterGrid {
  CenterGridKind kind = CenterGridKind::Circle;
  int dim = 2;
  int n_polar = 0;    // GaussSphere only
  int n_azimuth = 0;  // Circle: number of angles; GaussSphere: azimuth count
  std::vector<Point> points;
  std::vector<Point> normals;
  std::vector<double> weights;

  static CenterGrid circle(int count);
  static CenterGrid gauss_sphere(int n_polar, int n_azimuth);
  static CenterGrid custom(int dim, std::vector<Point> points, std::vector<Point> normals,
                           std::vector<double> weights);

  std::size_t size() const noexcept { return points.size(); }
  double total_weight() const noexcept;

  /// Highest harmonic degree M such that products of two harmonics of degree
  /// <= M are integrated exactly. Custom grids report -1.
  int exact_degree() const noexcept;
};

/// Surface area of the unit sphere S^{n-1}: 2*pi for n = 2, 4*pi for n = 3.
double sphere_area(int dim);

}  // namespace smrt
