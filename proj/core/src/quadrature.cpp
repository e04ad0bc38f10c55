#include "smrt/quadrature.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "smrt/error.hpp"

namespace smrt {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

QuadratureRule gauss_legendre(int count, double a, double b) {
  if (count < 1) throw GridError("gauss_legendre: count must be positive");
  QuadratureRule rule;
  rule.nodes.resize(count);
  rule.weights.resize(count);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  const int m = (count + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(kPi * (i + 0.75) / (count + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= count; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (count == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = count * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute derivative at the converged node.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= count; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = (count == 1) ? 1.0 : count * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = mid - half * x;
    rule.nodes[count - 1 - i] = mid + half * x;
    rule.weights[i] = half * w;
    rule.weights[count - 1 - i] = half * w;
  }
  if (count == 1) {
    rule.nodes[0] = mid;
    rule.weights[0] = b - a;
  }
  return rule;
}

QuadratureRule gauss_jacobi(int count, double alpha, double beta) {
  if (count < 1) throw GridError("gauss_jacobi: count must be positive");
  if (alpha <= -1.0 || beta <= -1.0) throw GridError("gauss_jacobi: exponents must exceed -1");
  // Jacobi matrix of the monic recurrence.
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(count, count);
  const double ab = alpha + beta;
  for (int k = 0; k < count; ++k) {
    const double denom = (2.0 * k + ab) * (2.0 * k + ab + 2.0);
    jac(k, k) = (k == 0 && std::abs(ab + 2.0) > 0.0)
                    ? (beta - alpha) / (ab + 2.0)
                    : (denom == 0.0 ? 0.0 : (beta * beta - alpha * alpha) / denom);
    if (k + 1 < count) {
      const double n = k + 1.0;
      // For n = 1 the factor (n + ab) / (2n + ab - 1) cancels to 1.
      const double num = (k == 0) ? 4.0 * (1.0 + alpha) * (1.0 + beta)
                                  : 4.0 * n * (n + alpha) * (n + beta) * (n + ab);
      const double d = (k == 0) ? (2.0 + ab) * (2.0 + ab) * (3.0 + ab)
                                : (2.0 * n + ab) * (2.0 * n + ab) * (2.0 * n + ab + 1.0) *
                                      (2.0 * n + ab - 1.0);
      const double off = std::sqrt(num / d);
      jac(k, k + 1) = off;
      jac(k + 1, k) = off;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jac);
  const double mu0 = std::pow(2.0, ab + 1.0) * std::exp(std::lgamma(alpha + 1.0) + std::lgamma(beta + 1.0) -
                                                        std::lgamma(ab + 2.0));
  QuadratureRule rule;
  rule.nodes.resize(count);
  rule.weights.resize(count);
  for (int i = 0; i < count; ++i) {
    rule.nodes[i] = solver.eigenvalues()(i);
    const double v = solver.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v * v;
  }
  return rule;
}

QuadratureRule composite_gauss_legendre(double a, double b, int panels, int per_panel) {
  if (panels < 1) throw GridError("composite_gauss_legendre: panels must be positive");
  const QuadratureRule base = gauss_legendre(per_panel);
  QuadratureRule rule;
  rule.nodes.reserve(static_cast<std::size_t>(panels) * per_panel);
  rule.weights.reserve(rule.nodes.capacity());
  const double width = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    for (int i = 0; i < per_panel; ++i) {
      rule.nodes.push_back(lo + 0.5 * width * (base.nodes[i] + 1.0));
      rule.weights.push_back(0.5 * width * base.weights[i]);
    }
  }
  return rule;
}

std::vector<double> uniform_grid(int count, double length) {
  if (count < 2) throw GridError("uniform_grid: need at least two samples");
  std::vector<double> grid(count);
  const double h = length / (count - 1);
  for (int i = 0; i < count; ++i) grid[i] = i * h;
  grid.back() = length;
  return grid;
}

std::vector<double> simpson_weights(int count, double h) {
  if (count < 2) throw GridError("simpson_weights: need at least two samples");
  std::vector<double> w(count, 0.0);
  const int intervals = count - 1;
  if (intervals == 1) {
    w[0] = w[1] = 0.5 * h;
    return w;
  }
  const int simpson_intervals = (intervals % 2 == 0) ? intervals : intervals - 3;
  for (int i = 0; i + 2 <= simpson_intervals; i += 2) {
    w[i] += h / 3.0;
    w[i + 1] += 4.0 * h / 3.0;
    w[i + 2] += h / 3.0;
  }
  if (simpson_intervals != intervals) {
    const int s = simpson_intervals;
    w[s] += 3.0 * h / 8.0;
    w[s + 1] += 9.0 * h / 8.0;
    w[s + 2] += 9.0 * h / 8.0;
    w[s + 3] += 3.0 * h / 8.0;
  }
  return w;
}

std::vector<double> trapezoid_weights(int count, double h) {
  if (count < 2) throw GridError("trapezoid_weights: need at least two samples");
  std::vector<double> w(count, h);
  w.front() = w.back() = 0.5 * h;
  return w;
}

double interpolate_uniform(std::span<const double> values, double h, double x, int order,
                           double outside) {
  const int n = static_cast<int>(values.size());
  const double last = (n - 1) * h;
  if (x < -1e-12 * h || x > last + 1e-12 * last + 1e-14) return outside;
  const double s = std::clamp(x / h, 0.0, static_cast<double>(n - 1));
  const int k = std::min(order, n);
  int start = static_cast<int>(std::floor(s)) - (k - 1) / 2;
  start = std::clamp(start, 0, n - k);
  const double nearest = std::round(s);
  if (std::abs(s - nearest) < 1e-13) return values[static_cast<std::size_t>(nearest)];
  double sum = 0.0;
  for (int i = 0; i < k; ++i) {
    double basis = 1.0;
    for (int j = 0; j < k; ++j) {
      if (j == i) continue;
      basis *= (s - (start + j)) / static_cast<double>(i - j);
    }
    sum += basis * values[start + i];
  }
  return sum;
}

CenterGrid CenterGrid::circle(int count) {
  if (count < 3) throw GridError("CenterGrid::circle: need at least three centers");
  CenterGrid g;
  g.kind = CenterGridKind::Circle;
  g.dim = 2;
  g.n_azimuth = count;
  g.points.resize(count);
  g.normals.resize(count);
  g.weights.assign(count, 2.0 * kPi / count);
  for (int i = 0; i < count; ++i) {
    const double th = 2.0 * kPi * i / count;
    g.points[i] = {std::cos(th), std::sin(th), 0.0};
    g.normals[i] = g.points[i];
  }
  return g;
}

CenterGrid CenterGrid::gauss_sphere(int n_polar, int n_azimuth) {
  if (n_polar < 2 || n_azimuth < 3) throw GridError("CenterGrid::gauss_sphere: grid too small");
  CenterGrid g;
  g.kind = CenterGridKind::GaussSphere;
  g.dim = 3;
  g.n_polar = n_polar;
  g.n_azimuth = n_azimuth;
  const QuadratureRule gl = gauss_legendre(n_polar);
  for (int i = 0; i < n_polar; ++i) {
    const double z = gl.nodes[i];
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    for (int j = 0; j < n_azimuth; ++j) {
      const double ph = 2.0 * kPi * j / n_azimuth;
      const Point p{s * std::cos(ph), s * std::sin(ph), z};
      g.points.push_back(p);
      g.normals.push_back(p);
      g.weights.push_back(gl.weights[i] * 2.0 * kPi / n_azimuth);
    }
  }
  return g;
}

CenterGrid CenterGrid::custom(int dim, std::vector<Point> points, std::vector<Point> normals,
                              std::vector<double> weights) {
  if (points.size() != weights.size() || points.size() != normals.size())
    throw GridError("CenterGrid::custom: points, normals and weights differ in length");
  CenterGrid g;
  g.kind = CenterGridKind::Custom;
  g.dim = dim;
  g.points = std::move(points);
  g.normals = std::move(normals);
  g.weights = std::move(weights);
  return g;
}

double CenterGrid::total_weight() const noexcept {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

int CenterGrid::exact_degree() const noexcept {
  switch (kind) {
    case CenterGridKind::Circle:
      return (n_azimuth - 1) / 2;
    case CenterGridKind::GaussSphere:
      return std::min(n_polar - 1, (n_azimuth - 1) / 2);
    case CenterGridKind::Custom:
      break;
  }
  return -1;
}

double sphere_area(int dim) { return dim == 2 ? 2.0 * kPi : 4.0 * kPi; }

}  // namespace smrt
