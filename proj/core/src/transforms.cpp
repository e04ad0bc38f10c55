#include "smrt/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "smrt/error.hpp"
#include "smrt/quadrature.hpp"

namespace smrt {

namespace {

constexpr double kPi = std::numbers::pi;

// Lagrange interpolation of an even function sampled at t_i = i h, i >= 0.
double even_interp(const std::vector<double>& v, double h, double t) {
  const int n = static_cast<int>(v.size());
  t = std::abs(t);
  const double s = t / h;
  if (s > n - 1 + 1e-9) return 0.0;
  const double nearest = std::round(s);
  if (std::abs(s - nearest) < 1e-13) return v[static_cast<std::size_t>(nearest)];
  constexpr int k = 6;
  int start = static_cast<int>(std::floor(s)) - (k - 1) / 2;
  start = std::min(start, n - k);
  double sum = 0.0;
  for (int i = 0; i < k; ++i) {
    double basis = 1.0;
    for (int j = 0; j < k; ++j) {
      if (j == i) continue;
      basis *= (s - (start + j)) / static_cast<double>(i - j);
    }
    sum += basis * v[static_cast<std::size_t>(std::abs(start + i))];
  }
  return sum;
}

void require_grid(const TimeProfile& g, int min_points, const char* what) {
  if (static_cast<int>(g.size()) < min_points)
    throw GridError(std::string(what) + ": need at least " + std::to_string(min_points) + " samples");
  if (g.values.size() != g.t_grid.size()) throw GridError(std::string(what) + ": grid and values differ in length");
}

TimeProfile like(const TimeProfile& g) {
  TimeProfile out;
  out.t_grid = g.t_grid;
  out.values.assign(g.size(), 0.0);
  out.support = g.support;
  return out;
}

bool is_half_integer_order(double p) {
  const double twice = 2.0 * p;
  return std::abs(twice - std::round(twice)) < 1e-12 && static_cast<long>(std::round(twice)) % 2 != 0;
}

}  // namespace

TimeProfile TimeProfile::sample(const std::function<double(double)>& g, int count, double T, double support) {
  TimeProfile p = zeros(count, T, support);
  for (int i = 0; i < count; ++i) p.values[i] = g(p.t_grid[i]);
  return p;
}

TimeProfile TimeProfile::zeros(int count, double T, double support) {
  if (count < 2) throw GridError("TimeProfile: need at least two samples");
  TimeProfile p;
  p.t_grid = uniform_grid(count, T);
  p.values.assign(count, 0.0);
  p.support = support;
  return p;
}

double TimeProfile::max_abs() const noexcept {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double TimeProfile::operator()(double t) const { return even_interp(values, h(), t); }

double SpectralProfile::max_abs() const noexcept {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

std::vector<double> lambda_grid(int count, double lambda_max) {
  if (count < 2) throw GridError("lambda_grid: need at least two samples");
  return uniform_grid(count, lambda_max);
}

double default_lambda_max(const TimeProfile& g) { return 1.5 * kPi * static_cast<double>(g.size()) / g.T(); }

SpectralProfile fourier_bessel(const TimeProfile& g, Order p, const std::vector<double>& lambda) {
  if (lambda.empty()) throw GridError("fourier_bessel: empty lambda grid");
  require_grid(g, 3, "fourier_bessel");
  const auto w = simpson_weights(static_cast<int>(g.size()), g.h());
  const double power = 2.0 * p.value() + 1.0;
  std::vector<double> weighted(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) weighted[j] = w[j] * g.values[j] * std::pow(g.t_grid[j], power);
  SpectralProfile out;
  out.lambda_grid = lambda;
  out.p = p;
  out.values.assign(lambda.size(), 0.0);
  for (std::size_t k = 0; k < lambda.size(); ++k) {
    double sum = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j)
      if (weighted[j] != 0.0) sum += weighted[j] * normalized_j(p, lambda[k] * g.t_grid[j]);
    out.values[k] = sum;
  }
  return out;
}

TimeProfile inverse_fourier_bessel(const SpectralProfile& phi, const std::vector<double>& t_grid, double support,
                                   TruncationDiagnostic* diagnostic) {
  const std::size_t n = phi.lambda_grid.size();
  if (n < 3) throw GridError("inverse_fourier_bessel: need at least three spectral samples");
  const double p = phi.p.value();
  const double dl = phi.lambda_grid[1] - phi.lambda_grid[0];
  const auto w = simpson_weights(static_cast<int>(n), dl);
  const double scale = 1.0 / (std::pow(2.0, 2.0 * p) * std::pow(std::tgamma(p + 1.0), 2));
  std::vector<double> weighted(n);
  for (std::size_t k = 0; k < n; ++k)
    weighted[k] = scale * w[k] * phi.values[k] * std::pow(phi.lambda_grid[k], 2.0 * p + 1.0);
  TimeProfile out;
  out.t_grid = t_grid;
  out.support = support;
  out.values.assign(t_grid.size(), 0.0);
  for (std::size_t j = 0; j < t_grid.size(); ++j) {
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k)
      if (weighted[k] != 0.0) sum += weighted[k] * normalized_j(phi.p, phi.lambda_grid[k] * t_grid[j]);
    out.values[j] = sum;
  }
  if (diagnostic) {
    const double peak = phi.max_abs();
    const double lam = phi.lambda_grid.back();
    diagnostic->tail_ratio = peak > 0.0 ? std::abs(phi.values.back()) / peak : 0.0;
    diagnostic->truncated = diagnostic->tail_ratio > 1e-8;
    // Tail bounded by |Phi(Lambda)| Lambda^{2p+2} with |j_p| <= 1, assuming decay past Lambda.
    diagnostic->bound = scale * std::abs(phi.values.back()) * std::pow(lam, 2.0 * p + 2.0);
  }
  return out;
}

std::vector<double> fourier_cosine(const TimeProfile& g, const std::vector<double>& lambda) {
  require_grid(g, 3, "fourier_cosine");
  const auto w = simpson_weights(static_cast<int>(g.size()), g.h());
  std::vector<double> out(lambda.size(), 0.0);
  for (std::size_t k = 0; k < lambda.size(); ++k) {
    double sum = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) sum += w[j] * g.values[j] * std::cos(lambda[k] * g.t_grid[j]);
    out[k] = sum;
  }
  return out;
}

TimeProfile weyl(const TimeProfile& g, Order p) {
  require_grid(g, 6, "weyl");
  if (p.value() == -0.5) return g;
  const double pv = p.value();
  const double c = 2.0 * std::tgamma(pv + 1.0) / (std::sqrt(kPi) * std::tgamma(pv + 0.5));
  const double a = std::min(g.support, g.T());
  const double h = g.h();
  const QuadratureRule base = gauss_legendre(8);
  TimeProfile out = like(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double t = g.t_grid[i];
    if (t >= a) continue;
    // s^2 = t^2 + u^2 removes the (s^2 - t^2)^{p-1/2} endpoint singularity.
    const double umax = std::sqrt(a * a - t * t);
    const int panels = std::max(2, static_cast<int>(std::ceil(umax / h)));
    const double width = umax / panels;
    double sum = 0.0;
    for (int k = 0; k < panels; ++k) {
      const double lo = k * width;
      for (std::size_t q = 0; q < base.nodes.size(); ++q) {
        const double u = lo + 0.5 * width * (base.nodes[q] + 1.0);
        sum += 0.5 * width * base.weights[q] * g(std::sqrt(t * t + u * u)) * std::pow(u, 2.0 * pv);
      }
    }
    out.values[i] = c * sum;
  }
  return out;
}

TimeProfile inverse_weyl(const TimeProfile& U, int dim) {
  if (dim != 2 && dim != 3) throw Error("inverse_weyl: dimension must be 2 or 3");
  require_grid(U, 8, "inverse_weyl");
  const std::size_t n = U.size();
  const double h = U.h();
  const auto& u = U.values;
  // V = dU/d(t^2) = U'(t) / (2t); V(0) = U''(0) / 2.
  std::vector<double> V(n, 0.0);
  V[0] = (u[1] - u[0]) / (h * h);
  for (std::size_t i = 1; i + 1 < n; ++i) V[i] = (u[i + 1] - u[i - 1]) / (4.0 * h * U.t_grid[i]);
  V[n - 1] = (3.0 * u[n - 1] - 4.0 * u[n - 2] + u[n - 3]) / (4.0 * h * U.t_grid[n - 1]);

  TimeProfile out = like(U);
  if (dim == 3) {
    for (std::size_t i = 0; i < n; ++i) out.values[i] = -2.0 * V[i];
    for (std::size_t i = 0; i < n; ++i)
      if (U.t_grid[i] >= U.support) out.values[i] = 0.0;
    return out;
  }
  // Abel-type inversion: g(t) = -2 int_0^{sqrt(a^2 - t^2)} V(sqrt(t^2 + u^2)) du.
  const double a = std::min(U.support, U.T());
  const QuadratureRule base = gauss_legendre(8);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = U.t_grid[i];
    if (t >= a) continue;
    const double umax = std::sqrt(a * a - t * t);
    const int panels = std::max(2, static_cast<int>(std::ceil(umax / h)));
    const double width = umax / panels;
    double sum = 0.0;
    for (int k = 0; k < panels; ++k) {
      const double lo = k * width;
      for (std::size_t q = 0; q < base.nodes.size(); ++q) {
        const double uu = lo + 0.5 * width * (base.nodes[q] + 1.0);
        sum += 0.5 * width * base.weights[q] * even_interp(V, h, std::sqrt(t * t + uu * uu));
      }
    }
    out.values[i] = -2.0 * sum;
  }
  return out;
}

TimeProfile poisson(const TimeProfile& U, Order p, int jacobi_nodes) {
  require_grid(U, 6, "poisson");
  if (p.value() == -0.5) return U;
  const double alpha = p.value() - 0.5;
  const QuadratureRule rule = gauss_jacobi(jacobi_nodes, alpha, alpha);
  double total = 0.0;
  for (double w : rule.weights) total += w;
  TimeProfile out = like(U);
  for (std::size_t i = 0; i < U.size(); ++i) {
    double sum = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) sum += rule.weights[q] * U(rule.nodes[q] * U.t_grid[i]);
    out.values[i] = sum / total;
  }
  return out;
}

TimeProfile inverse_poisson(const TimeProfile& G, Order p) {
  const double pv = p.value();
  if (!is_half_integer_order(pv) || pv < 0.0)
    throw UnsupportedOrderError("inverse_poisson: requires 2p an odd positive integer");
  require_grid(G, 8, "inverse_poisson");
  const std::size_t n = G.size();
  const double h = G.h();
  const auto& t = G.t_grid;
  // With F = t^{2q} E, d/d(t^2) F = t^{2q-2} (q E + (t/2) E'), so the iteration stays on the
  // smooth even factor E; after p + 1/2 steps q = -1/2 and t (d/d(t^2))^{p+1/2} (t^{2p} G) = E.
  std::vector<double> E = G.values;
  std::vector<double> next(n);
  double q = pv;
  const int steps = static_cast<int>(std::lround(pv + 0.5));
  for (int s = 0; s < steps; ++s, q -= 1.0) {
    next[0] = q * E[0];
    for (std::size_t i = 1; i + 1 < n; ++i) next[i] = q * E[i] + t[i] * (E[i + 1] - E[i - 1]) / (4.0 * h);
    next[n - 1] = q * E[n - 1] + t[n - 1] * (3.0 * E[n - 1] - 4.0 * E[n - 2] + E[n - 3]) / (4.0 * h);
    E.swap(next);
  }
  const double c = std::sqrt(kPi) / std::tgamma(pv + 1.0);
  TimeProfile out = like(G);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = c * E[i];
  return out;
}

std::vector<double> second_derivative(const TimeProfile& u) {
  require_grid(u, 4, "second_derivative");
  const std::size_t n = u.size();
  const double h2 = u.h() * u.h();
  const auto& v = u.values;
  std::vector<double> out(n);
  out[0] = 2.0 * (v[1] - v[0]) / h2;
  for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / h2;
  out[n - 1] = (2.0 * v[n - 1] - 5.0 * v[n - 2] + 4.0 * v[n - 3] - v[n - 4]) / h2;
  return out;
}

std::vector<double> bessel_operator(const TimeProfile& u, Order p) {
  std::vector<double> out = second_derivative(u);
  const std::size_t n = u.size();
  const double h = u.h();
  const double k = 2.0 * p.value() + 1.0;
  const auto& v = u.values;
  out[0] *= (k + 1.0);
  for (std::size_t i = 1; i + 1 < n; ++i) out[i] += k / u.t_grid[i] * (v[i + 1] - v[i - 1]) / (2.0 * h);
  out[n - 1] += k / u.t_grid[n - 1] * (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
  return out;
}

double paley_wiener_bound(const SpectralProfile& phi, int N) {
  double m = 0.0;
  for (std::size_t k = 0; k < phi.values.size(); ++k)
    m = std::max(m, std::pow(phi.lambda_grid[k], N) * std::abs(phi.values[k]));
  return m;
}

}  // namespace smrt
