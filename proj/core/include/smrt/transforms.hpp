#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "smrt/specfun.hpp"

namespace smrt {

/// Even function of t >= 0 sampled on a uniform grid starting at 0.
struct TimeProfile {
  std::vector<double> t_grid;
  std::vector<double> values;
  double support = 0.0;  ///< values vanish for t >= support

  static TimeProfile sample(const std::function<double(double)>& g, int count, double T, double support);
  static TimeProfile zeros(int count, double T, double support);

  std::size_t size() const noexcept { return t_grid.size(); }
  double h() const noexcept { return t_grid.size() > 1 ? t_grid[1] - t_grid[0] : 0.0; }
  double T() const noexcept { return t_grid.empty() ? 0.0 : t_grid.back(); }
  double max_abs() const noexcept;

  /// Even-extension Lagrange interpolation (6 points); 0 past the grid end.
  double operator()(double t) const;
};

struct SpectralProfile {
  std::vector<double> lambda_grid;
  std::vector<double> values;
  Order p{0.0};

  double max_abs() const noexcept;
};

std::vector<double> lambda_grid(int count, double lambda_max);

/// 1.5 pi N_t / T.
double default_lambda_max(const TimeProfile& g);

/// F_p g(lambda) = int g(t) j_p(lambda t) t^{2p+1} dt (composite Simpson).
SpectralProfile fourier_bessel(const TimeProfile& g, Order p, const std::vector<double>& lambda);

struct TruncationDiagnostic {
  double tail_ratio = 0.0;   ///< |Phi(Lambda)| / max |Phi|
  bool truncated = false;    ///< tail_ratio above 1e-8
  double bound = 0.0;        ///< crude bound on the neglected part of the integral
};

/// g(t) = (2^{2p} Gamma(p+1)^2)^{-1} int_0^Lambda Phi(lambda) j_p(lambda t) lambda^{2p+1} d lambda.
TimeProfile inverse_fourier_bessel(const SpectralProfile& phi, const std::vector<double>& t_grid, double support,
                                   TruncationDiagnostic* diagnostic = nullptr);

/// int_0^T g(t) cos(lambda t) dt for each lambda.
std::vector<double> fourier_cosine(const TimeProfile& g, const std::vector<double>& lambda);

/// W_p g(t) = (2 Gamma(p+1) / (sqrt(pi) Gamma(p+1/2))) int_t^a g(s) (s^2-t^2)^{p-1/2} s ds.
TimeProfile weyl(const TimeProfile& g, Order p);

/// Inverse of weyl for p = (n-2)/2, n in {2, 3}.
TimeProfile inverse_weyl(const TimeProfile& U, int dim);

/// P_p U(t) = c_p int_{-1}^{1} U(mu t) (1-mu^2)^{p-1/2} d mu, normalized so that P_p 1 = 1.
TimeProfile poisson(const TimeProfile& U, Order p, int jacobi_nodes = 48);

/// (sqrt(pi) / Gamma(p+1)) t (d/d(t^2))^{p+1/2} (t^{2p} G) for 2p odd.
TimeProfile inverse_poisson(const TimeProfile& G, Order p);

/// Bessel operator u'' + ((2p+1)/t) u' by centered differences; (2p+2) u''(0) at t = 0,
/// one-sided at the grid end.
std::vector<double> bessel_operator(const TimeProfile& u, Order p);

/// Second derivative by centered differences (even reflection at 0).
std::vector<double> second_derivative(const TimeProfile& u);

/// max over the grid of lambda^N |Phi(lambda)|.
double paley_wiener_bound(const SpectralProfile& phi, int N);

}  // namespace smrt
