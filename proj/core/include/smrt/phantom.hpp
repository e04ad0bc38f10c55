#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "smrt/quadrature.hpp"
#include "smrt/specfun.hpp"

namespace smrt {

struct Bump {
  Point center{0.0, 0.0, 0.0};
  double width = 0.1;
  double amplitude = 1.0;
};

/// Sum of Gaussian bumps times a smooth radial cutoff that equals 1 on
/// |x| <= 1 - margin and vanishes identically on |x| >= 1 - margin/2.
class Phantom {
 public:
  Phantom(int dim, std::vector<Bump> bumps, double margin = 0.2);

  int dim() const noexcept { return dim_; }
  double margin() const noexcept { return margin_; }
  const std::vector<Bump>& bumps() const noexcept { return bumps_; }

  double inner_radius() const noexcept { return 1.0 - margin_; }
  /// Radius beyond which the phantom is exactly zero.
  double support_radius() const noexcept { return 1.0 - 0.5 * margin_; }

  double cutoff(double radius) const noexcept;
  double operator()(const Point& x) const noexcept;

  double max_abs_amplitude() const noexcept;

 private:
  int dim_;
  double margin_;
  std::vector<Bump> bumps_;
};

double eval_phantom(const Phantom& ph, const Point& x);

/// Parse the plain-text phantom description (dim, margin, bump lines).
Phantom parse_phantom(const std::string& text);
std::string format_phantom(const Phantom& ph);

/// Real-valued function on the ball given by harmonic coefficients f_{l,m}(r_i)
/// on a uniform radial grid r_i = i/(N_r-1).
struct PolarField {
  int dim = 2;
  int m_max = 0;
  std::vector<double> r_grid;
  std::vector<HarmonicIndex> channels;
  std::vector<std::vector<double>> coeffs;

  static PolarField zeros(int dim, int m_max, int n_r);

  std::size_t channel_position(int m, int l) const;
  const std::vector<double>& channel(int m, int l) const { return coeffs[channel_position(m, l)]; }
  double dr() const noexcept { return r_grid.size() > 1 ? r_grid[1] - r_grid[0] : 1.0; }

  /// Synthesize sum f_{l,m}(r) Y_l^m(theta); radii are interpolated and the
  /// field is zero for r > 1.
  double operator()(const Point& x) const;

  /// L2 norm squared over the ball via Parseval: sum_ch int f^2 r^{n-1} dr.
  double energy() const;
};

/// Angular quadrature used to project onto harmonics.
struct ProjectionOptions {
  int n_theta = 256;     // dim 2
  int n_polar = 64;      // dim 3
  int n_azimuth = 128;   // dim 3
};

/// f_{l,m}(r_i) = int_S f(r_i theta) Y_l^m(theta) dS(theta).
PolarField project_to_harmonics(const Phantom& ph, int m_max, int n_r, const ProjectionOptions& opt = {});
PolarField project_function(const std::function<double(const Point&)>& f, int dim, int m_max, int n_r,
                            const ProjectionOptions& opt = {});

/// Fixtures used across tests, the CLI and the acceptance suite.
namespace phantoms {
Phantom three_bump_2d();
Phantom three_bump_3d();
/// Single centered bump: radial.
Phantom radial(int dim, double width = 0.25, double amplitude = 1.0);
/// Random bumps with |center| + 3 width <= 1 - margin. Deterministic for a seed.
Phantom random(int dim, int bumps, unsigned seed, double min_width = 0.12, double max_width = 0.25);
}  // namespace phantoms

}  // namespace smrt
