#pragma once

#include <optional>
#include <string>
#include <vector>

#include "smrt/forward.hpp"
#include "smrt/phantom.hpp"
#include "smrt/polynomial.hpp"
#include "smrt/specfun.hpp"

namespace smrt {

/// g_{l,m}(t_j) = int_S g(theta, t_j) Y_l^m(theta) dS(theta).
struct HarmonicSpectrum {
  int dim = 2;
  int m_max = 0;
  std::vector<double> t_grid;
  std::vector<HarmonicIndex> channels;
  std::vector<std::vector<double>> values;
  double data_energy = 0.0;      ///< int_{S x [0,T]} g^2
  double spectrum_energy = 0.0;  ///< sum of channel energies

  double T() const noexcept { return t_grid.empty() ? 0.0 : t_grid.back(); }
  double dt() const noexcept { return t_grid.size() > 1 ? t_grid[1] - t_grid[0] : 0.0; }
  std::size_t position(int m, int l) const;
  const std::vector<double>& channel(int m, int l) const { return values[position(m, l)]; }
  double channel_energy(std::size_t ch) const;
  /// 1 - spectrum_energy / data_energy (0 for zero data).
  double truncation() const noexcept;
};

HarmonicSpectrum harmonic_decompose(const BoundaryData& g, int m_max);

/// Inverse of harmonic_decompose on the given centers: g(x, t) = sum g_{l,m}(t) Y_l^m(x).
BoundaryData harmonic_synthesize(const HarmonicSpectrum& spec, const CenterGrid& centers);

// ---------------------------------------------------------------- moments

struct MomentResidual {
  int k = 0;
  int m = 0;
  int l = 1;
  double residual = 0.0;
  double raw = 0.0;         ///< int t^{2k+n-1} g_{l,m} dt
  bool applicable = true;   ///< false for channels with negligible energy
};

/// Residuals |int t^{2k+n-1} g_{l,m} dt| / (||g_{l,m}||_rms T^{2k+n}) for all m > 2k, k <= k_max.
std::vector<MomentResidual> check_moment_ball(const HarmonicSpectrum& spec, int k_max, double energy_floor = 1e-12);

/// Even Taylor coefficients of ghat_{m,l} at lambda = 0: for 2k < m, C_k int t^{2k+n-1} g_{l,m} dt,
/// relative to int t^{n-1} |g_{l,m}| dt. Returns one row per (m, l, k).
std::vector<MomentResidual> check_vanishing_order(const HarmonicSpectrum& spec, double energy_floor = 1e-12);

/// Boundary of a bounded domain: samples with outward normals and quadrature weights.
struct GeneralBoundary {
  CenterGrid grid;
  double T = 2.0;
  std::vector<Point> interior;  ///< sample cloud inside the domain

  static GeneralBoundary unit_sphere(const CenterGrid& grid, double T = 2.0, double spacing = 0.1);
  static GeneralBoundary ellipse(double a, double b, int count, double T = 2.0, double spacing = 0.05);

  int dim() const noexcept { return grid.dim; }
  /// sup_{y in boundary} |x - y|.
  double rho(const Point& x) const;
  /// max over the interior cloud of rho; the data time range must reach it.
  double required_T() const;
};

enum class FitKind { Free, Chained };

struct MomentFitOptions {
  FitKind kind = FitKind::Chained;
  bool degree_k = false;       ///< free fit of degree <= k instead of 2k
  double svd_cutoff = 1e-12;   ///< relative singular value truncation
};

struct MomentFit {
  int k = 0;
  double c_k = 0.0;            ///< 2k (2k + n - 2)
  std::vector<double> samples; ///< M_k on the boundary
  Polynomial Q{3};
  double fit_residual = 0.0;   ///< ||M_k - Q_k|| / ||M_k|| on the boundary
  double condition = 1.0;      ///< sigma_max / sigma_min of the kept spectrum
  int rank = 0;
  int basis_size = 0;
};

struct MomentSet {
  int dim = 2;
  int k_max = 0;
  FitKind kind = FitKind::Chained;
  std::vector<MomentFit> fits;
};

/// M_k(x) = int t^{2k+n-1} g(x, t) dt sampled on the boundary and fitted by polynomials.
MomentSet moment_polynomials(const BoundaryData& g, const GeneralBoundary& boundary, int k_max,
                             const MomentFitOptions& opt = {});

/// Q_k(x) = (1/omega) int |x-y|^{2k} f(y) dy expanded symbolically with quadrature moments of f.
std::vector<Polynomial> moment_polynomials_exact(const Phantom& ph, int k_max, int nodes_per_axis = 96);

struct RecurrenceResidual {
  int k = 0;
  double residual = 0.0;
};

/// ||Delta Q_k - c_k Q_{k-1}|| / ||c_k Q_{k-1}|| on the interior cloud, for k >= 1.
std::vector<RecurrenceResidual> check_recurrence(const std::vector<Polynomial>& Q, int dim,
                                                 const std::vector<Point>& cloud);
std::vector<RecurrenceResidual> check_recurrence(const MomentSet& ms, const GeneralBoundary& boundary);

struct GrowthEstimate {
  std::vector<double> max_abs;  ///< max |Q_k| on the cloud, k = 0..k_max
  std::vector<double> root;     ///< (max |Q_k|)^{1/k}, k >= 1 (root[0] = 0)
  double M = 0.0;               ///< max_{k >= 1} root[k]
  bool tail_non_increasing = true;  ///< root[k] non-increasing on [k_tail_lo, k_max]
  int k_tail_lo = 2;
};

GrowthEstimate check_growth(const std::vector<Polynomial>& Q, const std::vector<Point>& cloud, int k_tail_lo = 2);
GrowthEstimate check_growth(const MomentSet& ms, const std::vector<Point>& cloud, int k_tail_lo = 2);

/// Deterministic cloud of points with |x| <= radius on a Cartesian lattice.
std::vector<Point> ball_cloud(int dim, double spacing, double radius = 1.0);

// ------------------------------------------------------------- eigen side

/// psi(x) = (lambda r)^m j_{n/2-1+m}(lambda r) Y_l^m(theta), u(x, t) = psi(x) j_{n/2-1}(lambda t).
struct EigenSolution {
  int dim = 2;
  HarmonicIndex index;
  double lambda = 0.0;
  int zero_number = 1;

  static std::vector<EigenSolution> for_channel(const HarmonicIndex& idx, int count);

  double radial(double r) const;
  /// d/dr of the radial factor at r = 1.
  double radial_derivative_at_boundary() const;
  double psi(const Point& x) const;
  double u(const Point& x, double t) const;
  double normal_derivative(const Point& boundary_point, double t) const;
};

struct BesselZeroResidual {
  int m = 0;
  int l = 1;
  int j = 1;
  double lambda = 0.0;
  double residual = 0.0;   ///< |ghat(lambda_j)| / max |ghat|
  double raw = 0.0;        ///< ghat(lambda_j)
  bool applicable = true;
};

struct BesselZeroOptions {
  int zeros = 10;
  int lambda_points = 801;
  double energy_floor = 1e-12;
};

/// ghat_{m,l}(lambda) = int g_{l,m}(t) j_{n/2-1}(lambda t) t^{n-1} dt at the first zeros of J_{m+n/2-1}.
std::vector<BesselZeroResidual> check_bessel_zeros(const HarmonicSpectrum& spec, const BesselZeroOptions& opt = {});

struct OrthogonalityResidual {
  int m = 0;
  int l = 1;
  int j = 1;
  double lambda = 0.0;
  double residual = 0.0;  ///< |I| / (||g|| ||d_nu u||)
  double raw = 0.0;       ///< I = int g d_nu u t^{n-1} dS dt
};

std::vector<OrthogonalityResidual> check_orthogonality(const BoundaryData& g, const std::vector<EigenSolution>& eig);

/// Eigen-solutions for every channel of degree <= m_max, `count` zeros each.
std::vector<EigenSolution> eigen_solutions(int dim, int m_max, int count);

// ----------------------------------------------------------- perturbation

/// g(x, t) += profile(t) Y_l^m(x) on every center.
void add_channel(BoundaryData& g, const HarmonicIndex& idx, const std::function<double(double)>& profile);

/// Smooth window equal to 1 on [0, 0.6 T] and 0 past 0.9 T.
double time_window(double t, double T);

/// Bessel-zero-targeted perturbation amp * j_{n/2-1}(lambda* t) window(t).
std::function<double(double)> bessel_perturbation(int dim, double lambda_star, double T, double amplitude);

/// Moment-targeted perturbation amp * t^2 exp(-((t - 0.8)/0.2)^2) window(t).
std::function<double(double)> moment_perturbation(double T, double amplitude);

// ----------------------------------------------------------------- report

struct RangeConfig {
  int m_max = 8;
  int k_max = 4;
  int zeros = 10;
  int orth_m_max = 4;
  double moment_tol = 1e-4;
  double bessel_tol = 1e-4;
  double orthogonality_tol = 1e-4;
  double fit_tol = 1e-4;
  double recurrence_tol = 1e-4;
  double growth_limit = 4.1;
  double energy_floor = 1e-12;
};

struct RangeReport {
  int dim = 2;
  RangeConfig config;
  double truncation = 0.0;
  double data_scale = 0.0;
  std::vector<MomentResidual> moments;
  std::vector<MomentFit> fits;
  std::vector<RecurrenceResidual> recurrence;
  GrowthEstimate growth;
  std::vector<BesselZeroResidual> bessel;
  std::vector<OrthogonalityResidual> orthogonality;

  double worst_moment() const;
  double worst_fit() const;
  double worst_recurrence() const;
  double worst_bessel() const;
  double worst_orthogonality() const;

  bool moment_pass() const { return worst_moment() <= config.moment_tol; }
  bool fit_pass() const { return worst_fit() <= config.fit_tol; }
  bool recurrence_pass() const { return worst_recurrence() <= config.recurrence_tol; }
  bool growth_pass() const;
  bool bessel_pass() const { return worst_bessel() <= config.bessel_tol; }
  bool orthogonality_pass() const { return worst_orthogonality() <= config.orthogonality_tol; }
  bool all_pass() const;

  /// Human-readable tables.
  std::string text() const;
  /// Machine-parsable key=value summary.
  std::string key_values() const;
};

/// Decompose and run every check; deterministic for identical inputs.
RangeReport range_report(const BoundaryData& g, const RangeConfig& config = {});

}  // namespace smrt
