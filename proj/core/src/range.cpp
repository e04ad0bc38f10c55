#include "smrt/range.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>

#include "smrt/error.hpp"
#include "smrt/quadrature.hpp"
#include "smrt/transforms.hpp"

namespace smrt {

namespace {

constexpr double kPi = std::numbers::pi;

double norm(const Point& x) { return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]); }

std::vector<double> time_rule(const std::vector<double>& t, bool simpson) {
  const int n = static_cast<int>(t.size());
  const double h = n > 1 ? t[1] - t[0] : 0.0;
  return simpson ? simpson_weights(n, h) : trapezoid_weights(n, h);
}

double rms(const std::vector<double>& v, const std::vector<double>& w, double T) {
  double s = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) s += w[j] * v[j] * v[j];
  return T > 0.0 ? std::sqrt(s / T) : 0.0;
}

struct LsqResult {
  Eigen::VectorXd x;
  int rank = 0;
  double condition = 1.0;
};

// Weighted least squares with column scaling and a truncated SVD (minimum-norm solution).
LsqResult truncated_lsq(Eigen::MatrixXd A, const Eigen::VectorXd& b, double cutoff) {
  LsqResult out;
  const Eigen::Index cols = A.cols();
  Eigen::VectorXd scale(cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    const double nrm = A.col(j).norm();
    scale(j) = nrm > 0.0 ? 1.0 / nrm : 1.0;
    A.col(j) *= scale(j);
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double smax = s.size() > 0 ? s(0) : 0.0;
  Eigen::VectorXd y = Eigen::VectorXd::Zero(cols);
  double smin = smax;
  if (smax > 0.0) {
    const Eigen::VectorXd ub = svd.matrixU().transpose() * b;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      if (s(i) <= cutoff * smax) break;
      y += svd.matrixV().col(i) * (ub(i) / s(i));
      smin = s(i);
      ++out.rank;
    }
  }
  out.x = y.cwiseProduct(scale);
  out.condition = smin > 0.0 ? smax / smin : 1.0;
  return out;
}

Eigen::MatrixXd laplacian_matrix(int dim, const std::vector<Exponent>& from, const std::vector<Exponent>& to) {
  std::map<Exponent, Eigen::Index> row;
  for (std::size_t i = 0; i < to.size(); ++i) row[to[i]] = static_cast<Eigen::Index>(i);
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(to.size()), static_cast<Eigen::Index>(from.size()));
  for (std::size_t j = 0; j < from.size(); ++j) {
    for (int i = 0; i < dim; ++i) {
      if (from[j][i] < 2) continue;
      Exponent e = from[j];
      e[i] -= 2;
      L(row.at(e), static_cast<Eigen::Index>(j)) += from[j][i] * (from[j][i] - 1.0);
    }
  }
  return L;
}

Polynomial from_coefficients(int dim, const std::vector<Exponent>& basis, const Eigen::VectorXd& c) {
  Polynomial q(dim);
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (c(static_cast<Eigen::Index>(i)) != 0.0) q.add(basis[i], c(static_cast<Eigen::Index>(i)));
  return q;
}

Eigen::VectorXd to_coefficients(const Polynomial& q, const std::vector<Exponent>& basis) {
  Eigen::VectorXd c(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) c(static_cast<Eigen::Index>(i)) = q.coefficient(basis[i]);
  return c;
}

double factorial(int k) { return std::tgamma(k + 1.0); }

double smooth_step(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / s);
  const double b = std::exp(-1.0 / (1.0 - s));
  return a / (a + b);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

}  // namespace

// ------------------------------------------------------------- spectrum

std::size_t HarmonicSpectrum::position(int m, int l) const {
  if (m < 0 || m > m_max) throw IndexError("HarmonicSpectrum: degree out of range");
  return harmonic_position({dim, m, l});
}

double HarmonicSpectrum::channel_energy(std::size_t ch) const {
  const auto w = time_rule(t_grid, false);
  double s = 0.0;
  for (std::size_t j = 0; j < t_grid.size(); ++j) s += w[j] * values[ch][j] * values[ch][j];
  return s;
}

double HarmonicSpectrum::truncation() const noexcept {
  return data_energy > 0.0 ? 1.0 - spectrum_energy / data_energy : 0.0;
}

HarmonicSpectrum harmonic_decompose(const BoundaryData& g, int m_max) {
  const CenterGrid& c = g.centers;
  if (c.kind == CenterGridKind::Custom)
    throw GridError("harmonic_decompose: requires a circle or Gauss sphere center grid");
  if (c.exact_degree() < m_max)
    throw GridError("harmonic_decompose: aliasing, center grid resolves degree " + std::to_string(c.exact_degree()) +
                    " < m_max " + std::to_string(m_max));
  HarmonicSpectrum s;
  s.dim = g.dim;
  s.m_max = m_max;
  s.t_grid = g.t_grid;
  s.channels = harmonic_indices(g.dim, m_max);
  const std::size_t nt = g.n_t();
  s.values.assign(s.channels.size(), std::vector<double>(nt, 0.0));
  const auto wt = time_rule(g.t_grid, false);
  for (std::size_t k = 0; k < c.size(); ++k) {
    const auto Y = eval_all_harmonics(g.dim, m_max, c.points[k]);
    const auto row = g.row(k);
    double e = 0.0;
    for (std::size_t j = 0; j < nt; ++j) e += wt[j] * row[j] * row[j];
    s.data_energy += c.weights[k] * e;
    for (std::size_t ch = 0; ch < s.channels.size(); ++ch) {
      const double f = c.weights[k] * Y[ch];
      auto& dst = s.values[ch];
      for (std::size_t j = 0; j < nt; ++j) dst[j] += f * row[j];
    }
  }
  for (std::size_t ch = 0; ch < s.channels.size(); ++ch) s.spectrum_energy += s.channel_energy(ch);
  return s;
}

BoundaryData harmonic_synthesize(const HarmonicSpectrum& spec, const CenterGrid& centers) {
  BoundaryData g = BoundaryData::zeros(centers, spec.t_grid);
  g.dim = spec.dim;
  for (std::size_t k = 0; k < centers.size(); ++k) {
    const auto Y = eval_all_harmonics(spec.dim, spec.m_max, centers.points[k]);
    for (std::size_t ch = 0; ch < spec.channels.size(); ++ch)
      for (std::size_t j = 0; j < spec.t_grid.size(); ++j) g.at(k, j) += spec.values[ch][j] * Y[ch];
  }
  return g;
}

// -------------------------------------------------------------- moments

std::vector<MomentResidual> check_moment_ball(const HarmonicSpectrum& spec, int k_max, double energy_floor) {
  if (k_max < 0 || k_max > 12) throw Error("check_moment_ball: k_max must be in [0, 12]");
  const int n = spec.dim;
  const double T = spec.T();
  const auto w = time_rule(spec.t_grid, false);
  std::vector<double> energy(spec.channels.size());
  double top = 0.0;
  for (std::size_t ch = 0; ch < spec.channels.size(); ++ch) top = std::max(top, energy[ch] = spec.channel_energy(ch));
  std::vector<MomentResidual> out;
  for (int k = 0; k <= k_max; ++k) {
    for (std::size_t ch = 0; ch < spec.channels.size(); ++ch) {
      const HarmonicIndex& idx = spec.channels[ch];
      if (idx.m <= 2 * k) continue;
      MomentResidual r{k, idx.m, idx.l, 0.0, 0.0, true};
      double mom = 0.0;
      for (std::size_t j = 0; j < spec.t_grid.size(); ++j)
        mom += w[j] * std::pow(spec.t_grid[j], 2 * k + n - 1) * spec.values[ch][j];
      r.raw = mom;
      if (top == 0.0 || energy[ch] <= energy_floor * top) {
        r.applicable = top == 0.0 ? true : false;
      } else {
        r.residual = std::abs(mom) / (rms(spec.values[ch], w, T) * std::pow(T, 2 * k + n));
      }
      out.push_back(r);
    }
  }
  return out;
}

std::vector<MomentResidual> check_vanishing_order(const HarmonicSpectrum& spec, double energy_floor) {
  const int n = spec.dim;
  const auto w = time_rule(spec.t_grid, false);
  double top = 0.0;
  for (std::size_t ch = 0; ch < spec.channels.size(); ++ch) top = std::max(top, spec.channel_energy(ch));
  std::vector<MomentResidual> out;
  for (std::size_t ch = 0; ch < spec.channels.size(); ++ch) {
    const HarmonicIndex& idx = spec.channels[ch];
    const bool applicable = top > 0.0 && spec.channel_energy(ch) > energy_floor * top;
    for (int k = 0; 2 * k < idx.m; ++k) {
      MomentResidual r{k, idx.m, idx.l, 0.0, 0.0, applicable};
      double mom = 0.0;
      double scale = 0.0;
      for (std::size_t j = 0; j < spec.t_grid.size(); ++j) {
        const double tp = std::pow(spec.t_grid[j], 2 * k + n - 1);
        mom += w[j] * tp * spec.values[ch][j];
        scale += w[j] * tp * std::abs(spec.values[ch][j]);
      }
      r.raw = mom;
      if (applicable && scale > 0.0) r.residual = std::abs(mom) / scale;
      out.push_back(r);
    }
  }
  return out;
}

std::vector<Point> ball_cloud(int dim, double spacing, double radius) {
  std::vector<Point> out;
  const int steps = static_cast<int>(std::floor(radius / spacing));
  const int kz = dim == 3 ? steps : 0;
  for (int i = -steps; i <= steps; ++i)
    for (int j = -steps; j <= steps; ++j)
      for (int k = -kz; k <= kz; ++k) {
        const Point x{i * spacing, j * spacing, k * spacing};
        if (norm(x) <= radius + 1e-12) out.push_back(x);
      }
  return out;
}

GeneralBoundary GeneralBoundary::unit_sphere(const CenterGrid& grid, double T, double spacing) {
  GeneralBoundary b;
  b.grid = grid;
  b.T = T;
  b.interior = ball_cloud(grid.dim, spacing, 1.0);
  return b;
}

GeneralBoundary GeneralBoundary::ellipse(double a, double b, int count, double T, double spacing) {
  if (a <= 0.0 || b <= 0.0 || count < 8) throw GridError("GeneralBoundary::ellipse: invalid axes or sample count");
  std::vector<Point> pts(count), nrm(count);
  std::vector<double> w(count);
  for (int i = 0; i < count; ++i) {
    const double th = 2.0 * kPi * i / count;
    pts[i] = {a * std::cos(th), b * std::sin(th), 0.0};
    Point nv{std::cos(th) / a, std::sin(th) / b, 0.0};
    const double s = norm(nv);
    nrm[i] = {nv[0] / s, nv[1] / s, 0.0};
    w[i] = std::hypot(a * std::sin(th), b * std::cos(th)) * 2.0 * kPi / count;
  }
  GeneralBoundary g;
  g.grid = CenterGrid::custom(2, std::move(pts), std::move(nrm), std::move(w));
  g.T = T;
  const double r = std::max(a, b);
  for (const Point& x : ball_cloud(2, spacing, r))
    if ((x[0] / a) * (x[0] / a) + (x[1] / b) * (x[1] / b) <= 1.0) g.interior.push_back(x);
  return g;
}

double GeneralBoundary::rho(const Point& x) const {
  double m = 0.0;
  for (const Point& y : grid.points) m = std::max(m, std::hypot(x[0] - y[0], x[1] - y[1], x[2] - y[2]));
  return m;
}

double GeneralBoundary::required_T() const {
  double m = 0.0;
  for (const Point& x : interior) m = std::max(m, rho(x));
  return m;
}

MomentSet moment_polynomials(const BoundaryData& g, const GeneralBoundary& boundary, int k_max,
                             const MomentFitOptions& opt) {
  const int n = g.dim;
  if (boundary.dim() != n) throw GridError("moment_polynomials: boundary and data dimensions differ");
  if (g.n_centers() != boundary.grid.size()) throw GridError("moment_polynomials: data centers differ from boundary");
  if (k_max < 0) throw Error("moment_polynomials: k_max must be non-negative");
  const std::size_t N = g.n_centers();
  const auto wt = time_rule(g.t_grid, false);
  Eigen::VectorXd sw(static_cast<Eigen::Index>(N));
  for (std::size_t c = 0; c < N; ++c) sw(static_cast<Eigen::Index>(c)) = std::sqrt(boundary.grid.weights[c]);

  MomentSet ms;
  ms.dim = n;
  ms.k_max = k_max;
  ms.kind = opt.kind;
  for (int k = 0; k <= k_max; ++k) {
    MomentFit fit;
    fit.k = k;
    fit.c_k = 2.0 * k * (2.0 * k + n - 2.0);
    fit.samples.assign(N, 0.0);
    for (std::size_t c = 0; c < N; ++c) {
      const auto row = g.row(c);
      double s = 0.0;
      for (std::size_t j = 0; j < g.n_t(); ++j) s += wt[j] * std::pow(g.t_grid[j], 2 * k + n - 1) * row[j];
      fit.samples[c] = s;
    }
    Eigen::VectorXd b(static_cast<Eigen::Index>(N));
    for (std::size_t c = 0; c < N; ++c) b(static_cast<Eigen::Index>(c)) = sw(static_cast<Eigen::Index>(c)) * fit.samples[c];

    const int degree = opt.kind == FitKind::Free && opt.degree_k ? k : 2 * k;
    const auto basis = monomials(n, degree);
    Eigen::MatrixXd A(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(basis.size()));
    for (std::size_t c = 0; c < N; ++c)
      for (std::size_t i = 0; i < basis.size(); ++i)
        A(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(i)) =
            sw(static_cast<Eigen::Index>(c)) * monomial(basis[i], boundary.grid.points[c]);

    Eigen::VectorXd coeffs;
    if (opt.kind == FitKind::Free || k == 0) {
      if (N < basis.size()) throw GridError("moment_polynomials: fewer boundary samples than basis functions");
      const LsqResult r = truncated_lsq(A, b, opt.svd_cutoff);
      coeffs = r.x;
      fit.rank = r.rank;
      fit.condition = r.condition;
      fit.basis_size = static_cast<int>(basis.size());
    } else {
      // Q_k = P + H with Delta P = c_k Q_{k-1} (minimum norm) and H harmonic, fitted on the boundary.
      const auto lower = monomials(n, 2 * k - 2);
      const Eigen::MatrixXd L = laplacian_matrix(n, basis, lower);
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(L, Eigen::ComputeFullU | Eigen::ComputeFullV);
      const Eigen::VectorXd& s = svd.singularValues();
      int rank = 0;
      for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > 1e-10 * s(0)) ++rank;
      const Eigen::VectorXd rhs = fit.c_k * to_coefficients(ms.fits.back().Q, lower);
      const Eigen::VectorXd ub = svd.matrixU().transpose() * rhs;
      Eigen::VectorXd P = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis.size()));
      for (int i = 0; i < rank; ++i) P += svd.matrixV().col(i) * (ub(i) / s(i));
      const Eigen::MatrixXd H = svd.matrixV().rightCols(static_cast<Eigen::Index>(basis.size()) - rank);
      if (N < static_cast<std::size_t>(H.cols()))
        throw GridError("moment_polynomials: fewer boundary samples than harmonic basis functions");
      const LsqResult r = truncated_lsq(A * H, b - A * P, opt.svd_cutoff);
      coeffs = P + H * r.x;
      fit.rank = r.rank;
      fit.condition = r.condition;
      fit.basis_size = static_cast<int>(H.cols());
    }
    fit.Q = from_coefficients(n, basis, coeffs);
    const Eigen::VectorXd resid = A * coeffs - b;
    const double bn = b.norm();
    fit.fit_residual = bn > 0.0 ? resid.norm() / bn : resid.norm();
    ms.fits.push_back(std::move(fit));
  }
  return ms;
}

std::vector<Polynomial> moment_polynomials_exact(const Phantom& ph, int k_max, int nodes_per_axis) {
  const int n = ph.dim();
  const double R = ph.support_radius();
  const int panels = std::max(1, nodes_per_axis / 8);
  const QuadratureRule rule = composite_gauss_legendre(-R, R, panels, 8);
  const std::size_t q = rule.nodes.size();
  // mu[(beta, c)] = int y^beta |y|^{2c} f(y) dy for |beta| + c <= k_max.
  const auto betas = monomials(n, k_max);
  std::vector<std::vector<double>> mu(betas.size(), std::vector<double>(k_max + 1, 0.0));
  const std::size_t qz = n == 3 ? q : 1;
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j)
      for (std::size_t l = 0; l < qz; ++l) {
        const Point y{rule.nodes[i], rule.nodes[j], n == 3 ? rule.nodes[l] : 0.0};
        const double r2 = y[0] * y[0] + y[1] * y[1] + y[2] * y[2];
        if (r2 >= R * R) continue;
        const double f = ph(y);
        if (f == 0.0) continue;
        const double w = rule.weights[i] * rule.weights[j] * (n == 3 ? rule.weights[l] : 1.0) * f;
        for (std::size_t b = 0; b < betas.size(); ++b) {
          const int order = betas[b][0] + betas[b][1] + betas[b][2];
          double v = w * monomial(betas[b], y);
          for (int c = 0; c + order <= k_max; ++c) {
            mu[b][c] += v;
            v *= r2;
          }
        }
      }
  std::map<Exponent, std::size_t> beta_pos;
  for (std::size_t b = 0; b < betas.size(); ++b) beta_pos[betas[b]] = b;

  Polynomial r2(n);
  for (int i = 0; i < n; ++i) {
    Exponent e{0, 0, 0};
    e[i] = 2;
    r2.add(e, 1.0);
  }
  std::vector<Polynomial> r2pow{Polynomial(n)};
  r2pow[0].add({0, 0, 0}, 1.0);
  for (int a = 1; a <= k_max; ++a) r2pow.push_back(r2pow.back() * r2);

  const double inv_omega = 1.0 / sphere_area(n);
  std::vector<Polynomial> Q;
  for (int k = 0; k <= k_max; ++k) {
    Polynomial qk(n);
    for (int a = 0; a <= k; ++a)
      for (int b = 0; a + b <= k; ++b) {
        const int c = k - a - b;
        const double multinomial = factorial(k) / (factorial(a) * factorial(b) * factorial(c));
        Polynomial inner(n);
        for (const Exponent& beta : monomials(n, b)) {
          if (beta[0] + beta[1] + beta[2] != b) continue;
          const double coef = factorial(b) / (factorial(beta[0]) * factorial(beta[1]) * factorial(beta[2]));
          inner.add(beta, coef * mu[beta_pos.at(beta)][c]);
        }
        Polynomial term = r2pow[a] * inner;
        term *= inv_omega * multinomial * std::pow(-2.0, b);
        qk += term;
      }
    Q.push_back(std::move(qk));
  }
  return Q;
}

std::vector<RecurrenceResidual> check_recurrence(const std::vector<Polynomial>& Q, int dim,
                                                 const std::vector<Point>& cloud) {
  std::vector<RecurrenceResidual> out;
  for (std::size_t k = 1; k < Q.size(); ++k) {
    const double ck = 2.0 * k * (2.0 * k + dim - 2.0);
    const Polynomial lap = Q[k].laplacian();
    double num = 0.0;
    double den = 0.0;
    for (const Point& x : cloud) {
      const double rhs = ck * Q[k - 1](x);
      num += (lap(x) - rhs) * (lap(x) - rhs);
      den += rhs * rhs;
    }
    out.push_back({static_cast<int>(k), den > 0.0 ? std::sqrt(num / den) : std::sqrt(num)});
  }
  return out;
}

std::vector<RecurrenceResidual> check_recurrence(const MomentSet& ms, const GeneralBoundary& boundary) {
  std::vector<Polynomial> Q;
  for (const MomentFit& f : ms.fits) Q.push_back(f.Q);
  return check_recurrence(Q, ms.dim, boundary.interior);
}

GrowthEstimate check_growth(const std::vector<Polynomial>& Q, const std::vector<Point>& cloud, int k_tail_lo) {
  GrowthEstimate g;
  g.k_tail_lo = k_tail_lo;
  for (std::size_t k = 0; k < Q.size(); ++k) {
    double m = 0.0;
    for (const Point& x : cloud) m = std::max(m, std::abs(Q[k](x)));
    g.max_abs.push_back(m);
    g.root.push_back(k == 0 ? 0.0 : std::pow(m, 1.0 / static_cast<double>(k)));
    if (k >= 1) g.M = std::max(g.M, g.root.back());
  }
  for (std::size_t k = std::max(k_tail_lo, 1); k + 1 < g.root.size(); ++k)
    if (g.root[k + 1] > g.root[k] * (1.0 + 1e-12)) g.tail_non_increasing = false;
  return g;
}

GrowthEstimate check_growth(const MomentSet& ms, const std::vector<Point>& cloud, int k_tail_lo) {
  std::vector<Polynomial> Q;
  for (const MomentFit& f : ms.fits) Q.push_back(f.Q);
  return check_growth(Q, cloud, k_tail_lo);
}

// ------------------------------------------------------------- eigen side

std::vector<EigenSolution> EigenSolution::for_channel(const HarmonicIndex& idx, int count) {
  const Order q = Order::from_dim_degree(idx.dim, idx.m);
  const auto zeros = bessel_zeros(q, count);
  std::vector<EigenSolution> out;
  for (int j = 0; j < count; ++j) out.push_back({idx.dim, idx, zeros[j], j + 1});
  return out;
}

double EigenSolution::radial(double r) const {
  const Order q = Order::from_dim_degree(dim, index.m);
  return std::pow(lambda * r, index.m) * normalized_j(q, lambda * r);
}

double EigenSolution::radial_derivative_at_boundary() const {
  // z^m j_q(z) = 2^q Gamma(q+1) z^{-a} J_q(z), a = n/2 - 1.
  const Order q = Order::from_dim_degree(dim, index.m);
  const double a = 0.5 * dim - 1.0;
  const double z = lambda;
  const double c = std::exp(q.value() * std::log(2.0) + std::lgamma(q.value() + 1.0));
  const double J = bessel_j(q, z);
  const double dJ = bessel_j_derivative(q, z);
  return lambda * c * (-a * std::pow(z, -a - 1.0) * J + std::pow(z, -a) * dJ);
}

double EigenSolution::psi(const Point& x) const {
  const double r = norm(x);
  if (r == 0.0) {
    if (index.m > 0) return 0.0;
    return radial(0.0) * eval_harmonic(index, dim == 2 ? Point{1.0, 0.0, 0.0} : Point{0.0, 0.0, 1.0});
  }
  return radial(r) * eval_harmonic(index, {x[0] / r, x[1] / r, x[2] / r});
}

double EigenSolution::u(const Point& x, double t) const {
  return psi(x) * normalized_j(Order(0.5 * dim - 1.0), lambda * t);
}

double EigenSolution::normal_derivative(const Point& p, double t) const {
  const double r = norm(p);
  return radial_derivative_at_boundary() * eval_harmonic(index, {p[0] / r, p[1] / r, p[2] / r}) *
         normalized_j(Order(0.5 * dim - 1.0), lambda * t);
}

std::vector<EigenSolution> eigen_solutions(int dim, int m_max, int count) {
  std::vector<EigenSolution> out;
  for (const HarmonicIndex& idx : harmonic_indices(dim, m_max)) {
    auto e = EigenSolution::for_channel(idx, count);
    out.insert(out.end(), e.begin(), e.end());
  }
  return out;
}

std::vector<BesselZeroResidual> check_bessel_zeros(const HarmonicSpectrum& spec, const BesselZeroOptions& opt) {
  const int n = spec.dim;
  const Order p(0.5 * n - 1.0);
  std::vector<std::vector<double>> zeros(spec.m_max + 1);
  double lam_top = 0.0;
  for (int m = 0; m <= spec.m_max; ++m) {
    zeros[m] = bessel_zeros(Order::from_dim_degree(n, m), opt.zeros);
    lam_top = std::max(lam_top, zeros[m].back());
  }
  if (lam_top * spec.dt() > 0.5 * kPi)
    throw GridError("check_bessel_zeros: requested zeros exceed the resolvable band of the time grid");
  const std::size_t nt = spec.t_grid.size();
  const auto w = time_rule(spec.t_grid, true);
  auto kernel_row = [&](double lam) {
    std::vector<double> row(nt);
    for (std::size_t j = 0; j < nt; ++j)
      row[j] = w[j] * normalized_j(p, lam * spec.t_grid[j]) * std::pow(spec.t_grid[j], n - 1);
    return row;
  };
  const auto grid = lambda_grid(opt.lambda_points, 1.25 * lam_top + 5.0);
  std::vector<std::vector<double>> K;
  for (double lam : grid) K.push_back(kernel_row(lam));
  std::vector<std::vector<std::vector<double>>> Kz(spec.m_max + 1);
  for (int m = 0; m <= spec.m_max; ++m)
    for (double lam : zeros[m]) Kz[m].push_back(kernel_row(lam));
  auto apply = [&](const std::vector<double>& row, const std::vector<double>& v) {
    double s = 0.0;
    for (std::size_t j = 0; j < nt; ++j) s += row[j] * v[j];
    return s;
  };

  double top = 0.0;
  for (std::size_t ch = 0; ch < spec.channels.size(); ++ch) top = std::max(top, spec.channel_energy(ch));
  std::vector<BesselZeroResidual> out;
  for (std::size_t ch = 0; ch < spec.channels.size(); ++ch) {
    const HarmonicIndex& idx = spec.channels[ch];
    const auto& v = spec.values[ch];
    const bool applicable = top == 0.0 || spec.channel_energy(ch) > opt.energy_floor * top;
    double peak = 0.0;
    for (const auto& row : K) peak = std::max(peak, std::abs(apply(row, v)));
    for (int j = 0; j < opt.zeros; ++j) {
      BesselZeroResidual r{idx.m, idx.l, j + 1, zeros[idx.m][j], 0.0, 0.0, applicable};
      r.raw = apply(Kz[idx.m][j], v);
      peak = std::max(peak, std::abs(r.raw));
      out.push_back(r);
    }
    for (auto it = out.end() - opt.zeros; it != out.end(); ++it)
      if (it->applicable && peak > 0.0) it->residual = std::abs(it->raw) / peak;
  }
  return out;
}

std::vector<OrthogonalityResidual> check_orthogonality(const BoundaryData& g, const std::vector<EigenSolution>& eig) {
  const int n = g.dim;
  const Order p(0.5 * n - 1.0);
  const std::size_t nt = g.n_t();
  const auto w = time_rule(g.t_grid, true);
  std::vector<double> tw(nt);
  for (std::size_t j = 0; j < nt; ++j) tw[j] = w[j] * std::pow(g.t_grid[j], n - 1);
  double gnorm2 = 0.0;
  for (std::size_t c = 0; c < g.n_centers(); ++c) {
    double s = 0.0;
    for (std::size_t j = 0; j < nt; ++j) s += tw[j] * g.at(c, j) * g.at(c, j);
    gnorm2 += g.centers.weights[c] * s;
  }
  const double gnorm = std::sqrt(gnorm2);
  std::vector<OrthogonalityResidual> out;
  std::vector<double> jt(nt);
  for (const EigenSolution& e : eig) {
    if (e.dim != n) throw Error("check_orthogonality: eigen-solution dimension differs from data");
    double jnorm2 = 0.0;
    for (std::size_t j = 0; j < nt; ++j) {
      jt[j] = normalized_j(p, e.lambda * g.t_grid[j]);
      jnorm2 += tw[j] * jt[j] * jt[j];
    }
    const double dpsi = e.radial_derivative_at_boundary();
    double integral = 0.0;
    double unorm2 = 0.0;
    for (std::size_t c = 0; c < g.n_centers(); ++c) {
      const Point& x = g.centers.points[c];
      const double y = dpsi * eval_harmonic(e.index, x);
      const auto row = g.row(c);
      double s = 0.0;
      for (std::size_t j = 0; j < nt; ++j) s += tw[j] * row[j] * jt[j];
      integral += g.centers.weights[c] * y * s;
      unorm2 += g.centers.weights[c] * y * y;
    }
    unorm2 *= jnorm2;
    OrthogonalityResidual r{e.index.m, e.index.l, e.zero_number, e.lambda, 0.0, integral};
    const double den = gnorm * std::sqrt(unorm2);
    r.residual = den > 0.0 ? std::abs(integral) / den : 0.0;
    out.push_back(r);
  }
  return out;
}

// ----------------------------------------------------------- perturbation

void add_channel(BoundaryData& g, const HarmonicIndex& idx, const std::function<double(double)>& profile) {
  std::vector<double> v(g.n_t());
  for (std::size_t j = 0; j < g.n_t(); ++j) v[j] = profile(g.t_grid[j]);
  for (std::size_t c = 0; c < g.n_centers(); ++c) {
    const double y = eval_harmonic(idx, g.centers.points[c]);
    for (std::size_t j = 0; j < g.n_t(); ++j) g.at(c, j) += y * v[j];
  }
}

double time_window(double t, double T) { return 1.0 - smooth_step((t / T - 0.6) / 0.3); }

std::function<double(double)> bessel_perturbation(int dim, double lambda_star, double T, double amplitude) {
  const Order p(0.5 * dim - 1.0);
  return [=](double t) { return amplitude * normalized_j(p, lambda_star * t) * time_window(t, T); };
}

std::function<double(double)> moment_perturbation(double T, double amplitude) {
  return [=](double t) {
    const double s = (t - 0.8) / 0.2;
    return amplitude * t * t * std::exp(-s * s) * time_window(t, T);
  };
}

// ----------------------------------------------------------------- report

double RangeReport::worst_moment() const {
  double m = 0.0;
  for (const auto& r : moments)
    if (r.applicable) m = std::max(m, r.residual);
  return m;
}

double RangeReport::worst_fit() const {
  double m = 0.0;
  for (const auto& f : fits) m = std::max(m, f.fit_residual);
  return m;
}

double RangeReport::worst_recurrence() const {
  double m = 0.0;
  for (const auto& r : recurrence) m = std::max(m, r.residual);
  return m;
}

double RangeReport::worst_bessel() const {
  double m = 0.0;
  for (const auto& r : bessel)
    if (r.applicable) m = std::max(m, r.residual);
  return m;
}

double RangeReport::worst_orthogonality() const {
  double m = 0.0;
  for (const auto& r : orthogonality) m = std::max(m, r.residual);
  return m;
}

bool RangeReport::growth_pass() const { return data_scale == 0.0 || growth.M <= config.growth_limit; }

bool RangeReport::all_pass() const {
  return moment_pass() && fit_pass() && recurrence_pass() && growth_pass() && bessel_pass() && orthogonality_pass();
}

std::string RangeReport::text() const {
  std::ostringstream os;
  auto verdict = [](bool ok) { return ok ? "PASS" : "FAIL"; };
  os << "range report (dim " << dim << ", m_max " << config.m_max << ", k_max " << config.k_max << ", zeros "
     << config.zeros << ")\n";
  os << "harmonic truncation " << fmt(truncation) << "\n\n";
  os << "condition        worst          threshold      verdict\n";
  auto line = [&](const char* name, double worst, double tol, bool ok) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%-16s %-14s %-14s %s\n", name, fmt(worst).c_str(), fmt(tol).c_str(), verdict(ok));
    os << buf;
  };
  line("moment", worst_moment(), config.moment_tol, moment_pass());
  line("moment-fit", worst_fit(), config.fit_tol, fit_pass());
  line("recurrence", worst_recurrence(), config.recurrence_tol, recurrence_pass());
  line("growth", growth.M, config.growth_limit, growth_pass());
  line("bessel-zero", worst_bessel(), config.bessel_tol, bessel_pass());
  line("orthogonality", worst_orthogonality(), config.orthogonality_tol, orthogonality_pass());

  os << "\nmoment residuals (k, m, l)\n";
  for (const auto& r : moments)
    os << "  " << r.k << " " << r.m << " " << r.l << "  " << (r.applicable ? fmt(r.residual) : "n/a") << "\n";
  os << "\nmoment polynomials (k, fit residual, rank/basis, condition)\n";
  for (const auto& f : fits)
    os << "  " << f.k << "  " << fmt(f.fit_residual) << "  " << f.rank << "/" << f.basis_size << "  "
       << fmt(f.condition) << "\n";
  os << "\nrecurrence residuals (k)\n";
  for (const auto& r : recurrence) os << "  " << r.k << "  " << fmt(r.residual) << "\n";
  os << "\ngrowth (k, max|Q_k|, max|Q_k|^(1/k))\n";
  for (std::size_t k = 0; k < growth.max_abs.size(); ++k)
    os << "  " << k << "  " << fmt(growth.max_abs[k]) << "  " << fmt(growth.root[k]) << "\n";
  os << "  tail non-increasing: " << (growth.tail_non_increasing ? "yes" : "no") << "\n";
  os << "\nbessel-zero residuals (m, l, j, lambda)\n";
  for (const auto& r : bessel) {
    const bool bad = r.applicable && r.residual > config.bessel_tol;
    os << "  " << r.m << " " << r.l << " " << r.j << "  " << fmt(r.lambda) << "  "
       << (r.applicable ? fmt(r.residual) : "n/a") << (bad ? "  FAIL" : "") << "\n";
  }
  os << "\northogonality residuals (m, l, j, lambda)\n";
  for (const auto& r : orthogonality) {
    const bool bad = r.residual > config.orthogonality_tol;
    os << "  " << r.m << " " << r.l << " " << r.j << "  " << fmt(r.lambda) << "  " << fmt(r.residual)
       << (bad ? "  FAIL" : "") << "\n";
  }
  os << "\noverall " << verdict(all_pass()) << "\n";
  return os.str();
}

std::string RangeReport::key_values() const {
  std::ostringstream os;
  auto pf = [](bool ok) { return ok ? "PASS" : "FAIL"; };
  os << "dim=" << dim << "\n";
  os << "truncation=" << fmt(truncation) << "\n";
  os << "moment.worst=" << fmt(worst_moment()) << "\nmoment.verdict=" << pf(moment_pass()) << "\n";
  os << "fit.worst=" << fmt(worst_fit()) << "\nfit.verdict=" << pf(fit_pass()) << "\n";
  os << "recurrence.worst=" << fmt(worst_recurrence()) << "\nrecurrence.verdict=" << pf(recurrence_pass()) << "\n";
  os << "growth.M=" << fmt(growth.M) << "\ngrowth.tail_non_increasing=" << (growth.tail_non_increasing ? 1 : 0)
     << "\ngrowth.verdict=" << pf(growth_pass()) << "\n";
  os << "bessel.worst=" << fmt(worst_bessel()) << "\nbessel.verdict=" << pf(bessel_pass()) << "\n";
  os << "orthogonality.worst=" << fmt(worst_orthogonality()) << "\northogonality.verdict="
     << pf(orthogonality_pass()) << "\n";
  os << "overall=" << pf(all_pass()) << "\n";
  return os.str();
}

RangeReport range_report(const BoundaryData& g, const RangeConfig& config) {
  RangeReport rep;
  rep.dim = g.dim;
  rep.config = config;
  for (double v : g.values) rep.data_scale = std::max(rep.data_scale, std::abs(v));
  const HarmonicSpectrum spec = harmonic_decompose(g, config.m_max);
  rep.truncation = spec.truncation();
  rep.moments = check_moment_ball(spec, config.k_max, config.energy_floor);
  const GeneralBoundary sphere = GeneralBoundary::unit_sphere(g.centers, g.T, g.dim == 2 ? 0.05 : 0.1);
  const MomentSet ms = moment_polynomials(g, sphere, config.k_max);
  rep.fits = ms.fits;
  rep.recurrence = check_recurrence(ms, sphere);
  rep.growth = check_growth(ms, sphere.interior);
  BesselZeroOptions bo;
  bo.zeros = config.zeros;
  bo.energy_floor = config.energy_floor;
  rep.bessel = check_bessel_zeros(spec, bo);
  rep.orthogonality = check_orthogonality(g, eigen_solutions(g.dim, std::min(config.orth_m_max, config.m_max),
                                                               config.zeros));
  return rep;
}

}  // namespace smrt
