#include "smrt/forward.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>
#include <vector>

#include "smrt/error.hpp"

namespace smrt {

namespace {

constexpr double kPi = std::numbers::pi;

double norm(const Point& x) { return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]); }
double dot(const Point& a, const Point& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

// exp(-z) I_0(z) for z >= 0.
double i0e(double z) {
  if (z <= 30.0) {
    const double q = 0.25 * z * z;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
      term *= q / (static_cast<double>(k) * k);
      sum += term;
      if (term < 1e-17 * sum) break;
    }
    return sum * std::exp(-z);
  }
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * z);
    if (next > term) break;
    term = next;
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum / std::sqrt(2.0 * kPi * z);
}

// cos of the angle (from the axis pointing from the center to the origin) at
// which the sphere of radius t about a center at distance dc crosses |x| = R.
// Points with cos(alpha) above the returned value satisfy |x| < R.
double crossing_cos(double dc, double t, double R) {
  if (dc == 0.0) return t < R ? -1.0 : 1.0;
  return std::clamp((dc * dc + t * t - R * R) / (2.0 * dc * t), -1.0, 1.0);
}

struct Frame {
  Point e;      // axis: from the center toward the origin
  Point e_perp; // 2D only
};

Frame make_frame(const Point& c, double dc, int dim) {
  Frame f{};
  if (dc > 0.0) {
    f.e = {-c[0] / dc, -c[1] / dc, -c[2] / dc};
  } else {
    f.e = dim == 2 ? Point{1.0, 0.0, 0.0} : Point{0.0, 0.0, 1.0};
  }
  f.e_perp = {-f.e[1], f.e[0], 0.0};
  return f;
}

}  // namespace

BoundaryData BoundaryData::zeros(CenterGrid centers, std::vector<double> t_grid) {
  BoundaryData g;
  g.dim = centers.dim;
  g.T = t_grid.empty() ? 0.0 : t_grid.back();
  g.values.assign(centers.size() * t_grid.size(), 0.0);
  g.centers = std::move(centers);
  g.t_grid = std::move(t_grid);
  return g;
}

SphericalMeanEvaluator::SphericalMeanEvaluator(int quad_order) : order_(quad_order), rule_(gauss_legendre(quad_order)) {
  if (quad_order < 4) throw GridError("spherical_mean: quad_order must be at least 4");
}

double SphericalMeanEvaluator::operator()(const Phantom& ph, const Point& c, double t) const {
  if (t < 0.0) throw Error("spherical_mean: radius must be non-negative");
  if (t == 0.0) return ph(c);
  const double R = ph.support_radius();
  const double dc = norm(c);
  if (std::abs(dc - t) >= R) return 0.0;  // sphere misses the support ball
  const Frame fr = make_frame(c, dc, ph.dim());
  const double u_out = crossing_cos(dc, t, R);
  const double u_in = std::max(crossing_cos(dc, t, ph.inner_radius()), u_out);

  if (ph.dim() == 2) {
    // Mean = (1/2pi) int_0^{alpha_out} [f(alpha) + f(-alpha)] d alpha.
    const double a_out = std::acos(u_out);
    const double a_in = std::acos(u_in);
    auto integrand = [&](double a) {
      const double ca = std::cos(a) * t;
      const double sa = std::sin(a) * t;
      Point x1{c[0] + ca * fr.e[0] + sa * fr.e_perp[0], c[1] + ca * fr.e[1] + sa * fr.e_perp[1], 0.0};
      Point x2{c[0] + ca * fr.e[0] - sa * fr.e_perp[0], c[1] + ca * fr.e[1] - sa * fr.e_perp[1], 0.0};
      return ph(x1) + ph(x2);
    };
    double sum = 0.0;
    for (auto [lo, hi] : {std::pair{0.0, a_in}, std::pair{a_in, a_out}}) {
      if (hi <= lo) continue;
      const double half = 0.5 * (hi - lo);
      const double mid = 0.5 * (hi + lo);
      for (int i = 0; i < order_; ++i) sum += rule_.weights[i] * half * integrand(mid + half * rule_.nodes[i]);
    }
    return sum / (2.0 * kPi);
  }

  // 3D: mean = (1/2) int_{u_out}^{1} chi(rho(u)) sum_b a_b A_b(u) du, where A_b is the
  // azimuthal average of the Gaussian: exp(-(d_par^2 + (s - d_perp)^2) / w^2) i0e(2 s d_perp / w^2).
  struct Local {
    double v_par, d_perp, inv_w2, amplitude;
  };
  std::vector<Local> local;
  local.reserve(ph.bumps().size());
  for (const Bump& b : ph.bumps()) {
    const Point v{b.center[0] - c[0], b.center[1] - c[1], b.center[2] - c[2]};
    const double v_par = dot(v, fr.e);
    local.push_back({v_par, std::sqrt(std::max(0.0, dot(v, v) - v_par * v_par)), 1.0 / (b.width * b.width),
                     b.amplitude});
  }
  // Each Gaussian is integrated only where it is non-negligible, |d_par| <= sqrt(45) w.
  double total = 0.0;
  for (std::size_t k = 0; k < local.size(); ++k) {
    const Local& b = local[k];
    const double reach = std::sqrt(45.0 / b.inv_w2);
    const double lo_b = std::max(u_out, (b.v_par - reach) / t);
    const double hi_b = std::min(1.0, (b.v_par + reach) / t);
    if (hi_b <= lo_b) continue;
    auto integrand = [&](double u, bool inner) {
      double chi = 1.0;
      if (!inner) {
        chi = ph.cutoff(std::sqrt(std::max(0.0, dc * dc + t * t - 2.0 * dc * t * u)));
        if (chi == 0.0) return 0.0;
      }
      const double s = t * std::sqrt(std::max(0.0, 1.0 - u * u));
      const double d_par = t * u - b.v_par;
      const double gap = s - b.d_perp;
      const double expo = (d_par * d_par + gap * gap) * b.inv_w2;
      if (expo > 45.0) return 0.0;
      return chi * std::exp(-expo) * i0e(2.0 * s * b.d_perp * b.inv_w2);
    };
    const double split = std::clamp(u_in, lo_b, hi_b);
    double sum = 0.0;
    for (auto [lo, hi, inner] : {std::tuple{split, hi_b, true}, std::tuple{lo_b, split, false}}) {
      if (hi <= lo) continue;
      const double half = 0.5 * (hi - lo);
      const double mid = 0.5 * (hi + lo);
      for (int i = 0; i < order_; ++i) sum += rule_.weights[i] * half * integrand(mid + half * rule_.nodes[i], inner);
    }
    total += b.amplitude * sum;
  }
  return 0.5 * total;
}

double SphericalMeanEvaluator::operator()(const std::function<double(const Point&)>& f, int dim,
                                          double support_radius, const Point& c, double t) const {
  if (t < 0.0) throw Error("spherical_mean: radius must be non-negative");
  if (t == 0.0) return f(c);
  const double dc = norm(c);
  if (std::abs(dc - t) >= support_radius) return 0.0;
  const Frame fr = make_frame(c, dc, dim);
  const double u_out = crossing_cos(dc, t, support_radius);
  if (dim == 2) {
    const double a_out = std::acos(u_out);
    const double half = 0.5 * a_out;
    double sum = 0.0;
    for (int i = 0; i < order_; ++i) {
      const double a = half + half * rule_.nodes[i];
      const double ca = std::cos(a) * t;
      const double sa = std::sin(a) * t;
      const Point x1{c[0] + ca * fr.e[0] + sa * fr.e_perp[0], c[1] + ca * fr.e[1] + sa * fr.e_perp[1], 0.0};
      const Point x2{c[0] + ca * fr.e[0] - sa * fr.e_perp[0], c[1] + ca * fr.e[1] - sa * fr.e_perp[1], 0.0};
      sum += rule_.weights[i] * half * (f(x1) + f(x2));
    }
    return sum / (2.0 * kPi);
  }
  // Orthonormal pair spanning the plane normal to the axis.
  const Point helper = std::abs(fr.e[0]) < 0.9 ? Point{1.0, 0.0, 0.0} : Point{0.0, 1.0, 0.0};
  Point e1{helper[0] - dot(helper, fr.e) * fr.e[0], helper[1] - dot(helper, fr.e) * fr.e[1],
           helper[2] - dot(helper, fr.e) * fr.e[2]};
  const double n1 = norm(e1);
  for (double& v : e1) v /= n1;
  const Point e2{fr.e[1] * e1[2] - fr.e[2] * e1[1], fr.e[2] * e1[0] - fr.e[0] * e1[2],
                 fr.e[0] * e1[1] - fr.e[1] * e1[0]};
  const int n_az = 2 * order_;
  const double half = 0.5 * (1.0 - u_out);
  const double mid = 0.5 * (1.0 + u_out);
  double total = 0.0;
  for (int i = 0; i < order_; ++i) {
    const double u = mid + half * rule_.nodes[i];
    const double s = t * std::sqrt(std::max(0.0, 1.0 - u * u));
    double ring = 0.0;
    for (int k = 0; k < n_az; ++k) {
      const double ph = 2.0 * kPi * k / n_az;
      const double cp = s * std::cos(ph);
      const double sp = s * std::sin(ph);
      const Point x{c[0] + t * u * fr.e[0] + cp * e1[0] + sp * e2[0], c[1] + t * u * fr.e[1] + cp * e1[1] + sp * e2[1],
                    c[2] + t * u * fr.e[2] + cp * e1[2] + sp * e2[2]};
      ring += f(x);
    }
    total += rule_.weights[i] * half * ring / n_az;
  }
  return 0.5 * total;
}

double spherical_mean(const Phantom& ph, const Point& center, double t, int quad_order) {
  return SphericalMeanEvaluator(quad_order)(ph, center, t);
}

BoundaryData forward_transform(const Phantom& ph, const CenterGrid& centers, const std::vector<double>& t_grid,
                               int quad_order) {
  if (centers.dim != ph.dim()) throw GridError("forward_transform: center grid and phantom dimensions differ");
  const SphericalMeanEvaluator mean(quad_order);
  BoundaryData g = BoundaryData::zeros(centers, t_grid);
  for (std::size_t c = 0; c < centers.size(); ++c)
    for (std::size_t j = 0; j < t_grid.size(); ++j) g.at(c, j) = mean(ph, centers.points[c], t_grid[j]);
  return g;
}

BoundaryData forward_transform(const std::function<double(const Point&)>& f, int dim, double support_radius,
                               const CenterGrid& centers, const std::vector<double>& t_grid, int quad_order) {
  const SphericalMeanEvaluator mean(quad_order);
  BoundaryData g = BoundaryData::zeros(centers, t_grid);
  g.dim = dim;
  for (std::size_t c = 0; c < centers.size(); ++c)
    for (std::size_t j = 0; j < t_grid.size(); ++j)
      g.at(c, j) = mean(f, dim, support_radius, centers.points[c], t_grid[j]);
  return g;
}

DarbouxField interior_means(const Phantom& ph, const std::vector<double>& r_grid, const std::vector<double>& t_grid,
                            int m_max, const ProjectionOptions& angular, int quad_order) {
  const int dim = ph.dim();
  const CenterGrid dirs =
      dim == 2 ? CenterGrid::circle(angular.n_theta) : CenterGrid::gauss_sphere(angular.n_polar, angular.n_azimuth);
  if (dirs.exact_degree() < m_max) throw GridError("interior_means: angular grid too coarse for m_max");
  const SphericalMeanEvaluator mean(quad_order);
  DarbouxField field;
  field.dim = dim;
  field.m_max = m_max;
  field.r_grid = r_grid;
  field.t_grid = t_grid;
  field.channels = harmonic_indices(dim, m_max);
  const std::size_t nt = t_grid.size();
  field.values.assign(field.channels.size(), std::vector<double>(r_grid.size() * nt, 0.0));
  std::vector<std::vector<double>> Y(dirs.size());
  for (std::size_t k = 0; k < dirs.size(); ++k) Y[k] = eval_all_harmonics(dim, m_max, dirs.points[k]);
  std::vector<double> buffer(nt);
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    const double r = r_grid[i];
    for (std::size_t k = 0; k < dirs.size(); ++k) {
      const Point& d = dirs.points[k];
      const Point x{r * d[0], r * d[1], r * d[2]};
      for (std::size_t j = 0; j < nt; ++j) buffer[j] = mean(ph, x, t_grid[j]) * dirs.weights[k];
      for (std::size_t ch = 0; ch < field.channels.size(); ++ch) {
        double* dst = field.values[ch].data() + i * nt;
        const double y = Y[k][ch];
        for (std::size_t j = 0; j < nt; ++j) dst[j] += buffer[j] * y;
      }
    }
  }
  return field;
}

DarbouxField darboux_field_from(const HarmonicIndex& channel, const std::vector<double>& r_grid,
                                const std::vector<double>& t_grid, const std::function<double(double, double)>& g) {
  DarbouxField field;
  field.dim = channel.dim;
  field.m_max = channel.m;
  field.r_grid = r_grid;
  field.t_grid = t_grid;
  field.channels = {channel};
  field.values.assign(1, std::vector<double>(r_grid.size() * t_grid.size()));
  for (std::size_t i = 0; i < r_grid.size(); ++i)
    for (std::size_t j = 0; j < t_grid.size(); ++j) field.values[0][i * t_grid.size() + j] = g(r_grid[i], t_grid[j]);
  return field;
}

double darboux_residual(const DarbouxField& field, int m, const DarbouxResidualOptions& opt) {
  const std::size_t nr = field.r_grid.size();
  const std::size_t nt = field.t_grid.size();
  if (nr < 8 || nt < 8) throw GridError("darboux_residual: grid too coarse (need >= 8 points per axis)");
  const double hr = field.r_grid[1] - field.r_grid[0];
  const double ht = field.t_grid[1] - field.t_grid[0];
  const double r_lo = std::max(opt.r_min, 2.0 * hr) - 1e-12;
  const double t_lo = std::max(opt.t_min, 2.0 * ht) - 1e-12;
  const int n = field.dim;
  double worst = 0.0;
  for (std::size_t ch = 0; ch < field.channels.size(); ++ch) {
    if (field.channels[ch].m != m) continue;
    auto psi = [&](std::size_t i, std::size_t j) {
      const double r = field.r_grid[i];
      return field.at(ch, i, j) / std::pow(r, m);
    };
    for (std::size_t i = 1; i + 1 < nr; ++i) {
      const double r = field.r_grid[i];
      if (r < r_lo || r > opt.r_max + 1e-12) continue;
      for (std::size_t j = 1; j + 1 < nt; ++j) {
        const double t = field.t_grid[j];
        if (t < t_lo || t > opt.t_max + 1e-12) continue;
        const double p = psi(i, j);
        const double ptt = (psi(i, j + 1) - 2.0 * p + psi(i, j - 1)) / (ht * ht);
        const double pt = (psi(i, j + 1) - psi(i, j - 1)) / (2.0 * ht);
        const double prr = (psi(i + 1, j) - 2.0 * p + psi(i - 1, j)) / (hr * hr);
        const double pr = (psi(i + 1, j) - psi(i - 1, j)) / (2.0 * hr);
        const double res = ptt + (n - 1.0) / t * pt - prr - (n - 1.0 + 2.0 * m) / r * pr;
        worst = std::max(worst, std::abs(res));
      }
    }
  }
  return worst;
}

}  // namespace smrt
