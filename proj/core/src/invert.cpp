#include "smrt/invert.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "smrt/error.hpp"
#include "smrt/quadrature.hpp"

namespace smrt {

namespace {

constexpr double kPi = std::numbers::pi;

// Size of J_q(lambda) relative to its envelope: |j_q| below the first zero region,
// |J_q| sqrt(pi lambda / 2) past it.
double normalized_denominator(Order q, double lambda) {
  if (lambda < q.value()) return std::abs(normalized_j(q, lambda));
  return std::abs(bessel_j(q, lambda)) * std::sqrt(0.5 * kPi * lambda);
}

std::vector<double> resample_linear(const std::vector<double>& v, double h_from, const std::vector<double>& to) {
  std::vector<double> out(to.size(), 0.0);
  const int n = static_cast<int>(v.size());
  for (std::size_t i = 0; i < to.size(); ++i) {
    const double s = to[i] / h_from;
    if (s < 0.0 || s > n - 1 + 1e-9) continue;
    const int k = std::min(static_cast<int>(std::floor(s)), n - 2);
    const double a = s - k;
    out[i] = (1.0 - a) * v[k] + a * v[k + 1];
  }
  return out;
}

bool same_grid(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > 1e-12) return false;
  return true;
}

}  // namespace

double series_constant(int dim) {
  const double g = std::tgamma(0.5 * dim);
  return 1.0 / (std::pow(2.0, dim - 2) * g * g);
}

bool InversionSpectra::any_flagged() const {
  return std::any_of(divisions.begin(), divisions.end(), [](const ChannelDivision& d) { return d.flagged; });
}

InversionSpectra inversion_spectra(const HarmonicSpectrum& spec, const SeriesOptions& opt) {
  const int n = spec.dim;
  const Order p(0.5 * n - 1.0);
  if (opt.lambda_max <= 0.0 || opt.panels < 1 || opt.nodes_per_panel < 2)
    throw GridError("series_inversion: invalid lambda quadrature");
  if (opt.lambda_max * spec.dt() > 0.5 * kPi)
    throw GridError("series_inversion: lambda_max exceeds the resolvable band of the time grid");
  const QuadratureRule base = composite_gauss_legendre(0.0, opt.lambda_max, opt.panels, opt.nodes_per_panel);
  const std::size_t nt = spec.t_grid.size();
  const auto wt = simpson_weights(static_cast<int>(nt), spec.dt());

  InversionSpectra out;
  out.dim = n;
  out.m_max = spec.m_max;
  out.channels = spec.channels;
  out.nodes.resize(spec.m_max + 1);
  out.weights.resize(spec.m_max + 1);
  std::vector<int> shifted(spec.m_max + 1, 0);
  for (int m = 0; m <= spec.m_max; ++m) {
    const Order q = Order::from_dim_degree(n, m);
    const int count = static_cast<int>(std::ceil(opt.lambda_max / kPi)) + 2;
    const auto zeros = bessel_zeros(q, count);
    std::vector<double> nodes = base.nodes;
    for (double& lam : nodes)
      for (double z : zeros)
        if (std::abs(lam - z) < opt.shift) {
          lam = lam >= z ? z + opt.shift : z - opt.shift;
          ++shifted[m];
        }
    out.nodes[m] = std::move(nodes);
    out.weights[m] = base.weights;
  }
  // Kernel per degree: K[q][j] = w_j j_p(lambda_q t_j) t_j^{n-1}.
  std::vector<std::vector<std::vector<double>>> kernel(spec.m_max + 1);
  for (int m = 0; m <= spec.m_max; ++m) {
    if (m > 0 && shifted[m] == 0 && shifted[0] == 0) {
      kernel[m] = kernel[0];
      continue;
    }
    for (double lam : out.nodes[m]) {
      std::vector<double> row(nt);
      for (std::size_t j = 0; j < nt; ++j)
        row[j] = wt[j] * normalized_j(p, lam * spec.t_grid[j]) * std::pow(spec.t_grid[j], n - 1);
      kernel[m].push_back(std::move(row));
    }
  }
  for (std::size_t ch = 0; ch < spec.channels.size(); ++ch) {
    const HarmonicIndex& idx = spec.channels[ch];
    const Order q = Order::from_dim_degree(n, idx.m);
    const auto& nodes = out.nodes[idx.m];
    ChannelDivision div{idx, 0.0, shifted[idx.m], false};
    std::vector<double> gh(nodes.size()), b(nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const auto& row = kernel[idx.m][k];
      double s = 0.0;
      for (std::size_t j = 0; j < nt; ++j) s += row[j] * spec.values[ch][j];
      gh[k] = s;
      double jq = normalized_j(q, nodes[k]);
      const double d = normalized_denominator(q, nodes[k]);
      if (d < opt.floor) {
        div.flagged = true;
        jq = (jq < 0.0 ? -1.0 : 1.0) * std::abs(jq) * opt.floor / std::max(d, 1e-300);
      }
      div.max_inverse_denominator = std::max(div.max_inverse_denominator, 1.0 / std::max(d, opt.floor));
      b[k] = s / (std::pow(nodes[k], idx.m) * jq);
    }
    out.ghat.push_back(std::move(gh));
    out.b.push_back(std::move(b));
    out.divisions.push_back(div);
  }
  return out;
}

PolarField series_inversion(const HarmonicSpectrum& spec, const SeriesOptions& opt, InversionSpectra* spectra) {
  InversionSpectra s = inversion_spectra(spec, opt);
  const int n = spec.dim;
  const double c = series_constant(n);
  PolarField f = PolarField::zeros(n, spec.m_max, opt.n_r);
  // Per degree: kernel[i][q] = r_i^m j_q(lambda_q r_i) lambda_q^{n-1} w_q, so that
  // (lambda r)^m j_q(lambda r) b(lambda) = r^m j_q(lambda r) ghat(lambda) / j_q(lambda).
  for (int m = 0; m <= spec.m_max; ++m) {
    const Order q = Order::from_dim_degree(n, m);
    const auto& nodes = s.nodes[m];
    const auto& w = s.weights[m];
    std::vector<std::vector<double>> K(f.r_grid.size(), std::vector<double>(nodes.size()));
    for (std::size_t i = 0; i < f.r_grid.size(); ++i) {
      const double r = f.r_grid[i];
      const double rm = std::pow(r, m);
      for (std::size_t k = 0; k < nodes.size(); ++k)
        K[i][k] = rm * normalized_j(q, nodes[k] * r) * std::pow(nodes[k], n - 1 + m) * w[k];
    }
    for (std::size_t ch = 0; ch < spec.channels.size(); ++ch) {
      if (spec.channels[ch].m != m) continue;
      const auto& b = s.b[ch];
      for (std::size_t i = 0; i < f.r_grid.size(); ++i) {
        double sum = 0.0;
        for (std::size_t k = 0; k < nodes.size(); ++k) sum += K[i][k] * b[k];
        f.coeffs[ch][i] = c * sum;
      }
    }
  }
  if (spectra) *spectra = std::move(s);
  return f;
}

TimeReversalResult time_reversal(const HarmonicSpectrum& spec, const TimeReversalOptions& opt) {
  if (opt.h_r <= 0.0 || opt.h_t <= 0.0) throw GridError("time_reversal: step sizes must be positive");
  if (opt.h_t > 0.8 * opt.h_r + 1e-15) throw CflError("time_reversal: CFL violated, need h_t <= 0.8 h_r");
  const double eps = opt.eps > 0.0 ? opt.eps : 4.0 * opt.h_t;
  if (eps < 2.0 * opt.h_t - 1e-15 || eps > 10.0 * opt.h_t + 1e-15)
    throw Error("time_reversal: eps must lie in [2 h_t, 10 h_t]");
  const int intervals = static_cast<int>(std::lround(1.0 / opt.h_r));
  if (std::abs(intervals * opt.h_r - 1.0) > 1e-9 || intervals < 8)
    throw GridError("time_reversal: 1/h_r must be an integer >= 8");
  const int n = spec.dim;
  const double T = spec.T();
  if (T <= eps) throw GridError("time_reversal: data time range too short");
  const double hr = 1.0 / intervals;
  const int N = intervals;  // boundary index

  TimeReversalResult res;
  res.eps = eps;
  res.field = PolarField::zeros(n, spec.m_max, N + 1);
  const double dt_data = spec.dt();

  for (std::size_t ch = 0; ch < spec.channels.size(); ++ch) {
    const HarmonicIndex& idx = spec.channels[ch];
    const int m = idx.m;
    const double kp = n - 1.0 + 2.0 * m;
    ChannelMarch march{idx, 1, 0.0, false, {}};
    const auto& data = spec.values[ch];
    const bool zero = std::all_of(data.begin(), data.end(), [](double v) { return v == 0.0; });
    if (zero) {
      march.h_t = opt.h_t;
      res.channels.push_back(march);
      continue;
    }
    // Conservative radial operator: (1/r_i^k h^2)[r_{i+1/2}^k (Psi_{i+1}-Psi_i) - r_{i-1/2}^k (Psi_i-Psi_{i-1})].
    std::vector<double> up(N), dn(N);
    double rho = 4.0 * (kp + 1.0) / (hr * hr);
    for (int i = 1; i < N; ++i) {
      up[i] = std::pow((i + 0.5) / i, kp) / (hr * hr);
      dn[i] = std::pow((i - 0.5) / i, kp) / (hr * hr);
      rho = std::max(rho, 2.0 * (up[i] + dn[i]));
    }
    const double h_stable = 0.9 * 2.0 / std::sqrt(rho);
    const double h_target = std::min(opt.h_t, h_stable);
    const long K = static_cast<long>(std::ceil((T - eps) / h_target - 1e-9));
    const double h = (T - eps) / K;
    march.h_t = h;
    march.substeps = static_cast<int>(std::ceil(opt.h_t / h - 1e-9));
    auto boundary = [&](double t) { return interpolate_uniform(data, dt_data, t, 6, 0.0); };

    std::vector<double> next(N + 1, 0.0), cur(N + 1, 0.0), prev(N + 1, 0.0);  // t_{k+1}, t_k, t_{k-1}
    next[N] = boundary(T);
    cur[N] = boundary(eps + (K - 1) * h);
    const double a = n - 1.0;
    for (long k = K - 1; k >= 1; --k) {
      const double t = eps + k * h;
      const double lhs = 1.0 / (h * h) - a / (2.0 * h * t);
      const double c_next = a / (2.0 * h * t);
      auto step = [&](int i, double L) {
        prev[i] = (L - (next[i] - 2.0 * cur[i]) / (h * h) - c_next * next[i]) / lhs;
      };
      step(0, 2.0 * (kp + 1.0) * (cur[1] - cur[0]) / (hr * hr));
      for (int i = 1; i < N; ++i) step(i, up[i] * (cur[i + 1] - cur[i]) - dn[i] * (cur[i] - cur[i - 1]));
      prev[N] = boundary(t - h);
      std::swap(next, cur);
      std::swap(cur, prev);
      if (k % 1024 == 0 && !std::isfinite(cur[0] + cur[N / 2])) {
        march.failed = true;
        march.message = "non-finite values at t=" + std::to_string(t);
        break;
      }
    }
    if (!march.failed) {
      // cur = Psi(eps), next = Psi(eps + h); even quadratic extrapolation to t = 0.
      const double denom = (eps + h) * (eps + h) - eps * eps;
      auto& f = res.field.coeffs[ch];
      for (int i = 0; i <= N; ++i) {
        const double b = (next[i] - cur[i]) / denom;
        const double r = i * hr;
        f[i] = std::pow(r, m) * (cur[i] - eps * eps * b);
        if (!std::isfinite(f[i])) {
          march.failed = true;
          march.message = "non-finite reconstruction";
        }
      }
      if (march.failed) std::fill(f.begin(), f.end(), 0.0);
    }
    res.channels.push_back(march);
  }
  return res;
}

FieldComparison compare_fields(const PolarField& truth, const PolarField& recon) {
  if (truth.dim != recon.dim) throw GridError("compare_fields: dimensions differ");
  FieldComparison out;
  const auto w = simpson_weights(static_cast<int>(truth.r_grid.size()), truth.dr());
  const bool same = same_grid(truth.r_grid, recon.r_grid);
  auto weighted_norm2 = [&](const std::vector<double>& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += w[i] * v[i] * v[i] * std::pow(truth.r_grid[i], truth.dim - 1);
    return s;
  };
  const int m_top = std::max(truth.m_max, recon.m_max);
  double num = 0.0;
  double den = 0.0;
  for (const HarmonicIndex& idx : harmonic_indices(truth.dim, m_top)) {
    std::vector<double> a(truth.r_grid.size(), 0.0), b(truth.r_grid.size(), 0.0);
    if (idx.m <= truth.m_max) a = truth.coeffs[truth.channel_position(idx.m, idx.l)];
    if (idx.m <= recon.m_max) {
      const auto& src = recon.coeffs[recon.channel_position(idx.m, idx.l)];
      b = same ? src : resample_linear(src, recon.dr(), truth.r_grid);
    }
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    const double e = weighted_norm2(d);
    const double t = weighted_norm2(a);
    num += e;
    den += t;
    out.channels.push_back({idx, std::sqrt(e), t > 0.0 ? std::sqrt(e / t) : 0.0});
  }
  out.rel_l2 = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);

  const CenterGrid dirs = truth.dim == 2 ? CenterGrid::circle(96) : CenterGrid::gauss_sphere(16, 32);
  double dmax = 0.0;
  double amax = 0.0;
  for (std::size_t i = 0; i < truth.r_grid.size(); i += 2) {
    const double r = truth.r_grid[i];
    for (const Point& d : dirs.points) {
      const Point x{r * d[0], r * d[1], r * d[2]};
      const double a = truth(x);
      amax = std::max(amax, std::abs(a));
      dmax = std::max(dmax, std::abs(a - recon(x)));
    }
  }
  out.rel_linf = amax > 0.0 ? dmax / amax : dmax;
  return out;
}

double energy_fraction_beyond(const PolarField& f, double r0) {
  const auto w = trapezoid_weights(static_cast<int>(f.r_grid.size()), f.dr());
  double outer = 0.0;
  double total = 0.0;
  for (const auto& ch : f.coeffs)
    for (std::size_t i = 0; i < ch.size(); ++i) {
      const double e = w[i] * ch[i] * ch[i] * std::pow(f.r_grid[i], f.dim - 1);
      total += e;
      if (f.r_grid[i] > r0) outer += e;
    }
  return total > 0.0 ? outer / total : 0.0;
}

std::string cartesian_csv(const PolarField& f, int count) {
  if (count < 2) throw GridError("cartesian_csv: need at least two samples per axis");
  std::ostringstream os;
  os << (f.dim == 2 ? "x,y,value\n" : "x,y,z,value\n");
  const int kz = f.dim == 3 ? count : 1;
  char buf[128];
  for (int k = 0; k < kz; ++k)
    for (int j = 0; j < count; ++j)
      for (int i = 0; i < count; ++i) {
        const double x = -1.0 + 2.0 * i / (count - 1);
        const double y = -1.0 + 2.0 * j / (count - 1);
        const double z = f.dim == 3 ? -1.0 + 2.0 * k / (count - 1) : 0.0;
        const double v = f({x, y, z});
        if (f.dim == 2)
          std::snprintf(buf, sizeof buf, "%.9g,%.9g,%.17g\n", x, y, v);
        else
          std::snprintf(buf, sizeof buf, "%.9g,%.9g,%.9g,%.17g\n", x, y, z, v);
        os << buf;
      }
  return os.str();
}

}  // namespace smrt
