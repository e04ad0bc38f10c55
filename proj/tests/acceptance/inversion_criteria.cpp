#include <algorithm>
#include <cmath>
#include <random>

#include "criteria.hpp"

namespace acc {

using namespace smrt;

namespace {

double bump(double t, double a) {
  const double s = t / a;
  return s < 1.0 ? std::exp(-1.0 / (1.0 - s * s)) : 0.0;
}

double window_max(const TimeProfile& ref, const std::vector<double>& a, const std::vector<double>& b) {
  double r = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i)
    if (ref.t_grid[i] >= 0.1 && ref.t_grid[i] <= 1.5) r = std::max(r, std::abs(a[i] - b[i]));
  return r;
}

// P_p(U'') - B_p(P_p U) and (W_p G)'' - W_p(B_p G) on a grid with n samples.
std::pair<double, double> intertwining_residuals(double p, int n) {
  const Order q(p);
  const auto U = TimeProfile::sample([](double t) { return std::exp(-4 * t * t) * std::cos(2 * t); }, n, 2.0, 2.0);
  TimeProfile U2 = U;
  U2.values = second_derivative(U);
  const double poisson_res = window_max(U, poisson(U2, q).values, bessel_operator(poisson(U, q), q));

  const auto G = TimeProfile::sample([](double t) { return bump(t, 1.0); }, n, 2.0, 1.0);
  TimeProfile BG = G;
  BG.values = bessel_operator(G, q);
  const double weyl_res = window_max(G, weyl(BG, q).values, second_derivative(weyl(G, q)));
  return {poisson_res, weyl_res};
}

double linf_rel(const PolarField& a, const PolarField& b) {
  double e = 0.0, s = 0.0;
  for (std::size_t c = 0; c < a.coeffs.size(); ++c)
    for (std::size_t i = 0; i < a.coeffs[c].size(); ++i) {
      e = std::max(e, std::abs(a.coeffs[c][i] - b.coeffs[c][i]));
      s = std::max(s, std::abs(b.coeffs[c][i]));
    }
  return e / s;
}

PolarField combine(double a, const PolarField& x, double b, const PolarField& y) {
  PolarField out = x;
  for (std::size_t c = 0; c < out.coeffs.size(); ++c)
    for (std::size_t i = 0; i < out.coeffs[c].size(); ++i) out.coeffs[c][i] = a * x.coeffs[c][i] + b * y.coeffs[c][i];
  return out;
}

PolarField truth_of(const Dataset& d, int m_max) { return project_to_harmonics(d.phantom, m_max, 257); }

}  // namespace

Result intertwining() {
  double min_ratio = 1e300, beyond = 0.0;
  std::string detail;
  for (double p : {0.0, 0.5, 1.5}) {
    const auto coarse = intertwining_residuals(p, 401);
    const auto fine = intertwining_residuals(p, 801);
    const double rp = coarse.first / fine.first;
    const double rw = coarse.second / fine.second;
    min_ratio = std::min({min_ratio, rp, rw});
    detail += fmt("p=%.1f P %.2f W %.2f; ", p, rp, rw);
  }
  // Support preservation: a bump on [0, 1] and a data channel supported below 1.9.
  const auto G = TimeProfile::sample([](double t) { return bump(t, 1.0); }, 801, 2.0, 1.0);
  const Dataset& d = planar();
  TimeProfile data{d.spec.t_grid, d.spec.channel(2, 1), 1.0 + d.phantom.support_radius()};
  for (const auto& [prof, p] : {std::pair{G, 0.0}, std::pair{G, 0.5}, std::pair{data, 0.0}}) {
    const auto W = weyl(prof, Order(p));
    double out = 0.0;
    for (std::size_t i = 0; i < W.size(); ++i)
      if (W.t_grid[i] >= prof.support) out = std::max(out, std::abs(W.values[i]));
    beyond = std::max(beyond, out / W.max_abs());
  }
  return {min_ratio >= 3.5 && beyond <= 1e-12,
          detail + fmt("min ratio %.2f, Weyl output beyond support %.1e of scale", min_ratio, beyond)};
}

Result reconstruction() {
  bool ok = true;
  std::string detail;
  auto record = [&](bool pass, const std::string& s) {
    ok = ok && pass;
    detail += (detail.empty() ? "" : "; ") + s;
  };

  double radial_series = 0.0, radial_tr = 0.0;
  for (const Phantom& ph : {phantoms::radial(3, 0.2), phantoms::radial(3, 0.15, -0.7)}) {
    const Dataset d = make_dataset(ph, CenterGrid::gauss_sphere(8, 16), 256, 2);
    const auto truth = truth_of(d, 2);
    radial_series = std::max(radial_series, compare_fields(truth, series_inversion(d.spec)).rel_l2);
    radial_tr = std::max(radial_tr, compare_fields(truth, time_reversal(d.spec).field).rel_l2);
  }
  record(radial_series <= 0.05 && radial_tr <= 0.10,
         fmt("radial n=3 series %.1e TR %.1e", radial_series, radial_tr));

  for (const Dataset* d : {&planar(), &spatial()}) {
    const auto truth = truth_of(*d, 8);
    const double es = compare_fields(truth, series_inversion(d->spec)).rel_l2;
    const double et = compare_fields(truth, time_reversal(d->spec).field).rel_l2;
    record(es <= 0.08 && et <= 0.10, fmt("n=%d m_max=8 series %.1e TR %.1e", d->g.dim, es, et));
  }

  {
    const Dataset& d = planar();
    const auto g2 = forward_transform(phantoms::random(2, 4, 7), d.g.centers, d.g.t_grid);
    BoundaryData mix = d.g;
    for (std::size_t i = 0; i < mix.values.size(); ++i) mix.values[i] = 2.0 * d.g.values[i] - 0.7 * g2.values[i];
    const auto s2 = harmonic_decompose(g2, 8);
    const auto smix = harmonic_decompose(mix, 8);
    const double ls = linf_rel(series_inversion(smix),
                               combine(2.0, series_inversion(d.spec), -0.7, series_inversion(s2)));
    const double lt = linf_rel(time_reversal(smix).field,
                               combine(2.0, time_reversal(d.spec).field, -0.7, time_reversal(s2).field));
    record(ls <= 1e-10 && lt <= 1e-10, fmt("linearity series %.1e TR %.1e", ls, lt));
  }

  {
    const Dataset& d = planar();
    const auto f = series_inversion(harmonic_decompose(d.g, 16));
    const auto again = forward_transform([&](const Point& x) { return f(x); }, 2, 1.0, d.g.centers, d.g.t_grid);
    const double e = rel_l2(again.values, d.g.values);
    record(e <= 0.07, fmt("data round trip (m_max=16) %.2e", e));
  }
  return {ok, detail};
}

Result stability() {
  const Dataset& d = planar();
  const auto truth = truth_of(d, 8);
  const std::vector<double> levels{0.0, 0.005, 0.01, 0.02, 0.05};

  // One smooth random profile per channel, windowed in t; the same realization is scaled per level.
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  std::vector<std::array<double, 4>> coef;
  for (std::size_t c = 0; c < d.spec.channels.size(); ++c) coef.push_back({normal(rng), normal(rng), normal(rng), normal(rng)});
  auto noisy = [&](double level) {
    BoundaryData g = d.g;
    for (std::size_t c = 0; c < d.spec.channels.size(); ++c) {
      const auto a = coef[c];
      add_channel(g, d.spec.channels[c], [&](double t) {
        return level * d.scale * time_window(t, g.T) *
               (a[0] * std::sin(3 * t) + a[1] * std::sin(5 * t) + a[2] * t * std::cos(4 * t) + a[3] * std::sin(7 * t)) /
               4.0;
      });
    }
    return harmonic_decompose(g, 8);
  };

  bool ok = true;
  std::string detail;
  for (int method = 0; method < 2; ++method) {
    std::vector<double> err;
    for (double lv : levels) {
      const auto s = noisy(lv);
      const PolarField f = method == 0 ? series_inversion(s) : time_reversal(s).field;
      err.push_back(compare_fields(truth, f).rel_l2);
    }
    // At most linear growth: the chord slope err/level must not increase with the level.
    bool mono = true;
    for (std::size_t i = 2; i < levels.size(); ++i)
      mono = mono && err[i] / levels[i] <= 1.01 * err[i - 1] / levels[i - 1];
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(levels.size());
    for (std::size_t i = 0; i < levels.size(); ++i) {
      sx += levels[i];
      sy += err[i];
      sxx += levels[i] * levels[i];
      sxy += levels[i] * err[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    ok = ok && mono;
    detail += fmt("%s%s errors", method ? "; " : "", method ? "TR" : "series");
    for (double e : err) detail += fmt(" %.2e", e);
    detail += fmt(", slope %.2f", slope);
  }
  return {ok, detail};
}

}  // namespace acc
