#include "selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "smrt/smrt.hpp"

namespace {

using namespace smrt;

struct Row {
  std::string name;
  double value;
  double limit;
  bool pass;
};

double bump(double t, double a) {
  const double s = t / a;
  return s < 1.0 ? std::exp(-1.0 / (1.0 - s * s)) : 0.0;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

Row below(std::string name, double value, double limit) { return {std::move(name), value, limit, value <= limit}; }

Row bessel_half_order() {
  double e = 0.0;
  for (double x = 0.25; x < 40.0; x += 0.37) {
    const double exact = std::sqrt(2.0 / (std::numbers::pi * x)) * std::sin(x);
    e = std::max(e, std::abs(bessel_j(Order(0.5), x) - exact));
  }
  return below("J_{1/2} closed form", e, 1e-12);
}

Row zeros_of_sine() {
  const auto z = bessel_zeros(Order(0.5), 10);
  double e = 0.0;
  for (int k = 0; k < 10; ++k) e = std::max(e, std::abs(z[k] - (k + 1) * std::numbers::pi));
  return below("zeros of J_{1/2}", e, 1e-10);
}

// Circle mean of a centered Gaussian: exp(-(c^2+t^2)/w^2) I0(2ct/w^2) while the circle avoids the cutoff.
Row mean_vs_closed_form() {
  const Phantom ph = phantoms::radial(2, 0.2);
  const double c = 0.3;
  const double w2 = 0.04;
  double e = 0.0;
  for (double t : {0.05, 0.15, 0.3, 0.45}) {
    const double exact = std::exp(-(c * c + t * t) / w2) * std::cyl_bessel_i(0.0, 2.0 * c * t / w2);
    e = std::max(e, std::abs(spherical_mean(ph, {c, 0.0, 0.0}, t) / exact - 1.0));
  }
  return below("2D radial mean closed form", e, 1e-10);
}

Row weyl_round_trip() {
  const auto g = TimeProfile::sample([](double t) { return std::exp(-10 * (t - 0.3) * (t - 0.3)) * bump(t, 1.0); },
                                     801, 2.0, 1.0);
  const auto back = inverse_weyl(weyl(g, Order(0.0)), 2);
  double e = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g.t_grid[i] >= 0.05) e = std::max(e, std::abs(back.values[i] - g.values[i]));
  return below("Weyl round trip", e / g.max_abs(), 1e-4);
}

Row poisson_round_trip() {
  const auto U = TimeProfile::sample([](double t) { return std::exp(-3 * t * t); }, 801, 2.0, 2.0);
  const auto back = inverse_poisson(poisson(U, Order(0.5)), Order(0.5));
  double e = 0.0;
  for (std::size_t i = 0; i < U.size(); ++i)
    if (U.t_grid[i] < 1.5) e = std::max(e, std::abs(back.values[i] - U.values[i]));
  return below("Poisson round trip", e, 1e-4);
}

// Intertwining residual should drop by ~4 when the grid is halved.
Row intertwining_order() {
  auto residual = [](int n) {
    const auto G = TimeProfile::sample([](double t) { return bump(t, 1.0); }, n, 2.0, 1.0);
    TimeProfile BG = G;
    BG.values = bessel_operator(G, Order(0.0));
    const auto WB = weyl(BG, Order(0.0));
    const auto W2 = second_derivative(weyl(G, Order(0.0)));
    double r = 0.0;
    for (std::size_t i = 0; i < G.size(); ++i)
      if (G.t_grid[i] >= 0.1 && G.t_grid[i] <= 1.5) r = std::max(r, std::abs(WB.values[i] - W2[i]));
    return r;
  };
  const double ratio = residual(201) / residual(401);
  return {"intertwining ratio (h -> h/2)", ratio, 4.0, ratio >= 3.5 && ratio <= 4.5};
}

struct Pipeline {
  BoundaryData g;
  HarmonicSpectrum spec;
  Phantom ph = phantoms::three_bump_2d();
  Pipeline() {
    g = forward_transform(ph, CenterGrid::circle(64), uniform_grid(257, 2.0), 24);
    spec = harmonic_decompose(g, 8);
  }
};

Row terminal(const Pipeline& p) {
  double m = 0.0;
  for (std::size_t c = 0; c < p.g.n_centers(); ++c)
    for (std::size_t j = 0; j < p.g.n_t(); ++j)
      if (p.g.t_grid[j] >= 1.9) m = std::max(m, std::abs(p.g.at(c, j)));
  return below("terminal values t >= 1.9", m, 0.0);
}

Row moments(const Pipeline& p) {
  double worst = 0.0;
  for (const auto& r : check_moment_ball(p.spec, 3))
    if (r.applicable) worst = std::max(worst, r.residual);
  return below("moment residual (k <= 3)", worst, 1e-6);
}

Row bessel(const Pipeline& p) {
  BesselZeroOptions opt;
  opt.zeros = 6;
  double worst = 0.0;
  for (const auto& r : check_bessel_zeros(p.spec, opt))
    if (r.applicable) worst = std::max(worst, r.residual);
  return below("Bessel-zero residual", worst, 1e-4);
}

Row series(const Pipeline& p) {
  const auto truth = project_to_harmonics(p.ph, 8, 257);
  const double e = compare_fields(truth, series_inversion(p.spec)).rel_l2;
  return below("series inversion rel L2", e, 0.08);
}

Row file_round_trip(const Pipeline& p) {
  const RunConfig cfg;
  const SmrtFile f = boundary_file(p.g, cfg, "selftest");
  const BoundaryData back = boundary_from(read_smrt(write_smrt(f)));
  const double e = max_diff(back.values, p.g.values) + max_diff(back.t_grid, p.g.t_grid);
  return below("SMRT file round trip", e, 0.0);
}

}  // namespace

bool run_selftest(std::ostream& out) {
  std::vector<Row> rows{bessel_half_order(), zeros_of_sine(), mean_vs_closed_form(), weyl_round_trip(),
                        poisson_round_trip(), intertwining_order()};
  const Pipeline p;
  for (auto* f : {&terminal, &moments, &bessel, &series, &file_round_trip}) rows.push_back(f(p));
  bool ok = true;
  char line[160];
  std::snprintf(line, sizeof line, "%-32s %14s %12s  %s\n", "check", "value", "limit", "verdict");
  out << line;
  for (const Row& r : rows) {
    std::snprintf(line, sizeof line, "%-32s %14.4e %12.2e  %s\n", r.name.c_str(), r.value, r.limit,
                  r.pass ? "PASS" : "FAIL");
    out << line;
    ok = ok && r.pass;
  }
  return ok;
}
