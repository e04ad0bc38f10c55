#include "smrt/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "smrt/error.hpp"

namespace smrt {

namespace {

double norm(const Point& x) { return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]); }

// C-infinity step: 0 for u <= 0, 1 for u >= 1.
double smooth_step(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / u);
  const double b = std::exp(-1.0 / (1.0 - u));
  return a / (a + b);
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

Phantom::Phantom(int dim, std::vector<Bump> bumps, double margin)
    : dim_(dim), margin_(margin), bumps_(std::move(bumps)) {
  if (dim_ != 2 && dim_ != 3) throw Error("Phantom: dimension must be 2 or 3");
  if (!(margin_ > 0.0 && margin_ <= 0.5)) throw Error("Phantom: margin must lie in (0, 0.5]");
  for (const Bump& b : bumps_) {
    if (!(b.width > 0.0)) throw Error("Phantom: bump width must be positive");
    if (dim_ == 2 && b.center[2] != 0.0) throw Error("Phantom: 2D bump with non-zero z coordinate");
    if (norm(b.center) + 3.0 * b.width > 1.0 - margin_ + 1e-12)
      throw Error("Phantom: bump support |center| + 3 width exceeds 1 - margin");
  }
}

double Phantom::cutoff(double radius) const noexcept {
  const double inner = inner_radius();
  const double outer = support_radius();
  return smooth_step((outer - radius) / (outer - inner));
}

double Phantom::operator()(const Point& x) const noexcept {
  const double r = norm(x);
  const double chi = cutoff(r);
  if (chi == 0.0) return 0.0;
  double sum = 0.0;
  for (const Bump& b : bumps_) {
    const double dx = x[0] - b.center[0];
    const double dy = x[1] - b.center[1];
    const double dz = x[2] - b.center[2];
    sum += b.amplitude * std::exp(-(dx * dx + dy * dy + dz * dz) / (b.width * b.width));
  }
  return chi * sum;
}

double Phantom::max_abs_amplitude() const noexcept {
  double m = 0.0;
  for (const Bump& b : bumps_) m = std::max(m, std::abs(b.amplitude));
  return m;
}

double eval_phantom(const Phantom& ph, const Point& x) { return ph(x); }

Phantom parse_phantom(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int dim = 0;
  double margin = 0.2;
  std::vector<Bump> bumps;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("phantom line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "dim") {
        dim = std::stoi(value);
      } else if (key == "margin") {
        margin = std::stod(value);
      } else if (key == "bump") {
        std::vector<double> nums;
        std::stringstream ss(value);
        std::string tok;
        while (std::getline(ss, tok, ',')) nums.push_back(std::stod(trim(tok)));
        if (dim != 2 && dim != 3) throw ParseError("phantom line " + std::to_string(lineno) + ": dim must precede bumps");
        if (static_cast<int>(nums.size()) != dim + 2)
          throw ParseError("phantom line " + std::to_string(lineno) + ": bump needs " + std::to_string(dim + 2) +
                           " comma-separated numbers");
        Bump b;
        for (int i = 0; i < dim; ++i) b.center[i] = nums[i];
        b.width = nums[dim];
        b.amplitude = nums[dim + 1];
        bumps.push_back(b);
      } else {
        throw ParseError("phantom line " + std::to_string(lineno) + ": unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      throw ParseError("phantom line " + std::to_string(lineno) + ": malformed number in '" + value + "'");
    }
  }
  if (dim != 2 && dim != 3) throw ParseError("phantom: missing or invalid 'dim'");
  return Phantom(dim, std::move(bumps), margin);
}

std::string format_phantom(const Phantom& ph) {
  std::ostringstream out;
  out.precision(17);
  out << "dim = " << ph.dim() << "\n";
  out << "margin = " << ph.margin() << "\n";
  for (const Bump& b : ph.bumps()) {
    out << "bump = ";
    for (int i = 0; i < ph.dim(); ++i) out << b.center[i] << ",";
    out << b.width << "," << b.amplitude << "\n";
  }
  return out.str();
}

PolarField PolarField::zeros(int dim, int m_max, int n_r) {
  PolarField f;
  f.dim = dim;
  f.m_max = m_max;
  f.r_grid = uniform_grid(n_r, 1.0);
  f.channels = harmonic_indices(dim, m_max);
  f.coeffs.assign(f.channels.size(), std::vector<double>(n_r, 0.0));
  return f;
}

std::size_t PolarField::channel_position(int m, int l) const {
  if (m < 0 || m > m_max || l < 1 || l > harmonic_count(dim, m))
    throw IndexError("PolarField: channel (" + std::to_string(m) + "," + std::to_string(l) + ") absent");
  return harmonic_position({dim, m, l});
}

double PolarField::operator()(const Point& x) const {
  const double r = norm(x);
  if (r > 1.0 + 1e-14) return 0.0;
  const Point dir = r > 0.0 ? Point{x[0] / r, x[1] / r, x[2] / r} : Point{1.0, 0.0, 0.0};
  const auto Y = eval_all_harmonics(dim, m_max, dir);
  const double h = dr();
  double sum = 0.0;
  for (std::size_t c = 0; c < channels.size(); ++c) sum += interpolate_uniform(coeffs[c], h, r) * Y[c];
  return sum;
}

double PolarField::energy() const {
  const auto w = simpson_weights(static_cast<int>(r_grid.size()), dr());
  double e = 0.0;
  for (const auto& ch : coeffs)
    for (std::size_t i = 0; i < ch.size(); ++i) e += w[i] * ch[i] * ch[i] * std::pow(r_grid[i], dim - 1);
  return e;
}

PolarField project_function(const std::function<double(const Point&)>& f, int dim, int m_max, int n_r,
                            const ProjectionOptions& opt) {
  if (m_max < 0 || m_max > 32) throw Error("project_to_harmonics: m_max must lie in [0, 32]");
  if (n_r < 32) throw GridError("project_to_harmonics: need at least 32 radial samples");
  const CenterGrid dirs = dim == 2 ? CenterGrid::circle(opt.n_theta) : CenterGrid::gauss_sphere(opt.n_polar, opt.n_azimuth);
  if (dirs.exact_degree() < m_max) {
    const std::string need = dim == 2 ? "n_theta >= " + std::to_string(2 * m_max + 1)
                                      : "n_polar >= " + std::to_string(m_max + 1) +
                                            " and n_azimuth >= " + std::to_string(2 * m_max + 1);
    throw GridError("project_to_harmonics: angular quadrature too coarse for m_max=" + std::to_string(m_max) +
                    "; requires " + need);
  }
  PolarField out = PolarField::zeros(dim, m_max, n_r);
  std::vector<std::vector<double>> Y(dirs.size());
  for (std::size_t j = 0; j < dirs.size(); ++j) Y[j] = eval_all_harmonics(dim, m_max, dirs.points[j]);
  for (int i = 0; i < n_r; ++i) {
    const double r = out.r_grid[i];
    for (std::size_t j = 0; j < dirs.size(); ++j) {
      const Point& d = dirs.points[j];
      const double v = f({r * d[0], r * d[1], r * d[2]}) * dirs.weights[j];
      if (v == 0.0) continue;
      for (std::size_t c = 0; c < out.channels.size(); ++c) out.coeffs[c][i] += v * Y[j][c];
    }
  }
  return out;
}

PolarField project_to_harmonics(const Phantom& ph, int m_max, int n_r, const ProjectionOptions& opt) {
  return project_function([&ph](const Point& x) { return ph(x); }, ph.dim(), m_max, n_r, opt);
}

namespace phantoms {

Phantom three_bump_2d() {
  return Phantom(2,
                 {{{0.3, 0.2, 0.0}, 0.12, 1.0},
                  {{-0.3, 0.1, 0.0}, 0.15, -0.6},
                  {{0.05, -0.4, 0.0}, 0.10, 0.8}},
                 0.2);
}

Phantom three_bump_3d() {
  return Phantom(3,
                 {{{0.3, 0.2, 0.1}, 0.14, 1.0},
                  {{-0.25, 0.1, -0.2}, 0.15, -0.6},
                  {{0.0, -0.25, 0.2}, 0.15, 0.8}},
                 0.2);
}

Phantom radial(int dim, double width, double amplitude) {
  return Phantom(dim, {{{0.0, 0.0, 0.0}, width, amplitude}}, 0.2);
}

Phantom random(int dim, int bumps, unsigned seed, double min_width, double max_width) {
  const double margin = 0.2;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Bump> out;
  double amax = 0.0;
  for (int i = 0; i < bumps; ++i) {
    Bump b;
    b.width = min_width + (max_width - min_width) * unit(rng);
    const double rmax = std::max(0.0, 1.0 - margin - 3.0 * b.width);
    Point dir{gauss(rng), gauss(rng), dim == 3 ? gauss(rng) : 0.0};
    const double dn = norm(dir);
    const double rad = rmax * std::pow(unit(rng), 1.0 / dim);
    for (int k = 0; k < 3; ++k) b.center[k] = dn > 0 ? rad * dir[k] / dn : 0.0;
    b.amplitude = 2.0 * unit(rng) - 1.0;
    amax = std::max(amax, std::abs(b.amplitude));
    out.push_back(b);
  }
  for (Bump& b : out) b.amplitude /= (amax > 0 ? amax : 1.0);
  return Phantom(dim, std::move(out), margin);
}

}  // namespace phantoms

}  // namespace smrt
