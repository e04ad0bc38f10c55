#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>

namespace acc {

using namespace smrt;

Dataset make_dataset(const Phantom& ph, const CenterGrid& centers, int n_t, int m_max) {
  Dataset d{ph, forward_transform(ph, centers, uniform_grid(n_t, 2.0)), {}, 0.0};
  d.spec = harmonic_decompose(d.g, m_max);
  d.scale = max_abs(d.g.values);
  return d;
}

const Dataset& planar() {
  static const Dataset d = make_dataset(phantoms::three_bump_2d(), CenterGrid::circle(128), 512, 8);
  return d;
}

const Dataset& spatial() {
  static const Dataset d = make_dataset(phantoms::three_bump_3d(), CenterGrid::gauss_sphere(64, 128), 256, 8);
  return d;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double rel_l2(const std::vector<double>& a, const std::vector<double>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += b[i] * b[i];
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

}  // namespace acc
