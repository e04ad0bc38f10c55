#include "smrt/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "smrt/error.hpp"

namespace smrt {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSeriesLimit = 12.0;

void require_supported(double p) {
  if (!(p >= -0.5) || p > kMaxBesselOrder)
    throw UnsupportedOrderError("Bessel order " + std::to_string(p) + " outside [-1/2, " +
                                std::to_string(kMaxBesselOrder) + "]");
}

// sum_k (-1)^k (x^2/4)^k / (k! (p+1)_k), i.e. j_p(x) by its power series.
double normalized_series(double p, double x) {
  const long double q = -0.25L * static_cast<long double>(x) * x;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int k = 1; k < 400; ++k) {
    term *= q / (static_cast<long double>(k) * (static_cast<long double>(p) + k));
    sum += term;
    if (std::fabs(term) < 1e-21L * std::fabs(sum) && k > 2) break;
  }
  return static_cast<double>(sum);
}

double hankel_threshold(double p) { return 25.0 + 0.5 * p * p; }

double bessel_hankel(double p, double x) {
  const double mu = 4.0 * p * p;
  double P = 0.0;
  double Q = 0.0;
  double term = 1.0;  // a_k / x^k
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 200; ++k) {
    if (k > 0) term *= (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (k * 8.0 * x);
    const double mag = std::abs(term);
    if (k > 2 && mag > prev) break;
    const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0)
      P += sign * term;
    else
      Q += sign * term;
    if (mag < 1e-17 * std::max(std::abs(P), 1e-300)) break;
    prev = mag;
  }
  const double chi = x - (0.5 * p + 0.25) * kPi;
  return std::sqrt(2.0 / (kPi * x)) * (P * std::cos(chi) - Q * std::sin(chi));
}

// Miller backward recurrence normalized with
//   (x/2)^p = Gamma(p+1) J_p + sum_{k>=1} (p+2k) Gamma(p+k)/k! J_{p+2k}.
double bessel_miller(double p, double x) {
  const int steps = static_cast<int>(std::ceil(x)) + 30 + static_cast<int>(std::ceil(10.0 * std::cbrt(x)));
  const double log_half_x = std::log(0.5 * x);
  double upper = 0.0;     // J_{p+k+1}
  double current = 1e-30; // J_{p+k}
  double norm = 0.0;
  for (int k = steps; k >= 1; --k) {
    if (k % 2 == 0) {
      const int half = k / 2;
      const double c = (p + k) * std::exp(std::lgamma(p + half) - std::lgamma(half + 1.0) - p * log_half_x);
      norm += c * current;
    }
    const double lower = 2.0 * (p + k) / x * current - upper;
    upper = current;
    current = lower;
    if (std::abs(current) > 1e200) {
      current *= 1e-200;
      upper *= 1e-200;
      norm *= 1e-200;
    }
  }
  norm += std::exp(std::lgamma(p + 1.0) - p * log_half_x) * current;
  return current / norm;
}

}  // namespace

Order::Order(double p) : p_(p) { require_supported(p); }

Order Order::from_dim_degree(int dim, int degree) {
  if (dim < 2 || degree < 0) throw UnsupportedOrderError("Order::from_dim_degree: bad (dim, degree)");
  return Order(0.5 * dim - 1.0 + degree);
}

double bessel_j(Order order, double x) {
  const double p = order.value();
  if (!(x >= 0.0)) throw Error("bessel_j: argument must be non-negative");
  if (x == 0.0) {
    if (p == 0.0) return 1.0;
    return p > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  if (x <= kSeriesLimit) {
    const double prefactor = std::exp(p * std::log(0.5 * x) - std::lgamma(p + 1.0));
    return prefactor * normalized_series(p, x);
  }
  if (x >= hankel_threshold(p)) return bessel_hankel(p, x);
  return bessel_miller(p, x);
}

double bessel_j_derivative(Order order, double x) {
  const double p = order.value();
  if (x == 0.0) {
    if (p == 1.0) return 0.5;
    if (p == 0.0 || p > 1.0) return 0.0;
    return std::numeric_limits<double>::infinity();
  }
  return p / x * bessel_j(order, x) - bessel_j(Order(p + 1.0), x);
}

double normalized_j(Order order, double x) {
  const double p = order.value();
  const double ax = std::abs(x);
  if (ax <= kSeriesLimit) return normalized_series(p, ax);
  return bessel_j(order, ax) * std::exp(std::lgamma(p + 1.0) + p * std::log(2.0 / ax));
}

std::vector<double> series_coeffs(Order order, int count) {
  std::vector<double> c(std::max(count, 0));
  if (count <= 0) return c;
  c[0] = 1.0;
  for (int k = 1; k < count; ++k) c[k] = -0.25 * c[k - 1] / (k * (order.value() + k));
  return c;
}

std::vector<double> bessel_zeros(Order order, int count) {
  if (count < 1 || count > 200) throw Error("bessel_zeros: count must be in [1, 200]");
  const double p = order.value();
  // McMahon estimate of the count-th zero bounds the scan.
  const double bound = (count + 0.5 * p - 0.25) * kPi + p + 20.0;
  const double step = 0.25;
  std::vector<double> zeros;
  zeros.reserve(count);
  double lo = std::max(p, 0.0) + 1e-6;
  double f_lo = bessel_j(order, lo);
  while (static_cast<int>(zeros.size()) < count) {
    double hi = lo + step;
    if (hi > bound)
      throw ZeroSearchError("bessel_zeros: failed to bracket zero " + std::to_string(zeros.size() + 1) +
                                " of J_" + std::to_string(p),
                            lo, bound);
    const double f_hi = bessel_j(order, hi);
    if (f_lo == 0.0) {
      zeros.push_back(lo);
    } else if (std::signbit(f_lo) != std::signbit(f_hi)) {
      double a = lo;
      double b = hi;
      double fa = f_lo;
      for (int it = 0; it < 200 && b - a > 2e-16 * b; ++it) {
        const double mid = 0.5 * (a + b);
        const double fm = bessel_j(order, mid);
        if (fm == 0.0) {
          a = b = mid;
          break;
        }
        if (std::signbit(fm) == std::signbit(fa)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      zeros.push_back(0.5 * (a + b));
    }
    lo = hi;
    f_lo = f_hi;
  }
  return zeros;
}

int harmonic_count(int dim, int degree) {
  if (degree < 0) return 0;
  if (dim == 2) return degree == 0 ? 1 : 2;
  if (dim == 3) return 2 * degree + 1;
  throw IndexError("harmonic_count: only dimensions 2 and 3 are supported");
}

std::vector<HarmonicIndex> harmonic_indices(int dim, int m_max) {
  std::vector<HarmonicIndex> out;
  for (int m = 0; m <= m_max; ++m)
    for (int l = 1; l <= harmonic_count(dim, m); ++l) out.push_back({dim, m, l});
  return out;
}

std::size_t harmonic_position(const HarmonicIndex& idx) {
  if (idx.dim == 2) return idx.m == 0 ? 0 : 1 + 2 * static_cast<std::size_t>(idx.m - 1) + (idx.l - 1);
  return static_cast<std::size_t>(idx.m) * idx.m + (idx.l - 1);
}

namespace {

void check_index(const HarmonicIndex& idx) {
  if (idx.dim != 2 && idx.dim != 3) throw IndexError("spherical harmonic: dimension must be 2 or 3");
  if (idx.m < 0 || idx.l < 1 || idx.l > harmonic_count(idx.dim, idx.m))
    throw IndexError("spherical harmonic index (m=" + std::to_string(idx.m) + ", l=" + std::to_string(idx.l) +
                     ") out of range for d(m)=" + std::to_string(harmonic_count(idx.dim, idx.m)));
}

// Fully normalized associated Legendre values Pbar[l][mu] for l <= lmax,
// with 2*pi * int Pbar^2 d(cos) = 1.
std::vector<std::vector<double>> normalized_legendre(int lmax, double z) {
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  std::vector<std::vector<double>> P(lmax + 1);
  for (int l = 0; l <= lmax; ++l) P[l].assign(l + 1, 0.0);
  P[0][0] = 1.0 / std::sqrt(4.0 * kPi);
  for (int mu = 1; mu <= lmax; ++mu) P[mu][mu] = std::sqrt((2.0 * mu + 1.0) / (2.0 * mu)) * s * P[mu - 1][mu - 1];
  for (int mu = 0; mu < lmax; ++mu) P[mu + 1][mu] = std::sqrt(2.0 * mu + 3.0) * z * P[mu][mu];
  for (int mu = 0; mu <= lmax; ++mu) {
    for (int l = mu + 2; l <= lmax; ++l) {
      const double a = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - static_cast<double>(mu) * mu));
      const double b = std::sqrt(((l - 1.0) * (l - 1.0) - static_cast<double>(mu) * mu) /
                                 (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
      P[l][mu] = a * (z * P[l - 1][mu] - b * P[l - 2][mu]);
    }
  }
  return P;
}

}  // namespace

std::vector<double> eval_all_harmonics(int dim, int m_max, const Point& d) {
  std::vector<double> out;
  const double phi = std::atan2(d[1], d[0]);
  if (dim == 2) {
    out.reserve(2 * m_max + 1);
    out.push_back(1.0 / std::sqrt(2.0 * kPi));
    const double c = 1.0 / std::sqrt(kPi);
    for (int m = 1; m <= m_max; ++m) {
      out.push_back(c * std::cos(m * phi));
      out.push_back(c * std::sin(m * phi));
    }
    return out;
  }
  if (dim != 3) throw IndexError("eval_all_harmonics: dimension must be 2 or 3");
  const double norm = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
  const double z = std::clamp(d[2] / norm, -1.0, 1.0);
  const auto P = normalized_legendre(m_max, z);
  out.reserve(static_cast<std::size_t>(m_max + 1) * (m_max + 1));
  for (int m = 0; m <= m_max; ++m) {
    for (int mu = -m; mu <= m; ++mu) {
      if (mu == 0)
        out.push_back(P[m][0]);
      else if (mu > 0)
        out.push_back(std::sqrt(2.0) * P[m][mu] * std::cos(mu * phi));
      else
        out.push_back(std::sqrt(2.0) * P[m][-mu] * std::sin(-mu * phi));
    }
  }
  return out;
}

double eval_harmonic(const HarmonicIndex& idx, const Point& direction) {
  check_index(idx);
  const double norm2 = direction[0] * direction[0] + direction[1] * direction[1] +
                       (idx.dim == 3 ? direction[2] * direction[2] : 0.0);
  if (std::abs(norm2 - 1.0) > 2e-12) throw Error("eval_harmonic: direction must be a unit vector");
  return eval_all_harmonics(idx.dim, idx.m, direction)[harmonic_position(idx)];
}

}  // namespace smrt
