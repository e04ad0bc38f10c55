#pragma once

#include <span>
#include <vector>

#include "smrt/quadrature.hpp"

namespace smrt {

/// Bessel order p >= -1/2. The canonical orders are p = n/2 - 1 + m.
class Order {
 public:
  explicit Order(double p);
  static Order from_dim_degree(int dim, int degree);

  double value() const noexcept { return p_; }

 private:
  double p_;
};

/// Largest order accepted by the Bessel routines.
inline constexpr double kMaxBesselOrder = 200.0;

/// J_p(x) for x >= 0 (x < 0 is accepted only for half-integer-free use through
/// the normalized variant). Power series for x <= 12, Miller backward
/// recurrence in the transition band, Hankel asymptotics for large x.
double bessel_j(Order p, double x);

/// dJ_p/dx = (p/x) J_p - J_{p+1}; at x = 0 uses the series limit.
double bessel_j_derivative(Order p, double x);

/// Normalized Bessel function j_p(x) = 2^p Gamma(p+1) J_p(x) / x^p, even in x, j_p(0) = 1.
double normalized_j(Order p, double x);

/// Coefficients C_k of j_p(x) = sum_k C_k x^{2k}, k = 0..count-1.
std::vector<double> series_coeffs(Order p, int count);

/// First `count` positive zeros of J_p in ascending order.
std::vector<double> bessel_zeros(Order p, int count);

/// Number of linearly independent spherical harmonics of degree m on S^{n-1}.
int harmonic_count(int dim, int degree);

struct HarmonicIndex {
  int dim = 2;
  int m = 0;  ///< degree
  int l = 1;  ///< 1..d(m)

  friend bool operator==(const HarmonicIndex&, const HarmonicIndex&) = default;
};

/// All (m, l) for m <= m_max, ordered by degree then l.
std::vector<HarmonicIndex> harmonic_indices(int dim, int m_max);

/// Position of `idx` inside harmonic_indices(dim, m_max).
std::size_t harmonic_position(const HarmonicIndex& idx);

/// Real orthonormal spherical harmonic Y_l^m at a unit direction.
///
/// n = 2: l = 1 is cos(m phi)/sqrt(pi) (1/sqrt(2 pi) for m = 0), l = 2 is sin(m phi)/sqrt(pi).
/// n = 3: l = m + 1 + mu with mu in [-m, m]; mu = 0 is the zonal harmonic,
/// mu > 0 carries cos(mu phi), mu < 0 carries sin(|mu| phi). Fully normalized,
/// no Condon-Shortley phase.
double eval_harmonic(const HarmonicIndex& idx, const Point& direction);

/// Every harmonic with degree <= m_max at one direction, in harmonic_indices order.
std::vector<double> eval_all_harmonics(int dim, int m_max, const Point& direction);

}  // namespace smrt
