#pragma once

#include <functional>

#include "smrt/phantom.hpp"

// Reference computations that share no code with the library.
namespace oracle {

/// J_p(x) from Boost.Math.
double bessel_j(double p, double x);

/// k-th positive zero of J_p from Boost.Math.
double bessel_zero(double p, int k);

/// Mean of a radial function F(|y|) over the 3D sphere of radius t centered at distance a
/// from the origin: (1 / 2at) int_{|a-t|}^{a+t} F(rho) rho drho.
/// `breaks` are radii where F is allowed to be non-analytic.
double radial_mean_abel(const std::function<double(double)>& F, double a, double t,
                        std::initializer_list<double> breaks = {});

/// Mean over the sphere (dim 3) or circle (dim 2) of radius t around `center` by a tensor rule:
/// composite Gauss-Legendre in the polar angle (panels x 20 nodes) times the periodic
/// trapezoid rule in azimuth with `azimuth` points.
double surface_mean(const std::function<double(const smrt::Point&)>& f, int dim, const smrt::Point& center, double t,
                    int panels, int azimuth);

/// Radial profile of a single centered Gaussian phantom including its cutoff.
std::function<double(double)> radial_profile(const smrt::Phantom& ph);

}  // namespace oracle
