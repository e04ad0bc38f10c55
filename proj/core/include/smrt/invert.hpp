#pragma once

#include <string>
#include <vector>

#include "smrt/phantom.hpp"
#include "smrt/range.hpp"

namespace smrt {

struct SeriesOptions {
  double lambda_max = 80.0;
  int panels = 80;          ///< Gauss-Legendre panels on [0, lambda_max]
  int nodes_per_panel = 8;
  double shift = 1e-3;      ///< nodes closer than this to a zero move outward by it
  double floor = 1e-10;     ///< normalized denominator floor
  int n_r = 257;
};

struct ChannelDivision {
  HarmonicIndex index;
  double max_inverse_denominator = 0.0;  ///< max 1/|d(lambda)| over the nodes (normalized d)
  int shifted_nodes = 0;
  bool flagged = false;                  ///< a denominator fell below the floor
};

/// b_l(lambda_q) = ghat_{m,l}(lambda_q) / ((lambda_q)^m j_{n/2-1+m}(lambda_q)) on quadrature nodes.
struct InversionSpectra {
  int dim = 2;
  int m_max = 0;
  std::vector<HarmonicIndex> channels;
  std::vector<std::vector<double>> nodes;    ///< per degree m (shifted nodes differ by order)
  std::vector<std::vector<double>> weights;  ///< per degree m
  std::vector<std::vector<double>> ghat;     ///< per channel, at that channel's nodes
  std::vector<std::vector<double>> b;        ///< per channel
  std::vector<ChannelDivision> divisions;

  bool any_flagged() const;
};

InversionSpectra inversion_spectra(const HarmonicSpectrum& spec, const SeriesOptions& opt = {});

/// Fourier-Bessel coefficient division followed by the inverse transform.
PolarField series_inversion(const HarmonicSpectrum& spec, const SeriesOptions& opt = {},
                            InversionSpectra* spectra = nullptr);

/// 1 / (2^{n-2} Gamma(n/2)^2): 1 for n = 2, 2/pi for n = 3.
double series_constant(int dim);

struct TimeReversalOptions {
  double h_r = 1.0 / 256.0;
  double h_t = 0.5 / 256.0;
  double eps = 0.0;  ///< 0 selects 4 h_t
};

struct ChannelMarch {
  HarmonicIndex index;
  int substeps = 1;   ///< time steps per nominal step (axis stiffness)
  double h_t = 0.0;   ///< step actually used
  bool failed = false;
  std::string message;
};

struct TimeReversalResult {
  PolarField field;
  std::vector<ChannelMarch> channels;
  double eps = 0.0;
};

/// Backward leapfrog for Psi_tt + ((n-1)/t) Psi_t = Psi_rr + ((n-1+2m)/r) Psi_r from T to eps,
/// f_{l,m}(r) = r^m [Psi(r, eps) - eps^2 b(r)] with Psi ~ Psi_0 + b t^2.
TimeReversalResult time_reversal(const HarmonicSpectrum& spec, const TimeReversalOptions& opt = {});

struct ChannelError {
  HarmonicIndex index;
  double l2 = 0.0;   ///< ||truth - recon|| on this channel
  double rel = 0.0;  ///< relative to the channel truth norm (0 if the truth channel vanishes)
};

struct FieldComparison {
  double rel_l2 = 0.0;
  double rel_linf = 0.0;
  std::vector<ChannelError> channels;
};

/// Resamples `recon` onto the radial grid of `truth` when needed; missing channels count as zero.
FieldComparison compare_fields(const PolarField& truth, const PolarField& recon);

/// Fraction of the field energy at r > r0.
double energy_fraction_beyond(const PolarField& f, double r0);

/// Dense Cartesian samples on [-1, 1]^n with `count` points per axis as CSV (x,y[,z],value).
std::string cartesian_csv(const PolarField& f, int count);

}  // namespace smrt
