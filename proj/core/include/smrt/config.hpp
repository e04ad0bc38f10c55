#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "smrt/invert.hpp"
#include "smrt/phantom.hpp"
#include "smrt/range.hpp"

namespace smrt {

/// Run parameters shared by every command; serialized into each output header.
struct RunConfig {
  int n_theta = 128;       ///< centers on the circle (dim 2)
  int n_polar = 24;        ///< Gauss nodes in cos(polar) (dim 3)
  int n_azimuth = 48;      ///< azimuthal centers (dim 3)
  int n_t = 512;
  double T = 2.0;
  int n_r = 257;
  int m_max = 8;
  int k_max = 4;
  int zeros = 10;
  int orth_m_max = 4;
  int quad_order = 48;
  double moment_tol = 1e-4;
  double bessel_tol = 1e-4;
  double orthogonality_tol = 1e-4;
  double fit_tol = 1e-4;
  double recurrence_tol = 1e-4;
  double growth_limit = 4.1;
  double lambda_max = 80.0;
  int lambda_panels = 80;
  double h_r = 1.0 / 256.0;
  double h_t = 0.5 / 256.0;
  unsigned seed = 1;

  /// Throws ParseError naming the first invalid key.
  void validate() const;

  /// Canonical key=value lines in a fixed order.
  std::vector<std::pair<std::string, std::string>> entries() const;
  std::string to_string() const;
  /// FNV-1a (64 bit) of to_string(), as 16 hex digits.
  std::string hash() const;

  /// Set one key from text; throws ParseError for unknown keys or bad values.
  void set(const std::string& key, const std::string& value);

  RangeConfig range() const;
  SeriesOptions series() const;
  TimeReversalOptions time_reversal() const;
  ProjectionOptions projection() const;
};

/// Parse key=value lines ('#' starts a comment); values are validated.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

std::uint64_t fnv1a(const std::string& text);

}  // namespace smrt
