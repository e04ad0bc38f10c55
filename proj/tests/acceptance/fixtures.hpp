#pragma once

#include <memory>
#include <string>

#include "smrt/smrt.hpp"

namespace acc {

struct Result {
  bool pass = false;
  std::string detail;
};

/// Boundary data and spectrum of one phantom on one grid, computed once.
struct Dataset {
  smrt::Phantom phantom;
  smrt::BoundaryData g;
  smrt::HarmonicSpectrum spec;
  double scale = 0.0;  ///< max |g|
};

Dataset make_dataset(const smrt::Phantom& ph, const smrt::CenterGrid& centers, int n_t, int m_max);

/// 2D three-bump phantom on 128 centers x 512 times, m_max 8.
const Dataset& planar();
/// 3D three-bump phantom on a 64 x 128 Gauss sphere x 256 times, m_max 8.
const Dataset& spatial();

double max_abs(const std::vector<double>& v);
double rel_l2(const std::vector<double>& a, const std::vector<double>& b);

std::string fmt(const char* format, ...);

}  // namespace acc
