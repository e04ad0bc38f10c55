#pragma once

#include <string>
#include <utility>
#include <vector>

#include "smrt/config.hpp"
#include "smrt/forward.hpp"
#include "smrt/phantom.hpp"
#include "smrt/range.hpp"

namespace smrt {

/// Plain-text container: "SMRT 1", ordered key=value header lines, "end_header",
/// then one payload row per line (floats written with 17 significant digits).
///
/// Header keys: kind, dim, T, center_grid, n_polar, n_azimuth, n_centers, n_t,
/// m_max, n_r, config.<run config key>, provenance.command, provenance.config_hash.
/// Any other key is rejected on read.
struct SmrtFile {
  std::vector<std::pair<std::string, std::string>> header;
  std::vector<std::vector<double>> rows;  ///< numeric payload (boundary, field, spectrum)
  std::vector<std::string> text;          ///< text payload (report)

  const std::string& get(const std::string& key) const;
  bool has(const std::string& key) const;
  void set(const std::string& key, const std::string& value);
  std::string kind() const { return get("kind"); }
};

std::string write_smrt(const SmrtFile& f);
SmrtFile read_smrt(const std::string& text);
void save_smrt(const SmrtFile& f, const std::string& path);
SmrtFile load_smrt(const std::string& path);

SmrtFile boundary_file(const BoundaryData& g, const RunConfig& cfg, const std::string& command);
BoundaryData boundary_from(const SmrtFile& f);

SmrtFile field_file(const PolarField& f, const RunConfig& cfg, const std::string& command);
PolarField field_from(const SmrtFile& f);

SmrtFile spectrum_file(const HarmonicSpectrum& s, const RunConfig& cfg, const std::string& command);
HarmonicSpectrum spectrum_from(const SmrtFile& f);

SmrtFile report_file(const RangeReport& r, const RunConfig& cfg, const std::string& command);

/// Run configuration recorded in a header.
RunConfig config_from(const SmrtFile& f);

}  // namespace smrt
