#include "smrt/smrt_file.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "smrt/error.hpp"

namespace smrt {

namespace {

const std::set<std::string>& plain_keys() {
  static const std::set<std::string> keys{"kind",  "dim", "T",   "center_grid", "n_polar",           "n_azimuth",
                                          "n_centers", "n_t", "m_max", "n_r", "provenance.command",
                                          "provenance.config_hash"};
  return keys;
}

bool config_key(const std::string& key) {
  if (key.rfind("config.", 0) != 0) return false;
  const std::string name = key.substr(7);
  for (const auto& [k, v] : RunConfig{}.entries())
    if (k == name) return true;
  return false;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int as_int(const SmrtFile& f, const std::string& key) {
  const std::string& v = f.get(key);
  char* end = nullptr;
  const long x = std::strtol(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0') throw ParseError("smrt: header key " + key + " is not an integer");
  return static_cast<int>(x);
}

double as_double(const SmrtFile& f, const std::string& key) {
  const std::string& v = f.get(key);
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0') throw ParseError("smrt: header key " + key + " is not a number");
  return x;
}

SmrtFile start(const std::string& kind, int dim, const RunConfig& cfg) {
  SmrtFile f;
  f.set("kind", kind);
  f.set("dim", std::to_string(dim));
  (void)cfg;
  return f;
}

void finish(SmrtFile& f, const RunConfig& cfg, const std::string& command) {
  for (const auto& [k, v] : cfg.entries()) f.set("config." + k, v);
  f.set("provenance.command", command);
  f.set("provenance.config_hash", cfg.hash());
}

void require_kind(const SmrtFile& f, const std::string& kind) {
  if (f.kind() != kind) throw ParseError("smrt: expected kind " + kind + ", found " + f.kind());
}

void require_rows(const SmrtFile& f, std::size_t rows, std::size_t cols, std::size_t first = 0) {
  if (f.rows.size() != first + rows)
    throw ParseError("smrt: payload has " + std::to_string(f.rows.size()) + " rows, expected " +
                     std::to_string(first + rows));
  for (std::size_t i = first; i < f.rows.size(); ++i)
    if (f.rows[i].size() != cols)
      throw ParseError("smrt: payload row " + std::to_string(i + 1) + " has " + std::to_string(f.rows[i].size()) +
                       " values, expected " + std::to_string(cols));
}

}  // namespace

const std::string& SmrtFile::get(const std::string& key) const {
  for (const auto& [k, v] : header)
    if (k == key) return v;
  throw ParseError("smrt: missing header key " + key);
}

bool SmrtFile::has(const std::string& key) const {
  return std::any_of(header.begin(), header.end(), [&](const auto& e) { return e.first == key; });
}

void SmrtFile::set(const std::string& key, const std::string& value) {
  if (value.find('\n') != std::string::npos) throw Error("smrt: header value for " + key + " contains a newline");
  for (auto& [k, v] : header)
    if (k == key) {
      v = value;
      return;
    }
  header.emplace_back(key, value);
}

std::string write_smrt(const SmrtFile& f) {
  std::string out = "SMRT 1\n";
  for (const auto& [k, v] : f.header) out += k + "=" + v + "\n";
  out += "end_header\n";
  for (const auto& row : f.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ' ';
      out += num(row[i]);
    }
    out += '\n';
  }
  for (const auto& line : f.text) out += line + "\n";
  return out;
}

SmrtFile read_smrt(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "SMRT 1") throw ParseError("smrt: line 1: missing magic 'SMRT 1'");
  SmrtFile f;
  int number = 1;
  bool ended = false;
  while (std::getline(in, line)) {
    ++number;
    if (line == "end_header") {
      ended = true;
      break;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("smrt: line " + std::to_string(number) + ": expected key=value");
    const std::string key = line.substr(0, eq);
    if (!plain_keys().count(key) && !config_key(key))
      throw ParseError("smrt: line " + std::to_string(number) + ": unknown header key " + key);
    if (f.has(key)) throw ParseError("smrt: line " + std::to_string(number) + ": duplicate header key " + key);
    f.header.emplace_back(key, line.substr(eq + 1));
  }
  if (!ended) throw ParseError("smrt: missing end_header");
  const std::string kind = f.get("kind");
  if (kind != "boundary" && kind != "field" && kind != "spectrum" && kind != "report")
    throw ParseError("smrt: header key kind has unsupported value " + kind);
  while (std::getline(in, line)) {
    ++number;
    if (kind == "report") {
      f.text.push_back(line);
      continue;
    }
    std::vector<double> row;
    const char* p = line.c_str();
    while (true) {
      while (*p == ' ') ++p;
      if (*p == '\0') break;
      char* end = nullptr;
      const double v = std::strtod(p, &end);
      if (end == p) throw ParseError("smrt: line " + std::to_string(number) + ": malformed number");
      row.push_back(v);
      p = end;
    }
    f.rows.push_back(std::move(row));
  }
  return f;
}

void save_smrt(const SmrtFile& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("smrt: cannot write " + path);
  out << write_smrt(f);
  if (!out) throw Error("smrt: write failed for " + path);
}

SmrtFile load_smrt(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("smrt: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return read_smrt(ss.str());
}

SmrtFile boundary_file(const BoundaryData& g, const RunConfig& cfg, const std::string& command) {
  SmrtFile f = start("boundary", g.dim, cfg);
  f.set("T", num(g.T));
  const CenterGrid& c = g.centers;
  f.set("center_grid", c.kind == CenterGridKind::Circle        ? "circle"
                       : c.kind == CenterGridKind::GaussSphere ? "gauss_sphere"
                                                                : "custom");
  f.set("n_polar", std::to_string(c.n_polar));
  f.set("n_azimuth", std::to_string(c.n_azimuth));
  f.set("n_centers", std::to_string(c.size()));
  f.set("n_t", std::to_string(g.n_t()));
  finish(f, cfg, command);
  if (c.kind == CenterGridKind::Custom)
    for (std::size_t i = 0; i < c.size(); ++i) {
      const Point& p = c.points[i];
      const Point& n = c.normals[i];
      f.rows.push_back({p[0], p[1], p[2], n[0], n[1], n[2], c.weights[i]});
    }
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto row = g.row(i);
    f.rows.emplace_back(row.begin(), row.end());
  }
  return f;
}

BoundaryData boundary_from(const SmrtFile& f) {
  require_kind(f, "boundary");
  const int dim = as_int(f, "dim");
  if (dim != 2 && dim != 3) throw ParseError("smrt: header key dim must be 2 or 3");
  const double T = as_double(f, "T");
  const int nc = as_int(f, "n_centers");
  const int nt = as_int(f, "n_t");
  if (nc < 1 || nt < 2 || !(T > 0.0)) throw ParseError("smrt: header keys n_centers, n_t, T out of range");
  const std::string kind = f.get("center_grid");
  CenterGrid grid;
  std::size_t first = 0;
  if (kind == "circle") {
    grid = CenterGrid::circle(as_int(f, "n_azimuth"));
  } else if (kind == "gauss_sphere") {
    grid = CenterGrid::gauss_sphere(as_int(f, "n_polar"), as_int(f, "n_azimuth"));
  } else if (kind == "custom") {
    if (f.rows.size() < static_cast<std::size_t>(nc)) throw ParseError("smrt: custom center rows missing");
    std::vector<Point> pts, nrm;
    std::vector<double> w;
    for (int i = 0; i < nc; ++i) {
      const auto& r = f.rows[i];
      if (r.size() != 7) throw ParseError("smrt: payload row " + std::to_string(i + 1) + " is not a center row");
      pts.push_back({r[0], r[1], r[2]});
      nrm.push_back({r[3], r[4], r[5]});
      w.push_back(r[6]);
    }
    grid = CenterGrid::custom(dim, std::move(pts), std::move(nrm), std::move(w));
    first = nc;
  } else {
    throw ParseError("smrt: header key center_grid has unsupported value " + kind);
  }
  if (static_cast<int>(grid.size()) != nc) throw ParseError("smrt: header key n_centers disagrees with center_grid");
  if (grid.dim != dim) throw ParseError("smrt: header key dim disagrees with center_grid");
  require_rows(f, nc, nt, first);
  BoundaryData g = BoundaryData::zeros(grid, uniform_grid(nt, T));
  for (int c = 0; c < nc; ++c)
    for (int j = 0; j < nt; ++j) g.at(c, j) = f.rows[first + c][j];
  return g;
}

SmrtFile field_file(const PolarField& p, const RunConfig& cfg, const std::string& command) {
  SmrtFile f = start("field", p.dim, cfg);
  f.set("m_max", std::to_string(p.m_max));
  f.set("n_r", std::to_string(p.r_grid.size()));
  finish(f, cfg, command);
  for (const auto& ch : p.coeffs) f.rows.push_back(ch);
  return f;
}

PolarField field_from(const SmrtFile& f) {
  require_kind(f, "field");
  const int dim = as_int(f, "dim");
  const int m_max = as_int(f, "m_max");
  const int n_r = as_int(f, "n_r");
  if ((dim != 2 && dim != 3) || m_max < 0 || m_max > 32 || n_r < 2)
    throw ParseError("smrt: header keys dim, m_max, n_r out of range");
  PolarField p = PolarField::zeros(dim, m_max, n_r);
  require_rows(f, p.channels.size(), n_r);
  for (std::size_t c = 0; c < p.channels.size(); ++c) p.coeffs[c] = f.rows[c];
  return p;
}

SmrtFile spectrum_file(const HarmonicSpectrum& s, const RunConfig& cfg, const std::string& command) {
  SmrtFile f = start("spectrum", s.dim, cfg);
  f.set("T", num(s.T()));
  f.set("n_t", std::to_string(s.t_grid.size()));
  f.set("m_max", std::to_string(s.m_max));
  finish(f, cfg, command);
  for (const auto& ch : s.values) f.rows.push_back(ch);
  return f;
}

HarmonicSpectrum spectrum_from(const SmrtFile& f) {
  require_kind(f, "spectrum");
  HarmonicSpectrum s;
  s.dim = as_int(f, "dim");
  s.m_max = as_int(f, "m_max");
  const int nt = as_int(f, "n_t");
  if ((s.dim != 2 && s.dim != 3) || s.m_max < 0 || s.m_max > 32 || nt < 2)
    throw ParseError("smrt: header keys dim, m_max, n_t out of range");
  s.t_grid = uniform_grid(nt, as_double(f, "T"));
  s.channels = harmonic_indices(s.dim, s.m_max);
  require_rows(f, s.channels.size(), nt);
  s.values = f.rows;
  for (std::size_t ch = 0; ch < s.channels.size(); ++ch) s.spectrum_energy += s.channel_energy(ch);
  s.data_energy = s.spectrum_energy;
  return s;
}

SmrtFile report_file(const RangeReport& r, const RunConfig& cfg, const std::string& command) {
  SmrtFile f = start("report", r.dim, cfg);
  finish(f, cfg, command);
  std::istringstream in(r.key_values());
  std::string line;
  while (std::getline(in, line)) f.text.push_back(line);
  return f;
}

RunConfig config_from(const SmrtFile& f) {
  RunConfig cfg;
  for (const auto& [k, v] : f.header)
    if (k.rfind("config.", 0) == 0) cfg.set(k.substr(7), v);
  cfg.validate();
  return cfg;
}

}  // namespace smrt
