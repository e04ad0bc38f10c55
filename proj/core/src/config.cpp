#include "smrt/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "smrt/error.hpp"

namespace smrt {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const char* first = value.data();
  const char* last = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last) throw ParseError("config: invalid value '" + value + "' for key " + key);
  return out;
}

}  // namespace

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

void RunConfig::validate() const {
  auto positive = [](const char* key, double v) {
    if (!(v > 0.0)) throw ParseError(std::string("config: ") + key + " must be positive");
  };
  positive("n_theta", n_theta);
  positive("n_polar", n_polar);
  positive("n_azimuth", n_azimuth);
  positive("n_t", n_t);
  positive("T", T);
  positive("n_r", n_r);
  positive("m_max", m_max + 1);
  positive("k_max", k_max + 1);
  positive("zeros", zeros);
  positive("orth_m_max", orth_m_max + 1);
  positive("quad_order", quad_order);
  positive("moment_tol", moment_tol);
  positive("bessel_tol", bessel_tol);
  positive("orthogonality_tol", orthogonality_tol);
  positive("fit_tol", fit_tol);
  positive("recurrence_tol", recurrence_tol);
  positive("growth_limit", growth_limit);
  positive("lambda_max", lambda_max);
  positive("lambda_panels", lambda_panels);
  positive("h_r", h_r);
  positive("h_t", h_t);
  positive("seed", seed);
  if (n_t < 8) throw ParseError("config: n_t must be at least 8");
  if (m_max > 32) throw ParseError("config: m_max must not exceed 32");
  if (k_max > 12) throw ParseError("config: k_max must not exceed 12");
}

std::vector<std::pair<std::string, std::string>> RunConfig::entries() const {
  return {{"n_theta", std::to_string(n_theta)},
          {"n_polar", std::to_string(n_polar)},
          {"n_azimuth", std::to_string(n_azimuth)},
          {"n_t", std::to_string(n_t)},
          {"T", num(T)},
          {"n_r", std::to_string(n_r)},
          {"m_max", std::to_string(m_max)},
          {"k_max", std::to_string(k_max)},
          {"zeros", std::to_string(zeros)},
          {"orth_m_max", std::to_string(orth_m_max)},
          {"quad_order", std::to_string(quad_order)},
          {"moment_tol", num(moment_tol)},
          {"bessel_tol", num(bessel_tol)},
          {"orthogonality_tol", num(orthogonality_tol)},
          {"fit_tol", num(fit_tol)},
          {"recurrence_tol", num(recurrence_tol)},
          {"growth_limit", num(growth_limit)},
          {"lambda_max", num(lambda_max)},
          {"lambda_panels", std::to_string(lambda_panels)},
          {"h_r", num(h_r)},
          {"h_t", num(h_t)},
          {"seed", std::to_string(seed)}};
}

std::string RunConfig::to_string() const {
  std::string out;
  for (const auto& [k, v] : entries()) out += k + "=" + v + "\n";
  return out;
}

std::string RunConfig::hash() const {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(to_string())));
  return buf;
}

void RunConfig::set(const std::string& key, const std::string& value) {
  auto as_int = [&] { return parse_number<int>(key, value); };
  auto as_double = [&] { return parse_number<double>(key, value); };
  if (key == "n_theta") n_theta = as_int();
  else if (key == "n_polar") n_polar = as_int();
  else if (key == "n_azimuth") n_azimuth = as_int();
  else if (key == "n_t") n_t = as_int();
  else if (key == "T") T = as_double();
  else if (key == "n_r") n_r = as_int();
  else if (key == "m_max") m_max = as_int();
  else if (key == "k_max") k_max = as_int();
  else if (key == "zeros") zeros = as_int();
  else if (key == "orth_m_max") orth_m_max = as_int();
  else if (key == "quad_order") quad_order = as_int();
  else if (key == "moment_tol") moment_tol = as_double();
  else if (key == "bessel_tol") bessel_tol = as_double();
  else if (key == "orthogonality_tol") orthogonality_tol = as_double();
  else if (key == "fit_tol") fit_tol = as_double();
  else if (key == "recurrence_tol") recurrence_tol = as_double();
  else if (key == "growth_limit") growth_limit = as_double();
  else if (key == "lambda_max") lambda_max = as_double();
  else if (key == "lambda_panels") lambda_panels = as_int();
  else if (key == "h_r") h_r = as_double();
  else if (key == "h_t") h_t = as_double();
  else if (key == "seed") seed = parse_number<unsigned>(key, value);
  else throw ParseError("config: unknown key " + key);
}

RangeConfig RunConfig::range() const {
  RangeConfig r;
  r.m_max = m_max;
  r.k_max = k_max;
  r.zeros = zeros;
  r.orth_m_max = orth_m_max;
  r.moment_tol = moment_tol;
  r.bessel_tol = bessel_tol;
  r.orthogonality_tol = orthogonality_tol;
  r.fit_tol = fit_tol;
  r.recurrence_tol = recurrence_tol;
  r.growth_limit = growth_limit;
  return r;
}

SeriesOptions RunConfig::series() const {
  SeriesOptions s;
  s.lambda_max = lambda_max;
  s.panels = lambda_panels;
  s.n_r = n_r;
  return s;
}

TimeReversalOptions RunConfig::time_reversal() const {
  TimeReversalOptions t;
  t.h_r = h_r;
  t.h_t = h_t;
  return t;
}

ProjectionOptions RunConfig::projection() const {
  ProjectionOptions p;
  p.n_theta = std::max(256, n_theta);
  p.n_polar = std::max(32, n_polar);
  p.n_azimuth = std::max(64, n_azimuth);
  return p;
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("config line " + std::to_string(number) + ": expected key=value");
    try {
      cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const ParseError& e) {
      throw ParseError("config line " + std::to_string(number) + ": " + e.what());
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("config: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace smrt
