#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "selftest.hpp"
#include "smrt/smrt.hpp"

namespace {

using namespace smrt;

std::string joined_command(int argc, char** argv) {
  std::string out;
  for (int i = 0; i < argc; ++i) {
    if (i) out += ' ';
    out += argv[i];
  }
  return out;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

void emit(const SmrtFile& f, const std::string& path) { write_text(path, write_smrt(f)); }

CenterGrid centers_for(int dim, const RunConfig& cfg) {
  return dim == 2 ? CenterGrid::circle(cfg.n_theta) : CenterGrid::gauss_sphere(cfg.n_polar, cfg.n_azimuth);
}

// "bessel:m,l,j,amp" or "moment:m,l,amp"
void apply_perturbation(BoundaryData& g, const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw ParseError("--perturb: expected kind:args, got '" + spec + "'");
  const std::string kind = spec.substr(0, colon);
  std::vector<double> a;
  std::stringstream ss(spec.substr(colon + 1));
  std::string tok;
  try {
    while (std::getline(ss, tok, ',')) a.push_back(std::stod(tok));
  } catch (const std::exception&) {
    throw ParseError("--perturb: malformed number in '" + spec + "'");
  }
  if (kind == "bessel") {
    if (a.size() != 4) throw ParseError("--perturb bessel needs m,l,j,amp");
    const int m = static_cast<int>(a[0]);
    const int j = static_cast<int>(a[2]);
    if (j < 1) throw ParseError("--perturb bessel: zero number must be >= 1");
    const double lambda = bessel_zeros(Order::from_dim_degree(g.dim, m), j).back();
    add_channel(g, {g.dim, m, static_cast<int>(a[1])}, bessel_perturbation(g.dim, lambda, g.T, a[3]));
  } else if (kind == "moment") {
    if (a.size() != 3) throw ParseError("--perturb moment needs m,l,amp");
    add_channel(g, {g.dim, static_cast<int>(a[0]), static_cast<int>(a[1])}, moment_perturbation(g.T, a[2]));
  } else {
    throw ParseError("--perturb: unknown kind '" + kind + "' (bessel or moment)");
  }
}

struct Common {
  std::string config_path;
  std::string out;
  int mmax = -1;
  int kmax = -1;
  int zeros = -1;
};

RunConfig resolve_config(const Common& c, const SmrtFile* input) {
  RunConfig cfg = !c.config_path.empty() ? load_config(c.config_path) : input ? config_from(*input) : RunConfig{};
  if (c.mmax >= 0) cfg.m_max = c.mmax;
  if (c.kmax >= 0) cfg.k_max = c.kmax;
  if (c.zeros >= 0) cfg.zeros = c.zeros;
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spherical mean Radon transform: forward data, range checks and inversion"};
  app.require_subcommand(1);
  const std::string command = joined_command(argc, argv);

  Common common;
  auto add_config = [&](CLI::App* sub) { sub->add_option("--config", common.config_path, "key=value run configuration"); };
  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", common.out, "output path (stdout if omitted)"); };

  // phantom
  auto* ph_cmd = app.add_subcommand("phantom", "write a phantom description");
  int ph_dim = 2;
  std::string preset = "three-bump";
  unsigned ph_seed = 1;
  int ph_bumps = 4;
  ph_cmd->add_option("--dim", ph_dim)->check(CLI::IsMember({2, 3}));
  ph_cmd->add_option("--preset", preset)->check(CLI::IsMember({"three-bump", "radial", "random"}));
  ph_cmd->add_option("--seed", ph_seed);
  ph_cmd->add_option("--bumps", ph_bumps)->check(CLI::Range(1, 64));
  add_out(ph_cmd);

  // forward
  auto* fw_cmd = app.add_subcommand("forward", "sample g = Rf on the configured center and time grids");
  std::string phantom_path;
  std::vector<std::string> perturb;
  fw_cmd->add_option("phantom", phantom_path)->required();
  fw_cmd->add_option("--perturb", perturb, "bessel:m,l,j,amp or moment:m,l,amp (repeatable)");
  add_config(fw_cmd);
  add_out(fw_cmd);

  // project
  auto* pj_cmd = app.add_subcommand("project", "harmonic spectrum of a boundary file");
  std::string boundary_path;
  pj_cmd->add_option("boundary", boundary_path)->required();
  pj_cmd->add_option("--mmax", common.mmax);
  add_config(pj_cmd);
  add_out(pj_cmd);

  // check
  auto* ck_cmd = app.add_subcommand("check", "run the range conditions; exit 0 if all pass, 2 otherwise");
  ck_cmd->add_option("boundary", boundary_path)->required();
  ck_cmd->add_option("--mmax", common.mmax);
  ck_cmd->add_option("--kmax", common.kmax);
  ck_cmd->add_option("--zeros", common.zeros);
  add_config(ck_cmd);
  add_out(ck_cmd);

  // invert
  auto* iv_cmd = app.add_subcommand("invert", "reconstruct f from a boundary file");
  std::string method = "series";
  std::string csv_path;
  int csv_count = 101;
  iv_cmd->add_option("boundary", boundary_path)->required();
  iv_cmd->add_option("--method", method)->check(CLI::IsMember({"series", "timereversal"}));
  iv_cmd->add_option("--mmax", common.mmax);
  iv_cmd->add_option("--csv", csv_path, "dense Cartesian samples for plotting");
  iv_cmd->add_option("--csv-count", csv_count)->check(CLI::Range(2, 1001));
  add_config(iv_cmd);
  add_out(iv_cmd);

  // compare
  auto* cp_cmd = app.add_subcommand("compare", "error of field B against field A");
  std::string field_a, field_b;
  cp_cmd->add_option("reference", field_a)->required();
  cp_cmd->add_option("candidate", field_b)->required();

  // truth
  auto* tr_cmd = app.add_subcommand("truth", "harmonic projection of a phantom as a field file");
  tr_cmd->add_option("phantom", phantom_path)->required();
  tr_cmd->add_option("--mmax", common.mmax);
  add_config(tr_cmd);
  add_out(tr_cmd);

  auto* st_cmd = app.add_subcommand("selftest", "fast invariant suite with a conformance table");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ph_cmd) {
      Phantom ph = preset == "three-bump" ? (ph_dim == 2 ? phantoms::three_bump_2d() : phantoms::three_bump_3d())
                   : preset == "radial"   ? phantoms::radial(ph_dim)
                                          : phantoms::random(ph_dim, ph_bumps, ph_seed);
      write_text(common.out, "# " + command + "\n" + format_phantom(ph));
      return 0;
    }
    if (*fw_cmd) {
      const RunConfig cfg = resolve_config(common, nullptr);
      const Phantom ph = parse_phantom(read_text(phantom_path));
      BoundaryData g = forward_transform(ph, centers_for(ph.dim(), cfg), uniform_grid(cfg.n_t, cfg.T), cfg.quad_order);
      for (const auto& p : perturb) apply_perturbation(g, p);
      emit(boundary_file(g, cfg, command), common.out);
      return 0;
    }
    if (*tr_cmd) {
      const RunConfig cfg = resolve_config(common, nullptr);
      const Phantom ph = parse_phantom(read_text(phantom_path));
      emit(field_file(project_to_harmonics(ph, cfg.m_max, cfg.n_r, cfg.projection()), cfg, command), common.out);
      return 0;
    }
    if (*pj_cmd) {
      const SmrtFile in = load_smrt(boundary_path);
      const RunConfig cfg = resolve_config(common, &in);
      emit(spectrum_file(harmonic_decompose(boundary_from(in), cfg.m_max), cfg, command), common.out);
      return 0;
    }
    if (*ck_cmd) {
      const SmrtFile in = load_smrt(boundary_path);
      const RunConfig cfg = resolve_config(common, &in);
      const RangeReport rep = range_report(boundary_from(in), cfg.range());
      std::cout << rep.text();
      if (!common.out.empty()) save_smrt(report_file(rep, cfg, command), common.out);
      return rep.all_pass() ? 0 : 2;
    }
    if (*iv_cmd) {
      const SmrtFile in = load_smrt(boundary_path);
      const RunConfig cfg = resolve_config(common, &in);
      const HarmonicSpectrum spec = harmonic_decompose(boundary_from(in), cfg.m_max);
      PolarField f;
      if (method == "series") {
        InversionSpectra sp;
        f = series_inversion(spec, cfg.series(), &sp);
        for (const auto& d : sp.divisions)
          if (d.flagged)
            std::cerr << "warning: channel (" << d.index.m << "," << d.index.l
                      << ") has denominators below the floor\n";
      } else {
        TimeReversalResult r = time_reversal(spec, cfg.time_reversal());
        for (const auto& c : r.channels)
          if (c.failed) std::cerr << "warning: channel (" << c.index.m << "," << c.index.l << "): " << c.message << "\n";
        f = std::move(r.field);
      }
      emit(field_file(f, cfg, command), common.out);
      if (!csv_path.empty()) write_text(csv_path, cartesian_csv(f, csv_count));
      return 0;
    }
    if (*cp_cmd) {
      const PolarField a = field_from(load_smrt(field_a));
      const PolarField b = field_from(load_smrt(field_b));
      const FieldComparison c = compare_fields(a, b);
      std::printf("rel_l2   %.6e\nrel_linf %.6e\n", c.rel_l2, c.rel_linf);
      std::printf("%4s %4s %14s %14s\n", "m", "l", "l2", "rel");
      for (const auto& ch : c.channels)
        std::printf("%4d %4d %14.6e %14.6e\n", ch.index.m, ch.index.l, ch.l2, ch.rel);
      return 0;
    }
    if (*st_cmd) return run_selftest(std::cout) ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
