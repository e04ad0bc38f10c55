#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "smrt/error.hpp"
#include "smrt/invert.hpp"

using namespace smrt;

namespace {

struct Radial2D {
  Phantom ph = phantoms::radial(2, 0.2);
  BoundaryData g = forward_transform(ph, CenterGrid::circle(16), uniform_grid(257, 2.0), 24);
  HarmonicSpectrum spec = harmonic_decompose(g, 2);
  PolarField truth = project_to_harmonics(ph, 2, 257);
};

const Radial2D& radial() {
  static const Radial2D r;
  return r;
}

}  // namespace

TEST_SUITE("invert") {

TEST_CASE("series constant") {
  CHECK(series_constant(2) == 1.0);
  CHECK(series_constant(3) == doctest::Approx(2.0 / std::numbers::pi));
}

TEST_CASE("series inversion of radial data") {
  InversionSpectra sp;
  const auto f = series_inversion(radial().spec, {}, &sp);
  CHECK(compare_fields(radial().truth, f).rel_l2 < 1e-4);
  CHECK(!sp.any_flagged());
  CHECK(sp.channels.size() == 5);
  CHECK(sp.nodes.size() == 3);
  SeriesOptions wide;
  wide.lambda_max = 400.0;
  CHECK_THROWS_AS(series_inversion(radial().spec, wide), GridError);
}

TEST_CASE("time reversal of radial data") {
  const auto r = time_reversal(radial().spec);
  CHECK(compare_fields(radial().truth, r.field).rel_l2 < 0.02);
  CHECK(r.eps == doctest::Approx(4.0 * 0.5 / 256.0));
  for (const auto& c : r.channels) CHECK(!c.failed);
  TimeReversalOptions bad;
  bad.h_t = bad.h_r;
  CHECK_THROWS_AS(time_reversal(radial().spec, bad), CflError);
  TimeReversalOptions eps;
  eps.eps = 50.0 * eps.h_t;
  CHECK_THROWS_AS(time_reversal(radial().spec, eps), Error);
}

TEST_CASE("zero data reconstructs to zero") {
  BoundaryData z = BoundaryData::zeros(CenterGrid::circle(16), uniform_grid(257, 2.0));
  const auto s = harmonic_decompose(z, 3);
  CHECK(series_inversion(s).energy() == 0.0);
  CHECK(time_reversal(s).field.energy() == 0.0);
}

TEST_CASE("field comparison") {
  const auto& t = radial().truth;
  CHECK(compare_fields(t, t).rel_l2 == 0.0);
  PolarField half = t;
  for (auto& ch : half.coeffs)
    for (double& v : ch) v *= 0.5;
  CHECK(compare_fields(t, half).rel_l2 == doctest::Approx(0.5));
  // Fewer channels count as zeros; the coarser grid is resampled linearly.
  PolarField fewer = PolarField::zeros(2, 0, 129);
  for (std::size_t i = 0; i < fewer.r_grid.size(); ++i) fewer.coeffs[0][i] = t.coeffs[0][2 * i];
  CHECK(compare_fields(t, fewer).rel_l2 < 1e-3);
  CHECK_THROWS_AS(compare_fields(t, PolarField::zeros(3, 0, 129)), GridError);
}

TEST_CASE("support energy and CSV output") {
  const auto& t = radial().truth;
  CHECK(energy_fraction_beyond(t, 0.95) < 1e-20);
  CHECK(energy_fraction_beyond(t, 0.0) == doctest::Approx(1.0));
  const std::string csv = cartesian_csv(t, 5);
  std::istringstream in(csv);
  std::string line;
  int lines = 0;
  std::getline(in, line);
  CHECK(line == "x,y,value");
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 25);
  CHECK_THROWS_AS(cartesian_csv(t, 1), GridError);
}

}
