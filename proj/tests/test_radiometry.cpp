#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "paraconv/radiometry.hpp"

using namespace paraconv;
using doctest::Approx;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double deg = pi / 180.0;

bool close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::abs(b); }

std::vector<double> grid(double lo, double hi, double step) {
  std::vector<double> v;
  for (int i = 0; lo + i * step <= hi + 1e-9; ++i) v.push_back(lo + i * step);
  return v;
}

}  // namespace

TEST_CASE("zeropoint seed and coupling constants") {
  const ZpfSpectrum zpf;
  // hbar * 2 pi c / (2 lambda), lambda = 0.6 um
  CHECK(close(zpf.seed_intensity(0.6), 1.054571817e-34 * pi * 2.99792458e14 / 0.6, 1e-15));
  CHECK(close(ZpfSpectrum{2.0}.seed_intensity(0.6), 2 * zpf.seed_intensity(0.6), 1e-15));
  const CouplingModel cm;
  CHECK(close(cm.beta(2.0, 0.6, 1.5), 2e-6 * 2 * pi / 0.6 / 1.5, 1e-15));
  CHECK(close(CouplingModel{3.0}.beta(2.0, 0.6, 1.5), 3 * cm.beta(2.0, 0.6, 1.5), 1e-15));
}

TEST_CASE("branch cross section factorizes into prefactor, Jacobian and mode integral") {
  const auto setup = bbo_setup();
  const RadiometryParams params;
  for (Process p : {Process::spdc, Process::spuc}) {
    const double pump = p == Process::spdc ? 0.442 : 0.845;
    const auto s = solve_phase_match(setup, p, pump, 0.6, pi).at(0);
    const auto g = branch_gain(setup, s, params);
    const double l = setup.length_um;
    const double pref =
        g.beta_vacuum * params.pump_intensity * l * l * (g.beta_vacuum * g.seed_signal - g.beta_signal * g.seed_vacuum);
    const double sigma = branch_cross_section(setup, s, params);
    CHECK(sigma > 0);
    // Window of +-100/l keeps all but 1/(50 pi) of the 2 pi / l integral.
    CHECK(close(sigma, pref * g.jacobian * 2 * pi / l * (1 - 1 / (50 * pi)), 2e-3));

    // Jacobian against a coarser independent difference.
    RadiometryParams coarse = params;
    coarse.quadrature.jacobian_step = 1e-4;
    CHECK(close(branch_gain(setup, s, coarse).jacobian, g.jacobian, 1e-5));
  }
}

TEST_CASE("cross sections are positive on the matched grid and dark elsewhere") {
  const auto setup = bbo_setup();
  const RadiometryParams params;
  for (int d = 0; d < 360; d += 15) {
    const double phi = azimuth_from_degrees(d);
    const auto down = mode_sum_cross_section(setup, Process::spdc, 0.351, 0.7, phi, params);
    const auto up = mode_sum_cross_section(setup, Process::spuc, 0.845, 0.7, phi, params);
    CHECK(down.flag == PointFlag::matched);
    CHECK(up.flag == PointFlag::matched);
    CHECK(down.value > 0);
    CHECK(up.value > 0);
  }
  auto shallow = setup;
  shallow.cut_angle = 30 * deg;
  const auto dark = mode_sum_cross_section(shallow, Process::spuc, 0.845, 0.6, 0.0, params);
  CHECK(dark.flag == PointFlag::dark);
  CHECK(dark.value == 0.0);
  CHECK_THROWS_AS(spuc_spdc_ratio(shallow, 0.6, 0.0, params), UndefinedRatio);
}

TEST_CASE("mirror azimuths give identical cross sections") {
  const auto setup = bbo_setup();
  const RadiometryParams params;
  for (int d = 5; d < 180; d += 25) {
    const auto a = mode_sum_cross_section(setup, Process::spuc, 0.845, 0.65, azimuth_from_degrees(d), params);
    const auto b = mode_sum_cross_section(setup, Process::spuc, 0.845, 0.65, azimuth_from_degrees(360 - d), params);
    CHECK(a.value == b.value);
  }
}

TEST_CASE("scaling with pump intensity and the global coupling constant") {
  // Linear in I2 and quadratic in kappa except through the coupling term of the
  // effective mismatch, which is ~1e-4 relative at I2 = 10 and vanishes for weak pumps.
  const auto setup = bbo_setup();
  auto with = [](double i2, double kappa) {
    RadiometryParams p;
    p.pump_intensity = i2;
    p.coupling.kappa = kappa;
    return p;
  };
  for (Process p : {Process::spdc, Process::spuc}) {
    const double pump = p == Process::spdc ? 0.442 : 0.845;
    auto sigma = [&](const RadiometryParams& r) { return mode_sum_cross_section(setup, p, pump, 0.6, pi, r).value; };
    const double weak = sigma(with(1e-4, 1.0));
    CHECK(close(sigma(with(1e-3, 1.0)), 10 * weak, 1e-7));
    CHECK(close(sigma(with(1e-4, 3.0)), 9 * weak, 1e-7));
    const double s0 = sigma(with(1.0, 1.0));
    const double s10 = sigma(with(10.0, 1.0));
    CHECK(s10 < 10 * s0);
    CHECK(close(s10, 10 * s0, 1e-3));
  }
  const double r = spuc_spdc_ratio(setup, 0.6, pi, with(1e-4, 1.0));
  CHECK(close(spuc_spdc_ratio(setup, 0.6, pi, with(1e-3, 1.0)), r, 1e-7));
  CHECK(close(spuc_spdc_ratio(setup, 0.6, pi, with(1e-4, 5.0)), r, 1e-7));
  CHECK(close(spuc_spdc_ratio(setup, 0.6, pi, with(10.0, 1.0)), r, 1e-3));
}

TEST_CASE("mode integral converges as the window and grid grow") {
  const auto setup = bbo_setup();
  const auto s = solve_phase_match(setup, Process::spdc, 0.351, 0.6, 0.0).at(0);
  RadiometryParams p;
  double prev = 0.0;
  for (double w : {50.0, 100.0, 200.0, 400.0}) {
    p.quadrature.window_half_width = w;
    p.quadrature.points = static_cast<std::size_t>(20 * w) + 1;
    const double v = branch_cross_section(setup, s, p);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("rainbow scan is independent of the thread count") {
  const auto setup = bbo_setup();
  const auto lambdas = grid(0.6, 0.8, 0.05);
  const auto phis = grid(0.0, 355.0, 5.0);
  const RadiometryParams params;
  const auto one = scan_rainbow(setup, Process::spuc, 0.845, lambdas, phis, params, 1);
  const auto four = scan_rainbow(setup, Process::spuc, 0.845, lambdas, phis, params, 4);
  const auto many = scan_rainbow(setup, Process::spuc, 0.845, lambdas, phis, params, 13);
  CHECK(one == four);
  CHECK(one == many);
  CHECK(one.rows.size() >= lambdas.size() * phis.size());
}

TEST_CASE("rainbow summaries") {
  const auto setup = bbo_setup();
  const std::vector<double> lambdas = {0.6, 0.7, 0.8};
  const auto phis = grid(0.0, 359.0, 1.0);
  const RadiometryParams params;
  const auto table = scan_rainbow(setup, Process::spdc, 0.351, lambdas, phis, params, 2);
  const auto sums = summarize(table);
  REQUIRE(sums.size() == 3);
  for (const auto& s : sums) {
    CHECK(s.azimuths == 360);
    CHECK(s.coverage == 1.0);
    CHECK(*s.max_theta_ext - *s.min_theta_ext < 1e-9);
  }
  CHECK(*sums[0].min_theta_ext < *sums[1].min_theta_ext);
  CHECK(*sums[1].min_theta_ext < *sums[2].min_theta_ext);

  auto shallow = setup;
  shallow.cut_angle = 30 * deg;
  const auto arc = summarize(scan_rainbow(shallow, Process::spuc, 0.845, lambdas, phis, params, 2));
  CHECK(arc[0].coverage > 0.0);
  CHECK(arc[0].coverage < 1.0);
  // The peak sits on the arc, which straddles the far side of the optic axis.
  CHECK(*arc[0].peak_phi_deg > 150.0);
  CHECK(*arc[0].peak_phi_deg < 210.0);
}

TEST_CASE("up-conversion cross section rises toward the far side of the optic axis") {
  const auto setup = bbo_setup();
  const RadiometryParams params;
  double prev = 0.0;
  for (int d = 0; d <= 180; d += 20) {
    const double v = mode_sum_cross_section(setup, Process::spuc, 0.845, 0.6, azimuth_from_degrees(d), params).value;
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("bad points become dark rows rather than aborting the scan") {
  const auto setup = bbo_setup();
  const std::vector<double> lambdas = {0.3, 0.6};  // 0.3 um is shorter than the pump
  const std::vector<double> phis = {0.0};
  const auto table = scan_rainbow(setup, Process::spdc, 0.351, lambdas, phis, RadiometryParams{}, 1);
  REQUIRE(table.rows.size() == 2);
  CHECK(table.rows[0].flag == PointFlag::dark);
  CHECK_FALSE(table.rows[0].theta_int);
  CHECK(table.rows[1].flag == PointFlag::matched);
}
