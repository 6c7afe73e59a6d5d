#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "rydcat/budget.hpp"
#include "rydcat/error.hpp"

using namespace rydcat;
using doctest::Approx;

namespace {

BudgetInputs cube_inputs() {
  BudgetInputs in;
  in.atoms = 8;
  in.omega = Frequency::from_mhz(0.3);
  in.tau_p_us = 57.0;
  in.delta_sp_at_d = Frequency::from_mhz(14.4);
  in.delta_pp_at_d = Frequency::from_mhz(0.019);
  in.blockade_pair_factor = 54.0 / 7.0;
  in.coefficient = 9.39;
  return in;
}

} // namespace

TEST_SUITE("budget") {

TEST_CASE("transfer populations closed form") {
  struct Row {
    double ratio, p1;
  };
  for (auto r : {Row{0.0, 1.0}, Row{0.5, 0.857987260291589}, Row{2.0, 0.25073381737499}, Row{5.0, 0.0948396485},
                 Row{20.0, 0.0060650291}}) {
    CAPTURE(r.ratio);
    const auto p = transfer_populations({1.0, r.ratio});
    CHECK(p.p1 == Approx(r.p1).epsilon(1e-9));
    CHECK(p.p0 + p.p1 == Approx(1.0));
  }
  CHECK_THROWS_AS(transfer_populations({0.0, 1.0}), InvalidInput);
}

TEST_CASE("nonresonant populations") {
  const Frequency wp = Frequency::from_mhz(1.0);
  const Frequency d0 = Frequency::from_mhz(30.0);
  const double t2 = 2 * std::numbers::pi * d0.angular() / std::pow(wp.angular(), 2);
  CHECK(nonresonant_populations(wp, d0, Frequency{}, t2).p1 == Approx(1.0));
  const auto half = nonresonant_populations(wp, d0, d0, t2);
  CHECK(half.p1 == Approx(0.5));
  CHECK_FALSE(half.regime_warning);
  CHECK(nonresonant_populations(wp, Frequency::from_mhz(5.0), Frequency{}, 1.0).regime_warning);
}

TEST_CASE("cube error budget components at 0.3 MHz") {
  const auto b = error_budget(cube_inputs());
  CHECK(b.e_se == Approx(8 * std::numbers::pi / (4 * kTwoPi * 0.3 * 57)).epsilon(1e-12));
  CHECK(b.e_se == Approx(0.0585).epsilon(2e-3));
  CHECK(b.e_bl == Approx(0.0661).epsilon(2e-3));
  CHECK(b.e_tr == Approx(0.0377).epsilon(2e-3));
  CHECK(b.total == Approx(0.162235).epsilon(1e-5));
}

TEST_CASE("disabled terms") {
  auto in = cube_inputs();
  in.tau_p_us = std::numeric_limits<double>::infinity();
  in.delta_sp_at_d = Frequency::from_mhz(std::numeric_limits<double>::infinity());
  in.delta_pp_at_d = Frequency{};
  CHECK(error_budget(in).total == 0.0);
}

TEST_CASE("budget rejects bad inputs") {
  auto in = cube_inputs();
  in.omega = Frequency{};
  CHECK_THROWS_AS(error_budget(in), InvalidInput);
  in = cube_inputs();
  in.blockade_pair_factor = 0.5;
  CHECK_THROWS_AS(error_budget(in), InvalidInput);
  in = cube_inputs();
  in.tau_p_us = -1.0;
  CHECK_THROWS_AS(error_budget(in), InvalidInput);
}

TEST_CASE("optimum of the cube budget") {
  const auto opt = optimize_rabi(cube_inputs(), 0.01, 10.0, 50);
  CHECK(opt.optimum.mhz() == Approx(0.30103).epsilon(1e-4));
  CHECK(opt.e_min == Approx(0.16223).epsilon(1e-4));
  CHECK(opt.curve.size() == 50);
  for (const auto& p : opt.curve) CHECK(p.budget.total >= opt.e_min - 1e-12);
}

TEST_CASE("optimum is invariant under a common rescaling of rates and times") {
  auto in = cube_inputs();
  const auto base = optimize_rabi(in, 0.01, 10.0);
  in.tau_p_us /= 3.0;
  in.delta_sp_at_d = in.delta_sp_at_d * 3.0;
  in.delta_pp_at_d = in.delta_pp_at_d * 3.0;
  const auto scaled = optimize_rabi(in, 0.03, 30.0);
  CHECK(scaled.optimum.mhz() == Approx(3 * base.optimum.mhz()).epsilon(1e-8));
  CHECK(scaled.e_min == Approx(base.e_min).epsilon(1e-10));
}

TEST_CASE("optimisation without an interior minimum is an error") {
  CHECK_THROWS_AS(optimize_rabi(cube_inputs(), 2.0, 10.0), InvalidInput);
  CHECK_THROWS_AS(optimize_rabi(cube_inputs(), 1.0, 0.5), InvalidInput);
}

TEST_CASE("nonresonant budget exceeds the resonant one") {
  auto res = cube_inputs();
  auto non = cube_inputs();
  non.mode = Mode::nonresonant;
  non.delta0 = Frequency::from_mhz(3.0);
  non.coefficient = 113;
  CHECK(optimize_rabi(non, 0.01, 100.0).e_min > optimize_rabi(res, 0.01, 10.0).e_min);
}

TEST_CASE("two-atom gate optimum against a dense scan") {
  const auto g = two_atom_gate_optimum(1.0, 1.0, 1.0, 1.0);
  CHECK(g.omega == Approx(std::cbrt(0.5)).epsilon(1e-12));
  CHECK(g.e_min == Approx(1.8898815748).epsilon(1e-10));
  double best = 1e9;
  for (double w : log_grid(0.1, 10.0, 200001)) best = std::min(best, w * w + 1.0 / w);
  CHECK(g.e_min == Approx(best).epsilon(1e-8));
  CHECK_THROWS_AS(two_atom_gate_optimum(0.0, 1.0, 1.0, 1.0), InvalidInput);
}

TEST_CASE("log grid") {
  const auto g = log_grid(0.05, 3.0, 200);
  CHECK(g.front() == 0.05);
  CHECK(g.back() == 3.0);
  const auto g2 = log_grid(0.05, 3.0, 399);
  for (std::size_t k = 0; k < g.size(); ++k) CHECK(std::abs(g2[2 * k] - g[k]) <= 1e-12 * g[k]);
  CHECK_THROWS_AS(log_grid(1.0, 1.0, 5), InvalidInput);
}

}
