#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rydcat/error.hpp"
#include "rydcat/perturbation.hpp"

using namespace rydcat;
using doctest::Approx;

TEST_SUITE("perturbation") {

TEST_CASE("single-atom eigensystem") {
  for (double d0 : {0.0, 3.0, 100.0}) {
    CAPTURE(d0);
    const auto e = single_atom_eigensystem(Frequency::from_mhz(1.0), Frequency::from_mhz(d0));
    const double g = kTwoPi / std::numbers::sqrt2;
    const double d = Frequency::from_mhz(d0).angular();
    CHECK(e.frequencies[Eigensystem::kDark] == 0.0);
    CHECK(e.frequencies[Eigensystem::kPlus] == Approx((d + std::sqrt(d * d + 4 * g * g)) / 2));
    CHECK(e.frequencies[Eigensystem::kMinus] == Approx((d - std::sqrt(d * d + 4 * g * g)) / 2));
    CHECK(std::abs(e.rydberg_overlaps[Eigensystem::kDark]) == 0.0);
    // completeness on |0> and |p>
    double s0 = 0, sp = 0;
    for (std::size_t m = 0; m < 3; ++m) {
      s0 += std::norm(e.state_overlaps[m]);
      sp += std::norm(e.rydberg_overlaps[m]);
    }
    CHECK(s0 == Approx(1.0));
    CHECK(sp == Approx(1.0));
  }
  CHECK_THROWS_AS(single_atom_eigensystem(Frequency{}, Frequency{}), InvalidInput);
}

TEST_CASE("resonant coefficients") {
  CHECK(extract_coefficient(Geometry::pair, 6, Mode::resonant).value == Approx(0.29879).epsilon(1e-4));
  CHECK(extract_coefficient(Geometry::pair, 0, Mode::resonant).value ==
        extract_coefficient(Geometry::pair, 6, Mode::resonant).value);
  CHECK(extract_coefficient(Geometry::square4, 6, Mode::resonant).value == Approx(2.0719).epsilon(1e-4));
  CHECK(extract_coefficient(Geometry::square4, 0, Mode::resonant).value == Approx(3.8746).epsilon(1e-4));
  CHECK(extract_coefficient(Geometry::cube8, 6, Mode::resonant).value == Approx(9.6068).epsilon(1e-4));
  CHECK(extract_coefficient(Geometry::cube8, 0, Mode::resonant).value == Approx(37.512).epsilon(1e-4));
}

TEST_CASE("nonresonant coefficients at detuning 100 Omega_p") {
  CHECK(extract_coefficient(Geometry::pair, 6, Mode::nonresonant).value == Approx(2.46715).epsilon(1e-3));
  CHECK(extract_coefficient(Geometry::square4, 6, Mode::nonresonant).value == Approx(9.951).epsilon(1e-3));
  CHECK(extract_coefficient(Geometry::square4, 0, Mode::nonresonant).value == Approx(14.816).epsilon(1e-3));
  CHECK(extract_coefficient(Geometry::cube8, 6, Mode::nonresonant).value == Approx(30.12).epsilon(1e-3));
  CHECK(extract_coefficient(Geometry::cube8, 0, Mode::nonresonant).value == Approx(69.27).epsilon(1e-3));
}

TEST_CASE("coefficient ordering") {
  for (auto mode : {Mode::resonant, Mode::nonresonant}) {
    const double a2 = extract_coefficient(Geometry::pair, 6, mode).value;
    const double a4 = extract_coefficient(Geometry::square4, 6, mode).value;
    const double a8 = extract_coefficient(Geometry::cube8, 6, mode).value;
    CHECK(a2 < a4);
    CHECK(a4 < a8);
    CHECK(a4 <= extract_coefficient(Geometry::square4, 0, mode).value);
    CHECK(a8 <= extract_coefficient(Geometry::cube8, 0, mode).value);
  }
  CHECK(extract_coefficient(Geometry::cube8, 6, Mode::nonresonant).value >
        extract_coefficient(Geometry::cube8, 6, Mode::resonant).value);
}

TEST_CASE("first-order error is quadratic in the interaction") {
  const auto e = single_atom_eigensystem(Frequency::from_mhz(1.0), Frequency{});
  const double t = std::numbers::sqrt2 * std::numbers::pi / kTwoPi;
  const auto lat = build_lattice(Geometry::square4, 3.0);
  InteractionSet is;
  is.delta_sp_at_d = Frequency::from_mhz(14.4);
  is.delta_pp_at_d = Frequency::from_mhz(1e-3);
  const double e1 = first_order_error(build_pair_table(lat, is), e, t);
  is.delta_pp_at_d = Frequency::from_mhz(2e-3);
  const double e2 = first_order_error(build_pair_table(lat, is), e, t);
  CHECK(e2 / e1 == Approx(4.0).epsilon(1e-10));
  is.delta_pp_at_d = Frequency{};
  CHECK(first_order_error(build_pair_table(lat, is), e, t) == 0.0);
}

TEST_CASE("first-order error is continuous across the degeneracy threshold") {
  // detunings just either side of the small-gap switch give nearly equal results
  const auto lat = build_lattice(Geometry::pair, 3.0);
  InteractionSet is;
  is.delta_pp_at_d = Frequency::from_mhz(1e-3);
  const auto pairs = build_pair_table(lat, is);
  const double t = std::numbers::sqrt2 * std::numbers::pi / kTwoPi;
  const double a = first_order_error(pairs, single_atom_eigensystem(Frequency::from_mhz(1.0), Frequency::from_mhz(0.0)), t);
  const double b =
      first_order_error(pairs, single_atom_eigensystem(Frequency::from_mhz(1.0), Frequency::from_mhz(1e-8)), t);
  CHECK(b == Approx(a).epsilon(1e-6));
}

TEST_CASE("published table lookup") {
  CHECK(*published_coefficient(Geometry::cube8, 6, Mode::resonant) == 9.39);
  CHECK(*published_coefficient(Geometry::square4, 6, Mode::nonresonant) == 15.6);
  CHECK_FALSE(published_coefficient(Geometry::pair, 6, Mode::nonresonant).has_value());
  CHECK_THROWS_AS(extract_coefficient(Geometry::sphere_cut, 6, Mode::resonant), InvalidInput);
  CHECK_THROWS_AS(extract_coefficient(Geometry::pair, 3, Mode::resonant), InvalidInput);
}

TEST_CASE("perturbative result agrees with exact evolution") {
  const auto pair = validate_against_exact(Geometry::pair, 6, Mode::resonant, 0.01);
  CHECK(pair.relative_gap < 1e-3);
  const auto zero = validate_against_exact(Geometry::pair, 6, Mode::resonant, 0.0);
  CHECK(zero.perturbative == 0.0);
  CHECK_THROWS_AS(validate_against_exact(Geometry::cube8, 6, Mode::resonant, 0.01), InvalidInput);
  CHECK_THROWS_AS(validate_against_exact(Geometry::pair, 6, Mode::resonant, 0.5), InvalidInput);
}

}
