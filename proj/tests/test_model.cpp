#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rydcat/error.hpp"
#include "rydcat/model.hpp"

using namespace rydcat;
using doctest::Approx;

TEST_SUITE("model") {

TEST_CASE("fixed lattices have the expected size and spacing") {
  CHECK(build_lattice(Geometry::pair, 3.0).size() == 2);
  CHECK(build_lattice(Geometry::square4, 3.0).size() == 4);
  CHECK(build_lattice(Geometry::cube8, 3.0).size() == 8);
  const auto d = pair_distances(build_lattice(Geometry::square4, 3.0));
  CHECK(d.size() == 6);
  CHECK(std::count_if(d.begin(), d.end(), [](double x) { return std::abs(x - 1.0) < 1e-12; }) == 4);
  CHECK(std::count_if(d.begin(), d.end(), [](double x) { return std::abs(x - std::sqrt(2.0)) < 1e-12; }) == 2);
}

TEST_CASE("sphere cut keeps lattice points inside the radius") {
  CHECK(build_lattice(Geometry::sphere_cut, 3.0, 1.0).size() == 7);
  CHECK(build_lattice(Geometry::sphere_cut, 3.0, std::sqrt(2.0)).size() == 19);
  CHECK(build_lattice(Geometry::sphere_cut, 3.0, std::sqrt(3.0)).size() == 27);
  CHECK_THROWS_AS(build_lattice(Geometry::sphere_cut, 3.0), InvalidInput);
  CHECK_THROWS_AS(build_lattice(Geometry::cube8, -1.0), InvalidInput);
}

TEST_CASE("pair averages of the power law") {
  CHECK(pair_average_power(build_lattice(Geometry::pair, 3.0), 6) == Approx(1.0));
  CHECK(pair_average_power(build_lattice(Geometry::square4, 3.0), 6) == Approx(10.0 / 3.0).epsilon(1e-12));
  CHECK(pair_average_power(build_lattice(Geometry::cube8, 3.0), 6) == Approx(54.0 / 7.0).epsilon(1e-12));
  CHECK(pair_average_power(build_lattice(Geometry::cube8, 3.0), 0) == Approx(1.0));
  Lattice single;
  single.positions = {{0, 0, 0}};
  CHECK_THROWS_AS(pair_average_power(single, 6), InvalidInput);
}

TEST_CASE("coupling falls off with the chosen exponent") {
  const Frequency ref = Frequency::from_mhz(14.4);
  CHECK(coupling_at(ref, 3, 1.0).mhz() == Approx(14.4));
  CHECK(coupling_at(ref, 3, 2.0).mhz() == Approx(1.8));
  CHECK(coupling_at(ref, 6, std::sqrt(2.0)).mhz() == Approx(1.8));
  CHECK(coupling_at(ref, 0, std::sqrt(3.0)).mhz() == Approx(14.4));
  CHECK_THROWS_AS(coupling_at(ref, 6, 0.5), InvalidInput);
}

TEST_CASE("pair table covers each unordered pair once") {
  InteractionSet is;
  is.delta_sp_at_d = Frequency::from_mhz(14.4);
  is.delta_pp_at_d = Frequency::from_mhz(0.019);
  is.delta_ss_at_d = Frequency::from_mhz(3.7);
  const auto t = build_pair_table(build_lattice(Geometry::cube8, 3.0), is);
  CHECK(t.atom_count == 8);
  REQUIRE(t.entries.size() == 28);
  for (const auto& e : t.entries) {
    CHECK(e.i < e.j);
    CHECK(e.delta_pp.mhz() == Approx(0.019 / std::pow(e.r_over_d, 6)));
    CHECK(e.delta_sp.mhz() == Approx(14.4 / std::pow(e.r_over_d, 3)));
  }
}

TEST_CASE("angle average") {
  SUBCASE("constant profile") {
    AngularProfile p;
    for (int k = 0; k <= 8; ++k) p.samples.push_back({k * std::numbers::pi / 16, Frequency::from_mhz(14.4)});
    CHECK(std::abs(angle_average(p).mhz() - 14.4) < 1e-9);
  }
  SUBCASE("sin-weighted cos^2 profile") {
    // <cos^2> over the hemisphere with sin(theta) weight is 1/3
    AngularProfile p;
    for (int k = 0; k <= 64; ++k) {
      const double th = k * std::numbers::pi / 128;
      p.samples.push_back({th, Frequency::from_mhz(std::cos(th) * std::cos(th))});
    }
    CHECK(angle_average(p).mhz() == Approx(1.0 / 3.0).epsilon(1e-4));
  }
  SUBCASE("two-sample profile against a midpoint oracle") {
    AngularProfile p;
    p.samples = {{0.0, Frequency::from_mhz(2.0)}, {std::numbers::pi / 2, Frequency::from_mhz(0.0)}};
    // piecewise-linear interpolation weighted by sin(theta)
    const int n = 1000000;
    const double h = (std::numbers::pi / 2) / n;
    double acc = 0.0;
    for (int k = 0; k < n; ++k) {
      const double th = (k + 0.5) * h;
      acc += 2.0 * (1.0 - th / (std::numbers::pi / 2)) * std::sin(th) * h;
    }
    CHECK(angle_average(p).mhz() == Approx(acc).epsilon(1e-6));
  }
  SUBCASE("invalid profiles") {
    AngularProfile p;
    CHECK_THROWS_AS(angle_average(p), InvalidInput);
    p.samples = {{0.5, Frequency::from_mhz(1.0)}, {0.2, Frequency::from_mhz(1.0)}};
    CHECK_THROWS_AS(angle_average(p), InvalidInput);
  }
}

TEST_CASE("N scaling") {
  CHECK(n_scaling(9.39, 8, 8, 2.0) == Approx(9.39));
  CHECK(n_scaling(1.0, 2, 4, 2.0) == Approx(4.0));
  CHECK_THROWS_AS(n_scaling(1.0, 0, 4, 2.0), InvalidInput);
}

TEST_CASE("geometry names round trip") {
  for (auto g : {Geometry::pair, Geometry::square4, Geometry::cube8, Geometry::sphere_cut}) {
    CHECK(parse_geometry(to_string(g)) == g);
  }
  CHECK_THROWS_AS(parse_geometry("hexagon"), InvalidInput);
}

}
