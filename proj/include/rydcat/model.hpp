#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rydcat/units.hpp"

namespace rydcat {

using Vec3 = std::array<double, 3>;

enum class Geometry { pair, square4, cube8, sphere_cut };

std::string_view to_string(Geometry g);
Geometry parse_geometry(std::string_view name);

/// Atom positions in units of the nearest-neighbour spacing d.
struct Lattice {
  std::vector<Vec3> positions;
  double spacing_um = 0.0;
  Geometry kind = Geometry::pair;

  std::size_t size() const { return positions.size(); }
};

/// Reference couplings at R = d plus their distance exponents.
struct InteractionSet {
  Frequency delta_sp_at_d;
  Frequency delta_pp_at_d;
  Frequency delta_ss_at_d;
  int gamma_sp = 3;
  int gamma_pp = 6;
  int gamma_ss = 6;

  void validate() const;
};

struct AngularSample {
  double theta = 0.0; // radians
  Frequency value;
};

/// Tabulated interaction strength versus molecular-axis angle on [0, pi/2].
struct AngularProfile {
  std::vector<AngularSample> samples;

  void validate() const;
};

struct PairEntry {
  std::size_t i = 0;
  std::size_t j = 0;
  double r_over_d = 0.0;
  Frequency delta_sp;
  Frequency delta_pp;
  Frequency delta_ss;
};

struct PairTable {
  std::size_t atom_count = 0;
  std::vector<PairEntry> entries;
};

Lattice build_lattice(Geometry kind, double spacing_um, std::optional<double> r0 = std::nullopt);

double distance(const Vec3& a, const Vec3& b);

/// All unordered pair distances in units of d, in (i, j) lexicographic order.
std::vector<double> pair_distances(const Lattice& lattice);

/// Mean of (R_ij/d)^exponent over unordered pairs.
double pair_average_power(const Lattice& lattice, int exponent);

/// reference * (d/R)^exponent; throws for R < d.
Frequency coupling_at(Frequency reference, int exponent, double r_over_d);

PairTable build_pair_table(const Lattice& lattice, const InteractionSet& interactions);

/// Integral of value(theta) sin(theta) over [0, pi/2] by trapezoid refinement
/// on the linearly interpolated profile.
Frequency angle_average(const AngularProfile& profile);

/// reference * (n / n_ref)^exponent.
double n_scaling(double reference_value, int n_ref, int n, double exponent);

} // namespace rydcat
