#include "rydcat/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rydcat/error.hpp"

namespace rydcat {

std::string_view to_string(Geometry g) {
  switch (g) {
  case Geometry::pair: return "pair";
  case Geometry::square4: return "square4";
  case Geometry::cube8: return "cube8";
  case Geometry::sphere_cut: return "sphere_cut";
  }
  return "unknown";
}

Geometry parse_geometry(std::string_view name) {
  for (auto g : {Geometry::pair, Geometry::square4, Geometry::cube8, Geometry::sphere_cut}) {
    if (name == to_string(g)) return g;
  }
  throw InvalidInput("unknown geometry kind '" + std::string(name) + "'");
}

namespace {

bool allowed_exponent(int gamma) { return gamma == 0 || gamma == 3 || gamma == 6; }

} // namespace

void InteractionSet::validate() const {
  if (!allowed_exponent(gamma_sp) || !allowed_exponent(gamma_pp) || !allowed_exponent(gamma_ss)) {
    throw InvalidInput("interaction exponents must be one of 0, 3, 6");
  }
  if (delta_sp_at_d.mhz() < 0 || delta_pp_at_d.mhz() < 0 || delta_ss_at_d.mhz() < 0) {
    throw InvalidInput("interaction strengths must be non-negative");
  }
}

void AngularProfile::validate() const {
  if (samples.empty()) throw InvalidInput("angular profile is empty");
  if (samples.size() < 2) throw InvalidInput("angular profile needs samples at 0 and pi/2");
  constexpr double half_pi = std::numbers::pi / 2;
  if (std::abs(samples.front().theta) > 1e-12 || std::abs(samples.back().theta - half_pi) > 1e-12) {
    throw InvalidInput("angular profile must start at theta=0 and end at theta=pi/2");
  }
  for (std::size_t k = 1; k < samples.size(); ++k) {
    if (!(samples[k].theta > samples[k - 1].theta)) {
      throw InvalidInput("angular profile thetas must be strictly increasing");
    }
  }
}

Lattice build_lattice(Geometry kind, double spacing_um, std::optional<double> r0) {
  if (!(spacing_um > 0)) throw InvalidInput("lattice spacing d must be positive");
  Lattice lat;
  lat.kind = kind;
  lat.spacing_um = spacing_um;
  switch (kind) {
  case Geometry::pair:
    lat.positions = {{0, 0, 0}, {1, 0, 0}};
    break;
  case Geometry::square4:
    lat.positions = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}};
    break;
  case Geometry::cube8:
    for (int z = 0; z < 2; ++z)
      for (int y = 0; y < 2; ++y)
        for (int x = 0; x < 2; ++x) lat.positions.push_back({double(x), double(y), double(z)});
    break;
  case Geometry::sphere_cut: {
    if (!r0) throw InvalidInput("sphere_cut requires R0");
    if (!(*r0 > 0)) throw InvalidInput("sphere_cut requires R0 > 0");
    const int reach = static_cast<int>(std::floor(*r0));
    const double r0_sq = *r0 * *r0;
    for (int z = -reach; z <= reach; ++z)
      for (int y = -reach; y <= reach; ++y)
        for (int x = -reach; x <= reach; ++x) {
          // integer norm squared is exact; the tolerance only guards r0 itself
          if (x * x + y * y + z * z <= r0_sq * (1 + 1e-12)) {
            lat.positions.push_back({double(x), double(y), double(z)});
          }
        }
    break;
  }
  }
  return lat;
}

double distance(const Vec3& a, const Vec3& b) {
  const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

std::vector<double> pair_distances(const Lattice& lattice) {
  std::vector<double> out;
  const auto n = lattice.size();
  out.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) out.push_back(distance(lattice.positions[i], lattice.positions[j]));
  return out;
}

double pair_average_power(const Lattice& lattice, int exponent) {
  if (lattice.size() < 2) throw InvalidInput("pair average needs at least two atoms");
  const auto dist = pair_distances(lattice);
  double sum = 0.0;
  for (double r : dist) sum += std::pow(r, exponent);
  return sum / static_cast<double>(dist.size());
}

Frequency coupling_at(Frequency reference, int exponent, double r_over_d) {
  // 1e-12 slack so sqrt-derived distances equal to d are accepted
  if (!(r_over_d >= 1.0 - 1e-12)) {
    throw InvalidInput("pair separation below nearest-neighbour spacing");
  }
  return reference * std::pow(1.0 / r_over_d, exponent);
}

PairTable build_pair_table(const Lattice& lattice, const InteractionSet& interactions) {
  interactions.validate();
  PairTable table;
  table.atom_count = lattice.size();
  const auto n = lattice.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double r = distance(lattice.positions[i], lattice.positions[j]);
      table.entries.push_back({i, j, r, coupling_at(interactions.delta_sp_at_d, interactions.gamma_sp, r),
                               coupling_at(interactions.delta_pp_at_d, interactions.gamma_pp, r),
                               coupling_at(interactions.delta_ss_at_d, interactions.gamma_ss, r)});
    }
  }
  return table;
}

namespace {

double interpolate(const std::vector<AngularSample>& s, double theta) {
  auto it = std::upper_bound(s.begin(), s.end(), theta,
                             [](double t, const AngularSample& a) { return t < a.theta; });
  if (it == s.begin()) return s.front().value.mhz();
  if (it == s.end()) return s.back().value.mhz();
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double w = (theta - lo.theta) / (hi.theta - lo.theta);
  return lo.value.mhz() + w * (hi.value.mhz() - lo.value.mhz());
}

} // namespace

Frequency angle_average(const AngularProfile& profile) {
  profile.validate();
  const auto& s = profile.samples;
  auto integrand = [&](double theta) { return interpolate(s, theta) * std::sin(theta); };

  // Trapezoid on the sample grid, halving every interval per level. The
  // integrand is smooth between sample nodes, so Richardson extrapolation of
  // successive levels (Romberg) is valid.
  constexpr int kMaxLevels = 24;
  std::vector<double> nodes;
  for (const auto& a : s) nodes.push_back(a.theta);
  double trap = 0.0;
  for (std::size_t k = 1; k < nodes.size(); ++k) {
    trap += 0.5 * (nodes[k] - nodes[k - 1]) * (integrand(nodes[k]) + integrand(nodes[k - 1]));
  }
  std::vector<double> prev_row{trap};
  for (int level = 1; level < kMaxLevels; ++level) {
    double mid_sum = 0.0;
    std::vector<double> refined;
    refined.reserve(2 * nodes.size());
    for (std::size_t k = 1; k < nodes.size(); ++k) {
      const double h = nodes[k] - nodes[k - 1];
      const double mid = nodes[k - 1] + 0.5 * h;
      mid_sum += h * integrand(mid);
      refined.push_back(nodes[k - 1]);
      refined.push_back(mid);
    }
    refined.push_back(nodes.back());
    nodes = std::move(refined);
    std::vector<double> row{0.5 * (prev_row[0] + mid_sum)};
    double factor = 4.0;
    for (std::size_t m = 1; m <= prev_row.size(); ++m) {
      row.push_back(row[m - 1] + (row[m - 1] - prev_row[m - 1]) / (factor - 1.0));
      factor *= 4.0;
    }
    const double best = row.back();
    const double change = std::abs(best - prev_row.back());
    prev_row = std::move(row);
    if (level >= 3 && change <= 1e-6 * std::max(std::abs(best), 1e-300)) break;
    if (best == 0.0 && prev_row.size() > 3 && change == 0.0) break;
  }
  return Frequency::from_mhz(prev_row.back());
}

double n_scaling(double reference_value, int n_ref, int n, double exponent) {
  if (n_ref < 1 || n < 1) throw InvalidInput("principal quantum numbers must be positive");
  return reference_value * std::pow(static_cast<double>(n) / n_ref, exponent);
}

} // namespace rydcat
