#include "rydcat/perturbation.hpp"

#include <cmath>
#include <numbers>

#include "rydcat/error.hpp"
#include "rydcat/kernels.hpp"

namespace rydcat {

Eigensystem single_atom_eigensystem(Frequency omega_p, Frequency delta0) {
  const double wp = omega_p.angular();
  if (!(wp > 0)) throw InvalidInput("omega_p must be positive");
  const double d0 = delta0.angular();
  // Bright state (|0>+|1>)/sqrt2 couples to |p> with Omega_p/sqrt2; the dark
  // state (|0>-|1>)/sqrt2 is an exact zero-energy eigenstate with no |p> weight.
  const double g = wp / std::numbers::sqrt2;
  const double root = std::sqrt(d0 * d0 + 4.0 * g * g);

  Eigensystem e;
  e.omega_p = wp;
  e.frequencies = {0.0, 0.5 * (d0 + root), 0.5 * (d0 - root)};
  e.rydberg_overlaps[Eigensystem::kDark] = 0.0;
  e.state_overlaps[Eigensystem::kDark] = 1.0 / std::numbers::sqrt2;
  for (std::size_t m : {Eigensystem::kPlus, Eigensystem::kMinus}) {
    const double w = e.frequencies[m];
    // eigenvector in (bright, p) is (g, w) / |(g, w)|
    const double norm = std::hypot(g, w);
    e.rydberg_overlaps[m] = w / norm;
    e.state_overlaps[m] = (g / norm) / std::numbers::sqrt2;
  }
  return e;
}

namespace {

std::size_t pow3(std::size_t n) {
  std::size_t r = 1;
  for (std::size_t k = 0; k < n; ++k) r *= 3;
  return r;
}

} // namespace

double first_order_error(const PairTable& pairs, const Eigensystem& eigen, double t_us) {
  if (!(t_us > 0)) throw InvalidInput("transfer time must be positive");
  const std::size_t n = pairs.atom_count;
  if (n < 2) return 0.0;
  if (n > 10) throw InvalidInput("first-order evaluation limited to 10 atoms");

  const auto& w = eigen.frequencies;
  const auto& c = eigen.rydberg_overlaps;
  const auto& u = eigen.state_overlaps;
  const double threshold = 1e-9 * eigen.omega_p / std::numbers::sqrt2;

  // Two-atom amplitude, identical for every pair:
  //   phi[a][b] = -i sum_{a',b'} c_a c_b c*_a' c*_b' F(w_a+w_b-w_a'-w_b') <a'|0><b'|0>
  // with F(x) = (exp(i x t) - 1)/(i x), -> t as x -> 0.
  cplx phi[3][3] = {};
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) {
      cplx sum = 0.0;
      for (std::size_t ap = 0; ap < 3; ++ap)
        for (std::size_t bp = 0; bp < 3; ++bp) {
          const double x = w[a] + w[b] - w[ap] - w[bp];
          const cplx f = std::abs(x) < threshold ? cplx(t_us, 0.0)
                                                 : (std::exp(cplx(0.0, x * t_us)) - 1.0) / cplx(0.0, x);
          sum += c[a] * c[b] * std::conj(c[ap]) * std::conj(c[bp]) * f * u[ap] * u[bp];
        }
      phi[a][b] = cplx(0.0, -1.0) * sum;
    }

  // Full interaction-picture correction on the 3^N dressed product basis;
  // atoms outside the pair stay in |0> = sum_m <m|0>|m>.
  const std::size_t dim = pow3(n);
  std::vector<cplx> delta(dim), psi0(dim);
  std::vector<unsigned char> digits(n);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    std::size_t rest = idx;
    for (std::size_t k = 0; k < n; ++k) {
      digits[k] = static_cast<unsigned char>(rest % 3);
      rest /= 3;
    }
    cplx base = 1.0;
    for (std::size_t k = 0; k < n; ++k) base *= u[digits[k]];
    psi0[idx] = base;

    cplx amp = 0.0;
    for (const auto& e : pairs.entries) {
      const double v = e.delta_pp.angular();
      if (v == 0.0) continue;
      cplx others = 1.0;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != e.i && k != e.j) others *= u[digits[k]];
      }
      amp += v * phi[digits[e.i]][digits[e.j]] * others;
    }
    delta[idx] = amp;
  }

  const auto& kern = kernels::active();
  const cplx along = kern.dot(psi0.data(), delta.data(), dim);
  kern.axpy(-along, psi0.data(), delta.data(), dim);
  return kern.norm_sq(delta.data(), dim);
}

namespace {

struct ProbeSetup {
  Frequency omega_p;
  Frequency delta0;
  Frequency probe;
  double scale = 0.0; // rad/us, the normalising frequency
  double t_us = 0.0;
};

ProbeSetup probe_setup(Mode mode, double ratio, const CoefficientOptions& opts) {
  ProbeSetup s;
  s.omega_p = Frequency::from_mhz(1.0);
  if (mode == Mode::resonant) {
    s.scale = s.omega_p.angular() / std::numbers::sqrt2;
    s.t_us = std::numbers::sqrt2 * std::numbers::pi / s.omega_p.angular();
  } else {
    if (!(opts.detuning_ratio > 0)) throw InvalidInput("detuning ratio must be positive");
    s.delta0 = s.omega_p * opts.detuning_ratio;
    s.scale = s.delta0.angular();
    s.t_us = 2.0 * std::numbers::pi * s.delta0.angular() / (s.omega_p.angular() * s.omega_p.angular());
  }
  s.probe = Frequency::from_angular(ratio * s.scale);
  return s;
}

InteractionSet probe_interactions(Frequency probe, int exponent) {
  InteractionSet set;
  set.delta_pp_at_d = probe;
  set.gamma_pp = exponent;
  return set;
}

} // namespace

CoefficientResult extract_coefficient(const Lattice& lattice, int exponent, Mode mode, const CoefficientOptions& opts) {
  if (exponent != 0 && exponent != 6) throw InvalidInput("coefficient exponent must be 0 or 6");
  if (!(opts.probe_ratio > 0)) throw InvalidInput("probe ratio must be positive");
  const ProbeSetup s = probe_setup(mode, opts.probe_ratio, opts);
  const auto pairs = build_pair_table(lattice, probe_interactions(s.probe, exponent));
  const auto eigen = single_atom_eigensystem(s.omega_p, s.delta0);
  const double err = first_order_error(pairs, eigen, s.t_us);
  CoefficientResult r;
  r.value = err / (opts.probe_ratio * opts.probe_ratio);
  r.geometry = lattice.kind;
  r.exponent = exponent;
  r.mode = mode;
  r.atom_count = lattice.size();
  return r;
}

CoefficientResult extract_coefficient(Geometry geometry, int exponent, Mode mode, const CoefficientOptions& opts) {
  if (geometry == Geometry::sphere_cut) throw InvalidInput("coefficient table covers pair, square4 and cube8 only");
  return extract_coefficient(build_lattice(geometry, 1.0), exponent, mode, opts);
}

std::optional<double> published_coefficient(Geometry geometry, int exponent, Mode mode) {
  if (mode == Mode::resonant) {
    if (geometry == Geometry::pair) return 0.299;
    if (geometry == Geometry::square4) return exponent == 6 ? 0.72 : 3.82;
    if (geometry == Geometry::cube8) return exponent == 6 ? 9.39 : 36.8;
  } else {
    if (geometry == Geometry::square4) return exponent == 6 ? 15.6 : 53.7;
    if (geometry == Geometry::cube8) return exponent == 6 ? 113.0 : 308.0;
  }
  return std::nullopt;
}

ExactComparison validate_against_exact(Geometry geometry, int exponent, Mode mode, double delta_pp_over_omega,
                                       const CoefficientOptions& opts) {
  if (geometry == Geometry::sphere_cut) throw InvalidInput("exact comparison covers pair, square4 and cube8 only");
  const Lattice lattice = build_lattice(geometry, 1.0);
  if (lattice.size() > 6) throw InvalidInput("exact comparison limited to N <= 6");
  if (!(delta_pp_over_omega >= 0) || delta_pp_over_omega > 0.05) {
    throw InvalidInput("delta_pp/omega must lie in [0, 0.05]");
  }
  ExactComparison out;
  if (delta_pp_over_omega == 0.0) return out;

  const ProbeSetup s = probe_setup(mode, delta_pp_over_omega, opts);
  const auto pairs = build_pair_table(lattice, probe_interactions(s.probe, exponent));
  out.perturbative = first_order_error(pairs, single_atom_eigensystem(s.omega_p, s.delta0), s.t_us);

  ProtocolSpec spec;
  spec.lattice = lattice;
  spec.interactions = probe_interactions(s.probe, exponent);
  spec.omega_p = s.omega_p;
  spec.delta0 = s.delta0;
  spec.mode = mode;
  spec.t2_us = s.t_us;
  spec.stage = ProtocolStage::transfer_only;
  spec.tolerance = 1e-13;
  const StateVector actual = evolve_protocol(spec);
  const StateVector reference = ideal_target(spec);
  out.exact = std::max(0.0, 1.0 - fidelity(reference, actual));
  out.relative_gap = std::abs(out.perturbative - out.exact) / out.exact;
  return out;
}

} // namespace rydcat
