#include "rydcat/budget.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rydcat/error.hpp"

namespace rydcat {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSnap = 1e-12;

double snap_probability(double p) {
  if (!std::isfinite(p)) throw NumericalFault("population is not finite");
  if (p < 0.0) {
    if (p < -kSnap) throw NumericalFault("population below zero beyond rounding");
    return 0.0;
  }
  if (p > 1.0) {
    if (p > 1.0 + kSnap) throw NumericalFault("population above one beyond rounding");
    return 1.0;
  }
  if (p < kSnap) return 0.0;
  if (p > 1.0 - kSnap) return 1.0;
  return p;
}

} // namespace

double TransferInputs::omega_prime() const { return std::sqrt(4.0 * omega * omega + delta * delta); }

Populations transfer_populations(const TransferInputs& in) {
  if (!(in.omega > 0)) throw InvalidInput("transfer Rabi frequency must be positive");
  const double w = in.omega;
  const double d = in.delta;
  const double wp = in.omega_prime();
  const double num = wp * wp - w * w + w * w * std::cos(kPi * wp / w) -
                     wp * wp * std::cos(kPi * d / (2 * w)) * std::cos(kPi * wp / (2 * w)) -
                     d * wp * std::sin(kPi * d / (2 * w)) * std::sin(kPi * wp / (2 * w));
  Populations out;
  out.p1 = snap_probability(num / (2.0 * wp * wp));
  out.p0 = 1.0 - out.p1;
  return out;
}

Populations nonresonant_populations(Frequency omega_p, Frequency delta0, Frequency delta_sp_shift, double t_us) {
  const double wp = omega_p.angular();
  const double d0 = delta0.angular();
  if (!(wp > 0)) throw InvalidInput("omega_p must be positive");
  if (!(t_us >= 0)) throw InvalidInput("pulse time must be non-negative");
  const double denom = d0 + delta_sp_shift.angular();
  if (!(denom > 0)) throw InvalidInput("delta0 + shift must be positive");
  const double w = wp * wp / (2.0 * denom);
  const double s = std::sin(0.5 * w * t_us);
  Populations out;
  out.p1 = snap_probability(s * s);
  out.p0 = 1.0 - out.p1;
  out.regime_warning = d0 < 10.0 * wp;
  return out;
}

BudgetInputs BudgetInputs::with_free_frequency(Frequency f) const {
  BudgetInputs copy = *this;
  if (mode == Mode::resonant) {
    copy.omega = f;
  } else {
    copy.delta0 = f;
  }
  return copy;
}

ErrorBudget error_budget(const BudgetInputs& in) {
  const double w = in.free_frequency().angular();
  if (!(w > 0)) {
    throw InvalidInput(in.mode == Mode::resonant ? "omega must be positive" : "delta0 must be positive");
  }
  if (!(in.tau_p_us > 0)) throw InvalidInput("tau_p must be positive");
  if (!(in.delta_sp_at_d.angular() > 0)) throw InvalidInput("delta_sp(d) must be positive");
  if (!(in.delta_pp_at_d.angular() >= 0)) throw InvalidInput("delta_pp(d) must be non-negative");
  if (!(in.coefficient >= 0)) throw InvalidInput("transfer coefficient must be non-negative");
  if (!(in.blockade_pair_factor >= 1.0)) throw InvalidInput("blockade pair factor must be >= 1");

  const double n = static_cast<double>(in.atoms);
  const double ratio_bl = w / in.delta_sp_at_d.angular();
  const double ratio_tr = in.delta_pp_at_d.angular() / w;
  ErrorBudget b;
  // Omega*tau_p for resonant, Delta0*tau_p for nonresonant
  const double se_arg = w * in.tau_p_us;
  b.e_se = in.mode == Mode::resonant ? n * kPi / (4.0 * se_arg) : n * kPi / (2.0 * se_arg);
  b.e_bl = n * (kPi * kPi / 4.0) * ratio_bl * ratio_bl * in.blockade_pair_factor;
  b.e_tr = in.coefficient * ratio_tr * ratio_tr;
  b.total = b.e_se + b.e_bl + b.e_tr;
  if (!std::isfinite(b.total)) throw NumericalFault("error budget is not finite");
  return b;
}

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
  if (points < 2) throw InvalidInput("grid needs at least two points");
  if (!(lo > 0) || !(hi > lo)) throw InvalidInput("grid range must satisfy 0 < lo < hi");
  std::vector<double> g(points);
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t k = 0; k < points; ++k) {
    g[k] = std::exp(a + (b - a) * static_cast<double>(k) / static_cast<double>(points - 1));
  }
  g.front() = lo;
  g.back() = hi;
  return g;
}

RabiOptimum optimize_rabi(const BudgetInputs& in, double lo_mhz, double hi_mhz, std::size_t curve_points) {
  if (!(lo_mhz > 0) || !(hi_mhz > lo_mhz)) throw InvalidInput("optimisation bounds must satisfy 0 < lo < hi");
  auto total_at = [&](double log_mhz) {
    return error_budget(in.with_free_frequency(Frequency::from_mhz(std::exp(log_mhz)))).total;
  };

  // Bracket on a coarse grid, then golden-section inside the bracket.
  constexpr std::size_t kScan = 129;
  const auto grid = log_grid(lo_mhz, hi_mhz, kScan);
  std::size_t best = 0;
  double best_val = total_at(std::log(grid[0]));
  for (std::size_t k = 1; k < kScan; ++k) {
    const double v = total_at(std::log(grid[k]));
    if (v < best_val) {
      best_val = v;
      best = k;
    }
  }
  if (best == 0 || best == kScan - 1) throw InvalidInput("error budget has no interior minimum within the bounds");

  double a = std::log(grid[best - 1]);
  double b = std::log(grid[best + 1]);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = total_at(x1), f2 = total_at(x2);
  while (b - a > 1e-10) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = total_at(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = total_at(x2);
    }
  }
  const double x = 0.5 * (a + b);
  RabiOptimum out;
  out.optimum = Frequency::from_mhz(std::exp(x));
  out.e_min = total_at(x);
  if (curve_points > 0) {
    for (double f : log_grid(lo_mhz, hi_mhz, curve_points)) {
      out.curve.push_back({f, error_budget(in.with_free_frequency(Frequency::from_mhz(f)))});
    }
  }
  return out;
}

GateOptimum two_atom_gate_optimum(double delta, double tau_us, double c_bl, double c_se) {
  if (!(delta > 0) || !(tau_us > 0) || !(c_bl > 0) || !(c_se > 0)) {
    throw InvalidInput("gate optimum needs positive delta, tau and coefficients");
  }
  GateOptimum g;
  g.omega = std::cbrt(c_se * delta * delta / (2.0 * c_bl * tau_us));
  g.e_min = c_bl * g.omega * g.omega / (delta * delta) + c_se / (g.omega * tau_us);
  return g;
}

} // namespace rydcat
