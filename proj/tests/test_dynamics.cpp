#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rydcat/budget.hpp"
#include "rydcat/dynamics.hpp"
#include "rydcat/error.hpp"

using namespace rydcat;
using doctest::Approx;

namespace {

InteractionSet interactions(double sp, double pp, double ss) {
  InteractionSet is;
  is.delta_sp_at_d = Frequency::from_mhz(sp);
  is.delta_pp_at_d = Frequency::from_mhz(pp);
  is.delta_ss_at_d = Frequency::from_mhz(ss);
  return is;
}

ProtocolSpec ideal_spec(Geometry g) {
  ProtocolSpec s;
  s.lattice = build_lattice(g, 3.0);
  s.interactions = interactions(14.4, 0.0, 3.7);
  s.omega_p = Frequency::from_mhz(0.3 * std::numbers::sqrt2);
  s.ss_blockade = BlockadeMode::ideal;
  s.sp_blockade = BlockadeMode::ideal;
  return s;
}

} // namespace

TEST_SUITE("dynamics") {

TEST_CASE("zero Hamiltonian leaves the state unchanged") {
  HamiltonianSpec h;
  h.step = Step::one;
  h.pairs.atom_count = 2;
  const auto psi = StateVector::uniform(2, Level::zero);
  const auto out = evolve(h, psi, 3.0, 1e-12);
  CHECK(fidelity(psi, out) == Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(out[0] - psi[0]) < 1e-14);
}

TEST_CASE("p-p interaction sits on the diagonal") {
  HamiltonianSpec h;
  h.step = Step::two;
  h.pairs = build_pair_table(build_lattice(Geometry::pair, 3.0), interactions(14.4, 0.019, 3.7));
  const std::vector<Level> pp{Level::p, Level::p};
  const auto out = apply_hamiltonian(h, StateVector::from_levels(pp));
  CHECK(out[basis_index(pp)].real() == Approx(Frequency::from_mhz(0.019).angular()));
  CHECK(out.norm_sq() == Approx(std::pow(Frequency::from_mhz(0.019).angular(), 2)));
}

TEST_CASE("single-atom drive matrix elements are half the Rabi frequency") {
  HamiltonianSpec h;
  h.step = Step::two;
  h.omega_p0 = Frequency::from_mhz(1.0);
  h.omega_p1 = Frequency::from_mhz(1.0);
  h.pairs.atom_count = 1;
  const auto out = apply_hamiltonian(h, StateVector::uniform(1, Level::zero));
  CHECK(std::abs(out[3]) == Approx(kTwoPi / 2));
  CHECK(std::abs(out[1]) == 0.0);

  HamiltonianSpec h1;
  h1.step = Step::one;
  h1.omega_s = Frequency::from_mhz(2.0);
  h1.pairs.atom_count = 1;
  CHECK(std::abs(apply_hamiltonian(h1, StateVector::uniform(1, Level::zero))[2]) == Approx(kTwoPi));
}

TEST_CASE("zero duration is the identity") {
  HamiltonianSpec h;
  h.step = Step::one;
  h.omega_s = Frequency::from_mhz(1.0);
  h.pairs.atom_count = 1;
  const auto psi = StateVector::uniform(1, Level::zero);
  CHECK(fidelity(evolve(h, psi, 0.0, 1e-12), psi) == 1.0);
  CHECK_THROWS_AS(evolve(h, psi, -1.0, 1e-12), InvalidInput);
}

TEST_CASE("resonant two-photon transfer reaches |1>") {
  HamiltonianSpec h;
  h.step = Step::two;
  h.omega_p0 = Frequency::from_mhz(1.0);
  h.omega_p1 = Frequency::from_mhz(1.0);
  h.pairs.atom_count = 1;
  const double t2 = std::numbers::sqrt2 * std::numbers::pi / h.omega_p0.angular();
  const auto out = evolve(h, StateVector::uniform(1, Level::zero), t2, 1e-13);
  CHECK(std::norm(out[1]) == Approx(1.0).epsilon(1e-10));
}

TEST_CASE("Hamiltonian is Hermitian and evolution conserves the norm") {
  HamiltonianSpec h;
  h.step = Step::two;
  h.omega_p0 = Frequency::from_mhz(0.42);
  h.omega_p1 = Frequency::from_mhz(0.42);
  h.detuning = Frequency::from_mhz(1.3);
  h.pairs = build_pair_table(build_lattice(Geometry::square4, 3.0), interactions(14.4, 0.019, 3.7));
  h.sp_blockade = BlockadeMode::finite;
  const Hamiltonian ham(h);
  CHECK(ham.hermitian());

  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  StateVector a(4), b(4);
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    a[i] = {g(rng), g(rng)};
    b[i] = {g(rng), g(rng)};
  }
  ham.project(a.amplitudes());
  ham.project(b.amplitudes());
  a.normalize();
  b.normalize();
  StateVector ha(4), hb(4);
  ham.apply(a.amplitudes(), ha.amplitudes());
  ham.apply(b.amplitudes(), hb.amplitudes());
  CHECK(std::abs(inner(a, hb) - std::conj(inner(b, ha))) < 1e-12);

  const auto out = evolve(ham, a, 5.0, {});
  CHECK(std::abs(out.norm_sq() - 1.0) < 1e-9);
}

TEST_CASE("decay makes the Hamiltonian non-Hermitian and drains the norm") {
  HamiltonianSpec h;
  h.step = Step::two;
  h.omega_p0 = Frequency::from_mhz(1.0);
  h.omega_p1 = Frequency::from_mhz(1.0);
  h.pairs.atom_count = 1;
  h.decay = Decay{10.0, std::nullopt};
  const Hamiltonian ham(h);
  CHECK_FALSE(ham.hermitian());
  const auto out = evolve(ham, StateVector::uniform(1, Level::zero), 1.0, {});
  CHECK(out.norm_sq() < 1.0);
  CHECK(out.norm_sq() > 0.9);
}

TEST_CASE("protocol is symmetric under atom relabelling") {
  ProtocolSpec s = ideal_spec(Geometry::square4);
  s.interactions = interactions(14.4, 0.019, 3.7);
  s.sp_blockade = BlockadeMode::finite;
  const auto r = run_protocol(s);
  const std::size_t perm[] = {3, 2, 1, 0}; // a lattice symmetry of the square
  CHECK(fidelity(permute_atoms(r.final_state, perm), r.final_state) == Approx(1.0).epsilon(1e-10));
}

TEST_CASE("ideal protocol prepares the cat state") {
  for (auto g : {Geometry::pair, Geometry::square4}) {
    const auto r = run_protocol(ideal_spec(g));
    CHECK(r.fidelity >= 1 - 1e-9);
    CHECK(r.norm_loss < 1e-9);
  }
}

TEST_CASE("pulse timings") {
  ProtocolSpec s = ideal_spec(Geometry::square4);
  s.omega_s = Frequency::from_mhz(1.0);
  const auto t = protocol_timings(s);
  CHECK(t.t1_us == Approx(std::numbers::pi / (2 * 2 * kTwoPi)));
  CHECK(t.t2_us == Approx(std::numbers::sqrt2 * std::numbers::pi / s.omega_p.angular()));
  s.mode = Mode::nonresonant;
  s.delta0 = Frequency::from_mhz(20.0);
  CHECK(protocol_timings(s).t2_us ==
        Approx(2 * std::numbers::pi * s.delta0.angular() / std::pow(s.omega_p.angular(), 2)));
}

TEST_CASE("full protocol transfer error for a pair") {
  // full three-step run; the transfer-only stage alone gives the bare coefficient
  ProtocolSpec s = ideal_spec(Geometry::pair);
  const double omega = s.omega_p.angular() / std::numbers::sqrt2;
  s.interactions = interactions(14.4, 0.01 * omega / kTwoPi, 3.7);
  s.tolerance = 1e-13;
  const auto r = run_protocol(s);
  CHECK((1 - r.fidelity) / 1e-4 == Approx(0.17108).epsilon(0.01));
}

TEST_CASE("finite sp blockade on a square tracks the budget") {
  ProtocolSpec s = ideal_spec(Geometry::square4);
  s.sp_blockade = BlockadeMode::finite;
  const auto r = run_protocol(s);
  BudgetInputs in;
  in.atoms = 4;
  in.omega = Frequency::from_mhz(0.3);
  in.tau_p_us = std::numeric_limits<double>::infinity();
  in.delta_sp_at_d = Frequency::from_mhz(14.4);
  in.blockade_pair_factor = pair_average_power(s.lattice, 6);
  const double predicted = error_budget(in).e_bl;
  CHECK(1 - r.fidelity == Approx(0.014851).epsilon(1e-3));
  CHECK(std::abs((1 - r.fidelity) - predicted) / predicted <= 0.25);
}

TEST_CASE("decay norm loss") {
  ProtocolSpec s = ideal_spec(Geometry::pair);
  s.stage = ProtocolStage::transfer_only;
  const double omega = s.omega_p.angular() / std::numbers::sqrt2;
  s.decay = Decay{100.0 / omega, std::nullopt};
  const auto r = run_protocol(s);
  CHECK(norm_loss_decay(r) == Approx(2 * std::numbers::pi / 400).epsilon(0.05));
  s.decay.reset();
  CHECK_THROWS_AS(norm_loss_decay(run_protocol(s)), InvalidInput);
}

TEST_CASE("atom cap") {
  ProtocolSpec s = ideal_spec(Geometry::cube8);
  s.max_atoms = 4;
  CHECK_THROWS_AS(run_protocol(s), InvalidInput);
  CHECK_THROWS_AS(product_dimension(13), InvalidInput);
}

}
