#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <doctest.h>

#include "cca/detail/gauss_legendre.hpp"
#include "cca/ideal_protocol.hpp"
#include "cca/mode_basis.hpp"
#include "cca/open_system.hpp"

using namespace cca;
namespace {
constexpr double pi = std::numbers::pi;

ChainParams paper_chain(int n, int s, int r) {
  ChainParams p = ChainParams::end_to_end(n, 0.004, 0.006);
  p.sender = s;
  p.receiver = r;
  return p;
}

ProtocolSchedule ideal_times(const ChainParams& p) {
  return perfect_schedule(ModeBasis(p.n_cavities), p.sender, p.receiver,
                          p.resonant_mode);
}

Eigen::Matrix4cd random_physical_rho(std::mt19937& rng) {
  std::normal_distribution<double> gauss;
  Eigen::Matrix4cd a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = {gauss(rng), gauss(rng)};
  Eigen::Matrix4cd rho = a * a.adjoint();
  return rho / rho.trace();
}
}  // namespace

TEST_CASE("vacuum is stationary for every stage and rate") {
  ChainParams p = paper_chain(5, 1, 5);
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  rho(0, 0) = 1.0;
  for (auto stage : {Stage::Step1, Stage::Delay, Stage::Step2}) {
    CHECK(lindblad_rhs(p, stage, rho).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("the generator is trace-free") {
  std::mt19937 rng(5);
  ChainParams p = paper_chain(7, 3, 7);
  for (int i = 0; i < 20; ++i) {
    const Eigen::Matrix4cd rho = random_physical_rho(rng);
    for (auto stage : {Stage::Step1, Stage::Delay, Stage::Step2}) {
      CHECK(std::abs(lindblad_rhs(p, stage, rho).trace()) < 1e-12);
    }
  }
}

TEST_CASE("photon leaks from the resonant mode at rate N*gamma") {
  ChainParams p = paper_chain(5, 1, 5);
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  rho(3, 3) = 1.0;
  const auto d = lindblad_rhs(p, Stage::Delay, rho);
  CHECK(d(3, 3).real() == doctest::Approx(-5 * 0.004).epsilon(1e-12));
  CHECK(d(0, 0).real() == doctest::Approx(5 * 0.004).epsilon(1e-12));

  p.mode_decay_scaling = ModeDecayScaling::Uniform;
  CHECK(lindblad_rhs(p, Stage::Delay, rho)(3, 3).real() ==
        doctest::Approx(-0.004).epsilon(1e-12));
}

TEST_CASE("a single leakage channel integrates to an exponential") {
  // Test-side RK4 on lindblad_rhs from a pure photon state: the population
  // must follow exp(-N gamma gt) with no Hamiltonian acting.
  ChainParams p = paper_chain(5, 1, 5);
  p.kappa_s_over_g = 0.0;
  p.kappa_r_over_g = 0.0;
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  rho(3, 3) = 1.0;
  const double t_end = 12.0;
  const int steps = 1200;
  const double h = t_end / steps;
  for (int i = 0; i < steps; ++i) {
    const Eigen::Matrix4cd k1 = lindblad_rhs(p, Stage::Delay, rho);
    const Eigen::Matrix4cd k2 = lindblad_rhs(p, Stage::Delay, rho + 0.5 * h * k1);
    const Eigen::Matrix4cd k3 = lindblad_rhs(p, Stage::Delay, rho + 0.5 * h * k2);
    const Eigen::Matrix4cd k4 = lindblad_rhs(p, Stage::Delay, rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  CHECK(rho(3, 3).real() ==
        doctest::Approx(std::exp(-5 * 0.004 * t_end)).epsilon(1e-6));
}

TEST_CASE("lossless propagation matches the closed-form protocol") {
  ChainParams p = ChainParams::end_to_end(5, 0.0, 0.0);
  const ModeBasis basis(5);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (auto [gt1, gt2] : {std::pair{0.7, 1.3}, {2.1, 0.4}, {1.0, 5.0}}) {
    ProtocolSchedule sched;
    sched.gt1 = gt1;
    sched.gt2 = gt2;
    const double f = transfer_function(basis, 1, 5, 3, gt1, gt2);
    for (int i = 0; i < 5; ++i) {
      const BlochState state{std::acos(1 - 2 * u01(rng)), 2 * pi * u01(rng)};
      const auto run = run_protocol(p, sched, state);
      CHECK(run.fidelity == doctest::Approx(ideal_fidelity(state, f)).epsilon(1e-8));
    }
  }
}

TEST_CASE("perfect times give unit fidelity without losses") {
  for (int n : {3, 5, 7}) {
    ChainParams p = ChainParams::end_to_end(n, 0.0, 0.0);
    const auto sched = ideal_times(p);
    for (const auto& state : six_axis_states()) {
      const auto run = run_protocol(p, sched, state);
      CHECK(std::abs(run.fidelity - 1.0) < 1e-8);
      CHECK(run.success_probability == 1.0);
    }
  }
}

TEST_CASE("the ground state rides through unharmed at any rates") {
  ChainParams p = paper_chain(5, 1, 5);
  p.gamma_over_g = 0.05;
  p.kappa_s_over_g = 0.08;
  p.kappa_r_over_g = 0.08;
  auto sched = ideal_times(p);
  sched.gt_delay = 3.0;
  const auto run = run_protocol(p, sched, BlochState{0.0, 0.0});
  CHECK(std::abs(run.fidelity - 1.0) < 1e-8);
}

TEST_CASE("reference dissipative fidelities") {
  struct Row {
    int n, s, r;
    double expect;
  };
  for (const Row& row : {Row{3, 1, 3, 0.986}, Row{5, 1, 5, 0.955},
                         Row{7, 3, 7, 0.934}}) {
    ChainParams p = paper_chain(row.n, row.s, row.r);
    const double f = average_fidelity(p, ideal_times(p));
    CHECK(std::abs(f - row.expect) < 0.005);
  }
}

TEST_CASE("six-state mean equals dense Bloch-sphere quadrature") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const auto rule = detail::gauss_legendre(21);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 3 + 2 * (trial % 3);
    ChainParams p = ChainParams::end_to_end(n, 0.02 * u01(rng), 0.02 * u01(rng));
    ProtocolSchedule sched = ideal_times(p);
    sched.gt_delay = 2.0 * u01(rng);
    sched.dt1_frac = 0.05 * (2 * u01(rng) - 1);
    sched.dt2_frac = 0.05 * (2 * u01(rng) - 1);

    double quad = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
      const double theta = std::acos(rule.nodes[i]);
      double phi_acc = 0.0;
      constexpr int n_phi = 8;
      for (int j = 0; j < n_phi; ++j) {
        phi_acc +=
            run_protocol(p, sched, BlochState{theta, 2 * pi * j / n_phi})
                .fidelity;
      }
      quad += rule.weights[i] * phi_acc / n_phi;
    }
    quad /= 2.0;
    CHECK(average_fidelity(p, sched) == doctest::Approx(quad).epsilon(1e-6));
  }
}

TEST_CASE("density matrix invariants hold along a lossy run") {
  ChainParams p = paper_chain(7, 1, 7);
  p.gamma_over_g = 0.03;
  p.kappa_s_over_g = 0.05;
  p.kappa_r_over_g = 0.05;
  auto sched = ideal_times(p);
  sched.gt_delay = 2.5;
  RunOptions options;
  options.timeline_samples = 25;  // invariants are re-checked at every sample
  const auto run = run_protocol(p, sched, BlochState{2.0, 0.7}, options);
  CHECK(std::abs(run.rho_final.trace_real() - 1.0) < 1e-8);
  CHECK(run.rho_final.hermiticity_defect() < 1e-10);
  CHECK(run.rho_final.min_eigenvalue() > -1e-8);
  CHECK(run.timeline.size() > 50);
}

TEST_CASE("excitation never grows while the chain idles") {
  ChainParams p = paper_chain(5, 1, 5);
  auto sched = ideal_times(p);
  sched.gt_delay = 6.0;
  RunOptions options;
  options.timeline_samples = 40;
  const auto run = run_protocol(p, sched, BlochState{pi, 0.0}, options);
  double prev = 2.0;
  for (const auto& s : run.timeline) {
    if (s.gt < sched.gt1 - 1e-12 || s.gt > sched.gt1 + sched.gt_delay + 1e-12)
      continue;
    const double excitation =
        s.p_sender_excited + s.p_receiver_excited + s.p_photon;
    CHECK(excitation <= prev + 1e-10);
    prev = excitation;
  }
}

TEST_CASE("optimum of the lossless protocol is the ideal schedule") {
  ChainParams p = ChainParams::end_to_end(3, 0.0, 0.0);
  const auto [sched, value] = max_average_fidelity(p);
  const auto ideal = ideal_times(p);
  CHECK(std::abs(value - 1.0) < 1e-9);
  CHECK(std::abs(sched.gt1 - ideal.gt1) < 2e-4);
  CHECK(std::abs(sched.gt2 - ideal.gt2) < 2e-4);
}

TEST_CASE("optimized fidelity stays at the reference value for N=3") {
  ChainParams p = paper_chain(3, 1, 3);
  const auto [sched, value] = max_average_fidelity(p);
  CHECK(std::abs(value - 0.986) < 0.005);
  const auto ideal = ideal_times(p);
  CHECK(std::abs(sched.gt1 - ideal.gt1) <= 0.02 * ideal.gt1);
  CHECK(std::abs(sched.gt2 - ideal.gt2) <= 0.02 * ideal.gt2);
}

TEST_CASE("a window that misses the ideal point is rejected") {
  ChainParams p = paper_chain(3, 1, 3);
  SearchWindow window;
  window.gt1_lo = 0.1;
  window.gt1_hi = 0.2;
  window.gt2_lo = 0.1;
  window.gt2_hi = 0.2;
  CHECK_THROWS_AS(max_average_fidelity(p, window), std::invalid_argument);
}

TEST_CASE("measuring the sender raises conditional fidelity under timing error") {
  ChainParams p = paper_chain(5, 1, 5);
  auto sched = ideal_times(p);
  sched.dt1_frac = 0.02;
  sched.dt2_frac = 0.02;
  const auto plain = average_fidelity_detail(p, sched);
  sched.measure_after_step1 = true;
  const auto measured = average_fidelity_detail(p, sched);
  CHECK(measured.avg_fidelity > plain.avg_fidelity);
  CHECK(measured.success_probability < 1.0);
  CHECK(measured.success_probability > 0.99);
}

TEST_CASE("trajectory CSV is well formed") {
  ChainParams p = paper_chain(3, 1, 3);
  RunOptions options;
  options.timeline_samples = 10;
  const auto run = run_protocol(p, ideal_times(p), BlochState{pi, 0.0}, options);
  std::ostringstream out;
  write_trajectory_csv(out, run.timeline);
  const std::string text = out.str();
  CHECK(text.find("gt,p_sender_excited") == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') ==
        static_cast<long>(run.timeline.size()) + 1);
}
