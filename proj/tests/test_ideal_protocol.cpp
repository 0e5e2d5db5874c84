#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "cca/detail/gauss_legendre.hpp"
#include "cca/ideal_protocol.hpp"

using namespace cca;
namespace {
constexpr double pi = std::numbers::pi;

// Independent oracle for the single-excitation block: direct matrix
// exponential of the 2x2 coupling Hamiltonian on {|e,0>, |g,1>}.
Eigen::Vector2cd jc_pair_oracle(double coupling, double gt,
                                const Eigen::Vector2cd& in) {
  Eigen::Matrix2cd h;
  h << 0.0, coupling, coupling, 0.0;
  const Eigen::Matrix2cd u = (std::complex<double>(0, -1) * gt * h).exp();
  return u * in;
}

Eigen::VectorXcd basis_state(int dim, int index) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v(index) = 1.0;
  return v;
}
}  // namespace

TEST_CASE("vacuum ground state is dark") {
  const ModeBasis basis(3);
  const Eigen::VectorXcd g0 = basis_state(4, 0);
  for (double gt : {0.0, 0.3, 5.7, 100.0}) {
    CHECK((jc_propagate(basis, 1, 2, gt, g0) - g0).norm() == 0.0);
  }
}

TEST_CASE("quarter-period pulse maps |e,0> to -i|g,1>") {
  const ModeBasis basis(3);
  const double gt = pi / std::sqrt(2.0);  // S(1,2) gt = pi/2
  const Eigen::VectorXcd out = jc_propagate(basis, 1, 2, gt, basis_state(4, 2));
  CHECK(std::abs(out(1) - std::complex<double>(0, -1)) < 1e-12);
  CHECK(std::abs(out(0)) == 0.0);
  CHECK(std::abs(out(2)) < 1e-12);
  CHECK(std::abs(out(3)) == 0.0);
}

TEST_CASE("jc_propagate agrees with the 2x2 matrix exponential oracle") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> angle(0.0, 2 * pi);
  std::normal_distribution<double> gauss;
  const ModeBasis basis(5);
  for (int site : {1, 3, 5}) {
    for (int mode : {1, 2, 3}) {
      Eigen::Vector2cd pair;
      pair << std::complex<double>(gauss(rng), gauss(rng)),
          std::complex<double>(gauss(rng), gauss(rng));
      pair.normalize();
      Eigen::VectorXcd in = Eigen::VectorXcd::Zero(4);
      in(2) = pair(0);  // |e,0>
      in(1) = pair(1);  // |g,1>
      const double gt = angle(rng);
      const Eigen::VectorXcd out = jc_propagate(basis, site, mode, gt, in);
      const Eigen::Vector2cd expect =
          jc_pair_oracle(basis.amplitude(site, mode), gt, pair);
      CHECK(std::abs(out(2) - expect(0)) < 1e-12);
      CHECK(std::abs(out(1) - expect(1)) < 1e-12);
      CHECK(std::abs(out.norm() - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("decoupled even site under the centre mode evolves trivially") {
  const ModeBasis basis(5);
  Eigen::VectorXcd in = Eigen::VectorXcd::Zero(4);
  in(2) = std::complex<double>(0.6, 0.0);
  in(1) = std::complex<double>(0.0, 0.8);
  for (double gt : {0.1, 2.9, 17.0}) {
    CHECK((jc_propagate(basis, 2, 3, gt, in) - in).norm() == 0.0);
  }
}

TEST_CASE("jc_propagate validates its input") {
  const ModeBasis basis(3);
  CHECK_THROWS_AS(jc_propagate(basis, 1, 2, 1.0, basis_state(4, 0) * 2.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(jc_propagate(basis, 1, 2, 1.0, basis_state(6, 0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(jc_propagate(basis, 1, 2, 1.0, basis_state(4, 0), 0),
                  std::invalid_argument);
}

TEST_CASE("transfer function values") {
  const ModeBasis b3(3);
  CHECK(transfer_function(b3, 1, 3, 2, pi / std::sqrt(2.0), pi / std::sqrt(2.0)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(transfer_function(b3, 1, 3, 2, 0.0, 1.7) == 0.0);
  const ModeBasis b5(5);
  CHECK(transfer_function(b5, 1, 5, 3, std::sqrt(3.0) * pi / 2,
                          3 * std::sqrt(3.0) * pi / 2) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("transfer function is periodic in each time separately") {
  const ModeBasis basis(5);
  const double p1 = 2 * pi / std::abs(basis.amplitude(1, 3));
  const double p2 = 2 * pi / std::abs(basis.amplitude(5, 3));
  for (double gt1 : {0.3, 1.9}) {
    for (double gt2 : {0.7, 4.1}) {
      const double f = transfer_function(basis, 1, 5, 3, gt1, gt2);
      CHECK(transfer_function(basis, 1, 5, 3, gt1 + p1, gt2) ==
            doctest::Approx(f).epsilon(1e-9));
      CHECK(transfer_function(basis, 1, 5, 3, gt1, gt2 + p2) ==
            doctest::Approx(f).epsilon(1e-9));
    }
  }
}

TEST_CASE("ideal fidelity formula") {
  for (double theta : {0.0, 0.4, pi / 2, 2.5, pi}) {
    for (double phi : {0.0, 1.0, 4.4}) {
      CHECK(ideal_fidelity({theta, phi}, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  for (double f : {-1.0, -0.2, 0.0, 0.8}) {
    CHECK(ideal_fidelity({0.0, 0.3}, f) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(ideal_fidelity({pi, 0.0}, 0.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(ideal_fidelity({0.3, 0.0}, 1.5), std::invalid_argument);
}

TEST_CASE("ideal fidelity never depends on phi") {
  for (double theta = 0.0; theta <= pi + 1e-12; theta += pi / 16) {
    for (double f : {-0.7, 0.1, 0.9}) {
      const double ref = ideal_fidelity({theta, 0.0}, f);
      for (double phi = 0.0; phi < 2 * pi; phi += pi / 8) {
        CHECK(ideal_fidelity({theta, phi}, f) == ref);
      }
    }
  }
}

TEST_CASE("Bloch average closed form equals quadrature") {
  const auto rule = detail::gauss_legendre(21);
  for (double f = -1.0; f <= 1.0 + 1e-12; f += 0.125) {
    double quad = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
      const double theta = std::acos(rule.nodes[i]);
      quad += rule.weights[i] * ideal_fidelity({theta, 0.0}, f);
    }
    quad /= 2.0;
    CHECK(ideal_average_fidelity(f) == doctest::Approx(quad).epsilon(1e-10));
  }
  CHECK(ideal_average_fidelity(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(ideal_average_fidelity(0.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(ideal_average_fidelity(-1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("perfect schedules reproduce the closed-form reference table") {
  struct Row {
    int n, s, r;
    double gt1, gt2;
  };
  const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0);
  const Row rows[] = {
      {3, 1, 3, pi / s2, pi / s2},
      {5, 1, 3, s3 * pi / 2, s3 * pi / 2},
      {5, 1, 5, s3 * pi / 2, 3 * s3 * pi / 2},
      {5, 3, 5, s3 * pi / 2, s3 * pi / 2},
      {7, 1, 3, pi, pi},
      {7, 1, 5, pi, 3 * pi},
      {7, 1, 7, pi, pi},
      {7, 3, 5, pi, pi},
      {7, 3, 7, pi, 3 * pi},
      {7, 5, 7, pi, pi},
  };
  for (const auto& row : rows) {
    CAPTURE(row.n);
    CAPTURE(row.s);
    CAPTURE(row.r);
    const ModeBasis basis(row.n);
    const auto sched = perfect_schedule(basis, row.s, row.r, (row.n + 1) / 2);
    CHECK(std::abs(sched.gt1 - row.gt1) < 1e-12);
    CHECK(std::abs(sched.gt2 - row.gt2) < 1e-12);
  }
}

TEST_CASE("perfect schedules transfer every state perfectly and reversibly") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int n : {3, 5, 7, 9, 11}) {
    const ModeBasis basis(n);
    const int q = (n + 1) / 2;
    for (int s = 1; s <= n; s += 2) {
      for (int r = 1; r <= n; r += 2) {
        if (s == r) continue;
        const auto sched = perfect_schedule(basis, s, r, q);
        const double f = transfer_function(basis, s, r, q, sched.gt1, sched.gt2);
        CHECK(std::abs(f - 1.0) < 1e-12);
        for (int i = 0; i < 100; ++i) {
          const BlochState state{std::acos(1 - 2 * u01(rng)), 2 * pi * u01(rng)};
          CHECK(std::abs(ideal_fidelity(state, f) - 1.0) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("decoupled sites are rejected with a clear error") {
  const ModeBasis basis(5);
  CHECK_THROWS_WITH_AS(perfect_schedule(basis, 2, 4, 3),
                       doctest::Contains("decoupled"), std::invalid_argument);
  CHECK_THROWS_AS(perfect_schedule(basis, 1, 4, 3), std::invalid_argument);
}

TEST_CASE("schedule report carries the exact symbolic times") {
  {
    const auto rep = schedule_report(ModeBasis(3), 1, 3, 2);
    CHECK(rep.t1.exact);
    CHECK(rep.t1.multiple == 1);
    CHECK(rep.t1.radicand == 2);
    CHECK(rep.t1.text() == "sqrt(2)*pi/2");
    CHECK(rep.t2.text() == "sqrt(2)*pi/2");
  }
  {
    const auto rep = schedule_report(ModeBasis(7), 1, 5, 4);
    CHECK(rep.t1.text() == "pi");
    CHECK(rep.t2.text() == "3*pi");
    CHECK(rep.t2.multiple == 3);
    CHECK(rep.t2.radicand == 4);
  }
  {
    const auto rep = schedule_report(ModeBasis(5), 1, 5, 3);
    CHECK(rep.t2.text() == "3*sqrt(3)*pi/2");
  }
  {
    // q off the band centre: times are valid but have no surd closed form
    const auto rep = schedule_report(ModeBasis(4), 1, 2, 1);
    CHECK_FALSE(rep.t1.exact);
    CHECK(rep.t1.text().empty());
    CHECK(rep.schedule.gt1 > 0);
  }
}
