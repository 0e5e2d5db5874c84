#include "cca/ideal_protocol.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cca {

namespace {
constexpr double pi = std::numbers::pi;
constexpr std::complex<double> kMinusI{0.0, -1.0};
}  // namespace

Eigen::VectorXcd jc_propagate(const ModeBasis& basis, int site, int mode,
                              double gt, const Eigen::VectorXcd& state,
                              int n_max) {
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  const int dim = 2 * (n_max + 1);
  if (state.size() != dim)
    throw std::invalid_argument("state dimension must be 2*(n_max+1) = " +
                                std::to_string(dim));
  const double nrm = state.norm();
  if (std::abs(nrm - 1.0) > 1e-9)
    throw std::invalid_argument("jc_propagate requires a normalized state");

  const double coupling = basis.amplitude(site, mode);
  Eigen::VectorXcd out = state;
  for (int n = 0; n < n_max; ++n) {
    const double angle = coupling * gt * std::sqrt(n + 1.0);
    const auto e_n = state(n_max + 1 + n);   // |e,n>
    const auto g_n1 = state(n + 1);          // |g,n+1>
    out(n_max + 1 + n) = std::cos(angle) * e_n + kMinusI * std::sin(angle) * g_n1;
    out(n + 1) = kMinusI * std::sin(angle) * e_n + std::cos(angle) * g_n1;
  }
  if (std::abs(out.norm() - nrm) > 1e-12)
    throw std::runtime_error("jc_propagate failed to preserve the norm");
  return out;
}

double transfer_function(const ModeBasis& basis, int s, int r, int q,
                         double gt1, double gt2) {
  return -std::sin(basis.amplitude(s, q) * gt1) *
         std::sin(basis.amplitude(r, q) * gt2);
}

double ideal_fidelity(const BlochState& state, double f) {
  if (std::abs(f) > 1.0 + 1e-12)
    throw std::invalid_argument("transfer function must lie in [-1, 1]");
  const double c2 = std::pow(std::cos(state.theta / 2.0), 2);
  const double s2 = std::pow(std::sin(state.theta / 2.0), 2);
  return c2 * c2 + s2 * s2 * f * f + 2.0 * s2 * c2 * f;
}

double ideal_average_fidelity(double f) {
  if (std::abs(f) > 1.0 + 1e-12)
    throw std::invalid_argument("transfer function must lie in [-1, 1]");
  return (1.0 + f + f * f) / 3.0;
}

ProtocolSchedule perfect_schedule(const ModeBasis& basis, int s, int r, int q) {
  const double ss = basis.amplitude(s, q);
  const double sr = basis.amplitude(r, q);
  if (ss == 0.0)
    throw std::invalid_argument("sender site " + std::to_string(s) +
                                " is decoupled from mode " + std::to_string(q) +
                                " (S(s,q) = 0)");
  if (sr == 0.0)
    throw std::invalid_argument("receiver site " + std::to_string(r) +
                                " is decoupled from mode " + std::to_string(q) +
                                " (S(r,q) = 0)");

  ProtocolSchedule sched;
  sched.gt1 = pi / (2.0 * std::abs(ss));
  // sin(S(s,q) gt1) = sign(S(s,q)); perfect transfer needs
  // sin(S(r,q) gt2) = -sign(S(s,q)), at the smallest positive gt2.
  const double target = (ss > 0 ? -1.0 : 1.0) * (sr > 0 ? 1.0 : -1.0);
  sched.gt2 = (target > 0 ? 0.5 : 1.5) * pi / std::abs(sr);
  return sched;
}

std::string SymbolicTime::text() const {
  if (!exact) return {};
  const int root = static_cast<int>(std::lround(std::sqrt(radicand)));
  if (root * root == radicand) {
    const int numerator = multiple * root;  // numerator * pi / 2
    if (numerator % 2 == 0) {
      const int whole = numerator / 2;
      return whole == 1 ? "pi" : std::to_string(whole) + "*pi";
    }
    return std::to_string(numerator) + "*pi/2";
  }
  const std::string surd = "sqrt(" + std::to_string(radicand) + ")*pi/2";
  return multiple == 1 ? surd : std::to_string(multiple) + "*" + surd;
}

ScheduleReport schedule_report(const ModeBasis& basis, int s, int r, int q) {
  ScheduleReport report;
  report.schedule = perfect_schedule(basis, s, r, q);
  report.t1.value = report.schedule.gt1;
  report.t2.value = report.schedule.gt2;

  // For odd N with q = (N+1)/2 every coupled (odd) site has |S| = 1/sqrt(q),
  // so the times are exact multiples of sqrt(q) pi/2.
  const int n = basis.size();
  if (n % 2 == 1 && q == (n + 1) / 2) {
    const double unit = std::sqrt(static_cast<double>(q)) * pi / 2.0;
    for (auto [st, gt] : {std::pair{&report.t1, report.schedule.gt1},
                          std::pair{&report.t2, report.schedule.gt2}}) {
      const int multiple = static_cast<int>(std::lround(gt / unit));
      if (std::abs(gt - multiple * unit) < 1e-12 * std::max(1.0, gt)) {
        st->exact = true;
        st->multiple = multiple;
        st->radicand = q;
      }
    }
  }
  return report;
}

}  // namespace cca
