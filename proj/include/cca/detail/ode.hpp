#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/numeric/odeint.hpp>

namespace cca::detail {

using CVec = std::vector<std::complex<double>>;

// Adaptive Cash-Karp 5(4) over [t0, t1] with a non-finite guard. The state is
// updated in place.
template <class Rhs>
void integrate_adaptive_checked(Rhs&& rhs, CVec& y, double t0, double t1,
                                double abs_tol, double rel_tol, double dt0) {
  namespace ode = boost::numeric::odeint;
  if (!(t1 > t0)) return;
  auto stepper =
      ode::make_controlled(abs_tol, rel_tol, ode::runge_kutta_cash_karp54<CVec>());
  ode::integrate_adaptive(stepper, std::forward<Rhs>(rhs), y, t0, t1, dt0);
  for (const auto& c : y)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw std::runtime_error("ODE integration produced non-finite values");
}

}  // namespace cca::detail
