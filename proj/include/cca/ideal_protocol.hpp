#pragma once

#include <string>

#include <Eigen/Dense>

#include "cca/bloch.hpp"
#include "cca/mode_basis.hpp"
#include "cca/protocol_schedule.hpp"

namespace cca {

// Resonant Jaynes-Cummings evolution exp(-i H gt) with effective coupling
// g S(site,mode), on atom (x) photons 0..n_max. Basis index: |g,n> -> n,
// |e,n> -> n_max+1+n. Complete pairs {|e,n>,|g,n+1>} rotate by
// S*gt*sqrt(n+1) with -i off-diagonal phases; |g,0> and the partnerless top
// level |e,n_max> are stationary (exponential of the truncated Hamiltonian).
// Throws std::invalid_argument if the input norm deviates by more than 1e-9.
Eigen::VectorXcd jc_propagate(const ModeBasis& basis, int site, int mode,
                              double gt, const Eigen::VectorXcd& state,
                              int n_max = 1);

// f = -sin(S(s,q) gt1) sin(S(r,q) gt2); f = +1 is a perfect transfer.
double transfer_function(const ModeBasis& basis, int s, int r, int q,
                         double gt1, double gt2);

// Pure-state transfer fidelity for a given input state and transfer value:
// cos^4(theta/2) + sin^4(theta/2) f^2 + 2 sin^2 cos^2 f. Independent of phi.
double ideal_fidelity(const BlochState& state, double f);

// Uniform Bloch-sphere mean of ideal_fidelity: (1 + f + f^2)/3.
double ideal_average_fidelity(double f);

// Smallest positive (gt1, gt2) with |S(s,q)| gt1 = pi/2 and f(gt1,gt2) = +1.
// Throws std::invalid_argument when s or r is decoupled from mode q.
ProtocolSchedule perfect_schedule(const ModeBasis& basis, int s, int r, int q);

// gt = multiple * sqrt(radicand) * pi / 2. The closed form is exact whenever
// |S| = sqrt(2/(N+1)), i.e. odd sites of an odd chain with q = (N+1)/2.
struct SymbolicTime {
  bool exact = false;
  int multiple = 0;  // 1 or 3
  int radicand = 0;  // (N+1)/2
  double value = 0.0;
  std::string text() const;  // e.g. "sqrt(3)*pi/2", "3*pi"; "" when not exact
};

struct ScheduleReport {
  ProtocolSchedule schedule;
  SymbolicTime t1, t2;
};

ScheduleReport schedule_report(const ModeBasis& basis, int s, int r, int q);

}  // namespace cca
