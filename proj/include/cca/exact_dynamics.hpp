#pragma once

#include <complex>

#include <Eigen/Dense>

#include "cca/chain_params.hpp"
#include "cca/protocol_schedule.hpp"

namespace cca {

// One shared excitation between atom j and the N delocalized field modes:
// amp_excited on |e_j>|vac>, amp_mode[k-1] on |g_j>|1_k>. The zero-excitation
// component |g_j>|vac> is decoupled and carried implicitly by callers.
struct SingleExcitationState {
  std::complex<double> amp_excited{0.0, 0.0};
  Eigen::VectorXcd amp_mode;

  double norm() const;
  static SingleExcitationState excited(int n_modes);
};

// delta/g that puts the atom on resonance with mode q: -beta_q/g.
double resonant_detuning_over_g(const ChainParams& params, int mode);

// Interaction-picture Schroedinger propagation over [0, gt] under the full
// all-modes Hamiltonian for an atom at `site`, with oscillatory phases
// exp(+-i (delta + beta_k) t). Adaptive Runge-Kutta; norm is preserved to
// 1e-9 or a numerical-failure std::runtime_error (carrying the achieved
// deviation) is thrown.
SingleExcitationState propagate_full(const ChainParams& params, int site,
                                     const SingleExcitationState& state,
                                     double gt, double rel_tol = 1e-9);

// Distance between the receiver-atom states produced by the full dynamics
// and by the single-mode reduction for the same two-step schedule, maximized
// over the six axis input states. Trace-norm distance, range [0, 2].
double reduction_error(const ChainParams& params, int s, int r, int q,
                       const ProtocolSchedule& schedule);

}  // namespace cca
