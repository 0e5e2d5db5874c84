#pragma once

#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cca/bloch.hpp"
#include "cca/chain_params.hpp"
#include "cca/density_matrix.hpp"
#include "cca/protocol_schedule.hpp"

namespace cca {

// Protocol stages. Step1 couples the sender, Step2 the receiver, Delay has no
// Hamiltonian. The mode leakage channel is active in every stage; the sender
// decay channel from Step1 onward, the receiver channel in Step2.
enum class Stage { Step1, Delay, Step2 };

// dRho/d(gt) for the given stage; traceless by construction.
Eigen::Matrix4cd lindblad_rhs(const ChainParams& params, Stage stage,
                              const Eigen::Matrix4cd& rho);

struct TrajectorySample {
  double gt;
  double p_sender_excited;
  double p_receiver_excited;
  double p_photon;
  double p_vacuum;
  double inst_fidelity;
};

struct RunOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int timeline_samples = 0;  // per stage; 0 = no trajectory capture
};

struct DissipativeRunResult {
  DensityMatrix rho_final;
  double fidelity = 0.0;                  // for the supplied input state
  std::optional<double> avg_fidelity;     // filled by the averaging drivers
  double success_probability = 1.0;       // < 1 only with measure_after_step1
  std::vector<TrajectorySample> timeline;
};

// Step1 for gt1(1+dt1), idle for gt_delay, Step2 for gt2(1+dt2), then
// F = <psi_f| rho |psi_f> against the transferred target state. With
// measure_after_step1 the sender is projected onto |g_s> after Step1 and the
// branch weight is reported as success_probability.
DissipativeRunResult run_protocol(const ChainParams& params,
                                  const ProtocolSchedule& schedule,
                                  const BlochState& initial,
                                  const RunOptions& options = {});

struct AverageResult {
  double avg_fidelity = 0.0;
  double success_probability = 1.0;
};

// Uniform Bloch-sphere mean of the transfer fidelity. Unconditioned runs use
// the exact six-axis-state rule; measurement-conditioned fidelity is a ratio
// of state-dependent quantities, so it is averaged by quadrature instead.
AverageResult average_fidelity_detail(const ChainParams& params,
                                      const ProtocolSchedule& schedule,
                                      const RunOptions& options = {});
double average_fidelity(const ChainParams& params,
                        const ProtocolSchedule& schedule);

struct SearchWindow {
  double gt1_lo = 0.0, gt1_hi = 0.0;
  double gt2_lo = 0.0, gt2_hi = 0.0;
  double tol = 1e-4;  // termination width in gt
};

// Coordinate-wise golden-section maximization of the average fidelity over
// (gt1, gt2). The window must bracket the lossless schedule; the optimum is
// checked to lie within 2% of it.
std::pair<ProtocolSchedule, double> max_average_fidelity(
    const ChainParams& params, const SearchWindow& window);

// Convenience overload: window = ideal times +-10%.
std::pair<ProtocolSchedule, double> max_average_fidelity(
    const ChainParams& params);

void write_trajectory_csv(std::ostream& out,
                          const std::vector<TrajectorySample>& timeline);

}  // namespace cca
