#pragma once

#include <optional>
#include <string>

namespace cca {

// Scaling of the resonant-mode leakage coefficient with chain length.
// Paper uses N*gamma/2; Uniform keeps the bare gamma/2 of a single cavity.
enum class ModeDecayScaling { Paper, Uniform };

const char* to_string(ModeDecayScaling s);
ModeDecayScaling mode_decay_scaling_from_string(const std::string& s);

// Static configuration of one atom/coupled-cavity setup. Every rate and
// frequency is dimensionless in units of the atom-field coupling g, and all
// durations are the dimensionless gt.
struct ChainParams {
  int n_cavities = 3;            // N
  double hop_rate_over_g = 100;  // A/g, photon hopping between neighbours
  double detuning_over_g = 0;    // delta/g = (omega_c - omega_0)/g
  double gamma_over_g = 0;       // cavity field decay rate
  double kappa_s_over_g = 0;     // sender atom spontaneous emission
  double kappa_r_over_g = 0;     // receiver atom spontaneous emission
  int sender = 1;                // site s, 1-based
  int receiver = 3;              // site r, 1-based
  int resonant_mode = 2;         // mode q the atoms are tuned to
  ModeDecayScaling mode_decay_scaling = ModeDecayScaling::Paper;

  // Throws std::invalid_argument on out-of-range fields. Transfer runs
  // additionally require sender != receiver.
  void validate(bool require_transfer = true) const;

  // The single-mode reduction needs A/g >> 1. Below `threshold` this returns
  // a human-readable warning; the computation itself is never blocked.
  std::optional<std::string> regime_warning(double threshold = 20.0) const;

  // End-to-end transfer on an odd chain: s=1, r=N, q=(N+1)/2 (so delta=0).
  static ChainParams end_to_end(int n_cavities, double gamma_over_g,
                                double kappa_over_g);
};

}  // namespace cca
