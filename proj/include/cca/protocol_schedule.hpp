#pragma once

namespace cca {

// Timing of one two-step transfer: sender window gt1, receiver window gt2,
// an idle gap between them, and multiplicative timing errors per window.
struct ProtocolSchedule {
  double gt1 = 0.0;
  double gt2 = 0.0;
  double gt_delay = 0.0;
  double dt1_frac = 0.0;
  double dt2_frac = 0.0;
  bool measure_after_step1 = false;

  double effective_gt1() const { return gt1 * (1.0 + dt1_frac); }
  double effective_gt2() const { return gt2 * (1.0 + dt2_frac); }

  void validate() const;  // throws std::invalid_argument
};

}  // namespace cca
