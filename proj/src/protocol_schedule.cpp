#include "cca/protocol_schedule.hpp"

#include <cmath>
#include <stdexcept>

namespace cca {

void ProtocolSchedule::validate() const {
  if (!(gt1 >= 0) || !(gt2 >= 0) || !std::isfinite(gt1) || !std::isfinite(gt2))
    throw std::invalid_argument("interaction times must be >= 0 and finite");
  if (!(gt_delay >= 0) || !std::isfinite(gt_delay))
    throw std::invalid_argument("gt_delay must be >= 0 and finite");
  if (!(std::abs(dt1_frac) < 1) || !(std::abs(dt2_frac) < 1))
    throw std::invalid_argument("fractional timing errors must satisfy |dt| < 1");
}

}  // namespace cca
