#include "cca/chain_params.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cca {

const char* to_string(ModeDecayScaling s) {
  return s == ModeDecayScaling::Paper ? "paper" : "uniform";
}

ModeDecayScaling mode_decay_scaling_from_string(const std::string& s) {
  if (s == "paper") return ModeDecayScaling::Paper;
  if (s == "uniform") return ModeDecayScaling::Uniform;
  throw std::invalid_argument("unknown mode decay scaling '" + s +
                              "' (expected paper|uniform)");
}

void ChainParams::validate(bool require_transfer) const {
  if (n_cavities < 1) throw std::invalid_argument("n_cavities must be >= 1");
  if (!(hop_rate_over_g > 0) || !std::isfinite(hop_rate_over_g))
    throw std::invalid_argument("hop_rate_over_g must be positive and finite");
  if (!std::isfinite(detuning_over_g))
    throw std::invalid_argument("detuning_over_g must be finite");
  if (gamma_over_g < 0 || kappa_s_over_g < 0 || kappa_r_over_g < 0)
    throw std::invalid_argument("decay rates must be >= 0");
  auto site_in_range = [this](int v) { return v >= 1 && v <= n_cavities; };
  if (!site_in_range(sender))
    throw std::invalid_argument("sender site out of range [1, N]");
  if (!site_in_range(receiver))
    throw std::invalid_argument("receiver site out of range [1, N]");
  if (!site_in_range(resonant_mode))
    throw std::invalid_argument("resonant mode out of range [1, N]");
  if (require_transfer && sender == receiver)
    throw std::invalid_argument("transfer run requires sender != receiver");
}

std::optional<std::string> ChainParams::regime_warning(double threshold) const {
  if (hop_rate_over_g >= threshold) return std::nullopt;
  std::ostringstream msg;
  msg << "A/g = " << hop_rate_over_g << " is below " << threshold
      << "; the single-mode reduction assumes A/g >> 1 and its predictions "
         "are unreliable here";
  return msg.str();
}

ChainParams ChainParams::end_to_end(int n_cavities, double gamma_over_g,
                                    double kappa_over_g) {
  if (n_cavities < 3 || n_cavities % 2 == 0)
    throw std::invalid_argument("end_to_end requires odd N >= 3");
  ChainParams p;
  p.n_cavities = n_cavities;
  p.gamma_over_g = gamma_over_g;
  p.kappa_s_over_g = kappa_over_g;
  p.kappa_r_over_g = kappa_over_g;
  p.sender = 1;
  p.receiver = n_cavities;
  p.resonant_mode = (n_cavities + 1) / 2;
  p.detuning_over_g = 0.0;  // beta_q = 0 at the band centre
  return p;
}

}  // namespace cca
