#include "cca/bloch.hpp"

#include <cmath>
#include <numbers>

namespace cca {

std::complex<double> BlochState::ground_amp() const {
  return {std::cos(theta / 2.0), 0.0};
}

std::complex<double> BlochState::excited_amp() const {
  return std::polar(std::sin(theta / 2.0), phi);
}

const std::array<BlochState, 6>& six_axis_states() {
  constexpr double pi = std::numbers::pi;
  static const std::array<BlochState, 6> states = {{
      {0.0, 0.0},           // +z  (|g>)
      {pi, 0.0},            // -z  (|e>)
      {pi / 2, 0.0},        // +x
      {pi / 2, pi / 2},     // +y
      {pi / 2, pi},         // -x
      {pi / 2, 3 * pi / 2}  // -y
  }};
  return states;
}

}  // namespace cca
