#pragma once

#include <array>
#include <complex>

namespace cca {

// Pure qubit state cos(theta/2)|g> + e^{i phi} sin(theta/2)|e>.
struct BlochState {
  double theta = 0.0;  // polar angle in [0, pi]
  double phi = 0.0;    // azimuth in [0, 2 pi)

  std::complex<double> ground_amp() const;
  std::complex<double> excited_amp() const;
};

// The octahedron states +z,-z,+x,+y,-x,-y. Their equal-weight mean equals the
// uniform Bloch-sphere average of any function quadratic in the Bloch vector.
const std::array<BlochState, 6>& six_axis_states();

}  // namespace cca
