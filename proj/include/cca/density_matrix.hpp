#pragma once

#include <Eigen/Dense>

namespace cca {

// Density operator on the truncated two-atom/one-mode space with at most one
// excitation. Basis order:
//   0: |g_s g_r 0>   1: |e_s g_r 0>   2: |g_s e_r 0>   3: |g_s g_r 1_q>
struct DensityMatrix {
  static constexpr int kDim = 4;

  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();

  static DensityMatrix pure(const Eigen::Vector4cd& psi);

  double trace_real() const;
  double hermiticity_defect() const;  // max-abs entry of rho - rho^dagger
  double min_eigenvalue() const;      // of (rho + rho^dagger)/2

  // Throws std::runtime_error when outside the stated tolerances.
  void check_physical(double trace_tol = 1e-8, double herm_tol = 1e-10,
                      double positivity_tol = 1e-8) const;
};

}  // namespace cca
