#pragma once

#include <Eigen/Dense>

#include "cca/chain_params.hpp"

namespace cca {

// Normal modes of the uniform open-ended hopping chain:
//   S(n,k) = sqrt(2/(N+1)) sin(n k pi/(N+1)),   beta_k = 2 A cos(k pi/(N+1)).
// S is real, symmetric and orthogonal, hence its own inverse. Entries with
// n*k divisible by N+1 are stored as exact zeros so the odd-chain site
// selection rule holds bit-for-bit downstream.
class ModeBasis {
 public:
  explicit ModeBasis(int n_cavities);

  int size() const { return n_; }

  // S(site, mode), 1-based indices. Throws std::out_of_range.
  double amplitude(int site, int mode) const;

  // beta_k / A, strictly decreasing in k; exact zero at the band centre.
  double frequency_over_hop(int mode) const;

  const Eigen::MatrixXd& amplitudes() const { return s_; }
  const Eigen::VectorXd& frequencies_over_hop() const { return beta_over_hop_; }

  // Basis changes between localized cavity amplitudes and mode amplitudes.
  // The same matrix implements both directions.
  Eigen::VectorXcd to_mode_frame(const Eigen::VectorXcd& site_amplitudes) const;
  Eigen::VectorXcd to_site_frame(const Eigen::VectorXcd& mode_amplitudes) const;

 private:
  int n_;
  Eigen::MatrixXd s_;
  Eigen::VectorXd beta_over_hop_;
};

// Requires N >= 2 (a single cavity has no hopping spectrum to diagonalize).
ModeBasis build_mode_basis(const ChainParams& params);

double mode_amplitude(const ModeBasis& basis, int site, int mode);

// End-site amplitude of the zero-frequency mode of an odd chain:
// S(N, q) = (-1)^{q-1} / sqrt(q) with q = (N+1)/2. Throws on even N.
double end_site_parity_amplitude(int n_cavities);

}  // namespace cca
