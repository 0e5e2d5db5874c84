#include "cca/mode_basis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cca {

namespace {

// sin(n k pi / (N+1)) with the argument reduced by the exact 2(N+1)
// periodicity of the integer product, so entries stay accurate for large N
// and the zeros at n k = 0 (mod N+1) are exact by construction.
double chain_sine(long long n, long long k, long long np1) {
  const long long m = (n * k) % (2 * np1);
  if (m % np1 == 0) return 0.0;
  return std::sin(std::numbers::pi * static_cast<double>(m) /
                  static_cast<double>(np1));
}

}  // namespace

ModeBasis::ModeBasis(int n_cavities) : n_(n_cavities) {
  if (n_ < 2)
    throw std::invalid_argument(
        "mode basis requires at least 2 cavities, got " + std::to_string(n_));
  const int np1 = n_ + 1;
  const double scale = std::sqrt(2.0 / np1);
  s_.resize(n_, n_);
  for (int n = 1; n <= n_; ++n)
    for (int k = 1; k <= n; ++k) {
      const double v = scale * chain_sine(n, k, np1);
      s_(n - 1, k - 1) = v;
      s_(k - 1, n - 1) = v;
    }

  // beta_k/A = 2 cos(k pi/(N+1)); filled antisymmetrically about the band
  // centre so beta_k = -beta_{N+1-k} holds exactly.
  beta_over_hop_.resize(n_);
  for (int k = 1; 2 * k <= np1; ++k) {
    const double b = (2 * k == np1)
                         ? 0.0
                         : 2.0 * std::cos(std::numbers::pi * k / np1);
    beta_over_hop_(k - 1) = b;
    beta_over_hop_(np1 - k - 1) = -b;
  }
}

double ModeBasis::amplitude(int site, int mode) const {
  if (site < 1 || site > n_ || mode < 1 || mode > n_)
    throw std::out_of_range("mode basis index out of range: site=" +
                            std::to_string(site) + " mode=" +
                            std::to_string(mode) + " N=" + std::to_string(n_));
  return s_(site - 1, mode - 1);
}

double ModeBasis::frequency_over_hop(int mode) const {
  if (mode < 1 || mode > n_)
    throw std::out_of_range("mode index out of range: " + std::to_string(mode));
  return beta_over_hop_(mode - 1);
}

Eigen::VectorXcd ModeBasis::to_mode_frame(
    const Eigen::VectorXcd& site_amplitudes) const {
  if (site_amplitudes.size() != n_)
    throw std::invalid_argument("amplitude vector length mismatch");
  Eigen::VectorXcd out(n_);
  out.real() = s_ * site_amplitudes.real();
  out.imag() = s_ * site_amplitudes.imag();
  return out;
}

Eigen::VectorXcd ModeBasis::to_site_frame(
    const Eigen::VectorXcd& mode_amplitudes) const {
  return to_mode_frame(mode_amplitudes);  // S is its own inverse
}

ModeBasis build_mode_basis(const ChainParams& params) {
  params.validate(false);
  return ModeBasis(params.n_cavities);
}

double mode_amplitude(const ModeBasis& basis, int site, int mode) {
  return basis.amplitude(site, mode);
}

double end_site_parity_amplitude(int n_cavities) {
  if (n_cavities < 3 || n_cavities % 2 == 0)
    throw std::invalid_argument("end-site parity amplitude needs odd N >= 3");
  const int q = (n_cavities + 1) / 2;
  const double value = ((q - 1) % 2 == 0 ? 1.0 : -1.0) / std::sqrt(q);
  const double direct = ModeBasis(n_cavities).amplitude(n_cavities, q);
  if (std::abs(value - direct) > 1e-12)
    throw std::logic_error("parity closed form disagrees with S(N,q)");
  return value;
}

}  // namespace cca
