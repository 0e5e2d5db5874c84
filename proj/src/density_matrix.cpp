#include "cca/density_matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace cca {

DensityMatrix DensityMatrix::pure(const Eigen::Vector4cd& psi) {
  DensityMatrix d;
  d.rho = psi * psi.adjoint();
  return d;
}

double DensityMatrix::trace_real() const { return rho.trace().real(); }

double DensityMatrix::hermiticity_defect() const {
  return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  const Eigen::Matrix4cd sym = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(sym);
  return es.eigenvalues().minCoeff();
}

void DensityMatrix::check_physical(double trace_tol, double herm_tol,
                                   double positivity_tol) const {
  std::ostringstream msg;
  if (std::abs(trace_real() - 1.0) > trace_tol) {
    msg << "trace drifted to " << trace_real();
  } else if (hermiticity_defect() > herm_tol) {
    msg << "hermiticity defect " << hermiticity_defect();
  } else if (min_eigenvalue() < -positivity_tol) {
    msg << "negative eigenvalue " << min_eigenvalue();
  } else {
    return;
  }
  throw std::runtime_error("density matrix left the physical set: " + msg.str());
}

}  // namespace cca
