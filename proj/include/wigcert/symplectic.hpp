#pragma once

#include <Eigen/Dense>
#include <vector>

#include "wigcert/common.hpp"

namespace wigcert {

/// Williamson invariants of an SPD matrix: the n moduli of the eigenvalues
/// of B J^{-1}, ascending. pairing_residual audits the +-i*lambda pairing.
struct SymplecticSpectrum {
  std::vector<double> values;
  double pairing_residual = 0.0;
};

struct HermitianVerdict {
  double min_eigenvalue = 0.0;
  double scale = 0.0;  // largest |eigenvalue|
  bool is_psd = false;
  double tolerance = 0.0;
};

/// [[0, I], [-I, 0]]
Eigen::MatrixXd standard_J(int n);
/// diag(I, -I), the time-reversal map.
Eigen::MatrixXd time_reversal(int n);

bool is_symplectic(const Eigen::MatrixXd& M, double tol = 1e-9);
bool is_anti_symplectic(const Eigen::MatrixXd& M, double tol = 1e-9);
/// max-norm of M^T J M - s J  (s = +1 symplectic, -1 anti-symplectic).
double symplectic_residual(const Eigen::MatrixXd& M, int sign = +1);

/// Symmetrize (B+B^T)/2; throws if the asymmetry exceeds rel_tol relatively.
Eigen::MatrixXd symmetrize_checked(const Eigen::MatrixXd& B, double rel_tol = 1e-8);

/// Throws on non-symmetric or non-positive-definite input, or when the
/// modulus pairing residual exceeds pairing_rel_tol (ill-conditioned B).
SymplecticSpectrum symplectic_spectrum(const Eigen::MatrixXd& B, double sym_rel_tol = 1e-8,
                                       double pairing_rel_tol = 1e-6);

/// Eigenvalue test on the Hermitian-symmetrized (H+H^dagger)/2.
/// is_psd <=> min_eigenvalue >= -tol * max(scale, 1).
HermitianVerdict hermitian_psd_check(const Eigen::MatrixXcd& H, double tol = 1e-9,
                                     double abs_floor = 1e-12);

/// cov + (i hbar/2) J, the Robertson-Schrodinger matrix.
Eigen::MatrixXcd rsup_matrix(const Eigen::MatrixXd& cov, double hbar);

}  // namespace wigcert
