#include "wigcert/symplectic.hpp"

#include <algorithm>
#include <cmath>

namespace wigcert {

Eigen::MatrixXd standard_J(int n) {
  if (n < 1) throw error("standard_J: n must be >= 1");
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  J.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
  J.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  return J;
}

Eigen::MatrixXd time_reversal(int n) {
  if (n < 1) throw error("time_reversal: n must be >= 1");
  Eigen::MatrixXd T = Eigen::MatrixXd::Identity(2 * n, 2 * n);
  T.bottomRightCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  return T;
}

double symplectic_residual(const Eigen::MatrixXd& M, int sign) {
  if (M.rows() != M.cols() || M.rows() % 2 != 0) throw error("symplectic test: matrix must be square 2n x 2n");
  int n = static_cast<int>(M.rows()) / 2;
  Eigen::MatrixXd J = standard_J(n);
  return (M.transpose() * J * M - sign * J).cwiseAbs().maxCoeff();
}

bool is_symplectic(const Eigen::MatrixXd& M, double tol) { return symplectic_residual(M, +1) <= tol; }

bool is_anti_symplectic(const Eigen::MatrixXd& M, double tol) { return symplectic_residual(M, -1) <= tol; }

Eigen::MatrixXd symmetrize_checked(const Eigen::MatrixXd& B, double rel_tol) {
  if (B.rows() != B.cols()) throw error("symmetrize: matrix must be square");
  double scale = std::max(1e-300, B.cwiseAbs().maxCoeff());
  double asym = (B - B.transpose()).cwiseAbs().maxCoeff();
  if (asym > rel_tol * scale) throw error("symmetrize: input asymmetry exceeds tolerance");
  return 0.5 * (B + B.transpose());
}

SymplecticSpectrum symplectic_spectrum(const Eigen::MatrixXd& B, double sym_rel_tol,
                                       double pairing_rel_tol) {
  Eigen::MatrixXd S = symmetrize_checked(B, sym_rel_tol);
  if (S.rows() % 2 != 0) throw error("symplectic_spectrum: matrix must be 2n x 2n");
  int n = static_cast<int>(S.rows()) / 2;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> defcheck(S);
  if (defcheck.eigenvalues().minCoeff() <= 0.0)
    throw error("symplectic_spectrum: matrix is not positive-definite");

  // Moduli of the eigenvalues of B J^{-1}; they come in +-i*lambda pairs.
  Eigen::MatrixXd J = standard_J(n);
  Eigen::MatrixXd BJinv = S * (-J);  // J^{-1} = -J
  Eigen::EigenSolver<Eigen::MatrixXd> es(BJinv);
  std::vector<double> mods(2 * n);
  for (int i = 0; i < 2 * n; ++i) mods[i] = std::abs(es.eigenvalues()[i]);
  std::sort(mods.begin(), mods.end());

  SymplecticSpectrum spec;
  spec.values.resize(n);
  spec.pairing_residual = 0.0;
  for (int j = 0; j < n; ++j) {
    double a = mods[2 * j], b = mods[2 * j + 1];
    double m = 0.5 * (a + b);
    spec.values[j] = m;
    double res = std::abs(b - a) / std::max(m, 1e-300);
    spec.pairing_residual = std::max(spec.pairing_residual, res);
  }
  if (spec.pairing_residual > pairing_rel_tol)
    throw error("symplectic_spectrum: eigenvalue moduli failed to pair (ill-conditioned input)");
  return spec;
}

HermitianVerdict hermitian_psd_check(const Eigen::MatrixXcd& H, double tol, double abs_floor) {
  if (H.rows() != H.cols()) throw error("hermitian_psd_check: matrix must be square");
  double scale0 = std::max(1e-300, H.cwiseAbs().maxCoeff());
  double dev = (H - H.adjoint()).cwiseAbs().maxCoeff();
  if (dev > std::max(tol * scale0, abs_floor) * 100.0)
    throw error("hermitian_psd_check: input is not Hermitian within tolerance");

  Eigen::MatrixXcd Hs = 0.5 * (H + H.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Hs);
  HermitianVerdict v;
  v.min_eigenvalue = es.eigenvalues().minCoeff();
  v.scale = es.eigenvalues().cwiseAbs().maxCoeff();
  v.tolerance = std::max(tol * std::max(v.scale, 1.0), abs_floor);
  v.is_psd = v.min_eigenvalue >= -v.tolerance;
  return v;
}

Eigen::MatrixXcd rsup_matrix(const Eigen::MatrixXd& cov, double hbar) {
  Eigen::MatrixXd S = 0.5 * (cov + cov.transpose());
  if (S.rows() % 2 != 0) throw error("rsup_matrix: covariance must be 2n x 2n");
  int n = static_cast<int>(S.rows()) / 2;
  return S.cast<cplx>() + cplx(0.0, 0.5 * hbar) * standard_J(n).cast<cplx>();
}

}  // namespace wigcert
