#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wigcert/moments.hpp"

namespace wigcert {

enum class CertName {
  heisenberg,
  heinig_smith,
  rsup,
  refined_rsup_ineq1,
  refined_rsup_ineq2,
  refined_rsup_cor1a,
  refined_rsup_cor1b,
  refined_rsup_cor1c,
  saturation,
  purity_equality,
  hirschman_shannon_chain,
  lieb_pure_chain,
  positivity_probe,
  symplectic_invariance,
};

const char* cert_name_str(CertName n);

enum class Verdict { pass, fail, indeterminate };
const char* verdict_str(Verdict v);

/// One named inequality check. pass requires every margin >= -tolerance;
/// indeterminate always carries an explanatory warning.
struct Certificate {
  CertName name{};
  Verdict verdict = Verdict::indeterminate;
  std::vector<std::pair<std::string, double>> margins;
  double tolerance = 0.0;
  std::string inputs_digest;
  std::vector<std::string> warnings;
  std::map<std::string, bool> equality_flags;
};

struct CertifyOptions {
  double eigen_tol = 1e-6;       // absolute on eigen-margins, x hbar
  double equality_band = 10.0;   // equality detection: |margin| <= band * tol
  double boundary_warn = 1e-6;   // boundary-shell mass warning threshold
  double clip_threshold = 1e-9;  // entropy clipping budget
  double interp_tol = 1e-3;      // resampling comparisons, x hbar
  double dilation_safety = 0.05;
  double mass_tol = 1e-6;
};

/// Every matrix entering the refined RSUP (eqERSUP7-style sandwich).
struct RefinedRsupReport {
  Eigen::MatrixXd cov_W;
  Eigen::MatrixXd cov_sq;     // Cov(|W~|^2)
  Eigen::MatrixXd cov_ft_sq;  // Cov(|F_sigma W~|^2)
  double purity = 0.0;
  double lhs_min_eig = 0.0;     // min eig of M1 = Cov(W) + (i hbar/2) J
  double middle_min_eig = 0.0;  // min eig of M2 = P (Cov_sq + Cov_ft/4 + (i hbar/2) J)
  double gap_min_eig = 0.0;     // min eig of M1 - M2
};

std::string field_digest(const Field& F);

Certificate certify_heisenberg(const MomentReport& rep, double hbar,
                               const CertifyOptions& opts = {}, const std::string& digest = "");

/// Dual route: min eigenvalue of Cov + (i hbar/2)J, and the smallest
/// symplectic eigenvalue against hbar/2. Route disagreement beyond the
/// borderline band is reported as indeterminate.
Certificate certify_rsup(const MomentReport& rep, double hbar, const CertifyOptions& opts = {},
                         const std::string& digest = "");

struct RefinedResult {
  RefinedRsupReport report;
  Certificate ineq1;  // Cov(W) + i hbar/2 J >= M2   (equality iff pure)
  Certificate ineq2;  // M2 >= 0
};
RefinedResult certify_refined_rsup(const Field& F, const CertifyOptions& opts = {});

struct Corollary1Result {
  Certificate a;  // Cov >= P (C_sq + C_ft/4)
  Certificate b;  // Cov >= P C_sq
  Certificate c;  // Cov >= (P/4) C_ft
};
Corollary1Result certify_corollary1(const RefinedRsupReport& rep, double hbar,
                                    const CertifyOptions& opts = {}, const std::string& digest = "");

/// Minimal symplectic spectrum AND refined RSUP; reports the Littlejohn
/// residual of (2/hbar)Cov and a pointwise Gaussian-fit residual.
Certificate certify_saturation(const Field& F, const CertifyOptions& opts = {});

Certificate certify_purity_equality(const Field& F, const CertifyOptions& opts = {});

/// log det Cov(|F~|^2) + log det Cov(|F_sigma F~|^2) >= 4n log(hbar/2).
Certificate certify_heinig_smith(const Field& F, const CertifyOptions& opts = {});

Certificate certify_hirschman_shannon_chain(const Field& F, const CertifyOptions& opts = {});

Certificate certify_lieb_pure_chain(const WaveFunction& f, const CertifyOptions& opts = {});

/// K x K Hermite-basis matrix rho_jk = (2 pi hbar)^n \int F conj(W(h_j,h_k));
/// fail is conclusive non-Wignerness, pass is non-refutation at truncation K.
/// Requires a Wigner-reciprocal grid (n = 1).
Certificate positivity_probe(const Field& F, int basis_size, const CertifyOptions& opts = {});

/// Refined-RSUP reports of F and the resampled F o S must agree (after the
/// known congruence transformation of the covariance blocks).
Certificate certify_symplectic_invariance(const Field& F, const Eigen::MatrixXd& S,
                                          const CertifyOptions& opts = {});

struct DilationResult {
  double mu = 1.0;
  Certificate cert;
};
/// mu = min(1, sqrt(2 lambda_1/hbar) (1-safety)); the dilated field's RSUP
/// certificate is returned and expected to pass.
DilationResult dilation_to_rsup(const Field& F, const CertifyOptions& opts = {});

}  // namespace wigcert
