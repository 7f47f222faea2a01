#include "wigcert/certify.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "wigcert/states.hpp"
#include "wigcert/symplectic.hpp"
#include "wigcert/transforms.hpp"

namespace wigcert {

namespace {

constexpr double kPi = std::numbers::pi;

Verdict margins_verdict(const std::vector<std::pair<std::string, double>>& margins, double tol,
                        bool has_warnings) {
  if (has_warnings) return Verdict::indeterminate;
  for (const auto& [name, m] : margins)
    if (m < -tol) return Verdict::fail;
  return Verdict::pass;
}

double min_eig_sym(const Eigen::MatrixXd& A) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (A + A.transpose()));
  return es.eigenvalues().minCoeff();
}

double min_eig_herm(const Eigen::MatrixXcd& A) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (A + A.adjoint()));
  return es.eigenvalues().minCoeff();
}

double log_det_spd(const Eigen::MatrixXd& A, const char* who) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (A + A.transpose()));
  double s = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    double e = es.eigenvalues()[i];
    if (e <= 0.0) throw error(std::string(who) + ": covariance is singular or indefinite");
    s += std::log(e);
  }
  return s;
}

Certificate make_indeterminate(CertName name, double tol, const std::string& digest,
                               const std::string& why) {
  Certificate c;
  c.name = name;
  c.verdict = Verdict::indeterminate;
  c.tolerance = tol;
  c.inputs_digest = digest;
  c.warnings.push_back(why);
  return c;
}

// non-validating Gaussian sampler for the saturation fit
Field sample_gaussian_profile(const Eigen::MatrixXd& cov, const Eigen::VectorXd& mean,
                              const PhaseSpaceGrid& grid) {
  Eigen::MatrixXd prec = (0.5 * (cov + cov.transpose())).inverse();
  Field G = make_field(grid, "gaussian_fit");
  Shape sh(grid.dims());
  std::vector<double> z;
  Eigen::VectorXd d(grid.num_axes());
  const double amp = std::pow(kPi * grid.hbar, -grid.dim_n);
  for (std::size_t f = 0; f < G.values.size(); ++f) {
    grid_point(grid, sh, f, z);
    for (int a = 0; a < grid.num_axes(); ++a) d[a] = z[a] - mean[a];
    G.values[f] = amp * std::exp(-0.5 * d.dot(prec * d));
  }
  return G;
}

struct RefinedInputs {
  MomentReport rep;
  MomentReport rep_sq;
  MomentReport rep_ft;
  std::vector<std::string> warnings;
};

RefinedInputs compute_refined_inputs(const Field& F, const CertifyOptions& opts) {
  RefinedInputs in;
  if (!is_effectively_real(F)) in.warnings.push_back("input field is not real within tolerance");
  in.rep = moment_report(F);
  if (in.rep.boundary_mass_fraction > opts.boundary_warn)
    in.warnings.push_back("input boundary-shell mass exceeds threshold (possible aliasing)");

  Field dens_sq = density_from_square(F, SquareRoute::direct);
  in.rep_sq = moment_report(dens_sq);
  if (in.rep_sq.boundary_mass_fraction > opts.boundary_warn)
    in.warnings.push_back("|F~|^2 boundary-shell mass exceeds threshold");

  Field dens_ft = density_from_square(F, SquareRoute::symplectic_ft);
  in.rep_ft = moment_report(dens_ft);
  if (in.rep_ft.boundary_mass_fraction > opts.boundary_warn)
    in.warnings.push_back("|F_sigma F~|^2 boundary-shell mass exceeds threshold");
  return in;
}

RefinedRsupReport build_refined_report(const RefinedInputs& in, double hbar) {
  RefinedRsupReport r;
  r.cov_W = in.rep.covariance;
  r.cov_sq = in.rep_sq.covariance;
  r.cov_ft_sq = in.rep_ft.covariance;
  r.purity = in.rep.purity;
  Eigen::MatrixXcd M1 = rsup_matrix(r.cov_W, hbar);
  Eigen::MatrixXcd M2 =
      r.purity * rsup_matrix(r.cov_sq + 0.25 * r.cov_ft_sq, hbar);
  r.lhs_min_eig = min_eig_herm(M1);
  r.middle_min_eig = min_eig_herm(M2);
  r.gap_min_eig = min_eig_herm(M1 - M2);
  return r;
}

}  // namespace

const char* cert_name_str(CertName n) {
  switch (n) {
    case CertName::heisenberg: return "heisenberg";
    case CertName::heinig_smith: return "heinig_smith";
    case CertName::rsup: return "rsup";
    case CertName::refined_rsup_ineq1: return "refined_rsup_ineq1";
    case CertName::refined_rsup_ineq2: return "refined_rsup_ineq2";
    case CertName::refined_rsup_cor1a: return "refined_rsup_cor1a";
    case CertName::refined_rsup_cor1b: return "refined_rsup_cor1b";
    case CertName::refined_rsup_cor1c: return "refined_rsup_cor1c";
    case CertName::saturation: return "saturation";
    case CertName::purity_equality: return "purity_equality";
    case CertName::hirschman_shannon_chain: return "hirschman_shannon_chain";
    case CertName::lieb_pure_chain: return "lieb_pure_chain";
    case CertName::positivity_probe: return "positivity_probe";
    case CertName::symplectic_invariance: return "symplectic_invariance";
  }
  return "unknown";
}

const char* verdict_str(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::indeterminate: return "indeterminate";
  }
  return "unknown";
}

std::string field_digest(const Field& F) {
  std::uint64_t h = fnv1a(&F.grid.dim_n, sizeof(F.grid.dim_n));
  h = fnv1a(&F.grid.hbar, sizeof(F.grid.hbar), h);
  for (int a = 0; a < F.grid.num_axes(); ++a) {
    const AxisSpec& ax = F.grid.axis(a);
    h = fnv1a(&ax.points, sizeof(ax.points), h);
    h = fnv1a(&ax.half_extent, sizeof(ax.half_extent), h);
  }
  h = fnv1a(F.label.data(), F.label.size(), h);
  h = fnv1a(F.values.data(), F.values.size() * sizeof(cplx), h);
  return hex64(h);
}

Certificate certify_heisenberg(const MomentReport& rep, double hbar, const CertifyOptions& opts,
                               const std::string& digest) {
  const int n = static_cast<int>(rep.covariance.rows()) / 2;
  Certificate c;
  c.name = CertName::heisenberg;
  c.tolerance = opts.eigen_tol * hbar;
  c.inputs_digest = digest;
  for (int i = 0; i < n; ++i) {
    double vx = rep.covariance(i, i), vp = rep.covariance(n + i, n + i);
    if (!(vx >= 0.0) || !(vp >= 0.0)) {
      return make_indeterminate(CertName::heisenberg, c.tolerance, digest,
                                "negative variance on the diagonal");
    }
    std::ostringstream key;
    key << "dxdp_" << (i + 1);
    c.margins.emplace_back(key.str(), std::sqrt(vx) * std::sqrt(vp) - 0.5 * hbar);
  }
  c.verdict = margins_verdict(c.margins, c.tolerance, false);
  return c;
}

Certificate certify_rsup(const MomentReport& rep, double hbar, const CertifyOptions& opts,
                         const std::string& digest) {
  Certificate c;
  c.name = CertName::rsup;
  c.tolerance = opts.eigen_tol * hbar;
  c.inputs_digest = digest;

  double min_eig = min_eig_herm(rsup_matrix(rep.covariance, hbar));
  double lam_margin;
  try {
    SymplecticSpectrum spec = symplectic_spectrum(rep.covariance);
    lam_margin = spec.values.front() - 0.5 * hbar;
  } catch (const error& e) {
    return make_indeterminate(CertName::rsup, c.tolerance, digest,
                              std::string("symplectic spectrum unavailable: ") + e.what());
  }
  c.margins.emplace_back("min_eig", min_eig);
  c.margins.emplace_back("lambda_margin", lam_margin);

  bool r1 = min_eig >= -c.tolerance;
  bool r2 = lam_margin >= -c.tolerance;
  if (r1 == r2) {
    c.verdict = r1 ? Verdict::pass : Verdict::fail;
  } else if (min_eig >= -opts.equality_band * c.tolerance &&
             lam_margin >= -opts.equality_band * c.tolerance) {
    c.verdict = Verdict::pass;  // borderline saturation, both routes ~0
  } else {
    c.verdict = Verdict::indeterminate;
    c.warnings.push_back("eigenvalue and symplectic-spectrum routes disagree");
  }
  if (std::abs(lam_margin) <= opts.equality_band * c.tolerance)
    c.equality_flags["saturated"] = true;
  return c;
}

RefinedResult certify_refined_rsup(const Field& F, const CertifyOptions& opts) {
  const double hbar = F.grid.hbar;
  const double tol = opts.eigen_tol * hbar;
  std::string digest = field_digest(F);

  RefinedResult out;
  RefinedInputs in;
  try {
    in = compute_refined_inputs(F, opts);
  } catch (const error& e) {
    out.ineq1 = make_indeterminate(CertName::refined_rsup_ineq1, tol, digest, e.what());
    out.ineq2 = make_indeterminate(CertName::refined_rsup_ineq2, tol, digest, e.what());
    return out;
  }
  out.report = build_refined_report(in, hbar);

  out.ineq2.name = CertName::refined_rsup_ineq2;
  out.ineq2.tolerance = tol;
  out.ineq2.inputs_digest = digest;
  out.ineq2.warnings = in.warnings;
  out.ineq2.margins.emplace_back("min_eig", out.report.middle_min_eig);
  out.ineq2.verdict = margins_verdict(out.ineq2.margins, tol, !in.warnings.empty());

  out.ineq1.name = CertName::refined_rsup_ineq1;
  out.ineq1.tolerance = tol;
  out.ineq1.inputs_digest = digest;
  out.ineq1.warnings = in.warnings;
  out.ineq1.margins.emplace_back("min_eig", out.report.gap_min_eig);
  out.ineq1.verdict = margins_verdict(out.ineq1.margins, tol, !in.warnings.empty());
  if (std::abs(out.report.gap_min_eig) <= opts.equality_band * tol &&
      std::abs(out.report.purity - 1.0) <= opts.equality_band * tol)
    out.ineq1.equality_flags["pure_state_equality"] = true;
  return out;
}

Corollary1Result certify_corollary1(const RefinedRsupReport& rep, double hbar,
                                    const CertifyOptions& opts, const std::string& digest) {
  const double tol = opts.eigen_tol * hbar;
  const double P = rep.purity;
  Corollary1Result out;
  struct Item {
    CertName name;
    Eigen::MatrixXd diff;
    Certificate* dst;
  };
  Eigen::MatrixXd a1 = rep.cov_W - P * (rep.cov_sq + 0.25 * rep.cov_ft_sq);
  Eigen::MatrixXd a2 = rep.cov_W - P * rep.cov_sq;
  Eigen::MatrixXd a3 = rep.cov_W - 0.25 * P * rep.cov_ft_sq;
  Item items[3] = {{CertName::refined_rsup_cor1a, a1, &out.a},
                   {CertName::refined_rsup_cor1b, a2, &out.b},
                   {CertName::refined_rsup_cor1c, a3, &out.c}};
  for (auto& it : items) {
    Certificate c;
    c.name = it.name;
    c.tolerance = tol;
    c.inputs_digest = digest;
    double m = min_eig_sym(it.diff);
    c.margins.emplace_back("min_eig", m);
    c.verdict = margins_verdict(c.margins, tol, false);
    if (std::abs(m) <= opts.equality_band * tol) c.equality_flags["equality"] = true;
    *it.dst = c;
  }
  return out;
}

Certificate certify_saturation(const Field& F, const CertifyOptions& opts) {
  const double hbar = F.grid.hbar;
  const double band = opts.equality_band * opts.eigen_tol * hbar;
  std::string digest = field_digest(F);

  RefinedResult refined = certify_refined_rsup(F, opts);
  Certificate c;
  c.name = CertName::saturation;
  c.tolerance = band;
  c.inputs_digest = digest;

  MomentReport rep;
  SymplecticSpectrum spec;
  try {
    rep = moment_report(F);
    spec = symplectic_spectrum(rep.covariance);
  } catch (const error& e) {
    return make_indeterminate(CertName::saturation, band, digest, e.what());
  }
  double dev = 0.0;
  for (double lam : spec.values) dev = std::max(dev, std::abs(lam - 0.5 * hbar));
  c.margins.emplace_back("spectrum_dev", -dev);

  bool refined_ok =
      refined.ineq1.verdict == Verdict::pass && refined.ineq2.verdict == Verdict::pass;
  c.margins.emplace_back("refined_ok", refined_ok ? 0.0 : -1.0);
  for (const auto& w : refined.ineq1.warnings) c.warnings.push_back(w);

  bool minimal = dev <= band;
  if (minimal && refined_ok) {
    c.verdict = Verdict::pass;
    c.margins.emplace_back("littlejohn_residual",
                           -symplectic_residual((2.0 / hbar) * rep.covariance, +1));
    Field G = sample_gaussian_profile(rep.covariance, rep.mean, F.grid);
    cplx mass = integrate(F);
    double max_g = 0.0, max_d = 0.0;
    for (std::size_t i = 0; i < G.values.size(); ++i) {
      max_g = std::max(max_g, std::abs(G.values[i]));
      max_d = std::max(max_d, std::abs(F.values[i] / mass - G.values[i]));
    }
    c.margins.emplace_back("gaussian_fit_residual", -max_d / max_g);
  } else if (minimal && (refined.ineq1.verdict == Verdict::indeterminate ||
                         refined.ineq2.verdict == Verdict::indeterminate)) {
    // spectrum is minimal but the refined inequality could not be measured
    c.verdict = Verdict::indeterminate;
    if (c.warnings.empty()) c.warnings.push_back("refined RSUP indeterminate at minimal spectrum");
  } else {
    c.verdict = Verdict::fail;
  }
  return c;
}

Certificate certify_purity_equality(const Field& F, const CertifyOptions& opts) {
  const double hbar = F.grid.hbar;
  const double band = opts.equality_band * opts.eigen_tol * hbar;
  RefinedResult refined = certify_refined_rsup(F, opts);
  Certificate c;
  c.name = CertName::purity_equality;
  c.tolerance = band;
  c.inputs_digest = refined.ineq1.inputs_digest;
  c.warnings = refined.ineq1.warnings;
  if (refined.ineq1.verdict == Verdict::indeterminate && refined.ineq1.margins.empty())
    return make_indeterminate(CertName::purity_equality, band, c.inputs_digest,
                              c.warnings.empty() ? "refined inputs unavailable" : c.warnings.front());
  c.margins.emplace_back("gap_abs", -std::abs(refined.report.gap_min_eig));
  c.margins.emplace_back("purity_dev", -std::abs(refined.report.purity - 1.0));
  c.verdict = margins_verdict(c.margins, band, !c.warnings.empty());
  if (c.verdict == Verdict::pass) c.equality_flags["pure_consistent"] = true;
  return c;
}

Certificate certify_heinig_smith(const Field& F, const CertifyOptions& opts) {
  const double hbar = F.grid.hbar;
  const int n = F.grid.dim_n;
  const double tol = opts.equality_band * opts.eigen_tol;  // log-domain, dimensionless
  std::string digest = field_digest(F);
  Certificate c;
  c.name = CertName::heinig_smith;
  c.tolerance = tol;
  c.inputs_digest = digest;
  try {
    MomentReport rs = moment_report(density_from_square(F, SquareRoute::direct));
    MomentReport rf = moment_report(density_from_square(F, SquareRoute::symplectic_ft));
    if (rs.boundary_mass_fraction > opts.boundary_warn)
      c.warnings.push_back("|F~|^2 boundary-shell mass exceeds threshold");
    if (rf.boundary_mass_fraction > opts.boundary_warn)
      c.warnings.push_back("|F_sigma F~|^2 boundary-shell mass exceeds threshold");
    double margin = log_det_spd(rs.covariance, "heinig_smith") +
                    log_det_spd(rf.covariance, "heinig_smith") -
                    4.0 * n * std::log(0.5 * hbar);
    c.margins.emplace_back("log_margin", margin);
    c.verdict = margins_verdict(c.margins, tol, !c.warnings.empty());
    if (std::abs(margin) <= tol) c.equality_flags["generalized_gaussian"] = true;
  } catch (const error& e) {
    return make_indeterminate(CertName::heinig_smith, tol, digest, e.what());
  }
  return c;
}

Certificate certify_hirschman_shannon_chain(const Field& F, const CertifyOptions& opts) {
  const double hbar = F.grid.hbar;
  const int n = F.grid.dim_n;
  const double tol = opts.equality_band * opts.eigen_tol;
  std::string digest = field_digest(F);
  Certificate c;
  c.name = CertName::hirschman_shannon_chain;
  c.tolerance = tol;
  c.inputs_digest = digest;
  try {
    MomentReport rep = moment_report(F);
    const double P = rep.purity;

    Field unit = normalize_l2(F);
    Field dens_sq = density_from_square(F, SquareRoute::direct);
    Field ft_h = hbar_ft_field(unit);
    Field dens_h = make_field(ft_h.grid, "density_hft");
    for (std::size_t i = 0; i < ft_h.values.size(); ++i)
      dens_h.values[i] = cplx{std::norm(ft_h.values[i]), 0.0};
    Field dens_s = density_from_square(F, SquareRoute::symplectic_ft);

    MomentReport rep_sq = moment_report(dens_sq);
    MomentReport rep_h = moment_report(dens_h);
    MomentReport rep_s = moment_report(dens_s);
    for (const MomentReport* r : {&rep_sq, &rep_h, &rep_s})
      if (r->boundary_mass_fraction > opts.boundary_warn)
        c.warnings.push_back("density boundary-shell mass exceeds threshold");

    EntropyValue E_sq = boltzmann_entropy(dens_sq, opts.clip_threshold, opts.mass_tol);
    EntropyValue E_h = boltzmann_entropy(dens_h, opts.clip_threshold, opts.mass_tol);
    EntropyValue E_s = boltzmann_entropy(dens_s, opts.clip_threshold, opts.mass_tol);
    if (std::abs(E_s.value - E_h.value) > tol) {
      std::ostringstream msg;
      msg << "E(|F_sigma.|^2)=" << E_s.value << " and E(|F_hbar.|^2)=" << E_h.value
          << " diverge beyond tolerance";
      c.warnings.push_back(msg.str());
    }

    // covariance conjugation consistency: Cov(|F_s|^2) = J^T Cov(|F_h|^2) J
    Eigen::MatrixXd J = standard_J(n);
    double conj_dev = (rep_s.covariance - J.transpose() * rep_h.covariance * J).cwiseAbs().maxCoeff();
    if (conj_dev > 100.0 * tol * std::max(1.0, rep_s.covariance.cwiseAbs().maxCoeff()))
      c.warnings.push_back("F_sigma/F_hbar covariance conjugation identity violated");

    double T1 = 2.0 * n * std::log(2.0 * kPi * std::numbers::e) +
                log_det_spd(rep.covariance, "hirschman_shannon");
    double T2 = 2.0 * n * std::log(2.0 * kPi * std::numbers::e * P) +
                0.5 * (log_det_spd(rep_sq.covariance, "hirschman_shannon") +
                       log_det_spd(rep_h.covariance, "hirschman_shannon"));
    double T3 = 2.0 * n * std::log(P) + E_sq.value + E_h.value;
    double T4 = 2.0 * n * std::log(kPi * hbar * std::numbers::e * P);

    c.margins.emplace_back("t1_minus_t2", T1 - T2);
    c.margins.emplace_back("t2_minus_t3", T2 - T3);
    c.margins.emplace_back("t3_minus_t4", T3 - T4);
    c.verdict = margins_verdict(c.margins, tol, !c.warnings.empty());
    bool all_eq = true;
    for (const auto& [k, m] : c.margins) all_eq = all_eq && std::abs(m) <= tol;
    if (all_eq) c.equality_flags["pure_gaussian_equality"] = true;
  } catch (const error& e) {
    return make_indeterminate(CertName::hirschman_shannon_chain, tol, digest, e.what());
  }
  return c;
}

Certificate certify_lieb_pure_chain(const WaveFunction& f, const CertifyOptions& opts) {
  const double hbar = f.grid.hbar;
  const int n = f.grid.dim_n;
  const double tol = opts.equality_band * opts.eigen_tol;
  Certificate c;
  c.name = CertName::lieb_pure_chain;
  c.tolerance = tol;
  try {
    Field W = wigner_transform(f);
    c.inputs_digest = field_digest(W);
    MomentReport rep = moment_report(W);
    Field dens = density_from_square(W, SquareRoute::direct);
    MomentReport rep_sq = moment_report(dens);
    EntropyValue E = boltzmann_entropy(dens, opts.clip_threshold, opts.mass_tol);

    double L1 = n * std::log(2.0 * kPi * std::numbers::e) +
                0.5 * log_det_spd(rep.covariance, "lieb_chain");
    double L2 = n * std::log(2.0 * kPi * std::numbers::e) +
                0.5 * log_det_spd(rep_sq.covariance, "lieb_chain");
    double L3 = E.value;
    double L4 = n * std::log(kPi * hbar * std::numbers::e / 2.0);
    c.margins.emplace_back("l1_minus_l2", L1 - L2);
    c.margins.emplace_back("l2_minus_l3", L2 - L3);
    c.margins.emplace_back("l3_minus_l4", L3 - L4);
    c.verdict = margins_verdict(c.margins, tol, false);
    if (std::abs(L3 - L4) <= tol) c.equality_flags["lieb_saturation"] = true;
  } catch (const error& e) {
    return make_indeterminate(CertName::lieb_pure_chain, tol, c.inputs_digest, e.what());
  }
  return c;
}

Certificate positivity_probe(const Field& F, int basis_size, const CertifyOptions& opts) {
  const double hbar = F.grid.hbar;
  const int n = F.grid.dim_n;
  std::string digest = field_digest(F);
  const double tol = opts.eigen_tol;
  Certificate c;
  c.name = CertName::positivity_probe;
  c.tolerance = tol;
  c.inputs_digest = digest;

  if (n != 1) throw error("positivity_probe: implemented for n = 1");
  if (basis_size < 1) throw error("positivity_probe: basis size must be >= 1");
  if (!F.grid.is_wigner_reciprocal())
    throw error("positivity_probe: grid must be Wigner-reciprocal so the probe pairings share it");

  cplx mass = integrate(F);
  if (std::abs(mass - cplx{1.0, 0.0}) > opts.mass_tol)
    c.warnings.push_back("field mass deviates from 1; probe built on the normalized field");
  if (!is_effectively_real(F)) c.warnings.push_back("field is not real within tolerance");

  ConfigGrid cgrid = make_config_grid(1, {F.grid.x_axes[0]}, hbar);
  std::vector<WaveFunction> h;
  h.reserve(basis_size);
  for (int k = 0; k < basis_size; ++k) h.push_back(make_hermite_state(k, cgrid));
  if (boundary_mass_fraction(h.back()) > opts.boundary_warn)
    throw error("positivity_probe: basis size exceeds the grid-resolvable Hermite order");

  const double scale_rho = std::pow(2.0 * kPi * hbar, n);
  Eigen::MatrixXcd rho(basis_size, basis_size);
  for (int j = 0; j < basis_size; ++j) {
    for (int k = j; k < basis_size; ++k) {
      Field Wjk = cross_wigner(h[j], h[k]);
      if (!Wjk.grid.approx_equal(F.grid))
        throw error("positivity_probe: cross-Wigner grid does not match the field grid");
      KahanSumC acc;
      for (std::size_t i = 0; i < F.values.size(); ++i)
        acc.add((F.values[i] / mass) * std::conj(Wjk.values[i]));
      cplx v = scale_rho * acc.value() * F.grid.cell_volume();
      rho(j, k) = v;
      rho(k, j) = std::conj(v);
    }
  }

  HermitianVerdict hv = hermitian_psd_check(rho, tol);
  c.margins.emplace_back("min_eig", hv.min_eigenvalue);
  if (hv.min_eigenvalue < -hv.tolerance) {
    c.verdict = Verdict::fail;  // conclusive non-Wignerness regardless of warnings
  } else {
    c.verdict = c.warnings.empty() ? Verdict::pass : Verdict::indeterminate;
  }
  c.tolerance = hv.tolerance;
  return c;
}

Certificate certify_symplectic_invariance(const Field& F, const Eigen::MatrixXd& S,
                                          const CertifyOptions& opts) {
  const double hbar = F.grid.hbar;
  const double tol = opts.interp_tol * hbar;
  std::string digest = field_digest(F);

  bool sympl = is_symplectic(S, 1e-8);
  bool anti = is_anti_symplectic(S, 1e-8);
  if (!sympl && !anti)
    throw error("certify_symplectic_invariance: S is neither symplectic nor anti-symplectic");

  Certificate c;
  c.name = CertName::symplectic_invariance;
  c.tolerance = tol;
  c.inputs_digest = digest;

  RefinedResult base = certify_refined_rsup(F, opts);
  Field FS = resample_linear_map(F, S);
  RefinedResult moved = certify_refined_rsup(FS, opts);
  for (const auto& w : moved.ineq1.warnings) c.warnings.push_back(w);

  // expected covariance blocks after F -> F o S: C -> S^{-1} C S^{-T}
  Eigen::MatrixXd Sinv = S.inverse();
  RefinedRsupReport expected = base.report;
  expected.cov_W = Sinv * base.report.cov_W * Sinv.transpose();
  expected.cov_sq = Sinv * base.report.cov_sq * Sinv.transpose();
  expected.cov_ft_sq = Sinv * base.report.cov_ft_sq * Sinv.transpose();
  Eigen::MatrixXcd M1 = rsup_matrix(expected.cov_W, hbar);
  Eigen::MatrixXcd M2 = expected.purity * rsup_matrix(expected.cov_sq + 0.25 * expected.cov_ft_sq, hbar);
  double exp_lhs = min_eig_herm(M1);
  double exp_mid = min_eig_herm(M2);
  double exp_gap = min_eig_herm(M1 - M2);

  // verdict agreement judged at the interpolation tolerance
  auto verdict_at = [&](double gap, double mid) {
    return (gap >= -tol && mid >= -tol) ? Verdict::pass : Verdict::fail;
  };
  Verdict vb = verdict_at(base.report.gap_min_eig, base.report.middle_min_eig);
  Verdict vm = verdict_at(moved.report.gap_min_eig, moved.report.middle_min_eig);

  c.margins.emplace_back("verdict_match", vb == vm ? 0.0 : -1.0);
  c.margins.emplace_back("lhs_dev", -std::abs(exp_lhs - moved.report.lhs_min_eig));
  c.margins.emplace_back("middle_dev", -std::abs(exp_mid - moved.report.middle_min_eig));
  c.margins.emplace_back("gap_dev", -std::abs(exp_gap - moved.report.gap_min_eig));
  c.verdict = margins_verdict(c.margins, tol, !c.warnings.empty());
  return c;
}

DilationResult dilation_to_rsup(const Field& F, const CertifyOptions& opts) {
  const double hbar = F.grid.hbar;
  MomentReport rep = moment_report(F);
  SymplecticSpectrum spec = symplectic_spectrum(rep.covariance);  // throws if not SPD
  double lam1 = spec.values.front();
  DilationResult out;
  if (lam1 >= 0.5 * hbar - opts.eigen_tol * hbar) {
    out.mu = 1.0;
    out.cert = certify_rsup(rep, hbar, opts, field_digest(F));
  } else {
    out.mu = std::sqrt(2.0 * lam1 / hbar) * (1.0 - opts.dilation_safety);
    Field G = dilate(F, out.mu);
    out.cert = certify_rsup(moment_report(G), hbar, opts, field_digest(G));
  }
  return out;
}

}  // namespace wigcert
