#include "wigcert/acceptance.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "wigcert/certify.hpp"
#include "wigcert/moments.hpp"
#include "wigcert/states.hpp"
#include "wigcert/symplectic.hpp"
#include "wigcert/transforms.hpp"

namespace wigcert {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

class Checker {
public:
  void require(bool cond, const std::string& what) {
    ++total_;
    if (!cond) {
      ++failed_;
      if (!msg_.str().empty()) msg_ << "; ";
      msg_ << what;
    }
  }
  void close(double got, double want, double tol, const std::string& what) {
    std::ostringstream os;
    os.precision(10);
    os << what << " (got " << got << ", want " << want << " +- " << tol << ")";
    require(std::abs(got - want) <= tol, os.str());
  }
  bool ok() const { return failed_ == 0; }
  std::string detail() const {
    std::ostringstream os;
    os << (total_ - failed_) << "/" << total_ << " checks";
    if (failed_ > 0) os << " [" << msg_.str() << "]";
    return os.str();
  }

private:
  int total_ = 0;
  int failed_ = 0;
  std::ostringstream msg_;
};

double max_abs(const Field& F) {
  double m = 0.0;
  for (const cplx& v : F.values) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const Field& A, const Field& B) {
  double m = 0.0;
  for (std::size_t i = 0; i < A.values.size(); ++i)
    m = std::max(m, std::abs(A.values[i] - B.values[i]));
  return m;
}

double margin_of(const Certificate& c, const std::string& key) {
  for (const auto& [k, v] : c.margins)
    if (k == key) return v;
  throw error("margin not found: " + key);
}

// random polynomial-times-Gaussian field, smooth and well inside the grid
Field random_smooth_field(const PhaseSpaceGrid& grid, std::mt19937_64& rng, bool complex_coeffs) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> uq(0.5, 1.4);
  const double hbar = grid.hbar;
  double qx = uq(rng) / hbar, qp = uq(rng) / hbar, qc = 0.3 * u(rng) / hbar;
  double x0 = 0.4 * u(rng), p0 = 0.4 * u(rng);
  cplx c[6];
  for (auto& ci : c) ci = complex_coeffs ? cplx(u(rng), u(rng)) : cplx(u(rng), 0.0);
  c[0] += 1.5;  // keep the mass away from zero

  Field F = make_field(grid, "random_smooth");
  Shape sh(grid.dims());
  std::vector<double> z;
  for (std::size_t f = 0; f < F.values.size(); ++f) {
    grid_point(grid, sh, f, z);
    double dx = z[0] - x0, dp = z[1] - p0;
    double quad = qx * dx * dx + qp * dp * dp + 2.0 * qc * dx * dp;
    if (quad < 0.2 * (qx * dx * dx + qp * dp * dp))  // keep SPD-ish exponent
      quad = 0.2 * (qx * dx * dx + qp * dp * dp);
    cplx poly = c[0] + c[1] * dx + c[2] * dp + c[3] * dx * dp + c[4] * dx * dx + c[5] * dp * dp;
    F.values[f] = poly * std::exp(-0.5 * quad);
  }
  return F;
}

Eigen::Matrix2d random_sp1(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> th(-kPi, kPi);
  std::uniform_real_distribution<double> sc(0.8, 1.25);
  auto rot = [](double t) {
    Eigen::Matrix2d R;
    R << std::cos(t), std::sin(t), -std::sin(t), std::cos(t);
    return R;
  };
  double lam = sc(rng);
  Eigen::Matrix2d D = Eigen::Vector2d(lam, 1.0 / lam).asDiagonal();
  return rot(th(rng)) * D * rot(th(rng));
}

// ---- criteria ----

AcceptanceResult criterion1_disc() {
  Checker ck;
  const double hbar = 1.0;
  const double R = 1.5;

  double err128 = 0.0, err512 = 0.0;
  for (int N : {128, 256, 512}) {
    PhaseSpaceGrid g = make_square_grid(1, N, 6.0, hbar);
    MomentReport rep = moment_report(make_disc_indicator(R, g));
    double want = R * R / 4.0;
    double err = (rep.covariance - want * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() / want;
    ck.require(err <= 0.02, "disc Cov within 2% at N=" + std::to_string(N));
    if (N == 128) err128 = err;
    if (N == 512) err512 = err;
  }
  ck.require(err512 < err128, "disc Cov error improves under refinement");

  // RSUP verdict flips at R* = sqrt(2 hbar)
  PhaseSpaceGrid g = make_square_grid(1, 256, 6.0, hbar);
  double prevR = 0.0, prevM = 0.0, crossing = -1.0;
  for (int i = 0; i <= 40; ++i) {
    double r = 1.0 + i * (2.0 - 1.0) / 40.0;
    MomentReport rep = moment_report(make_disc_indicator(r, g));
    SymplecticSpectrum spec = symplectic_spectrum(rep.covariance);
    double m = spec.values[0] - 0.5 * hbar;
    if (i > 0 && prevM < 0.0 && m >= 0.0)
      crossing = prevR + (r - prevR) * (-prevM) / (m - prevM);
    prevR = r;
    prevM = m;
  }
  double want = std::sqrt(2.0 * hbar);
  ck.require(crossing > 0.0, "RSUP margin crosses zero in the sweep");
  if (crossing > 0.0) ck.close(crossing, want, 0.02 * want, "RSUP flip radius");
  return {"1 disc indicator (Example Review9)", ck.ok(), ck.detail()};
}

AcceptanceResult criterion2_final1() {
  Checker ck;
  const double hbar = 1.0;
  PhaseSpaceGrid g = make_square_grid(1, 256, 6.0, hbar);
  Field F = make_example_final1(g);

  MomentReport rep = moment_report(F);
  ck.close(std::abs(rep.mass), 1.0, 1e-8, "mass");
  ck.require((rep.covariance - 0.5 * hbar * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() <= 1e-6,
             "Cov(F) = (hbar/2) I within 1e-6");
  ck.close(rep.purity, 10.0, 1e-4, "purity");

  MomentReport rep_sq = moment_report(density_from_square(F));
  ck.require((rep_sq.covariance - (11.0 * hbar / 80.0) * Eigen::Matrix2d::Identity())
                     .cwiseAbs()
                     .maxCoeff() <= 1e-5,
             "Cov(|F~|^2) = (11 hbar/80) I within 1e-5");

  Certificate rsup = certify_rsup(rep, hbar);
  ck.require(rsup.verdict == Verdict::pass, "certify_rsup = pass");

  RefinedResult refined = certify_refined_rsup(F);
  Corollary1Result cor = certify_corollary1(refined.report, hbar);
  ck.require(cor.b.verdict == Verdict::fail, "corollary-1 check 2 fails");
  ck.close(margin_of(cor.b, "min_eig"), -(11.0 * hbar / 8.0 - 0.5 * hbar), 1e-4,
           "corollary-1 check 2 margin");
  return {"2 Example Final1", ck.ok(), ck.detail()};
}

AcceptanceResult criterion3_final2() {
  Checker ck;
  const double hbar = 1.0;
  PhaseSpaceGrid g = make_self_dual_grid(1, 256, hbar);  // F_sigma maps this grid onto itself
  Field F = make_example_final2(g);

  Field G = symplectic_ft(F);
  ck.require(G.grid.approx_equal(F.grid), "F_sigma output grid matches");
  ck.require(max_abs_diff(G, scale(F, -1.0)) <= 1e-3 * max_abs(F), "F_sigma F = -F within 1e-3");

  MomentReport rep = moment_report(F);
  ck.require((rep.covariance - 3.0 * hbar * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() <= 1e-3,
             "Cov(F) = 3 hbar I within 1e-3");
  ck.close(rep.purity, 0.5, 1e-3, "purity");
  for (SquareRoute route : {SquareRoute::direct, SquareRoute::symplectic_ft}) {
    MomentReport rd = moment_report(density_from_square(F, route));
    ck.require((rd.covariance - 1.5 * hbar * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() <= 1e-3,
               "density covariance = (3 hbar/2) I within 1e-3");
  }

  RefinedResult refined = certify_refined_rsup(F);
  ck.require(refined.ineq1.verdict == Verdict::pass && refined.ineq2.verdict == Verdict::pass,
             "refined RSUP passes");

  Field W0 = make_gaussian_pure_wigner(0.5 * hbar * Eigen::Matrix2d::Identity(),
                                       Eigen::Vector2d::Zero(), g);
  // paper states -hbar/9; the dimensionally consistent closed form is -1/(9 pi hbar)
  cplx pairing = integrate_product(F, W0);
  ck.close(pairing.real(), -1.0 / (9.0 * kPi * hbar), 1e-3, "int F . Wf0");
  ck.require(std::abs(pairing.imag()) <= 1e-12, "pairing is real");

  Certificate probe = positivity_probe(F, 8);
  ck.require(probe.verdict == Verdict::fail, "positivity probe fails (conclusive)");
  ck.require(margin_of(probe, "min_eig") <= -2.0 / 9.0 + 5e-3,
             "probe min eigenvalue at most (h0|rho h0) = -2/9");
  return {"3 Example Final2", ck.ok(), ck.detail()};
}

AcceptanceResult criterion4_gaussian_cluster() {
  Checker ck;
  const double hbar = 1.0;
  PhaseSpaceGrid g = make_self_dual_grid(1, 256, hbar);

  Eigen::Matrix2d covs[2];
  covs[0] = 0.5 * hbar * Eigen::Matrix2d::Identity();
  covs[1] = Eigen::Vector2d(hbar, hbar / 4.0).asDiagonal();  // squeezed, (2/hbar)Cov in Sp(1)

  for (const Eigen::Matrix2d& cov : covs) {
    Field W = make_gaussian_pure_wigner(cov, Eigen::Vector2d::Zero(), g);
    MomentReport rep = moment_report(W);
    ck.close(rep.purity, 1.0, 1e-6, "purity = 1");

    RefinedResult refined = certify_refined_rsup(W);
    ck.require(std::abs(refined.report.gap_min_eig) <= 1e-6 * hbar, "M1 - M2 min eigenvalue = 0");

    Certificate sat = certify_saturation(W);
    ck.require(sat.verdict == Verdict::pass, "saturation pass");
    if (sat.verdict == Verdict::pass)
      ck.require(-margin_of(sat, "littlejohn_residual") <= 1e-8, "(2/hbar)Cov symplectic to 1e-8");

    Certificate hs = certify_heinig_smith(W);
    ck.close(margin_of(hs, "log_margin"), 0.0, 1e-5, "Heinig-Smith log-margin");

    Certificate chain = certify_hirschman_shannon_chain(W);
    ck.require(chain.verdict != Verdict::indeterminate, "chain determinate");
    for (const char* key : {"t1_minus_t2", "t2_minus_t3", "t3_minus_t4"})
      ck.close(margin_of(chain, key), 0.0, 1e-4, std::string("chain equality ") + key);
  }

  ConfigGrid cg = make_self_dual_config_grid(1, 256, hbar);
  WaveFunction f0 = make_hermite_state(0, cg);
  Certificate lieb = certify_lieb_pure_chain(f0);
  ck.require(lieb.verdict == Verdict::pass, "Lieb chain pass");
  ck.close(margin_of(lieb, "l3_minus_l4"), 0.0, 1e-4, "Lieb final equality");
  // E(|W~f0|^2) = n log(pi hbar e / 2); the chain's L4 pins the constant
  Field dens = density_from_square(wigner_transform(f0));
  EntropyValue E = boltzmann_entropy(dens);
  ck.close(E.value, std::log(kPi * hbar * kE / 2.0), 1e-4, "E(|W~f0|^2)");
  return {"4 pure Gaussian equality cluster", ck.ok(), ck.detail()};
}

AcceptanceResult criterion5_mixture() {
  Checker ck;
  const double hbar = 1.0;
  ConfigGrid cg = make_self_dual_config_grid(1, 256, hbar);
  Field W = wigner_of_mixture({0.5, 0.5}, {make_hermite_state(0, cg), make_hermite_state(1, cg)});

  MomentReport rep = moment_report(W);
  ck.close(rep.purity, 0.5, 1e-5, "purity = 1/2");

  CertifyOptions opts;
  RefinedResult refined = certify_refined_rsup(W, opts);
  ck.require(refined.ineq1.verdict == Verdict::pass && refined.ineq2.verdict == Verdict::pass,
             "refined RSUP passes");
  ck.require(refined.report.gap_min_eig > 10.0 * opts.eigen_tol * hbar,
             "M1 - M2 strictly positive (mixture)");

  Certificate chain = certify_hirschman_shannon_chain(W);
  ck.require(chain.verdict == Verdict::pass, "chain margins all nonnegative");
  for (const char* key : {"t1_minus_t2", "t2_minus_t3", "t3_minus_t4"})
    ck.require(margin_of(chain, key) >= -1e-6, std::string("chain margin ") + key + " >= 0");
  return {"5 mixture (h0+h1)/2", ck.ok(), ck.detail()};
}

AcceptanceResult criterion6_properties() {
  Checker ck;
  const double hbar = 1.0;
  std::mt19937_64 rng(20250809);

  // Plancherel + involution of the symplectic Fourier transform
  PhaseSpaceGrid g128 = make_self_dual_grid(1, 128, hbar);
  for (int t = 0; t < 3; ++t) {
    Field F = random_smooth_field(g128, rng, true);
    Field G = symplectic_ft(F);
    ck.require(std::abs(l2_norm_sq(G) - l2_norm_sq(F)) <= 1e-8 * l2_norm_sq(F), "Plancherel 1e-8");
    Field FF = symplectic_ft(G);
    ck.require(max_abs_diff(FF, F) <= 1e-8 * max_abs(F), "involution 1e-8");
  }

  // Wigner marginals
  {
    ConfigGrid cg = make_self_dual_config_grid(1, 256, hbar);
    WaveFunction f = make_hermite_state(0, cg);
    WaveFunction h2 = make_hermite_state(2, cg);
    for (int i = 0; i < cg.axes[0].points; ++i) f.values[i] += 0.4 * h2.values[i];
    f = normalize_l2(f);
    Field W = wigner_transform(f);
    const int N = cg.axes[0].points;
    double dp = W.grid.p_axes[0].step();
    double worst = 0.0, scale0 = 0.0;
    for (int i = 0; i < N; ++i) scale0 = std::max(scale0, std::norm(f.values[i]));
    for (int i = 0; i < N; ++i) {
      KahanSum row;
      for (int m = 0; m < N; ++m) row.add(W.values[static_cast<std::size_t>(i) * N + m].real());
      worst = std::max(worst, std::abs(row.value() * dp - std::norm(f.values[i])));
    }
    ck.require(worst <= 1e-6 * scale0, "x-marginal recovers |f|^2 (1e-6)");

    WaveFunction fh = hbar_ft(f);
    double dx = W.grid.x_axes[0].step();
    worst = 0.0;
    for (int m = 0; m < N; ++m) {
      KahanSum col;
      for (int i = 0; i < N; ++i) col.add(W.values[static_cast<std::size_t>(i) * N + m].real());
      worst = std::max(worst, std::abs(col.value() * dx - std::norm(fh.values[m])));
    }
    ck.require(worst <= 1e-6 * scale0, "p-marginal recovers |F_hbar f|^2 (1e-6)");
  }

  // Moyal identity eqERSUP-style on 20 random smooth fields
  {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int ok_count = 0;
    for (int t = 0; t < 20; ++t) {
      Field F = random_smooth_field(g128, rng, true);
      LinearSymbol a;
      a.eta = {cplx(u(rng), u(rng)), cplx(u(rng), u(rng))};
      a.z0 = {0.3 * u(rng), 0.3 * u(rng)};
      a.hbar = hbar;
      Field left = moyal_linear_left(a, F);
      Field right = moyal_linear_right(a, F);
      double lhs = 0.5 * (l2_norm_sq(left) + l2_norm_sq(right));

      Shape sh(F.grid.dims());
      std::vector<double> z;
      KahanSum t1;
      for (std::size_t i = 0; i < F.values.size(); ++i) {
        grid_point(F.grid, sh, i, z);
        t1.add(std::norm(linear_symbol_at(a, z)) * std::norm(F.values[i]));
      }
      Field G = symplectic_ft(F);
      Shape shg(G.grid.dims());
      KahanSum t2;
      for (std::size_t i = 0; i < G.values.size(); ++i) {
        grid_point(G.grid, shg, i, z);
        cplx ez = a.eta[0] * z[0] + a.eta[1] * z[1];
        t2.add(std::norm(ez) * std::norm(G.values[i]));
      }
      double rhs = t1.value() * F.grid.cell_volume() + 0.25 * t2.value() * G.grid.cell_volume();
      if (std::abs(lhs - rhs) <= 1e-5 * std::abs(rhs)) ++ok_count;
    }
    ck.require(ok_count == 20, "Moyal identity on 20 random fields (1e-5 relative), passed " +
                                   std::to_string(ok_count));
  }

  // symplectic invariance certificates: 5 random S in Sp(1) plus T.S
  {
    PhaseSpaceGrid g = make_self_dual_grid(1, 256, hbar);
    Field W = make_gaussian_pure_wigner(0.5 * hbar * Eigen::Matrix2d::Identity(),
                                        Eigen::Vector2d::Zero(), g);
    ConfigGrid cg = make_self_dual_config_grid(1, 256, hbar);
    Field M = wigner_of_mixture({0.5, 0.5}, {make_hermite_state(0, cg), make_hermite_state(1, cg)});
    for (int t = 0; t < 5; ++t) {
      Eigen::Matrix2d S = random_sp1(rng);
      const Field& target = (t % 2 == 0) ? W : M;
      Certificate c = certify_symplectic_invariance(target, S);
      ck.require(c.verdict == Verdict::pass, "symplectic invariance for random S #" + std::to_string(t));
    }
    Eigen::Matrix2d TS = time_reversal(1) * random_sp1(rng);
    Certificate c = certify_symplectic_invariance(M, TS);
    ck.require(c.verdict == Verdict::pass, "anti-symplectic invariance for T.S");
  }

  // implication: refined (both) pass => rsup pass, across the corpus
  {
    PhaseSpaceGrid g = make_self_dual_grid(1, 256, hbar);
    PhaseSpaceGrid gd = make_square_grid(1, 256, 6.0, hbar);
    ConfigGrid cg = make_self_dual_config_grid(1, 256, hbar);
    std::vector<Field> corpus;
    corpus.push_back(make_gaussian_pure_wigner(0.5 * hbar * Eigen::Matrix2d::Identity(),
                                               Eigen::Vector2d::Zero(), g));
    corpus.push_back(make_gaussian_pure_wigner(Eigen::Vector2d(hbar, hbar / 4.0).asDiagonal(),
                                               Eigen::Vector2d::Zero(), g));
    corpus.push_back(wigner_of_mixture({0.5, 0.5},
                                       {make_hermite_state(0, cg), make_hermite_state(1, cg)}));
    corpus.push_back(make_example_final1(gd));
    corpus.push_back(make_example_final2(g));
    corpus.push_back(make_disc_indicator(1.0, gd));
    corpus.push_back(make_disc_indicator(1.6, gd));
    corpus.push_back(make_disc_indicator(2.2, gd));
    corpus.push_back(dilate(corpus[0], 0.8));
    for (int t = 0; t < 3; ++t) corpus.push_back(random_smooth_field(g, rng, false));

    int exceptions = 0;
    for (const Field& F : corpus) {
      RefinedResult r = certify_refined_rsup(F);
      if (r.ineq1.verdict == Verdict::pass && r.ineq2.verdict == Verdict::pass) {
        Certificate rsup = certify_rsup(moment_report(F), hbar);
        if (rsup.verdict == Verdict::fail) ++exceptions;
      }
    }
    ck.require(exceptions == 0, "refined => RSUP with zero exceptions");
  }

  // det(B) = prod lambda_j^2 on 100 random SPD matrices
  {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> dim(1, 3);
    int ok_count = 0;
    for (int t = 0; t < 100; ++t) {
      int n = dim(rng);
      Eigen::MatrixXd M(2 * n, 2 * n);
      for (int r = 0; r < 2 * n; ++r)
        for (int c = 0; c < 2 * n; ++c) M(r, c) = u(rng);
      Eigen::MatrixXd B = M.transpose() * M + 0.1 * Eigen::MatrixXd::Identity(2 * n, 2 * n);
      SymplecticSpectrum spec = symplectic_spectrum(B);
      double prod = 1.0;
      for (double lam : spec.values) prod *= lam * lam;
      if (std::abs(prod - B.determinant()) <= 1e-9 * std::abs(B.determinant())) ++ok_count;
    }
    ck.require(ok_count == 100, "det = prod lambda^2 on 100 SPD draws, passed " +
                                    std::to_string(ok_count));
  }
  return {"6 property suites", ck.ok(), ck.detail()};
}

AcceptanceResult criterion7_dilation() {
  Checker ck;
  const double hbar = 1.0;
  PhaseSpaceGrid gd = make_square_grid(1, 256, 6.0, hbar);
  PhaseSpaceGrid g = make_self_dual_grid(1, 256, hbar);

  std::vector<Field> subhbar;
  subhbar.push_back(make_disc_indicator(1.0, gd));
  subhbar.push_back(make_disc_indicator(1.2, gd));
  subhbar.push_back(dilate(make_gaussian_pure_wigner(0.5 * hbar * Eigen::Matrix2d::Identity(),
                                                     Eigen::Vector2d::Zero(), g),
                           2.0));  // Cov = hbar/8 I
  for (std::size_t i = 0; i < subhbar.size(); ++i) {
    DilationResult d = dilation_to_rsup(subhbar[i]);
    ck.require(d.mu < 1.0, "mu < 1 for sub-hbar field #" + std::to_string(i));
    ck.require(d.cert.verdict == Verdict::pass, "dilated field passes RSUP #" + std::to_string(i));
  }

  Field F1 = make_example_final1(gd);
  DilationResult d1 = dilation_to_rsup(F1);
  ck.require(d1.mu == 1.0, "Example Final1 needs no dilation (RSUP already holds)");
  ck.require(d1.cert.verdict == Verdict::pass, "Example Final1 RSUP pass");

  for (double mu : {1.0, 0.9, 0.8, 0.7}) {
    Field Fm = dilate(F1, mu);
    RefinedResult refined = certify_refined_rsup(Fm);
    Corollary1Result cor = certify_corollary1(refined.report, hbar);
    bool refined_fails = refined.ineq1.verdict == Verdict::fail ||
                         refined.ineq2.verdict == Verdict::fail ||
                         cor.b.verdict == Verdict::fail;
    std::ostringstream what;
    what << "Final1 still fails refined RSUP after dilation mu=" << mu;
    ck.require(refined_fails, what.str());
  }
  return {"7 dilation lemma", ck.ok(), ck.detail()};
}

}  // namespace

bool run_acceptance(std::ostream& os, std::vector<AcceptanceResult>* out) {
  std::vector<AcceptanceResult> results;
  results.push_back(criterion1_disc());
  results.push_back(criterion2_final1());
  results.push_back(criterion3_final2());
  results.push_back(criterion4_gaussian_cluster());
  results.push_back(criterion5_mixture());
  results.push_back(criterion6_properties());
  results.push_back(criterion7_dilation());

  bool all = true;
  for (const AcceptanceResult& r : results) {
    os << (r.pass ? "PASS" : "FAIL") << "  criterion " << r.name << "  (" << r.detail << ")\n";
    all = all && r.pass;
  }
  os << (all ? "acceptance: ALL CRITERIA PASS" : "acceptance: FAILURES PRESENT") << "\n";
  if (out) *out = std::move(results);
  return all;
}

}  // namespace wigcert
