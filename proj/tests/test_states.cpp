#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "wigcert/certify.hpp"
#include "wigcert/moments.hpp"
#include "wigcert/states.hpp"
#include "wigcert/symplectic.hpp"
#include "wigcert/transforms.hpp"

using namespace wigcert;
using oracle::kPi;

TEST_CASE("gaussian_pure: ground state matches the closed form") {
  for (double hbar : {1.0, 0.5}) {
    PhaseSpaceGrid g = make_square_grid(1, 256, 6.0 * std::sqrt(hbar), hbar);
    Field W = make_gaussian_pure_wigner(0.5 * hbar * Eigen::Matrix2d::Identity(),
                                        Eigen::Vector2d::Zero(), g);
    Shape sh(g.dims());
    std::vector<double> z;
    double worst = 0.0;
    for (std::size_t i = 0; i < W.values.size(); ++i) {
      grid_point(g, sh, i, z);
      worst = std::max(worst, std::abs(W.values[i] - oracle::wigner_ground(z[0], z[1], hbar)));
    }
    CHECK(worst <= 1e-12);
    MomentReport rep = moment_report(W);
    CHECK(std::abs(rep.mass - cplx{1.0, 0.0}) <= 1e-8);
    CHECK(rep.purity == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("gaussian_pure: squeezed state is pure; non-symplectic covariance rejected") {
  double hbar = 1.0;
  PhaseSpaceGrid g = make_square_grid(1, 256, 6.0, hbar);
  Field sq = make_gaussian_pure_wigner(Eigen::Vector2d(hbar, hbar / 4.0).asDiagonal(),
                                       Eigen::Vector2d::Zero(), g);
  CHECK(moment_report(sq).purity == doctest::Approx(1.0).epsilon(1e-8));

  CHECK_THROWS_AS(make_gaussian_pure_wigner(hbar * Eigen::Matrix2d::Identity(),
                                            Eigen::Vector2d::Zero(), g),
                  error);  // 2 Cov/hbar = 2I not symplectic
}

TEST_CASE("hermite states: orthonormal to 1e-10 through k = 8") {
  ConfigGrid cg = make_self_dual_config_grid(1, 256, 1.0);
  std::vector<WaveFunction> h;
  for (int k = 0; k <= 8; ++k) h.push_back(make_hermite_state(k, cg));
  for (int j = 0; j <= 8; ++j)
    for (int k = j; k <= 8; ++k) {
      KahanSumC acc;
      for (std::size_t i = 0; i < h[j].values.size(); ++i)
        acc.add(std::conj(h[j].values[i]) * h[k].values[i]);
      cplx ip = acc.value() * cg.axes[0].step();
      CHECK(std::abs(ip - (j == k ? cplx{1.0, 0.0} : cplx{0.0, 0.0})) <= 1e-10);
    }
  CHECK_THROWS_AS(make_hermite_state(400, cg), error);  // beyond grid-resolvable order
}

TEST_CASE("disc indicator: mass, covariance, extent validation") {
  PhaseSpaceGrid g = make_square_grid(1, 256, 6.0, 1.0);
  for (double R : {1.0, 1.7, 2.4}) {
    Field disc = make_disc_indicator(R, g);
    CHECK(std::abs(integrate(disc) - 1.0) <= 0.02);
    MomentReport rep = moment_report(disc);
    CHECK((rep.covariance - R * R / 4.0 * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() <=
          0.02 * R * R / 4.0);
  }
  CHECK_THROWS_AS(make_disc_indicator(7.0, g), error);
  CHECK_THROWS_AS(make_disc_indicator(-1.0, g), error);
}

TEST_CASE("disc indicator: RSUP margin vanishes at R = sqrt(2 hbar)") {
  double hbar = 1.0;
  PhaseSpaceGrid g = make_square_grid(1, 256, 6.0, hbar);
  MomentReport rep = moment_report(make_disc_indicator(std::sqrt(2.0 * hbar), g));
  double lam1 = symplectic_spectrum(rep.covariance).values.front();
  CHECK(std::abs(lam1 - 0.5 * hbar) <= 0.02 * hbar);
}

TEST_CASE("example_final2: symplectic-FT eigenfield with eigenvalue -1") {
  PhaseSpaceGrid g = make_self_dual_grid(1, 256, 1.0);
  Field F = make_example_final2(g);
  Field G = symplectic_ft(F);
  double scale0 = 0.0, dev = 0.0;
  for (std::size_t i = 0; i < F.values.size(); ++i) {
    scale0 = std::max(scale0, std::abs(F.values[i]));
    dev = std::max(dev, std::abs(G.values[i] + F.values[i]));
  }
  CHECK(dev <= 1e-5 * scale0);
}

TEST_CASE("example_final2: pairing with the oscillator ground state") {
  for (double hbar : {1.0, 0.5}) {
    PhaseSpaceGrid g = make_square_grid(1, 256, 6.0 * std::sqrt(hbar), hbar);
    Field F = make_example_final2(g);
    Field W0 = make_gaussian_pure_wigner(0.5 * hbar * Eigen::Matrix2d::Identity(),
                                         Eigen::Vector2d::Zero(), g);
    cplx pairing = integrate_product(F, W0);
    // closed form -1/(9 pi hbar); equivalently int F e^{-|z|^2/hbar} = -1/9
    CHECK(pairing.real() == doctest::Approx(-1.0 / (9.0 * kPi * hbar)).epsilon(1e-6));
  }
}

TEST_CASE("tensor products") {
  double hbar = 1.0;
  PhaseSpaceGrid g1 = make_square_grid(1, 32, 6.0, hbar);
  Field W1 = make_gaussian_pure_wigner(0.5 * hbar * Eigen::Matrix2d::Identity(),
                                       Eigen::Vector2d::Zero(), g1);
  Field W2 = make_tensor_product({W1, W1});
  CHECK(W2.grid.dim_n == 2);
  MomentReport rep = moment_report(W2);
  CHECK(std::abs(rep.mass - cplx{1.0, 0.0}) <= 1e-8);
  CHECK((rep.covariance - 0.5 * hbar * Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() <=
        1e-8);

  Field disc = make_disc_indicator(1.5, g1);
  Field disc2 = make_tensor_product({disc, disc});
  MomentReport drep = moment_report(disc2);
  CHECK(std::abs(drep.covariance(0, 0) - 1.5 * 1.5 / 4.0) <= 0.03);
  CHECK(std::abs(drep.covariance(0, 1)) <= 1e-10);

  CHECK_THROWS_AS(make_tensor_product({W1, W1, W1}), error);  // budget
  CHECK_THROWS_AS(make_tensor_product({}), error);
}

TEST_CASE("generator Gaussians saturate Heinig-Smith (generalized-Gaussian detector)") {
  double hbar = 1.0;
  PhaseSpaceGrid g = make_self_dual_grid(1, 256, hbar);
  for (Eigen::Matrix2d cov : {Eigen::Matrix2d(0.5 * hbar * Eigen::Matrix2d::Identity()),
                              Eigen::Matrix2d(Eigen::Vector2d(hbar, hbar / 4.0).asDiagonal())}) {
    Field W = make_gaussian_pure_wigner(cov, Eigen::Vector2d::Zero(), g);
    Certificate hs = certify_heinig_smith(W);
    CHECK(hs.verdict == Verdict::pass);
    CHECK(hs.equality_flags.count("generalized_gaussian") == 1);
  }
}

TEST_CASE("mixture generator self-test: mass and purity") {
  ConfigGrid cg = make_self_dual_config_grid(1, 256, 1.0);
  Field M = wigner_of_mixture({0.25, 0.75},
                              {make_hermite_state(0, cg), make_hermite_state(2, cg)});
  MomentReport rep = moment_report(M);
  CHECK(std::abs(rep.mass - cplx{1.0, 0.0}) <= 1e-8);
  CHECK(rep.purity == doctest::Approx(0.25 * 0.25 + 0.75 * 0.75).epsilon(1e-6));
}

TEST_CASE("displace: integer-step displacement is exact, fractional is interpolated") {
  ConfigGrid cg = make_self_dual_config_grid(1, 256, 1.0);
  WaveFunction f = displace(make_hermite_state(0, cg), -7.0 * cg.axes[0].step(), 0.6);
  CHECK(l2_norm_sq(f) == doctest::Approx(1.0).epsilon(1e-12));
  WaveFunction frac = displace(make_hermite_state(0, cg), -1.1, 0.6);
  CHECK(l2_norm_sq(frac) == doctest::Approx(1.0).epsilon(1e-3));
}
