#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "wigcert/moments.hpp"
#include "wigcert/states.hpp"
#include "wigcert/transforms.hpp"

using namespace wigcert;
using oracle::kPi;

namespace {
std::mt19937_64 rng(99);
}

TEST_CASE("moment_report: disc indicator") {
  PhaseSpaceGrid g = make_square_grid(1, 256, 6.0, 1.0);
  double R = 1.8;
  MomentReport rep = moment_report(make_disc_indicator(R, g));
  CHECK(std::abs(rep.mean[0]) <= 1e-10);
  CHECK(std::abs(rep.mean[1]) <= 1e-10);
  CHECK((rep.covariance - R * R / 4.0 * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() <=
        0.02 * R * R / 4.0);
}

TEST_CASE("moment_report: Example Final1 and Final2 paper values") {
  for (double hbar : {1.0, 0.5}) {
    PhaseSpaceGrid g = make_square_grid(1, 256, 6.0 * std::sqrt(hbar), hbar);
    MomentReport r1 = moment_report(make_example_final1(g));
    CHECK(std::abs(r1.mass - cplx{1.0, 0.0}) <= 1e-8);
    CHECK((r1.covariance - 0.5 * hbar * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() <= 1e-6 * hbar);
    CHECK(r1.purity == doctest::Approx(10.0).epsilon(1e-5));

    MomentReport r2 = moment_report(make_example_final2(g));
    CHECK(std::abs(r2.mass - cplx{1.0, 0.0}) <= 1e-6);
    CHECK((r2.covariance - 3.0 * hbar * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() <= 1e-4 * hbar);
    CHECK(r2.purity == doctest::Approx(0.5).epsilon(1e-4));
  }
}

TEST_CASE("moment_report: zero-mass and NaN error paths") {
  PhaseSpaceGrid g = make_square_grid(1, 32, 4.0, 1.0);
  CHECK_THROWS_AS(moment_report(make_field(g)), error);
  Field bad = make_field(g);
  for (auto& v : bad.values) v = 1.0;
  bad.values[7] = cplx(std::nan(""), 0.0);
  CHECK_THROWS_AS(moment_report(bad), error);
}

TEST_CASE("density_from_square: Gaussian halves the covariance scale") {
  double hbar = 1.0;
  PhaseSpaceGrid g = make_square_grid(1, 256, 6.0, hbar);
  Field W = make_gaussian_pure_wigner(0.5 * hbar * Eigen::Matrix2d::Identity(),
                                      Eigen::Vector2d::Zero(), g);
  Field dens = density_from_square(W);
  CHECK(std::abs(integrate(dens) - 1.0) <= 1e-10);
  MomentReport rep = moment_report(dens);
  CHECK((rep.covariance - 0.25 * hbar * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("density_from_square: Example Final1 value 11 hbar/80") {
  PhaseSpaceGrid g = make_square_grid(1, 256, 6.0, 1.0);
  MomentReport rep = moment_report(density_from_square(make_example_final1(g)));
  CHECK((rep.covariance - 11.0 / 80.0 * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() <= 1e-5);
}

TEST_CASE("density_from_square: Final2 sft route equals direct route") {
  PhaseSpaceGrid g = make_self_dual_grid(1, 256, 1.0);
  Field F = make_example_final2(g);
  MomentReport direct = moment_report(density_from_square(F, SquareRoute::direct));
  MomentReport viaft = moment_report(density_from_square(F, SquareRoute::symplectic_ft));
  CHECK((direct.covariance - viaft.covariance).cwiseAbs().maxCoeff() <= 1e-8);
  CHECK((direct.covariance - 1.5 * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() <= 1e-4);
}

TEST_CASE("boltzmann_entropy: Gaussian closed form (Shannon equality)") {
  std::uniform_real_distribution<double> us(0.3, 0.8);
  PhaseSpaceGrid g = make_square_grid(1, 256, 6.0, 1.0);
  Shape sh(g.dims());
  for (int t = 0; t < 3; ++t) {
    double sx = us(rng), sp = us(rng);
    Field mu = make_field(g);
    std::vector<double> z;
    for (std::size_t f = 0; f < mu.values.size(); ++f) {
      grid_point(g, sh, f, z);
      mu.values[f] = std::exp(-0.5 * (z[0] * z[0] / (sx * sx) + z[1] * z[1] / (sp * sp))) /
                     (2.0 * kPi * sx * sp);
    }
    EntropyValue E = boltzmann_entropy(mu);
    Eigen::Matrix2d cov = Eigen::Vector2d(sx * sx, sp * sp).asDiagonal();
    CHECK(E.value == doctest::Approx(oracle::gaussian_entropy(cov)).epsilon(1e-8));
    CHECK(E.clipped_mass == 0.0);
  }
}

TEST_CASE("boltzmann_entropy: uniform disc density gives log(pi R^2)") {
  PhaseSpaceGrid g = make_square_grid(1, 256, 6.0, 1.0);
  double R = 2.0;
  Field mu = normalize_mass(make_disc_indicator(R, g));
  EntropyValue E = boltzmann_entropy(mu);
  CHECK(std::abs(E.value - std::log(kPi * R * R)) <= 0.03);
}

TEST_CASE("boltzmann_entropy: Hirschman saturation log(pi hbar e) for the ground state") {
  for (double hbar : {1.0, 0.5}) {
    ConfigGrid cg = make_self_dual_config_grid(1, 256, hbar);
    WaveFunction f0 = make_hermite_state(0, cg);
    WaveFunction g0 = hbar_ft(f0);
    // 1-d entropies of |f|^2 and |F_hbar f|^2 by direct quadrature
    auto density_1d = [&](const WaveFunction& w) {
      KahanSum acc;
      for (const cplx& v : w.values) {
        double m = std::norm(v);
        if (m > 0.0) acc.add(-m * std::log(m));
      }
      return acc.value() * w.grid.axes[0].step();
    };
    double sum = density_1d(f0) + density_1d(g0);
    CHECK(sum == doctest::Approx(std::log(kPi * hbar * oracle::kE)).epsilon(1e-8));
  }
}

TEST_CASE("Hirschman bound over the Hermite library") {
  double hbar = 1.0;
  ConfigGrid cg = make_self_dual_config_grid(1, 256, hbar);
  auto entropy_1d = [&](const WaveFunction& w) {
    KahanSum acc;
    for (const cplx& v : w.values) {
      double m = std::norm(v);
      if (m > 0.0) acc.add(-m * std::log(m));
    }
    return acc.value() * w.grid.axes[0].step();
  };
  for (int k = 0; k <= 4; ++k) {
    WaveFunction f = make_hermite_state(k, cg);
    double sum = entropy_1d(f) + entropy_1d(hbar_ft(f));
    CHECK(sum >= std::log(kPi * hbar * oracle::kE) - 1e-6);
    if (k > 0) CHECK(sum > std::log(kPi * hbar * oracle::kE) + 0.1);  // strict off the Gaussian
  }
}

TEST_CASE("boltzmann_entropy: clipping accounting and thresholds") {
  PhaseSpaceGrid g = make_square_grid(1, 64, 4.0, 1.0);
  Field mu = normalize_mass(make_disc_indicator(1.5, g));
  // inject tiny negative noise below the clip threshold
  mu.values[0] = -1e-14;
  EntropyValue E = boltzmann_entropy(mu);
  CHECK(E.clipped_mass > 0.0);
  CHECK(E.clipped_mass <= 1e-9);

  // large negative mass exceeds the threshold
  Field bad = normalize_mass(make_disc_indicator(1.5, g));
  bad.values[0] = -1.0;
  CHECK_THROWS_AS(boltzmann_entropy(bad), error);

  // non-unit mass rejected
  CHECK_THROWS_AS(boltzmann_entropy(scale(mu, 2.0)), error);
}

TEST_CASE("Shannon bound holds on assorted densities, equality only for Gaussians") {
  PhaseSpaceGrid g = make_square_grid(1, 256, 6.0, 1.0);
  Field disc = normalize_mass(make_disc_indicator(2.0, g));
  MomentReport rep = moment_report(disc);
  EntropyValue E = boltzmann_entropy(disc);
  double bound = oracle::gaussian_entropy(rep.covariance);
  CHECK(E.value <= bound + 1e-6);
  CHECK(bound - E.value > 0.01);  // strict for the disc

  Field gaussdens = density_from_square(make_gaussian_pure_wigner(
      0.5 * Eigen::Matrix2d::Identity(), Eigen::Vector2d::Zero(), g));
  MomentReport grep = moment_report(gaussdens);
  EntropyValue gE = boltzmann_entropy(gaussdens);
  CHECK(std::abs(gE.value - oracle::gaussian_entropy(grep.covariance)) <= 1e-6);
}

TEST_CASE("purity dichotomy") {
  double hbar = 1.0;
  ConfigGrid cg = make_self_dual_config_grid(1, 256, hbar);
  WaveFunction h0 = make_hermite_state(0, cg);
  WaveFunction h1 = make_hermite_state(1, cg);
  CHECK(moment_report(wigner_transform(h0)).purity == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(moment_report(wigner_transform(h1)).purity == doctest::Approx(1.0).epsilon(1e-6));

  for (double w : {0.3, 0.5, 0.8}) {
    double want = w * w + (1.0 - w) * (1.0 - w);  // (2 pi hbar) sum p_a^2 ||Wh||^2
    Field M = wigner_of_mixture({w, 1.0 - w}, {h0, h1});
    CHECK(moment_report(M).purity == doctest::Approx(want).epsilon(1e-6));
    CHECK(moment_report(M).purity < 1.0);
  }
}

TEST_CASE("covariance transforms as S^{-1} Cov S^{-T} under resampling") {
  PhaseSpaceGrid g = make_self_dual_grid(1, 256, 1.0);
  Field W = make_gaussian_pure_wigner(Eigen::Vector2d(1.0, 0.25).asDiagonal(),
                                      Eigen::Vector2d::Zero(), g);
  Eigen::Matrix2d S;
  S << 1.2, 0.3, 0.0, 1.0 / 1.2;  // symplectic (det 1)
  Field WS = resample_linear_map(W, S);
  Eigen::Matrix2d want = S.inverse() * moment_report(W).covariance * S.inverse().transpose();
  CHECK((moment_report(WS).covariance - want).cwiseAbs().maxCoeff() <= 1e-3);
}

TEST_CASE("purity is not clamped for non-Wigner candidates") {
  PhaseSpaceGrid g = make_square_grid(1, 256, 6.0, 1.0);
  CHECK(moment_report(make_example_final1(g)).purity > 9.0);
}
