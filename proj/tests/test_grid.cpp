#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "wigcert/grid.hpp"
#include "wigcert/moments.hpp"
#include "wigcert/states.hpp"

using namespace wigcert;

namespace {

Field ground_wigner(const PhaseSpaceGrid& g) {
  return make_gaussian_pure_wigner(0.5 * g.hbar * Eigen::Matrix2d::Identity(),
                                   Eigen::Vector2d::Zero(), g);
}

}  // namespace

TEST_CASE("axis validation") {
  CHECK_THROWS_AS(make_axis(100, 1.0), error);  // not a power of two
  CHECK_THROWS_AS(make_axis(128, -1.0), error);
  AxisSpec ax = make_axis(128, 4.0);
  CHECK(ax.step() == doctest::Approx(8.0 / 128));
  CHECK(ax.coord(0) == doctest::Approx(-4.0));
  CHECK(ax.coord(64) == doctest::Approx(0.0));

  AxisSpec sd = make_self_dual_axis(256, 1.0);
  CHECK(sd.reciprocal(1.0).approx_equal(sd));
}

TEST_CASE("wigner reciprocity flag") {
  CHECK(make_self_dual_grid(1, 256, 1.0).is_wigner_reciprocal());
  CHECK_FALSE(make_square_grid(1, 256, 6.0, 1.0).is_wigner_reciprocal());
}

TEST_CASE("integrate: ground-state Wigner has unit mass") {
  PhaseSpaceGrid g = make_square_grid(1, 256, 6.0, 1.0);
  CHECK(std::abs(integrate(ground_wigner(g)) - 1.0) <= 1e-8);

  Field zero = make_field(g);
  CHECK(integrate(zero) == cplx{0.0, 0.0});
}

TEST_CASE("integrate: disc indicator within 2% (staircase)") {
  PhaseSpaceGrid g = make_square_grid(1, 256, 6.0, 1.0);
  Field disc = make_disc_indicator(1.5, g);
  CHECK(std::abs(integrate(disc) - 1.0) <= 0.02);
}

TEST_CASE("l2_norm_sq: ground-state Wigner") {
  for (double hbar : {1.0, 0.5}) {
    PhaseSpaceGrid g = make_square_grid(1, 256, 6.0 * std::sqrt(hbar), hbar);
    Field W = ground_wigner(g);
    CHECK(l2_norm_sq(W) == doctest::Approx(1.0 / (2.0 * oracle::kPi * hbar)).epsilon(1e-8));
    CHECK(l2_norm_sq(scale(W, 2.0)) == doctest::Approx(4.0 * l2_norm_sq(W)));
  }
  CHECK(l2_norm_sq(make_field(make_square_grid(1, 64, 3.0, 1.0))) == 0.0);
}

TEST_CASE("normalize_mass") {
  PhaseSpaceGrid g = make_square_grid(1, 256, 6.0, 1.0);
  Field disc = make_disc_indicator(1.5, g);
  Field norm = normalize_mass(scale(disc, 5.0));
  CHECK(std::abs(integrate(norm) - 1.0) <= 1e-12);

  Field W = ground_wigner(g);
  Field Wn = normalize_mass(W);
  double dev = 0.0;
  for (std::size_t i = 0; i < W.values.size(); ++i)
    dev = std::max(dev, std::abs(W.values[i] - Wn.values[i]));
  CHECK(dev <= 1e-10);

  CHECK_THROWS_AS(normalize_mass(make_field(g)), error);
}

TEST_CASE("normalize_l2") {
  double hbar = 1.0;
  PhaseSpaceGrid g = make_square_grid(1, 256, 6.0, hbar);
  Field W = ground_wigner(g);
  Field U = normalize_l2(W);
  CHECK(l2_norm_sq(U) == doctest::Approx(1.0).epsilon(1e-12));
  // pointwise sqrt(2 pi hbar) x W
  double s = std::sqrt(2.0 * oracle::kPi * hbar);
  double dev = 0.0;
  for (std::size_t i = 0; i < W.values.size(); ++i)
    dev = std::max(dev, std::abs(U.values[i] - s * W.values[i]));
  CHECK(dev <= 1e-8);

  Field U2 = normalize_l2(U);
  CHECK(U2.values[100].real() == doctest::Approx(U.values[100].real()));
  CHECK_THROWS_AS(normalize_l2(make_field(g)), error);
}

TEST_CASE("dilate: identity, Gaussian scaling law, disc scaling law") {
  double hbar = 1.0;
  PhaseSpaceGrid g = make_square_grid(1, 256, 6.0, hbar);
  Field W = ground_wigner(g);

  Field same = dilate(W, 1.0);
  CHECK(same.values == W.values);

  // Cov(F_mu) = Cov(F)/mu^2
  Field half = dilate(W, 0.5);
  MomentReport rep = moment_report(half);
  // multilinear interpolation: second-order moment error at this step
  CHECK((rep.covariance - 2.0 * hbar * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() <= 1e-3);
  CHECK(std::abs(integrate(half) - integrate(W)) <= 1e-4);  // mass invariance

  Field disc = make_disc_indicator(1.0, g);
  Field disc2 = dilate(disc, 0.5);  // radius doubles, Cov = R^2 I at R = 1
  MomentReport drep = moment_report(disc2);
  CHECK((drep.covariance - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() <= 0.02);
  CHECK(std::abs(integrate(disc2) - integrate(disc)) <= 0.02);

  CHECK_THROWS_AS(dilate(W, 0.0), error);
  CHECK_THROWS_AS(dilate(W, -1.0), error);
}

TEST_CASE("quadrature exactness ladder: Gaussian moments to 1e-8") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> us(0.3, 0.9);  // extent covers >= 6.7 sigma
  PhaseSpaceGrid g = make_square_grid(1, 256, 6.0, 1.0);
  Shape sh(g.dims());
  for (int t = 0; t < 5; ++t) {
    double sx = us(rng), sp = us(rng);
    Field F = make_field(g);
    std::vector<double> z;
    for (std::size_t f = 0; f < F.values.size(); ++f) {
      grid_point(g, sh, f, z);
      F.values[f] = std::exp(-0.5 * (z[0] * z[0] / (sx * sx) + z[1] * z[1] / (sp * sp))) /
                    (2.0 * oracle::kPi * sx * sp);
    }
    MomentReport rep = moment_report(F);
    CHECK(std::abs(rep.mass - cplx{1.0, 0.0}) <= 1e-8);
    CHECK(std::abs(rep.mean[0]) <= 1e-8);
    CHECK(std::abs(rep.covariance(0, 0) - sx * sx) <= 1e-8 * sx * sx);
    CHECK(std::abs(rep.covariance(1, 1) - sp * sp) <= 1e-8 * sp * sp);
  }
}

TEST_CASE("boundary mass fraction") {
  PhaseSpaceGrid g = make_square_grid(1, 64, 6.0, 1.0);
  CHECK(boundary_mass_fraction(ground_wigner(g)) < 1e-6);

  Field flat = make_field(g);
  for (auto& v : flat.values) v = 1.0;
  // 2-layer shell of a 64x64 grid: 1 - (60/64)^2
  CHECK(boundary_mass_fraction(flat) == doctest::Approx(1.0 - (60.0 * 60.0) / (64.0 * 64.0)));
}

TEST_CASE("field_at interpolation: exact on nodes, zero outside") {
  PhaseSpaceGrid g = make_square_grid(1, 64, 4.0, 1.0);
  Field W = ground_wigner(g);
  Shape sh(g.dims());
  std::vector<double> z;
  grid_point(g, sh, 65 * 33, z);
  CHECK(std::abs(field_at(W, z) - W.values[65 * 33]) <= 1e-14);
  CHECK(field_at(W, {100.0, 0.0}) == cplx{0.0, 0.0});
}

TEST_CASE("is_effectively_real") {
  PhaseSpaceGrid g = make_square_grid(1, 32, 4.0, 1.0);
  Field F = make_field(g);
  for (auto& v : F.values) v = 1.0;
  CHECK(is_effectively_real(F));
  F.values[5] += cplx(0.0, 1e-3);
  CHECK_FALSE(is_effectively_real(F));
}
