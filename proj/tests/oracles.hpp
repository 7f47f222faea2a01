#pragma once

// Test-only oracles, independent of the library's FFT path: direct kernel
// sums, finite differences, and closed-form Gaussians.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>

#include "wigcert/grid.hpp"

namespace oracle {

using wigcert::cplx;
using wigcert::Field;
using wigcert::PhaseSpaceGrid;

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

inline cplx ground_state(double x, double hbar) {
  return std::pow(kPi * hbar, -0.25) * std::exp(-x * x / (2.0 * hbar));
}

inline cplx hermite1(double x, double hbar) {
  // h1 = sqrt(2/hbar) x h0
  return std::sqrt(2.0 / hbar) * x * ground_state(x, hbar);
}

inline double wigner_ground(double x, double p, double hbar) {
  return std::exp(-(x * x + p * p) / hbar) / (kPi * hbar);
}

inline double wigner_h1(double x, double p, double hbar) {
  double s = (x * x + p * p) / hbar;
  return (2.0 * s - 1.0) * std::exp(-s) / (kPi * hbar);
}

/// Direct quadrature of the Wigner integral on an independent fine u-grid,
/// with analytic evaluations of f. No FFT, no library grids.
inline cplx slow_wigner_point(const std::function<cplx(double)>& f, double x, double p,
                              double hbar, double u_extent, int n_u) {
  double du = 2.0 * u_extent / n_u;
  cplx acc{0.0, 0.0};
  for (int j = 0; j < n_u; ++j) {
    double u = -u_extent + (j + 0.5) * du;
    acc += f(x + u) * std::conj(f(x - u)) * std::exp(cplx(0.0, -2.0 * p * u / hbar));
  }
  return acc * (2.0 * du / (2.0 * kPi * hbar));
}

/// Direct double-loop symplectic Fourier transform (n = 1 grids only).
inline Field slow_symplectic_ft(const Field& F) {
  using namespace wigcert;
  const double hbar = F.grid.hbar;
  Field G = make_field(F.grid, "slow_sft");
  Shape sh(F.grid.dims());
  std::vector<double> zeta, z;
  for (std::size_t o = 0; o < G.values.size(); ++o) {
    grid_point(F.grid, sh, o, zeta);
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < F.values.size(); ++i) {
      grid_point(F.grid, sh, i, z);
      double sigma = zeta[1] * z[0] - zeta[0] * z[1];  // sigma(zeta, z) = zeta_p x - zeta_x p
      acc += F.values[i] * std::exp(cplx(0.0, -sigma / hbar));
    }
    G.values[o] = acc * F.grid.cell_volume() / (2.0 * kPi * hbar);
  }
  return G;
}

/// 4th-order central finite difference along one axis (interior points).
inline Field fd_derivative(const Field& F, int axis) {
  using namespace wigcert;
  Field G = make_field(F.grid, "fd");
  Shape sh(F.grid.dims());
  const double h = F.grid.axis(axis).step();
  const int N = F.grid.axis(axis).points;
  std::vector<int> idx;
  for (std::size_t f = 0; f < F.values.size(); ++f) {
    sh.unflat(f, idx);
    int i = idx[axis];
    if (i < 2 || i >= N - 2) continue;
    std::size_t s = sh.strides[axis];
    G.values[f] = (-F.values[f + 2 * s] + 8.0 * F.values[f + s] - 8.0 * F.values[f - s] +
                   F.values[f - 2 * s]) /
                  (12.0 * h);
  }
  return G;
}

inline double gaussian_entropy(const Eigen::MatrixXd& cov) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
  double logdet = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) logdet += std::log(es.eigenvalues()[i]);
  return 0.5 * (cov.rows() * std::log(2.0 * kPi * kE) + logdet);
}

/// Smooth random test field: low-degree polynomial times an anisotropic
/// Gaussian, comfortably inside the grid.
inline Field random_field(const PhaseSpaceGrid& grid, std::mt19937_64& rng, bool complex_coeffs) {
  using namespace wigcert;
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> uq(0.6, 1.5);
  double qx = uq(rng) / grid.hbar, qp = uq(rng) / grid.hbar;
  double x0 = 0.3 * u(rng), p0 = 0.3 * u(rng);
  cplx c[5];
  for (auto& ci : c) ci = complex_coeffs ? cplx(u(rng), u(rng)) : cplx(u(rng), 0.0);
  c[0] += 1.2;
  Field F = make_field(grid, "oracle_random");
  Shape sh(grid.dims());
  std::vector<double> z;
  for (std::size_t f = 0; f < F.values.size(); ++f) {
    grid_point(grid, sh, f, z);
    double dx = z[0] - x0, dp = z[1] - p0;
    cplx poly = c[0] + c[1] * dx + c[2] * dp + c[3] * dx * dp + c[4] * (dx * dx - dp * dp);
    F.values[f] = poly * std::exp(-0.5 * (qx * dx * dx + qp * dp * dp));
  }
  return F;
}

}  // namespace oracle
