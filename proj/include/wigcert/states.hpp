#pragma once

#include <Eigen/Dense>
#include <vector>

#include "wigcert/grid.hpp"

namespace wigcert {

/// Pure-state Gaussian Wigner function
///   Wf(z) = (pi hbar)^{-n} exp(-1/2 (z-z0).Cov^{-1}(z-z0)),
/// valid only when (2/hbar) Cov is symplectic.
Field make_gaussian_pure_wigner(const Eigen::MatrixXd& cov, const Eigen::VectorXd& z0,
                                const PhaseSpaceGrid& grid);

/// k-th Hermite function on the configuration grid, unit L2 norm. The
/// three-term recurrence is re-orthonormalized by quadrature Gram-Schmidt
/// when the Gram drift exceeds 1e-10.
WaveFunction make_hermite_state(int k, const ConfigGrid& grid);

/// Phase-space translate f(x-x0) e^{i p0 x / hbar}; Wigner shifts by (x0,p0).
WaveFunction displace(const WaveFunction& f, double x0, double p0);

/// chi_R / (pi R^2) on an n=1 grid, sampled at cell centers (staircase).
Field make_disc_indicator(double radius, const PhaseSpaceGrid& grid);

/// F(z) = (48/pi hbar)(|z|^2/hbar - 1/6) e^{-4|z|^2/hbar}; satisfies the RSUP
/// with minimal covariance but fails the refined RSUP.
Field make_example_final1(const PhaseSpaceGrid& grid);

/// F(z) = (1/2 pi hbar)(|z|^2/hbar - 1) e^{-|z|^2/2 hbar} = 1/2 Wh1(z/sqrt 2);
/// eigenfunction of the symplectic Fourier transform with eigenvalue -1,
/// satisfies the refined RSUP yet is not a Wigner function.
Field make_example_final2(const PhaseSpaceGrid& grid);

/// Product of n=1 fields on the combined grid (total dimension <= 2).
Field make_tensor_product(const std::vector<Field>& children);

}  // namespace wigcert
