#pragma once

#include <Eigen/Dense>
#include <vector>

#include "wigcert/grid.hpp"

namespace wigcert {

/// a(z) = eta . (z - z0) with complex eta; evaluated exactly, never sampled.
struct LinearSymbol {
  std::vector<cplx> eta;   // length 2n
  std::vector<double> z0;  // length 2n
  double hbar = 1.0;
};

cplx linear_symbol_at(const LinearSymbol& a, const std::vector<double>& z);

/// Wf(x,p) = (2 pi hbar)^{-n} \int f(x+y/2) conj(f(x-y/2)) e^{-i p.y/hbar} dy.
/// Output p-axes are the reciprocals of the x-axes (p_step = 2 pi hbar /
/// (points * x_step)); f is upsampled 2x by trigonometric interpolation so
/// the half-shifted samples are exact for band-limited input.
Field wigner_transform(const WaveFunction& f);

/// W(f,g); W(f,g) = conj(W(g,f)).
Field cross_wigner(const WaveFunction& f, const WaveFunction& g);

/// Convex combination sum_a w_a W f_a. Weights positive, sum 1 (1e-12).
Field wigner_of_mixture(const std::vector<double>& weights, const std::vector<WaveFunction>& fs);

/// (F_sigma F)(zeta) = (2 pi hbar)^{-n} \int F(z) e^{-i sigma(zeta,z)/hbar} dz.
/// Output lives on the induced grid (zeta_x = reciprocal of p-axes, zeta_p =
/// reciprocal of x-axes); on a Wigner-reciprocal grid that is the input grid
/// and the discrete map is an exact involution.
Field symplectic_ft(const Field& F);

/// hbar-scaled Fourier transform of an n-dim wavefunction; exactly unitary.
WaveFunction hbar_ft(const WaveFunction& f);
WaveFunction hbar_ft_inverse(const WaveFunction& g);

/// 2n-dim hbar-scaled Fourier transform of a phase-space field.
Field hbar_ft_field(const Field& F);

/// (2 pi hbar)^{-n} sum A.B dV. Symbols of density matrices are
/// (2 pi hbar)^n x Wigner; callers pass already-scaled fields.
cplx trace_pairing(const Field& A, const Field& B);

/// d/dz_axis by FFT differentiation (Nyquist bin zeroed).
Field spectral_derivative(const Field& F, int axis);

/// a *_hbar F = a F + (i hbar/2) eta . J grad F   (left product, linear a).
Field moyal_linear_left(const LinearSymbol& a, const Field& F);
/// F *_hbar a = a F - (i hbar/2) eta . J grad F.
Field moyal_linear_right(const LinearSymbol& a, const Field& F);

/// F o S sampled on F's grid via multilinear interpolation.
Field resample_linear_map(const Field& F, const Eigen::MatrixXd& S);

}  // namespace wigcert
