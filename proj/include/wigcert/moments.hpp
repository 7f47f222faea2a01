#pragma once

#include <Eigen/Dense>

#include "wigcert/grid.hpp"

namespace wigcert {

/// Mass, mean, covariance and purity of a candidate field. Mean/covariance
/// are taken on the mass-normalized field; purity = (2 pi hbar)^n |||F~|||^2
/// (may exceed 1 for non-Wigner candidates and is never clamped).
struct MomentReport {
  cplx mass{0.0, 0.0};
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
  double purity = 0.0;
  double boundary_mass_fraction = 0.0;
};

struct EntropyValue {
  double value = 0.0;         // nats
  double clipped_mass = 0.0;  // |mass| discarded at negative samples
};

MomentReport moment_report(const Field& F, double mass_eps = 1e-12);

enum class SquareRoute { direct, symplectic_ft };

/// |normalize_l2(F)|^2 (or of its symplectic Fourier transform):
/// a real nonnegative unit-mass density field.
Field density_from_square(const Field& F, SquareRoute which = SquareRoute::direct);

/// -sum mu log mu dV with 0 log 0 := 0. Negative samples are clipped to zero
/// and their |mass| accumulated; exceeding clip_threshold is an error.
EntropyValue boltzmann_entropy(const Field& mu, double clip_threshold = 1e-9,
                               double mass_tol = 1e-6);

}  // namespace wigcert
