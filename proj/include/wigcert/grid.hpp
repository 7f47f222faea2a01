#pragma once

#include <string>
#include <vector>

#include "wigcert/common.hpp"

namespace wigcert {

/// One uniform axis covering [-half_extent, half_extent) with a
/// power-of-two point count.
struct AxisSpec {
  int points = 0;
  double half_extent = 0.0;

  double step() const { return 2.0 * half_extent / points; }
  double coord(int i) const { return -half_extent + i * step(); }
  /// Conjugate axis under the hbar-scaled Fourier transform:
  /// same point count, step' = 2*pi*hbar / (points * step).
  AxisSpec reciprocal(double hbar) const;
  bool approx_equal(const AxisSpec& o, double rel = 1e-9) const;
};

AxisSpec make_axis(int points, double half_extent);
/// Axis equal to its own reciprocal: step = sqrt(2*pi*hbar/points).
AxisSpec make_self_dual_axis(int points, double hbar);

/// Discretized R^{2n}; axis order in stored arrays is (x_1..x_n, p_1..p_n),
/// row-major.
struct PhaseSpaceGrid {
  int dim_n = 0;
  std::vector<AxisSpec> x_axes;
  std::vector<AxisSpec> p_axes;
  double hbar = 1.0;

  const AxisSpec& axis(int a) const { return a < dim_n ? x_axes[a] : p_axes[a - dim_n]; }
  int num_axes() const { return 2 * dim_n; }
  std::size_t total_points() const;
  double cell_volume() const;
  std::vector<int> dims() const;
  /// True when the p-axes are the reciprocals of the x-axes, so the
  /// symplectic Fourier transform maps the grid onto itself.
  bool is_wigner_reciprocal(double rel = 1e-9) const;
  bool approx_equal(const PhaseSpaceGrid& o, double rel = 1e-9) const;
};

PhaseSpaceGrid make_grid(int dim_n, const std::vector<AxisSpec>& x_axes,
                         const std::vector<AxisSpec>& p_axes, double hbar);
/// Square grid with identical x/p axes (half_extent per axis).
PhaseSpaceGrid make_square_grid(int dim_n, int points, double half_extent, double hbar);
/// Square grid whose axes are self-dual (fully Wigner-reciprocal).
PhaseSpaceGrid make_self_dual_grid(int dim_n, int points, double hbar);

struct ConfigGrid {
  int dim_n = 0;
  std::vector<AxisSpec> axes;
  double hbar = 1.0;

  std::size_t total_points() const;
  double cell_volume() const;
  std::vector<int> dims() const;
  bool approx_equal(const ConfigGrid& o, double rel = 1e-9) const;
};

ConfigGrid make_config_grid(int dim_n, const std::vector<AxisSpec>& axes, double hbar);
ConfigGrid make_self_dual_config_grid(int dim_n, int points, double hbar);

/// Complex-valued sample set on a PhaseSpaceGrid.
struct Field {
  PhaseSpaceGrid grid;
  std::vector<cplx> values;
  std::string label;
};

struct WaveFunction {
  ConfigGrid grid;
  std::vector<cplx> values;
};

Field make_field(const PhaseSpaceGrid& grid, std::string label = "");
WaveFunction make_wavefunction(const ConfigGrid& grid);

// ---- row-major index helpers ----

struct Shape {
  std::vector<int> dims;
  std::vector<std::size_t> strides;  // row-major

  explicit Shape(const std::vector<int>& d);
  std::size_t size() const;
  std::size_t flat(const std::vector<int>& idx) const;
  void unflat(std::size_t f, std::vector<int>& idx) const;
};

// ---- quadrature ----

cplx integrate(const Field& F);
double l2_norm_sq(const Field& F);
double l2_norm_sq(const WaveFunction& f);

/// Rectangle-rule sum of A(z)*B(z) over the common grid.
cplx integrate_product(const Field& A, const Field& B);

Field normalize_mass(const Field& F, double eps = 1e-12);
Field normalize_l2(const Field& F, double eps = 1e-300);
WaveFunction normalize_l2(const WaveFunction& f, double eps = 1e-300);

Field scale(const Field& F, cplx c);

/// z -> mu^{2n} F(mu z) resampled on F's own grid (multilinear).
Field dilate(const Field& F, double mu);

/// |F| mass fraction carried by the outermost `layers` index shells.
double boundary_mass_fraction(const Field& F, int layers = 2);
double boundary_mass_fraction(const WaveFunction& f, int layers = 2);

/// Multilinear interpolation at an arbitrary point; zero outside the extent.
cplx field_at(const Field& F, const std::vector<double>& z);

/// max |Im| <= rel_tol * max |value|  (Wigner candidates must be real).
bool is_effectively_real(const Field& F, double rel_tol = 1e-8);

/// Coordinates of grid point `flat` as a 2n-vector (x_1..x_n, p_1..p_n).
void grid_point(const PhaseSpaceGrid& g, const Shape& sh, std::size_t flat,
                std::vector<double>& z);

}  // namespace wigcert
