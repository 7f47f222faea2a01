#include "wigcert/states.hpp"

#include <cmath>
#include <numbers>

#include "wigcert/symplectic.hpp"

namespace wigcert {

namespace {
constexpr double kPi = std::numbers::pi;
}

Field make_gaussian_pure_wigner(const Eigen::MatrixXd& cov, const Eigen::VectorXd& z0,
                                const PhaseSpaceGrid& grid) {
  const int n = grid.dim_n;
  const double hbar = grid.hbar;
  if (cov.rows() != 2 * n || cov.cols() != 2 * n || z0.size() != 2 * n)
    throw error("gaussian_pure: covariance/center size does not match the grid");
  if (!is_symplectic((2.0 / hbar) * cov, 1e-8))
    throw error("gaussian_pure: (2/hbar) Cov is not symplectic, not a pure state covariance");

  Eigen::MatrixXd prec = symmetrize_checked(cov).inverse();
  const double amp = std::pow(kPi * hbar, -n);

  Field F = make_field(grid, "gaussian_pure");
  Shape sh(grid.dims());
  std::vector<double> z;
  Eigen::VectorXd d(2 * n);
  for (std::size_t f = 0; f < F.values.size(); ++f) {
    grid_point(grid, sh, f, z);
    for (int a = 0; a < 2 * n; ++a) d[a] = z[a] - z0[a];
    F.values[f] = amp * std::exp(-0.5 * d.dot(prec * d));
  }
  return F;
}

WaveFunction make_hermite_state(int k, const ConfigGrid& grid) {
  if (grid.dim_n != 1) throw error("hermite: only n=1 configuration grids");
  if (k < 0) throw error("hermite: order must be nonnegative");
  const AxisSpec& ax = grid.axes[0];
  const double hbar = grid.hbar;
  // h_k needs extent ~ sqrt(2k+1) sqrt(hbar) well inside the grid
  if (std::sqrt(2.0 * k + 1.0) * std::sqrt(hbar) > 0.75 * ax.half_extent)
    throw error("hermite: order too large for the grid extent");

  const int N = ax.points;
  const double sh = std::sqrt(hbar);
  const double dx = ax.step();

  // three-term recurrence for the whole ladder, kept for drift correction
  std::vector<std::vector<double>> ladder(k + 1, std::vector<double>(N));
  for (int i = 0; i < N; ++i) {
    double xi = ax.coord(i) / sh;
    ladder[0][i] = std::pow(kPi, -0.25) * std::exp(-0.5 * xi * xi) / std::sqrt(sh);
  }
  for (int m = 0; m < k; ++m) {
    double c1 = std::sqrt(2.0 / (m + 1.0));
    double c2 = std::sqrt(m / (m + 1.0));
    for (int i = 0; i < N; ++i) {
      double xi = ax.coord(i) / sh;
      ladder[m + 1][i] = c1 * xi * ladder[m][i] - (m > 0 ? c2 * ladder[m - 1][i] : 0.0);
    }
  }

  // quadrature Gram drift: re-orthonormalize against lower states if needed
  for (int m = 0; m <= k; ++m) {
    for (int j = 0; j < m; ++j) {
      double ip = 0.0;
      for (int i = 0; i < N; ++i) ip += ladder[j][i] * ladder[m][i];
      ip *= dx;
      if (std::abs(ip) > 1e-10)
        for (int i = 0; i < N; ++i) ladder[m][i] -= ip * ladder[j][i];
    }
    double n2 = 0.0;
    for (int i = 0; i < N; ++i) n2 += ladder[m][i] * ladder[m][i];
    n2 *= dx;
    if (std::abs(n2 - 1.0) > 1e-10) {
      double s = 1.0 / std::sqrt(n2);
      for (int i = 0; i < N; ++i) ladder[m][i] *= s;
    }
  }

  WaveFunction h = make_wavefunction(grid);
  for (int i = 0; i < N; ++i) h.values[i] = ladder[k][i];
  return h;
}

WaveFunction displace(const WaveFunction& f, double x0, double p0) {
  if (f.grid.dim_n != 1) throw error("displace: only n=1 wavefunctions");
  const AxisSpec& ax = f.grid.axes[0];
  WaveFunction g = make_wavefunction(f.grid);
  // interpolate f(x - x0) linearly on the grid, then modulate
  for (int i = 0; i < ax.points; ++i) {
    double xs = ax.coord(i) - x0;
    double t = (xs + ax.half_extent) / ax.step();
    int lo = static_cast<int>(std::floor(t));
    double w = t - lo;
    cplx v{0.0, 0.0};
    if (lo >= 0 && lo < ax.points) v += (1.0 - w) * f.values[lo];
    if (lo + 1 >= 0 && lo + 1 < ax.points) v += w * f.values[lo + 1];
    g.values[i] = v * std::exp(cplx(0.0, p0 * ax.coord(i) / f.grid.hbar));
  }
  return g;
}

Field make_disc_indicator(double radius, const PhaseSpaceGrid& grid) {
  if (grid.dim_n != 1) throw error("disc_indicator: n=1 only (tensor for higher n)");
  if (!(radius > 0.0)) throw error("disc_indicator: radius must be positive");
  if (radius >= std::min(grid.x_axes[0].half_extent, grid.p_axes[0].half_extent))
    throw error("disc_indicator: radius exceeds the grid extent");
  Field F = make_field(grid, "disc_indicator");
  Shape sh(grid.dims());
  const double amp = 1.0 / (kPi * radius * radius);
  std::vector<double> z;
  for (std::size_t f = 0; f < F.values.size(); ++f) {
    grid_point(grid, sh, f, z);
    if (z[0] * z[0] + z[1] * z[1] <= radius * radius) F.values[f] = amp;
  }
  return F;
}

namespace {

Field radial_profile_field(const PhaseSpaceGrid& grid, const char* label, double (*profile)(double, double)) {
  if (grid.dim_n != 1) throw error("example field: n=1 only");
  Field F = make_field(grid, label);
  Shape sh(grid.dims());
  std::vector<double> z;
  for (std::size_t f = 0; f < F.values.size(); ++f) {
    grid_point(grid, sh, f, z);
    F.values[f] = profile(z[0] * z[0] + z[1] * z[1], grid.hbar);
  }
  return F;
}

double final1_profile(double r2, double hbar) {
  return 48.0 / (kPi * hbar) * (r2 / hbar - 1.0 / 6.0) * std::exp(-4.0 * r2 / hbar);
}

double final2_profile(double r2, double hbar) {
  return 1.0 / (2.0 * kPi * hbar) * (r2 / hbar - 1.0) * std::exp(-r2 / (2.0 * hbar));
}

}  // namespace

Field make_example_final1(const PhaseSpaceGrid& grid) {
  return radial_profile_field(grid, "example_final1", final1_profile);
}

Field make_example_final2(const PhaseSpaceGrid& grid) {
  return radial_profile_field(grid, "example_final2", final2_profile);
}

Field make_tensor_product(const std::vector<Field>& children) {
  if (children.empty()) throw error("tensor_product: no children");
  int total_n = 0;
  for (const Field& c : children) {
    if (c.grid.dim_n != 1) throw error("tensor_product: children must be n=1 fields");
    total_n += c.grid.dim_n;
  }
  if (total_n > 2) throw error("tensor_product: total dimension exceeds the grid budget");
  const double hbar = children[0].grid.hbar;

  std::vector<AxisSpec> xs, ps;
  for (const Field& c : children) {
    if (std::abs(c.grid.hbar - hbar) > 1e-12) throw error("tensor_product: hbar mismatch");
    xs.push_back(c.grid.x_axes[0]);
    ps.push_back(c.grid.p_axes[0]);
  }
  PhaseSpaceGrid grid = make_grid(total_n, xs, ps, hbar);
  Field F = make_field(grid, "tensor_product");
  Shape sh(grid.dims());
  std::vector<int> idx;
  std::vector<Shape> csh;
  for (const Field& c : children) csh.emplace_back(c.grid.dims());
  for (std::size_t f = 0; f < F.values.size(); ++f) {
    sh.unflat(f, idx);
    cplx v{1.0, 0.0};
    for (std::size_t c = 0; c < children.size(); ++c) {
      std::vector<int> ci = {idx[c], idx[total_n + c]};
      v *= children[c].values[csh[c].flat(ci)];
    }
    F.values[f] = v;
  }
  return F;
}

}  // namespace wigcert
