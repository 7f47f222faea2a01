#include "wigcert/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace wigcert {

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return std::string(buf);
}

AxisSpec AxisSpec::reciprocal(double hbar) const {
  double rstep = 2.0 * std::numbers::pi * hbar / (points * step());
  return AxisSpec{points, 0.5 * points * rstep};
}

bool AxisSpec::approx_equal(const AxisSpec& o, double rel) const {
  return points == o.points &&
         std::abs(half_extent - o.half_extent) <= rel * std::max(1.0, std::abs(half_extent));
}

AxisSpec make_axis(int points, double half_extent) {
  if (!is_power_of_two(points)) throw error("axis points must be a positive power of two");
  if (!(half_extent > 0.0)) throw error("axis half_extent must be positive");
  return AxisSpec{points, half_extent};
}

AxisSpec make_self_dual_axis(int points, double hbar) {
  if (!is_power_of_two(points)) throw error("axis points must be a positive power of two");
  double step = std::sqrt(2.0 * std::numbers::pi * hbar / points);
  return AxisSpec{points, 0.5 * points * step};
}

std::size_t PhaseSpaceGrid::total_points() const {
  std::size_t t = 1;
  for (int a = 0; a < num_axes(); ++a) t *= static_cast<std::size_t>(axis(a).points);
  return t;
}

double PhaseSpaceGrid::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < num_axes(); ++a) v *= axis(a).step();
  return v;
}

std::vector<int> PhaseSpaceGrid::dims() const {
  std::vector<int> d(num_axes());
  for (int a = 0; a < num_axes(); ++a) d[a] = axis(a).points;
  return d;
}

bool PhaseSpaceGrid::is_wigner_reciprocal(double rel) const {
  for (int i = 0; i < dim_n; ++i) {
    if (!x_axes[i].reciprocal(hbar).approx_equal(p_axes[i], rel)) return false;
    if (!p_axes[i].reciprocal(hbar).approx_equal(x_axes[i], rel)) return false;
  }
  return true;
}

bool PhaseSpaceGrid::approx_equal(const PhaseSpaceGrid& o, double rel) const {
  if (dim_n != o.dim_n) return false;
  if (std::abs(hbar - o.hbar) > rel * std::max(1.0, hbar)) return false;
  for (int i = 0; i < dim_n; ++i)
    if (!x_axes[i].approx_equal(o.x_axes[i], rel) || !p_axes[i].approx_equal(o.p_axes[i], rel))
      return false;
  return true;
}

PhaseSpaceGrid make_grid(int dim_n, const std::vector<AxisSpec>& x_axes,
                         const std::vector<AxisSpec>& p_axes, double hbar) {
  if (dim_n < 1) throw error("dim_n must be >= 1");
  if (static_cast<int>(x_axes.size()) != dim_n || static_cast<int>(p_axes.size()) != dim_n)
    throw error("axis count does not match dim_n");
  if (!(hbar > 0.0)) throw error("hbar must be positive");
  return PhaseSpaceGrid{dim_n, x_axes, p_axes, hbar};
}

PhaseSpaceGrid make_square_grid(int dim_n, int points, double half_extent, double hbar) {
  AxisSpec ax = make_axis(points, half_extent);
  return make_grid(dim_n, std::vector<AxisSpec>(dim_n, ax), std::vector<AxisSpec>(dim_n, ax), hbar);
}

PhaseSpaceGrid make_self_dual_grid(int dim_n, int points, double hbar) {
  AxisSpec ax = make_self_dual_axis(points, hbar);
  return make_grid(dim_n, std::vector<AxisSpec>(dim_n, ax), std::vector<AxisSpec>(dim_n, ax), hbar);
}

std::size_t ConfigGrid::total_points() const {
  std::size_t t = 1;
  for (const auto& a : axes) t *= static_cast<std::size_t>(a.points);
  return t;
}

double ConfigGrid::cell_volume() const {
  double v = 1.0;
  for (const auto& a : axes) v *= a.step();
  return v;
}

std::vector<int> ConfigGrid::dims() const {
  std::vector<int> d(axes.size());
  for (std::size_t i = 0; i < axes.size(); ++i) d[i] = axes[i].points;
  return d;
}

bool ConfigGrid::approx_equal(const ConfigGrid& o, double rel) const {
  if (dim_n != o.dim_n) return false;
  if (std::abs(hbar - o.hbar) > rel * std::max(1.0, hbar)) return false;
  for (int i = 0; i < dim_n; ++i)
    if (!axes[i].approx_equal(o.axes[i], rel)) return false;
  return true;
}

ConfigGrid make_config_grid(int dim_n, const std::vector<AxisSpec>& axes, double hbar) {
  if (dim_n < 1) throw error("dim_n must be >= 1");
  if (static_cast<int>(axes.size()) != dim_n) throw error("axis count does not match dim_n");
  if (!(hbar > 0.0)) throw error("hbar must be positive");
  return ConfigGrid{dim_n, axes, hbar};
}

ConfigGrid make_self_dual_config_grid(int dim_n, int points, double hbar) {
  return make_config_grid(dim_n, std::vector<AxisSpec>(dim_n, make_self_dual_axis(points, hbar)),
                          hbar);
}

Field make_field(const PhaseSpaceGrid& grid, std::string label) {
  Field F;
  F.grid = grid;
  F.values.assign(grid.total_points(), cplx{0.0, 0.0});
  F.label = std::move(label);
  return F;
}

WaveFunction make_wavefunction(const ConfigGrid& grid) {
  WaveFunction f;
  f.grid = grid;
  f.values.assign(grid.total_points(), cplx{0.0, 0.0});
  return f;
}

Shape::Shape(const std::vector<int>& d) : dims(d), strides(d.size()) {
  std::size_t s = 1;
  for (std::size_t a = d.size(); a-- > 0;) {
    strides[a] = s;
    s *= static_cast<std::size_t>(d[a]);
  }
}

std::size_t Shape::size() const {
  std::size_t t = 1;
  for (int d : dims) t *= static_cast<std::size_t>(d);
  return t;
}

std::size_t Shape::flat(const std::vector<int>& idx) const {
  std::size_t f = 0;
  for (std::size_t a = 0; a < dims.size(); ++a) f += strides[a] * static_cast<std::size_t>(idx[a]);
  return f;
}

void Shape::unflat(std::size_t f, std::vector<int>& idx) const {
  idx.resize(dims.size());
  for (std::size_t a = 0; a < dims.size(); ++a) {
    idx[a] = static_cast<int>(f / strides[a]);
    f %= strides[a];
  }
}

cplx integrate(const Field& F) {
  KahanSumC acc;
  for (const cplx& v : F.values) acc.add(v);
  return acc.value() * F.grid.cell_volume();
}

double l2_norm_sq(const Field& F) {
  KahanSum acc;
  for (const cplx& v : F.values) acc.add(std::norm(v));
  return acc.value() * F.grid.cell_volume();
}

double l2_norm_sq(const WaveFunction& f) {
  KahanSum acc;
  for (const cplx& v : f.values) acc.add(std::norm(v));
  return acc.value() * f.grid.cell_volume();
}

cplx integrate_product(const Field& A, const Field& B) {
  if (!A.grid.approx_equal(B.grid)) throw error("integrate_product: grid mismatch");
  KahanSumC acc;
  for (std::size_t i = 0; i < A.values.size(); ++i) acc.add(A.values[i] * B.values[i]);
  return acc.value() * A.grid.cell_volume();
}

Field normalize_mass(const Field& F, double eps) {
  cplx m = integrate(F);
  if (std::abs(m) <= eps) throw error("normalize_mass: total mass is (near) zero");
  return scale(F, 1.0 / m);
}

Field normalize_l2(const Field& F, double eps) {
  double n2 = l2_norm_sq(F);
  if (n2 <= eps) throw error("normalize_l2: zero field");
  return scale(F, 1.0 / std::sqrt(n2));
}

WaveFunction normalize_l2(const WaveFunction& f, double eps) {
  double n2 = l2_norm_sq(f);
  if (n2 <= eps) throw error("normalize_l2: zero wavefunction");
  WaveFunction g = f;
  double s = 1.0 / std::sqrt(n2);
  for (cplx& v : g.values) v *= s;
  return g;
}

Field scale(const Field& F, cplx c) {
  Field G = F;
  for (cplx& v : G.values) v *= c;
  return G;
}

void grid_point(const PhaseSpaceGrid& g, const Shape& sh, std::size_t flat,
                std::vector<double>& z) {
  z.resize(sh.dims.size());
  for (std::size_t a = 0; a < sh.dims.size(); ++a) {
    int i = static_cast<int>(flat / sh.strides[a]);
    flat %= sh.strides[a];
    z[a] = g.axis(static_cast<int>(a)).coord(i);
  }
}

cplx field_at(const Field& F, const std::vector<double>& z) {
  const int na = F.grid.num_axes();
  Shape sh(F.grid.dims());
  // corner index + weights per axis
  std::vector<int> base(na);
  std::vector<double> w(na);
  for (int a = 0; a < na; ++a) {
    const AxisSpec& ax = F.grid.axis(a);
    double t = (z[a] + ax.half_extent) / ax.step();
    double fl = std::floor(t);
    base[a] = static_cast<int>(fl);
    w[a] = t - fl;
    if (base[a] < -1 || base[a] > ax.points - 1) return {0.0, 0.0};
  }
  cplx acc{0.0, 0.0};
  const int corners = 1 << na;
  for (int c = 0; c < corners; ++c) {
    double wc = 1.0;
    std::size_t f = 0;
    bool inside = true;
    for (int a = 0; a < na; ++a) {
      int bit = (c >> a) & 1;
      int i = base[a] + bit;
      wc *= bit ? w[a] : (1.0 - w[a]);
      if (i < 0 || i >= F.grid.axis(a).points) {
        inside = false;  // out-of-extent corner contributes zero
        break;
      }
      f += sh.strides[a] * static_cast<std::size_t>(i);
    }
    if (inside && wc != 0.0) acc += wc * F.values[f];
  }
  return acc;
}

Field dilate(const Field& F, double mu) {
  if (!(mu > 0.0)) throw error("dilate: mu must be positive");
  if (mu == 1.0) return F;
  Field G = make_field(F.grid, F.label);
  Shape sh(F.grid.dims());
  const double amp = std::pow(mu, 2 * F.grid.dim_n);
  std::vector<double> z;
  for (std::size_t f = 0; f < G.values.size(); ++f) {
    grid_point(F.grid, sh, f, z);
    for (double& c : z) c *= mu;
    G.values[f] = amp * field_at(F, z);
  }
  return G;
}

namespace {

template <typename Vals>
double boundary_fraction_impl(const Vals& values, const std::vector<int>& dims, int layers) {
  Shape sh(dims);
  KahanSum shell, total;
  std::vector<int> idx;
  for (std::size_t f = 0; f < values.size(); ++f) {
    sh.unflat(f, idx);
    bool on_shell = false;
    for (std::size_t a = 0; a < idx.size(); ++a) {
      if (idx[a] < layers || idx[a] >= dims[a] - layers) {
        on_shell = true;
        break;
      }
    }
    double m = std::abs(values[f]);
    total.add(m);
    if (on_shell) shell.add(m);
  }
  double t = total.value();
  return t > 0.0 ? shell.value() / t : 0.0;
}

}  // namespace

double boundary_mass_fraction(const Field& F, int layers) {
  return boundary_fraction_impl(F.values, F.grid.dims(), layers);
}

double boundary_mass_fraction(const WaveFunction& f, int layers) {
  return boundary_fraction_impl(f.values, f.grid.dims(), layers);
}

bool is_effectively_real(const Field& F, double rel_tol) {
  double max_abs = 0.0, max_im = 0.0;
  for (const cplx& v : F.values) {
    max_abs = std::max(max_abs, std::abs(v));
    max_im = std::max(max_im, std::abs(v.imag()));
  }
  return max_abs == 0.0 || max_im <= rel_tol * max_abs;
}

}  // namespace wigcert
