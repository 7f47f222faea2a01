#include "wigcert/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fft_util.hpp"

namespace wigcert {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

// Continuum-corrected line transform:
//   out[t] = sum_j in[j] * exp(sign * i * alpha * q_out(t) * q_in(j))
// realized as prephase -> DFT of size M = out.points (inputs with j >= M
// fold in modulo M) -> postphase. Requires alpha * da * db * M = 2*pi.
struct Bridge {
  AxisSpec in_axis;
  AxisSpec out_axis;
  double alpha = 0.0;
  int sign = -1;
  std::vector<cplx> pre;   // exp(sign i alpha b0 q_in(j))
  std::vector<cplx> post;  // exp(sign i alpha t db a0)
};

Bridge make_bridge(const AxisSpec& in_axis, const AxisSpec& out_axis, double alpha, int sign) {
  Bridge b;
  b.in_axis = in_axis;
  b.out_axis = out_axis;
  b.alpha = alpha;
  b.sign = sign;
  double resid = std::abs(alpha * in_axis.step() * out_axis.step() * out_axis.points - 2.0 * kPi);
  if (resid > 1e-9 * 2.0 * kPi)
    throw error("transform: grid reciprocity violated between input and output axes");
  const double a0 = in_axis.coord(0);
  const double b0 = out_axis.coord(0);
  b.pre.resize(in_axis.points);
  for (int j = 0; j < in_axis.points; ++j)
    b.pre[j] = std::exp(cplx(0.0, sign * alpha * b0 * in_axis.coord(j)));
  b.post.resize(out_axis.points);
  for (int t = 0; t < out_axis.points; ++t)
    b.post[t] = std::exp(cplx(0.0, sign * alpha * t * out_axis.step() * a0));
  return b;
}

void apply_bridge_line(const Bridge& b, const cplx* in, cplx* out, std::vector<cplx>& scratch) {
  const int M = b.out_axis.points;
  scratch.assign(M, cplx{0.0, 0.0});
  for (int j = 0; j < b.in_axis.points; ++j) scratch[j % M] += in[j] * b.pre[j];
  detail::fft_inplace(scratch.data(), static_cast<std::size_t>(M), b.sign);
  for (int t = 0; t < M; ++t) out[t] = scratch[t] * b.post[t];
}

// Apply a bridge along one axis of a row-major array, writing a new array
// whose extent along that axis is the bridge's output length.
std::vector<cplx> apply_bridge_axis(const std::vector<cplx>& data, const std::vector<int>& dims,
                                    int axis, const Bridge& b, std::vector<int>& out_dims) {
  out_dims = dims;
  out_dims[axis] = b.out_axis.points;
  Shape in_sh(dims), out_sh(out_dims);
  std::vector<cplx> out(out_sh.size());

  const std::size_t in_stride = in_sh.strides[axis];
  const std::size_t out_stride = out_sh.strides[axis];
  const int n_in = dims[axis];
  const int n_out = out_dims[axis];

  // iterate over all lines: outer block x inner offset
  std::size_t inner = in_stride;
  std::size_t outer = in_sh.size() / (inner * static_cast<std::size_t>(n_in));
  std::vector<cplx> line_in(n_in), line_out(n_out), scratch;
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t i = 0; i < inner; ++i) {
      const std::size_t base_in = o * inner * n_in + i;
      const std::size_t base_out = o * inner * n_out + i;
      for (int j = 0; j < n_in; ++j) line_in[j] = data[base_in + j * in_stride];
      apply_bridge_line(b, line_in.data(), line_out.data(), scratch);
      for (int t = 0; t < n_out; ++t) out[base_out + t * out_stride] = line_out[t];
    }
  }
  return out;
}

// trigonometric upsample of one axis by an integer factor: forward hbar-FT
// to the reciprocal axis, then evaluate the inverse on the refined axis.
std::vector<cplx> upsample_axis(const std::vector<cplx>& data, const std::vector<int>& dims,
                                int axis, const AxisSpec& ax, double hbar, int factor,
                                std::vector<int>& out_dims) {
  AxisSpec rec = ax.reciprocal(hbar);
  AxisSpec fine{factor * ax.points, ax.half_extent};
  Bridge fwd = make_bridge(ax, rec, 1.0 / hbar, -1);
  Bridge inv = make_bridge(rec, fine, 1.0 / hbar, +1);
  std::vector<int> mid_dims;
  std::vector<cplx> mid = apply_bridge_axis(data, dims, axis, fwd, mid_dims);
  std::vector<cplx> out = apply_bridge_axis(mid, mid_dims, axis, inv, out_dims);
  const double c = ax.step() * rec.step() / (2.0 * kPi * hbar);  // = 1/points
  for (cplx& v : out) v *= c;
  return out;
}

Field upsample_field(const Field& F, int factor) {
  std::vector<int> dims = F.grid.dims(), nd;
  std::vector<cplx> buf = F.values;
  for (int a = 0; a < F.grid.num_axes(); ++a) {
    buf = upsample_axis(buf, dims, a, F.grid.axis(a), F.grid.hbar, factor, nd);
    dims = nd;
  }
  std::vector<AxisSpec> xs = F.grid.x_axes, ps = F.grid.p_axes;
  for (AxisSpec& a : xs) a.points *= factor;
  for (AxisSpec& a : ps) a.points *= factor;
  Field G = make_field(make_grid(F.grid.dim_n, xs, ps, F.grid.hbar), F.label);
  G.values = std::move(buf);
  return G;
}

void check_finite(const std::vector<cplx>& v, const char* who) {
  for (const cplx& z : v)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw error(std::string(who) + ": non-finite sample in input");
}

}  // namespace

cplx linear_symbol_at(const LinearSymbol& a, const std::vector<double>& z) {
  cplx s{0.0, 0.0};
  for (std::size_t k = 0; k < a.eta.size(); ++k) s += a.eta[k] * (z[k] - a.z0[k]);
  return s;
}

Field cross_wigner(const WaveFunction& f, const WaveFunction& g) {
  if (!f.grid.approx_equal(g.grid)) throw error("cross_wigner: wavefunction grids differ");
  const int n = f.grid.dim_n;
  if (n > 2) throw error("cross_wigner: n > 2 exceeds the grid budget");
  check_finite(f.values, "cross_wigner");
  check_finite(g.values, "cross_wigner");
  const double hbar = f.grid.hbar;

  // upsample both inputs 2x along every axis
  std::vector<int> fd_dims = f.grid.dims();
  std::vector<cplx> fd = f.values, gd = g.values;
  for (int a = 0; a < n; ++a) {
    std::vector<int> nd;
    fd = upsample_axis(fd, fd_dims, a, f.grid.axes[a], hbar, 2, nd);
    gd = upsample_axis(gd, fd_dims, a, f.grid.axes[a], hbar, 2, nd);
    fd_dims = nd;
  }
  Shape fine_sh(fd_dims);

  // output grid: x-axes as input, p-axes reciprocal
  std::vector<AxisSpec> p_axes(n);
  for (int a = 0; a < n; ++a) p_axes[a] = f.grid.axes[a].reciprocal(hbar);
  PhaseSpaceGrid wgrid = make_grid(n, f.grid.axes, p_axes, hbar);
  Field W = make_field(wgrid, "wigner");
  Shape out_sh(wgrid.dims());

  // per x-point: A(u_j) = fd(x + u) conj(gd(x - u)) on the doubled u-grid,
  // then the folded half-step transform onto the reciprocal p-grid
  std::vector<Bridge> p_bridges(n);
  std::vector<int> u_dims(n), x_dims(n);
  for (int a = 0; a < n; ++a) {
    AxisSpec u_axis{2 * f.grid.axes[a].points, f.grid.axes[a].half_extent};
    p_bridges[a] = make_bridge(u_axis, p_axes[a], 2.0 / hbar, -1);
    u_dims[a] = u_axis.points;
    x_dims[a] = f.grid.axes[a].points;
  }
  Shape u_sh(u_dims), x_sh(x_dims);

  double constant = 1.0;
  for (int a = 0; a < n; ++a) constant *= f.grid.axes[a].step() / (2.0 * kPi * hbar);

  std::vector<cplx> A(u_sh.size());
  std::vector<int> kidx, jidx;
  const std::size_t npts_x = x_sh.size();
  for (std::size_t kf = 0; kf < npts_x; ++kf) {
    x_sh.unflat(kf, kidx);
    for (std::size_t jf = 0; jf < A.size(); ++jf) {
      u_sh.unflat(jf, jidx);
      std::size_t ip = 0, im = 0;
      bool ok = true;
      for (int a = 0; a < n; ++a) {
        const int N = x_dims[a];
        int sp = 2 * kidx[a] + jidx[a] - N;  // index of x + u on the fine grid
        int sm = 2 * kidx[a] - jidx[a] + N;  // index of x - u
        if (sp < 0 || sp >= 2 * N || sm < 0 || sm >= 2 * N) {
          ok = false;
          break;
        }
        ip += fine_sh.strides[a] * static_cast<std::size_t>(sp);
        im += fine_sh.strides[a] * static_cast<std::size_t>(sm);
      }
      A[jf] = ok ? fd[ip] * std::conj(gd[im]) : cplx{0.0, 0.0};
    }
    // transform u -> p along every axis (with modular folding 2N -> N)
    std::vector<int> cur = u_dims, nd;
    std::vector<cplx> buf = A;
    for (int a = 0; a < n; ++a) {
      buf = apply_bridge_axis(buf, cur, a, p_bridges[a], nd);
      cur = nd;
    }
    // scatter into W at x-index kidx
    Shape p_sh(cur);
    std::size_t base = 0;
    for (int a = 0; a < n; ++a) base += out_sh.strides[a] * static_cast<std::size_t>(kidx[a]);
    for (std::size_t mf = 0; mf < buf.size(); ++mf) {
      p_sh.unflat(mf, jidx);
      std::size_t off = base;
      for (int a = 0; a < n; ++a) off += out_sh.strides[n + a] * static_cast<std::size_t>(jidx[a]);
      W.values[off] = constant * buf[mf];
    }
  }
  return W;
}

Field wigner_transform(const WaveFunction& f) {
  Field W = cross_wigner(f, f);
  // genuine Wigner output must be real up to round-off; a gross violation
  // means the state does not fit the grid
  if (!is_effectively_real(W, 1e-6))
    throw error("wigner_transform: output has a large imaginary part (grid too coarse?)");
  return W;
}

Field wigner_of_mixture(const std::vector<double>& weights, const std::vector<WaveFunction>& fs) {
  if (weights.size() != fs.size() || fs.empty())
    throw error("wigner_of_mixture: weights and states must match and be non-empty");
  double wsum = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw error("wigner_of_mixture: negative weight");
    wsum += w;
  }
  if (std::abs(wsum - 1.0) > 1e-12) throw error("wigner_of_mixture: weights must sum to 1");
  Field acc = scale(wigner_transform(fs[0]), weights[0]);
  for (std::size_t i = 1; i < fs.size(); ++i) {
    Field Wi = wigner_transform(fs[i]);
    if (!Wi.grid.approx_equal(acc.grid)) throw error("wigner_of_mixture: member grids differ");
    for (std::size_t k = 0; k < acc.values.size(); ++k) acc.values[k] += weights[i] * Wi.values[k];
  }
  acc.label = "mixture";
  return acc;
}

Field symplectic_ft(const Field& F) {
  const int n = F.grid.dim_n;
  const double hbar = F.grid.hbar;
  check_finite(F.values, "symplectic_ft");

  // kernel e^{-i sigma(zeta,z)/hbar} = e^{-i x.zeta_p/hbar} e^{+i p.zeta_x/hbar}:
  // x-directions pair forward onto recip(x) (labeled zeta_p), p-directions
  // pair backward onto recip(p) (labeled zeta_x)
  std::vector<int> cur = F.grid.dims(), nd;
  std::vector<cplx> buf = F.values;
  std::vector<AxisSpec> zeta_x(n), zeta_p(n);
  for (int a = 0; a < n; ++a) {
    zeta_p[a] = F.grid.x_axes[a].reciprocal(hbar);
    Bridge b = make_bridge(F.grid.x_axes[a], zeta_p[a], 1.0 / hbar, -1);
    buf = apply_bridge_axis(buf, cur, a, b, nd);
    cur = nd;
  }
  for (int a = 0; a < n; ++a) {
    zeta_x[a] = F.grid.p_axes[a].reciprocal(hbar);
    Bridge b = make_bridge(F.grid.p_axes[a], zeta_x[a], 1.0 / hbar, +1);
    buf = apply_bridge_axis(buf, cur, n + a, b, nd);
    cur = nd;
  }

  double constant = F.grid.cell_volume();
  for (int a = 0; a < 2 * n; ++a) constant /= 2.0 * kPi * hbar;
  constant *= std::pow(2.0 * kPi * hbar, n);  // net (2 pi hbar)^{-n} * dV

  // buf axes are ordered (zeta_p, zeta_x); swap halves into Field order
  PhaseSpaceGrid out_grid = make_grid(n, zeta_x, zeta_p, hbar);
  Field G = make_field(out_grid, F.label.empty() ? "sft" : F.label + ":sft");
  Shape in_sh(cur), out_sh(out_grid.dims());
  std::vector<int> idx(2 * n), odx(2 * n);
  for (std::size_t f = 0; f < buf.size(); ++f) {
    in_sh.unflat(f, idx);
    for (int a = 0; a < n; ++a) {
      odx[a] = idx[n + a];  // zeta_x block
      odx[n + a] = idx[a];  // zeta_p block
    }
    G.values[out_sh.flat(odx)] = constant * buf[f];
  }
  return G;
}

namespace {

// shared n-dim hbar-FT core over a list of axes
std::vector<cplx> hbar_ft_nd(const std::vector<cplx>& data, const std::vector<int>& dims,
                             const std::vector<AxisSpec>& axes, double hbar, int sign,
                             std::vector<AxisSpec>& out_axes) {
  std::vector<int> cur = dims, nd;
  std::vector<cplx> buf = data;
  out_axes.resize(axes.size());
  double constant = 1.0;
  for (std::size_t a = 0; a < axes.size(); ++a) {
    out_axes[a] = axes[a].reciprocal(hbar);
    Bridge b = make_bridge(axes[a], out_axes[a], 1.0 / hbar, sign);
    buf = apply_bridge_axis(buf, cur, static_cast<int>(a), b, nd);
    cur = nd;
    constant *= axes[a].step() / std::sqrt(2.0 * kPi * hbar);
  }
  for (cplx& v : buf) v *= constant;
  return buf;
}

}  // namespace

WaveFunction hbar_ft(const WaveFunction& f) {
  check_finite(f.values, "hbar_ft");
  std::vector<AxisSpec> out_axes;
  std::vector<cplx> vals = hbar_ft_nd(f.values, f.grid.dims(), f.grid.axes, f.grid.hbar, -1, out_axes);
  WaveFunction g;
  g.grid = make_config_grid(f.grid.dim_n, out_axes, f.grid.hbar);
  g.values = std::move(vals);
  return g;
}

WaveFunction hbar_ft_inverse(const WaveFunction& g) {
  check_finite(g.values, "hbar_ft_inverse");
  std::vector<AxisSpec> out_axes;
  std::vector<cplx> vals = hbar_ft_nd(g.values, g.grid.dims(), g.grid.axes, g.grid.hbar, +1, out_axes);
  WaveFunction f;
  f.grid = make_config_grid(g.grid.dim_n, out_axes, g.grid.hbar);
  f.values = std::move(vals);
  return f;
}

Field hbar_ft_field(const Field& F) {
  check_finite(F.values, "hbar_ft_field");
  const int n = F.grid.dim_n;
  std::vector<AxisSpec> axes(2 * n);
  for (int a = 0; a < 2 * n; ++a) axes[a] = F.grid.axis(a);
  std::vector<AxisSpec> out_axes;
  std::vector<cplx> vals = hbar_ft_nd(F.values, F.grid.dims(), axes, F.grid.hbar, -1, out_axes);
  PhaseSpaceGrid g = make_grid(n, std::vector<AxisSpec>(out_axes.begin(), out_axes.begin() + n),
                               std::vector<AxisSpec>(out_axes.begin() + n, out_axes.end()), F.grid.hbar);
  Field G = make_field(g, F.label.empty() ? "hft" : F.label + ":hft");
  G.values = std::move(vals);
  return G;
}

cplx trace_pairing(const Field& A, const Field& B) {
  if (!A.grid.approx_equal(B.grid)) throw error("trace_pairing: grid mismatch");
  double c = std::pow(2.0 * kPi * A.grid.hbar, -A.grid.dim_n);
  return c * integrate_product(A, B);
}

Field spectral_derivative(const Field& F, int axis) {
  const int na = F.grid.num_axes();
  if (axis < 0 || axis >= na) throw error("spectral_derivative: axis out of range");
  const double hbar = F.grid.hbar;
  const AxisSpec& ax = F.grid.axis(axis);
  AxisSpec rec = ax.reciprocal(hbar);
  Bridge fwd = make_bridge(ax, rec, 1.0 / hbar, -1);
  Bridge inv = make_bridge(rec, ax, 1.0 / hbar, +1);

  std::vector<int> dims = F.grid.dims(), nd;
  std::vector<cplx> buf = apply_bridge_axis(F.values, dims, axis, fwd, nd);
  // multiply by i u / hbar; the unpaired most-negative (Nyquist) bin is
  // zeroed so real fields keep real derivatives
  {
    Shape sh(nd);
    std::vector<int> idx;
    for (std::size_t f = 0; f < buf.size(); ++f) {
      sh.unflat(f, idx);
      int l = idx[axis];
      double u = (l == 0) ? 0.0 : rec.coord(l);
      buf[f] *= kI * (u / hbar);
    }
  }
  buf = apply_bridge_axis(buf, nd, axis, inv, dims);
  Field G = make_field(F.grid, F.label);
  G.values = std::move(buf);
  const double c = ax.step() * rec.step() / (2.0 * kPi * hbar);  // roundtrip 1/N
  for (cplx& v : G.values) v *= c;
  return G;
}

namespace {

Field moyal_linear(const LinearSymbol& a, const Field& F, double grad_sign) {
  const int na = F.grid.num_axes();
  if (static_cast<int>(a.eta.size()) != na || static_cast<int>(a.z0.size()) != na)
    throw error("moyal: symbol dimension does not match the grid");
  const int n = F.grid.dim_n;
  const double hbar = F.grid.hbar;

  // eta . J grad F = sum_k eta_k (J grad F)_k ; J(gx, gp) = (gp, -gx)
  Field acc = make_field(F.grid, F.label);
  for (int k = 0; k < na; ++k) {
    if (a.eta[k] == cplx{0.0, 0.0}) continue;
    int paired = (k < n) ? (n + k) : (k - n);           // (J grad)_k = +/- d/dz_paired
    double s = (k < n) ? 1.0 : -1.0;
    Field d = spectral_derivative(F, paired);
    cplx w = a.eta[k] * s;
    for (std::size_t i = 0; i < acc.values.size(); ++i) acc.values[i] += w * d.values[i];
  }

  Shape sh(F.grid.dims());
  std::vector<double> z;
  const cplx gfac = grad_sign * kI * (0.5 * hbar);
  for (std::size_t i = 0; i < acc.values.size(); ++i) {
    grid_point(F.grid, sh, i, z);
    acc.values[i] = linear_symbol_at(a, z) * F.values[i] + gfac * acc.values[i];
  }
  return acc;
}

}  // namespace

Field moyal_linear_left(const LinearSymbol& a, const Field& F) { return moyal_linear(a, F, +1.0); }

Field moyal_linear_right(const LinearSymbol& a, const Field& F) { return moyal_linear(a, F, -1.0); }

Field resample_linear_map(const Field& F, const Eigen::MatrixXd& S) {
  const int na = F.grid.num_axes();
  if (S.rows() != na || S.cols() != na) throw error("resample: matrix size does not match grid");
  // trigonometric refinement before the multilinear read keeps the moment
  // error of the resampled field well below the interpolation tolerance
  Field fine = upsample_field(F, F.grid.dim_n == 1 ? 4 : 2);
  Field G = make_field(F.grid, F.label);
  Shape sh(F.grid.dims());
  std::vector<double> z(na), w(na);
  for (std::size_t f = 0; f < G.values.size(); ++f) {
    grid_point(F.grid, sh, f, z);
    for (int r = 0; r < na; ++r) {
      double s = 0.0;
      for (int c = 0; c < na; ++c) s += S(r, c) * z[c];
      w[r] = s;
    }
    G.values[f] = field_at(fine, w);
  }
  return G;
}

}  // namespace wigcert
