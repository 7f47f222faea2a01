#include "wigcert/moments.hpp"

#include <cmath>
#include <numbers>

#include "wigcert/transforms.hpp"

namespace wigcert {

MomentReport moment_report(const Field& F, double mass_eps) {
  const int na = F.grid.num_axes();
  Shape sh(F.grid.dims());

  MomentReport rep;
  rep.mass = integrate(F);
  if (std::abs(rep.mass) <= mass_eps) throw error("moment_report: total mass is (near) zero");
  rep.boundary_mass_fraction = boundary_mass_fraction(F);

  const double dV = F.grid.cell_volume();
  const cplx inv_mass = 1.0 / rep.mass;

  std::vector<KahanSumC> mean_acc(na);
  std::vector<double> z;
  for (std::size_t f = 0; f < F.values.size(); ++f) {
    grid_point(F.grid, sh, f, z);
    for (int a = 0; a < na; ++a) mean_acc[a].add(z[a] * F.values[f]);
  }
  rep.mean.resize(na);
  for (int a = 0; a < na; ++a) rep.mean[a] = (mean_acc[a].value() * dV * inv_mass).real();

  std::vector<KahanSumC> cov_acc(static_cast<std::size_t>(na) * na);
  for (std::size_t f = 0; f < F.values.size(); ++f) {
    grid_point(F.grid, sh, f, z);
    for (int a = 0; a < na; ++a) {
      double da = z[a] - rep.mean[a];
      for (int b = a; b < na; ++b)
        cov_acc[static_cast<std::size_t>(a) * na + b].add(da * (z[b] - rep.mean[b]) * F.values[f]);
    }
  }
  rep.covariance.resize(na, na);
  for (int a = 0; a < na; ++a)
    for (int b = a; b < na; ++b) {
      double c = (cov_acc[static_cast<std::size_t>(a) * na + b].value() * dV * inv_mass).real();
      rep.covariance(a, b) = c;
      rep.covariance(b, a) = c;
    }

  for (int a = 0; a < na; ++a) {
    if (!std::isfinite(rep.mean[a])) throw error("moment_report: non-finite mean");
    for (int b = 0; b < na; ++b)
      if (!std::isfinite(rep.covariance(a, b))) throw error("moment_report: non-finite covariance");
  }

  KahanSum l2;
  double inv2 = std::norm(inv_mass);
  for (const cplx& v : F.values) l2.add(std::norm(v) * inv2);
  rep.purity = std::pow(2.0 * std::numbers::pi * F.grid.hbar, F.grid.dim_n) * l2.value() * dV;
  return rep;
}

Field density_from_square(const Field& F, SquareRoute which) {
  Field unit = normalize_l2(F);
  Field base = (which == SquareRoute::direct) ? std::move(unit) : symplectic_ft(unit);
  Field dens = make_field(base.grid, F.label.empty() ? "density" : F.label + ":density");
  for (std::size_t i = 0; i < base.values.size(); ++i)
    dens.values[i] = cplx{std::norm(base.values[i]), 0.0};
  return dens;
}

EntropyValue boltzmann_entropy(const Field& mu, double clip_threshold, double mass_tol) {
  if (!is_effectively_real(mu, 1e-8)) throw error("boltzmann_entropy: density must be real");
  const double dV = mu.grid.cell_volume();

  KahanSum mass_acc;
  for (const cplx& v : mu.values) mass_acc.add(v.real());
  double mass = mass_acc.value() * dV;
  if (std::abs(mass - 1.0) > mass_tol)
    throw error("boltzmann_entropy: density mass deviates from 1 beyond tolerance");

  KahanSum ent, clipped;
  for (const cplx& v : mu.values) {
    double m = v.real();
    if (m > 0.0)
      ent.add(-m * std::log(m));
    else if (m < 0.0)
      clipped.add(-m);
  }
  EntropyValue e;
  e.value = ent.value() * dV;
  e.clipped_mass = clipped.value() * dV;
  if (e.clipped_mass > clip_threshold)
    throw error("boltzmann_entropy: clipped negative mass exceeds threshold (not a density)");
  return e;
}

}  // namespace wigcert
