#include "wigcert/report_json.hpp"

namespace wigcert {

namespace {

ordered_json matrix_row_major(const Eigen::MatrixXd& M) {
  ordered_json arr = ordered_json::array();
  for (Eigen::Index r = 0; r < M.rows(); ++r)
    for (Eigen::Index c = 0; c < M.cols(); ++c) arr.push_back(M(r, c));
  return arr;
}

}  // namespace

ordered_json to_json(const MomentReport& rep) {
  ordered_json j;
  j["mass"] = {{"re", rep.mass.real()}, {"im", rep.mass.imag()}};
  ordered_json mean = ordered_json::array();
  for (Eigen::Index i = 0; i < rep.mean.size(); ++i) mean.push_back(rep.mean[i]);
  j["mean"] = mean;
  j["covariance"] = matrix_row_major(rep.covariance);
  j["purity"] = rep.purity;
  j["boundary_mass_fraction"] = rep.boundary_mass_fraction;
  j["purity_on_mass_normalized"] = true;
  return j;
}

ordered_json to_json(const EntropyValue& e) {
  ordered_json j;
  j["entropy_nats"] = e.value;
  j["clipped_mass"] = e.clipped_mass;
  return j;
}

ordered_json to_json(const Certificate& c) {
  ordered_json j;
  j["name"] = cert_name_str(c.name);
  j["verdict"] = verdict_str(c.verdict);
  ordered_json margins = ordered_json::object();
  for (const auto& [k, v] : c.margins) margins[k] = v;
  j["margins"] = margins;
  j["tolerance"] = c.tolerance;
  j["inputs_digest"] = c.inputs_digest;
  j["warnings"] = c.warnings;
  ordered_json eq = ordered_json::object();
  for (const auto& [k, v] : c.equality_flags) eq[k] = v;
  j["equality_flags"] = eq;
  return j;
}

ordered_json to_json(const RefinedRsupReport& r) {
  ordered_json j;
  j["cov_W"] = matrix_row_major(r.cov_W);
  j["cov_sq"] = matrix_row_major(r.cov_sq);
  j["cov_ft_sq"] = matrix_row_major(r.cov_ft_sq);
  j["purity"] = r.purity;
  j["lhs_min_eig"] = r.lhs_min_eig;
  j["middle_min_eig"] = r.middle_min_eig;
  j["gap_min_eig"] = r.gap_min_eig;
  return j;
}

ordered_json grid_metadata(const PhaseSpaceGrid& g) {
  ordered_json j;
  j["dim_n"] = g.dim_n;
  j["hbar"] = g.hbar;
  ordered_json xs = ordered_json::array(), ps = ordered_json::array();
  for (int i = 0; i < g.dim_n; ++i) {
    xs.push_back({{"points", g.x_axes[i].points}, {"half_extent", g.x_axes[i].half_extent}});
    ps.push_back({{"points", g.p_axes[i].points}, {"half_extent", g.p_axes[i].half_extent}});
  }
  j["x_axes"] = xs;
  j["p_axes"] = ps;
  j["wigner_reciprocal"] = g.is_wigner_reciprocal();
  return j;
}

}  // namespace wigcert
