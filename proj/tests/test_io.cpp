#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <random>

#include "oracles.hpp"
#include "wigcert/certify.hpp"
#include "wigcert/field_io.hpp"
#include "wigcert/report_json.hpp"
#include "wigcert/state_spec.hpp"
#include "wigcert/states.hpp"

using namespace wigcert;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

struct FileGuard {
  std::string path;
  ~FileGuard() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("field round trip: binary and csv preserve grid and values") {
  std::mt19937_64 rng(123);
  PhaseSpaceGrid g = make_grid(1, {make_axis(32, 5.0)}, {make_axis(16, 3.0)}, 0.7);
  Field F = oracle::random_field(g, rng, true);
  F.label = "round trip";

  for (const char* name : {"wigcert_rt.fld", "wigcert_rt.csv"}) {
    FileGuard guard{temp_path(name)};
    write_field(F, guard.path);
    Field G = read_field(guard.path);
    REQUIRE(G.grid.approx_equal(F.grid));
    CHECK(G.label == F.label);
    double dev = 0.0;
    for (std::size_t i = 0; i < F.values.size(); ++i)
      dev = std::max(dev, std::abs(F.values[i] - G.values[i]));
    CHECK(dev == 0.0);  // binary and 17-digit csv both round-trip exactly
  }
}

TEST_CASE("wavefunction round trip") {
  ConfigGrid cg = make_self_dual_config_grid(1, 64, 1.0);
  WaveFunction f = make_hermite_state(3, cg);
  for (const char* name : {"wigcert_wf.bin", "wigcert_wf.csv"}) {
    FileGuard guard{temp_path(name)};
    write_wavefunction(f, guard.path);
    WaveFunction g = read_wavefunction(guard.path);
    REQUIRE(g.grid.approx_equal(f.grid));
    double dev = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i)
      dev = std::max(dev, std::abs(f.values[i] - g.values[i]));
    CHECK(dev == 0.0);
  }
}

TEST_CASE("read errors: missing file, truncated file") {
  CHECK_THROWS_AS(read_field("/nonexistent/path/x.fld"), error);
  FileGuard guard{temp_path("wigcert_trunc.fld")};
  {
    PhaseSpaceGrid g = make_square_grid(1, 16, 2.0, 1.0);
    write_field(make_field(g), guard.path);
    std::filesystem::resize_file(guard.path, 40);
  }
  CHECK_THROWS_AS(read_field(guard.path), error);
}

TEST_CASE("report JSON is deterministic and carries the schema fields") {
  PhaseSpaceGrid g = make_self_dual_grid(1, 128, 1.0);
  Field W = make_gaussian_pure_wigner(0.5 * Eigen::Matrix2d::Identity(),
                                      Eigen::Vector2d::Zero(), g);
  MomentReport rep = moment_report(W);
  ordered_json a = to_json(rep), b = to_json(moment_report(W));
  CHECK(a.dump() == b.dump());
  CHECK(a.contains("mass"));
  CHECK(a.contains("mean"));
  CHECK(a.contains("covariance"));
  CHECK(a.contains("purity"));
  CHECK(a["covariance"].size() == 4);

  EntropyValue E = boltzmann_entropy(density_from_square(W));
  ordered_json ej = to_json(E);
  CHECK(ej.contains("entropy_nats"));
  CHECK(ej.contains("clipped_mass"));

  RefinedResult r = certify_refined_rsup(W);
  ordered_json cj = to_json(r.ineq1);
  CHECK(cj["name"] == "refined_rsup_ineq1");
  CHECK(cj.contains("verdict"));
  CHECK(cj.contains("margins"));
  CHECK(cj.contains("tolerance"));
  CHECK(cj.contains("inputs_digest"));
  CHECK(cj.contains("warnings"));
  ordered_json rj = to_json(r.report);
  for (const char* key : {"cov_W", "cov_sq", "cov_ft_sq", "purity", "lhs_min_eig",
                          "middle_min_eig", "gap_min_eig"})
    CHECK(rj.contains(key));
}

TEST_CASE("state spec: builds every kind") {
  PhaseSpaceGrid g = make_self_dual_grid(1, 128, 1.0);

  BuiltState gauss = build_state(
      ordered_json::parse(R"({"kind":"gaussian_pure","cov":[0.5,0,0,0.5]})"), g);
  CHECK(gauss.field.label == "gaussian_pure");
  CHECK_FALSE(gauss.wavefunction.has_value());

  BuiltState herm = build_state(ordered_json::parse(R"({"kind":"hermite","k":1})"), g);
  CHECK(herm.wavefunction.has_value());
  CHECK(std::abs(moment_report(herm.field).purity - 1.0) <= 1e-6);

  BuiltState mix = build_state(ordered_json::parse(
      R"({"kind":"mixture","weights":[0.5,0.5],
          "children":[{"kind":"hermite","k":0},{"kind":"hermite","k":1}]})"), g);
  CHECK(std::abs(moment_report(mix.field).purity - 0.5) <= 1e-5);

  BuiltState disc = build_state(ordered_json::parse(R"({"kind":"disc_indicator","radius":1.5})"), g);
  CHECK(std::abs(integrate(disc.field) - 1.0) <= 0.02);

  CHECK(build_state(ordered_json::parse(R"({"kind":"example_final1"})"), g).field.label ==
        "example_final1");
  CHECK(build_state(ordered_json::parse(R"({"kind":"example_final2"})"), g).field.label ==
        "example_final2");

  PhaseSpaceGrid g32 = make_square_grid(1, 32, 6.0, 1.0);
  BuiltState tens = build_state(ordered_json::parse(
      R"({"kind":"tensor_product","children":[
            {"kind":"gaussian_pure","cov":[0.5,0,0,0.5]},
            {"kind":"gaussian_pure","cov":[0.5,0,0,0.5]}]})"), g32);
  CHECK(tens.field.grid.dim_n == 2);

  FileGuard guard{temp_path("wigcert_spec.fld")};
  write_field(disc.field, guard.path);
  BuiltState file = build_state(
      ordered_json::parse(std::string(R"({"kind":"custom_file","path":")") + guard.path + "\"}"), g);
  CHECK(file.field.values == disc.field.values);
}

TEST_CASE("state spec: validation errors") {
  PhaseSpaceGrid g = make_self_dual_grid(1, 64, 1.0);
  CHECK_THROWS_AS(build_state(ordered_json::parse(R"({"no_kind":1})"), g), error);
  CHECK_THROWS_AS(build_state(ordered_json::parse(R"({"kind":"unknown_kind"})"), g), error);
  CHECK_THROWS_AS(build_state(ordered_json::parse(R"({"kind":"gaussian_pure","cov":[1,2,3]})"), g),
                  error);
  CHECK_THROWS_AS(build_state(ordered_json::parse(
                      R"({"kind":"mixture","weights":[1.0],"children":[]})"), g),
                  error);
}

TEST_CASE("digest changes with the data") {
  PhaseSpaceGrid g = make_square_grid(1, 32, 4.0, 1.0);
  Field A = make_disc_indicator(1.0, g);
  Field B = make_disc_indicator(1.1, g);
  CHECK(field_digest(A) != field_digest(B));
  CHECK(field_digest(A) == field_digest(A));
}
