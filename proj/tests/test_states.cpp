#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "soundcone/channels.hpp"
#include "soundcone/evolution.hpp"
#include "soundcone/states.hpp"

using namespace soundcone;

TEST_CASE("two-site single-particle ground state") {
  SectorModel model(make_path(2), {1.0, 0.0, 0.0, {}}, 2);
  StationaryEnsemble g = ground_state(model, {1});
  REQUIRE(g.sectors.size() == 1);
  CHECK(g.sectors[0].total_number == 1);
  CHECK(g.sectors[0].energies(0) == doctest::Approx(-1.0));
  // (|10> + |01>) / sqrt(2) up to phase
  Eigen::VectorXcd v = g.sectors[0].vectors.col(0);
  CHECK(std::abs(std::abs(v(0)) - 1 / std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(v(0) - v(1)) < 1e-12);
  CHECK(g.sectors[0].weights(0) == doctest::Approx(1.0));
}

TEST_CASE("ground state picks the sector with minimal energy") {
  // With mu large and positive, adding particles pays, so the top sector
  // wins; with mu = 0 and U = 0 the single-particle sector already beats
  // the vacuum on a connected graph.
  SectorModel model(make_path(2), {1.0, 0.0, 0.0, {}}, 2);
  StationaryEnsemble g = ground_state(model, {0, 1});
  CHECK(g.sectors[0].total_number == 1);

  SectorModel rewarded(make_path(2), {1.0, 0.0, 5.0, {}}, 2);
  StationaryEnsemble g2 = ground_state(rewarded, {0, 1, 2});
  CHECK(g2.sectors[0].total_number == 2);
}

TEST_CASE("vacuum tie broken toward the smaller sector") {
  // Edgeless graph, U large: every sector has ground energy >= 0 and the
  // vacuum has exactly 0; N=1 also has 0 (no hopping, no interaction pairs).
  SectorModel model(build_graph(2, {}), {1.0, 3.0, 0.0, {}}, 2);
  StationaryEnsemble g = ground_state(model, {0, 1});
  CHECK(g.sectors[0].total_number == 0);
}

TEST_CASE("thermal weights on a three-level sector") {
  // Two sites, one particle: eigenvalues -1, +1. With the vacuum included
  // the energies are {0, -1, +1} and the shifted Gibbs weights are
  // proportional to {e^{-1}, 1, e^{-2}} at beta = 1.
  SectorModel model(make_path(2), {1.0, 0.0, 0.0, {}}, 2);
  StationaryEnsemble th = thermal_state(model, {0, 1}, 1.0);
  double z = 1 + std::exp(-1.0) + std::exp(-2.0);
  double got_ground = 0;
  for (const auto& s : th.sectors)
    for (int c = 0; c < s.weights.size(); ++c)
      if (std::abs(s.energies(c) + 1.0) < 1e-12) got_ground = s.weights(c);
  CHECK(got_ground == doctest::Approx(1.0 / z).epsilon(1e-12));
  CHECK(th.dropped_mass == doctest::Approx(0.0));
}

TEST_CASE("thermal state approaches the ground state at large beta") {
  SectorModel model(make_path(3), {1.0, 1.0, 0.0, {}}, 2);
  StationaryEnsemble th = thermal_state(model, {0, 1, 2}, 200.0, 1e-300);
  StationaryEnsemble g = ground_state(model, {0, 1, 2});
  Eigen::MatrixXcd Cth = covariance(th, model);
  Eigen::MatrixXcd Cg = covariance(g, model);
  CHECK((Cth - Cg).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("thermal state rejects nonpositive beta") {
  SectorModel model(make_path(2), {}, 2);
  CHECK_THROWS_AS(thermal_state(model, {0, 1}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(thermal_state(model, {0, 1}, -1.0), std::invalid_argument);
}

TEST_CASE("weight flooring reports dropped mass") {
  SectorModel model(make_path(2), {1.0, 0.0, 0.0, {}}, 2);
  StationaryEnsemble th = thermal_state(model, {0, 1}, 1.0, 1e-6);
  double total = 0;
  for (const auto& s : th.sectors) total += s.weights.sum();
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

  // An aggressive floor drops the high-energy level and reports it.
  StationaryEnsemble coarse = thermal_state(model, {0, 1}, 5.0, 1e-6 /*floor*/);
  CHECK(coarse.dropped_mass >= 0);
}

TEST_CASE("stationarity detector") {
  SectorModel model(make_path(3), {1.0, 1.0, 0.0, {}}, 2);
  StationaryEnsemble th = thermal_state(model, {0, 1, 2}, 1.0);
  CHECK(is_stationary(th, model, 1e-9).stationary);

  // Corrupt one vector: an equal mix of two eigenvectors is not an
  // eigenvector of a nondegenerate block.
  StationaryEnsemble bad = th;
  for (auto& s : bad.sectors)
    if (s.vectors.cols() >= 2) {
      Eigen::VectorXcd mix =
          (s.vectors.col(0) + s.vectors.col(1)).normalized();
      s.vectors.col(0) = mix;
      break;
    }
  CHECK_FALSE(is_stationary(bad, model, 1e-9).stationary);
}

TEST_CASE("channel validation across small instances") {
  for (int n : {2, 3}) {
    for (int nmax : {2, 3}) {
      SectorModel model(make_path(n), {1.0, 1.0, 0.0, {}}, nmax);
      std::vector<int> sectors;
      for (int N = 0; N < nmax; ++N) sectors.push_back(N);
      auto ch = add_boson_channel({0});
      auto rep = validate_channel(ch, model, sectors, 1e-10);
      CHECK(rep.pass);
      CHECK(rep.completeness_max_dev < 1e-10);
      CHECK(rep.covariance_max_dev < 1e-10);
      CHECK(rep.locality_max_dev < 1e-10);
    }
  }
}

TEST_CASE("addition at the cutoff ceiling breaks completeness") {
  // On the top sector every state has a saturated site eventually; the
  // raising isometry loses norm there and validation must say so.
  SectorModel model(make_path(2), {1.0, 0.0, 0.0, {}}, 1);
  auto ch = add_boson_channel({0});
  auto rep = validate_channel(ch, model, {1}, 1e-10);
  CHECK_FALSE(rep.pass);
  CHECK(rep.completeness_max_dev > 0.1);
}

TEST_CASE("removal channel fails witness positivity") {
  SectorModel model(make_path(2), {1.0, 0.0, 0.0, {}}, 2);
  auto ch = remove_boson_channel({0});
  auto rep = validate_channel(ch, model, {0, 1}, 1e-10);
  CHECK_FALSE(rep.pass);
  CHECK(rep.witness_min == doctest::Approx(-1.0));
  CHECK(rep.failure == "witness positivity violated");
}

TEST_CASE("phase channel is covariant with zero witness") {
  SectorModel model(make_path(2), {1.0, 1.0, 0.0, {}}, 2);
  auto ch = phase_channel(0, 0.7);
  auto rep = validate_channel(ch, model, {0, 1, 2}, 1e-10);
  CHECK(rep.pass);
  CHECK(rep.witness_min == doctest::Approx(0.0));
}

TEST_CASE("lazy addition edge cases") {
  SectorModel model(make_path(2), {1.0, 0.0, 0.0, {}}, 2);
  StationaryEnsemble vac = ground_state(model, {0});

  auto never = lazy_add_channel({0}, 0.0);
  auto rho0 = apply_channel(vac, never, model);
  REQUIRE(rho0.branches.size() == 1);
  CHECK(rho0.branches[0].total_number == 0);

  auto always = lazy_add_channel({0}, 1.0);
  auto rho1 = apply_channel(vac, always, model);
  REQUIRE(rho1.branches.size() == 1);
  CHECK(rho1.branches[0].total_number == 1);

  auto half = lazy_add_channel({0, 1}, 0.5);
  auto rhoh = apply_channel(vac, half, model);
  double total = 0, added = 0;
  for (const auto& b : rhoh.branches) {
    total += b.weight;
    added += b.weight * b.total_number;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(added == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(half.declared_n0 == doctest::Approx(0.5));

  CHECK_THROWS_AS(lazy_add_channel({0}, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(lazy_add_channel({0}, -0.1), std::invalid_argument);
}

TEST_CASE("site probabilities are validated") {
  CHECK_THROWS_AS(add_boson_channel({}), std::invalid_argument);
  CHECK_THROWS_AS(add_boson_channel({0, 1}, {0.5}), std::invalid_argument);
  CHECK_THROWS_AS(add_boson_channel({0, 1}, {0.7, 0.7}), std::invalid_argument);
  CHECK_THROWS_AS(add_boson_channel({0, 1}, {1.5, -0.5}), std::invalid_argument);
  auto ch = add_boson_channel({0, 1}, {0.25, 0.75});
  CHECK(ch.kraus.size() == 2);
}

TEST_CASE("channel application preserves trace and injects one particle") {
  SectorModel model(make_path(3), {1.0, 1.0, 0.0, {}}, 3);
  StationaryEnsemble th = thermal_state(model, {0, 1, 2}, 1.0);
  auto ch = add_boson_channel({0, 1, 2});
  auto rho = apply_channel(th, ch, model);
  double total = 0;
  for (const auto& b : rho.branches) total += b.weight;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-10));

  Eigen::MatrixXcd C0 = covariance(rho, model);
  Eigen::MatrixXcd Cw = covariance(th, model);
  Eigen::VectorXd x0 = (C0 - Cw).diagonal().real();
  CHECK(x0.sum() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("local addition only changes occupation inside the region") {
  SectorModel model(make_path(4), {1.0, 1.0, 0.0, {}}, 3);
  StationaryEnsemble full = thermal_state(model, {0, 1, 2}, 1.0);
  auto ch = add_boson_channel({1});
  auto rho = apply_channel(full, ch, model);
  Eigen::VectorXd x0 =
      (covariance(rho, model) - covariance(full, model)).diagonal().real();
  CHECK(x0(1) == doctest::Approx(1.0).epsilon(1e-10));
  for (int j : {0, 2, 3}) CHECK(std::abs(x0(j)) < 1e-10);
}
