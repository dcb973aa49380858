#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "soundcone/evolution.hpp"

using namespace soundcone;

namespace {

// Independent oracle: a single particle under H = -tau M evolves with the
// one-body unitary e^{i tau M t}, so the occupation at site j starting from
// site j0 is |(e^{i tau M t})_{j,j0}|^2.
Eigen::VectorXd one_body_occupations(const Graph& g, double tau, int j0,
                                     double t) {
  Eigen::MatrixXcd gen = Complex(0, 1) * tau * t * g.adjacency.cast<Complex>();
  Eigen::MatrixXcd u = gen.exp();
  return u.col(j0).cwiseAbs2().real();
}

Trajectory single_particle_trajectory(const Graph& g, double tau,
                                      const std::vector<double>& grid,
                                      const std::string& method) {
  SectorModel model(g, {tau, 0.0, 0.0, {}}, 3);
  StationaryEnsemble vac = ground_state(model, {0});
  auto rho0 = apply_channel(vac, add_boson_channel({0}), model);
  SolverSettings s;
  s.method = method;
  return evolve(rho0, model, vac, grid, s);
}

}  // namespace

TEST_CASE("covariance of simple pure states") {
  SectorModel model(make_path(2), {1.0, 0.0, 0.0, {}}, 2);
  auto b1 = model.basis(1);

  EvolvedEnsemble ens;
  Eigen::VectorXcd plus(2);
  plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);  // (|10> + |01>)/sqrt(2)
  ens.branches.push_back({1.0, 1, plus});
  Eigen::MatrixXcd C = covariance(ens, model);
  CHECK(std::abs(C(0, 0) - Complex(0.5)) < 1e-14);
  CHECK(std::abs(C(1, 1) - Complex(0.5)) < 1e-14);
  CHECK(std::abs(C(0, 1) - Complex(0.5)) < 1e-14);

  EvolvedEnsemble fock;
  Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(2);
  e0(b1->index_of({1, 0})) = 1;
  fock.branches.push_back({1.0, 1, e0});
  Eigen::MatrixXcd Cf = covariance(fock, model);
  CHECK(std::abs(Cf(0, 0) - Complex(1.0)) < 1e-14);
  CHECK(std::abs(Cf(0, 1)) < 1e-14);
  CHECK(std::abs(Cf(1, 1)) < 1e-14);
}

TEST_CASE("covariance is Hermitian PSD with trace N") {
  SectorModel model(make_cycle(4), {1.0, 2.0, 0.0, {}}, 2);
  StationaryEnsemble th = thermal_state(model, {0, 1, 2}, 0.7);
  Eigen::MatrixXcd C = covariance(th, model);
  CHECK((C - C.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(C);
  CHECK(es.eigenvalues()(0) >= -1e-14);
  double expected_n = 0;
  for (const auto& s : th.sectors)
    expected_n += s.weights.sum() * s.total_number;
  CHECK(C.trace().real() == doctest::Approx(expected_n).epsilon(1e-12));
}

TEST_CASE("free particle matches the one-body oracle on a path") {
  Graph g = make_path(6);
  auto grid = uniform_grid(4.0, 0.25);
  Trajectory traj = single_particle_trajectory(g, 1.0, grid, "dense_expm");
  for (size_t it = 0; it < grid.size(); ++it) {
    Eigen::VectorXd oracle = one_body_occupations(g, 1.0, 0, grid[it]);
    CHECK((traj.x.row(it).transpose() - oracle).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("free particle matches the one-body oracle on a cycle") {
  Graph g = make_cycle(6);
  auto grid = uniform_grid(4.0, 0.5);
  Trajectory traj = single_particle_trajectory(g, 0.8, grid, "dense_expm");
  for (size_t it = 0; it < grid.size(); ++it) {
    Eigen::VectorXd oracle = one_body_occupations(g, 0.8, 0, grid[it]);
    CHECK((traj.x.row(it).transpose() - oracle).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("krylov agrees with dense propagation") {
  SectorModel model(make_path(4), {1.0, 1.0, 0.0, {}}, 3);
  StationaryEnsemble th = thermal_state(model, {0, 2}, 1.0);
  auto rho0 = apply_channel(th, add_boson_channel({0, 1, 2, 3}), model);
  auto grid = uniform_grid(2.0, 0.25);
  SolverSettings dense{"dense_expm", 1e-12, 1.0};
  SolverSettings kry{"krylov", 1e-12, 1.0};
  Trajectory a = evolve(rho0, model, th, grid, dense);
  Trajectory b = evolve(rho0, model, th, grid, kry);
  CHECK((a.x - b.x).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("krylov propagator reverses in time") {
  SectorModel model(make_path(4), {1.0, 1.5, 0.0, {}}, 2);
  const auto& H = model.hamiltonian(2).mat;
  Eigen::VectorXcd v = Eigen::VectorXcd::Random(model.basis(2)->dim());
  v.normalize();
  Eigen::VectorXcd fwd = krylov_propagate(H, v, 3.0, 1e-12);
  Eigen::VectorXcd back = krylov_propagate(H, fwd, -3.0, 1e-12);
  CHECK((back - v).norm() < 1e-9);
  CHECK(std::abs(fwd.norm() - 1.0) < 1e-12);
}

TEST_CASE("stationary state without a channel stays put") {
  SectorModel model(make_cycle(4), {1.0, 1.0, 0.0, {}}, 2);
  StationaryEnsemble th = thermal_state(model, {0, 1, 2}, 1.0);
  auto grid = uniform_grid(3.0, 0.5);
  Trajectory traj = evolve(as_ensemble(th), model, th, grid, {});
  CHECK(traj.x.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("evolution conserves totals and norms") {
  SectorModel model(make_path(4), {1.0, 1.0, 0.0, {}}, 3);
  StationaryEnsemble th = thermal_state(model, {0, 2}, 1.0);
  auto rho0 = apply_channel(th, add_boson_channel({0}), model);
  auto grid = uniform_grid(5.0, 0.25);
  Trajectory traj = evolve(rho0, model, th, grid, {});
  Eigen::VectorXd totals = traj.x.rowwise().sum();
  CHECK((totals.array() - totals(0)).abs().maxCoeff() < 1e-11);
  CHECK(traj.max_norm_drift < 1e-11);
  CHECK(traj.max_energy_drift < 1e-11);
}

TEST_CASE("cutoff leakage flags weight at the ceiling") {
  SectorModel model(make_path(2), {1.0, 0.0, 0.0, {}}, 2);
  auto b = model.basis(2);
  EvolvedEnsemble ens;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(b->dim());
  v(b->index_of({2, 0})) = 1;  // site 0 at the ceiling
  ens.branches.push_back({1.0, 2, v});
  CHECK(cutoff_leakage(ens, model) == doctest::Approx(1.0));

  Eigen::VectorXcd w = Eigen::VectorXcd::Zero(b->dim());
  w(b->index_of({1, 1})) = 1;
  EvolvedEnsemble safe;
  safe.branches.push_back({1.0, 2, w});
  CHECK(cutoff_leakage(safe, model) == doctest::Approx(0.0));
}

TEST_CASE("grid construction and validation") {
  auto g = uniform_grid(1.0, 0.25);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == doctest::Approx(1.0));
  CHECK_THROWS_AS(uniform_grid(0.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(uniform_grid(1.0, 0.0), std::invalid_argument);

  SectorModel model(make_path(2), {1.0, 0.0, 0.0, {}}, 2);
  StationaryEnsemble vac = ground_state(model, {0});
  auto rho0 = apply_channel(vac, add_boson_channel({0}), model);
  CHECK_THROWS_AS(evolve(rho0, model, vac, {0.5, 1.0}, {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(evolve(rho0, model, vac, {0.0, 1.0, 0.5}, {}),
                  std::invalid_argument);
  SolverSettings bad;
  bad.method = "chebyshev";
  CHECK_THROWS_AS(evolve(rho0, model, vac, {0.0, 1.0}, bad),
                  std::invalid_argument);
}
