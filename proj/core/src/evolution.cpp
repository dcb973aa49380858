#include "soundcone/evolution.hpp"

#include <cmath>
#include <stdexcept>

namespace soundcone {

EvolvedEnsemble as_ensemble(const StationaryEnsemble& omega) {
  EvolvedEnsemble ens;
  for (const auto& s : omega.sectors)
    for (int c = 0; c < s.vectors.cols(); ++c)
      ens.branches.push_back({s.weights(c), s.total_number, s.vectors.col(c)});
  return ens;
}

EvolvedEnsemble apply_channel(const StationaryEnsemble& omega,
                              const ExcitationChannel& ch,
                              const SectorModel& model) {
  EvolvedEnsemble ens;
  double total = 0;
  for (const auto& s : omega.sectors) {
    auto from = model.basis(s.total_number);
    for (const auto& K : ch.kraus) {
      int Nto = s.total_number + K.delta_n();
      if (Nto < 0) continue;  // lowering below the vacuum annihilates
      if (Nto > model.max_total_number())
        throw std::invalid_argument(
            "channel image leaves the available sectors");
      SparseMatrix Km = K.matrix(*from, *model.basis(Nto));
      for (int c = 0; c < s.vectors.cols(); ++c) {
        Eigen::VectorXcd w = Km * s.vectors.col(c);
        double n2 = w.squaredNorm();
        if (n2 < 1e-28) continue;  // zero-norm branch
        ens.branches.push_back({s.weights(c) * n2, Nto, w / std::sqrt(n2)});
        total += s.weights(c) * n2;
      }
    }
  }
  if (std::abs(total - 1.0) > 1e-10)
    throw std::runtime_error("channel application lost trace: total weight " +
                             std::to_string(total));
  return ens;
}

Eigen::MatrixXcd covariance(const EvolvedEnsemble& ens,
                            const SectorModel& model) {
  int n = model.n_sites();
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& b : ens.branches) {
    if (b.total_number == 0) continue;
    Eigen::MatrixXcd lowered(model.basis(b.total_number - 1)->dim(), n);
    for (int k = 0; k < n; ++k)
      lowered.col(k) = model.lowering(b.total_number, k) * b.vec;
    C += b.weight * (lowered.adjoint() * lowered);
  }
  return (C + C.adjoint()) / 2.0;  // symmetrize away roundoff
}

Eigen::MatrixXcd covariance(const StationaryEnsemble& omega,
                            const SectorModel& model) {
  return covariance(as_ensemble(omega), model);
}

double cutoff_leakage(const EvolvedEnsemble& ens, const SectorModel& model) {
  double leak = 0;
  for (const auto& b : ens.branches) {
    auto basis = model.basis(b.total_number);
    for (int i = 0; i < basis->dim(); ++i) {
      const auto& occ = basis->state(i);
      bool at_ceiling = false;
      for (int nj : occ)
        if (nj >= model.site_cutoff()) { at_ceiling = true; break; }
      if (at_ceiling) leak += b.weight * std::norm(b.vec(i));
    }
  }
  return leak;
}

Eigen::VectorXcd dense_propagate(const SectorModel& model, int total_number,
                                 const Eigen::VectorXcd& v, double t) {
  const auto& eig = model.eigensystem(total_number);
  Eigen::VectorXcd c = eig.vectors.adjoint() * v;
  for (int i = 0; i < c.size(); ++i)
    c(i) *= std::exp(Complex(0, -eig.values(i) * t));
  return eig.vectors * c;
}

namespace {

// Single Lanczos approximation of exp(-i t H) v with subspace dimension m.
// Returns the approximation and an error estimate from the final
// subdiagonal coupling.
Eigen::VectorXcd lanczos_step(const SparseMatrix& H, const Eigen::VectorXcd& v,
                              double t, int m, double& err) {
  int dim = static_cast<int>(v.size());
  m = std::min(m, dim);
  Eigen::MatrixXcd V(dim, m);
  Eigen::VectorXd alpha(m), beta(m);
  double beta_next = 0;
  V.col(0) = v.normalized();
  int used = m;
  for (int j = 0; j < m; ++j) {
    Eigen::VectorXcd w = H * V.col(j);
    alpha(j) = w.dot(V.col(j)).real();
    w -= alpha(j) * V.col(j);
    if (j > 0) w -= beta(j - 1) * V.col(j - 1);
    // full reorthogonalization, cheap at desk scale
    w -= V.leftCols(j + 1) * (V.leftCols(j + 1).adjoint() * w);
    beta_next = w.norm();
    if (j + 1 < m) {
      if (beta_next < 1e-14) { used = j + 1; break; }
      beta(j) = beta_next;
      V.col(j + 1) = w / beta_next;
    }
  }
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(used, used);
  for (int j = 0; j < used; ++j) {
    T(j, j) = alpha(j);
    if (j + 1 < used) T(j, j + 1) = T(j + 1, j) = beta(j);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
  Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(used);
  e1(0) = 1.0;
  Eigen::VectorXcd y = es.eigenvectors().transpose() * e1;
  for (int i = 0; i < used; ++i)
    y(i) *= std::exp(Complex(0, -es.eigenvalues()(i) * t));
  y = es.eigenvectors() * y;
  err = (used < m) ? 0.0 : beta_next * std::abs(y(used - 1)) * std::abs(t);
  return v.norm() * (V.leftCols(used) * y);
}

}  // namespace

Eigen::VectorXcd krylov_propagate(const SparseMatrix& H,
                                  const Eigen::VectorXcd& v, double t,
                                  double tol) {
  if (t == 0) return v;
  Eigen::VectorXcd cur = v;
  double remaining = t;
  double step = t;
  int guard = 0;
  while (std::abs(remaining) > 1e-15 * std::abs(t)) {
    if (++guard > 100000)
      throw std::runtime_error("krylov propagation failed to converge at t = " +
                               std::to_string(t - remaining));
    double s = (std::abs(step) > std::abs(remaining)) ? remaining : step;
    double err = 0;
    Eigen::VectorXcd next = lanczos_step(H, cur, s, 30, err);
    if (err > tol) { step = s / 2; continue; }
    cur = next;
    remaining -= s;
  }
  return cur;
}

std::vector<double> uniform_grid(double t_max, double dt) {
  if (t_max <= 0 || dt <= 0)
    throw std::invalid_argument("time grid needs t_max > 0 and dt > 0");
  std::vector<double> g;
  int steps = static_cast<int>(std::round(t_max / dt));
  for (int i = 0; i <= steps; ++i) g.push_back(i * dt);
  return g;
}

Trajectory evolve(const EvolvedEnsemble& initial, const SectorModel& model,
                  const StationaryEnsemble& omega,
                  const std::vector<double>& time_grid,
                  const SolverSettings& settings) {
  if (time_grid.empty() || time_grid.front() != 0)
    throw std::invalid_argument("time grid must start at 0");
  for (size_t i = 1; i < time_grid.size(); ++i)
    if (time_grid[i] <= time_grid[i - 1])
      throw std::invalid_argument("time grid must be strictly increasing");
  bool krylov = settings.method == "krylov";
  if (!krylov && settings.method != "dense_expm")
    throw std::invalid_argument("unknown solver method: " + settings.method);

  int n = model.n_sites();
  size_t nt = time_grid.size();
  Trajectory traj;
  traj.settings = settings;
  traj.times = time_grid;
  traj.x.resize(nt, n);
  traj.covariances.reserve(nt);
  traj.leakage.resize(nt);
  traj.reference_covariance = covariance(omega, model);
  Eigen::VectorXd ref_diag = traj.reference_covariance.diagonal().real();

  // Initial per-branch energies for drift monitoring.
  std::vector<double> energy0;
  for (const auto& b : initial.branches)
    energy0.push_back(
        (b.vec.adjoint() * (model.hamiltonian(b.total_number).mat * b.vec))(0)
            .real());

  EvolvedEnsemble cur = initial;
  for (size_t it = 0; it < nt; ++it) {
    double t = time_grid[it];
    if (it > 0) {
      double dt = time_grid[it] - time_grid[it - 1];
      for (auto& b : cur.branches) {
        if (krylov)
          b.vec = krylov_propagate(model.hamiltonian(b.total_number).mat, b.vec,
                                   dt, settings.tol);
        else
          b.vec = dense_propagate(model, b.total_number, b.vec, dt);
      }
    }
    cur.time = t;
    for (size_t bi = 0; bi < cur.branches.size(); ++bi) {
      const auto& b = cur.branches[bi];
      traj.max_norm_drift =
          std::max(traj.max_norm_drift, std::abs(b.vec.norm() - 1.0));
      double e = (b.vec.adjoint() *
                  (model.hamiltonian(b.total_number).mat * b.vec))(0)
                     .real();
      traj.max_energy_drift =
          std::max(traj.max_energy_drift, std::abs(e - energy0[bi]));
    }
    Eigen::MatrixXcd C = covariance(cur, model);
    Eigen::VectorXd x = (C - traj.reference_covariance).diagonal().real();

    // Independent route: direct number expectations from occupations.
    Eigen::VectorXd direct = -ref_diag;
    for (const auto& b : cur.branches) {
      auto basis = model.basis(b.total_number);
      for (int i = 0; i < basis->dim(); ++i) {
        double p = b.weight * std::norm(b.vec(i));
        if (p == 0) continue;
        const auto& occ = basis->state(i);
        for (int j = 0; j < n; ++j) direct(j) += p * occ[j];
      }
    }
    if ((x - direct).cwiseAbs().maxCoeff() > 1e-10)
      throw std::runtime_error(
          "internal consistency failure: covariance diagonal disagrees with "
          "direct number expectations at t = " + std::to_string(t));

    traj.x.row(it) = x;
    traj.covariances.push_back(std::move(C));
    traj.leakage[it] = cutoff_leakage(cur, model);
    if (traj.leakage[it] > settings.leak_tol) traj.leak_warning = true;
  }
  return traj;
}

}  // namespace soundcone
