#ifndef SOUNDCONE_EVOLUTION_HPP
#define SOUNDCONE_EVOLUTION_HPP

#include <string>
#include <vector>

#include "soundcone/channels.hpp"
#include "soundcone/states.hpp"

namespace soundcone {

/// Weighted pure-state ensemble: one branch per (Kraus operator, kept
/// eigenvector) pair. Density matrices are never materialized.
struct EvolvedEnsemble {
  struct Branch {
    double weight;
    int total_number;
    Eigen::VectorXcd vec;  // unit norm
  };
  std::vector<Branch> branches;
  double time = 0;
};

/// rho(0) = Phi(omega) as a branch ensemble; zero-norm branches dropped.
EvolvedEnsemble apply_channel(const StationaryEnsemble& omega,
                              const ExcitationChannel& ch,
                              const SectorModel& model);

/// omega itself as a branch ensemble (its own eigenvectors).
EvolvedEnsemble as_ensemble(const StationaryEnsemble& omega);

/// One-body covariance matrix C_{j,k} = <b_j† b_k>; Hermitian PSD.
Eigen::MatrixXcd covariance(const EvolvedEnsemble& ens, const SectorModel& model);
Eigen::MatrixXcd covariance(const StationaryEnsemble& omega,
                            const SectorModel& model);

/// Probability weight on basis states with some site at the cutoff ceiling.
double cutoff_leakage(const EvolvedEnsemble& ens, const SectorModel& model);

struct SolverSettings {
  std::string method = "dense_expm";  // or "krylov"
  double tol = 1e-12;                 // krylov per-step error bound
  double leak_tol = 1.0;              // warning threshold on leakage
};

struct Trajectory {
  std::vector<double> times;
  Eigen::MatrixXd x;                        // times x sites
  std::vector<Eigen::MatrixXcd> covariances;
  Eigen::MatrixXcd reference_covariance;    // C(omega)
  std::vector<double> leakage;
  double max_norm_drift = 0;
  double max_energy_drift = 0;
  bool leak_warning = false;
  SolverSettings settings;
};

/// Propagates every branch along the grid, recording x(t) = diag(C(rho(t))
/// - C(omega)), the covariance stack and the leakage series. x is also
/// recomputed from direct number expectations; a mismatch beyond 1e-10
/// throws.
Trajectory evolve(const EvolvedEnsemble& initial, const SectorModel& model,
                  const StationaryEnsemble& omega,
                  const std::vector<double>& time_grid,
                  const SolverSettings& settings = {});

/// e^{-i t H} v by the sector eigendecomposition.
Eigen::VectorXcd dense_propagate(const SectorModel& model, int total_number,
                                 const Eigen::VectorXcd& v, double t);

/// e^{-i t H} v by adaptive Lanczos steps with per-step error below tol.
Eigen::VectorXcd krylov_propagate(const SparseMatrix& H,
                                  const Eigen::VectorXcd& v, double t,
                                  double tol);

std::vector<double> uniform_grid(double t_max, double dt);

}  // namespace soundcone

#endif
