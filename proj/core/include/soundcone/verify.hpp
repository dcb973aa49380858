#ifndef SOUNDCONE_VERIFY_HPP
#define SOUNDCONE_VERIFY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "soundcone/evolution.hpp"

namespace soundcone {

struct PositivityResult {
  std::vector<double> min_eigs;  // lambda_min(C(rho(t)) - C(omega)) per time
  bool pass = false;
  double tol = 0;
};

/// Covariance-ordering check C(rho(t)) >= C(omega).
PositivityResult positivity_check(const Trajectory& traj, double tol);

/// gamma(t) = exp(tau t (D I + M)) x0 by dense symmetric eigendecomposition.
Eigen::MatrixXd comparison_trajectory(const Graph& g, double tau,
                                      const Eigen::VectorXd& x0,
                                      const std::vector<double>& times);

struct DominanceResult {
  Eigen::MatrixXd margins;  // gamma - x, times x sites
  double min_margin = 0;
  bool pass = false;
  double tol = 0;
};

DominanceResult dominance_check(const Trajectory& traj,
                                const Eigen::MatrixXd& gamma, double tol);

struct DiffIneqResult {
  Eigen::MatrixXd sqrt_residuals;    // interior times x sites
  Eigen::MatrixXd linear_residuals;  // interior times x sites
  double min_residual = 0;
  double fd_error_estimate = 0;  // max |x'''| dt^2 / 6 from the grid
  bool pass = false;
  double tol = 0;
};

/// Central-difference check of |dx_j/dt| against both the Cauchy-Schwarz
/// right-hand side 2 tau sum sqrt(x_j x_k) and its linearization
/// tau (D x_j + sum x_k). Tolerance is inflated by the finite-difference
/// error estimate.
DiffIneqResult differential_inequality_check(const Trajectory& traj,
                                             const Graph& g, double tau,
                                             double tol);

struct EnvelopeResult {
  struct SiteRatio {
    int site;
    int distance;                 // l = dist(site, region)
    double ratio;                 // max_t |x(t)| e^{l - v t} / N0
  };
  std::vector<SiteRatio> per_site;
  std::vector<int> skipped_sites;  // unreachable from the region
  double empirical_c = 0;
  bool shell_monotone = true;  // shell max non-increasing in l (tol 1e-6)
};

EnvelopeResult envelope_check(const Trajectory& traj, const VelocityBound& vb,
                              const Graph& g, const std::vector<int>& region,
                              double n0);

struct VelocityFit {
  bool front_reached = false;
  double fitted_speed = 0;
  std::vector<int> distances;
  std::vector<double> arrival_times;  // first threshold crossing per shell
};

/// First-crossing arrival time per distance shell and the least-squares
/// slope of distance versus arrival time.
VelocityFit empirical_velocity(const Trajectory& traj, const Graph& g,
                               const std::vector<int>& region,
                               double threshold);

struct PremiseResult {
  struct Sample {
    double time;
    int m_index;  // 0: identity, 1..n: 1 + e_j e_j^T, then random draws
    double min_eig;
  };
  std::vector<Sample> samples;
  double min_eig = 0;
  bool pass = false;
  double tol = 0;
};

/// Checks the operator inequality
///   sum_{j,k} M_{j,k} sum_l K_l† e^{itH} b_j† b_k e^{-itH} K_l >= sum_j n_j
/// on the given domain sectors, for M = 1, M = 1 + e_j e_j^T and seeded
/// random M = 1 + A^T A. Dense assembly; total dimension capped at 2000.
PremiseResult premise_check(const ExcitationChannel& ch, const SectorModel& model,
                            const std::vector<int>& domain_sectors,
                            const std::vector<double>& times, int m_samples,
                            std::uint64_t seed, double tol);

}  // namespace soundcone

#endif
