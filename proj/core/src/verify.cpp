#include "soundcone/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

namespace soundcone {

PositivityResult positivity_check(const Trajectory& traj, double tol) {
  PositivityResult res;
  res.tol = tol;
  for (const auto& C : traj.covariances) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
        C - traj.reference_covariance, Eigen::EigenvaluesOnly);
    res.min_eigs.push_back(es.eigenvalues()(0));
  }
  res.pass = std::all_of(res.min_eigs.begin(), res.min_eigs.end(),
                         [tol](double v) { return v >= -tol; });
  return res;
}

Eigen::MatrixXd comparison_trajectory(const Graph& g, double tau,
                                      const Eigen::VectorXd& x0,
                                      const std::vector<double>& times) {
  if (x0.size() != g.n_sites)
    throw std::invalid_argument("initial vector size does not match the graph");
  if ((x0.array() < 0).any())
    throw std::invalid_argument("comparison dynamics needs x0 >= 0 entrywise");
  int D = max_degree(g);
  Eigen::MatrixXd gen =
      tau * (double(D) * Eigen::MatrixXd::Identity(g.n_sites, g.n_sites) +
             g.adjacency);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gen);
  Eigen::VectorXd c = es.eigenvectors().transpose() * x0;
  Eigen::MatrixXd gamma(times.size(), g.n_sites);
  for (size_t it = 0; it < times.size(); ++it) {
    Eigen::VectorXd scaled = c;
    for (int i = 0; i < scaled.size(); ++i)
      scaled(i) *= std::exp(es.eigenvalues()(i) * times[it]);
    gamma.row(it) = es.eigenvectors() * scaled;
  }
  return gamma;
}

DominanceResult dominance_check(const Trajectory& traj,
                                const Eigen::MatrixXd& gamma, double tol) {
  if (gamma.rows() != traj.x.rows() || gamma.cols() != traj.x.cols())
    throw std::invalid_argument("comparison grid does not match the trajectory");
  DominanceResult res;
  res.tol = tol;
  res.margins = gamma - traj.x;
  res.min_margin = res.margins.minCoeff();
  res.pass = res.min_margin >= -tol;
  return res;
}

DiffIneqResult differential_inequality_check(const Trajectory& traj,
                                             const Graph& g, double tau,
                                             double tol) {
  size_t nt = traj.times.size();
  if (nt < 3)
    throw std::invalid_argument("differential inequality needs >= 3 grid points");
  double dt = traj.times[1] - traj.times[0];
  for (size_t i = 1; i + 1 < nt; ++i)
    if (std::abs((traj.times[i + 1] - traj.times[i]) - dt) > 1e-12 * dt)
      throw std::invalid_argument("differential inequality needs a uniform grid");

  int n = g.n_sites;
  DiffIneqResult res;
  res.tol = tol;
  res.sqrt_residuals.resize(nt - 2, n);
  res.linear_residuals.resize(nt - 2, n);
  int D = max_degree(g);
  for (size_t i = 1; i + 1 < nt; ++i) {
    for (int j = 0; j < n; ++j) {
      double deriv = (traj.x(i + 1, j) - traj.x(i - 1, j)) / (2 * dt);
      double xj = std::max(traj.x(i, j), 0.0);
      double rhs_sqrt = 0, rhs_lin = tau * D * xj;
      for (int k = 0; k < n; ++k) {
        if (g.adjacency(j, k) == 0) continue;
        double xk = std::max(traj.x(i, k), 0.0);
        rhs_sqrt += 2 * tau * std::sqrt(xj * xk);
        rhs_lin += tau * xk;
      }
      res.sqrt_residuals(i - 1, j) = rhs_sqrt - std::abs(deriv);
      res.linear_residuals(i - 1, j) = rhs_lin - std::abs(deriv);
    }
  }
  // Third-derivative estimate for the central-difference error model.
  double d3_max = 0;
  for (size_t i = 2; i + 2 < nt; ++i)
    for (int j = 0; j < n; ++j) {
      double d3 = (traj.x(i + 2, j) - 2 * traj.x(i + 1, j) +
                   2 * traj.x(i - 1, j) - traj.x(i - 2, j)) /
                  (2 * dt * dt * dt);
      d3_max = std::max(d3_max, std::abs(d3));
    }
  res.fd_error_estimate = d3_max * dt * dt / 6.0;
  res.min_residual = std::min(res.sqrt_residuals.minCoeff(),
                              res.linear_residuals.minCoeff());
  res.pass = res.min_residual >= -(tol + res.fd_error_estimate);
  return res;
}

EnvelopeResult envelope_check(const Trajectory& traj, const VelocityBound& vb,
                              const Graph& g, const std::vector<int>& region,
                              double n0) {
  if (n0 <= 0) throw std::invalid_argument("envelope check needs N0 > 0");
  EnvelopeResult res;
  auto dist = distances_from(g, region);
  std::map<int, double> shell_max;
  for (int j = 0; j < g.n_sites; ++j) {
    if (!dist[j]) {
      res.skipped_sites.push_back(j);
      continue;
    }
    int l = *dist[j];
    if (l < 1) continue;
    double ratio = 0;
    for (size_t it = 0; it < traj.times.size(); ++it)
      ratio = std::max(ratio, std::abs(traj.x(it, j)) *
                                  std::exp(l - vb.v * traj.times[it]) / n0);
    res.per_site.push_back({j, l, ratio});
    auto [iter, fresh] = shell_max.try_emplace(l, ratio);
    if (!fresh) iter->second = std::max(iter->second, ratio);
    res.empirical_c = std::max(res.empirical_c, ratio);
  }
  double prev = std::numeric_limits<double>::infinity();
  for (auto [l, m] : shell_max) {  // ordered by l
    if (m > prev + 1e-6) res.shell_monotone = false;
    prev = m;
  }
  return res;
}

VelocityFit empirical_velocity(const Trajectory& traj, const Graph& g,
                               const std::vector<int>& region,
                               double threshold) {
  if (threshold <= 0)
    throw std::invalid_argument("front threshold must be positive");
  VelocityFit fit;
  auto dist = distances_from(g, region);
  std::map<int, double> arrival;
  for (int j = 0; j < g.n_sites; ++j) {
    if (!dist[j] || *dist[j] < 1) continue;
    int l = *dist[j];
    for (size_t it = 0; it < traj.times.size(); ++it) {
      if (traj.x(it, j) >= threshold) {
        auto [iter, fresh] = arrival.try_emplace(l, traj.times[it]);
        if (!fresh) iter->second = std::min(iter->second, traj.times[it]);
        break;
      }
    }
  }
  for (auto [l, t] : arrival) {
    fit.distances.push_back(l);
    fit.arrival_times.push_back(t);
  }
  if (fit.distances.size() < 2) return fit;
  // Least-squares slope of distance against arrival time.
  double n = double(fit.distances.size());
  double st = 0, sl = 0, stt = 0, stl = 0;
  for (size_t i = 0; i < fit.distances.size(); ++i) {
    st += fit.arrival_times[i];
    sl += fit.distances[i];
    stt += fit.arrival_times[i] * fit.arrival_times[i];
    stl += fit.arrival_times[i] * fit.distances[i];
  }
  double denom = n * stt - st * st;
  if (denom <= 0) return fit;
  fit.fitted_speed = (n * stl - st * sl) / denom;
  fit.front_reached = true;
  return fit;
}

PremiseResult premise_check(const ExcitationChannel& ch, const SectorModel& model,
                            const std::vector<int>& domain_sectors,
                            const std::vector<double>& times, int m_samples,
                            std::uint64_t seed, double tol) {
  int n = model.n_sites();
  long long total_dim = 0;
  for (int N : domain_sectors) {
    total_dim += model.basis(N)->dim();
    for (const auto& K : ch.kraus)
      if (N + K.delta_n() >= 0) total_dim += model.basis(N + K.delta_n())->dim();
  }
  if (total_dim > 2000)
    throw std::invalid_argument(
        "premise check: total sector dimension exceeds the 2000 cap, use a "
        "smaller instance");

  // Sampled M >= 1: identity, identity + e_j e_j^T, then 1 + A^T A.
  std::vector<Eigen::MatrixXd> ms;
  ms.push_back(Eigen::MatrixXd::Identity(n, n));
  for (int j = 0; j < n; ++j) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
    m(j, j) += 1.0;
    ms.push_back(m);
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  for (int s = 0; s < m_samples; ++s) {
    Eigen::MatrixXd a(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) a(r, c) = gauss(rng);
    ms.push_back(Eigen::MatrixXd::Identity(n, n) + a.transpose() * a);
  }

  PremiseResult res;
  res.tol = tol;
  res.min_eig = std::numeric_limits<double>::infinity();
  for (double t : times) {
    // Q[N][l][j] = L_j e^{-itH} K_l on domain sector N.
    std::map<int, std::vector<std::vector<Eigen::MatrixXcd>>> q;
    for (int N : domain_sectors) {
      auto from = model.basis(N);
      std::vector<std::vector<Eigen::MatrixXcd>> per_kraus;
      for (const auto& K : ch.kraus) {
        int Nto = N + K.delta_n();
        if (Nto < 0) {  // annihilated: contributes nothing
          per_kraus.emplace_back(
              n, Eigen::MatrixXcd::Zero(1, from->dim()));
          continue;
        }
        Eigen::MatrixXcd P =
            Eigen::MatrixXcd(K.matrix(*from, *model.basis(Nto)));
        if (t != 0) {
          const auto& eig = model.eigensystem(Nto);
          Eigen::MatrixXcd phases =
              (Complex(0, -t) * eig.values.array()).exp().matrix().asDiagonal();
          P = eig.vectors * phases * (eig.vectors.adjoint() * P);
        }
        std::vector<Eigen::MatrixXcd> per_site;
        for (int j = 0; j < n; ++j) {
          if (Nto == 0)
            per_site.push_back(Eigen::MatrixXcd::Zero(1, from->dim()));
          else
            per_site.push_back(model.lowering(Nto, j) * P);
        }
        per_kraus.push_back(std::move(per_site));
      }
      q[N] = std::move(per_kraus);
    }
    for (size_t mi = 0; mi < ms.size(); ++mi) {
      double min_eig = std::numeric_limits<double>::infinity();
      for (int N : domain_sectors) {
        int d = model.basis(N)->dim();
        Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(d, d);
        for (const auto& per_site : q[N])
          for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
              if (ms[mi](j, k) == 0) continue;
              A += ms[mi](j, k) * (per_site[j].adjoint() * per_site[k]);
            }
        // sum_j n_j = N * identity on the sector.
        A -= double(N) * Eigen::MatrixXcd::Identity(d, d);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
            (A + A.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
        min_eig = std::min(min_eig, es.eigenvalues()(0));
      }
      res.samples.push_back({t, int(mi), min_eig});
      res.min_eig = std::min(res.min_eig, min_eig);
    }
  }
  res.pass = res.min_eig >= -tol;
  return res;
}

}  // namespace soundcone
