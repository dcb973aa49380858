#include "soundcone/states.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace soundcone {

int StationaryEnsemble::top_sector() const {
  int top = 0;
  for (const auto& s : sectors) top = std::max(top, s.total_number);
  return top;
}

StationaryEnsemble ground_state(const SectorModel& model,
                                const std::vector<int>& sector_numbers) {
  if (sector_numbers.empty())
    throw std::invalid_argument("ground_state: no sectors given");
  int best_sector = -1;
  double best_energy = 0;
  for (int N : sector_numbers) {
    double e0 = model.eigensystem(N).values(0);
    if (best_sector < 0 || e0 < best_energy) {
      best_sector = N;
      best_energy = e0;
    }
  }
  const auto& eig = model.eigensystem(best_sector);
  StationaryEnsemble out;
  out.tag = "ground";
  StationaryEnsemble::Sector s;
  s.total_number = best_sector;
  s.basis = model.basis(best_sector);
  s.energies = eig.values.head(1);
  s.vectors = eig.vectors.col(0);
  s.weights = Eigen::VectorXd::Ones(1);
  out.sectors.push_back(std::move(s));
  return out;
}

StationaryEnsemble thermal_state(const SectorModel& model,
                                 const std::vector<int>& sector_numbers,
                                 double beta, double weight_floor) {
  if (beta <= 0) throw std::invalid_argument("inverse temperature must be positive");
  if (weight_floor <= 0 || weight_floor > 1e-6)
    throw std::invalid_argument("weight floor must lie in (0, 1e-6]");
  if (sector_numbers.empty())
    throw std::invalid_argument("thermal_state: no sectors given");

  // Shift by the global minimum energy before exponentiating.
  double e_min = 0;
  bool first = true;
  for (int N : sector_numbers) {
    double e0 = model.eigensystem(N).values(0);
    if (first || e0 < e_min) e_min = e0;
    first = false;
  }
  double Z = 0;
  for (int N : sector_numbers) {
    const auto& eig = model.eigensystem(N);
    for (int i = 0; i < eig.values.size(); ++i)
      Z += std::exp(-beta * (eig.values(i) - e_min));
  }

  StationaryEnsemble out;
  out.tag = "thermal";
  out.beta = beta;
  double kept = 0;
  for (int N : sector_numbers) {
    const auto& eig = model.eigensystem(N);
    std::vector<int> keep;
    for (int i = 0; i < eig.values.size(); ++i) {
      double w = std::exp(-beta * (eig.values(i) - e_min)) / Z;
      if (w >= weight_floor) keep.push_back(i);
    }
    if (keep.empty()) continue;
    StationaryEnsemble::Sector s;
    s.total_number = N;
    s.basis = model.basis(N);
    s.energies.resize(keep.size());
    s.weights.resize(keep.size());
    s.vectors.resize(eig.vectors.rows(), keep.size());
    for (size_t c = 0; c < keep.size(); ++c) {
      s.energies(c) = eig.values(keep[c]);
      s.weights(c) = std::exp(-beta * (eig.values(keep[c]) - e_min)) / Z;
      s.vectors.col(c) = eig.vectors.col(keep[c]);
      kept += s.weights(c);
    }
    out.sectors.push_back(std::move(s));
  }
  out.dropped_mass = std::max(0.0, 1.0 - kept);
  out.dropped_mass_warning = out.dropped_mass > 1e-6;
  for (auto& s : out.sectors) s.weights /= kept;
  return out;
}

StationarityReport is_stationary(const StationaryEnsemble& state,
                                 const SectorModel& model, double tol) {
  StationarityReport rep;
  for (const auto& s : state.sectors) {
    const auto& H = model.hamiltonian(s.total_number);
    for (int c = 0; c < s.vectors.cols(); ++c) {
      Eigen::VectorXcd r = H.mat * s.vectors.col(c) - s.energies(c) * s.vectors.col(c);
      rep.max_residual = std::max(rep.max_residual, r.norm());
    }
  }
  rep.stationary = rep.max_residual < tol;
  return rep;
}

}  // namespace soundcone
