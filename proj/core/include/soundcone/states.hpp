#ifndef SOUNDCONE_STATES_HPP
#define SOUNDCONE_STATES_HPP

#include <string>
#include <vector>

#include "soundcone/model.hpp"

namespace soundcone {

/// Weighted collection of energy eigenvectors representing a stationary
/// state, grouped by total-number sector. Weights sum to one globally.
struct StationaryEnsemble {
  struct Sector {
    int total_number;
    std::shared_ptr<const FockBasis> basis;
    Eigen::VectorXd energies;   // kept eigenvalues
    Eigen::MatrixXcd vectors;   // kept eigenvectors as columns
    Eigen::VectorXd weights;    // probability per kept eigenvector
  };
  std::vector<Sector> sectors;
  std::string tag;          // "ground", "thermal", "custom"
  double beta = 0.0;        // meaningful for tag == "thermal"
  double dropped_mass = 0;  // Gibbs weight removed by flooring
  bool dropped_mass_warning = false;
  int top_sector() const;
};

/// Lowest eigenpair over the given sectors; the sector with minimal ground
/// energy wins, ties broken by the smaller total number.
StationaryEnsemble ground_state(const SectorModel& model,
                                const std::vector<int>& sector_numbers);

/// Gibbs state over the given sectors. Eigenvectors with weight below
/// weight_floor are dropped, the dropped mass is reported and the rest is
/// renormalized.
StationaryEnsemble thermal_state(const SectorModel& model,
                                 const std::vector<int>& sector_numbers,
                                 double beta, double weight_floor = 1e-12);

struct StationarityReport {
  bool stationary = false;
  double max_residual = 0;  // max ||H v - E v|| over kept eigenpairs
};

StationarityReport is_stationary(const StationaryEnsemble& state,
                                 const SectorModel& model, double tol);

}  // namespace soundcone

#endif
