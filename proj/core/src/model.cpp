#include "soundcone/model.hpp"

#include <stdexcept>

namespace soundcone {

SectorModel::SectorModel(Graph graph, ModelParams params, int site_cutoff)
    : graph_(std::move(graph)), params_(std::move(params)),
      site_cutoff_(site_cutoff) {
  if (site_cutoff_ < 1) throw std::invalid_argument("site cutoff must be >= 1");
  if (params_.tau <= 0) throw std::invalid_argument("hopping rate must be positive");
}

std::shared_ptr<const FockBasis> SectorModel::basis(int total_number) const {
  auto it = bases_.find(total_number);
  if (it == bases_.end()) {
    it = bases_.emplace(total_number,
                        std::make_shared<FockBasis>(graph_.n_sites, total_number,
                                                    site_cutoff_))
             .first;
  }
  return it->second;
}

const SparseOperator& SectorModel::hamiltonian(int total_number) const {
  auto it = hams_.find(total_number);
  if (it == hams_.end()) {
    it = hams_.emplace(total_number,
                       build_hamiltonian(graph_, params_, basis(total_number)))
             .first;
  }
  return it->second;
}

const SectorModel::Eig& SectorModel::eigensystem(int total_number) const {
  auto it = eigs_.find(total_number);
  if (it == eigs_.end()) {
    const auto& H = hamiltonian(total_number);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
        Eigen::MatrixXcd(H.mat));
    if (es.info() != Eigen::Success)
      throw std::runtime_error("dense eigensolver failed on sector N = " +
                               std::to_string(total_number));
    it = eigs_.emplace(total_number, Eig{es.eigenvalues(), es.eigenvectors()})
             .first;
  }
  return it->second;
}

const SparseMatrix& SectorModel::lowering(int total_number, int site) const {
  auto key = std::make_pair(total_number, site);
  auto it = lowerings_.find(key);
  if (it == lowerings_.end()) {
    auto op = ladder_matrix(basis(total_number), basis(total_number - 1), site,
                            Ladder::Lower);
    it = lowerings_.emplace(key, std::move(op.mat)).first;
  }
  return it->second;
}

}  // namespace soundcone
