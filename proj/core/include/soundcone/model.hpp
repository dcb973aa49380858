#ifndef SOUNDCONE_MODEL_HPP
#define SOUNDCONE_MODEL_HPP

#include <Eigen/Dense>
#include <map>
#include <memory>

#include "soundcone/operators.hpp"

namespace soundcone {

/// One lattice model with a fixed per-site cutoff, resolved into
/// total-number sectors. Bases, Hamiltonians, eigendecompositions and
/// lowering operators are built on demand and cached; the number operator
/// commutes with H, so every sector is closed under the dynamics.
class SectorModel {
 public:
  SectorModel(Graph graph, ModelParams params, int site_cutoff);

  const Graph& graph() const { return graph_; }
  const ModelParams& params() const { return params_; }
  int n_sites() const { return graph_.n_sites; }
  int site_cutoff() const { return site_cutoff_; }
  int max_total_number() const { return graph_.n_sites * site_cutoff_; }

  std::shared_ptr<const FockBasis> basis(int total_number) const;
  const SparseOperator& hamiltonian(int total_number) const;

  struct Eig {
    Eigen::VectorXd values;
    Eigen::MatrixXcd vectors;
  };
  const Eig& eigensystem(int total_number) const;

  /// b_site restricted to the sector: basis(N) -> basis(N-1).
  const SparseMatrix& lowering(int total_number, int site) const;

 private:
  Graph graph_;
  ModelParams params_;
  int site_cutoff_;
  mutable std::map<int, std::shared_ptr<const FockBasis>> bases_;
  mutable std::map<int, SparseOperator> hams_;
  mutable std::map<int, Eig> eigs_;
  mutable std::map<std::pair<int, int>, SparseMatrix> lowerings_;
};

}  // namespace soundcone

#endif
