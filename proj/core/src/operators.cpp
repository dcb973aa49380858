#include "soundcone/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace soundcone {

SparseOperator ladder_matrix(std::shared_ptr<const FockBasis> from,
                             std::shared_ptr<const FockBasis> to, int site,
                             Ladder kind) {
  int shift = (kind == Ladder::Raise) ? 1 : -1;
  if (to->total_number() != from->total_number() + shift ||
      to->n_sites() != from->n_sites() ||
      to->site_cutoff() != from->site_cutoff())
    throw std::invalid_argument("ladder operator: sector mismatch");
  if (site < 0 || site >= from->n_sites())
    throw std::invalid_argument("ladder operator: site out of range");

  std::vector<Eigen::Triplet<Complex>> trip;
  for (int i = 0; i < from->dim(); ++i) {
    std::vector<int> occ = from->state(i);
    int n = occ[site];
    if (kind == Ladder::Lower) {
      if (n == 0) continue;
      occ[site] = n - 1;
      int j = to->index_of(occ);
      if (j >= 0) trip.emplace_back(j, i, std::sqrt(double(n)));
    } else {
      if (n >= from->site_cutoff()) continue;  // zeroed raise at the cutoff
      occ[site] = n + 1;
      int j = to->index_of(occ);
      if (j >= 0) trip.emplace_back(j, i, std::sqrt(double(n + 1)));
    }
  }
  SparseOperator op{from, to, SparseMatrix(to->dim(), from->dim()), false};
  op.mat.setFromTriplets(trip.begin(), trip.end());
  return op;
}

SparseOperator number_matrix(std::shared_ptr<const FockBasis> basis, int site) {
  if (site < 0 || site >= basis->n_sites())
    throw std::invalid_argument("number operator: site out of range");
  std::vector<Eigen::Triplet<Complex>> trip;
  for (int i = 0; i < basis->dim(); ++i) {
    int n = basis->state(i)[site];
    if (n != 0) trip.emplace_back(i, i, double(n));
  }
  SparseOperator op{basis, basis, SparseMatrix(basis->dim(), basis->dim()), true};
  op.mat.setFromTriplets(trip.begin(), trip.end());
  return op;
}

SparseOperator bose_hubbard_potential(double U,
                                      std::shared_ptr<const FockBasis> basis) {
  std::vector<Eigen::Triplet<Complex>> trip;
  for (int i = 0; i < basis->dim(); ++i) {
    double e = 0;
    for (int n : basis->state(i)) e += 0.5 * U * n * (n - 1);
    if (e != 0) trip.emplace_back(i, i, e);
  }
  SparseOperator op{basis, basis, SparseMatrix(basis->dim(), basis->dim()), true};
  op.mat.setFromTriplets(trip.begin(), trip.end());
  return op;
}

SparseOperator build_hamiltonian(const Graph& g, const ModelParams& params,
                                 std::shared_ptr<const FockBasis> basis) {
  if (g.n_sites != basis->n_sites())
    throw std::invalid_argument("graph and basis disagree on site count");
  for (const auto& term : params.onsite)
    if (term.site < 0 || term.site >= g.n_sites)
      throw std::invalid_argument("on-site term site out of range");

  std::vector<Eigen::Triplet<Complex>> trip;
  // Hopping: both orientations of every edge. b_j† b_k within one sector.
  for (int i = 0; i < basis->dim(); ++i) {
    const auto& occ = basis->state(i);
    for (auto [a, b] : g.edges) {
      for (auto [j, k] : {std::pair{a, b}, std::pair{b, a}}) {
        // b_j† b_k |occ>
        if (occ[k] == 0 || occ[j] >= basis->site_cutoff()) continue;
        std::vector<int> next = occ;
        double amp = std::sqrt(double(next[k])) * std::sqrt(double(next[j] + 1));
        next[k] -= 1;
        next[j] += 1;
        int m = basis->index_of(next);
        if (m >= 0) trip.emplace_back(m, i, -params.tau * amp);
      }
    }
    // Diagonal part.
    double e = 0;
    for (int n : occ) e += 0.5 * params.U * n * (n - 1) - params.mu * n;
    for (const auto& term : params.onsite) e += term.energy(occ[term.site]);
    if (e != 0) trip.emplace_back(i, i, e);
  }
  SparseOperator op{basis, basis, SparseMatrix(basis->dim(), basis->dim()), true};
  op.mat.setFromTriplets(trip.begin(), trip.end());
  return op;
}

}  // namespace soundcone
