#ifndef SOUNDCONE_OPERATORS_HPP
#define SOUNDCONE_OPERATORS_HPP

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include "soundcone/fock.hpp"
#include "soundcone/graph.hpp"

namespace soundcone {

using Complex = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<Complex>;

/// Sparse complex operator between two sector bases (rows: codomain,
/// columns: domain). hermitian implies domain == codomain.
struct SparseOperator {
  std::shared_ptr<const FockBasis> domain;
  std::shared_ptr<const FockBasis> codomain;
  SparseMatrix mat;
  bool hermitian = false;
};

enum class Ladder { Lower, Raise };

/// Canonical ladder operator between adjacent sectors:
/// b |n> = sqrt(n) |n-1>, b† |n> = sqrt(n+1) |n+1>, zero past the cutoff.
SparseOperator ladder_matrix(std::shared_ptr<const FockBasis> from,
                             std::shared_ptr<const FockBasis> to, int site,
                             Ladder kind);

/// Diagonal local number operator n_j.
SparseOperator number_matrix(std::shared_ptr<const FockBasis> basis, int site);

/// Diagonal (U/2) sum_j n_j (n_j - 1).
SparseOperator bose_hubbard_potential(double U,
                                      std::shared_ptr<const FockBasis> basis);

/// On-site term diagonal in occupation: energy(n_site). Diagonality is
/// what guarantees commutation with every local number operator.
struct OnSiteTerm {
  int site;
  std::function<double(int)> energy;
};

struct ModelParams {
  double tau = 1.0;  // hopping
  double U = 0.0;    // on-site repulsion
  double mu = 0.0;   // chemical potential, enters as -mu sum_j n_j
  std::vector<OnSiteTerm> onsite;
};

/// H = -tau sum over both edge orientations of b_j† b_k + V, restricted to
/// one sector. Hermitian by construction.
SparseOperator build_hamiltonian(const Graph& g, const ModelParams& params,
                                 std::shared_ptr<const FockBasis> basis);

}  // namespace soundcone

#endif
