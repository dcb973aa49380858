#ifndef SOUNDCONE_FOCK_HPP
#define SOUNDCONE_FOCK_HPP

#include <map>
#include <vector>

namespace soundcone {

/// Occupation basis of one total-number sector with a per-site cutoff.
/// States are ordered lexicographically descending on site 0 first,
/// e.g. (2,0), (1,1), (0,2) for two sites and N = 2.
class FockBasis {
 public:
  FockBasis(int n_sites, int total_number, int site_cutoff);

  int n_sites() const { return n_sites_; }
  int total_number() const { return total_number_; }
  int site_cutoff() const { return site_cutoff_; }
  int dim() const { return static_cast<int>(states_.size()); }

  const std::vector<int>& state(int i) const { return states_[i]; }
  const std::vector<std::vector<int>>& states() const { return states_; }

  /// Dense index of an occupation tuple; -1 if the tuple is not in the sector.
  int index_of(const std::vector<int>& occ) const;

 private:
  int n_sites_, total_number_, site_cutoff_;
  std::vector<std::vector<int>> states_;
  std::map<std::vector<int>, int> index_;
};

/// Number of occupation tuples in the (n_sites, N, n_max) sector.
long long sector_dimension(int n_sites, int total_number, int site_cutoff);

FockBasis enumerate_sector(int n_sites, int total_number, int site_cutoff);

}  // namespace soundcone

#endif
