#include "soundcone/fock.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace soundcone {

namespace {

constexpr long long kDimCap = 200000;

void enumerate_rec(int site, int remaining, int n_sites, int n_max,
                   std::vector<int>& occ,
                   std::vector<std::vector<int>>& out) {
  if (site == n_sites - 1) {
    if (remaining <= n_max) {
      occ[site] = remaining;
      out.push_back(occ);
    }
    return;
  }
  for (int n = std::min(remaining, n_max); n >= 0; --n) {
    occ[site] = n;
    enumerate_rec(site + 1, remaining - n, n_sites, n_max, occ, out);
  }
}

}  // namespace

long long sector_dimension(int n_sites, int total_number, int site_cutoff) {
  // Compositions of N into n parts, each part <= n_max, by DP.
  std::vector<long long> count(total_number + 1, 0);
  count[0] = 1;
  for (int s = 0; s < n_sites; ++s) {
    std::vector<long long> next(total_number + 1, 0);
    for (int acc = 0; acc <= total_number; ++acc)
      for (int n = 0; n <= site_cutoff && acc + n <= total_number; ++n)
        next[acc + n] += count[acc];
    count = next;
  }
  return count[total_number];
}

FockBasis::FockBasis(int n_sites, int total_number, int site_cutoff)
    : n_sites_(n_sites), total_number_(total_number), site_cutoff_(site_cutoff) {
  if (n_sites < 1 || site_cutoff < 1 || total_number < 0)
    throw std::invalid_argument("invalid sector parameters");
  if (static_cast<long long>(total_number) >
      static_cast<long long>(n_sites) * site_cutoff)
    throw std::invalid_argument("empty sector: N = " +
                                std::to_string(total_number) + " exceeds " +
                                std::to_string(n_sites) + " sites * cutoff " +
                                std::to_string(site_cutoff));
  if (sector_dimension(n_sites, total_number, site_cutoff) > kDimCap)
    throw std::invalid_argument("sector dimension exceeds the 2e5 build cap");
  std::vector<int> occ(n_sites, 0);
  enumerate_rec(0, total_number, n_sites, site_cutoff, occ, states_);
  for (int i = 0; i < dim(); ++i) index_[states_[i]] = i;
}

int FockBasis::index_of(const std::vector<int>& occ) const {
  auto it = index_.find(occ);
  return it == index_.end() ? -1 : it->second;
}

FockBasis enumerate_sector(int n_sites, int total_number, int site_cutoff) {
  return FockBasis(n_sites, total_number, site_cutoff);
}

}  // namespace soundcone
