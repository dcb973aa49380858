#include "soundcone/channels.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace soundcone {

int KrausOp::delta_n() const {
  switch (kind) {
    case Kind::RaiseSite: return 1;
    case Kind::LowerSite: return -1;
    default: return 0;
  }
}

double KrausOp::witness(int j) const {
  if (j != site) return 0.0;
  switch (kind) {
    case Kind::RaiseSite: return 1.0;
    case Kind::LowerSite: return -1.0;
    default: return 0.0;
  }
}

SparseMatrix KrausOp::matrix(const FockBasis& from, const FockBasis& to) const {
  if (to.n_sites() != from.n_sites() || to.site_cutoff() != from.site_cutoff() ||
      to.total_number() != from.total_number() + delta_n())
    throw std::invalid_argument("Kraus matrix: sector mismatch");
  std::vector<Eigen::Triplet<Complex>> trip;
  for (int i = 0; i < from.dim(); ++i) {
    std::vector<int> occ = from.state(i);
    switch (kind) {
      case Kind::Identity:
        trip.emplace_back(i, i, coeff);
        break;
      case Kind::RaiseSite: {
        if (occ[site] >= from.site_cutoff()) break;  // saturated: zero column
        occ[site] += 1;
        int j = to.index_of(occ);
        if (j >= 0) trip.emplace_back(j, i, coeff);
        break;
      }
      case Kind::LowerSite: {
        if (occ[site] == 0) break;
        occ[site] -= 1;
        int j = to.index_of(occ);
        if (j >= 0) trip.emplace_back(j, i, coeff);
        break;
      }
      case Kind::ProjectEmpty:
        if (occ[site] == 0) trip.emplace_back(i, i, coeff);
        break;
      case Kind::PhaseSite:
        trip.emplace_back(i, i, coeff * std::exp(Complex(0, theta * occ[site])));
        break;
    }
  }
  SparseMatrix m(to.dim(), from.dim());
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

namespace {

std::vector<double> resolve_probs(const std::vector<int>& region,
                                  const std::vector<double>& site_probs) {
  if (region.empty()) throw std::invalid_argument("channel region is empty");
  for (int j : region)
    if (j < 0) throw std::invalid_argument("channel region site out of range");
  if (site_probs.empty())
    return std::vector<double>(region.size(), 1.0 / region.size());
  if (site_probs.size() != region.size())
    throw std::invalid_argument("site probabilities must match the region");
  double total = std::accumulate(site_probs.begin(), site_probs.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("site probabilities must sum to 1");
  for (double p : site_probs)
    if (p < 0) throw std::invalid_argument("negative site probability");
  return site_probs;
}

}  // namespace

ExcitationChannel add_boson_channel(const std::vector<int>& region,
                                    const std::vector<double>& site_probs) {
  auto probs = resolve_probs(region, site_probs);
  ExcitationChannel ch;
  ch.type = "add_boson";
  ch.region = region;
  for (size_t i = 0; i < region.size(); ++i) {
    if (probs[i] == 0) continue;
    ch.kraus.push_back({KrausOp::Kind::RaiseSite, region[i], std::sqrt(probs[i])});
  }
  ch.declared_n0 = 1.0;
  return ch;
}

ExcitationChannel lazy_add_channel(const std::vector<int>& region, double p,
                                   const std::vector<double>& site_probs) {
  if (p < 0 || p > 1) throw std::invalid_argument("lazy_add probability outside [0,1]");
  auto probs = resolve_probs(region, site_probs);
  ExcitationChannel ch;
  ch.type = "lazy_add";
  ch.region = region;
  if (p < 1)
    ch.kraus.push_back({KrausOp::Kind::Identity, -1, std::sqrt(1 - p)});
  for (size_t i = 0; i < region.size(); ++i) {
    if (p * probs[i] == 0) continue;
    ch.kraus.push_back(
        {KrausOp::Kind::RaiseSite, region[i], std::sqrt(p * probs[i])});
  }
  ch.declared_n0 = p;
  return ch;
}

ExcitationChannel remove_boson_channel(const std::vector<int>& region,
                                       const std::vector<double>& site_probs) {
  auto probs = resolve_probs(region, site_probs);
  ExcitationChannel ch;
  ch.type = "remove_boson";
  ch.region = region;
  for (size_t i = 0; i < region.size(); ++i) {
    if (probs[i] == 0) continue;
    double c = std::sqrt(probs[i]);
    ch.kraus.push_back({KrausOp::Kind::LowerSite, region[i], c});
    ch.kraus.push_back({KrausOp::Kind::ProjectEmpty, region[i], c});
  }
  ch.declared_n0 = -1.0;
  return ch;
}

ExcitationChannel phase_channel(int site, double theta) {
  ExcitationChannel ch;
  ch.type = "phase";
  ch.region = {site};
  ch.kraus.push_back({KrausOp::Kind::PhaseSite, site, 1.0, theta});
  ch.declared_n0 = 0.0;
  return ch;
}

ChannelValidation validate_channel(const ExcitationChannel& ch,
                                   const SectorModel& model,
                                   const std::vector<int>& domain_sectors,
                                   double tol) {
  ChannelValidation rep;
  rep.witness_min = 0;
  for (const auto& K : ch.kraus) {
    if (K.site >= model.n_sites())
      throw std::invalid_argument("channel region site out of range");
    for (int j = 0; j < model.n_sites(); ++j) {
      double w = K.witness(j);
      rep.witness_min = std::min(rep.witness_min, w);
      bool in_region = std::find(ch.region.begin(), ch.region.end(), j) !=
                       ch.region.end();
      if (!in_region && w != 0)
        throw std::logic_error("witness supported off the channel region");
    }
  }

  auto max_abs = [](const SparseMatrix& m) {
    double v = 0;
    for (int k = 0; k < m.outerSize(); ++k)
      for (SparseMatrix::InnerIterator it(m, k); it; ++it)
        v = std::max(v, std::abs(it.value()));
    return v;
  };

  for (int N : domain_sectors) {
    auto from = model.basis(N);
    SparseMatrix sum(from->dim(), from->dim());
    for (const auto& K : ch.kraus) {
      int Nto = N + K.delta_n();
      if (Nto < 0) continue;  // lowering below the vacuum: zero operator
      if (Nto > model.max_total_number()) {
        rep.failure = "Kraus image leaves the available sectors (N = " +
                      std::to_string(Nto) + ")";
        throw std::invalid_argument(rep.failure);
      }
      auto to = model.basis(Nto);
      SparseMatrix Km = K.matrix(*from, *to);
      sum += SparseMatrix(Km.adjoint()) * Km;

      // Covariance residual [n_j, K] - K D per site, and locality off region.
      for (int j = 0; j < model.n_sites(); ++j) {
        SparseMatrix nj_from = number_matrix(from, j).mat;
        SparseMatrix nj_to = number_matrix(to, j).mat;
        SparseMatrix resid = nj_to * Km - Km * nj_from - K.witness(j) * Km;
        double dev = max_abs(resid);
        rep.covariance_max_dev = std::max(rep.covariance_max_dev, dev);
        bool in_region = std::find(ch.region.begin(), ch.region.end(), j) !=
                         ch.region.end();
        if (!in_region) {
          SparseMatrix comm = nj_to * Km - Km * nj_from;
          rep.locality_max_dev = std::max(rep.locality_max_dev, max_abs(comm));
        }
      }
    }
    SparseMatrix eye(from->dim(), from->dim());
    eye.setIdentity();
    rep.completeness_max_dev =
        std::max(rep.completeness_max_dev, max_abs(SparseMatrix(sum - eye)));
  }

  rep.pass = rep.completeness_max_dev < tol && rep.covariance_max_dev < tol &&
             rep.locality_max_dev < tol && rep.witness_min >= -tol;
  if (!rep.pass && rep.failure.empty()) {
    if (rep.witness_min < -tol)
      rep.failure = "witness positivity violated";
    else if (rep.completeness_max_dev >= tol)
      rep.failure = "Kraus completeness violated";
    else
      rep.failure = "covariance or locality residual above tolerance";
  }
  return rep;
}

}  // namespace soundcone
