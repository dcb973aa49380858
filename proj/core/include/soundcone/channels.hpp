#ifndef SOUNDCONE_CHANNELS_HPP
#define SOUNDCONE_CHANNELS_HPP

#include <string>
#include <vector>

#include "soundcone/model.hpp"

namespace soundcone {

/// One Kraus operator of a single-site excitation channel. All shipped
/// channels are built from these primitives; the number-commutator witness
/// of each primitive is a scalar multiple of the identity.
struct KrausOp {
  enum class Kind {
    Identity,      // coeff * 1
    RaiseSite,     // coeff * b†(n+1)^{-1/2}: |..n..> -> |..n+1..>, amplitude 1
    LowerSite,     // coeff * (n)^{-1/2} b:   |..n..> -> |..n-1..>, kills n = 0
    ProjectEmpty,  // coeff * projector onto n_site = 0
    PhaseSite      // coeff * exp(i theta n_site)
  };
  Kind kind = Kind::Identity;
  int site = -1;
  double coeff = 1.0;
  double theta = 0.0;

  int delta_n() const;
  /// Scalar s with [n_j, K] = K * (s * I); the declared witness D_{l,j}.
  double witness(int j) const;
  SparseMatrix matrix(const FockBasis& from, const FockBasis& to) const;
};

struct ExcitationChannel {
  std::string type;
  std::vector<int> region;
  std::vector<KrausOp> kraus;
  double declared_n0 = 0;  // total particle number injected at t = 0
};

/// Kraus family { sqrt(p_j) * raising isometry at j : j in region }.
ExcitationChannel add_boson_channel(const std::vector<int>& region,
                                    const std::vector<double>& site_probs = {});

/// Kraus { sqrt(1-p) * 1 } + { sqrt(p q_j) * raising isometry at j }.
ExcitationChannel lazy_add_channel(const std::vector<int>& region, double p,
                                   const std::vector<double>& site_probs = {});

/// Particle removal, { sqrt(p_j) b-isometry, sqrt(p_j) P_{n_j=0} }. Trace
/// preserving but its witness is -1: fails Definition-style positivity.
/// Shipped as a negative control only.
ExcitationChannel remove_boson_channel(const std::vector<int>& region,
                                       const std::vector<double>& site_probs = {});

/// Commuting unitary Kraus exp(i theta n_site); witness D = 0.
ExcitationChannel phase_channel(int site, double theta);

struct ChannelValidation {
  bool pass = false;
  double completeness_max_dev = 0;  // || sum K†K - 1 ||_max per sector
  double covariance_max_dev = 0;    // max_{l,j} || [n_j, K] - K D ||_max
  double witness_min = 0;           // most negative witness entry
  double locality_max_dev = 0;      // max_{l, j off region} || [n_j, K] ||_max
  std::string failure;
};

/// Checks completeness, covariance, witness positivity and locality of a
/// channel on the given domain sectors. Raising Kraus operators need
/// headroom: N + 1 must not exceed the space and saturated states break
/// completeness, which this check will report.
ChannelValidation validate_channel(const ExcitationChannel& ch,
                                   const SectorModel& model,
                                   const std::vector<int>& domain_sectors,
                                   double tol);

}  // namespace soundcone

#endif
