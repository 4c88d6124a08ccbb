#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "maxent/charge_distribution.hpp"
#include "maxent/fock_space.hpp"

namespace maxent {

/// Maximum-entropy pure-state ensemble for a given p(Q).
///
/// Amplitudes are independent complex Gaussians with per-sector variance
/// rho(Q) = p(Q) / (D Omega(Q)). All quantities are stored per sector; the
/// multiplier gauge is lambda_0 = D, so lambda(Q) = 0 for p = Omega. On
/// sectors where p vanishes rho = 0 and the multiplier is absent.
class MaxEntEnsemble {
 public:
  int n() const { return spectral_.n(); }
  const SpectralDensity& spectral() const { return spectral_; }
  const ChargeDistribution& distribution() const { return p_; }

  double rho(int k) const;
  /// ln rho(Q_k); -inf off the support.
  double log_rho(int k) const;
  /// Variance of a single amplitude Psi_n.
  double rho_of_state(std::uint64_t basis_index) const;
  std::span<const double> rho_table() const { return rho_; }

  bool in_support(int k) const { return p_[k] > 0.0; }

  /// lambda_0 + lambda(Q_k) = D Omega / p; empty off the support.
  std::optional<double> total_multiplier(int k) const;
  std::optional<double> multiplier(int k) const;
  double lambda0() const;

 private:
  friend MaxEntEnsemble build_ensemble(const ChargeDistribution&, const SpectralDensity&);
  MaxEntEnsemble(ChargeDistribution p, SpectralDensity spectral);

  ChargeDistribution p_;
  SpectralDensity spectral_;
  std::vector<double> log_rho_;
  std::vector<double> rho_;
};

MaxEntEnsemble build_ensemble(const ChargeDistribution& p, const SpectralDensity& spectral);

/// S(rho) = -sum_n rho_n ln rho_n, summed per sector.
double ensemble_entropy(const MaxEntEnsemble& ensemble);

}  // namespace maxent
