#include "maxent/ensemble.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace maxent {

MaxEntEnsemble::MaxEntEnsemble(ChargeDistribution p, SpectralDensity spectral)
    : p_(std::move(p)), spectral_(std::move(spectral)) {
  const int n = spectral_.n();
  log_rho_.resize(static_cast<std::size_t>(n) + 1);
  rho_.resize(log_rho_.size());
  for (int k = 0; k <= n; ++k) {
    if (p_[k] > 0.0) {
      log_rho_[k] = std::log(p_[k]) - spectral_.log_multiplicity(k);
      rho_[k] = spectral_.log_space() ? std::exp(log_rho_[k]) : p_[k] / spectral_.multiplicity(k);
    } else {
      log_rho_[k] = -std::numeric_limits<double>::infinity();
      rho_[k] = 0.0;
    }
  }
}

MaxEntEnsemble build_ensemble(const ChargeDistribution& p, const SpectralDensity& spectral) {
  if (p.n() != spectral.n()) {
    throw std::invalid_argument("distribution has " + std::to_string(p.n() + 1) +
                                " sectors but the spectrum has " +
                                std::to_string(spectral.sectors()));
  }
  return MaxEntEnsemble(p, spectral);
}

double MaxEntEnsemble::rho(int k) const { return rho_.at(static_cast<std::size_t>(k)); }

double MaxEntEnsemble::log_rho(int k) const { return log_rho_.at(static_cast<std::size_t>(k)); }

double MaxEntEnsemble::rho_of_state(std::uint64_t basis_index) const {
  return rho(charge_of(basis_index, n()).k);
}

double MaxEntEnsemble::lambda0() const {
  return spectral_.log_space() ? std::exp(spectral_.log_dim()) : std::ldexp(1.0, n());
}

std::optional<double> MaxEntEnsemble::total_multiplier(int k) const {
  if (!in_support(k)) {
    return std::nullopt;
  }
  return spectral_.log_space() ? std::exp(-log_rho_[k]) : spectral_.multiplicity(k) / p_[k];
}

std::optional<double> MaxEntEnsemble::multiplier(int k) const {
  auto total = total_multiplier(k);
  if (!total) {
    return std::nullopt;
  }
  return *total - lambda0();
}

double ensemble_entropy(const MaxEntEnsemble& ensemble) {
  const auto& spectral = ensemble.spectral();
  double s = 0.0;
  for (int k = 0; k <= ensemble.n(); ++k) {
    if (!ensemble.in_support(k)) continue;
    // sector weight D Omega rho = p, so each sector adds -p ln rho.
    const double weight = std::exp(spectral.log_multiplicity(k) + ensemble.log_rho(k));
    s -= weight * ensemble.log_rho(k);
  }
  return s;
}

}  // namespace maxent
