#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "maxent/fock_space.hpp"

namespace maxent {

/// Normal density in Q with the given center and width (spin units).
struct GaussianKind {
  double center = 0.0;
  double width = 1.0;
};

/// Point mass on a single sector.
struct MicrocanonicalKind {
  ChargeValue charge;
};

/// Uniform over the N+1 charge sectors (not over states).
struct FlatKind {};

/// Charge statistics of a product of M cat states on blocks of L spins.
struct CatProductKind {
  int blocks = 1;
  int block_size = 1;
};

/// Arbitrary non-negative weights over excitation counts k = 0..N.
struct TabulatedKind {
  std::vector<double> weights;
};

using DistributionKind =
    std::variant<GaussianKind, MicrocanonicalKind, FlatKind, CatProductKind, TabulatedKind>;

/// Short text form, e.g. "gaussian:0,2.5", "micro:k=7", "cat:3,4".
std::string describe(const DistributionKind& kind);

/// Input charge distribution p(Q), materialized as a normalized table over
/// the N+1 sectors of an N-qubit system.
class ChargeDistribution {
 public:
  const DistributionKind& kind() const { return kind_; }
  int n() const { return static_cast<int>(table_.size()) - 1; }
  std::span<const double> table() const { return table_; }
  double operator[](int k) const { return table_.at(static_cast<std::size_t>(k)); }

  double mean_charge() const;
  double charge_variance() const;

 private:
  friend ChargeDistribution discretize(const DistributionKind&, const SpectralDensity&);
  ChargeDistribution(DistributionKind kind, std::vector<double> table)
      : kind_(std::move(kind)), table_(std::move(table)) {}

  DistributionKind kind_;
  std::vector<double> table_;
};

/// Builds the sector table for `kind` on the spectrum's N qubits.
///
/// Gaussian inputs are evaluated at the sector charges and renormalized.
/// Throws std::invalid_argument for a non-positive width, an invalid sector,
/// M * L != N, or a tabulated input of the wrong length / with negative or
/// all-zero weights.
ChargeDistribution discretize(const DistributionKind& kind, const SpectralDensity& spectral);

/// Parses {"n": N, "weights": [w_0, ..., w_N]}; weights are renormalized.
TabulatedKind parse_tabulated_json(std::string_view text, int* n_out = nullptr);
TabulatedKind load_tabulated(const std::filesystem::path& path, int* n_out = nullptr);

/// p_A over the N_A + 1 subsystem sectors induced by p via the
/// maximum-entropy ensemble.
class ReducedChargeDistribution {
 public:
  ReducedChargeDistribution(SystemPartition partition, std::vector<double> table)
      : partition_(partition), table_(std::move(table)) {}

  const SystemPartition& partition() const { return partition_; }
  std::span<const double> table() const { return table_; }
  double operator[](int k_a) const { return table_.at(static_cast<std::size_t>(k_a)); }

  double mean_charge() const;
  double charge_variance() const;

 private:
  SystemPartition partition_;
  std::vector<double> table_;
};

/// p_A(k_A) = sum_k p(k) binom(N_A,k_A) binom(N_B,k-k_A) / binom(N,k).
///
/// The table is the raw sum; normalization holds by Vandermonde's identity
/// and is checked (std::logic_error beyond 1e-10).
ReducedChargeDistribution induced_subsystem_distribution(const ChargeDistribution& p,
                                                         const SpectralDensity& spectral,
                                                         const SystemPartition& partition);

/// Closed-form Gaussian surrogate for the induced distribution of a
/// Gaussian input: p_A(Q_A) ~ (N/N_A) Normal(Q_A N/N_A; center, lambda)
/// with lambda^2 = Gamma^2 N_B/N_A + width^2.
struct InducedGaussian {
  double center = 0.0;
  double lambda = 0.0;
  /// Mean and standard deviation of Q_A itself (scaled by N_A/N).
  double subsystem_mean = 0.0;
  double subsystem_sigma = 0.0;
};

InducedGaussian induced_gaussian_params(const ChargeDistribution& p,
                                        const SystemPartition& partition,
                                        const SpectralDensity& spectral);

/// sum_k p ln(p / Omega) in nats, 0 ln 0 = 0. Non-negative; zero iff p = Omega.
double input_information(const ChargeDistribution& p, const SpectralDensity& spectral);

}  // namespace maxent
