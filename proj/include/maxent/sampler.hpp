#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "maxent/ensemble.hpp"
#include "maxent/fock_space.hpp"

namespace maxent {

using Complex = std::complex<double>;

/// Largest N for which dense state vectors are materialized.
inline constexpr int kMaxDenseQubits = 30;

/// Dense, unit-norm amplitude vector over the 2^N product basis.
class PureState {
 public:
  /// Throws std::invalid_argument if the length is not 2^n or the norm
  /// differs from 1 by more than 1e-10.
  PureState(int n, std::vector<Complex> amplitudes);

  /// Rescales to unit norm; throws on a zero vector.
  static PureState normalized(int n, std::vector<Complex> amplitudes);
  static PureState basis_state(int n, std::uint64_t index);

  int n() const { return n_; }
  std::size_t dim() const { return amps_.size(); }
  std::span<const Complex> amplitudes() const { return amps_; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }
  double norm() const;

 private:
  int n_;
  std::vector<Complex> amps_;
};

Complex inner_product(const PureState& bra, const PureState& ket);

/// Each amplitude is complex Gaussian with variance rho(Q_k(n)), then the
/// vector is normalized. Sectors outside the support stay exactly zero.
PureState sample_state(const MaxEntEnsemble& ensemble, std::uint64_t seed);

/// Born weight of each sector k = 0..N.
std::vector<double> measure_charge_distribution(const PureState& state);

/// rho_A[a, a'] = sum_b Psi(a,b) conj(Psi(a',b)) with A on the high bits.
class ReducedDensityMatrix {
 public:
  ReducedDensityMatrix(SystemPartition partition, Eigen::MatrixXcd entries);

  const SystemPartition& partition() const { return partition_; }
  const Eigen::MatrixXcd& entries() const { return entries_; }
  Complex trace() const { return entries_.trace(); }
  double hermiticity_error() const;

  /// Eigenvalues, ascending.
  Eigen::VectorXd eigenvalues() const;

 private:
  SystemPartition partition_;
  Eigen::MatrixXcd entries_;
};

ReducedDensityMatrix reduced_density_matrix(const PureState& state,
                                            const SystemPartition& partition);

/// Squared Schmidt coefficients, from whichever side has the smaller
/// dimension. Ascending, negatives above -1e-10 clamped to 0.
std::vector<double> schmidt_spectrum(const PureState& state, const SystemPartition& partition);

/// -sum l ln l over a probability spectrum. std::runtime_error if an entry
/// is below -1e-10; small negatives are clamped to 0.
double von_neumann_entropy(std::span<const double> spectrum);
/// (1/(1-r)) ln sum l^r, r >= 2.
double renyi_entropy(std::span<const double> spectrum, int order);

double entanglement_entropy(const ReducedDensityMatrix& rho_a);
double renyi_entropy(const ReducedDensityMatrix& rho_a, int order);

/// Entanglement entropy of a pure state across `partition`.
double entanglement_entropy(const PureState& state, const SystemPartition& partition);

struct McEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  double stddev = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<double> values;
};

/// Summary statistics of `values` (sample stddev, ddof = 1), summed in index
/// order.
McEstimate summarize(std::vector<double> values, std::uint64_t seed);

/// Runs fn(i, derived_seed_i) for i < samples in parallel and summarizes.
/// Item seeds come from derive_seed(seed, stream, i).
McEstimate run_campaign(std::size_t samples, std::uint64_t seed, std::uint64_t stream,
                        unsigned workers,
                        const std::function<double(std::size_t, std::uint64_t)>& fn);

/// Mean entanglement entropy over independent ensemble draws.
/// std::invalid_argument for samples < 2.
McEstimate monte_carlo_entropy(const MaxEntEnsemble& ensemble, const SystemPartition& partition,
                               std::size_t samples, std::uint64_t seed, unsigned workers = 0);

struct MixedStateCheck {
  double max_off_diagonal = 0.0;
  double max_diagonal_deviation = 0.0;
  /// Largest entry in a row or column whose sector lies outside supp(p).
  double max_outside_support = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

/// Averages |Psi><Psi| over draws and compares with diag(rho_n).
/// Requires N <= 12 (std::length_error otherwise).
MixedStateCheck mixed_state_check(const MaxEntEnsemble& ensemble, std::size_t samples,
                                  std::uint64_t seed, unsigned workers = 0);

/// Seed streams used by the campaigns.
inline constexpr std::uint64_t kStreamEntropy = 1;
inline constexpr std::uint64_t kStreamMixedState = 2;
inline constexpr std::uint64_t kStreamScramble = 3;

}  // namespace maxent
