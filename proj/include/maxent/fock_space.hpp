#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace maxent {

/// Largest qubit count for which basis indices fit the 64-bit index type.
inline constexpr int kMaxIndexedQubits = 63;

/// Eigenvalue of the total z-magnetization on an N-qubit basis state.
///
/// The excitation count `k` (number of up spins) is the working variable
/// everywhere in the library. The spin-unit charge Q = k - N/2 can be
/// half-integer and only appears at presentation boundaries.
struct ChargeValue {
  int k = 0;
  int n = 0;

  double q() const { return k - 0.5 * n; }

  /// Converts a spin-unit charge to a sector; throws std::invalid_argument
  /// when q + N/2 is not an integer in [0, N].
  static ChargeValue from_q(double q, int n);

  friend bool operator==(const ChargeValue&, const ChargeValue&) = default;
};

/// k = popcount(basis_index). Throws std::out_of_range if the index is not
/// below 2^N.
ChargeValue charge_of(std::uint64_t basis_index, int n);

/// Bipartition of N qubits into A (the N_A high bits of a basis index) and
/// B (the N_B low bits), so that n = a * D_B + b.
class SystemPartition {
 public:
  SystemPartition(int n_total, int n_a);

  int n_total() const { return n_total_; }
  int n_a() const { return n_a_; }
  int n_b() const { return n_total_ - n_a_; }

  // Dimensions are only defined while they fit an index; they throw
  // std::out_of_range beyond kMaxIndexedQubits.
  std::uint64_t dim() const;
  std::uint64_t dim_a() const;
  std::uint64_t dim_b() const;

  SystemPartition swapped() const { return {n_total_, n_total_ - n_a_}; }

  std::pair<std::uint64_t, std::uint64_t> split(std::uint64_t basis_index) const;
  std::uint64_t combine(std::uint64_t a, std::uint64_t b) const;

  friend bool operator==(const SystemPartition&, const SystemPartition&) = default;

 private:
  int n_total_;
  int n_a_;
};

/// A/B split of a basis index; see SystemPartition::split.
std::pair<std::uint64_t, std::uint64_t> split_index(std::uint64_t basis_index,
                                                    const SystemPartition& partition);

/// ln binom(n, k), evaluated in extended precision. -inf outside 0 <= k <= n.
double log_binomial(int n, int k);

/// Exact binom(n, k) for n <= 62; std::overflow_error otherwise.
std::uint64_t binomial(int n, int k);

/// Charge spectrum of N qubits: Omega(Q_k) = binom(N, k) / 2^N.
///
/// Logarithms are always stored. For N <= kExactLimit the integer sector
/// multiplicities are also kept and all linear-space values come from them
/// exactly; above that limit linear values are exponentiated logs.
class SpectralDensity {
 public:
  static constexpr int kExactLimit = 60;

  explicit SpectralDensity(int n);

  int n() const { return n_; }
  int sectors() const { return n_ + 1; }
  bool log_space() const { return n_ > kExactLimit; }

  double charge(int k) const { return k - 0.5 * n_; }

  /// ln(D * Omega) = ln binom(N, k).
  double log_multiplicity(int k) const;
  /// D * Omega, the sector dimension.
  double multiplicity(int k) const;
  std::optional<std::uint64_t> exact_multiplicity(int k) const;

  double log_omega(int k) const;
  double omega(int k) const;

  std::span<const double> log_multiplicities() const { return log_mult_; }

  /// Per-site width of the Gaussian surrogate; 1/2 for spin-1/2.
  double gamma() const { return 0.5; }
  /// Gamma = sqrt(N) * gamma.
  double big_gamma() const;
  /// Exact variance of Q under Omega, computed from the table.
  double variance() const;

  /// ln D = N ln 2.
  double log_dim() const;

 private:
  void check_sector(int k) const;

  int n_;
  std::vector<double> log_mult_;
  std::vector<std::uint64_t> exact_;  // empty when log_space()
};

inline SpectralDensity spectral_density(int n) { return SpectralDensity(n); }

}  // namespace maxent
