#include "maxent/fock_space.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace maxent {

ChargeValue ChargeValue::from_q(double q, int n) {
  if (n < 1) {
    throw std::invalid_argument("qubit count must be positive");
  }
  const double k_real = q + 0.5 * n;
  const double k_round = std::round(k_real);
  if (std::abs(k_real - k_round) > 1e-9 || k_round < 0 || k_round > n) {
    throw std::invalid_argument("charge " + std::to_string(q) + " is not a sector of " +
                                std::to_string(n) + " qubits");
  }
  return {static_cast<int>(k_round), n};
}

ChargeValue charge_of(std::uint64_t basis_index, int n) {
  if (n < 1 || n > kMaxIndexedQubits) {
    throw std::out_of_range("qubit count out of range for indexing");
  }
  if (basis_index >> n != 0) {
    throw std::out_of_range("basis index " + std::to_string(basis_index) + " exceeds 2^" +
                            std::to_string(n));
  }
  return {std::popcount(basis_index), n};
}

SystemPartition::SystemPartition(int n_total, int n_a) : n_total_(n_total), n_a_(n_a) {
  if (n_total < 2) {
    throw std::invalid_argument("a bipartition needs at least 2 qubits");
  }
  if (n_a < 1 || n_a > n_total - 1) {
    throw std::invalid_argument("subsystem size N_A=" + std::to_string(n_a) +
                                " must lie in [1, N-1] for N=" + std::to_string(n_total));
  }
}

namespace {

std::uint64_t pow2(int bits) {
  if (bits > kMaxIndexedQubits) {
    throw std::out_of_range("dimension 2^" + std::to_string(bits) + " is not indexable");
  }
  return std::uint64_t{1} << bits;
}

}  // namespace

std::uint64_t SystemPartition::dim() const { return pow2(n_total_); }
std::uint64_t SystemPartition::dim_a() const { return pow2(n_a_); }
std::uint64_t SystemPartition::dim_b() const { return pow2(n_b()); }

std::pair<std::uint64_t, std::uint64_t> SystemPartition::split(std::uint64_t basis_index) const {
  if (basis_index >= dim()) {
    throw std::out_of_range("basis index out of range for partition");
  }
  const int nb = n_b();
  return {basis_index >> nb, basis_index & ((std::uint64_t{1} << nb) - 1)};
}

std::uint64_t SystemPartition::combine(std::uint64_t a, std::uint64_t b) const {
  if (a >= dim_a() || b >= dim_b()) {
    throw std::out_of_range("subsystem index out of range");
  }
  return (a << n_b()) | b;
}

std::pair<std::uint64_t, std::uint64_t> split_index(std::uint64_t basis_index,
                                                    const SystemPartition& partition) {
  return partition.split(basis_index);
}

double log_binomial(int n, int k) {
  if (k < 0 || k > n) {
    return -std::numeric_limits<double>::infinity();
  }
  const long double v = std::lgamma(static_cast<long double>(n) + 1.0L) -
                        std::lgamma(static_cast<long double>(k) + 1.0L) -
                        std::lgamma(static_cast<long double>(n - k) + 1.0L);
  return static_cast<double>(v);
}

std::uint64_t binomial(int n, int k) {
  if (n < 0 || n > 62) {
    throw std::overflow_error("exact binomial limited to n <= 62");
  }
  if (k < 0 || k > n) {
    return 0;
  }
  k = std::min(k, n - k);
  // Multiplicative form; each partial product is itself a binomial, so the
  // division is exact and the 128-bit intermediate cannot overflow.
  unsigned __int128 acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
  }
  return static_cast<std::uint64_t>(acc);
}

SpectralDensity::SpectralDensity(int n) : n_(n) {
  if (n < 1) {
    throw std::invalid_argument("spectral density needs N >= 1");
  }
  log_mult_.resize(static_cast<std::size_t>(n) + 1);
  if (!log_space()) {
    exact_.resize(log_mult_.size());
    for (int k = 0; k <= n; ++k) {
      exact_[k] = binomial(n, k);
      log_mult_[k] = std::log(static_cast<double>(exact_[k]));
    }
  } else {
    for (int k = 0; k <= n; ++k) {
      log_mult_[k] = log_binomial(n, k);
    }
  }
}

void SpectralDensity::check_sector(int k) const {
  if (k < 0 || k > n_) {
    throw std::out_of_range("sector k=" + std::to_string(k) + " outside [0, " +
                            std::to_string(n_) + "]");
  }
}

double SpectralDensity::log_multiplicity(int k) const {
  check_sector(k);
  return log_mult_[k];
}

double SpectralDensity::multiplicity(int k) const {
  check_sector(k);
  return exact_.empty() ? std::exp(log_mult_[k]) : static_cast<double>(exact_[k]);
}

std::optional<std::uint64_t> SpectralDensity::exact_multiplicity(int k) const {
  check_sector(k);
  if (exact_.empty()) {
    return std::nullopt;
  }
  return exact_[k];
}

double SpectralDensity::log_dim() const { return n_ * std::numbers::ln2; }

double SpectralDensity::log_omega(int k) const { return log_multiplicity(k) - log_dim(); }

double SpectralDensity::omega(int k) const {
  check_sector(k);
  if (!exact_.empty()) {
    return std::ldexp(static_cast<double>(exact_[k]), -n_);
  }
  return std::exp(log_mult_[k] - log_dim());
}

double SpectralDensity::big_gamma() const { return std::sqrt(static_cast<double>(n_)) * gamma(); }

double SpectralDensity::variance() const {
  double mean = 0.0;
  for (int k = 0; k <= n_; ++k) {
    mean += omega(k) * charge(k);
  }
  double var = 0.0;
  for (int k = 0; k <= n_; ++k) {
    const double d = charge(k) - mean;
    var += omega(k) * d * d;
  }
  return var;
}

}  // namespace maxent
