#include "maxent/sampler.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "maxent/parallel.hpp"

namespace maxent {

namespace {

constexpr double kNormTolerance = 1e-10;
constexpr double kEigenTolerance = 1e-10;

using RowMajorMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const RowMajorMatrix> as_matrix(const PureState& state,
                                          const SystemPartition& partition) {
  if (partition.n_total() != state.n()) {
    throw std::invalid_argument("partition has N=" + std::to_string(partition.n_total()) +
                                " but the state has N=" + std::to_string(state.n()));
  }
  return {state.amplitudes().data(), static_cast<Eigen::Index>(partition.dim_a()),
          static_cast<Eigen::Index>(partition.dim_b())};
}

double squared_norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return s;
}

std::vector<double> clamped(const Eigen::VectorXd& eig) {
  std::vector<double> out(eig.data(), eig.data() + eig.size());
  for (double& x : out) {
    if (x < -kEigenTolerance) {
      throw std::runtime_error("density matrix eigenvalue " + std::to_string(x) +
                               " is negative beyond tolerance");
    }
    x = std::max(x, 0.0);
  }
  return out;
}

}  // namespace

PureState::PureState(int n, std::vector<Complex> amplitudes) : n_(n), amps_(std::move(amplitudes)) {
  if (n < 1 || n > kMaxDenseQubits) {
    throw std::invalid_argument("dense states support 1 <= N <= " +
                                std::to_string(kMaxDenseQubits));
  }
  if (amps_.size() != (std::size_t{1} << n)) {
    throw std::invalid_argument("amplitude vector length must be 2^N");
  }
  if (std::abs(norm() - 1.0) > kNormTolerance) {
    throw std::invalid_argument("state is not normalized (norm=" + std::to_string(norm()) + ")");
  }
}

PureState PureState::normalized(int n, std::vector<Complex> amplitudes) {
  const double nrm = std::sqrt(squared_norm(amplitudes));
  if (!(nrm > 0.0)) {
    throw std::invalid_argument("cannot normalize a zero vector");
  }
  for (auto& z : amplitudes) z /= nrm;
  return {n, std::move(amplitudes)};
}

PureState PureState::basis_state(int n, std::uint64_t index) {
  if (n < 1 || n > kMaxDenseQubits) {
    throw std::invalid_argument("dense states support 1 <= N <= " +
                                std::to_string(kMaxDenseQubits));
  }
  std::vector<Complex> amps(std::size_t{1} << n);
  amps.at(index) = 1.0;
  return {n, std::move(amps)};
}

double PureState::norm() const { return std::sqrt(squared_norm(amps_)); }

Complex inner_product(const PureState& bra, const PureState& ket) {
  if (bra.dim() != ket.dim()) {
    throw std::invalid_argument("inner product of states with different N");
  }
  Complex acc = 0.0;
  for (std::size_t i = 0; i < bra.dim(); ++i) acc += std::conj(bra[i]) * ket[i];
  return acc;
}

PureState sample_state(const MaxEntEnsemble& ensemble, std::uint64_t seed) {
  const int n = ensemble.n();
  if (n > kMaxDenseQubits) {
    throw std::length_error("cannot materialize a state of " + std::to_string(n) + " qubits");
  }
  std::vector<double> sigma(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    sigma[k] = std::sqrt(0.5 * ensemble.rho(k));
  }
  Rng rng(seed);
  std::normal_distribution<double> normal;
  std::vector<Complex> amps(std::size_t{1} << n);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const double s = sigma[std::popcount(i)];
    if (s == 0.0) continue;
    const double re = normal(rng);
    const double im = normal(rng);
    amps[i] = {s * re, s * im};
  }
  return PureState::normalized(n, std::move(amps));
}

std::vector<double> measure_charge_distribution(const PureState& state) {
  std::vector<double> table(static_cast<std::size_t>(state.n()) + 1, 0.0);
  for (std::size_t i = 0; i < state.dim(); ++i) {
    table[std::popcount(i)] += std::norm(state[i]);
  }
  return table;
}

ReducedDensityMatrix::ReducedDensityMatrix(SystemPartition partition, Eigen::MatrixXcd entries)
    : partition_(partition), entries_(std::move(entries)) {
  const auto d = static_cast<Eigen::Index>(partition_.dim_a());
  if (entries_.rows() != d || entries_.cols() != d) {
    throw std::invalid_argument("reduced density matrix must be D_A x D_A");
  }
}

double ReducedDensityMatrix::hermiticity_error() const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

Eigen::VectorXd ReducedDensityMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

ReducedDensityMatrix reduced_density_matrix(const PureState& state,
                                            const SystemPartition& partition) {
  const auto m = as_matrix(state, partition);
  Eigen::MatrixXcd rho = m * m.adjoint();
  return {partition, std::move(rho)};
}

std::vector<double> schmidt_spectrum(const PureState& state, const SystemPartition& partition) {
  const auto m = as_matrix(state, partition);
  Eigen::MatrixXcd gram;
  if (m.rows() <= m.cols()) {
    gram = m * m.adjoint();
  } else {
    gram = m.adjoint() * m;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram, Eigen::EigenvaluesOnly);
  return clamped(solver.eigenvalues());
}

double von_neumann_entropy(std::span<const double> spectrum) {
  double s = 0.0;
  for (double x : spectrum) {
    if (x < -kEigenTolerance) {
      throw std::runtime_error("spectrum entry " + std::to_string(x) + " is negative");
    }
    if (x > 0.0) s -= x * std::log(x);
  }
  return s;
}

double renyi_entropy(std::span<const double> spectrum, int order) {
  if (order < 2) {
    throw std::invalid_argument("Renyi order must be >= 2");
  }
  double moment = 0.0;
  for (double x : spectrum) {
    if (x < -kEigenTolerance) {
      throw std::runtime_error("spectrum entry " + std::to_string(x) + " is negative");
    }
    if (x > 0.0) moment += std::pow(x, order);
  }
  return std::log(moment) / (1.0 - order);
}

double entanglement_entropy(const ReducedDensityMatrix& rho_a) {
  return von_neumann_entropy(clamped(rho_a.eigenvalues()));
}

double renyi_entropy(const ReducedDensityMatrix& rho_a, int order) {
  return renyi_entropy(clamped(rho_a.eigenvalues()), order);
}

double entanglement_entropy(const PureState& state, const SystemPartition& partition) {
  return von_neumann_entropy(schmidt_spectrum(state, partition));
}

McEstimate summarize(std::vector<double> values, std::uint64_t seed) {
  McEstimate est;
  est.samples = values.size();
  est.seed = seed;
  if (values.empty()) {
    est.values = std::move(values);
    return est;
  }
  double sum = 0.0;
  for (double v : values) sum += v;
  est.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - est.mean) * (v - est.mean);
    est.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
    est.standard_error = est.stddev / std::sqrt(static_cast<double>(values.size()));
  }
  est.values = std::move(values);
  return est;
}

McEstimate run_campaign(std::size_t samples, std::uint64_t seed, std::uint64_t stream,
                        unsigned workers,
                        const std::function<double(std::size_t, std::uint64_t)>& fn) {
  std::vector<double> values(samples);
  parallel_for(samples, workers,
               [&](std::size_t i) { values[i] = fn(i, derive_seed(seed, stream, i)); });
  return summarize(std::move(values), seed);
}

McEstimate monte_carlo_entropy(const MaxEntEnsemble& ensemble, const SystemPartition& partition,
                               std::size_t samples, std::uint64_t seed, unsigned workers) {
  if (samples < 2) {
    throw std::invalid_argument("monte carlo needs at least 2 samples");
  }
  if (partition.n_total() != ensemble.n()) {
    throw std::invalid_argument("partition and ensemble disagree on N");
  }
  return run_campaign(samples, seed, kStreamEntropy, workers,
                      [&](std::size_t, std::uint64_t item_seed) {
                        return entanglement_entropy(sample_state(ensemble, item_seed), partition);
                      });
}

MixedStateCheck mixed_state_check(const MaxEntEnsemble& ensemble, std::size_t samples,
                                  std::uint64_t seed, unsigned workers) {
  const int n = ensemble.n();
  if (n > 12) {
    throw std::length_error("mixed-state check materializes D x D and is limited to N <= 12");
  }
  if (samples < 1) {
    throw std::invalid_argument("mixed-state check needs samples >= 1");
  }
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  // A fixed batch size keeps the accumulation order independent of `workers`.
  constexpr std::size_t kBatch = 64;
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
  Eigen::MatrixXcd batch(dim, static_cast<Eigen::Index>(kBatch));
  for (std::size_t start = 0; start < samples; start += kBatch) {
    const std::size_t count = std::min(kBatch, samples - start);
    parallel_for(count, workers, [&](std::size_t j) {
      const auto state =
          sample_state(ensemble, derive_seed(seed, kStreamMixedState, start + j));
      for (Eigen::Index r = 0; r < dim; ++r) batch(r, static_cast<Eigen::Index>(j)) = state[r];
    });
    const auto cols = batch.leftCols(static_cast<Eigen::Index>(count));
    acc.selfadjointView<Eigen::Lower>().rankUpdate(cols);
  }
  acc /= static_cast<double>(samples);

  MixedStateCheck out;
  out.samples = samples;
  out.seed = seed;
  for (Eigen::Index c = 0; c < dim; ++c) {
    const double expected = ensemble.rho_of_state(static_cast<std::uint64_t>(c));
    out.max_diagonal_deviation =
        std::max(out.max_diagonal_deviation, std::abs(acc(c, c).real() - expected));
    for (Eigen::Index r = c; r < dim; ++r) {
      const double mag = std::abs(acc(r, c));
      if (r > c) out.max_off_diagonal = std::max(out.max_off_diagonal, mag);
      if (expected == 0.0 || ensemble.rho_of_state(static_cast<std::uint64_t>(r)) == 0.0) {
        out.max_outside_support = std::max(out.max_outside_support, mag);
      }
    }
  }
  return out;
}

}  // namespace maxent
