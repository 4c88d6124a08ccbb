#include "maxent/scramble.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace maxent {

namespace {

constexpr std::uint64_t kSectorStream = 0x5ec7;
constexpr std::uint64_t kCircuitStream = 0xb71c;

std::vector<std::vector<std::uint64_t>> sector_indices(int n) {
  std::vector<std::vector<std::uint64_t>> sectors(static_cast<std::size_t>(n) + 1);
  const std::uint64_t dim = std::uint64_t{1} << n;
  for (std::uint64_t i = 0; i < dim; ++i) sectors[std::popcount(i)].push_back(i);
  return sectors;
}

Eigen::VectorXcd gaussian_vector(Eigen::Index dim, Rng& rng) {
  std::normal_distribution<double> normal;
  Eigen::VectorXcd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = {re, im};
  }
  return v;
}

std::vector<Complex> scramble_per_sector(const PureState& state, const ScrambleSpec& spec) {
  std::vector<Complex> out(state.dim());
  const auto sectors = sector_indices(state.n());
  for (std::size_t k = 0; k < sectors.size(); ++k) {
    const auto& idx = sectors[k];
    const auto dim = static_cast<Eigen::Index>(idx.size());
    Rng rng(derive_seed(spec.seed, kSectorStream, k));
    Eigen::VectorXcd block(dim);
    for (Eigen::Index i = 0; i < dim; ++i) block(i) = state[idx[i]];

    Eigen::VectorXcd image;
    if (spec.materialize_unitaries) {
      image = haar_unitary(static_cast<int>(dim), rng) * block;
    } else {
      const double weight = block.norm();
      if (weight == 0.0) continue;
      Eigen::VectorXcd direction = gaussian_vector(dim, rng);
      image = direction * (weight / direction.norm());
    }
    for (Eigen::Index i = 0; i < dim; ++i) out[idx[i]] = image(i);
  }
  return out;
}

void apply_brickwork(std::vector<Complex>& amps, int n, const ScrambleSpec& spec) {
  Rng rng(derive_seed(spec.seed, kCircuitStream, 0));
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  const std::uint64_t dim = amps.size();
  for (int layer = 0; layer < spec.steps; ++layer) {
    for (int j = layer % 2; j + 1 < n; j += 2) {
      const Complex phase00 = std::polar(1.0, angle(rng));
      const Complex phase11 = std::polar(1.0, angle(rng));
      const Eigen::Matrix2cd u = haar_unitary(2, rng);
      const std::uint64_t lo = std::uint64_t{1} << j;
      const std::uint64_t hi = std::uint64_t{1} << (j + 1);
      for (std::uint64_t base = 0; base < dim; ++base) {
        if (base & (lo | hi)) continue;
        amps[base] *= phase00;
        amps[base | lo | hi] *= phase11;
        const Complex a = amps[base | lo];
        const Complex b = amps[base | hi];
        amps[base | lo] = u(0, 0) * a + u(0, 1) * b;
        amps[base | hi] = u(1, 0) * a + u(1, 1) * b;
      }
    }
  }
}

}  // namespace

void CatProductSpec::validate() const {
  if (blocks < 1 || block_size < 1) {
    throw std::invalid_argument("cat product needs M >= 1 blocks of size L >= 1");
  }
  if (static_cast<long long>(blocks) * block_size > kMaxDenseQubits) {
    throw std::invalid_argument("cat product state exceeds the dense-state limit");
  }
}

PureState cat_product_state(const CatProductSpec& spec) {
  spec.validate();
  const int n = spec.n();
  const std::uint64_t block_mask = (std::uint64_t{1} << spec.block_size) - 1;
  const double amplitude = std::pow(2.0, -0.5 * spec.blocks);
  std::vector<Complex> amps(std::size_t{1} << n);
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << spec.blocks); ++s) {
    std::uint64_t index = 0;
    for (int j = 0; j < spec.blocks; ++j) {
      if (s >> j & 1) index |= block_mask << (j * spec.block_size);
    }
    amps[index] = amplitude;
  }
  return {n, std::move(amps)};
}

std::string describe(const ScrambleSpec& spec) {
  if (spec.mode == ScrambleMode::kBrickwork) {
    return "brickwork:" + std::to_string(spec.steps);
  }
  return spec.materialize_unitaries ? "haar-full" : "haar";
}

Eigen::MatrixXcd haar_unitary(int dim, Rng& rng) {
  if (dim < 1) {
    throw std::invalid_argument("unitary dimension must be positive");
  }
  std::normal_distribution<double> normal;
  Eigen::MatrixXcd z(dim, dim);
  for (int c = 0; c < dim; ++c) {
    for (int r = 0; r < dim; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(r, c) = Complex(re, im) * std::numbers::sqrt2 * 0.5;
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const auto& r = qr.matrixQR();
  for (int c = 0; c < dim; ++c) {
    const Complex d = r(c, c);
    const double mag = std::abs(d);
    q.col(c) *= mag > 0.0 ? d / mag : Complex(1.0);
  }
  return q;
}

PureState scramble(const PureState& state, const ScrambleSpec& spec) {
  if (spec.mode == ScrambleMode::kPerSectorHaar) {
    return PureState::normalized(state.n(), scramble_per_sector(state, spec));
  }
  if (spec.steps < 0) {
    throw std::invalid_argument("brickwork steps must be >= 0");
  }
  std::vector<Complex> amps(state.amplitudes().begin(), state.amplitudes().end());
  apply_brickwork(amps, state.n(), spec);
  return {state.n(), std::move(amps)};
}

double charge_conservation_residual(const PureState& before, const PureState& after) {
  const auto a = measure_charge_distribution(before);
  const auto b = measure_charge_distribution(after);
  if (a.size() != b.size()) {
    throw std::invalid_argument("states have different N");
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
  return worst;
}

EthComparison eth_deviation_experiment(const CatProductSpec& spec, const SystemPartition& cut,
                                       std::size_t trials, std::uint64_t seed, ScrambleSpec mode,
                                       unsigned workers) {
  spec.validate();
  if (cut.n_total() != spec.n()) {
    throw std::invalid_argument("cut and cat product disagree on N");
  }
  if (trials < 2) {
    throw std::invalid_argument("experiment needs at least 2 trials");
  }
  const PureState initial = cat_product_state(spec);
  const SpectralDensity spectral(spec.n());
  const auto p = discretize(CatProductKind{spec.blocks, spec.block_size}, spectral);

  std::vector<double> entropies(trials);
  std::vector<double> residuals(trials);
  parallel_for(trials, workers, [&](std::size_t i) {
    ScrambleSpec trial = mode;
    trial.seed = derive_seed(seed, kStreamScramble, i);
    const PureState out = scramble(initial, trial);
    entropies[i] = entanglement_entropy(out, cut);
    residuals[i] = charge_conservation_residual(initial, out);
  });

  EthComparison result{spec, cut, mode, 0.0, {}, {}, 0.0, 0.0, 0.0};
  result.scramble.seed = seed;
  result.initial_entropy = entanglement_entropy(initial, cut);
  result.measured = summarize(std::move(entropies), seed);
  result.prediction = average_entropy_report(p, spectral, cut, false);
  result.page_value = page_value(cut);
  for (double r : residuals) {
    result.max_conservation_residual = std::max(result.max_conservation_residual, r);
  }
  result.charge_width = std::sqrt(p.charge_variance());
  return result;
}

}  // namespace maxent
