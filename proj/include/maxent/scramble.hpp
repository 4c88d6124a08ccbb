#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "maxent/entropy_analytics.hpp"
#include "maxent/parallel.hpp"
#include "maxent/sampler.hpp"

namespace maxent {

/// M blocks of L spins each, block j on bits [jL, (j+1)L).
struct CatProductSpec {
  int blocks = 1;
  int block_size = 1;

  int n() const { return blocks * block_size; }
  /// std::invalid_argument unless M >= 1, L >= 1 and M*L fits a dense state.
  void validate() const;
};

/// Tensor product of (|up...up> + |down...down>)/sqrt(2) over the blocks.
PureState cat_product_state(const CatProductSpec& spec);

enum class ScrambleMode { kPerSectorHaar, kBrickwork };

struct ScrambleSpec {
  ScrambleMode mode = ScrambleMode::kPerSectorHaar;
  /// Brickwork layers; ignored for per-sector Haar.
  int steps = 0;
  std::uint64_t seed = 0;
  /// Per-sector Haar only: build each sector's unitary explicitly (QR of a
  /// complex Gaussian matrix) instead of drawing U v directly.
  bool materialize_unitaries = false;
};

/// "haar", "haar-full" or "brickwork:<steps>".
std::string describe(const ScrambleSpec& spec);

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the
/// phases of diag(R) divided out.
Eigen::MatrixXcd haar_unitary(int dim, Rng& rng);

/// Charge-conserving random evolution.
///
/// Per-sector Haar: every total-charge block gets an independent Haar
/// unitary. Unless materialize_unitaries is set, the block image U v is drawn
/// directly as |v| times a uniformly random unit vector, which has exactly
/// the distribution of U v for Haar U.
///
/// Brickwork: `steps` layers of nearest-neighbour gates on bit pairs
/// (2i, 2i+1) then (2i+1, 2i+2), alternating. Each gate is a phase on |00>,
/// a phase on |11> and a Haar U(2) on span{|01>, |10>}. The same seed yields
/// the same circuit for every input.
PureState scramble(const PureState& state, const ScrambleSpec& spec);

/// Largest per-sector change of Born weight between two states.
double charge_conservation_residual(const PureState& before, const PureState& after);

struct EthComparison {
  CatProductSpec cat;
  SystemPartition cut;
  ScrambleSpec scramble;
  /// Entropy of the unscrambled cat-product state.
  double initial_entropy = 0.0;
  McEstimate measured;
  /// Average-state prediction S_th + Delta S^a for p = cat product.
  EntropyReport prediction;
  double page_value = 0.0;
  /// Largest charge-table change over all trials.
  double max_conservation_residual = 0.0;
  /// Standard deviation of Q under the cat-product distribution.
  double charge_width = 0.0;
};

/// cat_product_state -> scramble, repeated over `trials` independent seeds.
/// The scramble seed of trial i is derive_seed(seed, kStreamScramble, i);
/// `mode.seed` is ignored.
EthComparison eth_deviation_experiment(const CatProductSpec& spec, const SystemPartition& cut,
                                       std::size_t trials, std::uint64_t seed,
                                       ScrambleSpec mode = {}, unsigned workers = 0);

}  // namespace maxent
