#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "maxent/charge_distribution.hpp"
#include "maxent/fock_space.hpp"

namespace maxent {

/// Parameters of the Gaussian closed form: relative subsystem size
/// n_a = N_A/N, delta = DeltaQ/Gamma and kappa = |Qbar|/Gamma.
struct GaussianParams {
  double n_a = 0.5;
  double delta = 1.0;
  double kappa = 0.0;

  /// Gamma = sqrt(N)/2 for N qubits.
  static GaussianParams from_system(const SystemPartition& partition, double center, double width);
};

/// -KL(p_A || Omega_A) in nats. Always <= 0.
double delta_s_average_exact(const ReducedChargeDistribution& p_a,
                             const SpectralDensity& spectral_a);

/// -(n_a/2)(delta^2 + kappa^2 - 1) + (1/2) ln(1 + n_a (delta^2 - 1)).
/// Throws std::invalid_argument unless n_a in (0,1), delta >= 0, kappa >= 0,
/// and std::domain_error if the log argument is not positive.
double delta_s_gaussian_closed_form(const GaussianParams& g);

/// delta -> 0 limit of the closed form, (n_a + ln(1 - n_a)) / 2.
double delta_s_sharp_limit(double n_a);

struct CurveRow {
  double n_a = 0.0;
  double delta = 0.0;
  double kappa = 0.0;
  double delta_s = 0.0;
};

/// Width delta > 1 at which broadening the input reduces the average
/// entropy as much as the delta -> 0 limit does. Tends to sqrt(2) as
/// n_a -> 0.
struct Crossover {
  double n_a = 0.0;
  double delta = 0.0;
};

struct CurveTable {
  std::vector<CurveRow> rows;
  std::vector<Crossover> crossovers;
};

/// Rows ordered by (n_a, kappa, delta) following the input order.
CurveTable figure1_sweep(std::span<const double> n_a_list, std::span<const double> delta_grid,
                         std::span<const double> kappa_grid = {});

double sharpening_crossover(double n_a);

/// count evenly spaced points on [lo, hi], endpoints included.
std::vector<double> linear_grid(double lo, double hi, int count);

/// 2^-9, 2^-8, ..., 2^-1.
std::vector<double> default_fractions();

/// -min(D_A,D_B) / (2 max(D_A,D_B)).
double page_correction(double d_a, double d_b);

/// min(N_A,N_B) ln 2 + page_correction: mean entanglement of a uniformly
/// random pure state to leading order.
double page_value(const SystemPartition& partition);

/// Narayana number N(r,k) = binom(r,k) binom(r,k-1) / r, exact.
/// std::domain_error unless 1 <= k <= r; std::overflow_error for r > 62.
std::uint64_t narayana(int r, int k);

enum class TermMethod {
  kNone,
  kExact,        // elementary exact value (e.g. N_A ln 2)
  kExactSum,     // exact discrete sum over sectors
  kClosedForm,   // Gaussian / Page closed form
  kAsymptotic,   // large-N asymptotic expression
  kProductState  // one-state sector, entropy is identically zero
};

std::string_view to_string(TermMethod method);

struct EntropyTerm {
  double value = 0.0;
  TermMethod method = TermMethod::kNone;
  bool included = false;
};

/// Entanglement entropy prediction, split into its contributions.
///
/// s_thermal and delta_s_average refer to the smaller subsystem
/// (`evaluated_qubits`), since both sides of a pure state carry the same
/// entropy. For the microcanonical two-branch sum, wedge_term is the
/// logarithmic branch-swap deviation from the average-state value and
/// erfc_term is the pairing term -sum F_min^2 / (2F); their equal-cut
/// large-N forms are carried in wedge_asymptotic / erfc_asymptotic for
/// comparison and are not part of the total.
struct EntropyReport {
  int evaluated_qubits = 0;
  EntropyTerm s_thermal;
  EntropyTerm delta_s_average;
  EntropyTerm page_term;
  EntropyTerm wedge_term;
  EntropyTerm erfc_term;
  EntropyTerm wedge_asymptotic;
  EntropyTerm erfc_asymptotic;

  /// Sum of the included terms.
  double total() const;
  /// s_thermal + delta_s_average.
  double average_state() const { return s_thermal.value + delta_s_average.value; }
};

/// S_th + Delta S^a (exact induced-distribution pipeline), plus the Page term
/// when include_page is set.
EntropyReport average_entropy_report(const ChargeDistribution& p, const SpectralDensity& spectral,
                                     const SystemPartition& partition, bool include_page = false);

/// Two-branch sum over (Q_A, Q_B = Qbar - Q_A) for a microcanonical input,
/// keeping the k = 1, 2 Narayana terms. Ties F_A == F_B go to the swapped
/// branch. std::invalid_argument if Qbar is not a sector of N.
EntropyReport microcanonical_entropy_with_fluctuations(ChargeValue q_bar,
                                                       const SystemPartition& partition,
                                                       const SpectralDensity& spectral);

/// -sqrt(N) qbar / (sqrt(2 pi) gamma); uses |qbar|.
double wedge_correction(double q_bar, int n, double gamma);

/// -(1/2) exp(N qbar^2 / (2 gamma^2)) erfc(sqrt(N) qbar / (sqrt(2) gamma)),
/// evaluated as a scaled complementary error function so large arguments do
/// not overflow; uses |qbar|.
double erfc_correction(double q_bar, int n, double gamma);

}  // namespace maxent
