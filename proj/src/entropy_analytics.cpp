#include "maxent/entropy_analytics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace maxent {

GaussianParams GaussianParams::from_system(const SystemPartition& partition, double center,
                                           double width) {
  const double big_gamma = std::sqrt(static_cast<double>(partition.n_total())) / 2.0;
  return {static_cast<double>(partition.n_a()) / partition.n_total(), width / big_gamma,
          std::abs(center) / big_gamma};
}

double delta_s_average_exact(const ReducedChargeDistribution& p_a,
                             const SpectralDensity& spectral_a) {
  if (p_a.partition().n_a() != spectral_a.n()) {
    throw std::invalid_argument("subsystem distribution and spectrum disagree on N_A");
  }
  double kl = 0.0;
  for (int k = 0; k <= spectral_a.n(); ++k) {
    const double w = p_a[k];
    if (w > 0.0) {
      kl += w * (std::log(w) - spectral_a.log_omega(k));
    }
  }
  return -kl;
}

double delta_s_gaussian_closed_form(const GaussianParams& g) {
  if (!(g.n_a > 0.0 && g.n_a < 1.0) || !(g.delta >= 0.0) || !(g.kappa >= 0.0)) {
    throw std::invalid_argument("closed form needs 0 < n_a < 1, delta >= 0, kappa >= 0");
  }
  const double x = g.delta * g.delta - 1.0;
  const double arg = 1.0 + g.n_a * x;
  if (!(arg > 0.0)) {
    throw std::domain_error("closed form undefined: 1 + n_a (delta^2 - 1) = " +
                            std::to_string(arg) + " <= 0");
  }
  return -0.5 * g.n_a * (x + g.kappa * g.kappa) + 0.5 * std::log1p(g.n_a * x);
}

double delta_s_sharp_limit(double n_a) {
  if (!(n_a > 0.0 && n_a < 1.0)) {
    throw std::invalid_argument("n_a must lie in (0, 1)");
  }
  return 0.5 * (n_a + std::log1p(-n_a));
}

double sharpening_crossover(double n_a) {
  const double target = delta_s_sharp_limit(n_a);
  auto excess = [&](double delta) {
    return delta_s_gaussian_closed_form({n_a, delta, 0.0}) - target;
  };
  // The closed form is 0 at delta = 1 and decreases monotonically beyond.
  double lo = 1.0;
  double hi = 2.0;
  while (excess(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
  }
  for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

CurveTable figure1_sweep(std::span<const double> n_a_list, std::span<const double> delta_grid,
                         std::span<const double> kappa_grid) {
  static constexpr double kZeroKappa[] = {0.0};
  if (kappa_grid.empty()) {
    kappa_grid = kZeroKappa;
  }
  CurveTable table;
  table.rows.reserve(n_a_list.size() * delta_grid.size() * kappa_grid.size());
  for (double n_a : n_a_list) {
    for (double kappa : kappa_grid) {
      for (double delta : delta_grid) {
        table.rows.push_back({n_a, delta, kappa, delta_s_gaussian_closed_form({n_a, delta, kappa})});
      }
    }
    table.crossovers.push_back({n_a, sharpening_crossover(n_a)});
  }
  return table;
}

std::vector<double> linear_grid(double lo, double hi, int count) {
  if (count < 1 || !(hi >= lo)) {
    throw std::invalid_argument("grid needs count >= 1 and hi >= lo");
  }
  if (count == 1) {
    return {lo};
  }
  std::vector<double> grid(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    grid[i] = lo + (hi - lo) * i / (count - 1);
  }
  grid.back() = hi;
  return grid;
}

std::vector<double> default_fractions() {
  std::vector<double> out;
  for (int e = -9; e <= -1; ++e) {
    out.push_back(std::ldexp(1.0, e));
  }
  return out;
}

double page_correction(double d_a, double d_b) {
  if (!(d_a >= 1.0) || !(d_b >= 1.0)) {
    throw std::invalid_argument("dimensions must be >= 1");
  }
  return -std::min(d_a, d_b) / (2.0 * std::max(d_a, d_b));
}

double page_value(const SystemPartition& partition) {
  const int small = std::min(partition.n_a(), partition.n_b());
  const int large = std::max(partition.n_a(), partition.n_b());
  return small * std::numbers::ln2 - 0.5 * std::ldexp(1.0, small - large);
}

std::uint64_t narayana(int r, int k) {
  if (r < 1 || k < 1 || k > r) {
    throw std::domain_error("narayana(r, k) needs 1 <= k <= r, got r=" + std::to_string(r) +
                            " k=" + std::to_string(k));
  }
  if (r > 62) {
    throw std::overflow_error("narayana limited to r <= 62");
  }
  const unsigned __int128 prod =
      static_cast<unsigned __int128>(binomial(r, k)) * binomial(r, k - 1);
  const unsigned __int128 value = prod / static_cast<unsigned>(r);
  if (value > UINT64_MAX) {
    throw std::overflow_error("narayana value exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(value);
}

std::string_view to_string(TermMethod method) {
  switch (method) {
    case TermMethod::kNone: return "none";
    case TermMethod::kExact: return "exact";
    case TermMethod::kExactSum: return "exact_sum";
    case TermMethod::kClosedForm: return "closed_form";
    case TermMethod::kAsymptotic: return "asymptotic";
    case TermMethod::kProductState: return "product_state";
  }
  return "unknown";
}

double EntropyReport::total() const {
  double sum = 0.0;
  for (const EntropyTerm* t : {&s_thermal, &delta_s_average, &page_term, &wedge_term, &erfc_term,
                               &wedge_asymptotic, &erfc_asymptotic}) {
    if (t->included) sum += t->value;
  }
  return sum;
}

namespace {

// Evaluate on the smaller side (A on ties).
SystemPartition smaller_side(const SystemPartition& partition) {
  return partition.n_a() <= partition.n_b() ? partition : partition.swapped();
}

double erfcx(double x) {
  if (x < 25.0) {
    return std::exp(x * x) * std::erfc(x);
  }
  const double inv2 = 1.0 / (2.0 * x * x);
  const double series = 1.0 - inv2 + 3.0 * inv2 * inv2 - 15.0 * inv2 * inv2 * inv2;
  return series / (x * std::sqrt(std::numbers::pi));
}

}  // namespace

EntropyReport average_entropy_report(const ChargeDistribution& p, const SpectralDensity& spectral,
                                     const SystemPartition& partition, bool include_page) {
  const SystemPartition side = smaller_side(partition);
  const auto p_a = induced_subsystem_distribution(p, spectral, side);
  const SpectralDensity spectral_a(side.n_a());

  EntropyReport report;
  report.evaluated_qubits = side.n_a();
  report.s_thermal = {side.n_a() * std::numbers::ln2, TermMethod::kExact, true};
  report.delta_s_average = {delta_s_average_exact(p_a, spectral_a), TermMethod::kExactSum, true};
  report.page_term = {-0.5 * std::ldexp(1.0, side.n_a() - side.n_b()), TermMethod::kClosedForm,
                      include_page};
  return report;
}

EntropyReport microcanonical_entropy_with_fluctuations(ChargeValue q_bar,
                                                       const SystemPartition& partition,
                                                       const SpectralDensity& spectral) {
  const int n = spectral.n();
  if (partition.n_total() != n || q_bar.n != n || q_bar.k < 0 || q_bar.k > n) {
    throw std::invalid_argument("microcanonical charge is not a sector of N=" +
                                std::to_string(n));
  }
  const int na = partition.n_a();
  const int nb = partition.n_b();
  const int kbar = q_bar.k;

  const auto p = discretize(MicrocanonicalKind{q_bar}, spectral);
  EntropyReport report = average_entropy_report(p, spectral, partition, false);
  report.page_term.value = 0.0;
  report.page_term.method = TermMethod::kNone;

  const double qs = q_bar.q() / n;
  report.wedge_asymptotic = {wedge_correction(qs, n, spectral.gamma()), TermMethod::kAsymptotic,
                             false};
  report.erfc_asymptotic = {erfc_correction(qs, n, spectral.gamma()), TermMethod::kAsymptotic,
                            false};

  if (kbar == 0 || kbar == n) {
    // One-state sector: the state is a product state.
    report.wedge_term = {0.0, TermMethod::kProductState, true};
    report.erfc_term = {0.0, TermMethod::kProductState, true};
    return report;
  }

  const bool exact_ints = n <= SpectralDensity::kExactLimit;
  const double log_f = spectral.log_multiplicity(kbar);
  double log_branch = 0.0;
  double pairing = 0.0;
  for (int k_a = std::max(0, kbar - nb); k_a <= std::min(na, kbar); ++k_a) {
    const int k_b = kbar - k_a;
    const double log_fa = log_binomial(na, k_a);
    const double log_fb = log_binomial(nb, k_b);
    bool first_branch;  // F_B > F_A strictly
    if (exact_ints) {
      first_branch = binomial(nb, k_b) > binomial(na, k_a);
    } else {
      first_branch = log_fb - log_fa > 1e-12 * std::max(1.0, std::abs(log_fb));
    }
    const double weight = std::exp(log_fa + log_fb - log_f);
    const double log_keep = first_branch ? log_fb : log_fa;
    const double log_min = first_branch ? log_fa : log_fb;
    log_branch -= weight * (log_keep - log_f);
    pairing -= 0.5 * std::exp(2.0 * log_min - log_f);
  }
  report.wedge_term = {log_branch - report.average_state(), TermMethod::kExactSum, true};
  report.erfc_term = {pairing, TermMethod::kExactSum, true};
  return report;
}

double wedge_correction(double q_bar, int n, double gamma) {
  if (n < 1 || !(gamma > 0.0)) {
    throw std::invalid_argument("wedge correction needs N >= 1 and gamma > 0");
  }
  return -std::sqrt(static_cast<double>(n)) * std::abs(q_bar) /
         (std::sqrt(2.0 * std::numbers::pi) * gamma);
}

double erfc_correction(double q_bar, int n, double gamma) {
  if (n < 1 || !(gamma > 0.0)) {
    throw std::invalid_argument("erfc correction needs N >= 1 and gamma > 0");
  }
  const double x = std::sqrt(static_cast<double>(n)) * std::abs(q_bar) / (std::sqrt(2.0) * gamma);
  return -0.5 * erfcx(x);
}

}  // namespace maxent
