// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "maxent/charge_distribution.hpp"
#include "maxent/ensemble.hpp"
#include "maxent/entropy_analytics.hpp"
#include "maxent/sampler.hpp"
#include "maxent/scramble.hpp"
#include "maxent/text.hpp"
#include "oracles/oracles.hpp"

using namespace maxent;

namespace {

constexpr double kLn2 = std::numbers::ln2;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

// Rows used for the byte-exact reproducibility check.
std::string rows_of(const McEstimate& e) {
  std::string s = std::to_string(e.seed) + "," + std::to_string(e.samples) + "," + format_number(e.mean) + "," +
                  format_number(e.standard_error);
  for (double v : e.values) s += "," + format_number(v);
  return s + "\n";
}

MaxEntEnsemble micro_ensemble(int n, int k) {
  const SpectralDensity s(n);
  return build_ensemble(discretize(MicrocanonicalKind{{k, n}}, s), s);
}

MaxEntEnsemble omega_ensemble(int n) {
  const SpectralDensity s(n);
  std::vector<double> w(n + 1);
  for (int k = 0; k <= n; ++k) w[k] = s.omega(k);
  return build_ensemble(discretize(TabulatedKind{w}, s), s);
}

// Monte Carlo campaigns; each returns its reproducibility rows.
struct Page3 {
  McEstimate est;
};
Page3 run_page(unsigned workers) {
  return {monte_carlo_entropy(omega_ensemble(12), SystemPartition(12, 3), 2000, 3003, workers)};
}

struct Micro4 {
  McEstimate half;
  McEstimate two;
};
Micro4 run_micro(unsigned workers) {
  return {monte_carlo_entropy(micro_ensemble(14, 7), SystemPartition(14, 7), 1000, 4004, workers),
          monte_carlo_entropy(micro_ensemble(2, 1), SystemPartition(2, 1), 1000, 4005, workers)};
}

struct Wedge5 {
  McEstimate shifted;
  std::vector<McEstimate> sweep;
};
Wedge5 run_wedge(unsigned workers) {
  Wedge5 w;
  w.shifted = monte_carlo_entropy(micro_ensemble(14, 8), SystemPartition(14, 7), 1000, 5005, workers);
  const auto centered = micro_ensemble(14, 7);
  for (int na = 1; na < 14; ++na) {
    w.sweep.push_back(
        monte_carlo_entropy(centered, SystemPartition(14, na), 300, derive_seed(5006, 0, na), workers));
  }
  return w;
}

EthComparison run_cat(unsigned workers) {
  return eth_deviation_experiment({3, 4}, SystemPartition(12, 6), 200, 6006, ScrambleSpec{}, workers);
}

std::string all_rows(unsigned workers) {
  std::string s;
  s += rows_of(run_page(workers).est);
  const auto m = run_micro(workers);
  s += rows_of(m.half) + rows_of(m.two);
  const auto w = run_wedge(workers);
  s += rows_of(w.shifted);
  for (const auto& e : w.sweep) s += rows_of(e);
  s += rows_of(run_cat(workers).measured);
  return s;
}

Outcome criterion1() {
  Outcome o{true, ""};
  double worst = 0.0;
  for (double na : default_fractions()) worst = std::max(worst, std::abs(delta_s_gaussian_closed_form({na, 1.0, 0.0})));
  const auto start = std::chrono::steady_clock::now();
  const auto table = figure1_sweep(default_fractions(), linear_grid(0.05, 4.0, 200));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.pass = worst <= 1e-15 && table.rows.size() == 1800 && secs < 1.0;
  o.detail = "max |dS(delta=1)| = " + fmt(worst) + ", sweep " + std::to_string(table.rows.size()) + " points in " +
             fmt(secs, 3) + " s";
  return o;
}

Outcome criterion2() {
  const auto start = std::chrono::steady_clock::now();
  const SpectralDensity s(200);
  const SpectralDensity sa(25);
  const SystemPartition cut(200, 25);
  bool ok = true;
  std::string detail;
  for (double delta : {0.5, 1.0, 2.0}) {
    const auto p = discretize(GaussianKind{0.0, delta * s.big_gamma()}, s);
    const double exact = delta_s_average_exact(induced_subsystem_distribution(p, s, cut), sa);
    const double closed = delta_s_gaussian_closed_form({25.0 / 200.0, delta, 0.0});
    const double tol = std::max(0.05 * std::abs(closed), 0.02);
    ok = ok && std::abs(exact - closed) <= tol;
    detail += "delta=" + fmt(delta) + ": exact " + fmt(exact) + " closed " + fmt(closed) + "; ";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {ok && secs < 1.0, detail + fmt(secs, 3) + " s"};
}

Outcome criterion3(const Page3& r, double secs) {
  const double target = page_value(SystemPartition(12, 3));
  const double gap = std::abs(r.est.mean - target);
  // Reported only: the exact finite-D average, whose 1/D_B^2 terms the
  // target formula drops.
  const double exact = oracle::page_exact(8, 512);
  return {gap <= 3.0 * r.est.standard_error && secs < 60.0,
          "mean " + fmt(r.est.mean) + " +- " + fmt(r.est.standard_error) + " vs " + fmt(target) + " (" +
              fmt(gap / r.est.standard_error, 3) + " stderr); exact Page average " + fmt(exact) + " (" +
              fmt(std::abs(r.est.mean - exact) / r.est.standard_error, 3) + " stderr)"};
}

Outcome criterion4(const Micro4& r) {
  const SpectralDensity s14(14), s2(2);
  const auto pred = microcanonical_entropy_with_fluctuations({7, 14}, SystemPartition(14, 7), s14);
  const bool has_half = pred.erfc_term.included && std::abs(pred.erfc_term.value + 0.5) < 1e-12;
  const bool main_ok = std::abs(r.half.mean - pred.total()) <= 3.0 * r.half.standard_error + 0.02;
  const double hand = kLn2 - 0.5;
  const bool two_ok = std::abs(r.two.mean - hand) <= 3.0 * r.two.standard_error;
  return {has_half && main_ok && two_ok,
          "N=14: mean " + fmt(r.half.mean) + " +- " + fmt(r.half.standard_error) + " vs " + fmt(pred.total()) +
              " (pairing term " + fmt(pred.erfc_term.value) + ") " + (main_ok ? "ok" : "off") +
              "; N=2: mean " + fmt(r.two.mean) + " +- " + fmt(r.two.standard_error) + " vs ln2-1/2 = " +
              fmt(hand) + " " + (two_ok ? "ok" : "off")};
}

Outcome criterion5(const Wedge5& r) {
  const SpectralDensity s(14);
  const SystemPartition cut(14, 7);
  const double symmetric = microcanonical_entropy_with_fluctuations({7, 14}, cut, s).total();
  const double q_bar = s.charge(8) / 14.0;
  const double wedge = wedge_correction(q_bar, 14, s.gamma());
  const double diff = r.shifted.mean - symmetric;
  const double ratio = diff / wedge;
  const bool wedge_ok = diff < 0.0 && ratio >= 0.5 && ratio <= 2.0;

  // Stricter reading: remove the average-state and pairing parts at k=8.
  const auto shifted = microcanonical_entropy_with_fluctuations({8, 14}, cut, s);
  const double residual = r.shifted.mean - (shifted.average_state() + shifted.erfc_term.value);
  const double residual_ratio = residual / wedge;

  bool sym_ok = true;
  double worst = 0.0;
  for (std::size_t i = 0; i < r.sweep.size(); ++i) {
    const auto& a = r.sweep[i];
    const auto& b = r.sweep[r.sweep.size() - 1 - i];
    const double z = std::abs(a.mean - b.mean) / std::hypot(a.standard_error, b.standard_error);
    worst = std::max(worst, z);
    sym_ok = sym_ok && z <= 3.0;
  }
  return {wedge_ok && sym_ok,
          "qbar=" + fmt(q_bar) + ": MC - symmetric = " + fmt(diff) + ", wedge " + fmt(wedge) + ", ratio " +
              fmt(ratio, 3) + "; residual ratio " + fmt(residual_ratio, 3) + "; sweep asymmetry max " +
              fmt(worst, 3) + " combined stderr"};
}

Outcome criterion6(const EthComparison& r) {
  const auto table = measure_charge_distribution(cat_product_state({3, 4}));
  double table_gap = 0.0;
  for (int k = 0; k <= 12; ++k) {
    const double want = k % 4 == 0 ? static_cast<double>(binomial(3, k / 4)) / 8.0 : 0.0;
    table_gap = std::max(table_gap, std::abs(table[k] - want));
  }
  const double se = r.measured.standard_error;
  const double pred = r.prediction.average_state();
  const bool pred_ok = std::abs(r.measured.mean - pred) <= 3.0 * se + 0.05;
  const bool page_ok = std::abs(r.measured.mean - r.page_value) > 3.0 * se;
  const bool conserved = r.max_conservation_residual <= 1e-12;
  return {table_gap <= 1e-12 && conserved && pred_ok && page_ok,
          "table gap " + fmt(table_gap) + ", residual " + fmt(r.max_conservation_residual) + "; mean " +
              fmt(r.measured.mean) + " +- " + fmt(se) + " vs S_th+dS " + fmt(pred) + " " +
              (pred_ok ? "ok" : "off") + ", Page " + fmt(r.page_value) + " " + (page_ok ? "separated" : "not separated")};
}

DistributionKind random_kind(std::mt19937_64& rng, int n, int which) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  switch (which % 5) {
    case 0:
      return GaussianKind{(u(rng) - 0.5) * n * 0.5, 0.2 + u(rng) * std::sqrt(n)};
    case 1:
      return MicrocanonicalKind{{std::uniform_int_distribution<int>(0, n)(rng), n}};
    case 2:
      return FlatKind{};
    case 3: {
      std::vector<int> divisors;
      for (int l = 1; l <= n; ++l)
        if (n % l == 0) divisors.push_back(l);
      const int l = divisors[std::uniform_int_distribution<std::size_t>(0, divisors.size() - 1)(rng)];
      return CatProductKind{n / l, l};
    }
    default: {
      std::vector<double> w(n + 1);
      for (auto& x : w) x = u(rng);
      return TabulatedKind{w};
    }
  }
}

Outcome criterion7() {
  std::mt19937_64 rng(7007);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const int n = std::uniform_int_distribution<int>(4, 16)(rng);
    const SpectralDensity s(n);
    const auto p = discretize(random_kind(rng, n, i), s);
    const double lhs = input_information(p, s);
    const double rhs = s.log_dim() - ensemble_entropy(build_ensemble(p, s));
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return {worst <= 1e-12, "max |I - (ln D - S)| = " + fmt(worst) + " over 20 distributions"};
}

double log_sum_exp(const std::vector<double>& xs) {
  const double m = *std::max_element(xs.begin(), xs.end());
  if (std::isinf(m)) return m;
  long double acc = 0.0L;
  for (double x : xs) acc += std::exp(static_cast<long double>(x - m));
  return m + static_cast<double>(std::log(acc));
}

Outcome criterion8() {
  std::mt19937_64 rng(8008);
  double worst_norm = 0.0;
  double worst_vdm = 0.0;
  for (int trial = 0; trial < 60; ++trial) {
    const int n = trial == 0 ? 512 : std::uniform_int_distribution<int>(2, 512)(rng);
    const int na = std::uniform_int_distribution<int>(1, n - 1)(rng);
    const SpectralDensity s(n);
    const auto p = discretize(random_kind(rng, n, trial), s);
    const auto pa = induced_subsystem_distribution(p, s, SystemPartition(n, na));
    double total = 0.0;
    for (double x : pa.table()) total += x;
    worst_norm = std::max(worst_norm, std::abs(total - 1.0));
    for (int k = 0; k <= n; ++k) {
      std::vector<double> terms;
      for (int ka = std::max(0, k - (n - na)); ka <= std::min(na, k); ++ka) {
        terms.push_back(log_binomial(na, ka) + log_binomial(n - na, k - ka));
      }
      const double want = log_binomial(n, k);
      worst_vdm = std::max(worst_vdm, std::abs(log_sum_exp(terms) - want) / std::max(1.0, std::abs(want)));
    }
  }
  return {worst_norm <= 1e-12 && worst_vdm <= 1e-12,
          "max normalization error " + fmt(worst_norm) + ", max Vandermonde log error " + fmt(worst_vdm)};
}

Outcome criterion9() {
  std::vector<double> coeff;
  std::string detail;
  for (int n : {64, 128, 256}) {
    const int na = n / 4;
    const SpectralDensity s(n);
    const auto pa = induced_subsystem_distribution(discretize(FlatKind{}, s), s, SystemPartition(n, na));
    const double ds = delta_s_average_exact(pa, SpectralDensity(na));
    coeff.push_back(ds / na);
    detail += "N=" + std::to_string(n) + ": dS/N_A " + fmt(ds / na) + "; ";
  }
  const auto [lo, hi] = std::minmax_element(coeff.begin(), coeff.end());
  const double spread = (*hi - *lo) / std::abs(*hi);
  return {spread <= 0.10,
          detail + "spread " + fmt(100.0 * spread, 3) + "% (claimed coefficient -1/24 = " + fmt(-1.0 / 24.0) +
              ", flagged: measured values differ)"};
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const std::string& name, const Outcome& o, double secs) {
    std::printf("%s criterion %d (%s): %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", id, name.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  };
  auto timed = [](auto&& fn) {
    const auto start = std::chrono::steady_clock::now();
    auto result = fn();
    return std::pair{std::move(result), std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()};
  };

  {
    auto [o, t] = timed(criterion1);
    report(1, "closed-form zero point", o, t);
  }
  {
    auto [o, t] = timed(criterion2);
    report(2, "exact vs closed form", o, t);
  }
  {
    auto [r, t] = timed([] { return run_page(0); });
    report(3, "Page limit", criterion3(r, t), t);
  }
  {
    auto [r, t] = timed([] { return run_micro(0); });
    report(4, "microcanonical fluctuations", criterion4(r), t);
  }
  {
    auto [r, t] = timed([] { return run_wedge(0); });
    report(5, "wedge asymmetry", criterion5(r), t);
  }
  {
    auto [r, t] = timed([] { return run_cat(0); });
    report(6, "cat-product pipeline", criterion6(r), t);
  }
  {
    auto [o, t] = timed(criterion7);
    report(7, "information identity", o, t);
  }
  {
    auto [o, t] = timed(criterion8);
    report(8, "structural identities", o, t);
  }
  {
    auto [o, t] = timed(criterion9);
    report(9, "flat-distribution extensivity", o, t);
  }
  {
    auto [o, t] = timed([] {
      const std::string base = all_rows(0);
      const std::string one = all_rows(1);
      const std::string four = all_rows(4);
      const bool same = base == one && base == four;
      return Outcome{same, std::string(same ? "identical" : "differing") + " rows for 0, 1 and 4 workers (" +
                               std::to_string(base.size()) + " bytes)"};
    });
    report(10, "reproducibility", o, t);
  }
  std::printf("%d of 10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
