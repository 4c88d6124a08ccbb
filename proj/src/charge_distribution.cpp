#include "maxent/charge_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "maxent/text.hpp"

namespace maxent {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double table_mean(std::span<const double> table, int n) {
  double mean = 0.0;
  for (std::size_t k = 0; k < table.size(); ++k) {
    mean += table[k] * (static_cast<double>(k) - 0.5 * n);
  }
  return mean;
}

double table_variance(std::span<const double> table, int n) {
  const double mean = table_mean(table, n);
  double var = 0.0;
  for (std::size_t k = 0; k < table.size(); ++k) {
    const double d = static_cast<double>(k) - 0.5 * n - mean;
    var += table[k] * d * d;
  }
  return var;
}

std::vector<double> normalized(std::vector<double> w) {
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw std::invalid_argument("distribution weights must have a positive finite sum");
  }
  for (double& x : w) {
    x /= total;
  }
  return w;
}

std::vector<double> gaussian_table(const GaussianKind& g, const SpectralDensity& spectral) {
  if (!(g.width > 0.0) || !std::isfinite(g.width)) {
    throw std::invalid_argument("gaussian width must be positive");
  }
  const int n = spectral.n();
  std::vector<double> log_w(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    const double d = spectral.charge(k) - g.center;
    log_w[k] = -d * d / (2.0 * g.width * g.width);
  }
  // Shift by the largest exponent so that far-off centers still normalize.
  const double top = *std::max_element(log_w.begin(), log_w.end());
  std::vector<double> w(log_w.size());
  std::transform(log_w.begin(), log_w.end(), w.begin(),
                 [top](double lw) { return std::exp(lw - top); });
  return normalized(std::move(w));
}

std::vector<double> cat_table(const CatProductKind& c, int n) {
  if (c.blocks < 1 || c.block_size < 1) {
    throw std::invalid_argument("cat product needs M >= 1 blocks of size L >= 1");
  }
  if (static_cast<long long>(c.blocks) * c.block_size != n) {
    throw std::invalid_argument("cat product M*L=" + std::to_string(c.blocks * c.block_size) +
                                " does not match N=" + std::to_string(n));
  }
  // a blocks up out of M gives k = a L, weight binom(M, a) / 2^M.
  std::vector<double> w(static_cast<std::size_t>(n) + 1, 0.0);
  for (int a = 0; a <= c.blocks; ++a) {
    w[static_cast<std::size_t>(a) * c.block_size] =
        std::exp(log_binomial(c.blocks, a) - c.blocks * std::log(2.0));
  }
  return w;
}

}  // namespace

std::string describe(const DistributionKind& kind) {
  return std::visit(
      Overloaded{
          [](const GaussianKind& g) {
            return "gaussian:" + format_number(g.center) + "," + format_number(g.width);
          },
          [](const MicrocanonicalKind& m) { return "micro:" + format_number(m.charge.q()); },
          [](const FlatKind&) { return std::string("flat"); },
          [](const CatProductKind& c) {
            return "cat:" + std::to_string(c.blocks) + "," + std::to_string(c.block_size);
          },
          [](const TabulatedKind&) { return std::string("table"); },
      },
      kind);
}

double ChargeDistribution::mean_charge() const { return table_mean(table_, n()); }
double ChargeDistribution::charge_variance() const { return table_variance(table_, n()); }

double ReducedChargeDistribution::mean_charge() const {
  return table_mean(table_, partition_.n_a());
}
double ReducedChargeDistribution::charge_variance() const {
  return table_variance(table_, partition_.n_a());
}

ChargeDistribution discretize(const DistributionKind& kind, const SpectralDensity& spectral) {
  const int n = spectral.n();
  const auto sectors = static_cast<std::size_t>(n) + 1;
  std::vector<double> table = std::visit(
      Overloaded{
          [&](const GaussianKind& g) { return gaussian_table(g, spectral); },
          [&](const MicrocanonicalKind& m) {
            if (m.charge.n != n || m.charge.k < 0 || m.charge.k > n) {
              throw std::invalid_argument("microcanonical charge is not a sector of N=" +
                                          std::to_string(n));
            }
            std::vector<double> w(sectors, 0.0);
            w[m.charge.k] = 1.0;
            return w;
          },
          [&](const FlatKind&) {
            return std::vector<double>(sectors, 1.0 / static_cast<double>(sectors));
          },
          [&](const CatProductKind& c) { return cat_table(c, n); },
          [&](const TabulatedKind& t) {
            if (t.weights.size() != sectors) {
              throw std::invalid_argument("tabulated distribution has " +
                                          std::to_string(t.weights.size()) +
                                          " weights, expected N+1=" + std::to_string(sectors));
            }
            for (double w : t.weights) {
              if (!(w >= 0.0) || !std::isfinite(w)) {
                throw std::invalid_argument("tabulated weights must be finite and >= 0");
              }
            }
            return normalized(t.weights);
          },
      },
      kind);
  return ChargeDistribution(kind, std::move(table));
}

TabulatedKind parse_tabulated_json(std::string_view text, int* n_out) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("tabulated distribution: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("weights") ||
      !doc["n"].is_number_integer() || !doc["weights"].is_array()) {
    throw std::invalid_argument(R"(tabulated distribution must look like {"n": N, "weights": [...]})");
  }
  const int n = doc["n"].get<int>();
  std::vector<double> weights;
  for (const auto& w : doc["weights"]) {
    if (!w.is_number()) {
      throw std::invalid_argument("tabulated weights must be numbers");
    }
    weights.push_back(w.get<double>());
  }
  if (n < 1 || weights.size() != static_cast<std::size_t>(n) + 1) {
    throw std::invalid_argument("tabulated distribution needs exactly n+1 weights");
  }
  if (n_out != nullptr) {
    *n_out = n;
  }
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("tabulated weights must be finite and >= 0");
    }
  }
  return {normalized(std::move(weights))};
}

TabulatedKind load_tabulated(const std::filesystem::path& path, int* n_out) {
  std::ifstream in(path);
  if (!in) {
    throw std::ios_base::failure("cannot open " + path.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_tabulated_json(buffer.str(), n_out);
}

ReducedChargeDistribution induced_subsystem_distribution(const ChargeDistribution& p,
                                                         const SpectralDensity& spectral,
                                                         const SystemPartition& partition) {
  const int n = spectral.n();
  if (p.n() != n || partition.n_total() != n) {
    throw std::invalid_argument("distribution, spectrum and partition disagree on N");
  }
  const int na = partition.n_a();
  const int nb = partition.n_b();
  // Omega_A Omega_B / Omega reduces to the hypergeometric weight
  // binom(N_A,k_A) binom(N_B,k_B) / binom(N,k), which never exceeds 1.
  std::vector<double> lb_a(static_cast<std::size_t>(na) + 1);
  std::vector<double> lb_b(static_cast<std::size_t>(nb) + 1);
  for (int k = 0; k <= na; ++k) lb_a[k] = log_binomial(na, k);
  for (int k = 0; k <= nb; ++k) lb_b[k] = log_binomial(nb, k);

  std::vector<double> table(static_cast<std::size_t>(na) + 1, 0.0);
  const auto weights = p.table();
  for (int k_a = 0; k_a <= na; ++k_a) {
    double acc = 0.0;
    for (int k_b = 0; k_b <= nb; ++k_b) {
      const int k = k_a + k_b;
      if (weights[k] == 0.0) continue;
      const double log_h =
          static_cast<double>(static_cast<long double>(lb_a[k_a]) + lb_b[k_b] -
                              spectral.log_multiplicity(k));
      acc += weights[k] * std::exp(log_h);
    }
    table[k_a] = acc;
  }
  const double total = std::accumulate(table.begin(), table.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-10) {
    throw std::logic_error("induced distribution lost normalization: sum=" +
                           format_number(total));
  }
  return {partition, std::move(table)};
}

InducedGaussian induced_gaussian_params(const ChargeDistribution& p,
                                        const SystemPartition& partition,
                                        const SpectralDensity& spectral) {
  const auto* g = std::get_if<GaussianKind>(&p.kind());
  if (g == nullptr) {
    throw std::invalid_argument("induced_gaussian_params requires a gaussian distribution");
  }
  if (partition.n_total() != spectral.n()) {
    throw std::invalid_argument("partition and spectrum disagree on N");
  }
  const double n = partition.n_total();
  const double na = partition.n_a();
  const double nb = partition.n_b();
  const double gamma2 = spectral.big_gamma() * spectral.big_gamma();
  InducedGaussian out;
  out.center = g->center;
  out.lambda = std::sqrt(gamma2 * nb / na + g->width * g->width);
  out.subsystem_mean = g->center * na / n;
  out.subsystem_sigma = out.lambda * na / n;
  return out;
}

double input_information(const ChargeDistribution& p, const SpectralDensity& spectral) {
  if (p.n() != spectral.n()) {
    throw std::invalid_argument("distribution and spectrum disagree on N");
  }
  double info = 0.0;
  for (int k = 0; k <= p.n(); ++k) {
    const double w = p[k];
    if (w > 0.0) {
      info += w * (std::log(w) - spectral.log_omega(k));
    }
  }
  return info;
}

}  // namespace maxent
