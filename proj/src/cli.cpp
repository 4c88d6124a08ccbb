#include "maxent/cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ios>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <variant>

#include "CLI11.hpp"
#include "json.hpp"
#include "maxent/charge_distribution.hpp"
#include "maxent/ensemble.hpp"
#include "maxent/entropy_analytics.hpp"
#include "maxent/fock_space.hpp"
#include "maxent/parallel.hpp"
#include "maxent/sampler.hpp"
#include "maxent/scramble.hpp"
#include "maxent/text.hpp"

namespace maxent::cli {

namespace {

using Json = nlohmann::ordered_json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ResourceRefusal : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Row seeds are derived per subsystem size so rows are independent draws.
constexpr std::uint64_t kRowStream = 0xc11;

constexpr int kMaxInducedQubits = 100000;

using Cell = std::variant<long long, std::uint64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> notes;
};

// ---- small parsers --------------------------------------------------------

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_double(std::string_view s, std::string_view what) {
  s = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ConfigError(std::string(what) + ": '" + std::string(s) + "' is not a number");
  }
  return v;
}

int parse_int(std::string_view s, std::string_view what) {
  s = trim(s);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError(std::string(what) + ": '" + std::string(s) + "' is not an integer");
  }
  return v;
}

std::vector<int> parse_na(const std::string& spec, int n) {
  std::vector<int> out;
  if (spec == "all") {
    for (int a = 1; a < n; ++a) out.push_back(a);
  } else if (const auto dots = spec.find(".."); dots != std::string::npos) {
    const int lo = parse_int(std::string_view(spec).substr(0, dots), "--na");
    const int hi = parse_int(std::string_view(spec).substr(dots + 2), "--na");
    if (hi < lo) throw ConfigError("--na range " + spec + " is empty");
    for (int a = lo; a <= hi; ++a) out.push_back(a);
  } else {
    for (auto part : split(spec, ',')) out.push_back(parse_int(part, "--na"));
  }
  for (int a : out) {
    if (a < 1 || a >= n) {
      throw ConfigError("--na " + std::to_string(a) + " is outside 1..N-1 for N=" +
                        std::to_string(n));
    }
  }
  return out;
}

// "lo:hi:count" or a comma list.
std::vector<double> parse_grid(const std::string& spec, std::string_view what) {
  if (spec.find(':') != std::string::npos) {
    const auto parts = split(spec, ':');
    if (parts.size() != 3) throw ConfigError(std::string(what) + " grid must be lo:hi:count");
    const int count = parse_int(parts[2], what);
    try {
      return linear_grid(parse_double(parts[0], what), parse_double(parts[1], what), count);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string(what) + ": " + e.what());
    }
  }
  std::vector<double> out;
  for (auto part : split(spec, ',')) out.push_back(parse_double(part, what));
  return out;
}

std::vector<double> omega_weights(int n) {
  const SpectralDensity spectral(n);
  std::vector<double> w(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) w[k] = spectral.omega(k);
  return w;
}

struct ParsedDist {
  DistributionKind kind;
  // N implied by the distribution itself (cat blocks, table length).
  std::optional<int> implied_n;
};

ParsedDist parse_dist(const std::string& spec, std::optional<int> n) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string body = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto need_n = [&]() {
    if (!n) throw ConfigError("--dist " + spec + " needs --n");
    return *n;
  };
  if (head == "gaussian") {
    const auto parts = split(body, ',');
    if (parts.size() != 2) throw ConfigError("expected gaussian:qbar,dq");
    return {GaussianKind{parse_double(parts[0], "gaussian center"),
                         parse_double(parts[1], "gaussian width")},
            std::nullopt};
  }
  if (head == "micro") {
    const double q0 = parse_double(body, "micro charge");
    try {
      return {MicrocanonicalKind{ChargeValue::from_q(q0, need_n())}, std::nullopt};
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (head == "flat" && body.empty()) return {FlatKind{}, std::nullopt};
  if (head == "omega" && body.empty()) return {TabulatedKind{omega_weights(need_n())}, std::nullopt};
  if (head == "cat") {
    const auto parts = split(body, ',');
    if (parts.size() != 2) throw ConfigError("expected cat:M,L");
    const CatProductKind cat{parse_int(parts[0], "cat blocks"), parse_int(parts[1], "cat block size")};
    if (cat.blocks < 1 || cat.block_size < 1) throw ConfigError("cat needs M >= 1 and L >= 1");
    return {cat, cat.blocks * cat.block_size};
  }
  if (head == "table" && !body.empty()) {
    int file_n = 0;
    try {
      auto table = load_tabulated(body, &file_n);
      return {std::move(table), file_n};
    } catch (const std::ios_base::failure& e) {
      throw IoError(e.what());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  throw ConfigError("unknown distribution '" + spec +
                    "' (gaussian:qbar,dq | micro:q0 | flat | omega | cat:M,L | table:path)");
}

// Resolves N from --n and the distribution; they must agree when both given.
int resolve_n(RunConfig& cfg, const ParsedDist& dist) {
  if (dist.implied_n) {
    if (cfg.n && *cfg.n != *dist.implied_n) {
      throw ConfigError("--n " + std::to_string(*cfg.n) + " disagrees with --dist " + cfg.dist +
                        " (N=" + std::to_string(*dist.implied_n) + ")");
    }
    cfg.n = dist.implied_n;
  }
  if (!cfg.n) throw ConfigError("--n is required");
  if (*cfg.n < 2) throw ConfigError("--n must be at least 2");
  return *cfg.n;
}

ScrambleSpec parse_mode(const std::string& spec) {
  ScrambleSpec mode;
  if (spec == "haar") return mode;
  if (spec == "haar-full") {
    mode.materialize_unitaries = true;
    return mode;
  }
  if (spec.rfind("brickwork:", 0) == 0) {
    mode.mode = ScrambleMode::kBrickwork;
    mode.steps = parse_int(std::string_view(spec).substr(10), "brickwork steps");
    if (mode.steps < 0) throw ConfigError("brickwork steps must be >= 0");
    return mode;
  }
  throw ConfigError("unknown mode '" + spec + "' (haar | haar-full | brickwork:steps)");
}

// ---- config <-> json --------------------------------------------------------

Json config_to_json(const RunConfig& cfg) {
  Json j;
  j["command"] = cfg.command;
  auto put_str = [&](const char* key, const std::string& v) {
    if (!v.empty()) j[key] = v;
  };
  if (cfg.n) j["n"] = *cfg.n;
  put_str("na", cfg.na);
  put_str("dist", cfg.dist);
  if (cfg.samples) j["samples"] = *cfg.samples;
  if (cfg.seed) j["seed"] = *cfg.seed;
  put_str("mode", cfg.mode);
  put_str("fractions", cfg.fractions);
  put_str("delta", cfg.delta);
  put_str("kappa", cfg.kappa);
  if (cfg.r) j["r"] = *cfg.r;
  put_str("format", cfg.format);
  return j;
}

RunConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig cfg;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "command") cfg.command = value.get<std::string>();
      else if (key == "n") cfg.n = value.get<int>();
      else if (key == "na") cfg.na = value.is_string() ? value.get<std::string>() : value.dump();
      else if (key == "dist") cfg.dist = value.get<std::string>();
      else if (key == "samples") cfg.samples = value.get<long long>();
      else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
      else if (key == "mode") cfg.mode = value.get<std::string>();
      else if (key == "fractions") cfg.fractions = value.get<std::string>();
      else if (key == "delta") cfg.delta = value.get<std::string>();
      else if (key == "kappa") cfg.kappa = value.get<std::string>();
      else if (key == "r") cfg.r = value.get<int>();
      else if (key == "format") cfg.format = value.get<std::string>();
      else if (key == "threads") cfg.threads = value.get<unsigned>();
      else throw ConfigError("unknown config key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return cfg;
}

// Accepts a bare config object, a JSON output file, or a CSV output file.
RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  const Json doc = Json::parse(text, nullptr, false);
  if (!doc.is_discarded()) {
    if (doc.is_object() && doc.contains("config")) return config_from_json(doc["config"]);
    return config_from_json(doc);
  }
  std::istringstream lines(text);
  std::string line;
  constexpr std::string_view kPrefix = "# config: ";
  while (std::getline(lines, line)) {
    if (line.rfind(kPrefix, 0) == 0) {
      const Json embedded = Json::parse(line.substr(kPrefix.size()), nullptr, false);
      if (embedded.is_discarded()) throw ConfigError("malformed config line in " + path);
      return config_from_json(embedded);
    }
  }
  throw ConfigError(path + " is neither JSON nor a file with a '# config:' line");
}

// ---- output --------------------------------------------------------------

std::string cell_text(const Cell& c) {
  if (const auto* v = std::get_if<long long>(&c)) return std::to_string(*v);
  if (const auto* v = std::get_if<std::uint64_t>(&c)) return std::to_string(*v);
  if (const auto* v = std::get_if<double>(&c)) return format_number(*v);
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

Json cell_json(const Cell& c) {
  return std::visit([](const auto& v) { return Json(v); }, c);
}

void write_table(std::ostream& os, const Table& table, const RunConfig& cfg) {
  const Json config = config_to_json(cfg);
  if (cfg.format == "json") {
    Json doc;
    doc["tool"] = kToolName;
    doc["version"] = kToolVersion;
    doc["config"] = config;
    doc["columns"] = table.columns;
    Json records = Json::array();
    for (const auto& row : table.rows) {
      Json rec;
      for (std::size_t i = 0; i < row.size(); ++i) rec[table.columns[i]] = cell_json(row[i]);
      records.push_back(std::move(rec));
    }
    doc["records"] = std::move(records);
    doc["notes"] = table.notes;
    os << doc.dump(2) << '\n';
    return;
  }
  os << "# tool: " << kToolName << ' ' << kToolVersion << '\n';
  os << "# config: " << config.dump() << '\n';
  for (const auto& note : table.notes) os << "# note: " << note << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    os << (i ? "," : "") << table.columns[i];
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
    os << '\n';
  }
}

void emit(const Table& table, const RunConfig& cfg, std::ostream& out) {
  if (cfg.out.empty()) {
    write_table(out, table, cfg);
    if (!out) throw IoError("failed writing to standard output");
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open " + cfg.out + " for writing");
  write_table(file, table, cfg);
  file.flush();
  if (!file) throw IoError("failed writing " + cfg.out);
}

// ---- commands -------------------------------------------------------------

Table cmd_curves(RunConfig& cfg) {
  if (cfg.fractions.empty()) cfg.fractions = "default";
  if (cfg.delta.empty()) cfg.delta = "0.05:4:200";
  if (cfg.kappa.empty()) cfg.kappa = "0";

  std::vector<double> fractions;
  if (cfg.fractions == "default") {
    fractions = default_fractions();
  } else {
    for (auto part : split(cfg.fractions, ',')) fractions.push_back(parse_double(part, "--fractions"));
  }
  const auto deltas = parse_grid(cfg.delta, "--delta");
  const auto kappas = parse_grid(cfg.kappa, "--kappa");

  CurveTable curves;
  try {
    curves = figure1_sweep(fractions, deltas, kappas);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  } catch (const std::domain_error& e) {
    throw ConfigError(e.what());
  }
  Table t;
  t.columns = {"n_a", "delta", "kappa", "delta_s_average"};
  for (const auto& row : curves.rows) t.rows.push_back({row.n_a, row.delta, row.kappa, row.delta_s});
  for (const auto& c : curves.crossovers) {
    t.notes.push_back("crossover n_a=" + format_number(c.n_a) + " delta=" + format_number(c.delta));
  }
  return t;
}

Table cmd_sample(RunConfig& cfg) {
  if (cfg.dist.empty()) cfg.dist = "omega";
  if (cfg.na.empty()) cfg.na = "all";
  if (!cfg.samples) cfg.samples = 1000;
  if (!cfg.seed) cfg.seed = 1;
  if (cfg.n && *cfg.n > kMaxSampleQubits) {
    throw ResourceRefusal("sample refuses N=" + std::to_string(*cfg.n) + ": dense sampling is limited to N <= " +
                          std::to_string(kMaxSampleQubits));
  }
  const auto dist = parse_dist(cfg.dist, cfg.n);
  const int n = resolve_n(cfg, dist);
  if (n > kMaxSampleQubits) {
    throw ResourceRefusal("sample refuses N=" + std::to_string(n) + ": dense sampling is limited to N <= " +
                          std::to_string(kMaxSampleQubits));
  }
  if (*cfg.samples < 2) throw ConfigError("--samples must be at least 2");
  const auto nas = parse_na(cfg.na, n);

  const SpectralDensity spectral(n);
  const auto p = discretize(dist.kind, spectral);
  const auto ensemble = build_ensemble(p, spectral);
  const auto* micro = std::get_if<MicrocanonicalKind>(&dist.kind);

  Table t;
  t.columns = {"n",    "n_a",    "distribution", "samples",           "seed",
               "mean", "stderr", "prediction",   "prediction_method", "page_value"};
  for (int na : nas) {
    const SystemPartition cut(n, na);
    const std::uint64_t seed = derive_seed(*cfg.seed, kRowStream, static_cast<std::uint64_t>(na));
    const auto est = monte_carlo_entropy(ensemble, cut, static_cast<std::size_t>(*cfg.samples), seed,
                                         cfg.threads);
    double prediction = 0.0;
    std::string method;
    if (micro) {
      prediction = microcanonical_entropy_with_fluctuations(micro->charge, cut, spectral).total();
      method = "two_branch_sum";
    } else {
      prediction = average_entropy_report(p, spectral, cut, true).total();
      method = "average_state_plus_page";
    }
    t.rows.push_back({static_cast<long long>(n), static_cast<long long>(na), cfg.dist,
                      static_cast<long long>(*cfg.samples), seed, est.mean, est.standard_error,
                      prediction, method, page_value(cut)});
  }
  return t;
}

Table cmd_scramble(RunConfig& cfg) {
  if (cfg.dist.empty()) cfg.dist = "cat:3,4";
  if (cfg.mode.empty()) cfg.mode = "haar";
  if (!cfg.samples) cfg.samples = 200;
  if (!cfg.seed) cfg.seed = 1;
  const auto dist = parse_dist(cfg.dist, cfg.n);
  const auto* cat = std::get_if<CatProductKind>(&dist.kind);
  if (cat == nullptr) throw ConfigError("scramble needs --dist cat:M,L");
  const int n = resolve_n(cfg, dist);
  if (n > kMaxSampleQubits) {
    throw ResourceRefusal("scramble refuses N=" + std::to_string(n) + ": dense states are limited to N <= " +
                          std::to_string(kMaxSampleQubits));
  }
  if (cfg.na.empty()) cfg.na = std::to_string(n / 2);
  if (*cfg.samples < 2) throw ConfigError("--samples (trials) must be at least 2");
  const auto nas = parse_na(cfg.na, n);
  const ScrambleSpec mode = parse_mode(cfg.mode);
  const CatProductSpec spec{cat->blocks, cat->block_size};

  Table t;
  t.columns = {"n",    "n_a",   "blocks",     "block_size", "mode",         "trials",      "seed",
               "initial_entropy", "mean", "stderr", "prediction", "page_value", "charge_width",
               "max_residual"};
  for (int na : nas) {
    const SystemPartition cut(n, na);
    const std::uint64_t seed = derive_seed(*cfg.seed, kRowStream, static_cast<std::uint64_t>(na));
    const auto r = eth_deviation_experiment(spec, cut, static_cast<std::size_t>(*cfg.samples), seed,
                                            mode, cfg.threads);
    t.rows.push_back({static_cast<long long>(n), static_cast<long long>(na),
                      static_cast<long long>(spec.blocks), static_cast<long long>(spec.block_size),
                      describe(mode), static_cast<long long>(*cfg.samples), seed, r.initial_entropy,
                      r.measured.mean, r.measured.standard_error, r.prediction.average_state(),
                      r.page_value, r.charge_width, r.max_conservation_residual});
  }
  return t;
}

Table cmd_induced(RunConfig& cfg) {
  if (cfg.dist.empty()) cfg.dist = "omega";
  if (cfg.na.empty()) cfg.na = "all";
  const auto dist = parse_dist(cfg.dist, cfg.n);
  const int n = resolve_n(cfg, dist);
  if (n > kMaxInducedQubits) {
    throw ResourceRefusal("induced is limited to N <= " + std::to_string(kMaxInducedQubits));
  }
  const auto nas = parse_na(cfg.na, n);
  const SpectralDensity spectral(n);
  const auto p = discretize(dist.kind, spectral);

  Table t;
  t.columns = {"n", "n_a", "k_a", "q_a", "p_a", "omega_a"};
  for (int na : nas) {
    const SystemPartition cut(n, na);
    const SpectralDensity spectral_a(na);
    const auto p_a = induced_subsystem_distribution(p, spectral, cut);
    for (int k = 0; k <= na; ++k) {
      t.rows.push_back({static_cast<long long>(n), static_cast<long long>(na),
                        static_cast<long long>(k), k - 0.5 * na, p_a[k], spectral_a.omega(k)});
    }
    t.notes.push_back("delta_s_average n_a=" + std::to_string(na) + " " +
                      format_number(delta_s_average_exact(p_a, spectral_a)));
  }
  return t;
}

Table cmd_narayana(RunConfig& cfg) {
  if (!cfg.r) cfg.r = 8;
  const int r = *cfg.r;
  if (r < 1) throw ConfigError("--r must be at least 1");
  Table t;
  t.columns = {"r", "k", "value"};
  unsigned __int128 catalan = 0;
  try {
    for (int k = 1; k <= r; ++k) {
      const auto v = narayana(r, k);
      catalan += v;
      t.rows.push_back({static_cast<long long>(r), static_cast<long long>(k), v});
    }
  } catch (const std::overflow_error& e) {
    throw ConfigError(e.what());
  }
  if (catalan <= UINT64_MAX) {
    t.notes.push_back("catalan " + std::to_string(static_cast<std::uint64_t>(catalan)));
  }
  return t;
}

Table dispatch(RunConfig& cfg) {
  if (cfg.command == "curves") return cmd_curves(cfg);
  if (cfg.command == "sample") return cmd_sample(cfg);
  if (cfg.command == "scramble") return cmd_scramble(cfg);
  if (cfg.command == "induced") return cmd_induced(cfg);
  if (cfg.command == "narayana") return cmd_narayana(cfg);
  throw ConfigError("unknown command '" + cfg.command + "'");
}

// ---- argument parsing ----------------------------------------------------

struct Flags {
  int n = 0;
  std::string na, dist, mode, fractions, delta, kappa, format, out, config;
  long long samples = 0;
  std::uint64_t seed = 0;
  int r = 0;
  unsigned threads = 0;
};

struct Registered {
  CLI::App* app = nullptr;
  std::vector<std::pair<std::string, CLI::Option*>> options;
};

Registered add_command(CLI::App& app, const std::string& name, const std::string& help,
                       Flags& f, const std::vector<std::string>& keys) {
  Registered reg{app.add_subcommand(name, help), {}};
  auto* sub = reg.app;
  auto has = [&](const char* k) { return std::find(keys.begin(), keys.end(), k) != keys.end(); };
  auto keep = [&](const char* k, CLI::Option* o) { reg.options.emplace_back(k, o); };
  if (has("n")) keep("n", sub->add_option("--n", f.n, "number of qubits N"));
  if (has("na")) keep("na", sub->add_option("--na", f.na, "N_A: value, a..b, comma list or all"));
  if (has("dist")) {
    keep("dist", sub->add_option("--dist", f.dist,
                                 "gaussian:qbar,dq | micro:q0 | flat | omega | cat:M,L | table:path"));
  }
  if (has("samples")) keep("samples", sub->add_option("--samples", f.samples, "draws or trials per row"));
  if (has("seed")) keep("seed", sub->add_option("--seed", f.seed, "campaign seed"));
  if (has("mode")) keep("mode", sub->add_option("--mode", f.mode, "haar | haar-full | brickwork:steps"));
  if (has("fractions")) {
    keep("fractions", sub->add_option("--fractions", f.fractions, "n_A list or default"));
  }
  if (has("delta")) keep("delta", sub->add_option("--delta", f.delta, "lo:hi:count or list"));
  if (has("kappa")) keep("kappa", sub->add_option("--kappa", f.kappa, "lo:hi:count or list"));
  if (has("r")) keep("r", sub->add_option("--r", f.r, "Narayana row"));
  if (has("threads")) keep("threads", sub->add_option("--threads", f.threads, "workers (0 = all cores)"));
  keep("format", sub->add_option("--format", f.format, "csv | json"));
  keep("out", sub->add_option("--out", f.out, "output path (default stdout)"));
  keep("config", sub->add_option("--config", f.config, "JSON config or a previous output file"));
  return reg;
}

void apply_flags(RunConfig& cfg, const Flags& f, const Registered& reg) {
  for (const auto& [key, opt] : reg.options) {
    if (opt->count() == 0) continue;
    if (key == "n") cfg.n = f.n;
    else if (key == "na") cfg.na = f.na;
    else if (key == "dist") cfg.dist = f.dist;
    else if (key == "samples") cfg.samples = f.samples;
    else if (key == "seed") cfg.seed = f.seed;
    else if (key == "mode") cfg.mode = f.mode;
    else if (key == "fractions") cfg.fractions = f.fractions;
    else if (key == "delta") cfg.delta = f.delta;
    else if (key == "kappa") cfg.kappa = f.kappa;
    else if (key == "r") cfg.r = f.r;
    else if (key == "threads") cfg.threads = f.threads;
    else if (key == "format") cfg.format = f.format;
    else if (key == "out") cfg.out = f.out;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Maximum-entropy pure-state ensemble lab", kToolName};
  app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
  app.require_subcommand(1);
  Flags flags;
  std::vector<Registered> commands;
  commands.push_back(add_command(app, "curves", "average-state entropy deviation over (n_A, delta, kappa)",
                                 flags, {"fractions", "delta", "kappa"}));
  commands.push_back(add_command(app, "sample", "Monte Carlo entanglement entropy of ensemble draws",
                                 flags, {"n", "na", "dist", "samples", "seed", "threads"}));
  commands.push_back(add_command(app, "scramble", "scrambled cat-product states vs prediction", flags,
                                 {"n", "na", "dist", "samples", "seed", "mode", "threads"}));
  commands.push_back(add_command(app, "induced", "induced subsystem charge distributions", flags,
                                 {"n", "na", "dist"}));
  commands.push_back(add_command(app, "narayana", "Narayana numbers N(r, k)", flags, {"r"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInvalidConfig;
  }

  const Registered* chosen = nullptr;
  for (const auto& c : commands) {
    if (c.app->parsed()) chosen = &c;
  }

  try {
    RunConfig cfg;
    if (!flags.config.empty()) {
      cfg = load_config(flags.config);
      if (!cfg.command.empty() && cfg.command != chosen->app->get_name()) {
        throw ConfigError("config is for '" + cfg.command + "', not '" + chosen->app->get_name() + "'");
      }
    }
    cfg.command = chosen->app->get_name();
    apply_flags(cfg, flags, *chosen);
    if (cfg.format.empty()) cfg.format = "csv";
    if (cfg.format != "csv" && cfg.format != "json") {
      throw ConfigError("--format must be csv or json");
    }
    const Table table = dispatch(cfg);
    emit(table, cfg, out);
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "invalid config: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const ResourceRefusal& e) {
    err << "refused: " << e.what() << '\n';
    return kExitResourceRefusal;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitIoError;
  } catch (const std::invalid_argument& e) {
    err << "invalid config: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const std::domain_error& e) {
    err << "invalid config: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const std::length_error& e) {
    err << "refused: " << e.what() << '\n';
    return kExitResourceRefusal;
  }
}

}  // namespace maxent::cli
