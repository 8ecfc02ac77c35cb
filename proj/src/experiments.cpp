#include "improprietest/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "improprietest/augmented.hpp"
#include "improprietest/bulk_law.hpp"
#include "improprietest/models.hpp"
#include "improprietest/roy.hpp"
#include "improprietest/spike.hpp"
#include "improprietest/version.hpp"
#include "improprietest/wilks.hpp"

namespace improp {

namespace {

const std::vector<std::string> kNames = {
    "null_spectrum_hist", "glrt_pp",     "roy_pp",      "equi_power",
    "spike_hist",         "spike_power", "mixed_power", "cca_mismatch"};

std::vector<double> alpha_grid_default() {
  std::vector<double> g;
  for (int k = 1; k <= 25; ++k) g.push_back(0.002 * k);
  return g;
}

// Replicate-parallel runner; bodies write to disjoint per-index slots, so
// the aggregate is independent of scheduling.
void for_each_replicate(int count, int threads,
                        const std::function<void(int)>& body) {
  int workers = std::max(1, threads);
  if (workers == 1) {
    for (int k = 0; k < count; ++k) body(k);
    return;
  }
  std::vector<std::thread> pool;
  int chunk = (count + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    int lo = w * chunk, hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&body, lo, hi] {
      for (int k = lo; k < hi; ++k) body(k);
    });
  }
  for (auto& t : pool) t.join();
}

ImproprietySpectrum proper_pipeline_draw(int n, int m, RngStream& rng) {
  return sample_spectrum(generate(ModelSpec::proper(n, m), rng));
}

double norm_pdf(double x, double mean, double sd) {
  double z = (x - mean) / sd;
  return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * M_PI));
}

// Fixed-width histogram; counts stay exact in double cells.
struct Hist {
  double lo, hi;
  int bins;
  std::vector<double> counts;
  Hist(double l, double h, int b) : lo(l), hi(h), bins(b), counts(b, 0.0) {}
  void add(double x) {
    if (x < lo || x > hi) return;
    int idx = static_cast<int>((x - lo) / (hi - lo) * bins);
    counts[std::min(bins - 1, std::max(0, idx))] += 1.0;
  }
  double left(int i) const { return lo + (hi - lo) * i / bins; }
  double right(int i) const { return lo + (hi - lo) * (i + 1) / bins; }
  double center(int i) const { return lo + (hi - lo) * (i + 0.5) / bins; }
};

// CDF of the bulk law at every element of an ascending sample, by one
// cumulative Simpson sweep over the arcsine-substituted integrand (smooth
// and bounded, so fixed fine panels are plenty).
std::vector<double> bulk_cdf_sorted(const BulkLaw& law,
                                    const std::vector<double>& sorted) {
  auto g = [&law](double t) {
    double st = std::sin(t);
    double ct = std::cos(t);
    return law.edge_c * law.gamma * ct * ct /
           (M_PI * (1.0 - law.edge_c * st * st));
  };
  std::vector<double> out(sorted.size());
  double t_prev = 0.0, acc = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    double r = sorted[i];
    if (r <= 0.0) { out[i] = 0.0; continue; }
    if (r >= law.edge_c) { out[i] = 1.0; continue; }
    double t = std::asin(std::sqrt(r / law.edge_c));
    int nseg = 1 + static_cast<int>((t - t_prev) / 1e-3);
    double h = (t - t_prev) / nseg;
    for (int s = 0; s < nseg; ++s) {
      double a = t_prev + s * h;
      acc += h / 6.0 * (g(a) + 4.0 * g(a + 0.5 * h) + g(a + h));
    }
    t_prev = t;
    out[i] = std::min(1.0, acc);
  }
  return out;
}

double ks_sup_dev(const std::vector<double>& sorted,
                  const std::vector<double>& cdf_at) {
  const double n = static_cast<double>(sorted.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    double f = cdf_at[i];
    sup = std::max(sup, std::max(f - i / n, (i + 1) / n - f));
  }
  return sup;
}

double exceed_fraction(const std::vector<double>& sorted, double threshold) {
  auto it = std::upper_bound(sorted.begin(), sorted.end(), threshold);
  return static_cast<double>(sorted.end() - it) / sorted.size();
}

// ---- the eight experiments ----

ResultTable run_null_spectrum_hist(const ExperimentConfig& cfg, int threads) {
  ResultTable t;
  t.columns = {"gamma",     "n_dim", "m_obs",           "bin_left",
               "bin_right", "count", "bulk_pdf_center", "ecdf_sup_dev"};
  const int reps = cfg.replicates;
  for (std::size_t ridx = 0; ridx < cfg.regimes.size(); ++ridx) {
    const auto [n, m] = cfg.regimes[ridx];
    RegimeParams regime(n, m);
    BulkLaw law(regime.gamma);
    std::vector<double> pool(static_cast<std::size_t>(reps) * n);
    for_each_replicate(reps, threads, [&, n, m](int k) {
      RngStream rng = RngStream::derived(
          cfg.master_seed, ridx * static_cast<std::uint64_t>(reps) + k);
      auto spec = proper_pipeline_draw(n, m, rng);
      for (int j = 0; j < n; ++j)
        pool[static_cast<std::size_t>(k) * n + j] = spec.squared(j);
    });
    std::sort(pool.begin(), pool.end());
    double sup = ks_sup_dev(pool, bulk_cdf_sorted(law, pool));
    Hist h(0.0, 1.0, cfg.bins);
    for (double r : pool) h.add(r);
    for (int b = 0; b < cfg.bins; ++b)
      t.rows.push_back({regime.gamma, double(n), double(m), h.left(b),
                        h.right(b), h.counts[b], bulk_pdf(law, h.center(b)),
                        sup});
  }
  return t;
}

ResultTable run_glrt_pp(const ExperimentConfig& cfg, int /*threads*/) {
  ResultTable t;
  t.columns = {"gamma", "n_dim",         "m_obs",
               "alpha", "far_lognormal", "far_adjusted_bartlett",
               "far_bartlett"};
  for (std::size_t ridx = 0; ridx < cfg.regimes.size(); ++ridx) {
    const auto [n, m] = cfg.regimes[ridx];
    RegimeParams regime(n, m);
    auto params = glrt_clt_params(regime);
    RngStream rng = RngStream::derived(cfg.master_seed, ridx);
    auto draws = sample_wilks_null(n, m, cfg.replicates, rng);
    std::sort(draws.begin(), draws.end());
    for (double a : cfg.alphas) {
      double fl = exceed_fraction(
          draws, glrt_null_quantile(params, 1 - a, GlrtMethod::lognormal));
      double fa = exceed_fraction(
          draws,
          glrt_null_quantile(params, 1 - a, GlrtMethod::adjusted_bartlett));
      double fb = exceed_fraction(
          draws, glrt_null_quantile(params, 1 - a, GlrtMethod::bartlett));
      t.rows.push_back(
          {regime.gamma, double(n), double(m), a, fl, fa, fb});
    }
  }
  return t;
}

ResultTable run_roy_pp(const ExperimentConfig& cfg, int threads) {
  ResultTable t;
  t.columns = {"gamma", "n_dim", "m_obs", "alpha", "far_tracy_widom"};
  const int reps = cfg.replicates;
  for (std::size_t ridx = 0; ridx < cfg.regimes.size(); ++ridx) {
    const auto [n, m] = cfg.regimes[ridx];
    RegimeParams regime(n, m);
    auto rp = roy_params(n, m);
    std::vector<double> draws(reps);
    for_each_replicate(reps, threads, [&, n, m](int k) {
      RngStream rng = RngStream::derived(
          cfg.master_seed, ridx * static_cast<std::uint64_t>(reps) + k);
      draws[k] = roy_statistic(proper_pipeline_draw(n, m, rng)).W;
    });
    std::sort(draws.begin(), draws.end());
    for (double a : cfg.alphas)
      t.rows.push_back({regime.gamma, double(n), double(m), a,
                        exceed_fraction(draws, roy_null_quantile(rp, 1 - a))});
  }
  return t;
}

ModelSpec model_for_point(const ExperimentConfig& cfg, ModelVariant variant,
                          int n, int m, double lambda_sq) {
  switch (variant) {
    case ModelVariant::equi_correlated:
      return ModelSpec::equi(
          n, m, theta_for_lambda(lambda_sq, ModelVariant::equi_correlated));
    case ModelVariant::spiked:
      return ModelSpec::spiked(
          n, m, theta_for_lambda(lambda_sq, ModelVariant::spiked));
    case ModelVariant::mixed_pca:
      return ModelSpec::mixed(
          n, m,
          theta_for_lambda(lambda_sq, ModelVariant::mixed_pca,
                           cfg.p_fractions.at(0)),
          cfg.p_fractions);
    default:
      throw std::logic_error("model_for_point: not an alternative model");
  }
}

ResultTable run_power_curve(const ExperimentConfig& cfg, ModelVariant variant,
                            int threads) {
  const bool spiked_family = variant != ModelVariant::equi_correlated;
  ResultTable t;
  t.columns = {"gamma",      "n_dim",   "m_obs",     "lambda_sq", "theta",
               "power_glrt", "ci_glrt", "power_roy", "ci_roy"};
  if (spiked_family) t.columns.push_back("rho_c");

  const int reps = cfg.replicates;
  const double alpha = cfg.alphas.front();
  std::size_t point = 0;
  for (const auto& [n, m] : cfg.regimes) {
    RegimeParams regime(n, m);
    const double thr_glrt = glrt_null_quantile(
        glrt_clt_params(regime), 1 - alpha, GlrtMethod::adjusted_bartlett);
    const double thr_roy = roy_null_quantile(roy_params(n, m), 1 - alpha);
    for (double lsq : cfg.lambda_grid) {
      ModelSpec model = model_for_point(cfg, variant, n, m, lsq);
      std::vector<unsigned char> hit_glrt(reps, 0), hit_roy(reps, 0);
      // both statistics read the same replicate: a paired comparison
      for_each_replicate(reps, threads, [&](int k) {
        RngStream rng = RngStream::derived(
            cfg.master_seed, point * static_cast<std::uint64_t>(reps) + k);
        auto spec = sample_spectrum(generate(model, rng));
        hit_glrt[k] = glrt_statistic(spec).T_prime >= thr_glrt ? 1 : 0;
        hit_roy[k] = roy_statistic(spec).W >= thr_roy ? 1 : 0;
      });
      long cg = 0, cr = 0;
      for (int k = 0; k < reps; ++k) {
        cg += hit_glrt[k];
        cr += hit_roy[k];
      }
      double pg = double(cg) / reps, pr = double(cr) / reps;
      std::vector<double> row = {
          regime.gamma,
          double(n),
          double(m),
          lsq,
          model.theta,
          pg,
          1.96 * std::sqrt(pg * (1 - pg) / reps),
          pr,
          1.96 * std::sqrt(pr * (1 - pr) / reps)};
      if (spiked_family) row.push_back(SpikeMap(regime.gamma).rho_c);
      t.rows.push_back(std::move(row));
      ++point;
    }
  }
  return t;
}

ResultTable run_spike_hist(const ExperimentConfig& cfg, int threads) {
  ResultTable t;
  t.columns = {"lambda_sq", "bin_left", "bin_right", "count",
               "above_edge_count", "mean_r1", "rho_bar", "rho_c", "edge_c"};
  const auto [n, m] = cfg.regimes.at(0);
  RegimeParams regime(n, m);
  SpikeMap map(regime.gamma);
  const int reps = cfg.replicates;
  std::size_t point = 0;
  for (double lsq : cfg.lambda_grid) {
    ModelSpec model =
        ModelSpec::spiked(n, m, theta_for_lambda(lsq, ModelVariant::spiked));
    std::vector<double> pool(static_cast<std::size_t>(reps) * n);
    std::vector<double> top(reps);
    for_each_replicate(reps, threads, [&, n](int k) {
      RngStream rng = RngStream::derived(
          cfg.master_seed, point * static_cast<std::uint64_t>(reps) + k);
      auto spec = sample_spectrum(generate(model, rng));
      for (int j = 0; j < n; ++j)
        pool[static_cast<std::size_t>(k) * n + j] = spec.squared(j);
      top[k] = spec.squared(0);
    });
    Hist h(0.0, 1.0, cfg.bins);
    for (double r : pool) h.add(r);
    double above = 0.0, mean_r1 = 0.0;
    for (double r1 : top) {
      above += (r1 > map.edge_c + 0.05) ? 1.0 : 0.0;
      mean_r1 += r1;
    }
    mean_r1 /= reps;
    const double rho_bar = spike_map(map, lsq).limit;
    for (int b = 0; b < cfg.bins; ++b)
      t.rows.push_back({lsq, h.left(b), h.right(b), h.counts[b], above,
                        mean_r1, rho_bar, map.rho_c, map.edge_c});
    ++point;
  }
  return t;
}

ResultTable run_cca_mismatch(const ExperimentConfig& cfg, int threads) {
  ResultTable t;
  t.columns = {"bin_left",
               "bin_right",
               "count_cca",
               "count_improp_beta",
               "count_improp_pipeline",
               "limit_pdf_improp",
               "limit_pdf_cca",
               "mean_cca",
               "mean_improp_beta",
               "mean_improp_pipeline",
               "mean_gap",
               "expected_gap"};
  const auto [n, m] = cfg.regimes.at(0);
  RegimeParams regime(n, m);
  auto params = glrt_clt_params(regime);
  const double m_cca = cca_offset_mean(params);
  const int reps = cfg.replicates;

  RngStream rng_cca = RngStream::derived(cfg.master_seed, 0);
  auto cca = sample_wilks_null_cca(n, m, reps, rng_cca);
  RngStream rng_beta = RngStream::derived(cfg.master_seed, 1);
  auto beta = sample_wilks_null(n, m, reps, rng_beta);
  std::vector<double> pipe(reps);
  for_each_replicate(reps, threads, [&, n, m](int k) {
    RngStream rng = RngStream::derived(cfg.master_seed, 2 + k);
    pipe[k] = glrt_statistic(proper_pipeline_draw(n, m, rng)).T_prime;
  });

  auto mean_of = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / v.size();
  };
  const double mu_cca = mean_of(cca);
  const double mu_beta = mean_of(beta);
  const double mu_pipe = mean_of(pipe);
  const double gap = mu_cca - mu_beta;
  const double expected = m_cca - params.m;  // ln((gamma-1)/gamma)

  Hist hc(m_cca - 5 * params.s, params.m + 5 * params.s, cfg.bins);
  Hist hb = hc, hp = hc;
  for (double x : cca) hc.add(x);
  for (double x : beta) hb.add(x);
  for (double x : pipe) hp.add(x);
  for (int b = 0; b < cfg.bins; ++b) {
    double c = hc.center(b);
    t.rows.push_back({hc.left(b), hc.right(b), hc.counts[b], hb.counts[b],
                      hp.counts[b], norm_pdf(c, params.m, params.s),
                      norm_pdf(c, m_cca, params.s), mu_cca, mu_beta, mu_pipe,
                      gap, expected});
  }
  return t;
}

}  // namespace

const std::vector<std::string>& ExperimentConfig::names() { return kNames; }

void ExperimentConfig::validate() const {
  if (std::find(kNames.begin(), kNames.end(), experiment) == kNames.end())
    throw std::invalid_argument("unknown experiment: " + experiment);
  if (regimes.empty())
    throw std::invalid_argument("experiment config: no regimes");
  for (const auto& [n, m] : regimes) {
    if (n < 1 || m < 2 * n)
      throw std::invalid_argument(
          "experiment config: every regime needs M >= 2N >= 2");
    if ((experiment == "glrt_pp" || experiment == "cca_mismatch") &&
        m <= 2 * n)
      throw std::invalid_argument(
          "experiment config: " + experiment + " needs gamma > 2");
  }
  if (replicates < 1)
    throw std::invalid_argument("experiment config: replicates must be >= 1");
  if (alphas.empty())
    throw std::invalid_argument("experiment config: alpha grid is empty");
  for (double a : alphas)
    if (!(a > 0.0 && a < 1.0))
      throw std::invalid_argument(
          "experiment config: alphas must lie in (0, 1)");
  if (bins < 1)
    throw std::invalid_argument("experiment config: bins must be >= 1");
  const bool needs_lambda = experiment == "equi_power" ||
                            experiment == "spike_power" ||
                            experiment == "mixed_power" ||
                            experiment == "spike_hist";
  if (needs_lambda) {
    if (lambda_grid.empty())
      throw std::invalid_argument("experiment config: lambda grid is empty");
    for (double l : lambda_grid)
      if (!(l > 0.0 && l < 1.0))
        throw std::invalid_argument(
            "experiment config: lambda^2 grid must lie inside (0, 1)");
  }
  if (experiment == "mixed_power" && p_fractions.empty())
    throw std::invalid_argument("experiment config: mixed model needs p");
}

ExperimentConfig ExperimentConfig::defaults_for(const std::string& name) {
  ExperimentConfig c;
  c.experiment = name;
  c.alphas = {0.01};
  c.replicates = 1000;
  if (name == "null_spectrum_hist") {
    c.regimes = {{100, 200}, {100, 250}, {100, 500}, {100, 1000}};
  } else if (name == "glrt_pp") {
    c.regimes = {{4, 10}, {20, 100}, {200, 1000}};
    c.replicates = 100000;
    c.alphas = alpha_grid_default();
  } else if (name == "roy_pp") {
    c.regimes = {{100, 250}, {100, 500}};
    c.replicates = 10000;
    c.alphas = alpha_grid_default();
  } else if (name == "equi_power") {
    c.regimes = {{100, 250}};
    c.replicates = 500;
    c.lambda_grid = {0.01, 0.02, 0.03, 0.04, 0.05};
  } else if (name == "spike_hist") {
    c.regimes = {{100, 500}};
    c.lambda_grid = {0.1, 0.4, 0.95};
  } else if (name == "spike_power") {
    c.regimes = {{100, 500}};
    c.replicates = 500;
    c.lambda_grid = {0.05, 0.10, 0.15, 0.20, 0.25,
                     0.30, 0.35, 0.40, 0.45, 0.50};
  } else if (name == "mixed_power") {
    c.regimes = {{20, 400}};
    c.replicates = 500;
    c.lambda_grid = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    c.p_fractions = {0.5, 0.2, 0.1, 0.1, 0.05, 0.01, 0.01, 0.01, 0.01, 0.01};
  } else if (name == "cca_mismatch") {
    c.regimes = {{50, 500}};
    c.replicates = 10000;
  } else {
    throw std::invalid_argument("unknown experiment: " + name);
  }
  return c;
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.contains("experiment"))
    throw std::invalid_argument("config: missing \"experiment\" key");
  ExperimentConfig c = defaults_for(j["experiment"].get<std::string>());
  if (j.contains("regimes")) {
    c.regimes.clear();
    for (const auto& r : j["regimes"]) {
      RegimePoint p;
      p.n_dim = r.at("n_dim").get<int>();
      if (r.contains("m_obs"))
        p.m_obs = r["m_obs"].get<int>();
      else if (r.contains("gamma"))
        p.m_obs = static_cast<int>(std::lround(r["gamma"].get<double>() *
                                               p.n_dim));
      else
        throw std::invalid_argument("config: regime needs m_obs or gamma");
      c.regimes.push_back(p);
    }
  }
  if (j.contains("replicates")) c.replicates = j["replicates"].get<int>();
  if (j.contains("alphas"))
    c.alphas = j["alphas"].get<std::vector<double>>();
  if (j.contains("lambda_grid"))
    c.lambda_grid = j["lambda_grid"].get<std::vector<double>>();
  if (j.contains("p_fractions"))
    c.p_fractions = j["p_fractions"].get<std::vector<double>>();
  if (j.contains("bins")) c.bins = j["bins"].get<int>();
  if (j.contains("master_seed"))
    c.master_seed = j["master_seed"].get<std::uint64_t>();
  if (j.contains("output_dir"))
    c.output_dir = j["output_dir"].get<std::string>();
  return c;
}

std::string ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["experiment"] = experiment;
  j["regimes"] = nlohmann::json::array();
  for (const auto& [n, m] : regimes)
    j["regimes"].push_back({{"n_dim", n}, {"m_obs", m}});
  j["replicates"] = replicates;
  j["alphas"] = alphas;
  j["lambda_grid"] = lambda_grid;
  j["p_fractions"] = p_fractions;
  j["bins"] = bins;
  j["master_seed"] = master_seed;
  j["output_dir"] = output_dir;
  return j.dump(2);
}

void ResultTable::validate() const {
  if (columns.empty()) throw std::runtime_error("result table: no columns");
  for (const auto& c : columns)
    if (c.empty()) throw std::runtime_error("result table: unnamed column");
  for (const auto& row : rows) {
    if (row.size() != columns.size())
      throw std::runtime_error("result table: ragged row");
    for (double v : row)
      if (!std::isfinite(v))
        throw std::runtime_error("result table: non-finite cell");
  }
}

std::string ResultTable::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += columns[i];
  }
  out += '\n';
  char buf[40];
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      std::snprintf(buf, sizeof buf, "%.17g", row[i]);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

ResultTable ResultTable::parse_csv(const std::string& text) {
  ResultTable t;
  std::stringstream ss(text);
  std::string line;
  if (!std::getline(ss, line))
    throw std::runtime_error("result table: empty CSV");
  std::stringstream hs(line);
  std::string cell;
  while (std::getline(hs, cell, ',')) t.columns.push_back(cell);
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ls(line);
    while (std::getline(ls, cell, ',')) {
      char* end = nullptr;
      double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0')
        throw std::runtime_error("result table: bad cell '" + cell + "'");
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  t.validate();
  return t;
}

ResultTable run_experiment(const ExperimentConfig& config, int threads) {
  config.validate();
  auto t0 = std::chrono::steady_clock::now();

  ResultTable t;
  if (config.experiment == "null_spectrum_hist")
    t = run_null_spectrum_hist(config, threads);
  else if (config.experiment == "glrt_pp")
    t = run_glrt_pp(config, threads);
  else if (config.experiment == "roy_pp")
    t = run_roy_pp(config, threads);
  else if (config.experiment == "equi_power")
    t = run_power_curve(config, ModelVariant::equi_correlated, threads);
  else if (config.experiment == "spike_power")
    t = run_power_curve(config, ModelVariant::spiked, threads);
  else if (config.experiment == "mixed_power")
    t = run_power_curve(config, ModelVariant::mixed_pca, threads);
  else if (config.experiment == "spike_hist")
    t = run_spike_hist(config, threads);
  else if (config.experiment == "cca_mismatch")
    t = run_cca_mismatch(config, threads);
  else
    throw std::invalid_argument("unknown experiment: " + config.experiment);

  double secs = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  nlohmann::json meta;
  meta["schema"] = "improprietest.result_table.v1";
  meta["experiment"] = config.experiment;
  meta["library_version"] = IMPROPRIETEST_VERSION;
  meta["config"] = nlohmann::json::parse(config.to_json());
  meta["wall_time_s"] = secs;
  t.meta = meta.dump(2);
  t.validate();
  return t;
}

void write_result(const ResultTable& table, const ExperimentConfig& config) {
  std::filesystem::create_directories(config.output_dir);
  auto base = std::filesystem::path(config.output_dir) / config.experiment;
  {
    std::ofstream out(base.string() + ".csv");
    if (!out) throw std::runtime_error("cannot write " + base.string() + ".csv");
    out << table.to_csv();
  }
  {
    std::ofstream out(base.string() + ".meta.json");
    if (!out)
      throw std::runtime_error("cannot write " + base.string() + ".meta.json");
    out << table.meta << "\n";
  }
}

}  // namespace improp
