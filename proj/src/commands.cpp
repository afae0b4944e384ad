#include "credrj/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <thread>

#include "credrj/diagnostics.hpp"
#include "credrj/dic.hpp"
#include "credrj/densities.hpp"
#include "credrj/gibbs.hpp"
#include "credrj/io.hpp"
#include "credrj/rj.hpp"

namespace credrj {

namespace {

using nlohmann::json;

struct Context {
  KeyValueConfig kv;
  std::string hash;
  std::uint64_t seed = 1;
  std::filesystem::path out;
};

std::ofstream open_artifact(const Context& ctx, const std::string& name) {
  std::ofstream out(ctx.out / name);
  if (!out) throw std::runtime_error("cannot open output file " + (ctx.out / name).string());
  out << "# config_hash=" << ctx.hash << "\n";
  return out;
}

ModelId parse_model(const std::string& name) {
  if (name == "M1") return ModelId::M1_full;
  if (name == "M2") return ModelId::M2_state_only;
  if (name == "M3") return ModelId::M3_occupation_only;
  if (name == "K") return ModelId::K_centred;
  throw std::invalid_argument("unknown model '" + name + "' (expected M1, M2, M3, or K)");
}

PriorConfig parse_priors(const KeyValueConfig& kv) {
  PriorConfig p;
  p.a = kv.get_double("priors", "a", p.a);
  p.b = kv.get_double("priors", "b", p.b);
  p.c = kv.get_double("priors", "c", p.c);
  p.tau_mu = kv.get_double("priors", "tau_mu", p.tau_mu);
  p.tau_alpha0 = kv.get_double("priors", "tau_alpha0", p.tau_alpha0);
  p.tau_beta0 = kv.get_double("priors", "tau_beta0", p.tau_beta0);
  const auto offsets = kv.get_list("priors", "model_log_prior");
  if (!offsets.empty()) {
    if (offsets.size() != 3)
      throw std::invalid_argument("priors.model_log_prior needs exactly 3 values");
    p.model_log_prior = {offsets[0], offsets[1], offsets[2]};
  }
  return p;
}

GibbsConfig parse_gibbs(const KeyValueConfig& kv, const std::string& section,
                        std::uint64_t seed, std::uint64_t default_iters,
                        std::uint64_t default_burn) {
  GibbsConfig g;
  g.iterations = static_cast<std::uint64_t>(
      kv.get_int(section, "iterations", static_cast<std::int64_t>(default_iters)));
  g.burn_in = static_cast<std::uint64_t>(kv.get_int(
      section, "burn_in",
      default_burn == 0 ? static_cast<std::int64_t>(g.iterations / 10)
                        : static_cast<std::int64_t>(default_burn)));
  g.thin = static_cast<std::uint64_t>(kv.get_int(section, "thin", 1));
  g.seed = seed;
  validate_gibbs_config(g);
  return g;
}

RjConfig parse_rj(const KeyValueConfig& kv, std::uint64_t seed) {
  RjConfig rj;
  rj.iterations =
      static_cast<std::uint64_t>(kv.get_int("rj", "iterations", static_cast<std::int64_t>(rj.iterations)));
  rj.burn_in = static_cast<std::uint64_t>(
      kv.get_int("rj", "burn_in", static_cast<std::int64_t>(rj.iterations / 10)));
  rj.within_model_sweeps = static_cast<std::uint64_t>(kv.get_int("rj", "within_model_sweeps", 1));
  rj.initial_model = parse_model(kv.get("rj", "initial_model", "M1"));
  rj.seed = seed;
  const char* row_keys[3] = {"move_row1", "move_row2", "move_row3"};
  for (int i = 0; i < 3; ++i) {
    const auto row = kv.get_list("rj", row_keys[i]);
    if (row.empty()) continue;
    if (row.size() != 3) throw std::invalid_argument("rj move rows need 3 entries");
    for (int j = 0; j < 3; ++j) rj.move(i, j) = row[static_cast<std::size_t>(j)];
  }
  validate_rj_config(rj);
  return rj;
}

IngestResult load_data(const KeyValueConfig& kv) {
  const std::string path = kv.get("data", "panel", "");
  if (path.empty()) throw std::invalid_argument("config is missing data.panel");
  std::optional<int> holdout;
  if (kv.has("data", "holdout_year"))
    holdout = static_cast<int>(kv.get_int("data", "holdout_year", 0));
  IngestResult result = ingest(path, holdout);
  for (const auto& occ : result.dropped_occupations)
    std::cerr << "note: dropped occupation '" << occ << "' (no active cells)\n";
  return result;
}

void write_chain_csv(const Context& ctx, const std::string& name, const Chain& chain,
                     ModelId header_model) {
  auto out = open_artifact(ctx, name);
  const bool centred = header_model == ModelId::K_centred;
  out << "iteration,model,mu";
  const std::size_t m = chain.empty() ? 0 : chain.front().params.alpha.size();
  const std::size_t n = chain.empty() ? 0 : chain.front().params.beta.size();
  for (std::size_t i = 0; i < m; ++i) out << ",alpha_" << (i + 1);
  for (std::size_t j = 0; j < n; ++j) out << ",beta_" << (j + 1);
  out << ",sigma";
  if (centred) out << ",tau_alpha,tau_beta";
  out << ",logpost,deviance\n";
  for (const auto& rec : chain) {
    out << rec.iteration << "," << model_name(rec.model) << "," << fmt_double(rec.params.mu);
    for (std::size_t i = 0; i < m; ++i) out << "," << fmt_double(rec.params.alpha[i]);
    for (std::size_t j = 0; j < n; ++j) out << "," << fmt_double(rec.params.beta[j]);
    out << "," << fmt_double(rec.params.sigma);
    if (centred) out << "," << fmt_double(rec.params.tau_alpha) << ","
                     << fmt_double(rec.params.tau_beta);
    out << "," << fmt_double(rec.log_post) << "," << fmt_double(rec.deviance) << "\n";
  }
}

void write_hpd_csv(const Context& ctx, const Chain& chain, const Dataset& data, ModelId model) {
  auto out = open_artifact(ctx, "hpd.csv");
  out << "parameter,mean,hpd_lo,hpd_hi,level\n";
  const double level = 0.95;
  auto emit = [&](const std::string& name, auto getter) {
    std::vector<double> draws(chain.size());
    double mean = 0.0;
    for (std::size_t r = 0; r < chain.size(); ++r) {
      draws[r] = getter(chain[r].params);
      mean += draws[r];
    }
    mean /= static_cast<double>(chain.size());
    const HpdInterval hpd = hpd_interval(draws, level);
    out << name << "," << fmt_double(mean) << "," << fmt_double(hpd.lo) << ","
        << fmt_double(hpd.hi) << "," << fmt_double(level) << "\n";
  };
  const bool centred = model == ModelId::K_centred;
  emit("mu", [](const ParamVector& p) { return p.mu; });
  for (std::size_t i = centred ? 0 : 1; i < data.panel.rows(); ++i) {
    if (model == ModelId::M3_occupation_only) break;
    emit("alpha[" + data.state_labels[i] + "]",
         [i](const ParamVector& p) { return p.alpha[i]; });
  }
  for (std::size_t j = centred ? 0 : 1; j < data.panel.cols(); ++j) {
    if (model == ModelId::M2_state_only) break;
    emit("beta[" + data.occupation_labels[j] + "]",
         [j](const ParamVector& p) { return p.beta[j]; });
  }
  emit("sigma", [](const ParamVector& p) { return p.sigma; });
  if (centred) {
    emit("tau_alpha", [](const ParamVector& p) { return p.tau_alpha; });
    emit("tau_beta", [](const ParamVector& p) { return p.tau_beta; });
  }
}

void write_summary(const Context& ctx, const json& j) {
  auto out = open_artifact(ctx, "summary.json");
  out << j.dump(2) << "\n";
}

int cmd_fit(const Context& ctx) {
  const IngestResult data = load_data(ctx.kv);
  const ModelId model = parse_model(ctx.kv.get("fit", "model", "M1"));
  const PriorConfig priors = parse_priors(ctx.kv);
  const GibbsConfig gibbs = parse_gibbs(ctx.kv, "gibbs", ctx.seed, 20000, 0);
  const Chain chain = gibbs_run(data.fit.panel, model, priors, gibbs);
  write_chain_csv(ctx, "chain.csv", chain, model);
  write_hpd_csv(ctx, chain, data.fit, model);
  json j{{"command", "fit"},
         {"config_hash", ctx.hash},
         {"seed", ctx.seed},
         {"model", model_name(model)},
         {"draws", chain.size()},
         {"panel", {{"m", data.fit.panel.rows()},
                    {"n", data.fit.panel.cols()},
                    {"s", data.fit.panel.reps()},
                    {"active_cells", data.fit.panel.active_count()}}}};
  write_summary(ctx, j);
  return 0;
}

std::array<PilotSummary, 3> run_configured_pilots(const Context& ctx, const LossPanel& panel,
                                                  const PriorConfig& priors) {
  const GibbsConfig pilot = parse_gibbs(ctx.kv, "pilot", derive_seed(ctx.seed, 100), 5000, 1000);
  return run_pilots(panel, priors, pilot);
}

int cmd_rj(const Context& ctx) {
  const IngestResult data = load_data(ctx.kv);
  const PriorConfig priors = parse_priors(ctx.kv);
  const RjConfig rj = parse_rj(ctx.kv, derive_seed(ctx.seed, 200));
  const bool frozen = rj.move.diagonal().sum() == 3.0;
  if (frozen)
    std::cerr << "warning: move matrix has no off-diagonal mass; "
                 "the chain cannot leave its initial model\n";
  const auto pilots = run_configured_pilots(ctx, data.fit.panel, priors);
  const RjRun run = rj_run(data.fit.panel, priors, rj, pilots);
  const ModelProbs probs = estimate_model_probs(run.chain, priors.model_log_prior);
  const TransitionMatrix trans = empirical_transition_matrix(run.chain);

  write_chain_csv(ctx, "chain.csv", run.chain, ModelId::M1_full);
  {
    auto out = open_artifact(ctx, "probs.csv");
    out << "model,visits,raw,corrected\n";
    for (int k = 0; k < 3; ++k) {
      const auto i = static_cast<std::size_t>(k);
      out << model_name(model_from_index(k)) << "," << probs.visits[i] << ","
          << fmt_double(probs.raw[i]) << "," << fmt_double(probs.corrected[i]) << "\n";
    }
  }
  {
    auto out = open_artifact(ctx, "transition.csv");
    out << "from,to_M1,to_M2,to_M3,defined\n";
    for (int i = 0; i < 3; ++i) {
      out << model_name(model_from_index(i));
      for (int j = 0; j < 3; ++j) out << "," << fmt_double(trans.p(i, j));
      out << "," << (trans.row_defined[static_cast<std::size_t>(i)] ? 1 : 0) << "\n";
    }
  }
  json j{{"command", "rj"},
         {"config_hash", ctx.hash},
         {"seed", ctx.seed},
         {"iterations", rj.iterations},
         {"attempted_jumps", run.attempted_jumps},
         {"accepted_jumps", run.accepted_jumps},
         {"nonfinite_rejects", run.nonfinite_rejects},
         {"visits", probs.visits},
         {"raw_probs", probs.raw},
         {"corrected_probs", probs.corrected}};
  if (frozen) j["warning"] = "single-model run: move matrix has no off-diagonal mass";
  write_summary(ctx, j);
  return 0;
}

int cmd_dic(const Context& ctx) {
  const IngestResult data = load_data(ctx.kv);
  const PriorConfig priors = parse_priors(ctx.kv);
  const CentralTendency central =
      ctx.kv.get("dic", "central", "mean") == "median" ? CentralTendency::median
                                                       : CentralTendency::mean;
  std::vector<DicReport> reports;
  for (int k = 0; k < 3; ++k) {
    const ModelId model = model_from_index(k);
    GibbsConfig gibbs = parse_gibbs(ctx.kv, "gibbs", derive_seed(ctx.seed, 300 + static_cast<std::uint64_t>(k)),
                                    20000, 0);
    const Chain chain = gibbs_run(data.fit.panel, model, priors, gibbs);
    reports.push_back(compute_dic(chain, data.fit.panel, model, central));
  }
  const auto ranked = rank_models(reports);
  {
    auto out = open_artifact(ctx, "dic.txt");
    out << "model  mean_deviance  deviance_at_mean  p_d  dic\n";
    for (const auto& r : reports)
      out << model_name(r.model) << "  " << fmt_double(r.mean_deviance) << "  "
          << fmt_double(r.deviance_at_mean) << "  " << fmt_double(r.p_d) << "  "
          << fmt_double(r.dic) << "\n";
    out << "ranking:";
    for (const auto& r : ranked) out << " " << model_name(r.model);
    out << "\n";
  }
  json j{{"command", "dic"}, {"config_hash", ctx.hash}, {"seed", ctx.seed}};
  for (const auto& r : reports)
    j["reports"][model_name(r.model)] = {{"mean_deviance", r.mean_deviance},
                                         {"deviance_at_mean", r.deviance_at_mean},
                                         {"p_d", r.p_d},
                                         {"dic", r.dic}};
  write_summary(ctx, j);
  return 0;
}

int cmd_simulate(const Context& ctx) {
  const ModelId model = parse_model(ctx.kv.get("simulate", "model", "M1"));
  const auto m = static_cast<std::size_t>(ctx.kv.get_int("simulate", "m", 4));
  const auto n = static_cast<std::size_t>(ctx.kv.get_int("simulate", "n", 6));
  const auto s = static_cast<std::size_t>(ctx.kv.get_int("simulate", "s", 3));
  ParamVector truth;
  truth.mu = ctx.kv.get_double("simulate", "mu", 0.0);
  truth.sigma = ctx.kv.get_double("simulate", "sigma", 1.0);
  truth.alpha = ctx.kv.get_list("simulate", "alpha");
  truth.beta = ctx.kv.get_list("simulate", "beta");
  if (truth.alpha.empty()) truth.alpha.assign(m, 0.0);
  if (truth.beta.empty()) truth.beta.assign(n, 0.0);
  if (model == ModelId::K_centred) {
    truth.tau_alpha = ctx.kv.get_double("simulate", "tau_alpha", 1.0);
    truth.tau_beta = ctx.kv.get_double("simulate", "tau_beta", 1.0);
  }

  ExposureLaw law;
  const auto spec = ctx.kv.get("simulate", "exposure", "loguniform,10,10000");
  {
    std::stringstream ss(spec);
    std::string kind, lo, hi;
    std::getline(ss, kind, ',');
    std::getline(ss, lo, ',');
    std::getline(ss, hi, ',');
    if (kind == "constant") {
      law.kind = ExposureLaw::Kind::constant;
      law.lo = std::stod(lo);
    } else if (kind == "loguniform") {
      law.kind = ExposureLaw::Kind::log_uniform;
      law.lo = std::stod(lo);
      law.hi = std::stod(hi);
    } else {
      throw std::invalid_argument("simulate.exposure must be loguniform,lo,hi or constant,value");
    }
  }

  const SimulatedPanel sim = simulate(model, truth, m, n, s, law, ctx.seed);
  write_panel_csv((ctx.out / "panel.csv").string(), sim, ctx.hash);
  json truth_j{{"command", "simulate"},
               {"config_hash", ctx.hash},
               {"seed", ctx.seed},
               {"model", model_name(model)},
               {"m", m},
               {"n", n},
               {"s", s},
               {"mu", truth.mu},
               {"alpha", truth.alpha},
               {"beta", truth.beta},
               {"sigma", truth.sigma}};
  {
    auto out = open_artifact(ctx, "truth.json");
    out << truth_j.dump(2) << "\n";
  }
  write_summary(ctx, truth_j);
  return 0;
}

int cmd_diagnose(const Context& ctx) {
  const IngestResult data = load_data(ctx.kv);
  const PriorConfig priors = parse_priors(ctx.kv);
  const auto n_chains = static_cast<std::size_t>(ctx.kv.get_int("diagnose", "chains", 3));
  if (n_chains < 2) throw std::invalid_argument("diagnose.chains must be >= 2");
  const int max_lag = static_cast<int>(ctx.kv.get_int("diagnose", "max_lag", 40));
  const auto thin = static_cast<std::size_t>(ctx.kv.get_int("diagnose", "thin", 25));
  const std::string mode = ctx.kv.get("diagnose", "mode", "rj");

  std::vector<Chain> chains(n_chains);
  if (mode == "rj") {
    const auto pilots = run_configured_pilots(ctx, data.fit.panel, priors);
    const RjConfig base = parse_rj(ctx.kv, 0);
    std::vector<std::thread> workers;
    for (std::size_t c = 0; c < n_chains; ++c)
      workers.emplace_back([&, c] {
        RjConfig rj = base;
        rj.seed = derive_seed(ctx.seed, 400 + c);
        chains[c] = rj_run(data.fit.panel, priors, rj, pilots).chain;
      });
    for (auto& w : workers) w.join();
  } else if (mode == "fit") {
    const ModelId model = parse_model(ctx.kv.get("fit", "model", "M1"));
    std::vector<std::thread> workers;
    for (std::size_t c = 0; c < n_chains; ++c)
      workers.emplace_back([&, c] {
        const GibbsConfig gibbs =
            parse_gibbs(ctx.kv, "gibbs", derive_seed(ctx.seed, 400 + c), 20000, 0);
        chains[c] = gibbs_run(data.fit.panel, model, priors, gibbs);
      });
    for (auto& w : workers) w.join();
  } else {
    throw std::invalid_argument("diagnose.mode must be rj or fit");
  }

  std::vector<std::vector<int>> indicators(n_chains);
  std::vector<std::vector<double>> logposts(n_chains);
  for (std::size_t c = 0; c < n_chains; ++c) {
    indicators[c].reserve(chains[c].size());
    logposts[c].reserve(chains[c].size());
    for (const auto& rec : chains[c]) {
      indicators[c].push_back(rec.model == ModelId::K_centred ? 0 : model_index(rec.model));
      logposts[c].push_back(rec.log_post);
    }
  }
  const MultichainDiagnostic diag = multichain_diagnostic(indicators, logposts, thin);

  {
    auto out = open_artifact(ctx, "acf.csv");
    out << "chain,series,lag,value,ci_band\n";
    for (std::size_t c = 0; c < n_chains; ++c) {
      const AcfSeries acf = autocorrelation(logposts[c], max_lag);
      for (std::size_t k = 0; k < acf.values.size(); ++k)
        out << c << ",logpost," << acf.lags[k] << "," << fmt_double(acf.values[k]) << ","
            << fmt_double(acf.ci_band) << "\n";
    }
  }
  {
    auto out = open_artifact(ctx, "ess.csv");
    out << "chain,series,n,ess\n";
    for (std::size_t c = 0; c < n_chains; ++c)
      out << c << ",logpost," << logposts[c].size() << ","
          << fmt_double(effective_sample_size(logposts[c])) << "\n";
  }
  {
    auto out = open_artifact(ctx, "multichain.csv");
    out << "chi_square_stat,chi_square_pvalue,chi_square_pass,ks_stat,ks_critical,ks_pass\n";
    out << fmt_double(diag.chi_square_stat) << "," << fmt_double(diag.chi_square_pvalue) << ","
        << (diag.chi_square_pass ? 1 : 0) << "," << fmt_double(diag.ks_stat) << ","
        << fmt_double(diag.ks_critical) << "," << (diag.ks_pass ? 1 : 0) << "\n";
  }
  json j{{"command", "diagnose"},
         {"config_hash", ctx.hash},
         {"seed", ctx.seed},
         {"mode", mode},
         {"chains", n_chains},
         {"chi_square_pass", diag.chi_square_pass},
         {"ks_pass", diag.ks_pass}};
  write_summary(ctx, j);
  return diag.chi_square_pass && diag.ks_pass ? 0 : 1;
}

int cmd_predict(const Context& ctx) {
  const IngestResult data = load_data(ctx.kv);
  const PriorConfig priors = parse_priors(ctx.kv);

  std::array<Chain, 3> fits;
  for (int k = 0; k < 3; ++k) {
    const GibbsConfig gibbs = parse_gibbs(
        ctx.kv, "gibbs", derive_seed(ctx.seed, 500 + static_cast<std::uint64_t>(k)), 20000, 0);
    fits[static_cast<std::size_t>(k)] =
        gibbs_run(data.fit.panel, model_from_index(k), priors, gibbs);
  }

  std::array<double, 3> probs{};
  const auto manual = ctx.kv.get_list("predict", "probs");
  if (manual.size() == 3) {
    probs = {manual[0], manual[1], manual[2]};
  } else {
    const auto pilots = run_configured_pilots(ctx, data.fit.panel, priors);
    const RjConfig rj = parse_rj(ctx.kv, derive_seed(ctx.seed, 200));
    const RjRun run = rj_run(data.fit.panel, priors, rj, pilots);
    probs = estimate_model_probs(run.chain, priors.model_log_prior).corrected;
  }

  const std::array<const Chain*, 3> chain_ptrs{&fits[0], &fits[1], &fits[2]};
  double weighted_sq_error = 0.0;
  bool have_holdout = data.holdout.has_value();
  {
    auto out = open_artifact(ctx, "predict.csv");
    out << "state,occupation,predicted_mean";
    if (have_holdout) out << ",holdout_ratio,holdout_exposure,weighted_sq_error";
    out << "\n";
    for (std::size_t i = 0; i < data.fit.panel.rows(); ++i)
      for (std::size_t j = 0; j < data.fit.panel.cols(); ++j) {
        const double pred = model_averaged_predict(chain_ptrs, probs, i, j);
        out << data.fit.state_labels[i] << "," << data.fit.occupation_labels[j] << ","
            << fmt_double(pred);
        if (have_holdout) {
          const auto& hp = data.holdout->panel;
          if (hp.active(i, j, 0)) {
            const double e = hp.exposure(i, j, 0);
            const double r = hp.ratio(i, j, 0);
            const double contrib = e * (r - pred) * (r - pred);
            weighted_sq_error += contrib;
            out << "," << fmt_double(r) << "," << fmt_double(e) << "," << fmt_double(contrib);
          } else {
            out << ",,,";
          }
        }
        out << "\n";
      }
  }
  json j{{"command", "predict"},
         {"config_hash", ctx.hash},
         {"seed", ctx.seed},
         {"model_probs", probs}};
  if (have_holdout) j["holdout_weighted_sq_error"] = weighted_sq_error;
  write_summary(ctx, j);
  return 0;
}

}  // namespace

int run_subcommand(const RunConfig& run) {
  Context ctx;
  ctx.kv = KeyValueConfig::parse_file(run.config_path);
  ctx.hash = config_hash(ctx.kv.raw_text(), run.seed_override);
  ctx.seed = run.seed_override.value_or(
      static_cast<std::uint64_t>(ctx.kv.get_int("run", "seed", 1)));
  ctx.out = run.out_dir;
  std::filesystem::create_directories(ctx.out);

  if (run.command == "fit") return cmd_fit(ctx);
  if (run.command == "rj") return cmd_rj(ctx);
  if (run.command == "dic") return cmd_dic(ctx);
  if (run.command == "simulate") return cmd_simulate(ctx);
  if (run.command == "diagnose") return cmd_diagnose(ctx);
  if (run.command == "predict") return cmd_predict(ctx);
  throw std::invalid_argument("unknown subcommand '" + run.command + "'");
}

}  // namespace credrj
