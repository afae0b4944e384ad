// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Criteria marked dataset-gated are skipped (not failed)
// when the original workers'-compensation panel is not present.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "credrj/commands.hpp"
#include "credrj/conditionals.hpp"
#include "credrj/densities.hpp"
#include "credrj/diagnostics.hpp"
#include "credrj/dic.hpp"
#include "credrj/gibbs.hpp"
#include "credrj/io.hpp"
#include "credrj/rj.hpp"
#include "evidence_oracle.hpp"
#include "test_support.hpp"

using namespace credrj;
using namespace credrj::testing;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  std::printf("%s criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

void report_skip(int id, const std::string& name, const std::string& why) {
  std::printf("SKIP criterion %d: %s -- %s\n", id, name.c_str(), why.c_str());
  std::fflush(stdout);
}

ParamVector desk_truth(ModelId model) {
  ParamVector t;
  t.mu = 0.08;
  t.alpha.assign(4, 0.0);
  t.beta.assign(6, 0.0);
  t.sigma = 150.0;
  if (model != ModelId::M3_occupation_only) t.alpha = {0.0, 0.04, -0.03, 0.06};
  if (model != ModelId::M2_state_only) t.beta = {0.0, 0.05, -0.04, 0.02, -0.01, 0.03};
  return t;
}

// ---------------------------------------------------------------- criterion 1
void criterion_recovers_generator() {
  double worst_seconds = 0.0;
  int total_hits = 0;
  std::string detail;
  bool pass = true;
  for (int gen = 0; gen < 3; ++gen) {
    const ModelId generator = model_from_index(gen);
    int hits = 0;
    for (int rep = 0; rep < 10; ++rep) {
      const auto t0 = std::chrono::steady_clock::now();
      ExposureLaw law;
      law.lo = 1e2;
      law.hi = 1e4;
      const SimulatedPanel sim =
          simulate(generator, desk_truth(generator), 4, 6, 3, law,
                   static_cast<std::uint64_t>(1000 * (gen + 1) + rep));
      PriorConfig priors;  // equal model priors
      GibbsConfig pilot_cfg;
      pilot_cfg.iterations = 3000;
      pilot_cfg.burn_in = 600;
      pilot_cfg.seed = derive_seed(42, static_cast<std::uint64_t>(100 * gen + rep));
      const auto pilots = run_pilots(sim.panel, priors, pilot_cfg);
      RjConfig rj;
      rj.iterations = 50000;
      rj.burn_in = 5000;
      rj.seed = derive_seed(43, static_cast<std::uint64_t>(100 * gen + rep));
      const RjRun run = rj_run(sim.panel, priors, rj, pilots);
      const ModelProbs probs = estimate_model_probs(run.chain, priors.model_log_prior);
      if (probs.corrected[static_cast<std::size_t>(gen)] > 0.95) ++hits;
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      worst_seconds = std::max(worst_seconds, secs);
    }
    total_hits += hits;
    detail += model_name(generator) + ":" + std::to_string(hits) + "/10 ";
    if (hits < 9) pass = false;
  }
  if (worst_seconds >= 120.0) pass = false;
  detail += "max " + std::to_string(worst_seconds).substr(0, 5) + "s/replicate";
  (void)total_hits;
  report(1, "reversible jump recovers the generating model", pass, detail);
}

// ---------------------------------------------------------------- criterion 2
void criterion_oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  ParamVector truth;
  truth.mu = 0.1;
  truth.alpha = {0.0, 0.004};
  truth.beta = {0.0, 0.006};
  truth.sigma = 60.0;
  ExposureLaw law;
  law.lo = 50.0;
  law.hi = 200.0;
  const SimulatedPanel sim = simulate(ModelId::M1_full, truth, 2, 2, 2, law, 20240);

  PriorConfig priors;
  const std::array<double, 3> oracle = evidence_model_probs(sim.panel, priors);

  GibbsConfig pilot_cfg;
  pilot_cfg.iterations = 4000;
  pilot_cfg.burn_in = 800;
  pilot_cfg.seed = 91;
  const auto pilots = run_pilots(sim.panel, priors, pilot_cfg);
  RjConfig rj;
  rj.iterations = 200000;
  rj.burn_in = 20000;
  rj.seed = 92;
  const RjRun run = rj_run(sim.panel, priors, rj, pilots);
  const ModelProbs probs = estimate_model_probs(run.chain, priors.model_log_prior);

  double worst = 0.0;
  for (std::size_t k = 0; k < 3; ++k)
    worst = std::max(worst, std::abs(probs.corrected[k] - oracle[k]));
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::ostringstream detail;
  detail.precision(4);
  detail << "chain (" << probs.corrected[0] << "," << probs.corrected[1] << ","
         << probs.corrected[2] << ") vs quadrature (" << oracle[0] << "," << oracle[1] << ","
         << oracle[2] << "), max gap " << worst << ", " << secs << "s";
  report(2, "model probabilities match the evidence quadrature oracle",
         worst < 0.02 && secs < 300.0, detail.str());
}

// ---------------------------------------------------------------- criterion 3
template <typename Joint, typename LogQ>
double grid_gap_variance(const Joint& joint, const LogQ& log_q,
                         const std::vector<double>& grid) {
  std::vector<double> gaps;
  for (double x : grid) gaps.push_back(joint(x) - log_q(x));
  return sample_variance(gaps);
}

void criterion_conjugacy() {
  PriorConfig priors;
  priors.a = 0.4;
  priors.b = 0.8;
  priors.c = 0.05;
  priors.tau_mu = 0.2;
  priors.tau_alpha0 = 0.3;
  priors.tau_beta0 = 0.4;
  std::mt19937 gen(2024);
  std::normal_distribution<double> jitter(0.0, 1.0);
  double worst = 0.0;
  int checked = 0;

  auto normal_grid = [](const NormalParams& d) {
    const double sd = std::sqrt(d.variance);
    return std::vector<double>{d.mean - 2 * sd, d.mean - 0.7 * sd, d.mean, d.mean + 1.1 * sd,
                               d.mean + 2 * sd};
  };
  auto gamma_grid = [](const GammaParams& g) {
    const double centre = g.shape / g.rate;
    return std::vector<double>{0.3 * centre, 0.7 * centre, centre, 1.8 * centre, 3.1 * centre};
  };

  for (unsigned seed = 0; seed < 100; ++seed) {
    const LossPanel p = random_panel(3, 4, 2, seed, seed % 4 == 0 ? 0.3 : 0.0);

    {  // centred model: alpha_i, beta_j, mu, sigma, tau_alpha, tau_beta
      ParamVector params = random_params(ModelId::K_centred, 3, 4, seed + 1000);
      auto joint = [&](const ParamVector& q) {
        return log_posterior(p, ModelId::K_centred, q, priors);
      };
      const NormalParams da =
          cond_alpha_centred(p, 1, params.mu, params.beta, params.tau_alpha, params.sigma);
      worst = std::max(worst, grid_gap_variance(
          [&](double x) { ParamVector q = params; q.alpha[1] = x; return joint(q); },
          [&](double x) { return log_normal_pdf(x, da.mean, 1.0 / da.variance); },
          normal_grid(da)));
      const NormalParams db =
          cond_beta_centred(p, 2, params.mu, params.alpha, params.tau_beta, params.sigma);
      worst = std::max(worst, grid_gap_variance(
          [&](double x) { ParamVector q = params; q.beta[2] = x; return joint(q); },
          [&](double x) { return log_normal_pdf(x, db.mean, 1.0 / db.variance); },
          normal_grid(db)));
      const NormalParams dm =
          cond_mu_centred(params.alpha, params.beta, params.tau_alpha, params.tau_beta, priors.c);
      worst = std::max(worst, grid_gap_variance(
          [&](double x) { ParamVector q = params; q.mu = x; return joint(q); },
          [&](double x) { return log_normal_pdf(x, dm.mean, 1.0 / dm.variance); },
          normal_grid(dm)));
      const GammaParams gs = cond_sigma(p, ModelId::K_centred, params, priors.a, priors.b);
      worst = std::max(worst, grid_gap_variance(
          [&](double x) { ParamVector q = params; q.sigma = x; return joint(q); },
          [&](double x) { return log_gamma_pdf(x, gs.shape, gs.rate); }, gamma_grid(gs)));
      const GammaParams gta = cond_tau_alpha(params.alpha, params.mu, priors.a, priors.b);
      worst = std::max(worst, grid_gap_variance(
          [&](double x) { ParamVector q = params; q.tau_alpha = x; return joint(q); },
          [&](double x) { return log_gamma_pdf(x, gta.shape, gta.rate); }, gamma_grid(gta)));
      const GammaParams gtb = cond_tau_beta(params.beta, params.mu, priors.a, priors.b);
      worst = std::max(worst, grid_gap_variance(
          [&](double x) { ParamVector q = params; q.tau_beta = x; return joint(q); },
          [&](double x) { return log_gamma_pdf(x, gtb.shape, gtb.rate); }, gamma_grid(gtb)));
      checked += 6;
    }

    for (ModelId model :
         {ModelId::M1_full, ModelId::M2_state_only, ModelId::M3_occupation_only}) {
      ParamVector params = random_params(model, 3, 4, seed + 2000);
      auto joint = [&](const ParamVector& q) { return log_posterior(p, model, q, priors); };
      const NormalParams dm =
          cond_mu_noncentred(p, params.alpha, params.beta, params.sigma, priors.tau_mu);
      worst = std::max(worst, grid_gap_variance(
          [&](double x) { ParamVector q = params; q.mu = x; return joint(q); },
          [&](double x) { return log_normal_pdf(x, dm.mean, 1.0 / dm.variance); },
          normal_grid(dm)));
      const GammaParams gs = cond_sigma(p, model, params, priors.a, priors.b);
      worst = std::max(worst, grid_gap_variance(
          [&](double x) { ParamVector q = params; q.sigma = x; return joint(q); },
          [&](double x) { return log_gamma_pdf(x, gs.shape, gs.rate); }, gamma_grid(gs)));
      checked += 2;
      if (model != ModelId::M3_occupation_only) {
        const MvnDiagParams d =
            cond_alpha_block(p, params.mu, params.beta, params.sigma, priors.tau_alpha0);
        std::vector<double> gaps;
        for (int rep = 0; rep < 5; ++rep) {
          ParamVector q = params;
          double lq = 0.0;
          for (std::size_t i = 1; i < 3; ++i) {
            q.alpha[i] = d.mean[i - 1] + jitter(gen) / std::sqrt(d.precision_diag[i - 1]);
            lq += log_normal_pdf(q.alpha[i], d.mean[i - 1], d.precision_diag[i - 1]);
          }
          gaps.push_back(joint(q) - lq);
        }
        worst = std::max(worst, sample_variance(gaps));
        ++checked;
      }
      if (model != ModelId::M2_state_only) {
        const MvnDiagParams d =
            cond_beta_block(p, params.mu, params.alpha, params.sigma, priors.tau_beta0);
        std::vector<double> gaps;
        for (int rep = 0; rep < 5; ++rep) {
          ParamVector q = params;
          double lq = 0.0;
          for (std::size_t j = 1; j < 4; ++j) {
            q.beta[j] = d.mean[j - 1] + jitter(gen) / std::sqrt(d.precision_diag[j - 1]);
            lq += log_normal_pdf(q.beta[j], d.mean[j - 1], d.precision_diag[j - 1]);
          }
          gaps.push_back(joint(q) - lq);
        }
        worst = std::max(worst, sample_variance(gaps));
        ++checked;
      }
    }
  }
  std::ostringstream detail;
  detail << checked << " instances, worst log-ratio variance " << worst;
  report(3, "every full conditional passes the log-density-ratio constancy test",
         worst < 1e-16, detail.str());
}

// ---------------------------------------------------------------- criterion 4
void criterion_proposal_exactness() {
  ExposureLaw law;
  law.lo = 1e2;
  law.hi = 1e4;
  const SimulatedPanel sim =
      simulate(ModelId::M1_full, desk_truth(ModelId::M1_full), 4, 6, 3, law, 777);
  PriorConfig priors;
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  double worst_centre = 0.0;

  for (int trial = 0; trial < 10; ++trial) {
    for (ModelId model :
         {ModelId::M1_full, ModelId::M2_state_only, ModelId::M3_occupation_only}) {
      const double sigma = 50.0 + 30.0 * trial;
      const auto d = static_cast<Eigen::Index>(block_dim(model, 4, 6));
      Eigen::VectorXd c1(d), c2(d);
      for (Eigen::Index k = 0; k < d; ++k) {
        c1(k) = u(gen);
        c2(k) = u(gen);
      }
      const GaussianProposal q1 =
          build_proposal(model, sim.panel, priors, sigma, CenteringPoint{model, c1});
      const GaussianProposal q2 =
          build_proposal(model, sim.panel, priors, sigma, CenteringPoint{model, c2});
      worst_centre = std::max(worst_centre, (q1.mean() - q2.mean()).cwiseAbs().maxCoeff());
    }
  }

  // log A across 20 redrawn blocks at fixed (sigma, sigma').
  GibbsConfig pilot_cfg;
  pilot_cfg.iterations = 3000;
  pilot_cfg.burn_in = 600;
  pilot_cfg.seed = 555;
  const auto pilots = run_pilots(sim.panel, priors, pilot_cfg);
  const auto props = make_proposal_set(pilots);
  RjConfig rj;
  ChainRng rng(556);
  double worst_spread = 0.0;
  for (int pair = 0; pair < 3; ++pair) {
    const ModelId from_model = model_from_index(pair);
    const ModelId to_model = model_from_index((pair + 1) % 3);
    const ParamVector from = pilots[static_cast<std::size_t>(pair)].posterior_mean;
    const double sigma_new =
        pilots[static_cast<std::size_t>((pair + 1) % 3)].posterior_mean.sigma;
    const GaussianProposal q = build_proposal(
        to_model, sim.panel, priors, sigma_new,
        props.centers[static_cast<std::size_t>(model_index(to_model))]);
    double lo = 1e300, hi = -1e300;
    for (int rep = 0; rep < 20; ++rep) {
      const ParamVector to = unpack_block(to_model, q.sample(rng), 4, 6, sigma_new);
      const double log_a =
          log_accept(sim.panel, priors, rj, props, from_model, from, to_model, to);
      lo = std::min(lo, log_a);
      hi = std::max(hi, log_a);
    }
    worst_spread = std::max(worst_spread, hi - lo);
  }
  std::ostringstream detail;
  detail << "centering gap " << worst_centre << ", log A spread " << worst_spread;
  report(4, "proposals are centering-invariant and the acceptance ratio is block-free",
         worst_centre < 1e-9 && worst_spread < 1e-8, detail.str());
}

// ---------------------------------------------------------------- criterion 5
void criterion_hessians() {
  PriorConfig priors;
  priors.tau_mu = 0.2;
  priors.tau_alpha0 = 0.4;
  priors.tau_beta0 = 0.6;
  std::mt19937 gen(11);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  double worst = 0.0;
  for (ModelId model :
       {ModelId::M1_full, ModelId::M2_state_only, ModelId::M3_occupation_only}) {
    for (unsigned inst = 0; inst < 50; ++inst) {
      const LossPanel p = random_panel(3, 4, 2, inst * 3 + 1, inst % 5 == 0 ? 0.2 : 0.0);
      const double sigma = 0.4 + 0.05 * inst;
      const QuadraticForm qf = quadratic_form(model, p, priors, sigma);
      Eigen::VectorXd x0(qf.hessian.rows());
      for (Eigen::Index k = 0; k < x0.size(); ++k) x0(k) = u(gen);
      const double h = 1e-4;
      for (Eigen::Index a = 0; a < x0.size(); ++a)
        for (Eigen::Index b = 0; b <= a; ++b) {
          Eigen::VectorXd xpp = x0, xpm = x0, xmp = x0, xmm = x0;
          xpp(a) += h; xpp(b) += h;
          xpm(a) += h; xpm(b) -= h;
          xmp(a) -= h; xmp(b) += h;
          xmm(a) -= h; xmm(b) -= h;
          const double fd =
              (qf.value(xpp) - qf.value(xpm) - qf.value(xmp) + qf.value(xmm)) / (4 * h * h);
          const double scale = std::max(1.0, std::abs(qf.hessian(a, b)));
          worst = std::max(worst, std::abs(fd - qf.hessian(a, b)) / scale);
        }
    }
  }
  std::ostringstream detail;
  detail << "worst relative gap " << worst << " over 50 instances per model";
  report(5, "analytic curvature matches central finite differences", worst < 1e-6,
         detail.str());
}

// ---------------------------------------------------------------- criterion 6
void criterion_dic() {
  ExposureLaw law;
  law.lo = 1e2;
  law.hi = 1e4;
  const SimulatedPanel sim =
      simulate(ModelId::M1_full, desk_truth(ModelId::M1_full), 4, 6, 3, law, 31415);
  PriorConfig priors;  // diffuse defaults
  GibbsConfig cfg;
  cfg.iterations = 20000;
  cfg.burn_in = 4000;
  cfg.seed = 271828;
  const Chain chain = gibbs_run(sim.panel, ModelId::M1_full, priors, cfg);
  const DicReport rep = compute_dic(chain, sim.panel, ModelId::M1_full);
  const double id1 = std::abs(rep.dic - (rep.mean_deviance + rep.p_d));
  const double id2 = std::abs(rep.dic - (rep.deviance_at_mean + 2.0 * rep.p_d));
  const double expected = 10.0;  // mu + 3 alpha + 5 beta + sigma
  const bool pd_ok = std::abs(rep.p_d - expected) <= 0.15 * expected;
  std::ostringstream detail;
  detail << "identity gaps " << id1 << ", " << id2 << "; p_d " << rep.p_d << " vs "
         << expected;
  report(6, "DIC identity holds and p_d tracks the free-parameter count",
         id1 < 1e-10 && id2 < 1e-10 && pd_ok, detail.str());

  // Dataset-gated check against the published table.
  const std::string original = std::string(CREDRJ_SOURCE_DIR) + "/data/wcomp_original.csv";
  if (!fs::exists(original)) {
    report_skip(6, "published DIC table reproduction",
                "dataset-unavailable (" + original + " not present)");
    return;
  }
  const IngestResult data = ingest(original, 7);
  struct Row {
    ModelId model;
    double mean_dev, dev_at_mean, p_d, dic;
  };
  const Row table[3] = {{ModelId::M1_full, -2687.25, -2721.19, 33.94, -2653.31},
                        {ModelId::M2_state_only, -1643.03, -1653.91, 10.88, -1632.15},
                        {ModelId::M3_occupation_only, -2114.05, -2138.95, 24.90, -2089.15}};
  bool ok = true;
  std::ostringstream d2;
  for (const auto& row : table) {
    GibbsConfig fit_cfg;
    fit_cfg.iterations = 30000;
    fit_cfg.burn_in = 5000;
    fit_cfg.seed = derive_seed(999, static_cast<std::uint64_t>(model_index(row.model)));
    const Chain c = gibbs_run(data.fit.panel, row.model, priors, fit_cfg);
    const DicReport r = compute_dic(c, data.fit.panel, row.model);
    d2 << model_name(row.model) << " dic " << r.dic << " vs " << row.dic << "; ";
    if (std::abs(r.dic - row.dic) > 2.0) ok = false;
  }
  report(6, "published DIC table reproduction", ok, d2.str());
}

// Dataset-gated reproduction of the published jump-run quantities: with
// prior log-odds (0, 334, 206) the indicator chain's limiting distribution
// and transition matrix, the corrected probability of the full model, and
// the alpha_8 posterior summary.
void dataset_gated_rj_checks() {
  const std::string original = std::string(CREDRJ_SOURCE_DIR) + "/data/wcomp_original.csv";
  const std::string name = "published jump-run and posterior summaries";
  if (!fs::exists(original)) {
    report_skip(6, name, "dataset-unavailable (" + original + " not present)");
    return;
  }
  const IngestResult data = ingest(original, 7);
  PriorConfig priors;
  priors.model_log_prior = {0.0, 334.0, 206.0};
  GibbsConfig pilot_cfg;
  pilot_cfg.iterations = 5000;
  pilot_cfg.burn_in = 1000;
  pilot_cfg.seed = 7001;
  const auto pilots = run_pilots(data.fit.panel, priors, pilot_cfg);
  RjConfig rj;
  rj.iterations = 100000;
  rj.burn_in = 10000;
  rj.seed = 7002;
  const RjRun run = rj_run(data.fit.panel, priors, rj, pilots);
  const ModelProbs probs = estimate_model_probs(run.chain, priors.model_log_prior);
  const TransitionMatrix trans = empirical_transition_matrix(run.chain);

  bool ok = true;
  std::ostringstream detail;
  const double limiting[3] = {0.308, 0.358, 0.334};
  detail << "raw (";
  for (int k = 0; k < 3; ++k) {
    detail << probs.raw[static_cast<std::size_t>(k)] << (k < 2 ? "," : ")");
    if (std::abs(probs.raw[static_cast<std::size_t>(k)] - limiting[k]) > 0.03) ok = false;
  }
  const double first_row[3] = {0.554, 0.233, 0.213};
  for (int j = 0; j < 3; ++j)
    if (std::abs(trans.p(0, j) - first_row[j]) > 0.03) ok = false;
  if (probs.corrected[0] < 0.99) ok = false;
  detail << ", corrected P(M1) " << probs.corrected[0];

  GibbsConfig fit_cfg;
  fit_cfg.iterations = 30000;
  fit_cfg.burn_in = 5000;
  fit_cfg.seed = 7003;
  const Chain m1 = gibbs_run(data.fit.panel, ModelId::M1_full, priors, fit_cfg);
  std::vector<double> a8(m1.size());
  double mean = 0.0;
  for (std::size_t r = 0; r < m1.size(); ++r) {
    a8[r] = m1[r].params.alpha[7];
    mean += a8[r];
  }
  mean /= static_cast<double>(m1.size());
  const HpdInterval hpd = hpd_interval(a8, 0.95);
  detail << ", alpha_8 " << mean << " (" << hpd.lo << "," << hpd.hi << ")";
  if (std::abs(mean - 0.1015) > 0.005 || std::abs(hpd.lo - 0.0932) > 0.01 ||
      std::abs(hpd.hi - 0.1093) > 0.01)
    ok = false;
  report(6, name, ok, detail.str());
}

// ---------------------------------------------------------------- criterion 7
void criterion_diagnostics() {
  // AR(1) oracles.
  std::mt19937 gen(17);
  std::normal_distribution<double> noise(0.0, 1.0);
  const double phi = 0.8;
  std::vector<double> x(100000);
  x[0] = noise(gen) / std::sqrt(1 - phi * phi);
  for (std::size_t t = 1; t < x.size(); ++t) x[t] = phi * x[t - 1] + noise(gen);
  const AcfSeries acf = autocorrelation(x, 3);
  const double ess_ratio = effective_sample_size(x) / static_cast<double>(x.size());
  const bool acf_ok = std::abs(acf.values[1] - phi) < 0.01;
  const bool ess_ok = std::abs(ess_ratio - (1 - phi) / (1 + phi)) < 0.02;

  // Multichain calibration on the actual sampler: 20 experiments, 3 seeded
  // reversible-jump chains each, drawn from the same stationary law.
  ParamVector truth;
  truth.mu = 0.1;
  truth.alpha = {0.0, 0.004};
  truth.beta = {0.0, 0.006};
  truth.sigma = 60.0;
  ExposureLaw law;
  law.lo = 50.0;
  law.hi = 200.0;
  const SimulatedPanel sim = simulate(ModelId::M1_full, truth, 2, 2, 2, law, 888);
  PriorConfig priors;
  GibbsConfig pilot_cfg;
  pilot_cfg.iterations = 3000;
  pilot_cfg.burn_in = 600;
  pilot_cfg.seed = 4040;
  const auto pilots = run_pilots(sim.panel, priors, pilot_cfg);

  int passes = 0;
  for (int exp = 0; exp < 20; ++exp) {
    std::vector<std::vector<int>> inds;
    std::vector<std::vector<double>> lps;
    for (int c = 0; c < 3; ++c) {
      RjConfig rj;
      rj.iterations = 5000;
      rj.burn_in = 1000;
      rj.seed = derive_seed(5000, static_cast<std::uint64_t>(exp * 10 + c));
      const RjRun run = rj_run(sim.panel, priors, rj, pilots);
      std::vector<int> ind;
      std::vector<double> lp;
      for (const auto& rec : run.chain) {
        ind.push_back(model_index(rec.model));
        lp.push_back(rec.log_post);
      }
      inds.push_back(std::move(ind));
      lps.push_back(std::move(lp));
    }
    const MultichainDiagnostic d = multichain_diagnostic(inds, lps, 25);
    if (d.chi_square_pass && d.ks_pass) ++passes;
  }
  std::ostringstream detail;
  detail << "acf(1) " << acf.values[1] << ", ess ratio " << ess_ratio << ", calibration "
         << passes << "/20";
  report(7, "diagnostics match AR(1) oracles and calibrate on the stationary sampler",
         acf_ok && ess_ok && passes >= 18, detail.str());
}

// ---------------------------------------------------------------- criterion 8
std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion_reproducibility() {
  const fs::path root = fs::temp_directory_path() / "credrj_acceptance_repro";
  fs::remove_all(root);
  fs::create_directories(root);
  const fs::path sim_cfg = root / "sim.ini";
  {
    std::ofstream out(sim_cfg);
    out << "[run]\nseed = 3\n[simulate]\nmodel = M1\nm = 3\nn = 4\ns = 3\nmu = 0.1\n"
           "alpha = 0,0.05,-0.02\nbeta = 0,0.03,-0.04,0.02\nsigma = 150\n"
           "exposure = loguniform,100,10000\n";
  }
  run_subcommand({"simulate", sim_cfg.string(), (root / "simA").string(), std::nullopt});
  run_subcommand({"simulate", sim_cfg.string(), (root / "simB").string(), std::nullopt});
  bool ok = slurp(root / "simA" / "panel.csv") == slurp(root / "simB" / "panel.csv");

  const fs::path fit_cfg = root / "fit.ini";
  {
    std::ofstream out(fit_cfg);
    out << "[run]\nseed = 6\n[data]\npanel = " << (root / "simA" / "panel.csv").string()
        << "\n[fit]\nmodel = M1\n[gibbs]\niterations = 1500\nburn_in = 300\n";
  }
  run_subcommand({"fit", fit_cfg.string(), (root / "fitA").string(), std::nullopt});
  run_subcommand({"fit", fit_cfg.string(), (root / "fitB").string(), std::nullopt});
  ok = ok && slurp(root / "fitA" / "chain.csv") == slurp(root / "fitB" / "chain.csv");

  const fs::path rj_cfg = root / "rj.ini";
  {
    std::ofstream out(rj_cfg);
    out << "[run]\nseed = 14\n[data]\npanel = " << (root / "simA" / "panel.csv").string()
        << "\n[pilot]\niterations = 1000\nburn_in = 200\n"
           "[rj]\niterations = 3000\nburn_in = 500\n";
  }
  run_subcommand({"rj", rj_cfg.string(), (root / "rjA").string(), std::nullopt});
  run_subcommand({"rj", rj_cfg.string(), (root / "rjB").string(), std::nullopt});
  ok = ok && slurp(root / "rjA" / "chain.csv") == slurp(root / "rjB" / "chain.csv");
  ok = ok && slurp(root / "rjA" / "probs.csv") == slurp(root / "rjB" / "probs.csv");

  // Different seed must change the draws.
  run_subcommand({"fit", fit_cfg.string(), (root / "fitC").string(), 7});
  ok = ok && slurp(root / "fitA" / "chain.csv") != slurp(root / "fitC" / "chain.csv");

  fs::remove_all(root);
  report(8, "identical config and seed reproduce chain files byte for byte", ok, "");
}

}  // namespace

int main() {
  criterion_recovers_generator();
  criterion_oracle_equivalence();
  criterion_conjugacy();
  criterion_proposal_exactness();
  criterion_hessians();
  criterion_dic();
  dataset_gated_rj_checks();
  criterion_diagnostics();
  criterion_reproducibility();
  if (g_failures == 0) {
    std::printf("acceptance: all criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) failed\n", g_failures);
  return 1;
}
