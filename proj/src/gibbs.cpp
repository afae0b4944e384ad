#include "credrj/gibbs.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "credrj/conditionals.hpp"
#include "credrj/densities.hpp"

namespace credrj {

void validate_gibbs_config(const GibbsConfig& config) {
  if (config.burn_in > config.iterations)
    throw std::invalid_argument("GibbsConfig: burn_in must not exceed iterations");
  if (config.thin < 1) throw std::invalid_argument("GibbsConfig: thin must be >= 1");
  for (const auto& block : config.scan_order) {
    if (block != "sigma" && block != "mu" && block != "alpha" && block != "beta" &&
        block != "tau_alpha" && block != "tau_beta")
      throw std::invalid_argument("GibbsConfig: unknown scan block '" + block + "'");
  }
}

ParamVector default_init(const LossPanel& panel, ModelId model) {
  ParamVector p;
  p.alpha.assign(panel.rows(), 0.0);
  p.beta.assign(panel.cols(), 0.0);
  const double total_e = panel.total_sum_e();
  const double grand_mean = total_e > 0.0 ? panel.total_sum_er() / total_e : 0.0;
  if (model == ModelId::K_centred) {
    p.mu = grand_mean;
    p.alpha.assign(panel.rows(), 0.5 * grand_mean);
    p.beta.assign(panel.cols(), 0.5 * grand_mean);
    p.tau_alpha = 1.0;
    p.tau_beta = 1.0;
  } else {
    p.mu = grand_mean;
  }
  // Method-of-moments precision scale: E-weighted residual variance about
  // the grand mean is 1/sigma.
  double rss = 0.0;
  for (std::size_t i = 0; i < panel.rows(); ++i)
    for (std::size_t j = 0; j < panel.cols(); ++j)
      for (std::size_t t = 0; t < panel.reps(); ++t)
        if (panel.active(i, j, t)) {
          const double r = panel.ratio(i, j, t) - grand_mean;
          rss += panel.exposure(i, j, t) * r * r;
        }
  p.sigma = rss > 0.0 ? static_cast<double>(panel.active_count()) / rss : 1.0;
  return p;
}

void gibbs_sweep(const LossPanel& panel, ModelId model, const PriorConfig& priors,
                 ParamVector& params, ChainRng& rng,
                 const std::vector<std::string>& scan_order) {
  const bool centred = model == ModelId::K_centred;
  const bool has_alpha = model != ModelId::M3_occupation_only;
  const bool has_beta = model != ModelId::M2_state_only;
  for (const auto& block : scan_order) {
    if (block == "sigma") {
      const GammaParams g = cond_sigma(panel, model, params, priors.a, priors.b);
      params.sigma = rng.gamma(g.shape, g.rate);
    } else if (block == "mu") {
      const NormalParams d =
          centred ? cond_mu_centred(params.alpha, params.beta, params.tau_alpha, params.tau_beta,
                                    priors.c)
                  : cond_mu_noncentred(panel, params.alpha, params.beta, params.sigma,
                                       priors.tau_mu);
      params.mu = rng.normal(d.mean, d.variance);
    } else if (block == "alpha") {
      if (centred) {
        for (std::size_t i = 0; i < panel.rows(); ++i) {
          const NormalParams d = cond_alpha_centred(panel, i, params.mu, params.beta,
                                                    params.tau_alpha, params.sigma);
          params.alpha[i] = rng.normal(d.mean, d.variance);
        }
      } else if (has_alpha) {
        const MvnDiagParams d =
            cond_alpha_block(panel, params.mu, params.beta, params.sigma, priors.tau_alpha0);
        for (std::size_t i = 1; i < panel.rows(); ++i)
          params.alpha[i] = rng.normal(d.mean[i - 1], 1.0 / d.precision_diag[i - 1]);
      }
    } else if (block == "beta") {
      if (centred) {
        for (std::size_t j = 0; j < panel.cols(); ++j) {
          const NormalParams d = cond_beta_centred(panel, j, params.mu, params.alpha,
                                                   params.tau_beta, params.sigma);
          params.beta[j] = rng.normal(d.mean, d.variance);
        }
      } else if (has_beta) {
        const MvnDiagParams d =
            cond_beta_block(panel, params.mu, params.alpha, params.sigma, priors.tau_beta0);
        for (std::size_t j = 1; j < panel.cols(); ++j)
          params.beta[j] = rng.normal(d.mean[j - 1], 1.0 / d.precision_diag[j - 1]);
      }
    } else if (block == "tau_alpha") {
      if (centred) {
        const GammaParams g = cond_tau_alpha(params.alpha, params.mu, priors.a, priors.b);
        params.tau_alpha = rng.gamma(g.shape, g.rate);
      }
    } else if (block == "tau_beta") {
      if (centred) {
        const GammaParams g = cond_tau_beta(params.beta, params.mu, priors.a, priors.b);
        params.tau_beta = rng.gamma(g.shape, g.rate);
      }
    }
  }
}

namespace {

std::string state_dump(std::uint64_t iteration, ModelId model, const ParamVector& p) {
  std::ostringstream os;
  os << "iteration=" << iteration << " model=" << model_name(model) << " mu=" << p.mu
     << " sigma=" << p.sigma;
  if (p.tau_alpha > 0.0) os << " tau_alpha=" << p.tau_alpha << " tau_beta=" << p.tau_beta;
  os << " alpha=[";
  for (std::size_t i = 0; i < p.alpha.size(); ++i) os << (i ? "," : "") << p.alpha[i];
  os << "] beta=[";
  for (std::size_t j = 0; j < p.beta.size(); ++j) os << (j ? "," : "") << p.beta[j];
  os << "]";
  return os.str();
}

}  // namespace

Chain gibbs_run(const LossPanel& panel, ModelId model, const PriorConfig& priors,
                const GibbsConfig& config, ParamVector init) {
  validate_gibbs_config(config);
  validate_params(panel, model, init);
  ChainRng rng(config.seed);
  ParamVector params = std::move(init);
  Chain chain;
  if (config.iterations > config.burn_in)
    chain.reserve((config.iterations - config.burn_in + config.thin - 1) / config.thin);
  for (std::uint64_t iter = 0; iter < config.iterations; ++iter) {
    gibbs_sweep(panel, model, priors, params, rng, config.scan_order);
    if (iter < config.burn_in) continue;
    if ((iter - config.burn_in) % config.thin != 0) continue;
    ChainRecord rec;
    rec.iteration = iter;
    rec.model = model;
    rec.params = params;
    rec.log_post = log_posterior(panel, model, params, priors);
    rec.deviance = deviance(panel, model, params);
    if (!std::isfinite(rec.log_post) || !std::isfinite(rec.deviance))
      throw std::runtime_error("gibbs_run: non-finite density; " +
                               state_dump(iter, model, params));
    chain.push_back(std::move(rec));
  }
  return chain;
}

Chain gibbs_run(const LossPanel& panel, ModelId model, const PriorConfig& priors,
                const GibbsConfig& config) {
  return gibbs_run(panel, model, priors, config, default_init(panel, model));
}

}  // namespace credrj
