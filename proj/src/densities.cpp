#include "credrj/densities.hpp"

#include <cmath>
#include <stdexcept>

namespace credrj {

namespace {
constexpr double kLog2Pi = 1.8378770664093454836;
}

double log_normal_pdf(double x, double mean, double precision) {
  if (!(precision > 0.0)) throw std::domain_error("log_normal_pdf: precision must be > 0");
  const double d = x - mean;
  return 0.5 * (std::log(precision) - kLog2Pi) - 0.5 * precision * d * d;
}

double log_gamma_pdf(double x, double shape, double rate) {
  if (!(shape > 0.0) || !(rate > 0.0))
    throw std::domain_error("log_gamma_pdf: shape and rate must be > 0");
  if (!(x > 0.0)) throw std::domain_error("log_gamma_pdf: x must be > 0");
  return shape * std::log(rate) - std::lgamma(shape) + (shape - 1.0) * std::log(x) - rate * x;
}

double log_likelihood(const LossPanel& panel, ModelId model, const ParamVector& params) {
  validate_params(panel, model, params);
  const double sigma = params.sigma;
  // Normalizer from cached sums; the quadratic term per cell so that exact
  // fits contribute exactly zero.
  double quad = 0.0;
  for (std::size_t i = 0; i < panel.rows(); ++i) {
    for (std::size_t j = 0; j < panel.cols(); ++j) {
      if (panel.cell_count(i, j) == 0) continue;
      const double fit = fit_value(model, params, i, j);
      for (std::size_t t = 0; t < panel.reps(); ++t) {
        if (!panel.active(i, j, t)) continue;
        const double r = panel.ratio(i, j, t) - fit;
        quad += panel.exposure(i, j, t) * r * r;
      }
    }
  }
  const double n_active = static_cast<double>(panel.active_count());
  return 0.5 * (n_active * (std::log(sigma) - kLog2Pi) + panel.total_sum_log_e()) -
         0.5 * sigma * quad;
}

double log_prior(ModelId model, const ParamVector& params, const PriorConfig& priors) {
  const std::size_t m = params.alpha.size();
  const std::size_t n = params.beta.size();
  double lp = 0.0;
  switch (model) {
    case ModelId::K_centred: {
      if (!(params.tau_alpha > 0.0) || !(params.tau_beta > 0.0))
        throw std::domain_error("log_prior: centred model needs positive tau's");
      for (std::size_t i = 0; i < m; ++i)
        lp += log_normal_pdf(params.alpha[i], 0.5 * params.mu, params.tau_alpha);
      for (std::size_t j = 0; j < n; ++j)
        lp += log_normal_pdf(params.beta[j], 0.5 * params.mu, params.tau_beta);
      lp += log_normal_pdf(params.mu, 0.0, priors.c);
      lp += log_gamma_pdf(params.sigma, priors.a, priors.b);
      lp += log_gamma_pdf(params.tau_alpha, priors.a, priors.b);
      lp += log_gamma_pdf(params.tau_beta, priors.a, priors.b);
      return lp;
    }
    case ModelId::M1_full:
      for (std::size_t i = 1; i < m; ++i)
        lp += log_normal_pdf(params.alpha[i], 0.0, priors.tau_alpha0);
      for (std::size_t j = 1; j < n; ++j)
        lp += log_normal_pdf(params.beta[j], 0.0, priors.tau_beta0);
      break;
    case ModelId::M2_state_only:
      for (std::size_t i = 1; i < m; ++i)
        lp += log_normal_pdf(params.alpha[i], 0.0, priors.tau_alpha0);
      break;
    case ModelId::M3_occupation_only:
      for (std::size_t j = 1; j < n; ++j)
        lp += log_normal_pdf(params.beta[j], 0.0, priors.tau_beta0);
      break;
  }
  lp += log_normal_pdf(params.mu, 0.0, priors.tau_mu);
  lp += log_gamma_pdf(params.sigma, priors.a, priors.b);
  return lp;
}

double log_posterior(const LossPanel& panel, ModelId model, const ParamVector& params,
                     const PriorConfig& priors) {
  return log_likelihood(panel, model, params) + log_prior(model, params, priors);
}

double deviance(const LossPanel& panel, ModelId model, const ParamVector& params) {
  return -2.0 * log_likelihood(panel, model, params);
}

double predictive_mean(ModelId model, const ParamVector& params, std::size_t i, std::size_t j) {
  if (i >= params.alpha.size() || j >= params.beta.size())
    throw std::out_of_range("predictive_mean: cell index out of range");
  return fit_value(model, params, i, j);
}

double predictive_noise_variance(const ParamVector& params, double exposure) {
  if (!(params.sigma > 0.0)) throw std::domain_error("predictive_noise_variance: sigma must be > 0");
  if (!(exposure > 0.0))
    throw std::domain_error("predictive_noise_variance: exposure must be > 0");
  return 1.0 / (params.sigma * exposure);
}

}  // namespace credrj
