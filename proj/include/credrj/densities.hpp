#ifndef CREDRJ_DENSITIES_HPP
#define CREDRJ_DENSITIES_HPP

#include <cstddef>

#include "credrj/model.hpp"
#include "credrj/panel.hpp"

namespace credrj {

/// log N(x | mean, 1/precision)
double log_normal_pdf(double x, double mean, double precision);

/// log Gamma(x | shape, rate); throws std::domain_error for x <= 0.
double log_gamma_pdf(double x, double shape, double rate);

/// Sum over active cells of 0.5*log(sigma*E/(2*pi)) - 0.5*sigma*E*(R - fit)^2.
double log_likelihood(const LossPanel& panel, ModelId model, const ParamVector& params);

/// Log prior density over the model's free parameters only.
double log_prior(ModelId model, const ParamVector& params, const PriorConfig& priors);

/// Unnormalized: log_likelihood + log_prior. The panel is needed to pin
/// dimensions; the prior does not depend on the data.
double log_posterior(const LossPanel& panel, ModelId model, const ParamVector& params,
                     const PriorConfig& priors);

/// D(theta) = -2 * log_likelihood (standardizing term taken as 1, which
/// cancels in effective-parameter counts and in model differences).
double deviance(const LossPanel& panel, ModelId model, const ParamVector& params);

/// Mean of a new observation in cell (i, j); throws on out-of-range indices.
double predictive_mean(ModelId model, const ParamVector& params, std::size_t i, std::size_t j);

/// Observation-noise variance of a new draw with the given exposure;
/// parameter uncertainty is handled by averaging over chain draws upstream.
double predictive_noise_variance(const ParamVector& params, double exposure);

}  // namespace credrj

#endif
