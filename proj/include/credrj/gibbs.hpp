#ifndef CREDRJ_GIBBS_HPP
#define CREDRJ_GIBBS_HPP

#include "credrj/chain.hpp"
#include "credrj/model.hpp"
#include "credrj/panel.hpp"
#include "credrj/rng.hpp"

namespace credrj {

/// Deterministic starting point derived from the panel: exposure-weighted
/// grand mean for the level, zero effects, method-of-moments sigma.
ParamVector default_init(const LossPanel& panel, ModelId model);

/// One deterministic-scan sweep over the model's blocks, in scan order,
/// mutating params in place.
void gibbs_sweep(const LossPanel& panel, ModelId model, const PriorConfig& priors,
                 ParamVector& params, ChainRng& rng,
                 const std::vector<std::string>& scan_order);

/// Runs config.iterations sweeps from the default (or given) start and
/// returns the post-burn-in, thinned draws with log-posterior and deviance
/// attached. Throws std::runtime_error with a state dump if a non-finite
/// density is encountered.
Chain gibbs_run(const LossPanel& panel, ModelId model, const PriorConfig& priors,
                const GibbsConfig& config);
Chain gibbs_run(const LossPanel& panel, ModelId model, const PriorConfig& priors,
                const GibbsConfig& config, ParamVector init);

}  // namespace credrj

#endif
