#ifndef CREDRJ_DIC_HPP
#define CREDRJ_DIC_HPP

#include <vector>

#include "credrj/chain.hpp"
#include "credrj/model.hpp"
#include "credrj/panel.hpp"

namespace credrj {

struct DicReport {
  ModelId model = ModelId::M1_full;
  double mean_deviance = 0.0;     // average of the recorded deviances
  double deviance_at_mean = 0.0;  // deviance at the central parameter value
  double p_d = 0.0;               // effective number of parameters
  double dic = 0.0;               // deviance_at_mean + 2 * p_d
};

enum class CentralTendency { mean, median };

/// Central value is coordinate-wise over (mu, alpha, beta, sigma[, tau's]).
/// Throws on an empty or mixed-model chain.
DicReport compute_dic(const Chain& chain, const LossPanel& panel, ModelId model,
                      CentralTendency central = CentralTendency::mean);

/// Ascending DIC; ties broken by smaller p_d, then by model index.
std::vector<DicReport> rank_models(std::vector<DicReport> reports);

}  // namespace credrj

#endif
