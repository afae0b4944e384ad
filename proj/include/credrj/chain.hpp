#ifndef CREDRJ_CHAIN_HPP
#define CREDRJ_CHAIN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "credrj/model.hpp"

namespace credrj {

struct ChainRecord {
  std::uint64_t iteration = 0;
  ModelId model = ModelId::M1_full;
  ParamVector params;
  double log_post = 0.0;
  double deviance = 0.0;
};

using Chain = std::vector<ChainRecord>;

struct GibbsConfig {
  std::uint64_t iterations = 10000;
  std::uint64_t burn_in = 1000;  // defaults to 10% of iterations at the CLI
  std::uint64_t thin = 1;
  std::uint64_t seed = 1;
  // Deterministic scan; tau blocks apply to the centred model only and are
  // skipped elsewhere.
  std::vector<std::string> scan_order{"sigma", "mu", "alpha", "beta", "tau_alpha", "tau_beta"};
};

void validate_gibbs_config(const GibbsConfig& config);

}  // namespace credrj

#endif
