#include "credrj/rj.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "credrj/densities.hpp"

namespace credrj {

void validate_rj_config(const RjConfig& config) {
  for (int i = 0; i < 3; ++i) {
    double row = 0.0;
    for (int j = 0; j < 3; ++j) {
      if (config.move(i, j) < 0.0)
        throw std::invalid_argument("RjConfig: move matrix entries must be >= 0");
      row += config.move(i, j);
    }
    if (std::abs(row - 1.0) > 1e-12)
      throw std::invalid_argument("RjConfig: move matrix rows must sum to 1");
  }
  if (config.burn_in > config.iterations)
    throw std::invalid_argument("RjConfig: burn_in must not exceed iterations");
  if (config.within_model_sweeps < 1)
    throw std::invalid_argument("RjConfig: within_model_sweeps must be >= 1");
  if (config.initial_model == ModelId::K_centred)
    throw std::invalid_argument("RjConfig: jump chain runs over the corner-point models");
}

PilotSummary summarize_pilot(ModelId model, const Chain& chain) {
  if (chain.empty()) throw std::invalid_argument("summarize_pilot: empty pilot chain");
  const std::size_t m = chain.front().params.alpha.size();
  const std::size_t n = chain.front().params.beta.size();
  PilotSummary out;
  out.model = model;
  out.posterior_mean.alpha.assign(m, 0.0);
  out.posterior_mean.beta.assign(n, 0.0);
  out.posterior_mean.mu = 0.0;
  out.posterior_mean.sigma = 0.0;
  std::vector<double> sigma_draws;
  sigma_draws.reserve(chain.size());
  for (const auto& rec : chain) {
    if (rec.model != model)
      throw std::invalid_argument("summarize_pilot: mixed-model pilot chain");
    out.posterior_mean.mu += rec.params.mu;
    out.posterior_mean.sigma += rec.params.sigma;
    for (std::size_t i = 0; i < m; ++i) out.posterior_mean.alpha[i] += rec.params.alpha[i];
    for (std::size_t j = 0; j < n; ++j) out.posterior_mean.beta[j] += rec.params.beta[j];
    sigma_draws.push_back(rec.params.sigma);
  }
  const double inv = 1.0 / static_cast<double>(chain.size());
  out.posterior_mean.mu *= inv;
  out.posterior_mean.sigma *= inv;
  for (double& x : out.posterior_mean.alpha) x *= inv;
  for (double& x : out.posterior_mean.beta) x *= inv;
  out.center.model = model;
  out.center.block = pack_block(model, out.posterior_mean);
  out.sigma_proposal = fit_sigma_proposal(sigma_draws);
  return out;
}

std::array<PilotSummary, 3> run_pilots(const LossPanel& panel, const PriorConfig& priors,
                                       const GibbsConfig& config) {
  std::array<PilotSummary, 3> out;
  for (int k = 0; k < 3; ++k) {
    const ModelId model = model_from_index(k);
    GibbsConfig pilot = config;
    pilot.seed = derive_seed(config.seed, static_cast<std::uint64_t>(k));
    out[static_cast<std::size_t>(k)] = summarize_pilot(model, gibbs_run(panel, model, priors, pilot));
  }
  return out;
}

ModelProposalSet make_proposal_set(const std::array<PilotSummary, 3>& pilots,
                                   ProposalOrder order) {
  ModelProposalSet set;
  set.order = order;
  for (int k = 0; k < 3; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    if (pilots[idx].model != model_from_index(k))
      throw std::invalid_argument("make_proposal_set: pilots must be ordered M1, M2, M3");
    set.centers[idx] = pilots[idx].center;
    set.sigma_proposals[idx] = pilots[idx].sigma_proposal;
  }
  return set;
}

double log_accept(const LossPanel& panel, const PriorConfig& priors, const RjConfig& rj,
                  const ModelProposalSet& props, ModelId from_model,
                  const ParamVector& from_params, ModelId to_model,
                  const ParamVector& to_params) {
  if (from_model == to_model)
    throw std::invalid_argument("log_accept: between-model moves only");
  const auto from = static_cast<std::size_t>(model_index(from_model));
  const auto to = static_cast<std::size_t>(model_index(to_model));

  const double post =
      log_posterior(panel, to_model, to_params, priors) -
      log_posterior(panel, from_model, from_params, priors);
  const double prior_odds = priors.model_log_prior[to] - priors.model_log_prior[from];
  const double move_odds = std::log(rj.move(static_cast<Eigen::Index>(to),
                                            static_cast<Eigen::Index>(from))) -
                           std::log(rj.move(static_cast<Eigen::Index>(from),
                                            static_cast<Eigen::Index>(to)));

  const GaussianProposal q_to = build_proposal(to_model, panel, priors, to_params.sigma,
                                               props.centers[to], props.order);
  const GaussianProposal q_from = build_proposal(from_model, panel, priors, from_params.sigma,
                                                 props.centers[from], props.order);
  const double proposal_odds =
      q_from.log_density(pack_block(from_model, from_params)) +
      props.sigma_proposals[from].log_density(from_params.sigma) -
      q_to.log_density(pack_block(to_model, to_params)) -
      props.sigma_proposals[to].log_density(to_params.sigma);

  return post + prior_odds + move_odds + proposal_odds;
}

RjRun rj_run(const LossPanel& panel, const PriorConfig& priors, const RjConfig& rj,
             const std::array<PilotSummary, 3>& pilots) {
  validate_rj_config(rj);
  const ModelProposalSet props = make_proposal_set(pilots, rj.order);
  const std::vector<std::string> scan{"sigma", "mu", "alpha", "beta"};
  const std::size_t m = panel.rows();
  const std::size_t n = panel.cols();

  ChainRng rng(rj.seed);
  int current = model_index(rj.initial_model);
  ParamVector params = pilots[static_cast<std::size_t>(current)].posterior_mean;
  validate_params(panel, rj.initial_model, params);

  RjRun run;
  if (rj.iterations > rj.burn_in) run.chain.reserve(rj.iterations - rj.burn_in);
  for (std::uint64_t iter = 0; iter < rj.iterations; ++iter) {
    const ModelId current_model = model_from_index(current);
    for (std::uint64_t sweep = 0; sweep < rj.within_model_sweeps; ++sweep)
      gibbs_sweep(panel, current_model, priors, params, rng, scan);

    std::array<double, 3> row{rj.move(current, 0), rj.move(current, 1), rj.move(current, 2)};
    const int target = rng.categorical(row, 3);
    if (target != current) {
      ++run.attempted_jumps;
      const ModelId to_model = model_from_index(target);
      const auto t = static_cast<std::size_t>(target);
      const double sigma_new = props.sigma_proposals[t].sample(rng);
      const GaussianProposal q =
          build_proposal(to_model, panel, priors, sigma_new, props.centers[t], props.order);
      const ParamVector proposed = unpack_block(to_model, q.sample(rng), m, n, sigma_new);
      const double log_a =
          log_accept(panel, priors, rj, props, current_model, params, to_model, proposed);
      if (!std::isfinite(log_a)) {
        ++run.nonfinite_rejects;
      } else if (std::log(rng.uniform()) < log_a) {
        ++run.accepted_jumps;
        current = target;
        params = proposed;
      }
    }

    if (iter < rj.burn_in) continue;
    ChainRecord rec;
    rec.iteration = iter;
    rec.model = model_from_index(current);
    rec.params = params;
    rec.log_post = log_posterior(panel, rec.model, params, priors);
    rec.deviance = deviance(panel, rec.model, params);
    run.chain.push_back(std::move(rec));
  }
  return run;
}

ModelProbs estimate_model_probs(const Chain& chain,
                                const std::array<double, 3>& log_prior_offsets) {
  if (chain.empty()) throw std::invalid_argument("estimate_model_probs: empty chain");
  ModelProbs out;
  for (const auto& rec : chain) ++out.visits[static_cast<std::size_t>(model_index(rec.model))];
  const double total = static_cast<double>(chain.size());
  // Correction in log space: log w_k = log raw_k - offset_k, normalized by
  // log-sum-exp so arbitrarily large offsets cannot overflow.
  std::array<double, 3> log_w{};
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < 3; ++k) {
    out.raw[k] = static_cast<double>(out.visits[k]) / total;
    log_w[k] = out.visits[k] == 0 ? -std::numeric_limits<double>::infinity()
                                  : std::log(out.raw[k]) - log_prior_offsets[k];
    best = std::max(best, log_w[k]);
  }
  if (std::isfinite(best)) {
    double norm = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
      out.corrected[k] = std::exp(log_w[k] - best);
      norm += out.corrected[k];
    }
    for (double& x : out.corrected) x /= norm;
  }
  return out;
}

TransitionMatrix empirical_transition_matrix(const Chain& chain) {
  TransitionMatrix out;
  Eigen::Matrix3d counts = Eigen::Matrix3d::Zero();
  for (std::size_t r = 1; r < chain.size(); ++r) {
    const int from = model_index(chain[r - 1].model);
    const int to = model_index(chain[r].model);
    counts(from, to) += 1.0;
  }
  for (int i = 0; i < 3; ++i) {
    const double row = counts.row(i).sum();
    if (row > 0.0) {
      out.p.row(i) = counts.row(i) / row;
      out.row_defined[static_cast<std::size_t>(i)] = true;
    }
  }
  return out;
}

double model_averaged_predict(const std::array<const Chain*, 3>& chains,
                              const std::array<double, 3>& probs, std::size_t i, std::size_t j) {
  double out = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    if (probs[k] == 0.0) continue;
    const Chain* chain = chains[k];
    if (chain == nullptr || chain->empty())
      throw std::invalid_argument("model_averaged_predict: weighted model has no chain draws");
    double mean_fit = 0.0;
    for (const auto& rec : *chain) mean_fit += predictive_mean(rec.model, rec.params, i, j);
    out += probs[k] * mean_fit / static_cast<double>(chain->size());
  }
  return out;
}

}  // namespace credrj
