#ifndef CREDRJ_RJ_HPP
#define CREDRJ_RJ_HPP

#include <Eigen/Dense>
#include <array>
#include <cstdint>

#include "credrj/chain.hpp"
#include "credrj/gibbs.hpp"
#include "credrj/model.hpp"
#include "credrj/panel.hpp"
#include "credrj/proposal.hpp"

namespace credrj {

struct RjConfig {
  // Row-stochastic move matrix over (M1, M2, M3); self-moves skip the jump
  // attempt for that iteration.
  Eigen::Matrix3d move = (Eigen::Matrix3d() << 0.0, 0.5, 0.5,
                                               0.5, 0.0, 0.5,
                                               0.5, 0.5, 0.0).finished();
  std::uint64_t iterations = 20000;
  std::uint64_t burn_in = 2000;
  std::uint64_t seed = 1;
  std::uint64_t within_model_sweeps = 1;
  ModelId initial_model = ModelId::M1_full;
  ProposalOrder order = ProposalOrder::second;
};

void validate_rj_config(const RjConfig& config);

/// Per-model proposal ingredients distilled from a pilot Gibbs run: the
/// posterior-mean centering point, a moment-matched gamma for sigma, and
/// the full posterior mean used as the jump chain's starting state.
struct PilotSummary {
  ModelId model = ModelId::M1_full;
  CenteringPoint center;
  SigmaProposal sigma_proposal;
  ParamVector posterior_mean;
};

PilotSummary summarize_pilot(ModelId model, const Chain& chain);

/// Runs one Gibbs pilot per corner model with seeds derived from
/// config.seed; config.iterations/burn_in apply to each pilot.
std::array<PilotSummary, 3> run_pilots(const LossPanel& panel, const PriorConfig& priors,
                                       const GibbsConfig& config);

struct ModelProposalSet {
  std::array<CenteringPoint, 3> centers;
  std::array<SigmaProposal, 3> sigma_proposals;
  ProposalOrder order = ProposalOrder::second;
};

ModelProposalSet make_proposal_set(const std::array<PilotSummary, 3>& pilots,
                                   ProposalOrder order = ProposalOrder::second);

/// Log acceptance ratio of a between-model move (identity dimension map,
/// Jacobian 1): posterior ratio + model prior odds + move-probability ratio
/// + proposal density ratio, with the sigma draw and the block draw each
/// contributing a proposal term.
double log_accept(const LossPanel& panel, const PriorConfig& priors, const RjConfig& rj,
                  const ModelProposalSet& props, ModelId from_model,
                  const ParamVector& from_params, ModelId to_model,
                  const ParamVector& to_params);

struct RjRun {
  Chain chain;
  std::uint64_t attempted_jumps = 0;
  std::uint64_t accepted_jumps = 0;
  std::uint64_t nonfinite_rejects = 0;
};

/// Alternates within-model Gibbs sweeps with one between-model attempt per
/// iteration, recording the visited model each iteration after burn-in.
RjRun rj_run(const LossPanel& panel, const PriorConfig& priors, const RjConfig& rj,
             const std::array<PilotSummary, 3>& pilots);

struct ModelProbs {
  std::array<std::uint64_t, 3> visits{0, 0, 0};
  std::array<double, 3> raw{0.0, 0.0, 0.0};
  // Visit odds with the prior offsets divided back out; equals raw when all
  // offsets agree.
  std::array<double, 3> corrected{0.0, 0.0, 0.0};
};

ModelProbs estimate_model_probs(const Chain& chain, const std::array<double, 3>& log_prior_offsets);

struct TransitionMatrix {
  Eigen::Matrix3d p = Eigen::Matrix3d::Zero();
  std::array<bool, 3> row_defined{false, false, false};
};

/// Row-normalized transition counts of the model-indicator sequence; rows
/// for never-visited models are flagged undefined.
TransitionMatrix empirical_transition_matrix(const Chain& chain);

/// Probability-weighted average of the per-model chain-averaged fits for
/// cell (i, j). Chains with zero weight may be empty.
double model_averaged_predict(const std::array<const Chain*, 3>& chains,
                              const std::array<double, 3>& probs, std::size_t i, std::size_t j);

}  // namespace credrj

#endif
