#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "credrj/densities.hpp"
#include "credrj/io.hpp"
#include "credrj/dic.hpp"
#include "credrj/rj.hpp"
#include "test_support.hpp"

using namespace credrj;
using namespace credrj::testing;

namespace {

// Small panel with visible state and occupation structure; exposures large
// enough for informative posteriors but small enough that no model dominates
// completely.
SimulatedPanel interior_panel(unsigned seed) {
  ParamVector truth;
  truth.mu = 0.1;
  truth.alpha = {0.0, 0.004};
  truth.beta = {0.0, 0.006};
  truth.sigma = 60.0;
  ExposureLaw law;
  law.lo = 50.0;
  law.hi = 200.0;
  return simulate(ModelId::M1_full, truth, 2, 2, 2, law, seed);
}

std::array<PilotSummary, 3> pilots_for(const LossPanel& panel, const PriorConfig& priors,
                                       std::uint64_t seed) {
  GibbsConfig cfg;
  cfg.iterations = 4000;
  cfg.burn_in = 1000;
  cfg.seed = seed;
  return run_pilots(panel, priors, cfg);
}

}  // namespace

TEST_CASE("rj config validation") {
  RjConfig bad;
  bad.move(0, 0) = 0.4;  // row no longer sums to 1
  CHECK_THROWS_AS(validate_rj_config(bad), std::invalid_argument);
  RjConfig neg;
  neg.move << 1.2, -0.2, 0.0, 0.5, 0.0, 0.5, 0.5, 0.5, 0.0;
  CHECK_THROWS_AS(validate_rj_config(neg), std::invalid_argument);
  RjConfig ok;
  CHECK_NOTHROW(validate_rj_config(ok));
}

TEST_CASE("log_accept rejects same-model moves and is antisymmetric") {
  const SimulatedPanel sim = interior_panel(1);
  PriorConfig priors;
  priors.model_log_prior = {0.3, -0.1, 0.2};
  const auto pilots = pilots_for(sim.panel, priors, 11);
  const auto props = make_proposal_set(pilots);
  RjConfig rj;

  const ParamVector x = pilots[0].posterior_mean;  // an M1 state
  const ParamVector y = pilots[1].posterior_mean;  // an M2 state
  CHECK_THROWS_AS(log_accept(sim.panel, priors, rj, props, ModelId::M1_full, x,
                             ModelId::M1_full, x),
                  std::invalid_argument);
  const double forward =
      log_accept(sim.panel, priors, rj, props, ModelId::M1_full, x, ModelId::M2_state_only, y);
  const double backward =
      log_accept(sim.panel, priors, rj, props, ModelId::M2_state_only, y, ModelId::M1_full, x);
  CHECK(forward == doctest::Approx(-backward).epsilon(1e-12));
}

TEST_CASE("log_accept shifts one-for-one with the prior offsets") {
  const SimulatedPanel sim = interior_panel(2);
  PriorConfig priors;
  const auto pilots = pilots_for(sim.panel, priors, 13);
  const auto props = make_proposal_set(pilots);
  RjConfig rj;
  const ParamVector x = pilots[0].posterior_mean;
  const ParamVector y = pilots[2].posterior_mean;
  const double base =
      log_accept(sim.panel, priors, rj, props, ModelId::M1_full, x,
                 ModelId::M3_occupation_only, y);
  PriorConfig shifted = priors;
  shifted.model_log_prior = {0.0, 0.0, 2.5};
  const double moved =
      log_accept(sim.panel, shifted, rj, props, ModelId::M1_full, x,
                 ModelId::M3_occupation_only, y);
  CHECK(moved - base == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("acceptance ratio does not depend on the proposed block") {
  // With exact second-order proposals the block density cancels against the
  // posterior, so redrawing the block at fixed (sigma, sigma') leaves log A
  // unchanged. This is the keystone property of the proposal construction.
  const SimulatedPanel sim = interior_panel(3);
  PriorConfig priors;
  const auto pilots = pilots_for(sim.panel, priors, 17);
  const auto props = make_proposal_set(pilots);
  RjConfig rj;
  ChainRng rng(555);

  const ParamVector from = pilots[0].posterior_mean;  // M1 state, fixed sigma
  const double sigma_new = pilots[1].posterior_mean.sigma;
  const GaussianProposal q = build_proposal(ModelId::M2_state_only, sim.panel, priors,
                                            sigma_new, props.centers[1]);
  double first = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    const ParamVector to = unpack_block(ModelId::M2_state_only, q.sample(rng), 2, 2, sigma_new);
    const double log_a = log_accept(sim.panel, priors, rj, props, ModelId::M1_full, from,
                                    ModelId::M2_state_only, to);
    if (rep == 0)
      first = log_a;
    else
      CHECK(std::abs(log_a - first) < 1e-8);
  }
}

TEST_CASE("zero off-diagonal move matrix never leaves the initial model") {
  const SimulatedPanel sim = interior_panel(4);
  PriorConfig priors;
  const auto pilots = pilots_for(sim.panel, priors, 19);
  RjConfig rj;
  rj.move = Eigen::Matrix3d::Identity();
  rj.iterations = 500;
  rj.burn_in = 0;
  rj.seed = 23;
  rj.initial_model = ModelId::M2_state_only;
  const RjRun run = rj_run(sim.panel, priors, rj, pilots);
  CHECK(run.attempted_jumps == 0);
  for (const auto& rec : run.chain) CHECK(rec.model == ModelId::M2_state_only);
  const ModelProbs probs = estimate_model_probs(run.chain, priors.model_log_prior);
  CHECK(probs.raw[1] == 1.0);
  CHECK(probs.corrected[1] == 1.0);
}

TEST_CASE("rj_run is deterministic given the seed") {
  const SimulatedPanel sim = interior_panel(5);
  PriorConfig priors;
  const auto pilots = pilots_for(sim.panel, priors, 29);
  RjConfig rj;
  rj.iterations = 2000;
  rj.burn_in = 200;
  rj.seed = 31;
  const RjRun a = rj_run(sim.panel, priors, rj, pilots);
  const RjRun b = rj_run(sim.panel, priors, rj, pilots);
  REQUIRE(a.chain.size() == b.chain.size());
  CHECK(a.accepted_jumps == b.accepted_jumps);
  for (std::size_t r = 0; r < a.chain.size(); ++r) {
    CHECK(a.chain[r].model == b.chain[r].model);
    CHECK(a.chain[r].log_post == b.chain[r].log_post);
  }
}

TEST_CASE("model probability estimation and offset correction") {
  CHECK_THROWS_AS(estimate_model_probs({}, {0, 0, 0}), std::invalid_argument);
  Chain chain;
  for (int r = 0; r < 10; ++r) {
    ChainRecord rec;
    rec.model = ModelId::M1_full;
    chain.push_back(rec);
  }
  const ModelProbs all_m1 = estimate_model_probs(chain, {0, 0, 0});
  CHECK(all_m1.raw[0] == 1.0);
  CHECK(all_m1.raw[1] == 0.0);
  CHECK(all_m1.corrected[0] == 1.0);

  // Equal offsets leave corrected == raw; unequal offsets divide the visit
  // odds back out.
  chain.clear();
  for (int r = 0; r < 6; ++r) {
    ChainRecord rec;
    rec.model = r < 3 ? ModelId::M1_full : ModelId::M2_state_only;
    chain.push_back(rec);
  }
  const ModelProbs equal = estimate_model_probs(chain, {5, 5, 5});
  CHECK(equal.corrected[0] == doctest::Approx(equal.raw[0]));
  const ModelProbs skew = estimate_model_probs(chain, {std::log(4.0), 0.0, 0.0});
  // raw odds 1:1, correction divides model 1 visits by 4
  CHECK(skew.corrected[0] == doctest::Approx(0.2));
  CHECK(skew.corrected[1] == doctest::Approx(0.8));
}

TEST_CASE("empirical transition matrix") {
  Chain constant;
  for (int r = 0; r < 5; ++r) {
    ChainRecord rec;
    rec.model = ModelId::M3_occupation_only;
    constant.push_back(rec);
  }
  const TransitionMatrix t1 = empirical_transition_matrix(constant);
  CHECK(t1.row_defined[2]);
  CHECK_FALSE(t1.row_defined[0]);
  CHECK_FALSE(t1.row_defined[1]);
  CHECK(t1.p(2, 2) == doctest::Approx(1.0));

  Chain alternating;
  for (int r = 0; r < 8; ++r) {
    ChainRecord rec;
    rec.model = r % 2 == 0 ? ModelId::M1_full : ModelId::M2_state_only;
    alternating.push_back(rec);
  }
  const TransitionMatrix t2 = empirical_transition_matrix(alternating);
  CHECK(t2.p(0, 1) == doctest::Approx(1.0));
  CHECK(t2.p(1, 0) == doctest::Approx(1.0));
  CHECK(t2.p(0, 0) == doctest::Approx(0.0));
}

TEST_CASE("model-averaged prediction") {
  // Two tiny chains with constant parameters.
  auto make_chain = [](ModelId model, double mu, double effect) {
    Chain c;
    ChainRecord rec;
    rec.model = model;
    rec.params.mu = mu;
    rec.params.alpha.assign(3, 0.0);
    rec.params.beta.assign(3, 0.0);
    rec.params.sigma = 1.0;
    if (model == ModelId::M2_state_only) rec.params.alpha[1] = effect;
    if (model == ModelId::M3_occupation_only) rec.params.beta[1] = effect;
    c.push_back(rec);
    c.push_back(rec);
    return c;
  };
  const Chain c1 = make_chain(ModelId::M1_full, 0.2, 0.0);
  const Chain c2 = make_chain(ModelId::M2_state_only, 0.1, 0.05);
  const Chain c3 = make_chain(ModelId::M3_occupation_only, 0.3, -0.1);
  const std::array<const Chain*, 3> chains{&c1, &c2, &c3};

  CHECK(model_averaged_predict(chains, {1, 0, 0}, 1, 1) == doctest::Approx(0.2));
  // Identical per-model predictions pass through unchanged.
  CHECK(model_averaged_predict(chains, {1.0 / 3, 1.0 / 3, 1.0 / 3}, 0, 0) ==
        doctest::Approx((0.2 + 0.1 + 0.3) / 3.0));
  // Generic weights against a direct weighted sum.
  const double want = 0.5 * 0.2 + 0.3 * (0.1 + 0.05) + 0.2 * (0.3 - 0.1);
  CHECK(model_averaged_predict(chains, {0.5, 0.3, 0.2}, 1, 1) ==
        doctest::Approx(want).epsilon(1e-14));
  // A weighted model with no draws is an error.
  const Chain empty;
  const std::array<const Chain*, 3> broken{&c1, &empty, &c3};
  CHECK_THROWS_AS(model_averaged_predict(broken, {0.5, 0.5, 0.0}, 0, 0), std::invalid_argument);
}

TEST_CASE("prior offsets steer visits but not corrected probabilities") {
  const SimulatedPanel sim = interior_panel(6);
  PriorConfig priors;
  const auto pilots = pilots_for(sim.panel, priors, 37);
  RjConfig rj;
  rj.iterations = 40000;
  rj.burn_in = 4000;
  rj.seed = 41;

  const RjRun base = rj_run(sim.panel, priors, rj, pilots);
  const ModelProbs p_base = estimate_model_probs(base.chain, priors.model_log_prior);

  PriorConfig boosted = priors;
  boosted.model_log_prior = {0.0, 1.5, 0.0};
  const RjRun moved = rj_run(sim.panel, boosted, rj, pilots);
  const ModelProbs p_moved = estimate_model_probs(moved.chain, boosted.model_log_prior);

  // Raw odds of M2 scale by roughly e^1.5; corrected probabilities agree
  // within Monte Carlo error.
  const double odds_base = p_base.raw[1] / std::max(1e-12, 1.0 - p_base.raw[1]);
  const double odds_moved = p_moved.raw[1] / std::max(1e-12, 1.0 - p_moved.raw[1]);
  CHECK(std::log(odds_moved / odds_base) == doctest::Approx(1.5).epsilon(0.25));
  for (int k = 0; k < 3; ++k)
    CHECK(std::abs(p_moved.corrected[static_cast<std::size_t>(k)] -
                   p_base.corrected[static_cast<std::size_t>(k)]) < 0.05);
}

TEST_CASE("dic ordering on state-only generated data") {
  // Generated without occupation effects: the occupation-only model is the
  // clear loser, and the full model pays at most its own complexity penalty
  // over the generator.
  ParamVector truth;
  truth.mu = 0.08;
  truth.alpha = {0.0, 0.04, -0.03, 0.06};
  truth.beta.assign(6, 0.0);
  truth.sigma = 150.0;
  ExposureLaw law;
  law.lo = 1e2;
  law.hi = 1e4;
  const SimulatedPanel sim = simulate(ModelId::M2_state_only, truth, 4, 6, 3, law, 4242);
  PriorConfig priors;
  GibbsConfig cfg;
  cfg.iterations = 8000;
  cfg.burn_in = 1600;
  std::array<DicReport, 3> reports;
  for (int k = 0; k < 3; ++k) {
    cfg.seed = 100 + static_cast<std::uint64_t>(k);
    const ModelId model = model_from_index(k);
    const Chain chain = gibbs_run(sim.panel, model, priors, cfg);
    reports[static_cast<std::size_t>(k)] = compute_dic(chain, sim.panel, model);
  }
  CHECK(reports[1].dic <= reports[2].dic);
  CHECK(reports[0].dic - reports[1].dic <= 2.0 * reports[0].p_d);
}
