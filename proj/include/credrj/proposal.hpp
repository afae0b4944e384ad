#ifndef CREDRJ_PROPOSAL_HPP
#define CREDRJ_PROPOSAL_HPP

#include <Eigen/Dense>
#include <vector>

#include "credrj/model.hpp"
#include "credrj/panel.hpp"
#include "credrj/rng.hpp"

namespace credrj {

/// Length of a corner model's mean-structure block (mu plus free effects;
/// sigma is proposed separately).
std::size_t block_dim(ModelId model, std::size_t m, std::size_t n);

/// Block layout: [mu, alpha_2..alpha_m][, beta_2..beta_n] depending on model.
Eigen::VectorXd pack_block(ModelId model, const ParamVector& params);
ParamVector unpack_block(ModelId model, const Eigen::VectorXd& block, std::size_t m,
                         std::size_t n, double sigma);

/// The quadratic exponent e(x) = (tau-penalty + sigma-weighted residual sum
/// of squares) / 2 of a corner model's block, so that the conditional
/// posterior of the block given sigma is N(H^{-1} b, H^{-1}):
///   e(x) = x' H x / 2 - b' x + constant,  gradient(x) = H x - b.
/// The Hessian H is constant in x: prior precisions on the diagonal plus
/// sigma times the matching exposure sums.
struct QuadraticForm {
  Eigen::MatrixXd hessian;
  Eigen::VectorXd linear;
  double constant = 0.0;

  double value(const Eigen::VectorXd& x) const {
    return 0.5 * x.dot(hessian * x) - linear.dot(x) + constant;
  }
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const { return hessian * x - linear; }
};

QuadraticForm quadratic_form(ModelId model, const LossPanel& panel, const PriorConfig& priors,
                             double sigma);

struct CenteringPoint {
  ModelId model = ModelId::M1_full;
  Eigen::VectorXd block;
};

/// Gaussian block proposal held as (mean, precision) with a cached Cholesky
/// factor for sampling and density evaluation.
class GaussianProposal {
 public:
  GaussianProposal(Eigen::VectorXd mean, Eigen::MatrixXd precision);

  const Eigen::VectorXd& mean() const { return mean_; }
  const Eigen::MatrixXd& precision() const { return precision_; }

  Eigen::VectorXd sample(ChainRng& rng) const;
  double log_density(const Eigen::VectorXd& x) const;

 private:
  Eigen::VectorXd mean_;
  Eigen::MatrixXd precision_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
  double log_det_precision_ = 0.0;
};

/// Taylor order of the mean construction. Second order takes a full Newton
/// step from the centering point and is exact here (constant Hessian);
/// orders 0/1 are degraded modes kept for completeness: 0 keeps the
/// centering point as the mean, 1 takes a diagonal-preconditioned gradient
/// step. The precision is the curvature in every case.
enum class ProposalOrder { zeroth = 0, first = 1, second = 2 };

/// Builds the model's block proposal at the given sigma. With order two the
/// result is the exact conditional posterior of the block, independent of
/// the centering point. Throws std::runtime_error naming the model and
/// sigma if the precision cannot be factorized.
GaussianProposal build_proposal(ModelId model, const LossPanel& panel, const PriorConfig& priors,
                                double sigma, const CenteringPoint& center,
                                ProposalOrder order = ProposalOrder::second);

/// Gamma proposal for a model's precision scale, moment-matched to pilot
/// draws of sigma.
struct SigmaProposal {
  double shape = 1.0;
  double rate = 1.0;

  double sample(ChainRng& rng) const { return rng.gamma(shape, rate); }
  double log_density(double x) const;
};

/// shape = mean^2/variance, rate = mean/variance of the pilot draws.
/// Requires at least 100 positive draws with non-zero variance.
SigmaProposal fit_sigma_proposal(const std::vector<double>& pilot_sigma_draws);

}  // namespace credrj

#endif
