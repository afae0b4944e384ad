#include "credrj/proposal.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "credrj/densities.hpp"

namespace credrj {

namespace {
constexpr double kLog2Pi = 1.8378770664093454836;
}

std::size_t block_dim(ModelId model, std::size_t m, std::size_t n) {
  switch (model) {
    case ModelId::M1_full: return 1 + (m - 1) + (n - 1);
    case ModelId::M2_state_only: return 1 + (m - 1);
    case ModelId::M3_occupation_only: return 1 + (n - 1);
    case ModelId::K_centred: break;
  }
  throw std::invalid_argument("block_dim: only corner-point models have jump blocks");
}

Eigen::VectorXd pack_block(ModelId model, const ParamVector& params) {
  const std::size_t m = params.alpha.size();
  const std::size_t n = params.beta.size();
  Eigen::VectorXd x(block_dim(model, m, n));
  x(0) = params.mu;
  std::size_t k = 1;
  if (model != ModelId::M3_occupation_only)
    for (std::size_t i = 1; i < m; ++i) x(static_cast<Eigen::Index>(k++)) = params.alpha[i];
  if (model != ModelId::M2_state_only)
    for (std::size_t j = 1; j < n; ++j) x(static_cast<Eigen::Index>(k++)) = params.beta[j];
  return x;
}

ParamVector unpack_block(ModelId model, const Eigen::VectorXd& block, std::size_t m,
                         std::size_t n, double sigma) {
  if (static_cast<std::size_t>(block.size()) != block_dim(model, m, n))
    throw std::invalid_argument("unpack_block: block length mismatch");
  ParamVector p;
  p.alpha.assign(m, 0.0);
  p.beta.assign(n, 0.0);
  p.mu = block(0);
  p.sigma = sigma;
  std::size_t k = 1;
  if (model != ModelId::M3_occupation_only)
    for (std::size_t i = 1; i < m; ++i) p.alpha[i] = block(static_cast<Eigen::Index>(k++));
  if (model != ModelId::M2_state_only)
    for (std::size_t j = 1; j < n; ++j) p.beta[j] = block(static_cast<Eigen::Index>(k++));
  return p;
}

QuadraticForm quadratic_form(ModelId model, const LossPanel& panel, const PriorConfig& priors,
                             double sigma) {
  if (!(sigma >= 0.0)) throw std::domain_error("quadratic_form: sigma must be >= 0");
  const std::size_t m = panel.rows();
  const std::size_t n = panel.cols();
  const bool has_alpha = model != ModelId::M3_occupation_only;
  const bool has_beta = model != ModelId::M2_state_only;
  const auto d = static_cast<Eigen::Index>(block_dim(model, m, n));

  QuadraticForm qf;
  qf.hessian = Eigen::MatrixXd::Zero(d, d);
  qf.linear = Eigen::VectorXd::Zero(d);
  qf.constant = 0.5 * sigma * panel.total_sum_err();

  qf.hessian(0, 0) = priors.tau_mu + sigma * panel.total_sum_e();
  qf.linear(0) = sigma * panel.total_sum_er();

  const Eigen::Index a0 = 1;                                        // first alpha slot
  const Eigen::Index b0 = has_alpha ? static_cast<Eigen::Index>(m) : 1;  // first beta slot
  if (has_alpha) {
    for (std::size_t i = 1; i < m; ++i) {
      const Eigen::Index ai = a0 + static_cast<Eigen::Index>(i - 1);
      qf.hessian(ai, ai) = priors.tau_alpha0 + sigma * panel.row_sum_e(i);
      qf.hessian(0, ai) = qf.hessian(ai, 0) = sigma * panel.row_sum_e(i);
      qf.linear(ai) = sigma * panel.row_sum_er(i);
    }
  }
  if (has_beta) {
    for (std::size_t j = 1; j < n; ++j) {
      const Eigen::Index bj = b0 + static_cast<Eigen::Index>(j - 1);
      qf.hessian(bj, bj) = priors.tau_beta0 + sigma * panel.col_sum_e(j);
      qf.hessian(0, bj) = qf.hessian(bj, 0) = sigma * panel.col_sum_e(j);
      qf.linear(bj) = sigma * panel.col_sum_er(j);
    }
  }
  if (has_alpha && has_beta) {
    for (std::size_t i = 1; i < m; ++i)
      for (std::size_t j = 1; j < n; ++j) {
        const Eigen::Index ai = a0 + static_cast<Eigen::Index>(i - 1);
        const Eigen::Index bj = b0 + static_cast<Eigen::Index>(j - 1);
        qf.hessian(ai, bj) = qf.hessian(bj, ai) = sigma * panel.sum_e(i, j);
      }
  }
  return qf;
}

GaussianProposal::GaussianProposal(Eigen::VectorXd mean, Eigen::MatrixXd precision)
    : mean_(std::move(mean)), precision_(std::move(precision)) {
  if (precision_.rows() != precision_.cols() || precision_.rows() != mean_.size())
    throw std::invalid_argument("GaussianProposal: dimension mismatch");
  const double scale = precision_.cwiseAbs().maxCoeff();
  const double asym = (precision_ - precision_.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * std::max(scale, 1.0))
    throw std::invalid_argument("GaussianProposal: precision not symmetric");
  llt_.compute(precision_);
  if (llt_.info() != Eigen::Success)
    throw std::runtime_error("GaussianProposal: precision not positive definite");
  log_det_precision_ = 2.0 * llt_.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

Eigen::VectorXd GaussianProposal::sample(ChainRng& rng) const {
  Eigen::VectorXd z(mean_.size());
  for (Eigen::Index k = 0; k < z.size(); ++k) z(k) = rng.normal();
  // precision = L L'; mean + L^{-T} z has covariance precision^{-1}.
  return mean_ + llt_.matrixU().solve(z);
}

double GaussianProposal::log_density(const Eigen::VectorXd& x) const {
  const Eigen::VectorXd d = x - mean_;
  const double quad = d.dot(precision_ * d);
  return 0.5 * (log_det_precision_ - static_cast<double>(mean_.size()) * kLog2Pi - quad);
}

GaussianProposal build_proposal(ModelId model, const LossPanel& panel, const PriorConfig& priors,
                                double sigma, const CenteringPoint& center, ProposalOrder order) {
  if (center.model != model)
    throw std::invalid_argument("build_proposal: centering point is for a different model");
  const QuadraticForm qf = quadratic_form(model, panel, priors, sigma);
  if (center.block.size() != qf.hessian.rows())
    throw std::invalid_argument("build_proposal: centering block length mismatch");

  Eigen::VectorXd mean;
  switch (order) {
    case ProposalOrder::zeroth:
      mean = center.block;
      break;
    case ProposalOrder::first:
      mean = center.block -
             qf.gradient(center.block).cwiseQuotient(qf.hessian.diagonal());
      break;
    case ProposalOrder::second: {
      Eigen::LLT<Eigen::MatrixXd> llt(qf.hessian);
      if (llt.info() != Eigen::Success)
        throw std::runtime_error("build_proposal: factorization failed for model " +
                                 model_name(model) + " at sigma=" + std::to_string(sigma));
      mean = center.block - llt.solve(qf.gradient(center.block));
      break;
    }
  }
  try {
    return GaussianProposal(std::move(mean), qf.hessian);
  } catch (const std::runtime_error&) {
    throw std::runtime_error("build_proposal: factorization failed for model " +
                             model_name(model) + " at sigma=" + std::to_string(sigma));
  }
}

double SigmaProposal::log_density(double x) const { return log_gamma_pdf(x, shape, rate); }

SigmaProposal fit_sigma_proposal(const std::vector<double>& pilot_sigma_draws) {
  if (pilot_sigma_draws.size() < 100)
    throw std::invalid_argument("fit_sigma_proposal: need at least 100 pilot draws");
  double mean = 0.0;
  for (double x : pilot_sigma_draws) {
    if (!(x > 0.0)) throw std::domain_error("fit_sigma_proposal: draws must be positive");
    mean += x;
  }
  mean /= static_cast<double>(pilot_sigma_draws.size());
  double var = 0.0;
  for (double x : pilot_sigma_draws) {
    const double d = x - mean;
    var += d * d;
  }
  var /= static_cast<double>(pilot_sigma_draws.size() - 1);
  if (!(var > 0.0)) throw std::invalid_argument("fit_sigma_proposal: zero variance in pilot draws");
  return SigmaProposal{mean * mean / var, mean / var};
}

}  // namespace credrj
