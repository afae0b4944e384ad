#ifndef CREDRJ_CONDITIONALS_HPP
#define CREDRJ_CONDITIONALS_HPP

#include <cstddef>
#include <vector>

#include "credrj/model.hpp"
#include "credrj/panel.hpp"

namespace credrj {

struct NormalParams {
  double mean;
  double variance;
};

struct GammaParams {
  double shape;
  double rate;
};

/// Independent normals: block posterior with diagonal precision.
struct MvnDiagParams {
  std::vector<double> mean;
  std::vector<double> precision_diag;
};

// Full conditionals of the centred model. Indices are 0-based; all sums run
// over active cells only. With no data (or sigma = 0) each reverts to its
// prior.
NormalParams cond_alpha_centred(const LossPanel& panel, std::size_t i, double mu,
                                const std::vector<double>& beta, double tau_alpha, double sigma);
NormalParams cond_beta_centred(const LossPanel& panel, std::size_t j, double mu,
                               const std::vector<double>& alpha, double tau_beta, double sigma);
NormalParams cond_mu_centred(const std::vector<double>& alpha, const std::vector<double>& beta,
                             double tau_alpha, double tau_beta, double c);
GammaParams cond_tau_alpha(const std::vector<double>& alpha, double mu, double a, double b);
GammaParams cond_tau_beta(const std::vector<double>& beta, double mu, double a, double b);

/// Shared by all models: shape = a + N_active/2, rate = b plus half the
/// exposure-weighted residual sum of squares at the model's fit.
GammaParams cond_sigma(const LossPanel& panel, ModelId model, const ParamVector& params,
                       double a, double b);

// Full conditionals of the corner-point models. alpha/beta are full-length
// vectors with the constrained (and absent) entries at zero.
NormalParams cond_mu_noncentred(const LossPanel& panel, const std::vector<double>& alpha,
                                const std::vector<double>& beta, double sigma, double tau_mu);
/// Free coordinates i = 1..m-1 (block length m-1).
MvnDiagParams cond_alpha_block(const LossPanel& panel, double mu,
                               const std::vector<double>& beta, double sigma, double tau_alpha0);
/// Free coordinates j = 1..n-1 (block length n-1).
MvnDiagParams cond_beta_block(const LossPanel& panel, double mu,
                              const std::vector<double>& alpha, double sigma, double tau_beta0);

}  // namespace credrj

#endif
